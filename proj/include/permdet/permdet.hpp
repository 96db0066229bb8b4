#pragma once

#include "cycles.hpp"
#include "determinant.hpp"
#include "engine.hpp"
#include "errors.hpp"
#include "exact_int.hpp"
#include "graph.hpp"
#include "matrix.hpp"
#include "oracles.hpp"
#include "vertex_set.hpp"
