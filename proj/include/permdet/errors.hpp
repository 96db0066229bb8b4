#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace permdet {

enum class ParseErrorKind {
    MalformedHeader,
    NonInteger,
    VertexOutOfRange,
    SelfLoop,
    EdgeCountMismatch,
    NotSquare,
    Asymmetric,
    NonzeroDiagonal,
    EntryNotBinary,
};

/// Malformed textual input. `line()` is 1-based; 0 means the error is not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::size_t line, const std::string& what)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          kind_(kind),
          line_(line) {}

    ParseErrorKind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }

private:
    ParseErrorKind kind_;
    std::size_t line_;
};

/// Raised by operations that require a bipartite host graph.
/// The witness is an odd cycle, as 1-based vertex labels in traversal order.
class NotBipartite : public std::runtime_error {
public:
    explicit NotBipartite(std::vector<int> odd_cycle)
        : std::runtime_error(describe(odd_cycle)), witness_(std::move(odd_cycle)) {}

    const std::vector<int>& witness() const noexcept { return witness_; }

private:
    static std::string describe(const std::vector<int>& cycle) {
        std::string s = "graph is not bipartite; odd cycle:";
        for (int v : cycle) s += " " + std::to_string(v);
        return s;
    }

    std::vector<int> witness_;
};

/// Base for every "too big to compute" refusal (cycle caps, oracle size guards).
class LimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CycleCapExceeded : public LimitExceeded {
public:
    explicit CycleCapExceeded(std::size_t cap)
        : LimitExceeded("cycle enumeration exceeded cap of " + std::to_string(cap)), cap_(cap) {}

    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t cap_;
};

class GuardExceeded : public LimitExceeded {
public:
    using LimitExceeded::LimitExceeded;
};

/// Internal consistency failure: the matching-count square-root route produced a non-square.
class NotAPerfectSquare : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace permdet
