#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cli.hpp"

using permdet::cli::Command;
using permdet::cli::InputFormat;
using permdet::cli::OutputMode;
using permdet::cli::RunConfig;

int main(int argc, char** argv) {
    CLI::App app{"Exact permanents of bipartite graphs via determinants of 4k-cycle deletions"};
    app.require_subcommand(1);

    RunConfig config;
    std::string input_path = "-";
    std::string threads = "1";
    std::size_t m = 0;

    const std::map<std::string, InputFormat> formats{
        {"edge-list", InputFormat::edge_list}, {"adjacency", InputFormat::adjacency}, {"biadjacency", InputFormat::biadjacency}};
    const std::map<std::string, OutputMode> outputs{{"text", OutputMode::text}, {"records", OutputMode::records}};

    const std::pair<const char*, Command> commands[] = {
        {"per", Command::per},         {"det", Command::det},           {"cycles", Command::cycles},
        {"pm-count", Command::pm_count}, {"verify", Command::verify},   {"classify", Command::classify},
        {"bench", Command::bench},
    };
    const std::map<std::string, std::string> help{
        {"per", "permanent via the determinant expansion over disjoint 4k-cycle families"},
        {"det", "exact determinant of the adjacency matrix"},
        {"cycles", "cycles, 4k-cycles, disjoint families and m"},
        {"pm-count", "number of perfect matchings of a biadjacency matrix"},
        {"verify", "cross-check the engine against brute-force oracles"},
        {"classify", "cactus / girth efficiency condition"},
        {"bench", "time the engine against Ryser and Sachs enumeration"},
    };

    for (auto [name, command] : commands) {
        CLI::App* sub = app.add_subcommand(name, help.at(name));
        sub->add_option("input", input_path, "input file, or - for stdin")->capture_default_str();
        sub->add_option("--format", config.format, "edge-list | adjacency | biadjacency")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
            ->capture_default_str();
        sub->add_option("--output", config.output, "text | records (one JSON object per line)")
            ->transform(CLI::CheckedTransformer(outputs, CLI::ignore_case));
        sub->add_flag("--show-terms", config.show_terms, "print the per-family term table");
        sub->add_option("--cycle-cap", config.cycle_cap, "maximum number of cycles to enumerate")->capture_default_str();
        sub->add_option("--guard-ryser", config.guard_ryser, "largest n for Ryser's formula")->capture_default_str();
        sub->add_option("--guard-sachs", config.guard_sachs, "largest n for Sachs-subgraph oracles")->capture_default_str();
        sub->add_option("--guard-theorem2", config.guard_theorem2, "largest n for the induced-subgraph sweep")
            ->capture_default_str();
        sub->add_option("--threads", threads, "worker threads, or auto")->capture_default_str();
        if (command == Command::verify) sub->add_option("--m", m, "bound on disjoint 4k-cycles to verify (default: computed)");
        sub->callback([&config, command] { config.command = command; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : permdet::cli::parse_error;
    }

    for (auto* sub : app.get_subcommands()) {
        if (auto* opt = sub->get_option_no_throw("--m"); opt && opt->count() > 0) config.m = m;
    }
    if (threads == "auto") {
        config.threads = 0;
    } else {
        try {
            config.threads = static_cast<unsigned>(std::stoul(threads));
        } catch (const std::exception&) {
            std::cerr << "error: --threads expects a number or 'auto'\n";
            return permdet::cli::parse_error;
        }
    }

    std::string input;
    if (input_path == "-") {
        input.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        std::ifstream file(input_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open " << input_path << '\n';
            return permdet::cli::parse_error;
        }
        std::ostringstream buffer;
        buffer << file.rdbuf();
        input = buffer.str();
    }
    return permdet::cli::run(config, input, std::cout, std::cerr);
}
