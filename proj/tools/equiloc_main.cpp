#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "equiloc/problem.hpp"

namespace {

int run_file(const std::string& path, const equiloc::RunOptions& options) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open '" << path << "'\n";
        return 1;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    equiloc::ProblemFile problem = equiloc::parse_problem(buf.str());
    equiloc::RunResult result = equiloc::run_problem_ex(problem, options);
    std::cout << result.report;
    return result.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equiloc: fixed loci, concentration sections and Euler-class localization"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run the queries of a problem file");
    std::string file;
    equiloc::RunOptions options;
    std::string window_text;
    int truncation = -1;
    run->add_option("file", file, "problem file")->required();
    run->add_flag("--json", options.json, "emit the JSON report");
    run->add_option("--groebner-budget", options.groebner_budget,
                    "cap on S-polynomial reductions");
    run->add_option("--truncation", truncation, "Steenrod series truncation override");
    run->add_option("--window", window_text, "bidegree window override: a0..a1,b0..b1");
    run->add_option("--seed", options.seed, "seed echoed into the report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (truncation >= 0) options.truncation = truncation;
        if (!window_text.empty()) {
            // Reuse the problem-file syntax for the window override.
            equiloc::ProblemFile probe = equiloc::parse_problem(
                "field rational\ngroup free 1\nquery smith window " + window_text + "\n");
            options.window = probe.queries.at(0).window;
        }
        return run_file(file, options);
    } catch (const equiloc::ProblemParseError& e) {
        std::cerr << "error (line " << e.line << "): " << e.what() << "\n";
        return 1;
    } catch (const equiloc::PolyParseError& e) {
        std::cerr << "error (line " << e.pos.line << ", column " << e.pos.column
                  << "): " << e.what() << "\n";
        return 1;
    } catch (const equiloc::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const equiloc::ResourceError& e) {
        std::cerr << "resource budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
