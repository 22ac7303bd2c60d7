#ifndef EQUILOC_PROBLEM_HPP
#define EQUILOC_PROBLEM_HPP

#include <optional>
#include <string>
#include <vector>

#include "equiloc/fixedloc.hpp"
#include "equiloc/smith.hpp"

namespace equiloc {

struct ProblemParseError : InputError {
    ProblemParseError(const std::string& msg, int line_number)
        : InputError(msg), line(line_number) {}
    int line;
};

enum class QueryKind { FixedLocus, Section, Euler, Bott, Concentration, Smith };

struct QuerySpec {
    QueryKind kind = QueryKind::FixedLocus;
    std::vector<std::vector<Int>> rep;  // full-coordinate characters
    int power = 0;                      // bott: pushforward of zeta^power
    bool minimal = false;               // section: minimal generator variant
    std::optional<Window> window;       // smith
    std::optional<int> budget;          // smith denominator budget
    std::optional<int> truncation;      // steenrod series order

    bool operator==(const QuerySpec&) const = default;
};

struct ProblemFile {
    FieldSpec field;
    int free_rank = 0;
    std::vector<Int> torsion;
    std::vector<std::vector<Int>> subgroup_relations;  // empty: C = G
    std::vector<std::string> var_names;
    std::vector<std::vector<Int>> weights;  // one per variable, full coords
    std::vector<std::string> ideal_texts;   // canonicalized polynomial text
    std::vector<QuerySpec> queries;

    bool operator==(const ProblemFile&) const = default;
};

// Parses the declarative problem format; diagnostics carry the line number.
ProblemFile parse_problem(const std::string& text);

// Canonical text form; format(parse(t)) reparses to an equal ProblemFile.
std::string format_problem(const ProblemFile& problem);

struct RunOptions {
    bool json = false;
    long long groebner_budget = 500000;
    std::optional<int> truncation;       // overrides per-query defaults
    std::optional<Window> window;        // overrides per-query windows
    unsigned seed = 0;                   // echoed into the report
};

struct RunResult {
    std::string report;
    bool ok = true;  // false when any query reported an engine error
};

// Executes every query and renders the deterministic report.
RunResult run_problem_ex(const ProblemFile& problem, const RunOptions& options = {});
std::string run_problem(const ProblemFile& problem, const RunOptions& options = {});

}  // namespace equiloc

#endif
