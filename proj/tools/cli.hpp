#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "cgauss/matrix_io.hpp"

namespace cgauss::cli {

enum class Mode { Parallel, Interleave, RationalOracle };

Mode parse_mode(const std::string& name); // ParseError on unknown names

struct RunConfig {
    Mode mode = Mode::Parallel;
    int precision = 30;
    std::optional<long> fuel;
    unsigned long seed = 1;
    int dim = 4;
    unsigned threads = 0; // 0 = hardware concurrency
    int step_budget = 1;

    void validate() const; // precision >= 1, dim >= 1, step_budget >= 1
};

conc::Scheduler scheduler_for(const RunConfig& cfg);

/// Exit codes: 0 ok, 1 parse error, 2 fuel exhausted / singular matrix,
/// 3 domain violation. JSON report on `out`, human-readable summary on `err`.
int cmd_invert(const std::string& file, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_pivot(const std::string& file, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_convert(const std::string& expr, const std::string& target, int count, std::ostream& out,
                std::ostream& err);
int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Upper-triangular family with, per column, a cheap large pivot candidate on
/// the diagonal and an expensive near-zero candidate in the top row.
MatrixSpec hard_pivot_matrix(int dim, unsigned long seed);

/// Non-singular matrix with uniform random 64-bit integer entries.
RationalMatrix random_int64_matrix(int dim, unsigned long seed);

} // namespace cgauss::cli
