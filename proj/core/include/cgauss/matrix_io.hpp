#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cgauss/gauss.hpp"

namespace cgauss {

/// One parsed scalar: an exact rational value plus the simulated cost its
/// approximations carry inside races.
struct ScalarSpec {
    Rational value;
    long cost = 1;

    CReal to_creal() const {
        return cost > 1 ? CReal::delayed(value, cost) : CReal::from_rational(value);
    }
};

/// Accepts "p/q", "pow2(-N)" or "delayed(p/q, c)".
ScalarSpec parse_scalar_expr(std::string_view text);

struct MatrixSpec {
    int dim = 0;
    std::vector<ScalarSpec> entries; // row-major

    CMatrix to_cmatrix() const;
    RationalMatrix to_rational_matrix() const;
    bool has_costs() const;
};

/// Matrix file: {"dim": n, "entries": [[e, ...], ...]} where each e is a
/// scalar expression string or {"value": "p/q", "cost": c}.
MatrixSpec parse_matrix_json(const std::string& text);
MatrixSpec load_matrix_file(const std::string& path);

/// Vector file: [e, ...] or {"entries": [e, ...]}.
std::vector<ScalarSpec> parse_vector_json(const std::string& text);
std::vector<ScalarSpec> load_vector_file(const std::string& path);

std::vector<CReal> to_creals(const std::vector<ScalarSpec>& specs);

} // namespace cgauss
