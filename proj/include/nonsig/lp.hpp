#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "nonsig/errors.hpp"

namespace nonsig {

inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

/// Row-major dense matrix; the only shape the solver needs.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

enum class LpSense { Maximize, Minimize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

/// Linear program: optimize objective . x subject to eq_lhs x = eq_rhs and
/// lower <= x <= upper (entries may be +-infinity).
struct LpProblem {
    LpSense sense = LpSense::Maximize;
    std::vector<double> objective;
    DenseMatrix eq_lhs;
    std::vector<double> eq_rhs;
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t n_vars() const { return objective.size(); }

    /// Sizes bound vectors to [0, +inf) for every variable.
    void default_bounds() {
        lower.assign(n_vars(), 0.0);
        upper.assign(n_vars(), kLpInfinity);
    }
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> assignment;  ///< empty unless status == Optimal
};

/// Dense two-phase primal simplex.  Deterministic: Dantzig entering rule with
/// a permanent switch to Bland's anti-cycling rule after a degenerate stall;
/// final basic values are recomputed from a fresh factorization so optimal
/// solutions satisfy the equalities to ~1e-12.
///
/// Throws InputError on malformed problems and SolverError if the pivot
/// budget is exhausted or the returned point fails verification.
LpSolution solve_lp(const LpProblem& problem);

}  // namespace nonsig
