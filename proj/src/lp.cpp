#include "nonsig/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

namespace nonsig {

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kPhase1Tol = 1e-7;
constexpr double kResidualTol = 1e-8;
constexpr double kBoundTol = 1e-9;
constexpr int kStallLimit = 64;

// How each original variable maps into the nonnegative standard form.
struct VarMap {
    enum class Kind { Fixed, Shifted, NegShifted, Split } kind;
    double offset = 0.0;      // Fixed: value; Shifted: lower; NegShifted: upper
    std::size_t s0 = 0;       // standard index (first part for Split)
    std::size_t s1 = 0;       // second part for Split
    double ub_range = kLpInfinity;  // finite range for Shifted vars with an upper bound
};

struct StandardForm {
    DenseMatrix a;            // rows x n_std, signs normalized so b >= 0
    std::vector<double> b;
    std::vector<double> c;    // minimization objective over standard vars
    std::vector<VarMap> map;  // per original variable
    std::size_t n_std = 0;
};

void validate(const LpProblem& p) {
    const std::size_t n = p.n_vars();
    if (n == 0) throw InputError("solve_lp: problem has no variables");
    if (p.lower.size() != n || p.upper.size() != n)
        throw InputError("solve_lp: bounds do not match variable count");
    if (p.eq_lhs.cols != n && p.eq_lhs.rows > 0)
        throw InputError("solve_lp: equality matrix has wrong column count");
    if (p.eq_rhs.size() != p.eq_lhs.rows)
        throw InputError("solve_lp: rhs size does not match equality rows");
    for (double v : p.objective)
        if (!std::isfinite(v)) throw InputError("solve_lp: non-finite objective entry");
    for (double v : p.eq_lhs.data)
        if (!std::isfinite(v)) throw InputError("solve_lp: non-finite matrix entry");
    for (double v : p.eq_rhs)
        if (!std::isfinite(v)) throw InputError("solve_lp: non-finite rhs entry");
    for (std::size_t j = 0; j < n; ++j) {
        if (std::isnan(p.lower[j]) || std::isnan(p.upper[j]))
            throw InputError("solve_lp: NaN bound");
        if (p.lower[j] > p.upper[j] + 1e-12)
            throw InputError("solve_lp: lower bound exceeds upper bound at variable " +
                             std::to_string(j));
    }
}

StandardForm to_standard_form(const LpProblem& p) {
    const std::size_t n = p.n_vars();
    StandardForm sf;
    sf.map.resize(n);

    std::size_t n_std = 0, n_ub_rows = 0;
    for (std::size_t j = 0; j < n; ++j) {
        VarMap& vm = sf.map[j];
        const double lo = p.lower[j], hi = p.upper[j];
        if (hi - lo <= 1e-14 || lo == hi) {
            vm.kind = VarMap::Kind::Fixed;
            vm.offset = lo;
        } else if (lo == -kLpInfinity && hi == kLpInfinity) {
            vm.kind = VarMap::Kind::Split;
            vm.s0 = n_std++;
            vm.s1 = n_std++;
        } else if (lo != -kLpInfinity) {
            vm.kind = VarMap::Kind::Shifted;
            vm.offset = lo;
            vm.s0 = n_std++;
            if (hi != kLpInfinity) {
                vm.ub_range = hi - lo;
                ++n_ub_rows;
            }
        } else {
            vm.kind = VarMap::Kind::NegShifted;  // x = hi - xs
            vm.offset = hi;
            vm.s0 = n_std++;
        }
    }
    const std::size_t ub_slack_base = n_std;
    n_std += n_ub_rows;
    sf.n_std = n_std;

    const std::size_t rows = p.eq_lhs.rows + n_ub_rows;
    sf.a = DenseMatrix(rows, n_std);
    sf.b.assign(rows, 0.0);
    sf.c.assign(n_std, 0.0);

    const double obj_sign = p.sense == LpSense::Maximize ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        const VarMap& vm = sf.map[j];
        const double cj = obj_sign * p.objective[j];
        switch (vm.kind) {
            case VarMap::Kind::Fixed: break;
            case VarMap::Kind::Shifted: sf.c[vm.s0] += cj; break;
            case VarMap::Kind::NegShifted: sf.c[vm.s0] -= cj; break;
            case VarMap::Kind::Split:
                sf.c[vm.s0] += cj;
                sf.c[vm.s1] -= cj;
                break;
        }
    }

    for (std::size_t i = 0; i < p.eq_lhs.rows; ++i) {
        double rhs = p.eq_rhs[i];
        for (std::size_t j = 0; j < n; ++j) {
            const double aij = p.eq_lhs(i, j);
            if (aij == 0.0) continue;
            const VarMap& vm = sf.map[j];
            switch (vm.kind) {
                case VarMap::Kind::Fixed: rhs -= aij * vm.offset; break;
                case VarMap::Kind::Shifted:
                    sf.a(i, vm.s0) += aij;
                    rhs -= aij * vm.offset;
                    break;
                case VarMap::Kind::NegShifted:
                    sf.a(i, vm.s0) -= aij;
                    rhs -= aij * vm.offset;
                    break;
                case VarMap::Kind::Split:
                    sf.a(i, vm.s0) += aij;
                    sf.a(i, vm.s1) -= aij;
                    break;
            }
        }
        sf.b[i] = rhs;
    }

    std::size_t ub_row = p.eq_lhs.rows, ub_slack = ub_slack_base;
    for (std::size_t j = 0; j < n; ++j) {
        const VarMap& vm = sf.map[j];
        if (vm.kind == VarMap::Kind::Shifted && vm.ub_range != kLpInfinity) {
            sf.a(ub_row, vm.s0) = 1.0;
            sf.a(ub_row, ub_slack) = 1.0;
            sf.b[ub_row] = vm.ub_range;
            ++ub_row;
            ++ub_slack;
        }
    }

    // Sign-normalize so b >= 0 (phase 1 starts from the artificial basis).
    for (std::size_t i = 0; i < rows; ++i) {
        if (sf.b[i] < 0.0) {
            sf.b[i] = -sf.b[i];
            for (std::size_t j = 0; j < n_std; ++j) sf.a(i, j) = -sf.a(i, j);
        }
    }
    return sf;
}

// Dense simplex tableau over columns [structural | artificial] plus rhs.
class Tableau {
public:
    Tableau(const StandardForm& sf)
        : m_(sf.a.rows), n_struct_(sf.n_std), n_total_(sf.n_std + sf.a.rows),
          t_(sf.a.rows, sf.n_std + sf.a.rows + 1), basis_(sf.a.rows),
          row_ids_(sf.a.rows), allowed_(sf.n_std + sf.a.rows, true),
          cost_(sf.n_std + sf.a.rows, 0.0) {
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_struct_; ++j) t_(i, j) = sf.a(i, j);
            t_(i, n_struct_ + i) = 1.0;
            t_(i, n_total_) = sf.b[i];
            basis_[i] = n_struct_ + i;
            row_ids_[i] = i;
        }
    }

    std::size_t rows() const { return m_; }
    std::size_t n_struct() const { return n_struct_; }
    const std::vector<std::size_t>& basis() const { return basis_; }
    const std::vector<std::size_t>& row_ids() const { return row_ids_; }
    double rhs(std::size_t i) const { return t_(i, n_total_); }

    bool is_artificial(std::size_t col) const { return col >= n_struct_; }

    void forbid_artificials() {
        for (std::size_t j = n_struct_; j < n_total_; ++j) allowed_[j] = false;
    }

    /// Installs a fresh objective row (size n_total_) and reduces it against
    /// the current basis.  Returns the objective value of the current point.
    double load_costs(const std::vector<double>& c) {
        cost_ = c;
        double obj = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            const double cb = cost_[basis_[i]];
            if (cb == 0.0) continue;
            obj += cb * rhs(i);
            for (std::size_t j = 0; j < n_total_; ++j) cost_[j] -= cb * t_(i, j);
        }
        objective_ = obj;
        return obj;
    }

    double objective() const { return objective_; }

    enum class StepResult { Optimal, Unbounded, Pivoted };

    StepResult step(bool bland) {
        // Entering column.
        std::size_t enter = n_total_;
        if (bland) {
            for (std::size_t j = 0; j < n_total_; ++j)
                if (allowed_[j] && cost_[j] < -kReducedCostTol) {
                    enter = j;
                    break;
                }
        } else {
            double best = -kReducedCostTol;
            for (std::size_t j = 0; j < n_total_; ++j)
                if (allowed_[j] && cost_[j] < best) {
                    best = cost_[j];
                    enter = j;
                }
        }
        if (enter == n_total_) return StepResult::Optimal;

        // Ratio test; ties resolved toward the smallest basis index (Bland).
        std::size_t leave = m_;
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            const double aij = t_(i, enter);
            if (aij <= kPivotTol) continue;
            const double ratio = rhs(i) / aij;
            if (leave == m_ || ratio < best_ratio - 1e-12 ||
                (ratio < best_ratio + 1e-12 && basis_[i] < basis_[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m_) return StepResult::Unbounded;

        pivot(leave, enter);
        return StepResult::Pivoted;
    }

    void pivot(std::size_t row, std::size_t col) {
        const double piv = t_(row, col);
        double* pr = &t_(row, 0);
        const std::size_t w = n_total_ + 1;
        for (std::size_t j = 0; j < w; ++j) pr[j] /= piv;
        pr[col] = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row) continue;
            const double f = t_(i, col);
            if (f == 0.0) continue;
            double* ri = &t_(i, 0);
            for (std::size_t j = 0; j < w; ++j) ri[j] -= f * pr[j];
            ri[col] = 0.0;
        }
        const double fc = cost_[col];
        if (fc != 0.0) {
            for (std::size_t j = 0; j < n_total_; ++j) cost_[j] -= fc * pr[j];
            cost_[col] = 0.0;
            objective_ += fc * pr[n_total_];  // entering variable moves to pr[rhs]
        }
        basis_[row] = col;
    }

    /// After phase 1: pivot lingering artificials out of the basis, dropping
    /// rows that turn out to be redundant equations.
    void purge_artificials() {
        for (std::size_t i = 0; i < m_;) {
            if (!is_artificial(basis_[i])) {
                ++i;
                continue;
            }
            std::size_t enter = n_total_;
            for (std::size_t j = 0; j < n_struct_; ++j)
                if (allowed_[j] && std::abs(t_(i, j)) > kPhase1Tol) {
                    enter = j;
                    break;
                }
            if (enter != n_total_) {
                pivot(i, enter);
                ++i;
            } else {
                drop_row(i);
            }
        }
    }

private:
    void drop_row(std::size_t row) {
        const std::size_t last = m_ - 1;
        if (row != last) {
            for (std::size_t j = 0; j <= n_total_; ++j) t_(row, j) = t_(last, j);
            basis_[row] = basis_[last];
            row_ids_[row] = row_ids_[last];
        }
        basis_.pop_back();
        row_ids_.pop_back();
        --m_;
        t_.rows = m_;
        t_.data.resize(m_ * t_.cols);
    }

    std::size_t m_, n_struct_, n_total_;
    DenseMatrix t_;
    std::vector<std::size_t> basis_;
    std::vector<std::size_t> row_ids_;  // surviving row -> original standard row
    std::vector<bool> allowed_;
    std::vector<double> cost_;
    double objective_ = 0.0;
};

// Returns true when optimal, false when the phase objective is unbounded.
bool run_simplex(Tableau& tab, const char* phase) {
    const std::size_t budget = 2000 + 200 * (tab.rows() + tab.n_struct());
    bool bland = false;
    int stall = 0;
    double last_obj = tab.objective();
    for (std::size_t it = 0; it < budget; ++it) {
        const auto res = tab.step(bland);
        if (res == Tableau::StepResult::Optimal) return true;
        if (res == Tableau::StepResult::Unbounded) return false;
        if (tab.objective() > last_obj - 1e-13) {
            if (++stall >= kStallLimit) bland = true;  // anti-cycling fallback
        } else {
            stall = 0;
            last_obj = tab.objective();
        }
    }
    throw SolverError(std::string("solve_lp: pivot budget exhausted in ") + phase +
                      " after " + std::to_string(budget) + " iterations (objective " +
                      std::to_string(tab.objective()) + ")");
}

// Recompute basic values from a fresh LU of the basis columns; the tableau's
// accumulated rounding never reaches the reported point.
std::vector<double> refine_basic_point(const StandardForm& sf, const Tableau& tab) {
    const std::size_t mm = tab.rows();
    std::vector<double> xs(sf.n_std, 0.0);
    if (mm == 0) return xs;
    Eigen::MatrixXd basis_cols(mm, mm);
    Eigen::VectorXd rhs(mm);
    for (std::size_t i = 0; i < mm; ++i) {
        const std::size_t orig = tab.row_ids()[i];
        rhs(static_cast<Eigen::Index>(i)) = sf.b[orig];
        for (std::size_t k = 0; k < mm; ++k)
            basis_cols(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                sf.a(orig, tab.basis()[k]);
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_cols);
    const Eigen::VectorXd xb = lu.solve(rhs);
    if ((basis_cols * xb - rhs).cwiseAbs().maxCoeff() > 1e-9) {
        // Fall back to tableau values when the basis matrix is ill-conditioned.
        for (std::size_t i = 0; i < mm; ++i) xs[tab.basis()[i]] = tab.rhs(i);
    } else {
        for (std::size_t i = 0; i < mm; ++i)
            xs[tab.basis()[i]] = xb(static_cast<Eigen::Index>(i));
    }
    return xs;
}

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
    validate(problem);
    const StandardForm sf = to_standard_form(problem);

    // All variables fixed: feasibility is a direct residual check.
    if (sf.n_std == 0) {
        for (std::size_t i = 0; i < sf.a.rows; ++i)
            if (std::abs(sf.b[i]) > kPhase1Tol) return {LpStatus::Infeasible, 0.0, {}};
        std::vector<double> x(problem.n_vars());
        double obj = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            x[j] = sf.map[j].offset;
            obj += problem.objective[j] * x[j];
        }
        return {LpStatus::Optimal, obj, std::move(x)};
    }

    Tableau tab(sf);

    // Phase 1: minimize the artificial total.
    {
        std::vector<double> c1(sf.n_std + sf.a.rows, 0.0);
        for (std::size_t j = sf.n_std; j < c1.size(); ++j) c1[j] = 1.0;
        tab.load_costs(c1);
        if (!run_simplex(tab, "phase 1"))
            throw SolverError("solve_lp: phase 1 reported unbounded");  // cannot happen
        if (tab.objective() > kPhase1Tol) return {LpStatus::Infeasible, 0.0, {}};
        tab.purge_artificials();
        tab.forbid_artificials();
    }

    // Phase 2: the real objective.
    {
        std::vector<double> c2(sf.n_std + sf.a.rows, 0.0);
        for (std::size_t j = 0; j < sf.n_std; ++j) c2[j] = sf.c[j];
        tab.load_costs(c2);
        if (!run_simplex(tab, "phase 2")) return {LpStatus::Unbounded, 0.0, {}};
    }

    const std::vector<double> xs = refine_basic_point(sf, tab);

    // Map standard variables back to the caller's space.
    std::vector<double> x(problem.n_vars());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const VarMap& vm = sf.map[j];
        switch (vm.kind) {
            case VarMap::Kind::Fixed: x[j] = vm.offset; break;
            case VarMap::Kind::Shifted: x[j] = vm.offset + xs[vm.s0]; break;
            case VarMap::Kind::NegShifted: x[j] = vm.offset - xs[vm.s0]; break;
            case VarMap::Kind::Split: x[j] = xs[vm.s0] - xs[vm.s1]; break;
        }
    }

    double obj = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) obj += problem.objective[j] * x[j];

    // Verify the LpSolution contract before reporting optimality.
    for (std::size_t i = 0; i < problem.eq_lhs.rows; ++i) {
        double r = -problem.eq_rhs[i];
        for (std::size_t j = 0; j < x.size(); ++j) r += problem.eq_lhs(i, j) * x[j];
        if (std::abs(r) > kResidualTol * (1.0 + std::abs(problem.eq_rhs[i])))
            throw SolverError("solve_lp: residual " + std::to_string(r) +
                              " on equality row " + std::to_string(i));
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] < problem.lower[j] - kBoundTol || x[j] > problem.upper[j] + kBoundTol)
            throw SolverError("solve_lp: bound violation at variable " + std::to_string(j));
    }

    return {LpStatus::Optimal, obj, std::move(x)};
}

}  // namespace nonsig
