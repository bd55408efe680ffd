#include "nonsig/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nonsig {

namespace {

// LP variable layout for the no-signaling polytope: one variable per
// p(a,b|x,y) entry, in Box::index order.
std::size_t box_var(int m, int x, int y, int a, int b) {
    return (((static_cast<std::size_t>(x) * m + y) * 2 + a) * 2) + b;
}

// Normalization plus both no-signaling families, with setting 0 as the
// reference so no redundant constraint pairs are emitted.
void append_ns_rows(DenseMatrix& lhs, std::vector<double>& rhs, int n, int m) {
    std::size_t row = 0;
    auto at = [&](std::size_t r, std::size_t c) -> double& { return lhs(r, c); };

    for (int x = 0; x < n; ++x)
        for (int y = 0; y < m; ++y) {
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) at(row, box_var(m, x, y, a, b)) = 1.0;
            rhs[row++] = 1.0;
        }
    for (int y = 0; y < m; ++y)
        for (int b = 0; b < 2; ++b)
            for (int x = 1; x < n; ++x) {
                for (int a = 0; a < 2; ++a) {
                    at(row, box_var(m, x, y, a, b)) += 1.0;
                    at(row, box_var(m, 0, y, a, b)) -= 1.0;
                }
                rhs[row++] = 0.0;
            }
    for (int x = 0; x < n; ++x)
        for (int a = 0; a < 2; ++a)
            for (int y = 1; y < m; ++y) {
                for (int b = 0; b < 2; ++b) {
                    at(row, box_var(m, x, y, a, b)) += 1.0;
                    at(row, box_var(m, x, 0, a, b)) -= 1.0;
                }
                rhs[row++] = 0.0;
            }
}

std::size_t ns_row_count(int n, int m) {
    return static_cast<std::size_t>(n) * m + 2 * m * (n - 1) + 2 * n * (m - 1);
}

LpProblem ns_polytope_lp(const BellFunctional& f) {
    const int n = f.n, m = f.m;
    LpProblem lp;
    lp.sense = LpSense::Maximize;
    lp.objective = f.coeffs;
    const std::size_t rows = ns_row_count(n, m);
    lp.eq_lhs = DenseMatrix(rows, static_cast<std::size_t>(n) * m * 4);
    lp.eq_rhs.assign(rows, 0.0);
    append_ns_rows(lp.eq_lhs, lp.eq_rhs, n, m);
    lp.default_bounds();
    return lp;
}

double optimal_or_throw(const LpSolution& sol, const char* what) {
    if (sol.status != LpStatus::Optimal)
        throw SolverError(std::string(what) + ": LP did not reach an optimum");
    return sol.objective;
}

}  // namespace

double ns_value(const BellFunctional& f) {
    if (static_cast<long>(f.n) * f.m > 400)
        throw ResourceError("ns_value: n*m exceeds the 400-setting-pair limit");
    return optimal_or_throw(solve_lp(ns_polytope_lp(f)), "ns_value");
}

double ns_value_deterministic(const BellFunctional& f, int y_det) {
    if (static_cast<long>(f.n) * f.m > 400)
        throw ResourceError("ns_value_deterministic: n*m exceeds the 400-setting-pair limit");
    if (y_det < 0 || y_det >= f.m)
        throw InputError("ns_value_deterministic: setting out of range");
    double best = -kLpInfinity;
    for (int fixed = 0; fixed < 2; ++fixed) {
        LpProblem lp = ns_polytope_lp(f);
        for (int x = 0; x < f.n; ++x)
            for (int a = 0; a < 2; ++a)
                lp.upper[box_var(f.m, x, y_det, a, 1 - fixed)] = 0.0;
        best = std::max(best, optimal_or_throw(solve_lp(lp), "ns_value_deterministic"));
    }
    return best;
}

double relevance(const BellFunctional& f, int y) {
    double w = ns_value(f) - ns_value_deterministic(f, y);
    if (w < 0.0) {
        if (w < -1e-7) throw SolverError("relevance: negative value " + std::to_string(w));
        w = 0.0;
    }
    return w;
}

double gain_correlator(const TripartiteBox& tri, int y_gentle) {
    double c = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int g = 0; g < 2; ++g)
                c += ((b + g) & 1 ? -1.0 : 1.0) * tri.prob(0, y_gentle, a, b, g);
    return c;
}

AdversaryResult min_disturbance_adversary(const Box& p, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 0.5))
        throw InputError("min_disturbance_adversary: epsilon must lie in [0, 1/2]");
    const int n = p.n_inputs_a(), m = p.n_inputs_b();
    if (static_cast<long>(n) * m > 100)
        throw ResourceError("min_disturbance_adversary: n*m exceeds the 100-pair limit");

    // Variables: tripartite table entries, then the |.|-linearization block
    // t(x, y!=0, a, b) with slacks s1, s2 for t >= +-difference.
    const std::size_t n_tri = static_cast<std::size_t>(n) * m * 8;
    const std::size_t n_t = static_cast<std::size_t>(n) * (m - 1) * 4;
    const std::size_t n_vars = n_tri + 3 * n_t;
    auto tri_var = [&](int x, int y, int a, int b, int g) {
        return ((((static_cast<std::size_t>(x) * m + y) * 2 + a) * 2 + b) * 2) + g;
    };
    auto t_var = [&](int x, int y, int a, int b) {
        return n_tri + (((static_cast<std::size_t>(x) * (m - 1) + (y - 1)) * 2 + a) * 2) + b;
    };

    const std::size_t norm_rows = static_cast<std::size_t>(n) * m;
    const std::size_t nsA_rows = static_cast<std::size_t>(m) * 4 * (n - 1);
    const std::size_t nsB_rows = static_cast<std::size_t>(n) * 4 * (m - 1);
    const std::size_t marg_rows = static_cast<std::size_t>(n) * m * 2;
    const std::size_t abs_rows = 2 * n_t;
    const std::size_t rows = norm_rows + nsA_rows + nsB_rows + marg_rows + abs_rows;

    LpProblem lp;
    lp.sense = LpSense::Minimize;
    lp.objective.assign(n_vars, 0.0);
    for (std::size_t j = n_tri; j < n_tri + n_t; ++j) lp.objective[j] = 1.0 / n;
    lp.eq_lhs = DenseMatrix(rows, n_vars);
    lp.eq_rhs.assign(rows, 0.0);
    lp.default_bounds();

    // Gentle constraints pin the whole y=0 block of the extension.
    for (int x = 0; x < n; ++x)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int g = 0; g < 2; ++g) {
                    const double v = (g == b ? 0.5 + epsilon : 0.5 - epsilon) * p.prob(x, 0, a, b);
                    const std::size_t j = tri_var(x, 0, a, b, g);
                    lp.lower[j] = lp.upper[j] = v;
                }

    std::size_t row = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < m; ++y) {
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int g = 0; g < 2; ++g) lp.eq_lhs(row, tri_var(x, y, a, b, g)) = 1.0;
            lp.eq_rhs[row++] = 1.0;
        }
    for (int y = 0; y < m; ++y)
        for (int b = 0; b < 2; ++b)
            for (int g = 0; g < 2; ++g)
                for (int x = 1; x < n; ++x) {
                    for (int a = 0; a < 2; ++a) {
                        lp.eq_lhs(row, tri_var(x, y, a, b, g)) += 1.0;
                        lp.eq_lhs(row, tri_var(0, y, a, b, g)) -= 1.0;
                    }
                    lp.eq_rhs[row++] = 0.0;
                }
    for (int x = 0; x < n; ++x)
        for (int a = 0; a < 2; ++a)
            for (int g = 0; g < 2; ++g)
                for (int y = 1; y < m; ++y) {
                    for (int b = 0; b < 2; ++b) {
                        lp.eq_lhs(row, tri_var(x, y, a, b, g)) += 1.0;
                        lp.eq_lhs(row, tri_var(x, 0, a, b, g)) -= 1.0;
                    }
                    lp.eq_rhs[row++] = 0.0;
                }
    // Alice marginal preserved: no-signaling forces p(a|x) onto the extension.
    for (int x = 0; x < n; ++x)
        for (int a = 0; a < 2; ++a)
            for (int y = 0; y < m; ++y) {
                for (int b = 0; b < 2; ++b)
                    for (int g = 0; g < 2; ++g) lp.eq_lhs(row, tri_var(x, y, a, b, g)) = 1.0;
                lp.eq_rhs[row++] = p.alice_marginal(x, a);
            }
    // t >= |p - marginalized extension| via two slack rows per entry.
    for (int x = 0; x < n; ++x)
        for (int y = 1; y < m; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const double target = p.prob(x, y, a, b);
                    const std::size_t tj = t_var(x, y, a, b);
                    const std::size_t s1 = tj + n_t, s2 = tj + 2 * n_t;
                    // t + sum_g tri - s1 = p   (t >= p - sum_g tri)
                    lp.eq_lhs(row, tj) = 1.0;
                    for (int g = 0; g < 2; ++g) lp.eq_lhs(row, tri_var(x, y, a, b, g)) = 1.0;
                    lp.eq_lhs(row, s1) = -1.0;
                    lp.eq_rhs[row++] = target;
                    // t - sum_g tri - s2 = -p  (t >= sum_g tri - p)
                    lp.eq_lhs(row, tj) = 1.0;
                    for (int g = 0; g < 2; ++g) lp.eq_lhs(row, tri_var(x, y, a, b, g)) = -1.0;
                    lp.eq_lhs(row, s2) = -1.0;
                    lp.eq_rhs[row++] = -target;
                }

    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
        throw SolverError("min_disturbance_adversary: LP did not reach an optimum "
                          "(the gentle extension is feasible for every epsilon in [0,1/2])");

    std::vector<double> tri(n_tri);
    for (std::size_t j = 0; j < n_tri; ++j) {
        double v = sol.assignment[j];
        if (v < 0.0 && v > -2e-9) v = 0.0;  // LP bound slack, below Box's entry slack
        tri[j] = v;
    }
    double d_min = sol.objective;
    if (d_min < 0.0 && d_min > -1e-9) d_min = 0.0;
    return AdversaryResult{d_min, TripartiteBox(n, m, std::move(tri))};
}

}  // namespace nonsig
