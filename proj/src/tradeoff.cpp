#include "nonsig/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>

#include "nonsig/bell.hpp"
#include "nonsig/quantum.hpp"

namespace nonsig {

namespace {

using std::numbers::pi;

void check_epsilon(double epsilon, const char* what) {
    if (!(epsilon >= 0.0 && epsilon <= 0.5))
        throw InputError(std::string(what) + ": epsilon must lie in [0, 1/2]");
}

double chain_quantum_value(int n) { return 2.0 * n * std::cos(pi / (2 * n)); }

double gen_chain_quantum_value(int n, int k) {
    return n / std::sin(pi / (2 * n)) * std::sin(k * pi / n);
}

std::vector<double> epsilon_grid(const FigureParams& p) {
    if (!(p.eps_step > 0.0)) throw InputError("figure_data: eps step must be positive");
    if (p.eps_end < p.eps_start) throw InputError("figure_data: empty epsilon range");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double eps = p.eps_start + i * p.eps_step;
        if (eps > p.eps_end + p.eps_step * 1e-9) break;
        grid.push_back(std::min(eps, 0.5));
    }
    return grid;
}

BoundCurve make_curve(std::string label, const std::vector<double>& grid,
                      const std::function<double(double)>& raw_bound) {
    BoundCurve curve;
    curve.label = std::move(label);
    curve.epsilons = grid;
    curve.raw.reserve(grid.size());
    curve.d_min.reserve(grid.size());
    for (double eps : grid) {
        const double raw = raw_bound(eps);
        curve.raw.push_back(raw);
        curve.d_min.push_back(std::max(0.0, raw));
    }
    return curve;
}

void cross_check_spectral_norm(int n, int k) {
    const std::vector<double> c = gen_chain_correlators(n, k);
    Eigen::MatrixXd mat(n, n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) mat(x, y) = c[static_cast<std::size_t>(x) * n + y];
    const double via_norm = n * spectral_norm(mat);
    const double closed = gen_chain_quantum_value(n, k);
    if (std::abs(via_norm - closed) > 1e-6 * std::max(1.0, closed))
        throw SolverError("figure_data: spectral norm " + format_g12(via_norm) +
                          " disagrees with the closed-form quantum value " +
                          format_g12(closed) + " at n=" + std::to_string(n) +
                          ", k=" + std::to_string(k));
}

}  // namespace

double bound_general_raw(int n, double w, double epsilon, double beta, double beta_max) {
    if (n < 1) throw InputError("bound_general: n must be positive");
    if (w < 0.0) throw InputError("bound_general: relevance must be nonnegative");
    check_epsilon(epsilon, "bound_general");
    if (beta > beta_max + 1e-12)
        throw InputError("bound_general: beta exceeds beta_max");
    return (w * 2.0 * epsilon - (beta_max - beta)) / n;
}

double bound_general(int n, double w, double epsilon, double beta, double beta_max) {
    return std::max(0.0, bound_general_raw(n, w, epsilon, beta, beta_max));
}

double bound_chain_raw(int n, double epsilon, double beta) {
    if (n < 2) throw InputError("bound_chain: need n >= 2");
    check_epsilon(epsilon, "bound_chain");
    if (beta > 2.0 * n + 1e-12) throw InputError("bound_chain: beta exceeds 2n");
    return 4.0 * epsilon / n - (2.0 * n - beta) / n;
}

double bound_chain(int n, double epsilon, double beta) {
    return std::max(0.0, bound_chain_raw(n, epsilon, beta));
}

double bound_gen_chain_raw(int n, int k, double epsilon) {
    if (n < 2 || k < 1 || 2 * k > n) throw InputError("bound_gen_chain: need 1 <= k <= n/2");
    check_epsilon(epsilon, "bound_gen_chain");
    double cos_sum = 0.0;
    for (int j = 1; j <= k; ++j) cos_sum += std::cos((2 * j - 1) * pi / (2 * n));
    return 4.0 * k * epsilon / n - 2.0 * (k - cos_sum);
}

double bound_gen_chain(int n, int k, double epsilon) {
    return std::max(0.0, bound_gen_chain_raw(n, k, epsilon));
}

double bound_quantum_chsh_raw(double epsilon, double beta) {
    check_epsilon(epsilon, "bound_quantum_chsh");
    if (beta < 0.0 || beta > 2.0 * std::sqrt(2.0) + 1e-12)
        throw InputError("bound_quantum_chsh: beta outside the quantum range [0, 2 sqrt(2)]");
    return 0.5 * (beta - std::sqrt(8.0 - 16.0 * epsilon * epsilon));
}

double bound_quantum_chsh(double epsilon, double beta) {
    return std::max(0.0, bound_quantum_chsh_raw(epsilon, beta));
}

double epsilon_threshold(int n, double w, double beta, double beta_max) {
    (void)n;
    if (!(w > 0.0)) throw InputError("epsilon_threshold: relevance must be positive");
    if (beta > beta_max + 1e-12) throw InputError("epsilon_threshold: beta exceeds beta_max");
    return std::min(0.5, (beta_max - beta) / (2.0 * w));
}

std::pair<int, double> best_k(int n, double epsilon) {
    if (n < 2) throw InputError("best_k: need n >= 2");
    check_epsilon(epsilon, "best_k");
    int best = 1;
    double best_bound = bound_gen_chain(n, 1, epsilon);
    for (int k = 2; 2 * k <= n; ++k) {
        const double b = bound_gen_chain(n, k, epsilon);
        if (b > best_bound) {
            best = k;
            best_bound = b;
        }
    }
    return {best, best_bound};
}

int default_gen_chain_k(int n) {
    return std::max(1, static_cast<int>(std::floor(std::pow(n, 0.4))));
}

std::vector<BoundCurve> figure_data(int figure, const FigureParams& params) {
    const std::vector<double> grid = epsilon_grid(params);
    std::vector<BoundCurve> curves;

    if (figure == 1) {
        const double beta = 2.0 * std::sqrt(2.0);
        curves.push_back(make_curve("chsh-ns", grid, [&](double eps) {
            return bound_general_raw(2, 2.0, eps, beta, 4.0);
        }));
        curves.push_back(make_curve("chsh-quantum", grid, [&](double eps) {
            return bound_quantum_chsh_raw(eps, beta);
        }));
    } else if (figure == 2) {
        std::vector<int> ns = params.n_list.empty() ? std::vector<int>{2, 4, 8} : params.n_list;
        for (int n : ns) {
            if (n < 2) throw InputError("figure_data: chain needs n >= 2");
            const double beta = chain_quantum_value(n);
            curves.push_back(make_curve("chain-n" + std::to_string(n), grid, [n, beta](double eps) {
                return bound_chain_raw(n, eps, beta);
            }));
        }
    } else if (figure == 3) {
        std::vector<int> ns = params.n_list.empty() ? std::vector<int>{100, 1000} : params.n_list;
        for (int n : ns) {
            if (n < 2) throw InputError("figure_data: generalized chain needs n >= 2");
            const int k = params.k > 0 ? params.k : default_gen_chain_k(n);
            if (2 * k > n) throw InputError("figure_data: k exceeds n/2");
            cross_check_spectral_norm(n, 1);
            cross_check_spectral_norm(n, k);
            const double beta_chain = chain_quantum_value(n);
            curves.push_back(
                make_curve("chain-n" + std::to_string(n), grid, [n, beta_chain](double eps) {
                    return bound_chain_raw(n, eps, beta_chain);
                }));
            curves.push_back(make_curve(
                "genchain-n" + std::to_string(n) + "-k" + std::to_string(k), grid,
                [n, k](double eps) { return bound_gen_chain_raw(n, k, eps); }));
        }
    } else {
        throw InputError("figure_data: unknown figure id " + std::to_string(figure));
    }

    std::sort(curves.begin(), curves.end(),
              [](const BoundCurve& a, const BoundCurve& b) { return a.label < b.label; });
    return curves;
}

std::string format_g12(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

void write_curves_csv(std::ostream& out, const std::vector<BoundCurve>& curves) {
    std::vector<const BoundCurve*> ordered;
    ordered.reserve(curves.size());
    for (const auto& c : curves) ordered.push_back(&c);
    std::sort(ordered.begin(), ordered.end(),
              [](const BoundCurve* a, const BoundCurve* b) { return a->label < b->label; });

    out << "epsilon,label,d_min,raw\n";
    for (const BoundCurve* c : ordered)
        for (std::size_t i = 0; i < c->epsilons.size(); ++i)
            out << format_g12(c->epsilons[i]) << ',' << c->label << ','
                << format_g12(c->d_min[i]) << ',' << format_g12(c->raw[i]) << '\n';
}

}  // namespace nonsig
