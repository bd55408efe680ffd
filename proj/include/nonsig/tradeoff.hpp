#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nonsig/errors.hpp"

namespace nonsig {

/// One lower-bound curve D_min(epsilon).  `d_min` entries are clamped at
/// zero; `raw` keeps the unclamped values so thresholds stay locatable.
struct BoundCurve {
    std::string label;
    std::vector<double> epsilons;
    std::vector<double> d_min;
    std::vector<double> raw;
};

/// Unclamped (w * 2 eps - (beta_max - beta)) / n.
double bound_general_raw(int n, double w, double epsilon, double beta, double beta_max);
/// max(0, bound_general_raw).
double bound_general(int n, double w, double epsilon, double beta, double beta_max);

/// Chain-inequality instantiation: max(0, 4 eps / n - (2n - beta) / n).
double bound_chain_raw(int n, double epsilon, double beta);
double bound_chain(int n, double epsilon, double beta);

/// Generalized-chain bound at the quantum value:
/// max(0, 4 k eps / n - 2 (k - sum_{j=1..k} cos((2j-1) pi / 2n))).
double bound_gen_chain_raw(int n, int k, double epsilon);
double bound_gen_chain(int n, int k, double epsilon);

/// Quantum CHSH trade-off: max(0, (beta - sqrt(8 - 4 (2 eps)^2)) / 2).
double bound_quantum_chsh_raw(double epsilon, double beta);
double bound_quantum_chsh(double epsilon, double beta);

/// Smallest information gain with a non-vacuous bound:
/// min(1/2, (beta_max - beta) / (2w)).  The n argument is part of the
/// trade-off signature but does not enter the threshold.
double epsilon_threshold(int n, double w, double beta, double beta_max);

/// argmax over k in [1, n/2] of bound_gen_chain(n, k, epsilon);
/// ties break toward smaller k.
std::pair<int, double> best_k(int n, double epsilon);

/// Default band width for figure 3: max(1, floor(n^0.4)).
int default_gen_chain_k(int n);

struct FigureParams {
    double eps_start = 0.0;
    double eps_end = 0.5;
    double eps_step = 0.005;
    std::vector<int> n_list;  ///< figures 2/3; defaults {2,4,8} resp. {100,1000}
    int k = 0;                ///< figure 3 band width; 0 = default_gen_chain_k(n)
};

/// Curves behind the paper's three figures.
///   1: CHSH at beta = 2 sqrt(2) - no-signaling vs quantum bound.
///   2: chain bound at beta = 2n cos(pi/2n) for each n.
///   3: chain vs generalized chain for large n; the closed-form quantum
///      values are cross-checked against power-iteration spectral norms.
std::vector<BoundCurve> figure_data(int figure, const FigureParams& params = {});

/// CSV with header "epsilon,label,d_min,raw", rows ordered by (label, eps),
/// floats at 12 significant digits.
void write_curves_csv(std::ostream& out, const std::vector<BoundCurve>& curves);

/// %.12g rendering used for all numeric CLI/CSV output.
std::string format_g12(double value);

}  // namespace nonsig
