#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "nonsig/box.hpp"
#include "nonsig/errors.hpp"

namespace nonsig {

/// Dense complex matrix carrier for operators and states.
using ComplexMatrix = Eigen::MatrixXcd;

/// Two-qubit scenario: a shared density matrix (Alice tensor Bob), one
/// measurement angle per setting on each side (observables live in the
/// Bloch X-Z plane: sin(theta) sigma_x + cos(theta) sigma_z), and the gentle
/// strength epsilon for Grace's measurement of Bob's first observable.
struct QuantumScenario {
    Eigen::Matrix4cd state;
    std::vector<double> alice_angles;
    std::vector<double> bob_angles;
    double epsilon = 0.0;

    QuantumScenario(Eigen::Matrix4cd density, std::vector<double> alice,
                    std::vector<double> bob, double eps);

    /// The maximally entangled |phi+> = (|00> + |11>)/sqrt(2) scenario.
    static QuantumScenario phi_plus(std::vector<double> alice, std::vector<double> bob,
                                    double eps);
};

/// |phi+><phi+| as a density matrix.
Eigen::Matrix4cd phi_plus_state();

/// Gentle-measurement Kraus pair in the computational basis:
///   E0 = sqrt(1/2+eps)|0><0| + sqrt(1/2-eps)|1><1|,  E1 with roles swapped.
std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd> kraus_gentle(double epsilon);

/// sin(theta) sigma_x + cos(theta) sigma_z.
Eigen::Matrix2cd pauli_observable(double theta);

/// Projector onto the (-1)^outcome eigenspace of pauli_observable(theta).
Eigen::Matrix2cd outcome_projector(double theta, int outcome);

/// Verification data for the two gentle-measurement axioms on the state
/// alpha|0> + sqrt(1-alpha^2)|1>: the sharp marginal must be unchanged and
/// the gentle-sharp conditional must equal 1/2 +- eps.
struct GentleReport {
    std::array<double, 2> p_gentle;       ///< p(b1g = g)
    std::array<double, 2> sharp_before;   ///< p(b1 = j), no gentle measurement
    std::array<double, 2> sharp_after;    ///< p(b1' = j) after the gentle round
    std::array<std::array<double, 2>, 2> gentle_given_sharp;  ///< [i][j] = p(b1g=i | b1'=j)
    double marginal_deviation = 0.0;
    double conditional_deviation = 0.0;
};

GentleReport verify_gentle_assumptions(double alpha, double epsilon);

/// Optimal chained-measurement angles: Alice theta_x = x pi/n, Bob
/// theta_y = (2y-1) pi/2n (0-based x, y).  Reproduces the correlators
/// <A_{x+j} B_x> = cos((2j+1) pi/2n) and achieves the chain /
/// generalized-chain quantum values on |phi+>.
std::pair<std::vector<double>, std::vector<double>> chain_angles(int n);

/// Angles saturating the Tsirelson bound of the CHSH functional proper:
/// Alice {0, pi/2}, Bob {pi/4, -pi/4}.
std::pair<std::vector<double>, std::vector<double>> tsirelson_angles();

/// p(a,b|x,y) from projective measurements on the scenario's state.
Box quantum_box(const QuantumScenario& scenario);

/// Grace's gentle Kraus pair acts in the eigenbasis of Bob's first
/// observable:  p(a,b,g|x,y) = Tr[(P_a x P_b)(1 x E_g) rho (1 x E_g)^dag].
TripartiteBox tripartite_quantum_box(const QuantumScenario& scenario);

/// Largest singular value by power iteration on C^T C with a deterministic
/// all-ones start (fixed-seed re-randomization on stagnation), relative
/// tolerance 1e-12.
double spectral_norm(const Eigen::MatrixXd& c);

/// Eigenvalues of the generalized-chain coefficient matrix under the
/// anti-periodic phase ansatz omega_j = exp(-i pi (2j+1)/n):
///   lambda_j = (sum_{i=1}^{k+1} w^{n-i} - sum_{i=n-k+2}^{n} w^{n-i}) / w^{n-1}.
/// Their moduli are the singular values of the matrix.
std::vector<std::complex<double>> gen_chain_eigenvalues(int n, int k);

/// CHSH quantum monogamy check: lhs = beta_CHSH(marginal)^2 + 4 (2 eps)^2,
/// which must not exceed 8.
struct MonogamyReport {
    double chsh_value = 0.0;
    double gain_correlator = 0.0;  ///< <B1g B1> = 2 eps
    double lhs = 0.0;
    bool holds = false;
};

MonogamyReport quantum_monogamy_check(const QuantumScenario& scenario);

}  // namespace nonsig
