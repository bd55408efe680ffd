#include "nonsig/quantum.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "nonsig/bell.hpp"

namespace nonsig {

namespace {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using std::numbers::pi;

Matrix4cd kron2(const Matrix2cd& a, const Matrix2cd& b) {
    Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

void check_epsilon(double epsilon, const char* what) {
    if (!(epsilon >= 0.0 && epsilon <= 0.5))
        throw InputError(std::string(what) + ": epsilon must lie in [0, 1/2]");
}

}  // namespace

Eigen::Matrix4cd phi_plus_state() {
    Eigen::Vector4cd psi;
    psi << 1.0, 0.0, 0.0, 1.0;
    psi /= std::sqrt(2.0);
    return psi * psi.adjoint();
}

QuantumScenario::QuantumScenario(Eigen::Matrix4cd density, std::vector<double> alice,
                                 std::vector<double> bob, double eps)
    : state(std::move(density)), alice_angles(std::move(alice)),
      bob_angles(std::move(bob)), epsilon(eps) {
    check_epsilon(epsilon, "QuantumScenario");
    if (alice_angles.empty() || bob_angles.empty())
        throw InputError("QuantumScenario: each side needs at least one angle");
    if ((state - state.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw ValidationError("QuantumScenario: state is not Hermitian");
    if (std::abs(state.trace().real() - 1.0) > 1e-10 || std::abs(state.trace().imag()) > 1e-10)
        throw ValidationError("QuantumScenario: state trace is not 1");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(state);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw ValidationError("QuantumScenario: state has a negative eigenvalue");
}

QuantumScenario QuantumScenario::phi_plus(std::vector<double> alice, std::vector<double> bob,
                                          double eps) {
    return QuantumScenario(phi_plus_state(), std::move(alice), std::move(bob), eps);
}

std::pair<Matrix2cd, Matrix2cd> kraus_gentle(double epsilon) {
    check_epsilon(epsilon, "kraus_gentle");
    const double hi = std::sqrt(0.5 + epsilon), lo = std::sqrt(0.5 - epsilon);
    Matrix2cd e0 = Matrix2cd::Zero(), e1 = Matrix2cd::Zero();
    e0(0, 0) = hi;
    e0(1, 1) = lo;
    e1(0, 0) = lo;
    e1(1, 1) = hi;
    return {e0, e1};
}

Matrix2cd pauli_observable(double theta) {
    Matrix2cd o;
    o << std::cos(theta), std::sin(theta), std::sin(theta), -std::cos(theta);
    return o;
}

Matrix2cd outcome_projector(double theta, int outcome) {
    if (outcome != 0 && outcome != 1) throw InputError("outcome_projector: outcome must be 0 or 1");
    const double sign = outcome == 0 ? 1.0 : -1.0;
    return 0.5 * (Matrix2cd::Identity() + sign * pauli_observable(theta));
}

GentleReport verify_gentle_assumptions(double alpha, double epsilon) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw InputError("verify_gentle_assumptions: alpha must lie in [0, 1]");
    check_epsilon(epsilon, "verify_gentle_assumptions");

    Eigen::Vector2cd psi;
    psi << alpha, std::sqrt(std::max(0.0, 1.0 - alpha * alpha));

    GentleReport report;
    report.sharp_before = {std::norm(psi(0)), std::norm(psi(1))};

    const auto [e0, e1] = kraus_gentle(epsilon);
    const Matrix2cd kraus[2] = {e0, e1};

    // Sharp outcome distribution conditioned on the gentle round's result.
    std::array<std::array<double, 2>, 2> sharp_given_gentle{};  // [j][g]
    for (int g = 0; g < 2; ++g) {
        const Eigen::Vector2cd unnorm = kraus[g] * psi;
        const double pg = unnorm.squaredNorm();
        report.p_gentle[g] = pg;
        if (pg < 1e-30) continue;  // branch never occurs; leave conditionals at 0
        const Eigen::Vector2cd post = unnorm / std::sqrt(pg);
        sharp_given_gentle[0][g] = std::norm(post(0));
        sharp_given_gentle[1][g] = std::norm(post(1));
    }

    for (int j = 0; j < 2; ++j) {
        report.sharp_after[j] = sharp_given_gentle[j][0] * report.p_gentle[0] +
                                sharp_given_gentle[j][1] * report.p_gentle[1];
        report.marginal_deviation = std::max(
            report.marginal_deviation, std::abs(report.sharp_after[j] - report.sharp_before[j]));
    }
    for (int j = 0; j < 2; ++j) {
        if (report.sharp_after[j] < 1e-14) continue;  // conditioning on a null event
        for (int i = 0; i < 2; ++i) {
            const double cond =
                sharp_given_gentle[j][i] * report.p_gentle[i] / report.sharp_after[j];
            report.gentle_given_sharp[i][j] = cond;
            const double expected = i == j ? 0.5 + epsilon : 0.5 - epsilon;
            report.conditional_deviation =
                std::max(report.conditional_deviation, std::abs(cond - expected));
        }
    }
    return report;
}

std::pair<std::vector<double>, std::vector<double>> chain_angles(int n) {
    if (n < 2) throw InputError("chain_angles: need at least 2 settings");
    std::vector<double> alice(n), bob(n);
    for (int x = 0; x < n; ++x) alice[x] = x * pi / n;
    for (int y = 0; y < n; ++y) bob[y] = (2 * y - 1) * pi / (2 * n);
    return {std::move(alice), std::move(bob)};
}

std::pair<std::vector<double>, std::vector<double>> tsirelson_angles() {
    return {{0.0, pi / 2}, {pi / 4, -pi / 4}};
}

Box quantum_box(const QuantumScenario& scenario) {
    const int n = static_cast<int>(scenario.alice_angles.size());
    const int m = static_cast<int>(scenario.bob_angles.size());
    std::vector<double> p(static_cast<std::size_t>(n) * m * 4);
    std::size_t i = 0;
    for (int x = 0; x < n; ++x) {
        const Matrix2cd pa[2] = {outcome_projector(scenario.alice_angles[x], 0),
                                 outcome_projector(scenario.alice_angles[x], 1)};
        for (int y = 0; y < m; ++y) {
            const Matrix2cd pb[2] = {outcome_projector(scenario.bob_angles[y], 0),
                                     outcome_projector(scenario.bob_angles[y], 1)};
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    p[i++] = (kron2(pa[a], pb[b]) * scenario.state).trace().real();
        }
    }
    return Box(n, m, std::move(p));
}

TripartiteBox tripartite_quantum_box(const QuantumScenario& scenario) {
    const int n = static_cast<int>(scenario.alice_angles.size());
    const int m = static_cast<int>(scenario.bob_angles.size());

    // Grace's Kraus pair expressed in the eigenbasis of Bob's first observable.
    const double theta1 = scenario.bob_angles[0];
    Eigen::Matrix2cd basis;  // columns: +1 and -1 eigenvectors of B_1
    basis << std::cos(theta1 / 2), -std::sin(theta1 / 2),
             std::sin(theta1 / 2),  std::cos(theta1 / 2);
    const auto [e0, e1] = kraus_gentle(scenario.epsilon);
    const Matrix2cd gentle[2] = {basis * e0 * basis.adjoint(), basis * e1 * basis.adjoint()};

    std::vector<double> p(static_cast<std::size_t>(n) * m * 8);
    std::size_t i = 0;
    for (int x = 0; x < n; ++x) {
        const Matrix2cd pa[2] = {outcome_projector(scenario.alice_angles[x], 0),
                                 outcome_projector(scenario.alice_angles[x], 1)};
        for (int y = 0; y < m; ++y) {
            const Matrix2cd pb[2] = {outcome_projector(scenario.bob_angles[y], 0),
                                     outcome_projector(scenario.bob_angles[y], 1)};
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int g = 0; g < 2; ++g) {
                        const Matrix2cd bob_effect = gentle[g].adjoint() * pb[b] * gentle[g];
                        p[i++] = (kron2(pa[a], bob_effect) * scenario.state).trace().real();
                    }
        }
    }
    return TripartiteBox(n, m, std::move(p));
}

double spectral_norm(const Eigen::MatrixXd& c) {
    if (c.rows() == 0 || c.cols() == 0) throw InputError("spectral_norm: empty matrix");
    if (c.cwiseAbs().maxCoeff() == 0.0) throw InputError("spectral_norm: zero matrix");

    constexpr double kRelTol = 1e-12;
    constexpr int kMaxIters = 200000;

    Eigen::VectorXd v = Eigen::VectorXd::Ones(c.cols());
    v.normalize();
    std::mt19937_64 rng(0x5eed);  // fixed seed: deterministic restarts
    double sigma = 0.0;
    for (int it = 0; it < kMaxIters; ++it) {
        Eigen::VectorXd w = c.transpose() * (c * v);
        const double norm = w.norm();
        if (norm < 1e-300) {
            // Start vector fell in the null space; restart from a seeded draw.
            std::normal_distribution<double> gauss;
            for (Eigen::Index j = 0; j < v.size(); ++j) v(j) = gauss(rng);
            v.normalize();
            continue;
        }
        v = w / norm;
        const double next = std::sqrt((c * v).squaredNorm());
        if (it > 0 && std::abs(next - sigma) <= kRelTol * std::max(next, 1e-300)) return next;
        sigma = next;
    }
    throw SolverError("spectral_norm: power iteration did not converge within " +
                      std::to_string(kMaxIters) + " iterations");
}

std::vector<std::complex<double>> gen_chain_eigenvalues(int n, int k) {
    if (n < 2 || k < 1 || 2 * k > n)
        throw InputError("gen_chain_eigenvalues: need 1 <= k <= n/2");
    std::vector<std::complex<double>> lambdas(n);
    for (int j = 0; j < n; ++j) {
        const std::complex<double> w = std::polar(1.0, -pi * (2 * j + 1) / n);
        std::complex<double> num = 0.0;
        for (int i = 1; i <= k + 1; ++i) num += std::pow(w, n - i);
        for (int i = n - k + 2; i <= n; ++i) num -= std::pow(w, n - i);
        lambdas[j] = num / std::pow(w, n - 1);
    }
    return lambdas;
}

MonogamyReport quantum_monogamy_check(const QuantumScenario& scenario) {
    if (scenario.alice_angles.size() != 2 || scenario.bob_angles.size() != 2)
        throw InputError("quantum_monogamy_check: needs a CHSH scenario (n = m = 2)");
    const Box marginal = marginalize_tripartite(tripartite_quantum_box(scenario));
    MonogamyReport report;
    report.chsh_value = evaluate(chsh(), marginal);
    report.gain_correlator = 2.0 * scenario.epsilon;
    report.lhs = report.chsh_value * report.chsh_value +
                 4.0 * report.gain_correlator * report.gain_correlator;
    report.holds = report.lhs <= 8.0 + 1e-8;
    return report;
}

}  // namespace nonsig
