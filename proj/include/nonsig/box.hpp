#pragma once

#include <array>
#include <vector>

#include "nonsig/errors.hpp"

namespace nonsig {

/// Tolerance for normalization and no-signaling checks on boxes.
inline constexpr double kBoxTolerance = 1e-9;
/// Slack below zero / above one tolerated on individual entries before
/// construction rejects them; entries inside the slack are clamped to [0,1].
inline constexpr double kEntrySlack = 1e-12;

/// Bipartite conditional probability table p(a,b|x,y) with binary outcomes.
///
/// Settings are 0-based throughout the API: x in [0,n), y in [0,m).
/// Construction validates nonnegativity, per-(x,y) normalization and both
/// no-signaling families, and clamps entries into [0,1].
class Box {
public:
    Box(int n_inputs_a, int n_inputs_b, std::vector<double> probs);

    int n_inputs_a() const { return n_; }
    int n_inputs_b() const { return m_; }

    double prob(int x, int y, int a, int b) const {
        check_indices(x, y, a, b);
        return p_[index(x, y, a, b)];
    }

    /// p(a|x); independent of y by no-signaling.
    double alice_marginal(int x, int a) const;
    /// p(b|y); independent of x by no-signaling.
    double bob_marginal(int y, int b) const;

    const std::vector<double>& raw() const { return p_; }

    std::size_t index(int x, int y, int a, int b) const {
        return (((static_cast<std::size_t>(x) * m_ + y) * 2 + a) * 2) + b;
    }

private:
    void check_indices(int x, int y, int a, int b) const;

    int n_ = 0;
    int m_ = 0;
    std::vector<double> p_;
};

/// Tripartite extension p(a,b,g|x,y). Grace (the gentle observer) has a
/// single input, so only her binary output g appears as an index.
class TripartiteBox {
public:
    TripartiteBox(int n_inputs_a, int n_inputs_b, std::vector<double> probs);

    int n_inputs_a() const { return n_; }
    int n_inputs_b() const { return m_; }

    double prob(int x, int y, int a, int b, int g) const {
        check_indices(x, y, a, b, g);
        return p_[index(x, y, a, b, g)];
    }

    const std::vector<double>& raw() const { return p_; }

    std::size_t index(int x, int y, int a, int b, int g) const {
        return ((((static_cast<std::size_t>(x) * m_ + y) * 2 + a) * 2 + b) * 2) + g;
    }

private:
    void check_indices(int x, int y, int a, int b, int g) const;

    int n_ = 0;
    int m_ = 0;
    std::vector<double> p_;
};

/// Per-state disturbance values D_{a,x}(B_y) together with the averaged
/// total.  The entry at the excluded setting is identically zero.
struct DisturbanceReport {
    int n_inputs_a = 0;
    int n_inputs_b = 0;
    int excluded_setting = 0;
    std::vector<double> per_setting;  ///< indexed (x, a, y)
    double total = 0.0;

    double d(int x, int a, int y) const {
        return per_setting[(static_cast<std::size_t>(x) * 2 + a) * n_inputs_b + y];
    }
};

/// The Popescu-Rohrlich box: p(a,b|x,y) = 1/2 iff a xor b = x*y (0-based
/// settings), the extremal no-signaling point with CHSH value 4.
Box make_pr_box();

/// White noise: p = 1/4 for every outcome pair and setting.
Box make_uniform_box(int n_inputs_a, int n_inputs_b);

/// Bob's conditional state p(b|y) given Alice measured x and saw a,
/// as a table indexed [y][b].  When p(a|x) is (numerically) zero the
/// uniform distribution is returned; the convention is harmless because
/// every use weights these conditionals by p(a|x).
std::vector<std::array<double, 2>> condition_on_alice(const Box& box, int x, int a);

/// <A_x B_y> = sum_{a,b} (-1)^(a+b) p(a,b|x,y).
double correlator(const Box& box, int x, int y);

/// Sums out Grace's outcome: p(a,b|x,y) = sum_g p(a,b,g|x,y).
Box marginalize_tripartite(const TripartiteBox& tri);

/// Average total disturbance between two boxes sharing Alice marginals:
/// the weighted L1 distance of Bob's conditionals over all settings except
/// `excluded_setting`, with uniform weight 1/n on Alice's settings.
DisturbanceReport disturbance_total(const Box& before, const Box& after,
                                    int excluded_setting = 0);

}  // namespace nonsig
