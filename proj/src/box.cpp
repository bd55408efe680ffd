#include "nonsig/box.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace nonsig {

namespace {

std::string block_name(int x, int y) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "(x=%d, y=%d)", x, y);
    return buf;
}

// Shared entry screening: reject entries outside [-slack, 1+slack], clamp the
// rest into [0,1].
void clamp_entries(std::vector<double>& p, const char* what) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double v = p[i];
        if (!std::isfinite(v) || v < -kEntrySlack || v > 1.0 + kEntrySlack) {
            throw ValidationError(std::string(what) + ": entry " + std::to_string(i) +
                                  " = " + std::to_string(v) + " outside [0,1]");
        }
        if (v < 0.0) p[i] = 0.0;
        if (v > 1.0) p[i] = 1.0;
    }
}

}  // namespace

Box::Box(int n_inputs_a, int n_inputs_b, std::vector<double> probs)
    : n_(n_inputs_a), m_(n_inputs_b), p_(std::move(probs)) {
    if (n_ < 1 || m_ < 1) throw InputError("Box: setting counts must be positive");
    if (p_.size() != static_cast<std::size_t>(n_) * m_ * 4) {
        throw InputError("Box: probs has size " + std::to_string(p_.size()) +
                         ", expected " + std::to_string(std::size_t(n_) * m_ * 4));
    }
    clamp_entries(p_, "Box");

    for (int x = 0; x < n_; ++x) {
        for (int y = 0; y < m_; ++y) {
            double sum = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) sum += p_[index(x, y, a, b)];
            if (std::abs(sum - 1.0) > kBoxTolerance) {
                throw ValidationError("Box: block " + block_name(x, y) + " sums to " +
                                      std::to_string(sum) + ", expected 1");
            }
        }
    }
    // Alice's marginal must not depend on Bob's setting.
    for (int x = 0; x < n_; ++x) {
        for (int a = 0; a < 2; ++a) {
            double ref = p_[index(x, 0, a, 0)] + p_[index(x, 0, a, 1)];
            for (int y = 1; y < m_; ++y) {
                double s = p_[index(x, y, a, 0)] + p_[index(x, y, a, 1)];
                if (std::abs(s - ref) > kBoxTolerance) {
                    throw ValidationError("Box: signaling to Alice at (x=" +
                                          std::to_string(x) + ", a=" + std::to_string(a) +
                                          "): marginal differs between y=0 and y=" +
                                          std::to_string(y));
                }
            }
        }
    }
    // Bob's marginal must not depend on Alice's setting.
    for (int y = 0; y < m_; ++y) {
        for (int b = 0; b < 2; ++b) {
            double ref = p_[index(0, y, 0, b)] + p_[index(0, y, 1, b)];
            for (int x = 1; x < n_; ++x) {
                double s = p_[index(x, y, 0, b)] + p_[index(x, y, 1, b)];
                if (std::abs(s - ref) > kBoxTolerance) {
                    throw ValidationError("Box: signaling to Bob at (y=" +
                                          std::to_string(y) + ", b=" + std::to_string(b) +
                                          "): marginal differs between x=0 and x=" +
                                          std::to_string(x));
                }
            }
        }
    }
}

void Box::check_indices(int x, int y, int a, int b) const {
    if (x < 0 || x >= n_) throw InputError("Box: setting x=" + std::to_string(x) + " out of range");
    if (y < 0 || y >= m_) throw InputError("Box: setting y=" + std::to_string(y) + " out of range");
    if (a < 0 || a > 1 || b < 0 || b > 1) throw InputError("Box: outcomes must be 0 or 1");
}

double Box::alice_marginal(int x, int a) const {
    return prob(x, 0, a, 0) + prob(x, 0, a, 1);
}

double Box::bob_marginal(int y, int b) const {
    return prob(0, y, 0, b) + prob(0, y, 1, b);
}

TripartiteBox::TripartiteBox(int n_inputs_a, int n_inputs_b, std::vector<double> probs)
    : n_(n_inputs_a), m_(n_inputs_b), p_(std::move(probs)) {
    if (n_ < 1 || m_ < 1) throw InputError("TripartiteBox: setting counts must be positive");
    if (p_.size() != static_cast<std::size_t>(n_) * m_ * 8) {
        throw InputError("TripartiteBox: probs has size " + std::to_string(p_.size()) +
                         ", expected " + std::to_string(std::size_t(n_) * m_ * 8));
    }
    clamp_entries(p_, "TripartiteBox");

    for (int x = 0; x < n_; ++x) {
        for (int y = 0; y < m_; ++y) {
            double sum = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int g = 0; g < 2; ++g) sum += p_[index(x, y, a, b, g)];
            if (std::abs(sum - 1.0) > kBoxTolerance) {
                throw ValidationError("TripartiteBox: block " + block_name(x, y) +
                                      " sums to " + std::to_string(sum) + ", expected 1");
            }
        }
    }
    // Bob+Grace statistics independent of Alice's setting.
    for (int y = 0; y < m_; ++y) {
        for (int b = 0; b < 2; ++b) {
            for (int g = 0; g < 2; ++g) {
                double ref = p_[index(0, y, 0, b, g)] + p_[index(0, y, 1, b, g)];
                for (int x = 1; x < n_; ++x) {
                    double s = p_[index(x, y, 0, b, g)] + p_[index(x, y, 1, b, g)];
                    if (std::abs(s - ref) > kBoxTolerance) {
                        throw ValidationError(
                            "TripartiteBox: signaling to Bob/Grace at (y=" + std::to_string(y) +
                            ", b=" + std::to_string(b) + ", g=" + std::to_string(g) +
                            "): marginal differs between x=0 and x=" + std::to_string(x));
                    }
                }
            }
        }
    }
    // Alice+Grace statistics independent of Bob's setting.
    for (int x = 0; x < n_; ++x) {
        for (int a = 0; a < 2; ++a) {
            for (int g = 0; g < 2; ++g) {
                double ref = p_[index(x, 0, a, 0, g)] + p_[index(x, 0, a, 1, g)];
                for (int y = 1; y < m_; ++y) {
                    double s = p_[index(x, y, a, 0, g)] + p_[index(x, y, a, 1, g)];
                    if (std::abs(s - ref) > kBoxTolerance) {
                        throw ValidationError(
                            "TripartiteBox: signaling to Alice/Grace at (x=" + std::to_string(x) +
                            ", a=" + std::to_string(a) + ", g=" + std::to_string(g) +
                            "): marginal differs between y=0 and y=" + std::to_string(y));
                    }
                }
            }
        }
    }
}

void TripartiteBox::check_indices(int x, int y, int a, int b, int g) const {
    if (x < 0 || x >= n_) throw InputError("TripartiteBox: setting x out of range");
    if (y < 0 || y >= m_) throw InputError("TripartiteBox: setting y out of range");
    if (a < 0 || a > 1 || b < 0 || b > 1 || g < 0 || g > 1)
        throw InputError("TripartiteBox: outcomes must be 0 or 1");
}

Box make_pr_box() {
    const int n = 2, m = 2;
    std::vector<double> p(16, 0.0);
    auto idx = [&](int x, int y, int a, int b) {
        return (((static_cast<std::size_t>(x) * m + y) * 2 + a) * 2) + b;
    };
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < m; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if (((a + b) & 1) == (x * y & 1)) p[idx(x, y, a, b)] = 0.5;
    return Box(n, m, std::move(p));
}

Box make_uniform_box(int n_inputs_a, int n_inputs_b) {
    if (n_inputs_a < 1 || n_inputs_b < 1)
        throw InputError("make_uniform_box: setting counts must be positive");
    std::vector<double> p(static_cast<std::size_t>(n_inputs_a) * n_inputs_b * 4, 0.25);
    return Box(n_inputs_a, n_inputs_b, std::move(p));
}

std::vector<std::array<double, 2>> condition_on_alice(const Box& box, int x, int a) {
    const double pa = box.alice_marginal(x, a);  // validates x, a
    const int m = box.n_inputs_b();
    std::vector<std::array<double, 2>> cond(m);
    if (pa < 1e-12) {
        for (int y = 0; y < m; ++y) cond[y] = {0.5, 0.5};
        return cond;
    }
    for (int y = 0; y < m; ++y)
        for (int b = 0; b < 2; ++b) cond[y][b] = box.prob(x, y, a, b) / pa;
    return cond;
}

double correlator(const Box& box, int x, int y) {
    double c = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            c += ((a + b) & 1 ? -1.0 : 1.0) * box.prob(x, y, a, b);
    return c;
}

Box marginalize_tripartite(const TripartiteBox& tri) {
    const int n = tri.n_inputs_a(), m = tri.n_inputs_b();
    std::vector<double> p(static_cast<std::size_t>(n) * m * 4, 0.0);
    std::size_t i = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < m; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b, ++i)
                    p[i] = tri.prob(x, y, a, b, 0) + tri.prob(x, y, a, b, 1);
    return Box(n, m, std::move(p));
}

DisturbanceReport disturbance_total(const Box& before, const Box& after,
                                    int excluded_setting) {
    const int n = before.n_inputs_a(), m = before.n_inputs_b();
    if (after.n_inputs_a() != n || after.n_inputs_b() != m)
        throw InputError("disturbance_total: boxes have different setting counts");
    if (excluded_setting < 0 || excluded_setting >= m)
        throw InputError("disturbance_total: excluded setting out of range");
    for (int x = 0; x < n; ++x)
        for (int a = 0; a < 2; ++a)
            if (std::abs(before.alice_marginal(x, a) - after.alice_marginal(x, a)) > 1e-7)
                throw InputError("disturbance_total: Alice marginals differ at (x=" +
                                 std::to_string(x) + ", a=" + std::to_string(a) + ")");

    DisturbanceReport report;
    report.n_inputs_a = n;
    report.n_inputs_b = m;
    report.excluded_setting = excluded_setting;
    report.per_setting.assign(static_cast<std::size_t>(n) * 2 * m, 0.0);

    double total = 0.0;
    for (int x = 0; x < n; ++x) {
        for (int a = 0; a < 2; ++a) {
            const double weight = before.alice_marginal(x, a) / n;
            const auto cond_before = condition_on_alice(before, x, a);
            const auto cond_after = condition_on_alice(after, x, a);
            for (int y = 0; y < m; ++y) {
                if (y == excluded_setting) continue;
                double d = std::abs(cond_before[y][0] - cond_after[y][0]) +
                           std::abs(cond_before[y][1] - cond_after[y][1]);
                report.per_setting[(static_cast<std::size_t>(x) * 2 + a) * m + y] = d;
                total += weight * d;
            }
        }
    }
    report.total = total;
    return report;
}

}  // namespace nonsig
