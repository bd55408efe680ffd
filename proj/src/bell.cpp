#include "nonsig/bell.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>

namespace nonsig {

namespace {

std::vector<double> coeffs_from_correlators(int n, int m, const std::vector<double>& c) {
    std::vector<double> out(static_cast<std::size_t>(n) * m * 4);
    std::size_t i = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < m; ++y) {
            const double v = c[static_cast<std::size_t>(x) * m + y];
            out[i++] = v;   // a=0,b=0
            out[i++] = -v;  // a=0,b=1
            out[i++] = -v;  // a=1,b=0
            out[i++] = v;   // a=1,b=1
        }
    return out;
}

// Worker count: hardware concurrency, capped by NONSIG_LAB_THREADS when set.
int worker_count() {
    int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* s = std::getenv("NONSIG_LAB_THREADS")) {
        const long v = std::strtol(s, nullptr, 10);
        if (v >= 1) workers = std::min<long>(workers, v);
    }
    return workers;
}

}  // namespace

double BellFunctional::max_abs_coeff() const {
    double mx = 0.0;
    for (double v : coeffs) mx = std::max(mx, std::abs(v));
    return mx;
}

BellFunctional BellFunctional::from_correlators(int n, int m, std::vector<double> c) {
    if (n < 1 || m < 1) throw InputError("BellFunctional: setting counts must be positive");
    if (c.size() != static_cast<std::size_t>(n) * m)
        throw InputError("BellFunctional: correlator matrix has wrong size");
    for (double v : c)
        if (!std::isfinite(v)) throw InputError("BellFunctional: non-finite correlator entry");
    BellFunctional f;
    f.n = n;
    f.m = m;
    f.coeffs = coeffs_from_correlators(n, m, c);
    f.correlators = std::move(c);
    f.rescaled = std::abs(f.max_abs_coeff() - 1.0) <= 1e-12;
    return f;
}

BellFunctional BellFunctional::from_coeffs(int n, int m, std::vector<double> c) {
    if (n < 1 || m < 1) throw InputError("BellFunctional: setting counts must be positive");
    if (c.size() != static_cast<std::size_t>(n) * m * 4)
        throw InputError("BellFunctional: coefficient tensor has wrong size");
    for (double v : c)
        if (!std::isfinite(v)) throw InputError("BellFunctional: non-finite coefficient");
    BellFunctional f;
    f.n = n;
    f.m = m;
    f.coeffs = std::move(c);
    f.rescaled = std::abs(f.max_abs_coeff() - 1.0) <= 1e-12;
    return f;
}

BellFunctional chsh() {
    return BellFunctional::from_correlators(2, 2, {1.0, 1.0, 1.0, -1.0});
}

BellFunctional chain(int n) {
    if (n < 2) throw InputError("chain: need at least 2 settings");
    std::vector<double> c(static_cast<std::size_t>(n) * n, 0.0);
    for (int x = 0; x < n - 1; ++x) {
        c[static_cast<std::size_t>(x) * n + x] = 1.0;
        c[static_cast<std::size_t>(x) * n + x + 1] = 1.0;
    }
    c[static_cast<std::size_t>(n - 1) * n + (n - 1)] = 1.0;
    c[static_cast<std::size_t>(n - 1) * n] = -1.0;
    return BellFunctional::from_correlators(n, n, std::move(c));
}

std::vector<double> gen_chain_correlators(int n, int k) {
    if (n < 2 || k < 1 || 2 * k > n)
        throw InputError("generalized_chain: need 1 <= k <= n/2, got n=" +
                         std::to_string(n) + " k=" + std::to_string(k));
    std::vector<double> c(static_cast<std::size_t>(n) * n, 0.0);
    for (int y = 0; y <= k; ++y) c[y] = 1.0;
    for (int y = n - k + 1; y < n; ++y) c[y] = -1.0;
    for (int x = 1; x < n; ++x) {
        double* row = &c[static_cast<std::size_t>(x) * n];
        const double* prev = &c[static_cast<std::size_t>(x - 1) * n];
        row[0] = -prev[n - 1];  // wrapped entry changes sign
        for (int y = 1; y < n; ++y) row[y] = prev[y - 1];
    }
    return c;
}

BellFunctional generalized_chain(int n, int k) {
    return BellFunctional::from_correlators(n, n, gen_chain_correlators(n, k));
}

double evaluate(const BellFunctional& f, const Box& box) {
    if (box.n_inputs_a() != f.n || box.n_inputs_b() != f.m)
        throw InputError("evaluate: functional is " + std::to_string(f.n) + "x" +
                         std::to_string(f.m) + " but box is " +
                         std::to_string(box.n_inputs_a()) + "x" +
                         std::to_string(box.n_inputs_b()));
    double beta = 0.0;
    const auto& p = box.raw();
    for (std::size_t i = 0; i < p.size(); ++i) beta += f.coeffs[i] * p[i];
    return beta;
}

BellFunctional rescale(const BellFunctional& f) {
    const double mx = f.max_abs_coeff();
    if (mx <= 0.0) throw InputError("rescale: zero functional");
    BellFunctional out = f;
    for (double& v : out.coeffs) v /= mx;
    if (out.correlators)
        for (double& v : *out.correlators) v /= mx;
    out.rescaled = true;
    return out;
}

double algebraic_max(const BellFunctional& f) {
    if (!f.correlators)
        throw UnsupportedFormError("algebraic_max: functional has no correlator form");
    double s = 0.0;
    for (double v : *f.correlators) s += std::abs(v);
    return s;
}

double classical_value(const BellFunctional& f) {
    if (!f.correlators)
        throw UnsupportedFormError("classical_value: functional has no correlator form");
    if (f.m > 24)
        throw ResourceError("classical_value: enumeration over 2^" + std::to_string(f.m) +
                            " Bob strategies exceeds the m <= 24 limit");
    const int n = f.n, m = f.m;
    const std::vector<double>& c = *f.correlators;

    // Global sign symmetry lets us fix Bob's first sign to +1.
    const std::uint64_t count = m > 1 ? (std::uint64_t{1} << (m - 1)) : 1;

    auto scan = [&](std::uint64_t begin, std::uint64_t end) {
        double best = -1e300;
        std::vector<double> sign(m);
        for (std::uint64_t mask = begin; mask < end; ++mask) {
            sign[0] = 1.0;
            for (int y = 1; y < m; ++y)
                sign[y] = (mask >> (y - 1)) & 1 ? -1.0 : 1.0;
            double value = 0.0;
            for (int x = 0; x < n; ++x) {
                double row = 0.0;
                const double* cr = &c[static_cast<std::size_t>(x) * m];
                for (int y = 0; y < m; ++y) row += cr[y] * sign[y];
                value += std::abs(row);  // Alice answers with the row's sign
            }
            best = std::max(best, value);
        }
        return best;
    };

    const int workers = worker_count();
    if (m < 16 || workers <= 1 || count < static_cast<std::uint64_t>(workers))
        return scan(0, count);

    std::vector<double> partial(workers, -1e300);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = count / workers;
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t b = w * chunk;
        const std::uint64_t e = (w == workers - 1) ? count : b + chunk;
        pool.emplace_back([&, w, b, e] { partial[w] = scan(b, e); });
    }
    for (auto& t : pool) t.join();
    return *std::max_element(partial.begin(), partial.end());
}

}  // namespace nonsig
