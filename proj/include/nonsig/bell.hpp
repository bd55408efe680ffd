#pragma once

#include <optional>
#include <vector>

#include "nonsig/box.hpp"
#include "nonsig/errors.hpp"

namespace nonsig {

/// A Bell functional beta = sum c(a,b,x,y) p(a,b|x,y).  Correlation-form
/// functionals additionally carry the n x m matrix C with
/// c(a,b,x,y) = C[x][y] * (-1)^(a+b).
struct BellFunctional {
    int n = 0;  ///< Alice setting count
    int m = 0;  ///< Bob setting count
    std::vector<double> coeffs;                        ///< indexed (x,y,a,b)
    std::optional<std::vector<double>> correlators;    ///< n*m row-major
    bool rescaled = false;                             ///< max |c| == 1

    double coeff(int x, int y, int a, int b) const {
        return coeffs[(((static_cast<std::size_t>(x) * m + y) * 2 + a) * 2) + b];
    }
    double corr(int x, int y) const {
        return (*correlators)[static_cast<std::size_t>(x) * m + y];
    }
    double max_abs_coeff() const;

    static BellFunctional from_correlators(int n, int m, std::vector<double> c);
    static BellFunctional from_coeffs(int n, int m, std::vector<double> c);
};

/// CHSH: C = [[1,1],[1,-1]]; classical bound 2, Tsirelson 2*sqrt(2), algebraic 4.
BellFunctional chsh();

/// Braunstein-Caves chain: sum_k (<A_k B_k> + <A_k B_{k+1}>) with the
/// wraparound term -<A_n B_1>.  Equals generalized_chain(n, 1).
BellFunctional chain(int n);

/// The banded "sign-flipped circulant" correlation game I_{n,k}: row 0 has
/// +1 in columns 0..k and -1 in columns n-k+1..n-1; each later row is the
/// previous one shifted right, with the wrapped entry's sign flipped.
/// Every row carries exactly 2k nonzero entries and the matrix is Toeplitz.
BellFunctional generalized_chain(int n, int k);

/// The correlator matrix of generalized_chain(n,k) alone (row-major n*n),
/// without the coefficient-tensor expansion.  Usable for large n.
std::vector<double> gen_chain_correlators(int n, int k);

/// beta = sum_{x,y,a,b} c(a,b,x,y) p(a,b|x,y).
double evaluate(const BellFunctional& f, const Box& box);

/// Divides all coefficients by max |c| and marks the result rescaled.
BellFunctional rescale(const BellFunctional& f);

/// Exact classical (local deterministic) value by enumerating Bob's 2^m
/// sign assignments with Alice responding optimally.  Correlation-form
/// functionals only; m <= 24.  Honors the NONSIG_LAB_THREADS worker cap.
double classical_value(const BellFunctional& f);

/// sum_{x,y} |C[x][y]| - the algebraic maximum of a correlation functional,
/// attained by no-signaling boxes.
double algebraic_max(const BellFunctional& f);

}  // namespace nonsig
