#pragma once

#include "nonsig/bell.hpp"
#include "nonsig/box.hpp"
#include "nonsig/lp.hpp"

namespace nonsig {

/// Maximum of a Bell functional over the no-signaling polytope.
/// Requires n*m <= 400.
double ns_value(const BellFunctional& f);

/// Maximum over no-signaling boxes whose observable B_{y_det} is
/// deterministic: the larger of the two LPs that pin Bob's outcome at
/// y_det to 0 resp. 1.
double ns_value_deterministic(const BellFunctional& f, int y_det = 0);

/// Relevance w = ns_value - ns_value_deterministic >= 0: how far the gently
/// measured observable is from being deterministic under the functional.
double relevance(const BellFunctional& f, int y = 0);

/// A no-signaling gentle adversary of minimal disturbance.
struct AdversaryResult {
    double d_min;             ///< minimal average total disturbance
    TripartiteBox extension;  ///< tripartite box attaining it
};

/// Minimizes the average total disturbance over all tripartite no-signaling
/// extensions of `p` that satisfy the gentle-measurement constraints of
/// strength `epsilon` at Bob's first setting:
///   ptilde(a,b,g|x,0) = (1/2 + eps) p(a,b|x,0)   for g == b,
///                       (1/2 - eps) p(a,b|x,0)   for g != b,
/// with Alice's marginal preserved for every y.  Requires n*m <= 100.
AdversaryResult min_disturbance_adversary(const Box& p, double epsilon);

/// <B1g B1> read off a tripartite box at the gently measured setting:
/// sum_{b,g} (-1)^(b+g) ptilde(b,g|y).
double gain_correlator(const TripartiteBox& tri, int y_gentle = 0);

}  // namespace nonsig
