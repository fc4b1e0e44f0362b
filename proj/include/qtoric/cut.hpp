#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qtoric/lattice.hpp"
#include "qtoric/polytope.hpp"
#include "qtoric/rational.hpp"

namespace qtoric {

// A cut instruction: slice the polytope with the halfspace
// { x : <x, -normal_j> <= level }, i.e. retain { <x, normal_j> >= -level },
// where normal_j is the normal of the referenced facet.
struct CutSpec {
    std::size_t facet_index = 0;
    Rational level = 0;
};

struct CutResult {
    HRepPolytope polytope;     // input polytope with the cut facet appended
    KernelLattice kernel;      // kernel lattice of the new normal family
    // Block basis of the new kernel: the old basis vectors extended by a zero
    // coordinate, plus the coupling vector g = e_{facet_index} + e_{new}.
    // Certified equal (as a lattice) to `kernel.basis`.
    IntMatrix kernel_block;
    std::size_t facet_index = 0;     // the facet the cut runs parallel to
    std::size_t new_facet_index = 0; // position of the appended facet
    Rational level = 0;              // offset of the appended facet
};

// Cuts P along a hyperplane parallel to one of its facets.  Throws
// ImproperCut unless the hyperplane strictly separates at least one vertex on
// each side, and NotDelzantAfterCut when the sliced polytope fails Delzant
// verification.  The new kernel always contains the old one (padded) plus the
// coupling vector; this block decomposition is certified against the
// recomputed kernel before returning.
CutResult polytope_cut(const HRepPolytope& P, const CutSpec& spec);

struct CutConsistencyReport {
    double max_residual = 0.0;          // new kernel pairings vs composed formula
    double negative_control = 0.0;      // same with the quartic term's sign flipped
    std::size_t samples = 0;
};

// Samples the level set over the cut polytope and compares, per sample, the
// pairing of sigma with the coupling vector against the composed expression
//   h(q) - 1/4 |q_new|^4 - eps,   h = old moment component of the cut facet,
//   eps = -level,
// plus the old-block pairings against the old kernel basis.  The negative
// control flips the quartic sign and must come out at the |q_new|^4/2 scale.
CutConsistencyReport cut_moment_consistency(const CutResult& cut, std::size_t n,
                                            std::uint64_t seed);

struct CutDecompositionReport {
    bool empty = false;                 // eps above every sampled value
    std::size_t product_stratum = 0;    // samples with h > eps: carry |q|^2 = 2 sqrt(h-eps)
    std::size_t zero_stratum = 0;       // samples with h = eps (within tol): q = 0
    double max_relation_residual = 0.0; // max |F(h, q) - eps| over reconstructed pairs
};

// Classifies moment samples h against the cut level eps: each sample with
// h > eps + tol determines a coordinate with |q|^2 = 2 sqrt(h - eps) (checked
// against F(h, q) = eps), samples within tol of eps sit in the q = 0 stratum,
// and eps above max(h) + tol yields an empty level set.  Throws
// NonRegularValue when eps lies within tol of the sampled maximum, where the
// two strata cannot be told apart.
CutDecompositionReport cut_level_set_decomposition(const std::vector<double>& h_samples,
                                                   double eps, double tol = 1e-9);

}  // namespace qtoric
