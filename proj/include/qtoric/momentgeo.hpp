#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qtoric/lattice.hpp"
#include "qtoric/polytope.hpp"
#include "qtoric/quatgeom.hpp"

namespace qtoric {

// ---------------------------------------------------------------------------
// Level sets over a polytope
// ---------------------------------------------------------------------------

// Exact per-facet moduli over a point x of P: facet l contributes slack
// s_l = offset_l - <x, normal_l> >= 0 and modulus |q_l| = (4 s_l)^{1/4}.
// The modulus is zero exactly on the facets active at x.
// Throws OutsidePolytope when some slack is negative.
std::vector<double> solve_radii(const HRepPolytope& P, const RationalVector& x);

struct SampleSet {
    std::uint64_t seed = 0;
    std::vector<QuaternionVector> points;          // q in H^d, one per sample
    std::vector<std::vector<double>> images;       // sigma(q) in R^d
    std::vector<std::vector<double>> projections;  // recovered x in R^m
    double max_level_residual = 0.0;               // max |<sigma(q), b>| over kernel basis
    double max_projection_residual = 0.0;          // max |pi^T x - sigma|_inf
};

// Samples `n` points of the zero level set of the reduced tri-moment over P:
// x is drawn uniformly from P by rejection from the vertex bounding box, the
// moduli come from solve_radii, and each coordinate receives an independent
// uniform phase in S^3.  Sample i consumes substream i of `seed`, making the
// set reproducible point-by-point.  Throws InvalidSampleCount when n == 0.
SampleSet sample_level_set(const HRepPolytope& P, const KernelLattice& K, std::size_t n,
                           std::uint64_t seed);

// Recovers the polytope point under a level-set point: checks that sigma(q)
// pairs to zero with every kernel basis vector (NotOnLevelSet otherwise),
// then solves pi^T x = sigma(q) by normal equations with the exact inverse of
// pi pi^T; InconsistentSystem when the residual exceeds tol.
std::vector<double> project_to_polytope(const KernelLattice& K, const HRepPolytope& P,
                                        const QuaternionVector& q, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Model manifolds with closed-form moment maps
// ---------------------------------------------------------------------------

class ModelManifold {
public:
    enum class Kind { HPm, ProductHP1, BlowupHP2, PolytopeQuotient };

    // Quaternionic projective space HP^m: points are nonzero q in H^{m+1} up
    // to the diagonal right scaling; moment component i = -|q_i|^4 / sum|q|^4.
    static ModelManifold hpm(std::size_t m);

    // (HP^1)^m: points are m pairs (q_{2i-1}, q_{2i}); component i =
    // -|q_{2i-1}|^4 / (|q_{2i-1}|^4 + |q_{2i}|^4).
    static ModelManifold product_hp1(std::size_t m);

    // Blow-up family over HP^2 with weights 0 <= alpha_i <= 1: points are
    // ([q1:q2:q3],[p1:p2],[r1:r2],[s1:s2]) in H^9 and
    //   sigma_1 = -|q1|^4/Q - alpha_1 |p1|^4/Pp - alpha_3 |s1|^4/S,
    //   sigma_2 = -|q2|^4/Q - alpha_2 |r1|^4/R  - alpha_3 |s2|^4/S,
    // where Q, Pp, R, S are the block quartic sums.  alpha = 0 recovers the
    // HP^2 moment.
    static ModelManifold blowup_hp2(double a1, double a2, double a3);

    // The manifold associated to a Delzant polytope, with the moment map
    // descended from the level set: evaluation projects to the polytope.
    static ModelManifold polytope_quotient(HRepPolytope P);

    Kind kind() const { return kind_; }
    std::size_t m() const { return m_; }
    const std::array<double, 3>& alpha() const { return alpha_; }
    const HRepPolytope& polytope() const;
    const KernelLattice& kernel() const;

    // Number of quaternionic coordinates a point carries.
    std::size_t point_size() const;
    // Dimension of the moment image.
    std::size_t image_dim() const;

private:
    explicit ModelManifold(Kind kind) : kind_(kind) {}

    Kind kind_;
    std::size_t m_ = 0;
    std::array<double, 3> alpha_{0.0, 0.0, 0.0};
    std::optional<HRepPolytope> polytope_;
    std::optional<KernelLattice> kernel_;
};

// Evaluates the model's moment map.  Throws ZeroHomogeneousVector when a
// homogeneous block is entirely zero, DimensionMismatch on wrong point size.
std::vector<double> model_moment(const ModelManifold& M, const QuaternionVector& point);

// Draws `n` model points with independent Gaussian quaternion entries
// (substream i of `seed` for point i) and evaluates the moment map.
// For PolytopeQuotient the points come from sample_level_set instead.
struct ModelSampleSet {
    std::vector<QuaternionVector> points;
    std::vector<std::vector<double>> images;
};
ModelSampleSet sample_model(const ModelManifold& M, std::size_t n, std::uint64_t seed);

// Images of the coordinate fixed points of the model's torus action, reduced
// to the extreme points of that finite set (for 2-dimensional images via the
// exact planar hull; the other catalog models have all images extreme).  For
// PolytopeQuotient these are the polytope vertices.
std::vector<std::vector<double>> fixed_point_images(const ModelManifold& M);

// ---------------------------------------------------------------------------
// Convex-hull certificates
// ---------------------------------------------------------------------------

// Counterclockwise convex hull of a planar point set (monotone chain,
// collinear points dropped).  Exact comparisons on doubles.
std::vector<std::array<double, 2>> convex_hull_2d(const std::vector<std::array<double, 2>>& pts);

struct HullCertificate {
    bool inside = false;
    // inside: convex weights over the generators reproducing x.
    std::vector<double> weights;
    // outside: functional w with <w, a_i> <= offset for all generators and
    // <w, x> > offset.
    std::vector<double> separator;
    double separator_offset = 0.0;
    // Phase-1 optimum of the feasibility program (0 iff x is in the hull).
    double objective = 0.0;
};

// Decides whether x lies in the convex hull of the generator set by a
// phase-1 simplex (Bland's rule); verdicts within `tol` of feasible count as
// inside.  Both verdicts carry a certificate, verified before returning.
HullCertificate hull_membership(const std::vector<std::vector<double>>& generators,
                                const std::vector<double>& x, double tol = 1e-7);

// Exact-rational variant (tol-free).
HullCertificate hull_membership_exact(const std::vector<RationalVector>& generators,
                                      const RationalVector& x);

// ---------------------------------------------------------------------------
// Complex factorization of the quaternionic moment
// ---------------------------------------------------------------------------

struct AlphaFactorizationReport {
    double max_residual = 0.0;       // max |sigma_i(q) - nu_i(alpha(q))| over samples
    std::size_t ambiguous_points = 0;  // points with a coordinate of zero imaginary part
};

// Checks the pointwise factorization of the HP^m moment through the complex
// projective moment: alpha(x + y I) = (x + y i)^2 with y = |Im| >= 0 maps
// each quaternion to a complex number with |alpha(q)| = |q|^2, and
// nu_i([w]) = -|w_i|^2 / sum |w|^2 composed with alpha reproduces the HP^m
// moment.  Points with some y = 0 (I undefined) are counted as ambiguous but
// still verified (any unit I gives the same alpha there).
AlphaFactorizationReport alpha_factorization_check(const std::vector<QuaternionVector>& samples);

// ---------------------------------------------------------------------------
// Combinatorial invariants
// ---------------------------------------------------------------------------

// Vertex count of the polytope = Euler characteristic of the associated
// manifold (each vertex contributes one torus fixed point).
std::size_t euler_characteristic(const HRepPolytope& P);

}  // namespace qtoric
