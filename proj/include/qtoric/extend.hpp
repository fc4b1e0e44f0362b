#pragma once

// Extendability of the kernel torus action to a product of unit-quaternion
// groups: reduced bases, the forbidden sign pattern, action-table synthesis,
// and stabilizer analysis (couples graph and restricted Smith form).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qtoric/lattice.hpp"
#include "qtoric/polytope.hpp"

namespace qtoric {

/// Witness of the forbidden 2x2 sign pattern: two rows sharing a column
/// pair, all four entries nonzero, with opposite row-entry-product signs.
/// (Row and column negations preserve the products' relative sign, so this
/// is the sign-symmetry-invariant formulation.)
struct PatternWitness {
    std::size_t row1 = 0, row2 = 0;
    std::size_t col1 = 0, col2 = 0;
};

/// True iff every entry lies in {-1, 0, 1} and every row has at most two
/// nonzero entries. Throws DependentColumns if the columns are dependent.
bool is_reduced_basis(const IntMatrix& B);

/// Finds the forbidden pattern, scanning rows then column pairs in index
/// order (first witness returned).
std::optional<PatternWitness> contains_forbidden_pattern(const IntMatrix& B);

enum class ExtendReason {
    Extendable,
    NoReducedBasis,          ///< no subset of short kernel vectors is a reduced lattice basis
    AllBasesContainPattern,  ///< reduced bases exist, but each contains the pattern
};

struct Extendability {
    bool extendable = false;
    ExtendReason reason = ExtendReason::NoReducedBasis;
    /// Reduced, pattern-free lattice basis when extendable: the first hit of
    /// a deterministic search (candidate subsets ordered by total support
    /// size, then descending-lex; columns ordered the same way).
    std::optional<IntMatrix> witness;
};

/// Decides whether the kernel torus action extends, by complete search over
/// subsets of the sign-class representatives of short kernel vectors:
/// a witness must be a basis of the full kernel lattice (index 1), reduced,
/// and free of the forbidden pattern.
Extendability decide_extendability(const KernelLattice& K, std::size_t max_ambient_dim = 16);

/// One coordinate's action: optional left column (exponent +1) and optional
/// right column (exponent -1); when both are present they differ.
struct ActionFactor {
    std::optional<std::size_t> left;
    std::optional<std::size_t> right;
};

/// Per-coordinate action table of a product of unit-quaternion groups.
/// Columns 0..n_h-1 are the kernel-extension generators ("h"); columns
/// n_h..n_h+n_g-1, present only in combined tables, are the residual-torus
/// extensions ("g"). Rendered as lines like "q1 <- h1 * q1 * h2^-1".
struct ActionTable {
    std::vector<ActionFactor> coords;
    std::size_t n_h = 0;
    std::size_t n_g = 0;
};

/// Builds the action table of a reduced, pattern-free basis matrix.
/// Side assignment: in a two-nonzero row the lower column index acts on the
/// left and the other on the right; a single-nonzero row acts on the left
/// unless some two-nonzero row forces that column to the right.
/// Throws NotReduced / PatternPresent when the preconditions fail.
ActionTable synthesize_nhat_action(const IntMatrix& B);

/// Extends a kernel action table by one generator per polytope dimension,
/// attached on a free side (right when both sides are free): the first
/// dim-many coordinates with a free side receive g_1, ..., g_m in order.
/// Throws Unsupported, naming the blocking coordinates, when fewer than
/// dim coordinates have a free side.
ActionTable synthesize_ghat_action(const HRepPolytope& P, const ActionTable& nhat);

/// Table equivalence up to an optional relabeling of the h-columns and a
/// per-coordinate left/right swap (g-columns must match literally).
bool tables_equivalent(const ActionTable& a, const ActionTable& b, bool allow_h_relabel);

/// Renders one coordinate's line, e.g. "q3 <- h1 * q3 * g2^-1".
std::string render_action_line(const ActionTable& t, std::size_t coord);

/// Couples graph of an action table at a zero pattern: nodes are columns
/// incident to nonzero coordinates, an edge joins the two columns of a
/// two-sided coordinate, and a column acting single-sidedly on some nonzero
/// coordinate anchors its component.
struct CouplesGraph {
    std::vector<std::size_t> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::size_t> anchors;
};

CouplesGraph build_couples_graph(const ActionTable& t, const std::vector<std::size_t>& zero_set);

/// Stabilizer of a point whose coordinates vanish exactly on zero_set,
/// generically over the nonzero coordinates. The action is free iff every
/// component of the couples graph is anchored; each unanchored component
/// contributes the order-2 element setting its columns to -1. Columns
/// incident to no nonzero coordinate are unconstrained and reported as
/// unanchored singletons.
struct StabilizerReport {
    bool free = false;
    std::size_t unanchored_components = 0;
    /// Column sets of the unanchored components (generators: all -1 there).
    std::vector<std::vector<std::size_t>> generators;
};

StabilizerReport generic_stabilizer(const ActionTable& t, const std::vector<std::size_t>& zero_set);

/// Stabilizer of the same zero pattern inside the kernel torus itself, read
/// off the Smith form of the kernel basis restricted to the nonzero
/// coordinates: trivial iff the restriction has full column rank and all
/// elementary divisors are 1.
struct TorusStabilizer {
    std::vector<Int> divisors;
    std::size_t restricted_rank = 0;
    std::size_t kernel_rank = 0;
    bool trivial() const {
        if (restricted_rank != kernel_rank) return false;
        for (const Int& d : divisors)
            if (d != 1) return false;
        return true;
    }
};

TorusStabilizer torus_stabilizer(const KernelLattice& K, const std::vector<std::size_t>& zero_set);

/// rank G - rank G_principal - dim M + dim G - dim G_principal.
long long homogeneity_rank(long long rank_g, long long rank_h, long long dim_m,
                           long long dim_g, long long dim_h);

}  // namespace qtoric
