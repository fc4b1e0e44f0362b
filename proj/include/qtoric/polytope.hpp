#pragma once

// Convex polytopes in halfspace form over exact rationals: construction and
// normalization, exact vertex enumeration, Delzant verification, membership.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qtoric/lattice.hpp"
#include "qtoric/rational.hpp"

namespace qtoric {

using RationalVector = std::vector<Rational>;

/// One halfspace { x : <x, normal> <= offset } with a primitive integer
/// normal. Construction through HRepPolytope divides out the gcd of the
/// normal's entries (rescaling the offset accordingly).
struct Facet {
    std::vector<Int> normal;
    Rational offset;

    bool operator==(const Facet&) const = default;
};

/// Intersection of finitely many halfspaces in R^m. The facet list is kept
/// in input order after normalization; exact duplicates are collapsed, and
/// facets made redundant by a parallel facet with smaller offset are kept
/// but flagged.
class HRepPolytope {
public:
    HRepPolytope(std::size_t dim, std::vector<Facet> facets, std::string name = "");

    std::size_t dim() const { return dim_; }
    std::size_t facet_count() const { return facets_.size(); }
    const std::vector<Facet>& facets() const { return facets_; }
    const std::string& name() const { return name_; }

    /// Indices of facets that a parallel facet with smaller offset makes
    /// redundant (they can never be active).
    const std::vector<std::size_t>& parallel_redundant() const { return parallel_redundant_; }

private:
    std::size_t dim_;
    std::vector<Facet> facets_;
    std::string name_;
    std::vector<std::size_t> parallel_redundant_;
};

/// A vertex together with the full set of facets active at it (sorted).
struct Vertex {
    RationalVector point;
    std::vector<std::size_t> active_set;
};

/// Exact membership test. Throws DimensionMismatch on wrong point length.
bool contains_point(const HRepPolytope& P, const RationalVector& x);

/// All vertices, each solved exactly from a facet subset and carrying its
/// full active set; sorted lexicographically. Compactness is decided first
/// (a nonzero vertex of the recession cone boxed to [-1,1]^m is a recession
/// direction); throws Unbounded with such a direction in the message, and
/// Degenerate when the intersection is empty or not full-dimensional.
std::vector<Vertex> enumerate_vertices(const HRepPolytope& P);

/// Per-vertex Delzant data. `simple`: exactly dim facets active.
/// `rational`: edge directions rational — automatic for integer normals
/// and exact rational vertices, reported for completeness. `smooth`: the
/// active normals form a lattice basis (|det| = 1); only defined for simple
/// vertices, reported false otherwise. `normal_det` carries the exact
/// determinant witness at simple vertices.
struct VertexReport {
    Vertex vertex;
    bool simple = false;
    bool rational = false;
    bool smooth = false;
    std::optional<Int> normal_det;
};

struct DelzantReport {
    std::vector<VertexReport> vertices;
    bool delzant = false;
};

/// Checks simple/rational/smooth at every vertex.
DelzantReport verify_delzant(const HRepPolytope& P);

/// Facet-set equality (order-insensitive, exact).
bool same_facet_set(const HRepPolytope& A, const HRepPolytope& B);

/// Vertex-set equality (order-insensitive, exact).
bool same_vertex_set(const HRepPolytope& A, const HRepPolytope& B);

}  // namespace qtoric
