#pragma once

// Exact integer linear algebra: dense matrices, Smith and Hermite normal
// forms, kernel lattices of facet-normal projections, and complete
// enumeration of kernel vectors with entries in {-1, 0, 1}.

#include <cstddef>
#include <vector>

#include "qtoric/errors.hpp"
#include "qtoric/rational.hpp"

namespace qtoric {

class HRepPolytope;  // polytope.hpp

/// Dense integer matrix with arbitrary-precision entries, row-major storage.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries);

    static IntMatrix identity(std::size_t n);
    /// Builds a matrix from its columns; all columns must share one length.
    static IntMatrix from_columns(const std::vector<std::vector<Int>>& columns);
    /// Same with an explicit row count (required when columns may be empty).
    static IntMatrix from_columns(std::size_t rows, const std::vector<std::vector<Int>>& columns);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::vector<Int> row(std::size_t r) const;
    std::vector<Int> column(std::size_t c) const;

    IntMatrix transposed() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    bool operator==(const IntMatrix& rhs) const = default;

    /// Exact determinant (Bareiss fraction-free elimination); square only.
    Int determinant() const;

    /// Rank over the rationals.
    std::size_t rank() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> entries_;
};

/// Smith decomposition U * M * V = D with U, V unimodular and D diagonal,
/// divisors nonnegative and forming a divisibility chain d1 | d2 | ... .
struct SmithDecomposition {
    IntMatrix U, D, V;
    std::vector<Int> divisors;  ///< nonzero diagonal entries of D
    std::size_t rank() const { return divisors.size(); }
};

SmithDecomposition smith_normal_form(const IntMatrix& M);

/// Column-style Hermite normal form of the column lattice of B: column
/// echelon, positive pivots, entries left of a pivot reduced into
/// [0, pivot). Zero columns are dropped, so the result is a canonical
/// basis of the lattice spanned by B's columns (empty for the zero lattice).
IntMatrix hermite_column_form(const IntMatrix& B);

/// Lattice equality of the column spans, by Hermite form comparison.
bool lattice_equal(const IntMatrix& A, const IntMatrix& B);

/// Membership of v in the column lattice of a Hermite form H.
bool lattice_member(const IntMatrix& H, const std::vector<Int>& v);

/// The projection sending the i-th coordinate direction to the i-th facet
/// normal: an m x d matrix whose columns are the polytope's facet normals.
IntMatrix projection_from_normals(const HRepPolytope& P);

/// True iff the matrix maps the standard lattice onto the full target
/// lattice, i.e. it has full row rank and all elementary divisors are 1.
bool surjective_onto_lattice(const IntMatrix& M);

/// Integer kernel of a full-row-rank projection, with a canonical
/// (Hermite-form) basis that generates the whole kernel lattice.
struct KernelLattice {
    std::size_t ambient_dim = 0;
    std::size_t rank = 0;
    IntMatrix basis;  ///< ambient_dim x rank, Hermite-canonical columns
};

/// Kernel lattice of an integer projection. The Smith decomposition
/// certifies that the returned basis generates the full integer kernel
/// (index 1). Throws RankDeficient if the projection's rows are dependent.
KernelLattice kernel_lattice(const IntMatrix& projection);

/// Complete list of kernel vectors with all entries in {-1, 0, 1}, one
/// representative per +/- sign class (first nonzero entry +1), sorted in
/// descending lexicographic order. Completeness comes from branching on the
/// Hermite pivot rows, where any such vector's entries are constrained to
/// {-1, 0, 1}; every candidate is then checked in full.
/// Throws AmbientTooLarge beyond the enumeration bound.
std::vector<std::vector<Int>> enumerate_short_kernel_vectors(
    const KernelLattice& K, std::size_t max_ambient_dim = 16);

}  // namespace qtoric
