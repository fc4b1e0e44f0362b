#include "qtoric/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "qtoric/polytope.hpp"

namespace qtoric {

namespace {

Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

/// Floor quotient, so that a - q*b lies in [0, |b|).
Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
        throw DimensionMismatch("IntMatrix: entry count does not match shape");
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<std::vector<Int>>& columns) {
    if (columns.empty()) return IntMatrix(0, 0);
    return from_columns(columns.front().size(), columns);
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<std::vector<Int>>& columns) {
    IntMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows)
            throw DimensionMismatch("from_columns: ragged column lengths");
        for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = columns[c][r];
    }
    return m;
}

std::vector<Int> IntMatrix::row(std::size_t r) const {
    std::vector<Int> out(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out[c] = at(r, c);
    return out;
}

std::vector<Int> IntMatrix::column(std::size_t c) const {
    std::vector<Int> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
    return out;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw DimensionMismatch("IntMatrix product shape mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(r, k) == 0) continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c)
                out.at(r, c) += at(r, k) * rhs.at(k, c);
        }
    return out;
}

Int IntMatrix::determinant() const {
    if (rows_ != cols_) throw DimensionMismatch("determinant of non-square matrix");
    const std::size_t n = rows_;
    if (n == 0) return 1;
    // Bareiss fraction-free elimination: every division below is exact.
    IntMatrix a = *this;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a.at(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(a.at(k, c), a.at(piv, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

std::size_t IntMatrix::rank() const {
    // Rational Gaussian elimination; sizes here are tiny.
    std::vector<std::vector<Rational>> a(rows_, std::vector<Rational>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) a[r][c] = Rational(at(r, c));
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
        std::size_t piv = rank;
        while (piv < rows_ && a[piv][col] == 0) ++piv;
        if (piv == rows_) continue;
        std::swap(a[rank], a[piv]);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            const Rational f = a[r][col] / a[rank][col];
            for (std::size_t c = col; c < cols_; ++c) a[r][c] -= f * a[rank][c];
        }
        ++rank;
    }
    return rank;
}

SmithDecomposition smith_normal_form(const IntMatrix& M) {
    const std::size_t r = M.rows(), c = M.cols();
    IntMatrix A = M;
    IntMatrix U = IntMatrix::identity(r);
    IntMatrix V = IntMatrix::identity(c);

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < c; ++k) std::swap(A.at(i, k), A.at(j, k));
        for (std::size_t k = 0; k < r; ++k) std::swap(U.at(i, k), U.at(j, k));
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < r; ++k) std::swap(A.at(k, i), A.at(k, j));
        for (std::size_t k = 0; k < c; ++k) std::swap(V.at(k, i), V.at(k, j));
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const Int& f) {  // row_dst += f*row_src
        for (std::size_t k = 0; k < c; ++k) A.at(dst, k) += f * A.at(src, k);
        for (std::size_t k = 0; k < r; ++k) U.at(dst, k) += f * U.at(src, k);
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const Int& f) {  // col_dst += f*col_src
        for (std::size_t k = 0; k < r; ++k) A.at(k, dst) += f * A.at(k, src);
        for (std::size_t k = 0; k < c; ++k) V.at(k, dst) += f * V.at(k, src);
    };

    const std::size_t bound = std::min(r, c);
    std::size_t t = 0;
    for (; t < bound; ++t) {
        // Find the smallest nonzero entry in the trailing block (deterministic
        // tie-break on indices) and bring it to the pivot position.
        bool found = false;
        std::size_t pi = t, pj = t;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j) {
                if (A.at(i, j) == 0) continue;
                if (!found || abs_int(A.at(i, j)) < abs_int(A.at(pi, pj))) {
                    pi = i; pj = j; found = true;
                }
            }
        if (!found) break;

        for (;;) {
            swap_rows(t, pi);
            swap_cols(t, pj);
            // Clear below and to the right of the pivot; restart with a new,
            // strictly smaller pivot whenever a nonzero remainder appears.
            bool clean = true;
            for (std::size_t i = t + 1; i < r && clean; ++i) {
                if (A.at(i, t) == 0) continue;
                add_row(i, t, -(A.at(i, t) / A.at(t, t)));
                if (A.at(i, t) != 0) { pi = i; pj = t; clean = false; }
            }
            for (std::size_t j = t + 1; j < c && clean; ++j) {
                if (A.at(t, j) == 0) continue;
                add_col(j, t, -(A.at(t, j) / A.at(t, t)));
                if (A.at(t, j) != 0) { pi = t; pj = j; clean = false; }
            }
            if (!clean) continue;
            // Divisibility: the pivot must divide every trailing entry. If
            // not, fold the offending row into the pivot row; the next
            // clearing pass leaves a remainder that becomes a smaller pivot.
            bool divides = true;
            for (std::size_t i = t + 1; i < r && divides; ++i)
                for (std::size_t j = t + 1; j < c && divides; ++j)
                    if (A.at(i, j) % A.at(t, t) != 0) {
                        add_row(t, i, 1);
                        pi = t; pj = t;
                        divides = false;
                    }
            if (divides) break;
        }
        if (A.at(t, t) < 0) {
            for (std::size_t k = 0; k < c; ++k) A.at(t, k) = -A.at(t, k);
            for (std::size_t k = 0; k < r; ++k) U.at(t, k) = -U.at(t, k);
        }
    }

    SmithDecomposition out;
    out.U = std::move(U);
    out.V = std::move(V);
    out.D = std::move(A);
    for (std::size_t i = 0; i < t; ++i) out.divisors.push_back(out.D.at(i, i));
    return out;
}

IntMatrix hermite_column_form(const IntMatrix& B) {
    const std::size_t rows = B.rows();
    std::vector<std::vector<Int>> cols;
    for (std::size_t j = 0; j < B.cols(); ++j) cols.push_back(B.column(j));

    std::size_t c = 0;
    for (std::size_t row = 0; row < rows && c < cols.size(); ++row) {
        // Reduce all columns >= c to a single nonzero entry in this row.
        for (;;) {
            std::size_t best = cols.size();
            for (std::size_t j = c; j < cols.size(); ++j)
                if (cols[j][row] != 0 &&
                    (best == cols.size() || abs_int(cols[j][row]) < abs_int(cols[best][row])))
                    best = j;
            if (best == cols.size()) break;  // row is zero from column c on
            std::swap(cols[c], cols[best]);
            bool lone = true;
            for (std::size_t j = c + 1; j < cols.size(); ++j) {
                if (cols[j][row] == 0) continue;
                const Int q = floor_div(cols[j][row], cols[c][row]);
                for (std::size_t k = 0; k < rows; ++k) cols[j][k] -= q * cols[c][k];
                if (cols[j][row] != 0) lone = false;
            }
            if (lone) break;
        }
        if (cols[c][row] == 0) continue;
        if (cols[c][row] < 0)
            for (std::size_t k = 0; k < rows; ++k) cols[c][k] = -cols[c][k];
        // Reduce the pivot row's entries in earlier columns into [0, pivot).
        for (std::size_t j = 0; j < c; ++j) {
            const Int q = floor_div(cols[j][row], cols[c][row]);
            if (q == 0) continue;
            for (std::size_t k = 0; k < rows; ++k) cols[j][k] -= q * cols[c][k];
        }
        ++c;
    }

    // Columns past c are zero; drop them.
    cols.resize(c);
    if (cols.empty()) return IntMatrix(rows, 0);
    return IntMatrix::from_columns(cols);
}

bool lattice_equal(const IntMatrix& A, const IntMatrix& B) {
    if (A.rows() != B.rows()) return false;
    return hermite_column_form(A) == hermite_column_form(B);
}

bool lattice_member(const IntMatrix& H, const std::vector<Int>& v) {
    if (v.size() != H.rows()) throw DimensionMismatch("lattice_member: vector length");
    // Forward substitution down the echelon columns, then residual check.
    // Later columns vanish at earlier pivot rows, so each coefficient is
    // forced (or membership fails on divisibility).
    std::vector<Int> rem = v;
    for (std::size_t col = 0; col < H.cols(); ++col) {
        std::size_t p = 0;
        while (p < H.rows() && H.at(p, col) == 0) ++p;
        if (p == H.rows()) continue;
        if (rem[p] % H.at(p, col) != 0) return false;
        const Int q = rem[p] / H.at(p, col);
        if (q != 0)
            for (std::size_t k = 0; k < H.rows(); ++k) rem[k] -= q * H.at(k, col);
    }
    return std::all_of(rem.begin(), rem.end(), [](const Int& x) { return x == 0; });
}

IntMatrix projection_from_normals(const HRepPolytope& P) {
    IntMatrix pi(P.dim(), P.facet_count());
    for (std::size_t j = 0; j < P.facet_count(); ++j)
        for (std::size_t i = 0; i < P.dim(); ++i) pi.at(i, j) = P.facets()[j].normal[i];
    return pi;
}

bool surjective_onto_lattice(const IntMatrix& M) {
    const SmithDecomposition snf = smith_normal_form(M);
    if (snf.rank() != M.rows()) return false;
    return std::all_of(snf.divisors.begin(), snf.divisors.end(),
                       [](const Int& d) { return d == 1; });
}

KernelLattice kernel_lattice(const IntMatrix& projection) {
    const SmithDecomposition snf = smith_normal_form(projection);
    if (snf.rank() != projection.rows()) {
        std::ostringstream msg;
        msg << "kernel_lattice: projection has rank " << snf.rank() << " < "
            << projection.rows() << " rows";
        throw RankDeficient(msg.str());
    }
    // With U*M*V = D diagonal of rank r, columns r.. of V span the integer
    // kernel: M*V*e_j = U^{-1}*D*e_j = 0 for j >= r, and V unimodular makes
    // the span the full kernel lattice (index 1).
    const std::size_t d = projection.cols();
    const std::size_t r = snf.rank();
    std::vector<std::vector<Int>> cols;
    for (std::size_t j = r; j < d; ++j) cols.push_back(snf.V.column(j));

    KernelLattice K;
    K.ambient_dim = d;
    K.rank = d - r;
    K.basis = cols.empty() ? IntMatrix(d, 0) : hermite_column_form(IntMatrix::from_columns(cols));
    return K;
}

namespace {

void sign_normalize(std::vector<Int>& v) {
    for (const Int& e : v) {
        if (e == 0) continue;
        if (e < 0)
            for (Int& x : v) x = -x;
        return;
    }
}

}  // namespace

std::vector<std::vector<Int>> enumerate_short_kernel_vectors(const KernelLattice& K,
                                                             std::size_t max_ambient_dim) {
    if (K.ambient_dim > max_ambient_dim) {
        std::ostringstream msg;
        msg << "enumerate_short_kernel_vectors: ambient dimension " << K.ambient_dim
            << " exceeds bound " << max_ambient_dim;
        throw AmbientTooLarge(msg.str());
    }
    const IntMatrix& H = K.basis;
    const std::size_t d = K.ambient_dim;
    const std::size_t k = K.rank;

    // Pivot row of each Hermite column (first nonzero entry).
    std::vector<std::size_t> pivot_row(k);
    for (std::size_t j = 0; j < k; ++j) {
        std::size_t r = 0;
        while (r < d && H.at(r, j) == 0) ++r;
        pivot_row[j] = r;
    }

    std::vector<std::vector<Int>> found;
    std::vector<Int> coeff(k);
    std::vector<Int> partial(d);  // running combination of fixed columns

    // At pivot row p_j the entries of columns > j vanish, so a vector with
    // all entries in {-1,0,1} determines coeff[j] from a three-way branch.
    auto recurse = [&](auto&& self, std::size_t j) -> void {
        if (j == k) {
            bool small = true;
            for (const Int& e : partial)
                if (e > 1 || e < -1) { small = false; break; }
            if (!small) return;
            if (std::all_of(partial.begin(), partial.end(), [](const Int& e) { return e == 0; }))
                return;
            std::vector<Int> v = partial;
            sign_normalize(v);
            found.push_back(std::move(v));
            return;
        }
        const std::size_t p = pivot_row[j];
        const Int& piv = H.at(p, j);
        for (int target = -1; target <= 1; ++target) {
            const Int num = Int(target) - partial[p];
            if (num % piv != 0) continue;
            const Int cj = num / piv;
            coeff[j] = cj;
            if (cj != 0)
                for (std::size_t r = 0; r < d; ++r) partial[r] += cj * H.at(r, j);
            self(self, j + 1);
            if (cj != 0)
                for (std::size_t r = 0; r < d; ++r) partial[r] -= cj * H.at(r, j);
        }
    };
    if (k > 0) recurse(recurse, 0);

    std::sort(found.begin(), found.end(),
              [](const std::vector<Int>& a, const std::vector<Int>& b) { return a > b; });
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

}  // namespace qtoric
