#pragma once

// Brute-force reference decision for extendability, used to cross-validate
// the library's deterministic search.  Kept deliberately independent of the
// library's internals: candidate vectors come from direct {-1,0,1}^d grid
// enumeration filtered by an exact pi*v == 0 test, lattice-spanning is decided
// through exact rational coordinates and a hand-rolled Laplace determinant,
// and the reduced/pattern conditions are re-implemented with plain loops.

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qtoric/extend.hpp"
#include "qtoric/lattice.hpp"
#include "qtoric/rational.hpp"
#include "qtoric/rng.hpp"

namespace testsupport {

// All sign-class representatives (first nonzero entry +1) of vectors in
// {-1,0,1}^d annihilated by pi, by walking the full 3^d grid.
inline std::vector<std::vector<qtoric::Int>> brute_short_vectors(const qtoric::IntMatrix& pi) {
    const std::size_t d = pi.cols();
    std::vector<std::vector<qtoric::Int>> out;
    std::vector<int> digits(d, 0);
    for (;;) {
        // Map digits {0,1,2} -> entries {-1,0,1}.
        std::vector<qtoric::Int> v(d);
        int first_nonzero = 0;
        bool nonzero = false;
        for (std::size_t i = 0; i < d; ++i) {
            const int e = digits[i] - 1;
            v[i] = e;
            if (!nonzero && e != 0) {
                nonzero = true;
                first_nonzero = e;
            }
        }
        if (nonzero && first_nonzero > 0) {
            bool in_kernel = true;
            for (std::size_t r = 0; r < pi.rows() && in_kernel; ++r) {
                qtoric::Int acc = 0;
                for (std::size_t c = 0; c < d; ++c) acc += pi.at(r, c) * v[c];
                in_kernel = (acc == 0);
            }
            if (in_kernel) out.push_back(std::move(v));
        }
        // Advance the mixed-radix counter.
        std::size_t pos = 0;
        while (pos < d && ++digits[pos] == 3) digits[pos++] = 0;
        if (pos == d) break;
    }
    return out;
}

// Coordinates of v in the columns of B (full column rank), by exact rational
// Gaussian elimination; nullopt when v is outside the span or the coordinates
// are not integers.
inline std::optional<std::vector<qtoric::Int>> integer_coordinates(
    const qtoric::IntMatrix& B, const std::vector<qtoric::Int>& v) {
    const std::size_t rows = B.rows(), k = B.cols();
    std::vector<std::vector<qtoric::Rational>> a(rows, std::vector<qtoric::Rational>(k + 1));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < k; ++c) a[r][c] = qtoric::Rational(B.at(r, c));
        a[r][k] = qtoric::Rational(v[r]);
    }
    std::size_t lead = 0;
    std::vector<std::size_t> pivot_rows;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pr = lead;
        while (pr < rows && a[pr][col] == 0) ++pr;
        if (pr == rows) return std::nullopt;  // dependent columns: not full rank
        std::swap(a[pr], a[lead]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == lead || a[r][col] == 0) continue;
            const qtoric::Rational f = a[r][col] / a[lead][col];
            for (std::size_t c = col; c <= k; ++c) a[r][c] -= f * a[lead][c];
        }
        pivot_rows.push_back(lead);
        ++lead;
    }
    // Consistency: rows below the pivots must have vanished entirely.
    for (std::size_t r = lead; r < rows; ++r)
        if (a[r][k] != 0) return std::nullopt;
    std::vector<qtoric::Int> coords(k);
    for (std::size_t col = 0; col < k; ++col) {
        const qtoric::Rational c = a[pivot_rows[col]][k] / a[pivot_rows[col]][col];
        if (boost::multiprecision::denominator(c) != 1) return std::nullopt;
        coords[col] = boost::multiprecision::numerator(c);
    }
    return coords;
}

// Laplace-expansion determinant (k <= 4 in practice).
inline qtoric::Int laplace_determinant(const std::vector<std::vector<qtoric::Int>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    qtoric::Int det = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j] == 0) continue;
        std::vector<std::vector<qtoric::Int>> minor;
        minor.reserve(n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<qtoric::Int> row;
            row.reserve(n - 1);
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        const qtoric::Int term = m[0][j] * laplace_determinant(minor);
        det += (j % 2 == 0) ? term : -term;
    }
    return det;
}

struct OracleVerdict {
    bool extendable = false;
    qtoric::ExtendReason reason = qtoric::ExtendReason::NoReducedBasis;
};

// Reference decision: try every k-subset of the brute-force short vectors as
// a candidate basis; it must span the whole kernel lattice (integer
// coordinates in the certified basis with determinant +-1), have at most two
// nonzero entries per row, and avoid the two-row opposite-product pattern.
inline OracleVerdict brute_force_extendability(const qtoric::IntMatrix& pi,
                                               const qtoric::KernelLattice& K) {
    const std::vector<std::vector<qtoric::Int>> shorts = brute_short_vectors(pi);
    const std::size_t n = shorts.size();
    const std::size_t k = K.rank;
    const std::size_t d = K.ambient_dim;

    OracleVerdict verdict;
    if (k == 0) {
        verdict.extendable = true;
        verdict.reason = qtoric::ExtendReason::Extendable;
        return verdict;
    }
    if (n < k) return verdict;

    bool saw_reduced_basis = false;
    std::vector<std::size_t> idx(k);
    // Enumerate k-subsets in lexicographic index order.
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        // Spanning test through coordinates in the certified kernel basis.
        std::vector<std::vector<qtoric::Int>> coord_cols;
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) {
            const auto coords = integer_coordinates(K.basis, shorts[idx[i]]);
            if (!coords)
                throw std::logic_error("oracle: short kernel vector outside the kernel lattice");
            coord_cols.push_back(*coords);
        }
        std::vector<std::vector<qtoric::Int>> cm(k, std::vector<qtoric::Int>(k));
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) cm[r][c] = coord_cols[c][r];
        const qtoric::Int det = laplace_determinant(cm);
        if (det == 1 || det == -1) {
            // Reduced: entries are already in {-1,0,1}; check the row support.
            bool reduced = true;
            for (std::size_t r = 0; r < d && reduced; ++r) {
                int nonzeros = 0;
                for (std::size_t c = 0; c < k; ++c)
                    if (shorts[idx[c]][r] != 0) ++nonzeros;
                reduced = (nonzeros <= 2);
            }
            if (reduced) {
                saw_reduced_basis = true;
                bool pattern = false;
                for (std::size_t r1 = 0; r1 < d && !pattern; ++r1) {
                    for (std::size_t r2 = r1 + 1; r2 < d && !pattern; ++r2) {
                        for (std::size_t c1 = 0; c1 < k && !pattern; ++c1) {
                            for (std::size_t c2 = c1 + 1; c2 < k && !pattern; ++c2) {
                                const qtoric::Int p1 = shorts[idx[c1]][r1] * shorts[idx[c2]][r1];
                                const qtoric::Int p2 = shorts[idx[c1]][r2] * shorts[idx[c2]][r2];
                                pattern = (p1 * p2 < 0);
                            }
                        }
                    }
                }
                if (!pattern) {
                    verdict.extendable = true;
                    verdict.reason = qtoric::ExtendReason::Extendable;
                    return verdict;
                }
            }
        }
        // Next subset.
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    verdict.reason = saw_reduced_basis ? qtoric::ExtendReason::AllBasesContainPattern
                                       : qtoric::ExtendReason::NoReducedBasis;
    return verdict;
}

struct RandomKernel {
    qtoric::IntMatrix pi;
    qtoric::KernelLattice K;
};

// A random surjective integer projection with ambient dimension 5..8 and
// kernel rank 1..4, resampled until it has full row rank and trivial
// elementary divisors (the standing assumption for facet-normal projections).
inline RandomKernel random_kernel(qtoric::SplitMix64& rng) {
    for (;;) {
        const std::size_t d = 5 + static_cast<std::size_t>(rng.next() % 4);
        const std::size_t k = 1 + static_cast<std::size_t>(rng.next() % 4);
        const std::size_t m = d - k;
        qtoric::IntMatrix pi(m, d);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < d; ++c)
                pi.at(r, c) = static_cast<long long>(rng.next() % 7) - 3;
        if (pi.rank() != m) continue;
        if (!qtoric::surjective_onto_lattice(pi)) continue;
        return {pi, qtoric::kernel_lattice(pi)};
    }
}

}  // namespace testsupport
