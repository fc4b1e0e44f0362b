#include "qtoric/extend.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "qtoric/errors.hpp"

namespace qtoric {

namespace {

std::size_t support_size(const std::vector<Int>& v) {
    std::size_t n = 0;
    for (const Int& x : v)
        if (x != 0) ++n;
    return n;
}

/// Descending lexicographic order on integer vectors (larger vector first).
bool desc_lex_less(const std::vector<Int>& a, const std::vector<Int>& b) {
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<std::size_t> nonzero_complement(std::size_t n, const std::vector<std::size_t>& zero_set) {
    std::vector<bool> zero(n, false);
    for (std::size_t i : zero_set) {
        if (i >= n)
            throw DimensionMismatch("zero-set index " + std::to_string(i) +
                                    " out of range for " + std::to_string(n) + " coordinates");
        zero[i] = true;
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (!zero[i]) out.push_back(i);
    return out;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

bool is_reduced_basis(const IntMatrix& B) {
    if (B.rank() != B.cols())
        throw DependentColumns("candidate basis has dependent columns");
    for (std::size_t i = 0; i < B.rows(); ++i) {
        std::size_t nonzeros = 0;
        for (std::size_t j = 0; j < B.cols(); ++j) {
            const Int& e = B.at(i, j);
            if (e > 1 || e < -1) return false;
            if (e != 0) ++nonzeros;
        }
        if (nonzeros > 2) return false;
    }
    return true;
}

std::optional<PatternWitness> contains_forbidden_pattern(const IntMatrix& B) {
    for (std::size_t r1 = 0; r1 < B.rows(); ++r1) {
        for (std::size_t r2 = r1 + 1; r2 < B.rows(); ++r2) {
            for (std::size_t c1 = 0; c1 < B.cols(); ++c1) {
                for (std::size_t c2 = c1 + 1; c2 < B.cols(); ++c2) {
                    const Int& a = B.at(r1, c1);
                    const Int& b = B.at(r1, c2);
                    const Int& c = B.at(r2, c1);
                    const Int& d = B.at(r2, c2);
                    if (a == 0 || b == 0 || c == 0 || d == 0) continue;
                    if ((a * b) * (c * d) < 0) return PatternWitness{r1, r2, c1, c2};
                }
            }
        }
    }
    return std::nullopt;
}

Extendability decide_extendability(const KernelLattice& K, std::size_t max_ambient_dim) {
    Extendability out;
    const std::size_t k = K.rank;
    if (k == 0) {
        out.extendable = true;
        out.reason = ExtendReason::Extendable;
        out.witness = IntMatrix(K.ambient_dim, 0);
        return out;
    }

    std::vector<std::vector<Int>> classes = enumerate_short_kernel_vectors(K, max_ambient_dim);
    const std::size_t n = classes.size();
    out.extendable = false;
    out.reason = ExtendReason::NoReducedBasis;
    if (n < k) return out;

    // Candidate subsets are visited sparsest-first; cap the enumeration so a
    // pathological lattice fails loudly instead of running forever.
    {
        Int count = 1;
        for (std::size_t i = 0; i < k; ++i) {
            count *= Int(n - i);
            count /= Int(i + 1);
        }
        if (count > 2000000)
            throw AmbientTooLarge("short-vector subset search would visit " + count.str() +
                                  " candidates; refusing beyond 2000000");
    }

    std::vector<std::size_t> supports(n);
    for (std::size_t i = 0; i < n; ++i) supports[i] = support_size(classes[i]);

    struct Candidate {
        std::size_t total_support;
        std::vector<std::size_t> indices;
    };
    std::vector<Candidate> candidates;
    std::vector<std::size_t> pick;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (pick.size() == k) {
            std::size_t total = 0;
            for (std::size_t i : pick) total += supports[i];
            candidates.push_back({total, pick});
            return;
        }
        for (std::size_t i = start; i + (k - pick.size()) <= n; ++i) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                         return a.total_support < b.total_support;
                     });

    bool saw_reduced_basis = false;
    for (const Candidate& cand : candidates) {
        // Column order inside the witness: smaller support first, then
        // descending-lex, so the table layout is deterministic.
        std::vector<std::size_t> order = cand.indices;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (supports[a] != supports[b]) return supports[a] < supports[b];
            return desc_lex_less(classes[a], classes[b]);
        });
        std::vector<std::vector<Int>> cols;
        cols.reserve(k);
        for (std::size_t i : order) cols.push_back(classes[i]);
        IntMatrix B = IntMatrix::from_columns(K.ambient_dim, cols);

        if (!lattice_equal(B, K.basis)) continue;  // proper sublattice or dependent
        if (!is_reduced_basis(B)) continue;
        saw_reduced_basis = true;
        if (contains_forbidden_pattern(B)) continue;

        out.extendable = true;
        out.reason = ExtendReason::Extendable;
        out.witness = std::move(B);
        return out;
    }

    out.reason = saw_reduced_basis ? ExtendReason::AllBasesContainPattern
                                   : ExtendReason::NoReducedBasis;
    return out;
}

ActionTable synthesize_nhat_action(const IntMatrix& B) {
    if (!is_reduced_basis(B))
        throw NotReduced("basis has an entry outside {-1,0,1} or a row with more than two nonzeros");
    if (auto w = contains_forbidden_pattern(B)) {
        std::ostringstream os;
        os << "forbidden sign pattern at rows (" << w->row1 + 1 << "," << w->row2 + 1
           << "), columns (" << w->col1 + 1 << "," << w->col2 + 1 << ")";
        throw PatternPresent(os.str());
    }

    ActionTable t;
    t.n_h = B.cols();
    t.n_g = 0;
    t.coords.resize(B.rows());

    // Columns forced to the right side by some two-nonzero row.
    std::set<std::size_t> forced_right;
    for (std::size_t i = 0; i < B.rows(); ++i) {
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < B.cols(); ++j)
            if (B.at(i, j) != 0) nz.push_back(j);
        if (nz.size() == 2) forced_right.insert(nz[1]);
    }

    for (std::size_t i = 0; i < B.rows(); ++i) {
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < B.cols(); ++j)
            if (B.at(i, j) != 0) nz.push_back(j);
        ActionFactor& f = t.coords[i];
        if (nz.size() == 2) {
            f.left = nz[0];
            f.right = nz[1];
        } else if (nz.size() == 1) {
            if (forced_right.count(nz[0]))
                f.right = nz[0];
            else
                f.left = nz[0];
        }
    }
    return t;
}

ActionTable synthesize_ghat_action(const HRepPolytope& P, const ActionTable& nhat) {
    const std::size_t m = P.dim();
    ActionTable t = nhat;
    t.n_g = m;

    std::size_t attached = 0;
    for (std::size_t i = 0; i < t.coords.size() && attached < m; ++i) {
        ActionFactor& f = t.coords[i];
        const std::size_t g_col = t.n_h + attached;
        if (!f.right) {
            f.right = g_col;
            ++attached;
        } else if (!f.left) {
            f.left = g_col;
            ++attached;
        }
    }
    if (attached < m) {
        std::ostringstream os;
        os << "need " << m << " coordinates with a free side but only " << attached
           << " available; blocked coordinates:";
        for (std::size_t i = 0; i < t.coords.size(); ++i)
            if (nhat.coords[i].left && nhat.coords[i].right) os << " q" << i + 1;
        throw Unsupported(os.str());
    }
    return t;
}

bool tables_equivalent(const ActionTable& a, const ActionTable& b, bool allow_h_relabel) {
    if (a.coords.size() != b.coords.size() || a.n_h != b.n_h || a.n_g != b.n_g) return false;
    if (a.n_h > 8)
        throw AmbientTooLarge("table comparison supports at most 8 relabelable columns");

    std::vector<std::size_t> perm(a.n_h);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        auto relabel = [&](std::size_t c) { return c < a.n_h ? perm[c] : c; };
        bool ok = true;
        for (std::size_t i = 0; i < a.coords.size() && ok; ++i) {
            std::optional<std::size_t> l = a.coords[i].left, r = a.coords[i].right;
            if (l) l = relabel(*l);
            if (r) r = relabel(*r);
            const ActionFactor& g = b.coords[i];
            const bool direct = (l == g.left && r == g.right);
            const bool swapped = (l == g.right && r == g.left);
            ok = direct || swapped;
        }
        if (ok) return true;
        if (!allow_h_relabel) break;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

std::string render_action_line(const ActionTable& t, std::size_t coord) {
    if (coord >= t.coords.size())
        throw DimensionMismatch("coordinate index out of range");
    auto name = [&](std::size_t c) {
        return c < t.n_h ? "h" + std::to_string(c + 1) : "g" + std::to_string(c - t.n_h + 1);
    };
    const ActionFactor& f = t.coords[coord];
    std::ostringstream os;
    os << "q" << coord + 1 << " <- ";
    if (f.left) os << name(*f.left) << " * ";
    os << "q" << coord + 1;
    if (f.right) os << " * " << name(*f.right) << "^-1";
    return os.str();
}

CouplesGraph build_couples_graph(const ActionTable& t, const std::vector<std::size_t>& zero_set) {
    const std::vector<std::size_t> nonzero = nonzero_complement(t.coords.size(), zero_set);

    std::set<std::size_t> nodes;
    std::set<std::pair<std::size_t, std::size_t>> edges;
    std::set<std::size_t> anchors;
    for (std::size_t i : nonzero) {
        const ActionFactor& f = t.coords[i];
        if (f.left) nodes.insert(*f.left);
        if (f.right) nodes.insert(*f.right);
        if (f.left && f.right) {
            auto e = std::minmax(*f.left, *f.right);
            edges.insert({e.first, e.second});
        } else if (f.left) {
            anchors.insert(*f.left);
        } else if (f.right) {
            anchors.insert(*f.right);
        }
    }

    CouplesGraph g;
    g.nodes.assign(nodes.begin(), nodes.end());
    g.edges.assign(edges.begin(), edges.end());
    g.anchors.assign(anchors.begin(), anchors.end());
    return g;
}

StabilizerReport generic_stabilizer(const ActionTable& t, const std::vector<std::size_t>& zero_set) {
    const CouplesGraph g = build_couples_graph(t, zero_set);
    const std::size_t total_cols = t.n_h + t.n_g;

    // Map column index -> position among incident nodes.
    std::vector<std::size_t> pos(total_cols, SIZE_MAX);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) pos[g.nodes[i]] = i;

    UnionFind uf(g.nodes.size());
    for (const auto& e : g.edges) uf.unite(pos[e.first], pos[e.second]);

    std::vector<bool> anchored(g.nodes.size(), false);
    for (std::size_t a : g.anchors) anchored[uf.find(pos[a])] = true;

    std::map<std::size_t, std::vector<std::size_t>> components;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        components[uf.find(i)].push_back(g.nodes[i]);

    StabilizerReport rep;
    for (const auto& [root, cols] : components)
        if (!anchored[root]) rep.generators.push_back(cols);

    // Columns touching no nonzero coordinate are entirely unconstrained.
    for (std::size_t c = 0; c < total_cols; ++c)
        if (pos[c] == SIZE_MAX) rep.generators.push_back({c});

    std::sort(rep.generators.begin(), rep.generators.end());
    rep.unanchored_components = rep.generators.size();
    rep.free = rep.generators.empty();
    return rep;
}

TorusStabilizer torus_stabilizer(const KernelLattice& K, const std::vector<std::size_t>& zero_set) {
    const std::vector<std::size_t> nonzero = nonzero_complement(K.ambient_dim, zero_set);

    IntMatrix R(nonzero.size(), K.rank);
    for (std::size_t i = 0; i < nonzero.size(); ++i)
        for (std::size_t j = 0; j < K.rank; ++j)
            R.at(i, j) = K.basis.at(nonzero[i], j);

    TorusStabilizer st;
    st.kernel_rank = K.rank;
    if (nonzero.empty()) {
        st.restricted_rank = 0;
        return st;
    }
    SmithDecomposition snf = smith_normal_form(R);
    st.divisors = snf.divisors;
    st.restricted_rank = snf.rank();
    return st;
}

long long homogeneity_rank(long long rank_g, long long rank_h, long long dim_m,
                           long long dim_g, long long dim_h) {
    return rank_g - rank_h - dim_m + dim_g - dim_h;
}

}  // namespace qtoric
