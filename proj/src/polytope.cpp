#include "qtoric/polytope.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qtoric {

namespace {

Int gcd_of(const std::vector<Int>& v) {
    Int g = 0;
    for (const Int& e : v) g = boost::multiprecision::gcd(g, e);
    return g;
}

Rational dot(const std::vector<Int>& normal, const RationalVector& x) {
    Rational s = 0;
    for (std::size_t i = 0; i < normal.size(); ++i) s += Rational(normal[i]) * x[i];
    return s;
}

/// Solves the square system <x, normals[i]> = offsets[i] exactly.
/// Returns nullopt when the system is singular.
std::optional<RationalVector> solve_square(const std::vector<std::vector<Int>>& normals,
                                           const std::vector<Rational>& offsets) {
    const std::size_t m = normals.size();
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1));
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) a[r][c] = Rational(normals[r][c]);
        a[r][m] = offsets[r];
    }
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        while (piv < m && a[piv][col] == 0) ++piv;
        if (piv == m) return std::nullopt;
        std::swap(a[col], a[piv]);
        const Rational p = a[col][col];
        for (auto& e : a[col]) e /= p;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rational f = a[r][col];
            for (std::size_t c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
        }
    }
    RationalVector x(m);
    for (std::size_t r = 0; r < m; ++r) x[r] = a[r][m];
    return x;
}

/// Affine rank of a point set (dimension of its affine hull).
std::size_t affine_rank(const std::vector<RationalVector>& pts) {
    if (pts.size() <= 1) return 0;
    const std::size_t m = pts.front().size();
    std::vector<std::vector<Rational>> diff;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        std::vector<Rational> d(m);
        for (std::size_t c = 0; c < m; ++c) d[c] = pts[i][c] - pts[0][c];
        diff.push_back(std::move(d));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m && rank < diff.size(); ++col) {
        std::size_t piv = rank;
        while (piv < diff.size() && diff[piv][col] == 0) ++piv;
        if (piv == diff.size()) continue;
        std::swap(diff[rank], diff[piv]);
        for (std::size_t r = 0; r < diff.size(); ++r) {
            if (r == rank || diff[r][col] == 0) continue;
            const Rational f = diff[r][col] / diff[rank][col];
            for (std::size_t c = col; c < m; ++c) diff[r][c] -= f * diff[rank][c];
        }
        ++rank;
    }
    return rank;
}

/// Vertices of an intersection of halfspaces that is known to be bounded
/// (used for the recession-cone probe, which is boxed by construction).
std::vector<RationalVector> raw_vertices(std::size_t m,
                                         const std::vector<std::vector<Int>>& normals,
                                         const std::vector<Rational>& offsets) {
    std::vector<RationalVector> out;
    const std::size_t n = normals.size();
    std::vector<std::size_t> idx(m);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> void {
        if (pos == m) {
            std::vector<std::vector<Int>> sub;
            std::vector<Rational> rhs;
            for (std::size_t i : idx) { sub.push_back(normals[i]); rhs.push_back(offsets[i]); }
            auto x = solve_square(sub, rhs);
            if (!x) return;
            for (std::size_t i = 0; i < n; ++i)
                if (dot(normals[i], *x) > offsets[i]) return;
            out.push_back(std::move(*x));
            return;
        }
        for (std::size_t i = start; i < n; ++i) { idx[pos] = i; self(self, pos + 1, i + 1); }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string format_point(const RationalVector& x) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ")";
    return os.str();
}

}  // namespace

HRepPolytope::HRepPolytope(std::size_t dim, std::vector<Facet> facets, std::string name)
    : dim_(dim), name_(std::move(name)) {
    if (dim_ == 0) throw DimensionMismatch("polytope dimension must be positive");
    for (Facet& f : facets) {
        if (f.normal.size() != dim_)
            throw DimensionMismatch("facet normal length does not match polytope dimension");
        const Int g = gcd_of(f.normal);
        if (g == 0) throw Degenerate("facet with zero normal");
        if (g > 1) {
            for (Int& e : f.normal) e /= g;
            f.offset /= Rational(g);
        }
        // Collapse exact duplicates, preserving first-seen order.
        if (std::find(facets_.begin(), facets_.end(), f) == facets_.end())
            facets_.push_back(std::move(f));
    }
    // Flag parallel facets that a smaller offset makes redundant.
    for (std::size_t i = 0; i < facets_.size(); ++i)
        for (std::size_t j = 0; j < facets_.size(); ++j)
            if (i != j && facets_[i].normal == facets_[j].normal &&
                facets_[j].offset < facets_[i].offset) {
                parallel_redundant_.push_back(i);
                break;
            }
}

bool contains_point(const HRepPolytope& P, const RationalVector& x) {
    if (x.size() != P.dim()) throw DimensionMismatch("contains_point: point length");
    for (const Facet& f : P.facets())
        if (dot(f.normal, x) > f.offset) return false;
    return true;
}

std::vector<Vertex> enumerate_vertices(const HRepPolytope& P) {
    const std::size_t m = P.dim();
    std::vector<std::vector<Int>> normals;
    std::vector<Rational> offsets;
    for (const Facet& f : P.facets()) { normals.push_back(f.normal); offsets.push_back(f.offset); }

    // Compactness probe: vertices of the recession cone boxed to [-1,1]^m.
    // The cone { <x, v_i> <= 0 } is {0} exactly when the boxed region has no
    // nonzero vertex; any nonzero vertex is a recession direction.
    {
        std::vector<std::vector<Int>> cn = normals;
        std::vector<Rational> co(offsets.size(), Rational(0));
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<Int> e(m, 0);
            e[j] = 1;  cn.push_back(e);  co.emplace_back(1);
            e[j] = -1; cn.push_back(e);  co.emplace_back(1);
        }
        for (const RationalVector& v : raw_vertices(m, cn, co))
            if (std::any_of(v.begin(), v.end(), [](const Rational& e) { return e != 0; }))
                throw Unbounded("polytope is unbounded along direction " + format_point(v));
    }

    std::map<RationalVector, std::vector<std::size_t>> verts;
    for (const RationalVector& x : raw_vertices(m, normals, offsets)) {
        std::vector<std::size_t> active;
        for (std::size_t i = 0; i < normals.size(); ++i)
            if (dot(normals[i], x) == offsets[i]) active.push_back(i);
        verts.emplace(x, std::move(active));
    }

    if (verts.empty()) throw Degenerate("halfspace intersection is empty");
    std::vector<RationalVector> pts;
    for (const auto& [x, a] : verts) pts.push_back(x);
    if (affine_rank(pts) < m)
        throw Degenerate("halfspace intersection has empty interior");

    std::vector<Vertex> out;
    for (auto& [x, a] : verts) out.push_back(Vertex{x, a});
    return out;
}

DelzantReport verify_delzant(const HRepPolytope& P) {
    DelzantReport report;
    report.delzant = true;
    for (const Vertex& v : enumerate_vertices(P)) {
        VertexReport vr;
        vr.vertex = v;
        vr.simple = v.active_set.size() == P.dim();
        // Integer facet normals and exact rational vertices make every edge
        // direction rational; recorded per vertex for report completeness.
        vr.rational = true;
        if (vr.simple) {
            IntMatrix M(P.dim(), P.dim());
            for (std::size_t r = 0; r < P.dim(); ++r)
                for (std::size_t c = 0; c < P.dim(); ++c)
                    M.at(r, c) = P.facets()[v.active_set[r]].normal[c];
            vr.normal_det = M.determinant();
            vr.smooth = (*vr.normal_det == 1 || *vr.normal_det == -1);
        }
        if (!(vr.simple && vr.rational && vr.smooth)) report.delzant = false;
        report.vertices.push_back(std::move(vr));
    }
    return report;
}

bool same_facet_set(const HRepPolytope& A, const HRepPolytope& B) {
    if (A.dim() != B.dim()) return false;
    auto key = [](const Facet& f) {
        std::ostringstream os;
        for (const Int& e : f.normal) os << e << ",";
        os << "|" << f.offset;
        return os.str();
    };
    std::vector<std::string> ka, kb;
    for (const Facet& f : A.facets()) ka.push_back(key(f));
    for (const Facet& f : B.facets()) kb.push_back(key(f));
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    return ka == kb;
}

bool same_vertex_set(const HRepPolytope& A, const HRepPolytope& B) {
    if (A.dim() != B.dim()) return false;
    auto pts = [](const HRepPolytope& P) {
        std::vector<RationalVector> out;
        for (const Vertex& v : enumerate_vertices(P)) out.push_back(v.point);
        std::sort(out.begin(), out.end());
        return out;
    };
    return pts(A) == pts(B);
}

}  // namespace qtoric
