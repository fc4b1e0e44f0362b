#include "qtoric/momentgeo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>

#include "qtoric/rng.hpp"

namespace qtoric {

namespace {

double quartic(const Quaternion& q) {
    const double n2 = norm_sq(q);
    return n2 * n2;
}

// Exact inverse of a small invertible rational matrix (Gauss-Jordan).
std::vector<std::vector<Rational>> rational_inverse(const std::vector<std::vector<Rational>>& M) {
    const std::size_t n = M.size();
    std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(2 * n, Rational(0)));
    for (std::size_t r = 0; r < n; ++r) {
        if (M[r].size() != n) {
            throw DimensionMismatch("rational_inverse: matrix is not square");
        }
        for (std::size_t c = 0; c < n; ++c) aug[r][c] = M[r][c];
        aug[r][n + r] = Rational(1);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && aug[pivot][col] == 0) ++pivot;
        if (pivot == n) {
            throw RankDeficient("rational_inverse: singular matrix");
        }
        std::swap(aug[col], aug[pivot]);
        const Rational p = aug[col][col];
        for (std::size_t c = 0; c < 2 * n; ++c) aug[col][c] /= p;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || aug[r][col] == 0) continue;
            const Rational f = aug[r][col];
            for (std::size_t c = 0; c < 2 * n; ++c) aug[r][c] -= f * aug[col][c];
        }
    }
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) inv[r][c] = aug[r][n + c];
    }
    return inv;
}

// Solves pi^T x = sigma in the least-squares sense through the exact inverse
// of the Gram matrix pi pi^T (pi has full row rank for Delzant input).
class ProjectionSolver {
public:
    explicit ProjectionSolver(const HRepPolytope& P) : pi_(projection_from_normals(P)) {
        const std::size_t m = pi_.rows();
        std::vector<std::vector<Rational>> gram(m, std::vector<Rational>(m, Rational(0)));
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < m; ++c) {
                Int s = 0;
                for (std::size_t t = 0; t < pi_.cols(); ++t) s += pi_.at(r, t) * pi_.at(c, t);
                gram[r][c] = Rational(s);
            }
        }
        const auto inv = rational_inverse(gram);
        minv_.assign(m, std::vector<double>(m, 0.0));
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < m; ++c) minv_[r][c] = to_double(inv[r][c]);
        }
    }

    std::size_t rows() const { return pi_.rows(); }

    std::vector<double> solve(const std::vector<double>& sigma, double& residual) const {
        const std::size_t m = pi_.rows();
        const std::size_t d = pi_.cols();
        if (sigma.size() != d) {
            throw DimensionMismatch("projection solve: sigma has length " +
                                    std::to_string(sigma.size()) + ", expected " +
                                    std::to_string(d));
        }
        std::vector<double> rhs(m, 0.0);
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                rhs[r] += to_double(Rational(pi_.at(r, c))) * sigma[c];
            }
        }
        std::vector<double> x(m, 0.0);
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < m; ++c) x[r] += minv_[r][c] * rhs[c];
        }
        residual = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
            double back = 0.0;
            for (std::size_t r = 0; r < m; ++r) back += to_double(Rational(pi_.at(r, c))) * x[r];
            residual = std::max(residual, std::fabs(back - sigma[c]));
        }
        return x;
    }

private:
    IntMatrix pi_;
    std::vector<std::vector<double>> minv_;
};

Quaternion random_unit_quaternion(SplitMix64& rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Quaternion g{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const double n2 = norm_sq(g);
        if (n2 > 1e-12) {
            return (1.0 / std::sqrt(n2)) * g;
        }
    }
    return {1.0, 0.0, 0.0, 0.0};
}

}  // namespace

std::vector<double> solve_radii(const HRepPolytope& P, const RationalVector& x) {
    if (x.size() != P.dim()) {
        throw DimensionMismatch("solve_radii: point has dimension " + std::to_string(x.size()) +
                                ", polytope lives in dimension " + std::to_string(P.dim()));
    }
    std::vector<double> moduli;
    moduli.reserve(P.facet_count());
    for (const Facet& f : P.facets()) {
        Rational value = 0;
        for (std::size_t c = 0; c < x.size(); ++c) value += Rational(f.normal[c]) * x[c];
        const Rational slack = f.offset - value;
        if (slack < 0) {
            throw OutsidePolytope("solve_radii: point violates a facet inequality by " +
                                  format_rational(-slack));
        }
        moduli.push_back(std::pow(4.0 * to_double(slack), 0.25));
    }
    return moduli;
}

SampleSet sample_level_set(const HRepPolytope& P, const KernelLattice& K, std::size_t n,
                           std::uint64_t seed) {
    if (n == 0) {
        throw InvalidSampleCount("sample_level_set: sample count must be positive");
    }
    if (K.ambient_dim != P.facet_count()) {
        throw DimensionMismatch("sample_level_set: kernel ambient dimension " +
                                std::to_string(K.ambient_dim) + " does not match facet count " +
                                std::to_string(P.facet_count()));
    }
    const std::vector<Vertex> vertices = enumerate_vertices(P);
    const std::size_t m = P.dim();
    const std::size_t d = P.facet_count();

    std::vector<double> lo(m, std::numeric_limits<double>::infinity());
    std::vector<double> hi(m, -std::numeric_limits<double>::infinity());
    for (const Vertex& v : vertices) {
        for (std::size_t c = 0; c < m; ++c) {
            const double value = to_double(v.point[c]);
            lo[c] = std::min(lo[c], value);
            hi[c] = std::max(hi[c], value);
        }
    }

    std::vector<std::vector<double>> normals(d, std::vector<double>(m));
    std::vector<double> offsets(d);
    for (std::size_t f = 0; f < d; ++f) {
        for (std::size_t c = 0; c < m; ++c) {
            normals[f][c] = to_double(Rational(P.facets()[f].normal[c]));
        }
        offsets[f] = to_double(P.facets()[f].offset);
    }

    const ProjectionSolver solver(P);

    SampleSet out;
    out.seed = seed;
    out.points.reserve(n);
    out.images.reserve(n);
    out.projections.reserve(n);

    for (std::size_t i = 0; i < n; ++i) {
        SplitMix64 rng(substream_seed(seed, i));

        std::vector<double> x(m);
        std::vector<double> slack(d);
        bool accepted = false;
        for (int attempt = 0; attempt < 100000 && !accepted; ++attempt) {
            for (std::size_t c = 0; c < m; ++c) {
                x[c] = lo[c] + rng.uniform01() * (hi[c] - lo[c]);
            }
            accepted = true;
            for (std::size_t f = 0; f < d; ++f) {
                double value = 0.0;
                for (std::size_t c = 0; c < m; ++c) value += normals[f][c] * x[c];
                slack[f] = offsets[f] - value;
                if (slack[f] < 0.0) {
                    accepted = false;
                    break;
                }
            }
        }
        if (!accepted) {
            throw Degenerate("sample_level_set: rejection sampling failed to hit the polytope");
        }

        QuaternionVector q(d);
        for (std::size_t f = 0; f < d; ++f) {
            const double modulus = std::pow(4.0 * slack[f], 0.25);
            q[f] = modulus * random_unit_quaternion(rng);
        }

        std::vector<double> sigma(d);
        for (std::size_t f = 0; f < d; ++f) {
            sigma[f] = -0.25 * quartic(q[f]) + offsets[f];
        }

        for (std::size_t col = 0; col < K.basis.cols(); ++col) {
            double pairing = 0.0;
            for (std::size_t r = 0; r < d; ++r) {
                pairing += to_double(Rational(K.basis.at(r, col))) * sigma[r];
            }
            out.max_level_residual = std::max(out.max_level_residual, std::fabs(pairing));
        }

        double residual = 0.0;
        std::vector<double> projected = solver.solve(sigma, residual);
        out.max_projection_residual = std::max(out.max_projection_residual, residual);

        out.points.push_back(std::move(q));
        out.images.push_back(std::move(sigma));
        out.projections.push_back(std::move(projected));
    }
    return out;
}

std::vector<double> project_to_polytope(const KernelLattice& K, const HRepPolytope& P,
                                        const QuaternionVector& q, double tol) {
    if (q.size() != P.facet_count() || K.ambient_dim != P.facet_count()) {
        throw DimensionMismatch("project_to_polytope: expected one quaternion per facet");
    }
    std::vector<double> sigma(q.size());
    double scale = 1.0;
    for (std::size_t f = 0; f < q.size(); ++f) {
        sigma[f] = -0.25 * quartic(q[f]) + to_double(P.facets()[f].offset);
        scale = std::max(scale, std::fabs(sigma[f]));
    }
    for (std::size_t col = 0; col < K.basis.cols(); ++col) {
        double pairing = 0.0;
        for (std::size_t r = 0; r < q.size(); ++r) {
            pairing += to_double(Rational(K.basis.at(r, col))) * sigma[r];
        }
        if (std::fabs(pairing) > tol * scale) {
            throw NotOnLevelSet("project_to_polytope: sigma pairs to " + std::to_string(pairing) +
                                " with a kernel vector (tolerance " + std::to_string(tol * scale) +
                                ")");
        }
    }
    const ProjectionSolver solver(P);
    double residual = 0.0;
    std::vector<double> x = solver.solve(sigma, residual);
    if (residual > tol * scale) {
        throw InconsistentSystem("project_to_polytope: least-squares residual " +
                                 std::to_string(residual) + " exceeds tolerance");
    }
    return x;
}

// ---------------------------------------------------------------------------
// Model manifolds
// ---------------------------------------------------------------------------

ModelManifold ModelManifold::hpm(std::size_t m) {
    if (m == 0) {
        throw Unsupported("hpm: m must be positive");
    }
    ModelManifold M(Kind::HPm);
    M.m_ = m;
    return M;
}

ModelManifold ModelManifold::product_hp1(std::size_t m) {
    if (m == 0) {
        throw Unsupported("product_hp1: m must be positive");
    }
    ModelManifold M(Kind::ProductHP1);
    M.m_ = m;
    return M;
}

ModelManifold ModelManifold::blowup_hp2(double a1, double a2, double a3) {
    for (double a : {a1, a2, a3}) {
        if (!(a >= 0.0 && a <= 1.0)) {
            throw Unsupported("blowup_hp2: weights must lie in [0, 1]");
        }
    }
    ModelManifold M(Kind::BlowupHP2);
    M.m_ = 2;
    M.alpha_ = {a1, a2, a3};
    return M;
}

ModelManifold ModelManifold::polytope_quotient(HRepPolytope P) {
    ModelManifold M(Kind::PolytopeQuotient);
    M.m_ = P.dim();
    M.kernel_ = kernel_lattice(projection_from_normals(P));
    M.polytope_ = std::move(P);
    return M;
}

const HRepPolytope& ModelManifold::polytope() const {
    if (!polytope_) {
        throw Unsupported("this model does not carry a polytope");
    }
    return *polytope_;
}

const KernelLattice& ModelManifold::kernel() const {
    if (!kernel_) {
        throw Unsupported("this model does not carry a kernel lattice");
    }
    return *kernel_;
}

std::size_t ModelManifold::point_size() const {
    switch (kind_) {
        case Kind::HPm:
            return m_ + 1;
        case Kind::ProductHP1:
            return 2 * m_;
        case Kind::BlowupHP2:
            return 9;
        case Kind::PolytopeQuotient:
        default:
            return polytope().facet_count();
    }
}

std::size_t ModelManifold::image_dim() const {
    switch (kind_) {
        case Kind::HPm:
        case Kind::ProductHP1:
            return m_;
        case Kind::BlowupHP2:
            return 2;
        case Kind::PolytopeQuotient:
        default:
            return polytope().dim();
    }
}

std::vector<double> model_moment(const ModelManifold& M, const QuaternionVector& point) {
    if (point.size() != M.point_size()) {
        throw DimensionMismatch("model_moment: point carries " + std::to_string(point.size()) +
                                " coordinates, model expects " + std::to_string(M.point_size()));
    }
    switch (M.kind()) {
        case ModelManifold::Kind::HPm: {
            double total = 0.0;
            for (const Quaternion& q : point) total += quartic(q);
            if (total == 0.0) {
                throw ZeroHomogeneousVector("model_moment: zero homogeneous vector");
            }
            std::vector<double> sigma(M.m());
            for (std::size_t i = 0; i < M.m(); ++i) sigma[i] = -quartic(point[i]) / total;
            return sigma;
        }
        case ModelManifold::Kind::ProductHP1: {
            std::vector<double> sigma(M.m());
            for (std::size_t i = 0; i < M.m(); ++i) {
                const double a = quartic(point[2 * i]);
                const double b = quartic(point[2 * i + 1]);
                if (a + b == 0.0) {
                    throw ZeroHomogeneousVector("model_moment: factor " + std::to_string(i + 1) +
                                                " is the zero pair");
                }
                sigma[i] = -a / (a + b);
            }
            return sigma;
        }
        case ModelManifold::Kind::BlowupHP2: {
            const double Q = quartic(point[0]) + quartic(point[1]) + quartic(point[2]);
            const double Pp = quartic(point[3]) + quartic(point[4]);
            const double R = quartic(point[5]) + quartic(point[6]);
            const double S = quartic(point[7]) + quartic(point[8]);
            if (Q == 0.0 || Pp == 0.0 || R == 0.0 || S == 0.0) {
                throw ZeroHomogeneousVector("model_moment: a homogeneous block is zero");
            }
            const auto& a = M.alpha();
            return {-quartic(point[0]) / Q - a[0] * quartic(point[3]) / Pp -
                        a[2] * quartic(point[7]) / S,
                    -quartic(point[1]) / Q - a[1] * quartic(point[5]) / R -
                        a[2] * quartic(point[8]) / S};
        }
        case ModelManifold::Kind::PolytopeQuotient:
        default:
            return project_to_polytope(M.kernel(), M.polytope(), point);
    }
}

ModelSampleSet sample_model(const ModelManifold& M, std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw InvalidSampleCount("sample_model: sample count must be positive");
    }
    ModelSampleSet out;
    if (M.kind() == ModelManifold::Kind::PolytopeQuotient) {
        SampleSet samples = sample_level_set(M.polytope(), M.kernel(), n, seed);
        out.points = std::move(samples.points);
        out.images = std::move(samples.projections);
        return out;
    }
    out.points.reserve(n);
    out.images.reserve(n);
    const std::size_t size = M.point_size();
    for (std::size_t i = 0; i < n; ++i) {
        SplitMix64 rng(substream_seed(seed, i));
        QuaternionVector point(size);
        for (Quaternion& q : point) {
            q = {rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
        }
        out.images.push_back(model_moment(M, point));
        out.points.push_back(std::move(point));
    }
    return out;
}

std::vector<std::vector<double>> fixed_point_images(const ModelManifold& M) {
    std::vector<std::vector<double>> images;
    switch (M.kind()) {
        case ModelManifold::Kind::HPm: {
            for (std::size_t l = 0; l <= M.m(); ++l) {
                std::vector<double> image(M.m(), 0.0);
                if (l < M.m()) image[l] = -1.0;
                images.push_back(std::move(image));
            }
            break;
        }
        case ModelManifold::Kind::ProductHP1: {
            const std::size_t count = std::size_t{1} << M.m();
            for (std::size_t mask = 0; mask < count; ++mask) {
                std::vector<double> image(M.m(), 0.0);
                for (std::size_t i = 0; i < M.m(); ++i) {
                    image[i] = ((mask >> i) & 1) ? 0.0 : -1.0;
                }
                images.push_back(std::move(image));
            }
            break;
        }
        case ModelManifold::Kind::BlowupHP2: {
            const auto& a = M.alpha();
            for (int qa = 0; qa < 3; ++qa) {
                for (int pb = 0; pb < 2; ++pb) {
                    for (int rc = 0; rc < 2; ++rc) {
                        for (int sd = 0; sd < 2; ++sd) {
                            const double s1 = -(qa == 0 ? 1.0 : 0.0) - a[0] * (pb == 0 ? 1.0 : 0.0) -
                                              a[2] * (sd == 0 ? 1.0 : 0.0);
                            const double s2 = -(qa == 1 ? 1.0 : 0.0) - a[1] * (rc == 0 ? 1.0 : 0.0) -
                                              a[2] * (sd == 1 ? 1.0 : 0.0);
                            images.push_back({s1, s2});
                        }
                    }
                }
            }
            break;
        }
        case ModelManifold::Kind::PolytopeQuotient:
        default: {
            for (const Vertex& v : enumerate_vertices(M.polytope())) {
                std::vector<double> image(v.point.size());
                for (std::size_t c = 0; c < v.point.size(); ++c) image[c] = to_double(v.point[c]);
                images.push_back(std::move(image));
            }
            return images;  // vertices are extreme by definition
        }
    }
    if (M.image_dim() == 2) {
        std::vector<std::array<double, 2>> planar;
        planar.reserve(images.size());
        for (const auto& im : images) planar.push_back({im[0], im[1]});
        std::vector<std::vector<double>> hull;
        for (const auto& p : convex_hull_2d(planar)) hull.push_back({p[0], p[1]});
        return hull;
    }
    std::vector<std::vector<double>> unique;
    for (const auto& im : images) {
        if (std::find(unique.begin(), unique.end(), im) == unique.end()) {
            unique.push_back(im);
        }
    }
    return unique;
}

// ---------------------------------------------------------------------------
// Convex hulls and membership certificates
// ---------------------------------------------------------------------------

std::vector<std::array<double, 2>> convex_hull_2d(const std::vector<std::array<double, 2>>& pts) {
    std::vector<std::array<double, 2>> p = pts;
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    if (p.size() <= 2) return p;
    auto cross = [](const std::array<double, 2>& O, const std::array<double, 2>& A,
                    const std::array<double, 2>& B) {
        return (A[0] - O[0]) * (B[1] - O[1]) - (A[1] - O[1]) * (B[0] - O[0]);
    };
    std::vector<std::array<double, 2>> hull(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p[i]) <= 0.0) --k;
        hull[k++] = p[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = p.size() - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], p[i]) <= 0.0) --k;
        hull[k++] = p[i];
    }
    hull.resize(k - 1);
    return hull;
}

namespace {

// Phase-1 simplex deciding whether x is a convex combination of the
// generators.  Bland's rule on entering and leaving variables; exact
// arithmetic when T = Rational, epsilon-guarded when T = double.
template <typename T>
HullCertificate phase1_hull(const std::vector<std::vector<T>>& A, const std::vector<T>& x,
                            double inside_tol) {
    const std::size_t dim = x.size();
    for (const auto& a : A) {
        if (a.size() != dim) {
            throw DimensionMismatch("hull membership: generator dimension mismatch");
        }
    }
    const std::size_t R = dim + 1;
    const std::size_t n = A.size();
    const std::size_t ncols = n + R;

    auto below_minus_eps = [](const T& v) {
        if constexpr (std::is_same_v<T, double>) {
            return v < -1e-12;
        } else {
            return v < 0;
        }
    };
    auto above_eps = [](const T& v) {
        if constexpr (std::is_same_v<T, double>) {
            return v > 1e-12;
        } else {
            return v > 0;
        }
    };
    auto as_double = [](const T& v) {
        if constexpr (std::is_same_v<T, double>) {
            return v;
        } else {
            return to_double(v);
        }
    };

    std::vector<std::vector<T>> tab(R, std::vector<T>(ncols + 1, T(0)));
    std::vector<int> row_sign(R, 1);
    for (std::size_t r = 0; r < R; ++r) {
        for (std::size_t j = 0; j < n; ++j) tab[r][j] = (r < dim) ? A[j][r] : T(1);
        T rhs = (r < dim) ? x[r] : T(1);
        if (rhs < T(0)) {
            row_sign[r] = -1;
            rhs = -rhs;
            for (std::size_t j = 0; j < n; ++j) tab[r][j] = -tab[r][j];
        }
        tab[r][n + r] = T(1);
        tab[r][ncols] = rhs;
    }
    std::vector<std::size_t> basis(R);
    std::vector<char> is_basic(ncols, 0);
    for (std::size_t r = 0; r < R; ++r) {
        basis[r] = n + r;
        is_basic[n + r] = 1;
    }

    const std::size_t iteration_cap = 10000 + 100 * ncols;
    for (std::size_t iter = 0;; ++iter) {
        if (iter > iteration_cap) {
            throw Error("hull membership: simplex iteration cap exceeded");
        }
        std::size_t enter = ncols;
        for (std::size_t j = 0; j < ncols && enter == ncols; ++j) {
            if (is_basic[j]) continue;  // reduced cost is exactly zero
            T cbar = (j >= n) ? T(1) : T(0);
            for (std::size_t r = 0; r < R; ++r) {
                if (basis[r] >= n) cbar -= tab[r][j];
            }
            if (below_minus_eps(cbar)) enter = j;
        }
        if (enter == ncols) break;

        std::size_t leave = R;
        for (std::size_t r = 0; r < R; ++r) {
            if (!above_eps(tab[r][enter])) continue;
            if (leave == R) {
                leave = r;
                continue;
            }
            const T lhs = tab[r][ncols] * tab[leave][enter];
            const T rhs = tab[leave][ncols] * tab[r][enter];
            if (lhs < rhs || (lhs == rhs && basis[r] < basis[leave])) leave = r;
        }
        if (leave == R) {
            throw Error("hull membership: phase-1 became unbounded");
        }
        const T pivot = tab[leave][enter];
        for (std::size_t j = 0; j <= ncols; ++j) tab[leave][j] /= pivot;
        for (std::size_t r = 0; r < R; ++r) {
            if (r == leave || tab[r][enter] == T(0)) continue;
            const T factor = tab[r][enter];
            for (std::size_t j = 0; j <= ncols; ++j) tab[r][j] -= factor * tab[leave][j];
        }
        is_basic[basis[leave]] = 0;
        basis[leave] = enter;
        is_basic[enter] = 1;
    }

    T objective(0);
    for (std::size_t r = 0; r < R; ++r) {
        if (basis[r] >= n) objective += tab[r][ncols];
    }

    HullCertificate cert;
    cert.objective = as_double(objective);

    bool inside;
    if constexpr (std::is_same_v<T, double>) {
        inside = cert.objective <= inside_tol;
    } else {
        (void)inside_tol;
        inside = (objective == 0);
    }

    if (inside) {
        cert.inside = true;
        cert.weights.assign(n, 0.0);
        for (std::size_t r = 0; r < R; ++r) {
            if (basis[r] < n) cert.weights[basis[r]] = as_double(tab[r][ncols]);
        }
    } else {
        // Dual certificate: the artificial columns of the final tableau hold
        // the basis inverse, so y = c_B B^{-1} reads off column n + r.
        std::vector<double> z(R, 0.0);
        for (std::size_t rp = 0; rp < R; ++rp) {
            T y(0);
            for (std::size_t r = 0; r < R; ++r) {
                if (basis[r] >= n) y += tab[r][n + rp];
            }
            z[rp] = row_sign[rp] * as_double(y);
        }
        cert.separator.assign(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(dim));
        cert.separator_offset = -z[dim];
    }
    return cert;
}

}  // namespace

HullCertificate hull_membership(const std::vector<std::vector<double>>& generators,
                                const std::vector<double>& x, double tol) {
    HullCertificate cert = phase1_hull<double>(generators, x, tol);
    // Verify the certificate before handing it out.
    const double check_tol = std::max(1e-9, 10.0 * tol);
    if (cert.inside) {
        double max_err = 0.0;
        double weight_sum = 0.0;
        std::vector<double> combo(x.size(), 0.0);
        for (std::size_t i = 0; i < generators.size(); ++i) {
            weight_sum += cert.weights[i];
            for (std::size_t c = 0; c < x.size(); ++c) combo[c] += cert.weights[i] * generators[i][c];
        }
        for (std::size_t c = 0; c < x.size(); ++c) max_err = std::max(max_err, std::fabs(combo[c] - x[c]));
        max_err = std::max(max_err, std::fabs(weight_sum - 1.0));
        if (max_err > check_tol + tol) {
            throw Error("hull membership: inside certificate failed verification");
        }
    } else {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& a : generators) {
            double v = 0.0;
            for (std::size_t c = 0; c < x.size(); ++c) v += cert.separator[c] * a[c];
            best = std::max(best, v);
        }
        double at_x = 0.0;
        for (std::size_t c = 0; c < x.size(); ++c) at_x += cert.separator[c] * x[c];
        if (!(best <= cert.separator_offset + check_tol) || !(at_x > cert.separator_offset)) {
            throw Error("hull membership: separator certificate failed verification");
        }
    }
    return cert;
}

HullCertificate hull_membership_exact(const std::vector<RationalVector>& generators,
                                      const RationalVector& x) {
    return phase1_hull<Rational>(generators, x, 0.0);
}

AlphaFactorizationReport alpha_factorization_check(const std::vector<QuaternionVector>& samples) {
    AlphaFactorizationReport report;
    for (const QuaternionVector& q : samples) {
        if (q.size() < 2) {
            throw DimensionMismatch("alpha_factorization_check: need at least two coordinates");
        }
        const std::size_t m = q.size() - 1;
        const ModelManifold M = ModelManifold::hpm(m);
        const std::vector<double> sigma = model_moment(M, q);

        bool ambiguous = false;
        std::vector<double> mod2(q.size());  // complex modulus |alpha(q_l)|, equal to |q_l|^2
        double total = 0.0;
        for (std::size_t l = 0; l < q.size(); ++l) {
            const double xr = q[l].x1;
            const double y = std::sqrt(q[l].x2 * q[l].x2 + q[l].x3 * q[l].x3 + q[l].x4 * q[l].x4);
            if (y <= 1e-12) ambiguous = true;
            const double re = xr * xr - y * y;
            const double im = 2.0 * xr * y;
            mod2[l] = std::hypot(re, im);
            total += mod2[l] * mod2[l];
        }
        if (ambiguous) ++report.ambiguous_points;
        if (total == 0.0) {
            throw ZeroHomogeneousVector("alpha_factorization_check: zero homogeneous vector");
        }
        for (std::size_t i = 0; i < m; ++i) {
            const double nu = -mod2[i] * mod2[i] / total;
            report.max_residual = std::max(report.max_residual, std::fabs(sigma[i] - nu));
        }
    }
    return report;
}

std::size_t euler_characteristic(const HRepPolytope& P) { return enumerate_vertices(P).size(); }

}  // namespace qtoric
