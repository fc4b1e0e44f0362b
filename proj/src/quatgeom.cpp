#include "qtoric/quatgeom.hpp"

#include <cmath>
#include <string>

#include "qtoric/rng.hpp"

namespace qtoric {

namespace {

double det4(const std::array<std::array<double, 4>, 4>& col) {
    // col[j] is the j-th column.  Expansion by 3x3 minors along column 0.
    auto det3 = [](double a, double b, double c, double d, double e, double f, double g,
                   double h, double i) {
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
    };
    double result = 0.0;
    for (int r = 0; r < 4; ++r) {
        double m[9];
        int idx = 0;
        for (int j = 1; j < 4; ++j) {
            for (int rr = 0; rr < 4; ++rr) {
                if (rr == r) continue;
                m[idx++] = col[static_cast<std::size_t>(j)][static_cast<std::size_t>(rr)];
            }
        }
        // idx filled column-major over the minor: m[0..2] = column 1 rows,
        // m[3..5] = column 2 rows, m[6..8] = column 3 rows.
        const double minor =
            det3(m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]);
        const double sign = (r % 2 == 0) ? 1.0 : -1.0;
        result += sign * col[0][static_cast<std::size_t>(r)] * minor;
    }
    return result;
}

void require_flat_multiple_of_4(const std::vector<double>& v, const char* what) {
    if (v.empty() || v.size() % 4 != 0) {
        throw DimensionMismatch(std::string(what) + ": flat vector length " +
                                std::to_string(v.size()) + " is not a positive multiple of 4");
    }
}

double quartic_norm(const std::vector<double>& flat, std::size_t block) {
    const std::size_t base = 4 * block;
    const double s = flat[base] * flat[base] + flat[base + 1] * flat[base + 1] +
                     flat[base + 2] * flat[base + 2] + flat[base + 3] * flat[base + 3];
    return s * s;
}

}  // namespace

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3 - a.x4 * b.x4,
            a.x1 * b.x2 + a.x2 * b.x1 + a.x3 * b.x4 - a.x4 * b.x3,
            a.x1 * b.x3 - a.x2 * b.x4 + a.x3 * b.x1 + a.x4 * b.x2,
            a.x1 * b.x4 + a.x2 * b.x3 - a.x3 * b.x2 + a.x4 * b.x1};
}

Quaternion conjugate(const Quaternion& q) { return {q.x1, -q.x2, -q.x3, -q.x4}; }

double norm_sq(const Quaternion& q) {
    return q.x1 * q.x1 + q.x2 * q.x2 + q.x3 * q.x3 + q.x4 * q.x4;
}

double norm(const Quaternion& q) { return std::sqrt(norm_sq(q)); }

Quaternion inverse(const Quaternion& q) {
    const double n = norm_sq(q);
    if (n == 0.0) {
        throw ZeroInverse("cannot invert the zero quaternion");
    }
    return (1.0 / n) * conjugate(q);
}

std::vector<double> flatten(const QuaternionVector& q) {
    std::vector<double> flat;
    flat.reserve(4 * q.size());
    for (const Quaternion& c : q) {
        flat.push_back(c.x1);
        flat.push_back(c.x2);
        flat.push_back(c.x3);
        flat.push_back(c.x4);
    }
    return flat;
}

QuaternionVector unflatten(const std::vector<double>& flat) {
    require_flat_multiple_of_4(flat, "unflatten");
    QuaternionVector q(flat.size() / 4);
    for (std::size_t l = 0; l < q.size(); ++l) {
        q[l] = {flat[4 * l], flat[4 * l + 1], flat[4 * l + 2], flat[4 * l + 3]};
    }
    return q;
}

Quaternion generator_unit(Sp1Generator beta) {
    switch (beta) {
        case Sp1Generator::H:
            return {0.0, 1.0, 0.0, 0.0};
        case Sp1Generator::X:
            return {0.0, 0.0, 1.0, 0.0};
        case Sp1Generator::Y:
        default:
            return {0.0, 0.0, 0.0, 1.0};
    }
}

std::vector<double> fundamental_field(const QuaternionVector& q, std::size_t factor,
                                      Sp1Generator beta, Side side) {
    if (factor >= q.size()) {
        throw DimensionMismatch("fundamental_field: factor " + std::to_string(factor) +
                                " out of range for " + std::to_string(q.size()) +
                                " coordinates");
    }
    const Quaternion b = generator_unit(beta);
    const Quaternion value =
        (side == Side::Left) ? b * q[factor] : -1.0 * (q[factor] * b);
    std::vector<double> field(4 * q.size(), 0.0);
    field[4 * factor] = value.x1;
    field[4 * factor + 1] = value.x2;
    field[4 * factor + 2] = value.x3;
    field[4 * factor + 3] = value.x4;
    return field;
}

double psi0(const std::vector<double>& u, const std::vector<double>& v,
            const std::vector<double>& w, const std::vector<double>& z) {
    require_flat_multiple_of_4(u, "psi0");
    if (v.size() != u.size() || w.size() != u.size() || z.size() != u.size()) {
        throw DimensionMismatch("psi0: arguments have mismatched lengths");
    }
    double total = 0.0;
    for (std::size_t block = 0; block + 3 < u.size(); block += 4) {
        std::array<std::array<double, 4>, 4> cols{};
        for (int r = 0; r < 4; ++r) {
            const std::size_t t = block + static_cast<std::size_t>(r);
            cols[0][static_cast<std::size_t>(r)] = u[t];
            cols[1][static_cast<std::size_t>(r)] = v[t];
            cols[2][static_cast<std::size_t>(r)] = w[t];
            cols[3][static_cast<std::size_t>(r)] = z[t];
        }
        total += det4(cols);
    }
    return total;
}

std::vector<double> contract3(const std::vector<double>& u, const std::vector<double>& v,
                              const std::vector<double>& w) {
    require_flat_multiple_of_4(u, "contract3");
    if (v.size() != u.size() || w.size() != u.size()) {
        throw DimensionMismatch("contract3: arguments have mismatched lengths");
    }
    std::vector<double> r(u.size(), 0.0);
    std::vector<double> e(u.size(), 0.0);
    for (std::size_t t = 0; t < u.size(); ++t) {
        e[t] = 1.0;
        r[t] = psi0(u, v, w, e);
        e[t] = 0.0;
    }
    return r;
}

std::vector<double> tri_moment(const QuaternionVector& q, const std::vector<double>& C) {
    if (C.size() != q.size()) {
        throw DimensionMismatch("tri_moment: " + std::to_string(q.size()) +
                                " coordinates but " + std::to_string(C.size()) + " offsets");
    }
    std::vector<double> sigma(q.size());
    for (std::size_t l = 0; l < q.size(); ++l) {
        const double n2 = norm_sq(q[l]);
        sigma[l] = -0.25 * n2 * n2 + C[l];
    }
    return sigma;
}

double check_dsigma_contraction(const QuaternionVector& q, std::size_t ell, double h) {
    if (ell >= q.size()) {
        throw DimensionMismatch("check_dsigma_contraction: coordinate " + std::to_string(ell) +
                                " out of range");
    }
    const std::vector<double> fH = fundamental_field(q, ell, Sp1Generator::H, Side::Left);
    const std::vector<double> fX = fundamental_field(q, ell, Sp1Generator::X, Side::Left);
    const std::vector<double> fY = fundamental_field(q, ell, Sp1Generator::Y, Side::Left);
    const std::vector<double> r = contract3(fH, fX, fY);

    std::vector<double> flat = flatten(q);
    double max_diff = 0.0;
    for (std::size_t t = 0; t < flat.size(); ++t) {
        const double saved = flat[t];
        flat[t] = saved + h;
        const double plus = -0.25 * quartic_norm(flat, ell);
        flat[t] = saved - h;
        const double minus = -0.25 * quartic_norm(flat, ell);
        flat[t] = saved;
        const double numeric = (plus - minus) / (2.0 * h);
        max_diff = std::max(max_diff, std::fabs(numeric - r[t]));
    }
    return max_diff;
}

std::vector<ProbeTriple> tangent_probe_triples(const Quaternion& q, std::size_t count,
                                               std::uint64_t seed) {
    const double qn2 = norm_sq(q);
    if (qn2 == 0.0) {
        throw NotOnSphere("tangent_probe_triples: base point is the origin");
    }
    const std::array<double, 4> base = {q.x1, q.x2, q.x3, q.x4};
    std::vector<ProbeTriple> probes;
    probes.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        SplitMix64 rng(substream_seed(seed, i));
        ProbeTriple triple;
        for (std::size_t v = 0; v < 3; ++v) {
            for (int attempt = 0; attempt < 64; ++attempt) {
                std::array<double, 4> g{};
                for (double& x : g) x = rng.gaussian();
                double dot = 0.0;
                for (int t = 0; t < 4; ++t) dot += g[static_cast<std::size_t>(t)] * base[static_cast<std::size_t>(t)];
                const double scale = dot / qn2;
                double len2 = 0.0;
                for (int t = 0; t < 4; ++t) {
                    g[static_cast<std::size_t>(t)] -= scale * base[static_cast<std::size_t>(t)];
                    len2 += g[static_cast<std::size_t>(t)] * g[static_cast<std::size_t>(t)];
                }
                if (len2 > 1e-12) {
                    const double inv = 1.0 / std::sqrt(len2);
                    for (double& x : g) x *= inv;
                    triple.t[v] = g;
                    break;
                }
            }
        }
        probes.push_back(triple);
    }
    return probes;
}

HorizontalityReport horizontality_residual(double c, const Quaternion& q, Sp1Generator beta,
                                           const std::vector<ProbeTriple>& probes, double tol) {
    const double qn2 = norm_sq(q);
    if (std::fabs(qn2 - c) > tol * std::max(1.0, std::fabs(c))) {
        throw NotOnSphere("horizontality_residual: |q|^2 = " + std::to_string(qn2) +
                          " but the sphere level is " + std::to_string(c));
    }
    const Quaternion b = generator_unit(beta);
    const Quaternion f = b * q;  // left-action field at q
    const std::array<double, 4> field = {f.x1, f.x2, f.x3, f.x4};
    const std::array<double, 4> base = {q.x1, q.x2, q.x3, q.x4};

    HorizontalityReport report;
    for (const ProbeTriple& probe : probes) {
        bool tangent = true;
        for (const auto& t : probe.t) {
            double dot = 0.0;
            double len2 = 0.0;
            for (int s = 0; s < 4; ++s) {
                dot += t[static_cast<std::size_t>(s)] * base[static_cast<std::size_t>(s)];
                len2 += t[static_cast<std::size_t>(s)] * t[static_cast<std::size_t>(s)];
            }
            if (std::fabs(dot) > tol * std::max(1.0, std::sqrt(len2 * qn2))) {
                tangent = false;
                break;
            }
        }
        std::array<std::array<double, 4>, 4> cols{};
        cols[0] = field;
        cols[1] = probe.t[0];
        cols[2] = probe.t[1];
        cols[3] = probe.t[2];
        const double value = std::fabs(det4(cols));
        if (tangent) {
            ++report.valid_probes;
            report.max_residual = std::max(report.max_residual, value);
        } else {
            ++report.invalid_probes;
            report.max_invalid_value = std::max(report.max_invalid_value, value);
        }
    }
    return report;
}

std::vector<double> bracket_fd(const VectorField& V, const VectorField& W,
                               const std::vector<double>& p, double h) {
    const std::vector<double> vp = V(p);
    const std::vector<double> wp = W(p);
    if (vp.size() != p.size() || wp.size() != p.size()) {
        throw DimensionMismatch("bracket_fd: fields must map R^n to R^n");
    }
    auto directional = [&](const VectorField& F, const std::vector<double>& dir) {
        std::vector<double> plus(p.size()), minus(p.size());
        for (std::size_t t = 0; t < p.size(); ++t) {
            plus[t] = p[t] + h * dir[t];
            minus[t] = p[t] - h * dir[t];
        }
        const std::vector<double> fp = F(plus);
        const std::vector<double> fm = F(minus);
        std::vector<double> out(p.size());
        for (std::size_t t = 0; t < p.size(); ++t) {
            out[t] = (fp[t] - fm[t]) / (2.0 * h);
        }
        return out;
    };
    const std::vector<double> dw = directional(W, vp);
    const std::vector<double> dv = directional(V, wp);
    std::vector<double> bracket(p.size());
    for (std::size_t t = 0; t < p.size(); ++t) {
        bracket[t] = dw[t] - dv[t];
    }
    return bracket;
}

VectorField sp1_field(std::size_t d, std::size_t factor, Sp1Generator beta, Side side) {
    return [d, factor, beta, side](const std::vector<double>& flat) {
        if (flat.size() != 4 * d) {
            throw DimensionMismatch("sp1_field: expected flat dimension " +
                                    std::to_string(4 * d));
        }
        return fundamental_field(unflatten(flat), factor, beta, side);
    };
}

VectorField grad_sigma_field(std::size_t d, std::size_t ell) {
    if (ell >= d) {
        throw DimensionMismatch("grad_sigma_field: coordinate out of range");
    }
    return [d, ell](const std::vector<double>& flat) {
        if (flat.size() != 4 * d) {
            throw DimensionMismatch("grad_sigma_field: expected flat dimension " +
                                    std::to_string(4 * d));
        }
        std::vector<double> g(flat.size(), 0.0);
        const std::size_t base = 4 * ell;
        const double n2 = flat[base] * flat[base] + flat[base + 1] * flat[base + 1] +
                          flat[base + 2] * flat[base + 2] + flat[base + 3] * flat[base + 3];
        for (std::size_t t = 0; t < 4; ++t) {
            g[base + t] = -n2 * flat[base + t];
        }
        return g;
    };
}

double cut_function(double h_value, const Quaternion& q) {
    const double n2 = norm_sq(q);
    return h_value - 0.25 * n2 * n2;
}

}  // namespace qtoric
