#include "qtoric/cut.hpp"

#include <cmath>
#include <string>

#include "qtoric/momentgeo.hpp"
#include "qtoric/quatgeom.hpp"

namespace qtoric {

CutResult polytope_cut(const HRepPolytope& P, const CutSpec& spec) {
    const std::size_t d = P.facet_count();
    const std::size_t j = spec.facet_index;
    if (j >= d) {
        throw DimensionMismatch("polytope_cut: facet index " + std::to_string(j) +
                                " out of range for " + std::to_string(d) + " facets");
    }

    // The cutting hyperplane is <x, v_j> = -level.  A proper cut strictly
    // separates at least one vertex on each side.
    const std::vector<Vertex> vertices = enumerate_vertices(P);
    const Facet& parallel_to = P.facets()[j];
    bool some_below = false;
    bool some_above = false;
    for (const Vertex& v : vertices) {
        Rational value = 0;
        for (std::size_t c = 0; c < v.point.size(); ++c) {
            value += Rational(parallel_to.normal[c]) * v.point[c];
        }
        if (value < -spec.level) some_below = true;
        if (value > -spec.level) some_above = true;
    }
    if (!some_below || !some_above) {
        throw ImproperCut("polytope_cut: the hyperplane parallel to facet " +
                          std::to_string(j + 1) + " at level " + format_rational(spec.level) +
                          " does not strictly separate the vertices");
    }

    std::vector<Facet> facets = P.facets();
    Facet added;
    added.normal.reserve(P.dim());
    for (const Int& entry : parallel_to.normal) added.normal.push_back(-entry);
    added.offset = spec.level;
    facets.push_back(std::move(added));

    HRepPolytope cut_polytope(P.dim(), std::move(facets), P.name());
    if (cut_polytope.facet_count() != d + 1) {
        throw ImproperCut("polytope_cut: the cut facet coincides with an existing facet");
    }

    const DelzantReport report = verify_delzant(cut_polytope);
    if (!report.delzant) {
        std::string detail;
        for (const VertexReport& vr : report.vertices) {
            if (vr.simple && vr.rational && vr.smooth) continue;
            detail = vr.simple ? (vr.smooth ? "non-rational" : "non-smooth") : "non-simple";
            break;
        }
        throw NotDelzantAfterCut("polytope_cut: the sliced polytope has a " + detail +
                                 " vertex");
    }

    KernelLattice new_kernel = kernel_lattice(projection_from_normals(cut_polytope));

    // Old kernel embedded in the first d coordinates, plus the coupling
    // vector g = e_j + e_{d} pairing the cut facet with the appended one.
    const KernelLattice old_kernel = kernel_lattice(projection_from_normals(P));
    std::vector<std::vector<Int>> columns;
    for (std::size_t col = 0; col < old_kernel.basis.cols(); ++col) {
        std::vector<Int> padded(d + 1, Int(0));
        for (std::size_t r = 0; r < d; ++r) padded[r] = old_kernel.basis.at(r, col);
        columns.push_back(std::move(padded));
    }
    std::vector<Int> coupling(d + 1, Int(0));
    coupling[j] = 1;
    coupling[d] = 1;
    columns.push_back(std::move(coupling));
    IntMatrix block = IntMatrix::from_columns(d + 1, columns);

    if (!lattice_equal(block, new_kernel.basis)) {
        throw Error("polytope_cut: kernel block certificate failed (old kernel + coupling "
                    "vector does not span the new kernel)");
    }

    CutResult result{std::move(cut_polytope), std::move(new_kernel), std::move(block), j, d,
                     spec.level};
    return result;
}

CutConsistencyReport cut_moment_consistency(const CutResult& cut, std::size_t n,
                                            std::uint64_t seed) {
    const HRepPolytope& P = cut.polytope;
    const std::size_t j = cut.facet_index;
    const std::size_t new_index = cut.new_facet_index;
    const SampleSet samples = sample_level_set(P, cut.kernel, n, seed);

    const double lambda_j = to_double(P.facets()[j].offset);
    const double eps = -to_double(cut.level);

    CutConsistencyReport report;
    report.samples = n;
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<double>& sigma = samples.images[i];
        const QuaternionVector& q = samples.points[i];

        // Pairing of sigma with the coupling vector, straight from the images.
        double direct = 0.0;
        const std::size_t g_col = cut.kernel_block.cols() - 1;
        for (std::size_t r = 0; r < sigma.size(); ++r) {
            direct += to_double(Rational(cut.kernel_block.at(r, g_col))) * sigma[r];
        }

        // Composed formula: the old moment component of the cut facet paired
        // with the appended coordinate through the cut function.
        const double h = -0.25 * norm_sq(q[j]) * norm_sq(q[j]) + lambda_j;
        const double composed = cut_function(h, q[new_index]) - eps;
        report.max_residual = std::max(report.max_residual, std::fabs(direct - composed));

        const double wrong_sign = h + 0.25 * norm_sq(q[new_index]) * norm_sq(q[new_index]) - eps;
        report.negative_control =
            std::max(report.negative_control, std::fabs(direct - wrong_sign));

        // Old kernel columns: pairing over the extended images must agree
        // with the same pairing truncated to the original facets.
        for (std::size_t col = 0; col + 1 < cut.kernel_block.cols(); ++col) {
            double extended = 0.0;
            double truncated = 0.0;
            for (std::size_t r = 0; r < sigma.size(); ++r) {
                const double coeff = to_double(Rational(cut.kernel_block.at(r, col)));
                extended += coeff * sigma[r];
                if (r + 1 < sigma.size()) truncated += coeff * sigma[r];
            }
            report.max_residual =
                std::max(report.max_residual, std::fabs(extended - truncated));
        }
    }
    return report;
}

CutDecompositionReport cut_level_set_decomposition(const std::vector<double>& h_samples,
                                                   double eps, double tol) {
    if (h_samples.empty()) {
        throw InvalidSampleCount("cut_level_set_decomposition: need at least one sample");
    }
    double hmax = h_samples.front();
    for (double h : h_samples) hmax = std::max(hmax, h);

    CutDecompositionReport report;
    if (eps > hmax + tol) {
        report.empty = true;
        return report;
    }
    if (eps >= hmax - tol) {
        throw NonRegularValue("cut_level_set_decomposition: the level " + std::to_string(eps) +
                              " coincides with the sampled maximum " + std::to_string(hmax) +
                              " (critical value)");
    }
    for (double h : h_samples) {
        if (h > eps + tol) {
            // Reconstruct the fiber coordinate from the stratum relation
            // |q|^2 = 2 sqrt(h - eps) and verify it solves F(h, q) = eps.
            const Quaternion q{std::sqrt(2.0 * std::sqrt(h - eps)), 0.0, 0.0, 0.0};
            report.max_relation_residual =
                std::max(report.max_relation_residual, std::fabs(cut_function(h, q) - eps));
            ++report.product_stratum;
        } else if (h >= eps - tol) {
            const Quaternion q{0.0, 0.0, 0.0, 0.0};
            report.max_relation_residual =
                std::max(report.max_relation_residual, std::fabs(cut_function(h, q) - eps));
            ++report.zero_stratum;
        }
        // Samples with h < eps - tol meet the level set in an empty fiber.
    }
    return report;
}

}  // namespace qtoric
