#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "qtoric/momentgeo.hpp"
#include "qtoric/rng.hpp"
#include "support/catalog_fixture.hpp"

using namespace qtoric;

namespace {

RationalVector rv(std::vector<Rational> e) { return e; }

QuaternionVector gaussian_point(SplitMix64& rng, std::size_t d) {
    QuaternionVector q(d);
    for (auto& c : q) {
        c.x1 = rng.gaussian();
        c.x2 = rng.gaussian();
        c.x3 = rng.gaussian();
        c.x4 = rng.gaussian();
    }
    return q;
}

}  // namespace

TEST_CASE("solve_radii: fourth roots of four times the slack") {
    HRepPolytope trap = testsupport::load_catalog("trapezoid");
    std::vector<double> radii = solve_radii(trap, rv({0, 0}));
    REQUIRE(radii.size() == 4);
    CHECK(radii[0] == 0.0);
    CHECK(radii[1] == 0.0);
    CHECK(radii[2] == doctest::Approx(std::pow(4.0, 0.25)));
    CHECK(radii[3] == doctest::Approx(std::pow(8.0, 0.25)));

    // Interior point: all radii positive.
    for (double r : solve_radii(trap, rv({Rational(1, 2), Rational(1, 2)}))) CHECK(r > 0.0);

    CHECK_THROWS_AS(solve_radii(trap, rv({3, 0})), OutsidePolytope);
    CHECK_THROWS_AS(solve_radii(trap, rv({0})), DimensionMismatch);
}

TEST_CASE("sample_level_set: shapes, residuals, and the level-set relations") {
    HRepPolytope trap = testsupport::load_catalog("trapezoid");
    KernelLattice K = kernel_lattice(projection_from_normals(trap));
    SampleSet s = sample_level_set(trap, K, 200, 42ULL);

    CHECK(s.seed == 42ULL);
    REQUIRE(s.points.size() == 200);
    REQUIRE(s.images.size() == 200);
    REQUIRE(s.projections.size() == 200);
    CHECK(s.max_level_residual <= 1e-9);
    CHECK(s.max_projection_residual <= 1e-9);

    for (std::size_t i = 0; i < s.points.size(); ++i) {
        REQUIRE(s.points[i].size() == 4);
        REQUIRE(s.images[i].size() == 4);
        REQUIRE(s.projections[i].size() == 2);
        // The recovered point lies in the polytope.
        const double x = s.projections[i][0], y = s.projections[i][1];
        CHECK(y >= -1e-9);
        CHECK(x >= -1e-9);
        CHECK(y <= 1 + 1e-9);
        CHECK(x + y <= 2 + 1e-9);
        // Quartic moduli relations carved out by the kernel pairings.
        auto quartic = [&](std::size_t l) {
            const double n2 = norm_sq(s.points[i][l]);
            return n2 * n2;
        };
        CHECK(quartic(0) + quartic(2) == doctest::Approx(4.0).epsilon(1e-9));
        CHECK(quartic(0) + quartic(1) + quartic(3) == doctest::Approx(8.0).epsilon(1e-9));
    }
}

TEST_CASE("sample_level_set is reproducible point by point") {
    HRepPolytope trap = testsupport::load_catalog("trapezoid");
    KernelLattice K = kernel_lattice(projection_from_normals(trap));
    SampleSet a = sample_level_set(trap, K, 5, 7ULL);
    SampleSet b = sample_level_set(trap, K, 10, 7ULL);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t l = 0; l < 4; ++l) {
            CHECK(a.points[i][l].x1 == b.points[i][l].x1);
            CHECK(a.points[i][l].x2 == b.points[i][l].x2);
            CHECK(a.points[i][l].x3 == b.points[i][l].x3);
            CHECK(a.points[i][l].x4 == b.points[i][l].x4);
        }
    }
    SampleSet c = sample_level_set(trap, K, 5, 8ULL);
    CHECK(c.points[0][2].x1 != a.points[0][2].x1);

    CHECK_THROWS_AS(sample_level_set(trap, K, 0, 1ULL), InvalidSampleCount);
}

TEST_CASE("project_to_polytope: round trip and level-set guard") {
    HRepPolytope trap = testsupport::load_catalog("trapezoid");
    KernelLattice K = kernel_lattice(projection_from_normals(trap));
    SampleSet s = sample_level_set(trap, K, 25, 11ULL);
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        std::vector<double> x = project_to_polytope(K, trap, s.points[i]);
        REQUIRE(x.size() == 2);
        CHECK(x[0] == doctest::Approx(s.projections[i][0]).epsilon(1e-12));
        CHECK(x[1] == doctest::Approx(s.projections[i][1]).epsilon(1e-12));
    }

    // A point violating the kernel pairing (-1/4 + 3/4 = 1/2 != 0).
    QuaternionVector ones(4, Quaternion{1, 0, 0, 0});
    CHECK_THROWS_AS(project_to_polytope(K, trap, ones), NotOnLevelSet);
    CHECK_THROWS_AS(project_to_polytope(K, trap, QuaternionVector(3)), DimensionMismatch);
}

TEST_CASE("model_moment: quaternionic projective space") {
    ModelManifold M = ModelManifold::hpm(2);
    CHECK(M.point_size() == 3);
    CHECK(M.image_dim() == 2);

    QuaternionVector e1 = {{1, 0, 0, 0}, {}, {}};
    std::vector<double> s = model_moment(M, e1);
    CHECK(s[0] == doctest::Approx(-1.0));
    CHECK(s[1] == doctest::Approx(0.0));

    // Scale invariance of the homogeneous coordinates.
    QuaternionVector p = {{1, 1, 0, 0}, {0, 2, 1, 0}, {0, 0, 0, 1}};
    QuaternionVector p2 = p;
    for (auto& c : p2) c = 3.0 * c;
    std::vector<double> sp = model_moment(M, p);
    std::vector<double> sp2 = model_moment(M, p2);
    CHECK(sp[0] == doctest::Approx(sp2[0]).epsilon(1e-12));
    CHECK(sp[1] == doctest::Approx(sp2[1]).epsilon(1e-12));

    CHECK_THROWS_AS(model_moment(M, QuaternionVector(3)), ZeroHomogeneousVector);
    CHECK_THROWS_AS(model_moment(M, QuaternionVector(2)), DimensionMismatch);
}

TEST_CASE("model_moment: product of projective lines") {
    ModelManifold M = ModelManifold::product_hp1(2);
    CHECK(M.point_size() == 4);
    QuaternionVector p = {{1, 0, 0, 0}, {1, 0, 0, 0}, {1, 0, 0, 0}, {}};
    std::vector<double> s = model_moment(M, p);
    CHECK(s[0] == doctest::Approx(-0.5));
    CHECK(s[1] == doctest::Approx(-1.0));

    // A zero pair is rejected.
    QuaternionVector bad = {{1, 0, 0, 0}, {1, 0, 0, 0}, {}, {}};
    CHECK_THROWS_AS(model_moment(M, bad), ZeroHomogeneousVector);
}

TEST_CASE("model_moment: blow-up family") {
    SUBCASE("zero weights recover the projective-space moment") {
        ModelManifold B = ModelManifold::blowup_hp2(0, 0, 0);
        ModelManifold H = ModelManifold::hpm(2);
        CHECK(B.point_size() == 9);
        SplitMix64 rng(2025ULL);
        for (int trial = 0; trial < 20; ++trial) {
            QuaternionVector p = gaussian_point(rng, 9);
            QuaternionVector qblock(p.begin(), p.begin() + 3);
            std::vector<double> sb = model_moment(B, p);
            std::vector<double> sh = model_moment(H, qblock);
            CHECK(std::abs(sb[0] - sh[0]) <= 1e-12);
            CHECK(std::abs(sb[1] - sh[1]) <= 1e-12);
        }
    }
    SUBCASE("frozen corner value at weights one half") {
        ModelManifold B = ModelManifold::blowup_hp2(0.5, 0.5, 0.5);
        QuaternionVector p(9);
        p[0] = {1, 0, 0, 0};  // q = [1:0:0]
        p[3] = {1, 0, 0, 0};  // p = [1:0]
        p[6] = {0, 0, 0, 1};  // r = [0:1]
        p[7] = {1, 0, 0, 0};  // s = [1:0]
        std::vector<double> s = model_moment(B, p);
        CHECK(s[0] == doctest::Approx(-2.0));
        CHECK(s[1] == doctest::Approx(0.0));
    }
    SUBCASE("weights outside [0,1] are rejected") {
        CHECK_THROWS_AS(ModelManifold::blowup_hp2(-0.1, 0, 0), Unsupported);
        CHECK_THROWS_AS(ModelManifold::blowup_hp2(0, 1.5, 0), Unsupported);
    }
}

TEST_CASE("ModelManifold accessors guard their payloads") {
    ModelManifold H = ModelManifold::hpm(2);
    CHECK_THROWS_AS(H.polytope(), Unsupported);
    CHECK_THROWS_AS(H.kernel(), Unsupported);
    CHECK_THROWS_AS(ModelManifold::hpm(0), Unsupported);
    CHECK_THROWS_AS(ModelManifold::product_hp1(0), Unsupported);

    HRepPolytope trap = testsupport::load_catalog("trapezoid");
    ModelManifold Q = ModelManifold::polytope_quotient(trap);
    CHECK(Q.polytope().facet_count() == 4);
    CHECK(Q.kernel().rank == 2);
    CHECK(Q.point_size() == 4);
    CHECK(Q.image_dim() == 2);
}

TEST_CASE("fixed_point_images: frozen extreme-point sets") {
    using P2 = std::vector<std::vector<double>>;
    SUBCASE("projective plane") {
        P2 pts = fixed_point_images(ModelManifold::hpm(2));
        CHECK(pts == P2{{-1, 0}, {0, -1}, {0, 0}});
    }
    SUBCASE("product of two lines") {
        P2 pts = fixed_point_images(ModelManifold::product_hp1(2));
        CHECK(pts == P2{{-1, -1}, {0, -1}, {0, 0}, {-1, 0}});
    }
    SUBCASE("blow-up hexagon at weights one half") {
        P2 pts = fixed_point_images(ModelManifold::blowup_hp2(0.5, 0.5, 0.5));
        CHECK(pts == P2{{-2, -0.5}, {-0.5, -2}, {0, -2}, {0, -0.5}, {-0.5, 0}, {-2, 0}});
    }
    SUBCASE("polytope quotient lists the vertices") {
        HRepPolytope trap = testsupport::load_catalog("trapezoid");
        P2 pts = fixed_point_images(ModelManifold::polytope_quotient(trap));
        // Vertex enumeration order (lexicographic).
        CHECK(pts == P2{{0, 0}, {0, 1}, {1, 1}, {2, 0}});
    }
}

TEST_CASE("sample_model stays inside the fixed-point hull") {
    struct Case {
        ModelManifold model;
        const char* label;
    };
    const Case cases[] = {
        {ModelManifold::hpm(2), "hpm2"},
        {ModelManifold::product_hp1(2), "product"},
        {ModelManifold::blowup_hp2(0.5, 0.5, 0.5), "blowup"},
    };
    for (const Case& c : cases) {
        CAPTURE(c.label);
        auto hull = fixed_point_images(c.model);
        ModelSampleSet s = sample_model(c.model, 300, 31ULL);
        REQUIRE(s.points.size() == 300);
        REQUIRE(s.images.size() == 300);
        for (const auto& img : s.images) {
            HullCertificate cert = hull_membership(hull, img);
            CHECK(cert.inside);
        }
    }
    CHECK_THROWS_AS(sample_model(ModelManifold::hpm(2), 0, 1ULL), InvalidSampleCount);
}

TEST_CASE("sample_model on a polytope quotient matches sample_level_set") {
    HRepPolytope trap = testsupport::load_catalog("trapezoid");
    ModelManifold Q = ModelManifold::polytope_quotient(trap);
    ModelSampleSet s = sample_model(Q, 10, 42ULL);
    KernelLattice K = kernel_lattice(projection_from_normals(trap));
    SampleSet ref = sample_level_set(trap, K, 10, 42ULL);
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(s.images[i][0] == doctest::Approx(ref.projections[i][0]).epsilon(1e-12));
        CHECK(s.images[i][1] == doctest::Approx(ref.projections[i][1]).epsilon(1e-12));
        // model_moment re-evaluates to the same projection.
        std::vector<double> again = model_moment(Q, s.points[i]);
        CHECK(again[0] == doctest::Approx(s.images[i][0]).epsilon(1e-12));
    }
}

TEST_CASE("convex_hull_2d: counterclockwise hull from the lex-min point") {
    using Pt = std::array<double, 2>;
    std::vector<Pt> square = {{1, 1}, {0, 0}, {1, 0},    {0, 1},
                              {0.5, 0.5},                        // interior
                              {0, 0},                            // duplicate
                              {0.5, 0}};                         // collinear on an edge
    std::vector<Pt> hull = convex_hull_2d(square);
    CHECK(hull == std::vector<Pt>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});

    // Fully collinear input collapses to its two extremes.
    std::vector<Pt> line = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
    CHECK(convex_hull_2d(line) == std::vector<Pt>{{0, 0}, {3, 3}});

    // Tiny inputs come back as they are (after dedup).
    CHECK(convex_hull_2d({{2, 3}}) == std::vector<Pt>{{2, 3}});
    CHECK(convex_hull_2d({}) == std::vector<Pt>{});
}

TEST_CASE("hull_membership produces verified certificates") {
    const std::vector<std::vector<double>> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};

    SUBCASE("interior point with convex weights") {
        HullCertificate c = hull_membership(square, {0.25, 0.5});
        CHECK(c.inside);
        CHECK(c.objective <= 1e-7);
        REQUIRE(c.weights.size() == 4);
        double sum = 0.0, wx = 0.0, wy = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(c.weights[i] >= -1e-9);
            sum += c.weights[i];
            wx += c.weights[i] * square[i][0];
            wy += c.weights[i] * square[i][1];
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(wx == doctest::Approx(0.25).epsilon(1e-9));
        CHECK(wy == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("boundary and vertex points count as inside") {
        CHECK(hull_membership(square, {1.0, 0.5}).inside);
        CHECK(hull_membership(square, {0.0, 0.0}).inside);
    }
    SUBCASE("outside point carries a separating functional") {
        HullCertificate c = hull_membership(square, {2.0, 0.5});
        CHECK_FALSE(c.inside);
        CHECK(c.objective > 1e-7);
        REQUIRE(c.separator.size() == 2);
        for (const auto& g : square) {
            const double val = c.separator[0] * g[0] + c.separator[1] * g[1];
            CHECK(val <= c.separator_offset + 1e-9);
        }
        const double val = c.separator[0] * 2.0 + c.separator[1] * 0.5;
        CHECK(val > c.separator_offset);
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(hull_membership(square, {1.0, 2.0, 3.0}), DimensionMismatch);
    }
}

TEST_CASE("hull_membership_exact decides boundary cases exactly") {
    const std::vector<RationalVector> square = {rv({0, 0}), rv({1, 0}), rv({1, 1}),
                                                rv({0, 1})};
    HullCertificate in = hull_membership_exact(square, rv({Rational(1, 2), Rational(1, 2)}));
    CHECK(in.inside);
    HullCertificate edge = hull_membership_exact(square, rv({1, Rational(1, 2)}));
    CHECK(edge.inside);
    HullCertificate out =
        hull_membership_exact(square, rv({Rational(1000001, 1000000), Rational(1, 2)}));
    CHECK_FALSE(out.inside);
}

TEST_CASE("alpha_factorization_check: complex squares reproduce the moment") {
    SplitMix64 rng(808ULL);
    std::vector<QuaternionVector> samples;
    for (int i = 0; i < 50; ++i) samples.push_back(gaussian_point(rng, 3));
    AlphaFactorizationReport rep = alpha_factorization_check(samples);
    CHECK(rep.max_residual <= 1e-9);
    CHECK(rep.ambiguous_points == 0);  // gaussian coordinates are never real

    // A sample with one purely real coordinate is ambiguous but still exact.
    std::vector<QuaternionVector> with_real = {
        {{2, 0, 0, 0}, {1, 1, 0, 0}, {0, 1, 1, 1}}};
    AlphaFactorizationReport rep2 = alpha_factorization_check(with_real);
    CHECK(rep2.ambiguous_points == 1);
    CHECK(rep2.max_residual <= 1e-9);

    CHECK_THROWS_AS(alpha_factorization_check({QuaternionVector(1)}), DimensionMismatch);
}

TEST_CASE("euler_characteristic counts vertices") {
    CHECK(euler_characteristic(testsupport::load_catalog("delta2")) == 3);
    CHECK(euler_characteristic(testsupport::load_catalog("delta4")) == 5);
    CHECK(euler_characteristic(testsupport::load_catalog("cube3")) == 8);
    CHECK(euler_characteristic(testsupport::load_catalog("trapezoid")) == 4);
    CHECK(euler_characteristic(testsupport::load_catalog("hexahedron")) == 8);
}
