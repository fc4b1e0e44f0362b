// Command-line surface for the quaternionic-toric toolkit: Delzant
// verification, kernel lattices, extendability, action tables, moment-image
// sampling, polytope cuts, the bundled polytope catalog, and the 4-plectic
// identity checks.  Exit codes: 0 success, 1 failed verdict, 2 input error.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qtoric/cut.hpp"
#include "qtoric/errors.hpp"
#include "qtoric/extend.hpp"
#include "qtoric/io.hpp"
#include "qtoric/lattice.hpp"
#include "qtoric/momentgeo.hpp"
#include "qtoric/polytope.hpp"
#include "qtoric/quatgeom.hpp"
#include "qtoric/rng.hpp"

namespace {

using nlohmann::ordered_json;
using namespace qtoric;

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitInput = 2;

struct Common {
    std::string input;
    std::string output;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 42;
    double tolerance = 1e-9;
    std::string format = "text";
};

void add_common(CLI::App* sub, Common& c, bool needs_input) {
    auto* in = sub->add_option("--input", c.input, "input polytope JSON file");
    if (needs_input) in->required();
    sub->add_option("--output", c.output, "output file or directory");
    sub->add_option("--samples", c.samples, "number of samples")
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100000000}))
        ->capture_default_str();
    sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
    sub->add_option("--tolerance", c.tolerance, "tolerance for exact-identity checks")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--format", c.format, "report format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
}

// Finite-difference checks run against the looser of the two tolerances.
double fd_tolerance(const Common& c) { return std::max(c.tolerance, 1e-6); }

ordered_json json_int(const Int& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return static_cast<long long>(v);
    return v.str();
}

ordered_json json_int_vector(const std::vector<Int>& v) {
    ordered_json a = ordered_json::array();
    for (const Int& x : v) a.push_back(json_int(x));
    return a;
}

ordered_json json_rational_vector(const RationalVector& v) {
    ordered_json a = ordered_json::array();
    for (const Rational& x : v) a.push_back(format_rational(x));
    return a;
}

std::string format_point(const RationalVector& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << format_rational(v[i]);
    os << ")";
    return os.str();
}

std::string format_int_vector(const std::vector<Int>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ")";
    return os.str();
}

void emit(const Common& c, const std::string& text, const ordered_json& machine) {
    if (c.format == "json")
        std::cout << machine.dump(2) << "\n";
    else
        std::cout << text;
}

std::string reason_string(ExtendReason r) {
    switch (r) {
        case ExtendReason::Extendable: return "extendable";
        case ExtendReason::NoReducedBasis: return "no-reduced-basis";
        case ExtendReason::AllBasesContainPattern: return "all-bases-contain-pattern";
    }
    return "unknown";
}

std::string output_directory(const Common& c) {
    if (!c.output.empty()) return c.output;
    if (const char* env = std::getenv("QTORIC_CACHE_DIR"); env && *env) return env;
    return ".";
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int run_verify(const Common& c) {
    const HRepPolytope P = load_polytope(c.input);
    const DelzantReport rep = verify_delzant(P);

    std::ostringstream os;
    os << "polytope: " << (P.name().empty() ? "(unnamed)" : P.name()) << "  dim " << P.dim()
       << "  " << P.facet_count() << " facets\n";
    os << "vertices: " << rep.vertices.size() << "\n";
    ordered_json jverts = ordered_json::array();
    for (const VertexReport& v : rep.vertices) {
        os << "  " << format_point(v.vertex.point) << "  facets {";
        for (std::size_t i = 0; i < v.vertex.active_set.size(); ++i)
            os << (i ? "," : "") << v.vertex.active_set[i] + 1;
        os << "}  simple " << (v.simple ? "yes" : "NO") << "  rational "
           << (v.rational ? "yes" : "NO") << "  smooth " << (v.smooth ? "yes" : "NO");
        if (v.normal_det) os << "  det " << *v.normal_det;
        if (!(v.simple && v.rational && v.smooth)) os << "  <-- offending vertex";
        os << "\n";

        ordered_json jv;
        jv["point"] = json_rational_vector(v.vertex.point);
        ordered_json active = ordered_json::array();
        for (std::size_t a : v.vertex.active_set) active.push_back(a + 1);
        jv["facets"] = active;
        jv["simple"] = v.simple;
        jv["rational"] = v.rational;
        jv["smooth"] = v.smooth;
        if (v.normal_det) jv["det"] = json_int(*v.normal_det);
        jverts.push_back(jv);
    }
    os << "delzant: " << (rep.delzant ? "yes" : "no") << "\n";

    ordered_json j;
    j["command"] = "verify";
    j["polytope"] = P.name();
    j["dim"] = P.dim();
    j["facet_count"] = P.facet_count();
    j["vertices"] = jverts;
    j["delzant"] = rep.delzant;
    emit(c, os.str(), j);
    return rep.delzant ? kExitOk : kExitVerdict;
}

// ---------------------------------------------------------------------------
// kernel
// ---------------------------------------------------------------------------

int run_kernel(const Common& c) {
    const HRepPolytope P = load_polytope(c.input);
    const IntMatrix pi = projection_from_normals(P);
    const KernelLattice K = kernel_lattice(pi);
    const SmithDecomposition snf = smith_normal_form(pi);
    const bool onto = surjective_onto_lattice(pi);

    std::ostringstream os;
    os << "polytope: " << (P.name().empty() ? "(unnamed)" : P.name()) << "  dim " << P.dim()
       << "  " << P.facet_count() << " facets\n";
    os << "projection: " << pi.rows() << " x " << pi.cols() << ", elementary divisors";
    for (const Int& d : snf.divisors) os << " " << d;
    os << (onto ? "  (onto)" : "  (NOT onto)") << "\n";
    os << "kernel rank: " << K.rank << "\n";
    ordered_json jbasis = ordered_json::array();
    for (std::size_t j = 0; j < K.rank; ++j) {
        const std::vector<Int> col = K.basis.column(j);
        os << "  basis[" << j + 1 << "] = " << format_int_vector(col) << "\n";
        jbasis.push_back(json_int_vector(col));
    }

    ordered_json j;
    j["command"] = "kernel";
    j["polytope"] = P.name();
    j["ambient_dim"] = K.ambient_dim;
    j["rank"] = K.rank;
    ordered_json jdiv = ordered_json::array();
    for (const Int& d : snf.divisors) jdiv.push_back(json_int(d));
    j["projection_divisors"] = jdiv;
    j["onto"] = onto;
    j["basis"] = jbasis;
    emit(c, os.str(), j);
    return onto ? kExitOk : kExitVerdict;
}

// ---------------------------------------------------------------------------
// extend / action
// ---------------------------------------------------------------------------

int run_extend(const Common& c) {
    const HRepPolytope P = load_polytope(c.input);
    const KernelLattice K = kernel_lattice(projection_from_normals(P));
    const Extendability ext = decide_extendability(K);

    std::ostringstream os;
    os << "polytope: " << (P.name().empty() ? "(unnamed)" : P.name()) << "\n";
    os << "extendable: " << (ext.extendable ? "yes" : "no") << "  (" << reason_string(ext.reason)
       << ")\n";
    ordered_json jwitness = ordered_json::array();
    ordered_json jtable = ordered_json::array();
    if (ext.extendable && ext.witness) {
        os << "witness basis (columns):\n";
        for (std::size_t j = 0; j < ext.witness->cols(); ++j) {
            os << "  " << format_int_vector(ext.witness->column(j)) << "\n";
            jwitness.push_back(json_int_vector(ext.witness->column(j)));
        }
        const ActionTable t = synthesize_nhat_action(*ext.witness);
        os << "action table:\n";
        for (std::size_t i = 0; i < t.coords.size(); ++i) {
            os << "  " << render_action_line(t, i) << "\n";
            jtable.push_back(render_action_line(t, i));
        }
    }

    ordered_json j;
    j["command"] = "extend";
    j["polytope"] = P.name();
    j["extendable"] = ext.extendable;
    j["reason"] = reason_string(ext.reason);
    if (ext.extendable) {
        j["witness"] = jwitness;
        j["action"] = jtable;
    }
    emit(c, os.str(), j);
    return ext.extendable ? kExitOk : kExitVerdict;
}

int run_action(const Common& c, bool ghat) {
    const HRepPolytope P = load_polytope(c.input);
    const KernelLattice K = kernel_lattice(projection_from_normals(P));
    const Extendability ext = decide_extendability(K);
    if (!ext.extendable || !ext.witness) {
        std::ostringstream os;
        os << "not extendable (" << reason_string(ext.reason) << "): no action table\n";
        ordered_json j;
        j["command"] = "action";
        j["polytope"] = P.name();
        j["extendable"] = false;
        j["reason"] = reason_string(ext.reason);
        emit(c, os.str(), j);
        return kExitVerdict;
    }

    ActionTable t = synthesize_nhat_action(*ext.witness);
    if (ghat) t = synthesize_ghat_action(P, t);
    const std::string text = action_table_to_text(t);
    if (!c.output.empty()) write_text_file(c.output, text);

    ordered_json j;
    j["command"] = "action";
    j["polytope"] = P.name();
    j["extendable"] = true;
    j["combined"] = ghat;
    ordered_json lines = ordered_json::array();
    {
        std::istringstream is(text);
        for (std::string line; std::getline(is, line);) lines.push_back(line);
    }
    j["action"] = lines;
    emit(c, text, j);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// moment-image
// ---------------------------------------------------------------------------

int run_moment_image(const Common& c) {
    const HRepPolytope P = load_polytope(c.input);
    const KernelLattice K = kernel_lattice(projection_from_normals(P));
    const SampleSet set = sample_level_set(P, K, static_cast<std::size_t>(c.samples), c.seed);

    // Every recovered point must satisfy the halfspace system (small slack
    // allowance for the floating-point solve).
    const double geo_tol = std::max(c.tolerance, 1e-9);
    std::size_t outside = 0;
    for (const std::vector<double>& x : set.projections) {
        bool ok = true;
        for (const Facet& f : P.facets()) {
            double lhs = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
                lhs += x[i] * static_cast<double>(f.normal[i].convert_to<double>());
            if (lhs > to_double(f.offset) + geo_tol) ok = false;
        }
        if (!ok) ++outside;
    }

    const ModelManifold quotient = ModelManifold::polytope_quotient(P);
    const std::vector<std::vector<double>> generators = fixed_point_images(quotient);

    const std::string name = P.name().empty() ? "polytope" : P.name();
    const std::filesystem::path dir = output_directory(c);
    std::filesystem::create_directories(dir);
    const std::string samples_path = (dir / "images.csv").string();
    const std::string hull_path = (dir / "hull.csv").string();
    write_text_file(samples_path, samples_to_csv(set, name));
    write_text_file(hull_path, hull_to_csv(generators, name));

    const bool ok = set.max_level_residual <= c.tolerance &&
                    set.max_projection_residual <= std::max(c.tolerance, 1e-8) && outside == 0;

    std::ostringstream os;
    os << "polytope: " << name << "  samples " << set.points.size() << "  seed " << set.seed
       << "\n";
    os << "max level residual:      " << set.max_level_residual << "\n";
    os << "max projection residual: " << set.max_projection_residual << "\n";
    os << "projections outside polytope: " << outside << "\n";
    os << "wrote " << samples_path << "\n";
    os << "wrote " << hull_path << "\n";
    os << "verdict: " << (ok ? "pass" : "FAIL") << "\n";

    ordered_json j;
    j["command"] = "moment-image";
    j["polytope"] = name;
    j["samples"] = set.points.size();
    j["seed"] = set.seed;
    j["max_level_residual"] = set.max_level_residual;
    j["max_projection_residual"] = set.max_projection_residual;
    j["outside"] = outside;
    j["files"] = ordered_json::array({samples_path, hull_path});
    j["pass"] = ok;
    emit(c, os.str(), j);
    return ok ? kExitOk : kExitVerdict;
}

// ---------------------------------------------------------------------------
// cut
// ---------------------------------------------------------------------------

int run_cut(const Common& c, std::uint64_t facet_1based, const std::string& level_text,
            bool verify) {
    const HRepPolytope P = load_polytope(c.input);
    if (facet_1based == 0 || facet_1based > P.facet_count())
        throw ParseError("--facet must be between 1 and the facet count");
    CutSpec spec;
    spec.facet_index = static_cast<std::size_t>(facet_1based - 1);
    spec.level = parse_rational(level_text);

    const CutResult cut = polytope_cut(P, spec);
    if (!c.output.empty()) save_polytope(cut.polytope, c.output);

    std::ostringstream os;
    os << "cut: facet " << facet_1based << " of "
       << (P.name().empty() ? "(unnamed)" : P.name()) << " at level "
       << format_rational(spec.level) << "\n";
    const Facet& nf = cut.polytope.facets()[cut.new_facet_index];
    os << "new facet: normal " << format_int_vector(nf.normal) << ", offset "
       << format_rational(nf.offset) << "\n";
    os << "facets: " << cut.polytope.facet_count() << "  kernel rank: " << cut.kernel.rank
       << "  (block-certified)\n";
    if (!c.output.empty()) os << "wrote " << c.output << "\n";

    ordered_json j;
    j["command"] = "cut";
    j["polytope"] = P.name();
    j["facet"] = facet_1based;
    j["level"] = format_rational(spec.level);
    j["new_facet_normal"] = json_int_vector(nf.normal);
    j["new_facet_offset"] = format_rational(nf.offset);
    j["facet_count"] = cut.polytope.facet_count();
    j["kernel_rank"] = cut.kernel.rank;
    if (!c.output.empty()) j["wrote"] = c.output;

    bool ok = true;
    if (verify) {
        const CutConsistencyReport rep =
            cut_moment_consistency(cut, static_cast<std::size_t>(c.samples), c.seed);
        // The sign-flipped control must sit far above the genuine residual.
        ok = rep.max_residual <= c.tolerance && rep.negative_control > 1e-3;
        os << "consistency residual: " << rep.max_residual << "  (negative control "
           << rep.negative_control << ", " << rep.samples << " samples)\n";
        os << "verdict: " << (ok ? "pass" : "FAIL") << "\n";
        j["consistency_residual"] = rep.max_residual;
        j["negative_control"] = rep.negative_control;
        j["samples"] = rep.samples;
        j["pass"] = ok;
    }
    emit(c, os.str(), j);
    return ok ? kExitOk : kExitVerdict;
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

int run_catalog(const Common& c) {
    const std::vector<CatalogEntry> entries = catalog_polytopes();
    if (entries.empty())
        throw ParseError("catalog directory '" + catalog_directory() +
                         "' is missing or holds no polytope files");

    std::ostringstream os;
    os << "catalog directory: " << catalog_directory() << "\n";
    ordered_json jentries = ordered_json::array();
    for (const CatalogEntry& e : entries) {
        const HRepPolytope P = load_polytope(e.path);
        os << "  " << e.name;
        for (std::size_t pad = e.name.size(); pad < 20; ++pad) os << ' ';
        os << " dim " << P.dim() << "  " << P.facet_count() << " facets  " << e.path << "\n";
        ordered_json je;
        je["name"] = e.name;
        je["dim"] = P.dim();
        je["facet_count"] = P.facet_count();
        je["path"] = e.path;
        jentries.push_back(je);
    }

    ordered_json j;
    j["command"] = "catalog";
    j["directory"] = catalog_directory();
    j["entries"] = jentries;
    emit(c, os.str(), j);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// check-4plectic
// ---------------------------------------------------------------------------

int run_check_4plectic(const Common& c, std::uint64_t d_opt) {
    const std::size_t d = static_cast<std::size_t>(d_opt);
    const std::size_t n = static_cast<std::size_t>(c.samples);
    const double fd_tol = fd_tolerance(c);

    QuaternionVector q(d);

    // 1. Contraction of the 4-form with a factor's three left fields vs the
    //    closed form -|q_l|^2 (x dx) on that block.
    double contraction_residual = 0.0;
    // 2. Finite-difference dsigma vs the same contraction.
    double fd_residual = 0.0;
    const bool fd_enabled = d <= 4;
    for (std::size_t i = 0; i < n; ++i) {
        SplitMix64 rng(substream_seed(c.seed, i));
        for (std::size_t l = 0; l < d; ++l)
            q[l] = Quaternion{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const std::size_t ell = i % d;

        const auto fH = fundamental_field(q, ell, Sp1Generator::H, Side::Left);
        const auto fX = fundamental_field(q, ell, Sp1Generator::X, Side::Left);
        const auto fY = fundamental_field(q, ell, Sp1Generator::Y, Side::Left);
        const std::vector<double> r = contract3(fH, fX, fY);
        const std::vector<double> flat = flatten(q);
        const double qn2 = norm_sq(q[ell]);
        for (std::size_t t = 0; t < r.size(); ++t) {
            const double expected = (t / 4 == ell) ? -qn2 * flat[t] : 0.0;
            contraction_residual = std::max(contraction_residual, std::abs(r[t] - expected));
        }

        if (fd_enabled && i < 1000)
            fd_residual = std::max(fd_residual, check_dsigma_contraction(q, ell, 1e-5));
    }

    // 3. Horizontality on the sphere through a random point.
    double horizontality = 0.0;
    const std::size_t h_points = std::min<std::size_t>(n, 200);
    for (std::size_t i = 0; i < h_points; ++i) {
        SplitMix64 rng(substream_seed(c.seed ^ 0x5ca1ab1eULL, i));
        const Quaternion p{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const double cc = norm_sq(p);
        const auto probes = tangent_probe_triples(p, 8, substream_seed(c.seed, 1000000 + i));
        for (Sp1Generator beta : {Sp1Generator::H, Sp1Generator::X, Sp1Generator::Y}) {
            const HorizontalityReport rep = horizontality_residual(cc, p, beta, probes);
            horizontality = std::max(horizontality, rep.max_residual);
        }
    }

    // 4. Bracket structure: [H^, X^] = -2 Y^ on one factor; cross-factor field
    //    and gradient brackets vanish.
    double same_factor_bracket = 0.0, cross_factor_bracket = 0.0, gradient_bracket = 0.0;
    const std::size_t b_points = std::min<std::size_t>(n, 20);
    for (std::size_t i = 0; i < b_points; ++i) {
        SplitMix64 rng(substream_seed(c.seed ^ 0xb4ac4e7ULL, i));
        std::vector<double> p(4 * d);
        for (double& x : p) x = rng.gaussian();
        const std::size_t ell = i % d;
        const auto VH = sp1_field(d, ell, Sp1Generator::H, Side::Left);
        const auto VX = sp1_field(d, ell, Sp1Generator::X, Side::Left);
        const auto VY = sp1_field(d, ell, Sp1Generator::Y, Side::Left);

        const std::vector<double> br = bracket_fd(VH, VX, p, 1e-5);
        const std::vector<double> y = VY(p);
        for (std::size_t t = 0; t < br.size(); ++t)
            same_factor_bracket = std::max(same_factor_bracket, std::abs(br[t] + 2.0 * y[t]));

        if (d >= 2) {
            const std::size_t ell2 = (ell + 1) % d;
            const auto WH = sp1_field(d, ell2, Sp1Generator::X, Side::Left);
            for (double v : bracket_fd(VH, WH, p, 1e-5))
                cross_factor_bracket = std::max(cross_factor_bracket, std::abs(v));
            const auto G = grad_sigma_field(d, ell);
            for (double v : bracket_fd(G, WH, p, 1e-5))
                gradient_bracket = std::max(gradient_bracket, std::abs(v));
            for (double v : bracket_fd(G, VH, p, 1e-5))
                gradient_bracket = std::max(gradient_bracket, std::abs(v));
        }
    }

    const bool ok = contraction_residual <= c.tolerance && (!fd_enabled || fd_residual <= fd_tol) &&
                    horizontality <= c.tolerance && same_factor_bracket <= fd_tol &&
                    cross_factor_bracket <= fd_tol && gradient_bracket <= fd_tol;

    std::ostringstream os;
    os << "4-plectic identities on H^" << d << "  (" << n << " samples, seed " << c.seed << ")\n";
    os << "contraction identity residual: " << contraction_residual << "  (tol " << c.tolerance
       << ")\n";
    if (fd_enabled)
        os << "dsigma finite-difference residual: " << fd_residual << "  (tol " << fd_tol << ")\n";
    else
        os << "dsigma finite-difference check skipped (d > 4)\n";
    os << "sphere horizontality residual: " << horizontality << "  (tol " << c.tolerance << ")\n";
    os << "[H,X]+2Y bracket residual: " << same_factor_bracket << "  (tol " << fd_tol << ")\n";
    os << "cross-factor bracket residual: " << cross_factor_bracket << "  (tol " << fd_tol
       << ")\n";
    os << "gradient bracket residual: " << gradient_bracket << "  (tol " << fd_tol << ")\n";
    os << "verdict: " << (ok ? "pass" : "FAIL") << "\n";

    ordered_json j;
    j["command"] = "check-4plectic";
    j["d"] = d;
    j["samples"] = n;
    j["seed"] = c.seed;
    j["contraction_residual"] = contraction_residual;
    if (fd_enabled) j["fd_residual"] = fd_residual;
    j["horizontality_residual"] = horizontality;
    j["same_factor_bracket"] = same_factor_bracket;
    j["cross_factor_bracket"] = cross_factor_bracket;
    j["gradient_bracket"] = gradient_bracket;
    j["pass"] = ok;
    emit(c, os.str(), j);
    return ok ? kExitOk : kExitVerdict;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quaternionic-toric toolkit: Delzant polytopes, kernel lattices, Sp(1)-power "
                 "actions, tri-moment sampling, and polytope cuts"};
    app.require_subcommand(1);

    Common c_verify, c_kernel, c_extend, c_action, c_moment, c_cut, c_catalog, c_check;

    auto* sub_verify = app.add_subcommand("verify", "Delzant verification of a polytope file");
    add_common(sub_verify, c_verify, true);

    auto* sub_kernel =
        app.add_subcommand("kernel", "kernel lattice of the facet-normal projection");
    add_common(sub_kernel, c_kernel, true);

    auto* sub_extend =
        app.add_subcommand("extend", "decide extendability of the kernel torus action");
    add_common(sub_extend, c_extend, true);

    auto* sub_action = app.add_subcommand("action", "print the synthesized action table");
    add_common(sub_action, c_action, true);
    bool ghat = false;
    sub_action->add_flag("--ghat", ghat, "extend by the residual generators as well");

    auto* sub_moment =
        app.add_subcommand("moment-image", "sample the level set and emit image/hull CSV files");
    add_common(sub_moment, c_moment, true);

    auto* sub_cut = app.add_subcommand("cut", "cut the polytope parallel to one of its facets");
    add_common(sub_cut, c_cut, true);
    std::uint64_t cut_facet = 0;
    std::string cut_level;
    bool cut_verify = false;
    sub_cut->add_option("--facet", cut_facet, "facet the cut runs parallel to (1-based)")
        ->required();
    sub_cut->add_option("--level", cut_level, "offset of the appended facet (rational)")
        ->required();
    sub_cut->add_flag("--verify", cut_verify, "run the tri-moment consistency check");

    auto* sub_catalog = app.add_subcommand("catalog", "list the bundled polytope files");
    add_common(sub_catalog, c_catalog, false);

    auto* sub_check =
        app.add_subcommand("check-4plectic", "verify the flat 4-plectic differential identities");
    add_common(sub_check, c_check, false);
    std::uint64_t check_d = 2;
    sub_check->add_option("--d", check_d, "number of quaternionic coordinates")
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{6}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (sub_verify->parsed()) return run_verify(c_verify);
        if (sub_kernel->parsed()) return run_kernel(c_kernel);
        if (sub_extend->parsed()) return run_extend(c_extend);
        if (sub_action->parsed()) return run_action(c_action, ghat);
        if (sub_moment->parsed()) return run_moment_image(c_moment);
        if (sub_cut->parsed()) return run_cut(c_cut, cut_facet, cut_level, cut_verify);
        if (sub_catalog->parsed()) return run_catalog(c_catalog);
        if (sub_check->parsed()) return run_check_4plectic(c_check, check_d);
    } catch (const qtoric::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
