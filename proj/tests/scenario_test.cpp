// End-to-end scenario predictions: orientation wiring, survival decay,
// reversed-geometry attenuation, and the gravity-vs-box discrimination that
// the whole exercise is about. The cross-solver oracle reruns both families
// through the finite-difference solver at 10x resolution.

#include "doctest.h"

#include <cmath>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "qbounce/csv.hpp"
#include "qbounce/eigen.hpp"
#include "qbounce/errors.hpp"
#include "qbounce/potential.hpp"
#include "qbounce/scenario.hpp"

using namespace qbounce;

namespace {

const PhysicalConstants& C = PhysicalConstants::reference();

std::string curve_bytes(const TransmissionCurve& curve) {
    std::ostringstream os;
    write_curve_csv(curve, os);
    return os.str();
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return xs;
}

double param(const TransmissionCurve& curve, const std::string& key) {
    for (const auto& [k, v] : curve.params)
        if (k == key) return v;
    FAIL("missing param " << key);
    return 0.0;
}

} // namespace

TEST_SUITE("scenario") {

TEST_CASE("orientation and family names round-trip") {
    for (Orientation o : {Orientation::Horizontal, Orientation::Vertical,
                          Orientation::ReversedHorizontal})
        CHECK(parse_orientation(orientation_name(o)) == o);
    for (ModelFamily f : {ModelFamily::Gravity, ModelFamily::BoxOnly})
        CHECK(parse_family(family_name(f)) == f);
    CHECK_THROWS_WITH_AS(parse_orientation("diagonal"),
                         "orientation must be horizontal, vertical, or reversed_horizontal; "
                         "got \"diagonal\"",
                         ValidationError);
    CHECK_THROWS_AS(parse_family("boxes"), ValidationError);
}

TEST_CASE("geometry and config validation") {
    GeometryConfig g;
    CHECK(g.excess_absorber() == doctest::Approx(0.03).epsilon(1e-12));
    g.absorber_length = 0.05; // shorter than the mirror
    CHECK_THROWS_AS(g.validate(), ValidationError);

    ScenarioConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.kappa = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg.kappa = 100.0;
    cfg.max_states = 0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg.max_states = 51;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("default kappa halves the flux at 5% overlap over the mirror") {
    CHECK(default_kappa() == doctest::Approx(138.62943611198906).epsilon(1e-14));
    CHECK(std::exp(-default_kappa() * 0.05 * 0.10) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("survival fraction") {
    BeamSpec beam;
    CHECK(survival_fraction(beam, 0.0) == 1.0);
    CHECK(survival_fraction(beam, 0.01) ==
          doctest::Approx(0.99998888895061706).epsilon(1e-14));
    CHECK(survival_fraction(beam, 900.0) == doctest::Approx(1.0 / M_E).epsilon(1e-12));
    CHECK_THROWS_AS(survival_fraction(beam, -1.0), ValidationError);
}

TEST_CASE("horizontal gravity curve: threshold, monotonicity, bookkeeping") {
    ScenarioConfig cfg;
    const auto xs = linspace(5e-6, 40e-6, 36);
    const auto curve = predict_scenario(cfg, xs);
    REQUIRE(curve.points.size() == xs.size());
    CHECK(curve.model == TransmissionModel::QuantumGravity);
    CHECK(curve.points.front().n_count < 1e-3 * curve.points.back().n_count);
    double prev = -1.0;
    for (const auto& p : curve.points) {
        CHECK(p.n_count >= prev - 1e-15);
        prev = p.n_count;
    }
    CHECK(param(curve, "survival") ==
          doctest::Approx(0.99998888895061706).epsilon(1e-14));
    CHECK(param(curve, "cavity_length_m") == 0.10);
    CHECK(param(curve, "kappa_per_m") == doctest::Approx(default_kappa()).epsilon(1e-14));
}

TEST_CASE("vertical prediction ignores the strength of gravity") {
    ScenarioConfig cfg;
    cfg.orientation = Orientation::Vertical;
    const auto xs = linspace(2e-6, 40e-6, 50);
    PhysicalConstants doubled = C;
    doubled.g_accel *= 2.0;
    const auto a = predict_scenario(cfg, xs, C);
    const auto b = predict_scenario(cfg, xs, doubled);
    CHECK(curve_bytes(a) == curve_bytes(b)); // byte-identical CSV
    CHECK(a.model == TransmissionModel::QuantumBox);
}

TEST_CASE("gravity curve has a hard threshold, vertical curve decays smoothly") {
    const auto xs = linspace(2e-6, 40e-6, 96);
    ScenarioConfig grav;
    ScenarioConfig vert;
    vert.orientation = Orientation::Vertical;
    const auto g = predict_scenario(grav, xs);
    const auto v = predict_scenario(vert, xs);
    const auto ratio = [&](const TransmissionCurve& c, std::size_t i) {
        return c.points[i].n_count / c.points.back().n_count;
    };
    // index 7 is 4.8 um, index 20 is 10 um (96 points over [2, 40] um)
    const std::size_t i5 = 7, i10 = 20, i30 = 70;
    CHECK(xs[i5] == doctest::Approx(4.8e-6).epsilon(1e-2));
    CHECK(xs[i10] == doctest::Approx(10.0e-6).epsilon(1e-2));
    // below the lowest turning point the absorber kills the gravity states
    // outright, while the squeezed box levels only lose Boltzmann weight:
    // the normalized curves differ by orders of magnitude there
    CHECK(ratio(g, i5) < 1e-4);
    CHECK(ratio(v, i5) > 1e-3);
    CHECK(ratio(v, i10) > 10.0 * ratio(g, i10));
    // past the threshold region the two shapes come back together
    CHECK(ratio(v, i30) / ratio(g, i30) == doctest::Approx(1.0).epsilon(0.5));
}

TEST_CASE("reversed geometry with no overhang is exactly the horizontal curve") {
    ScenarioConfig plain;
    plain.geometry.absorber_length = plain.geometry.mirror_length;
    ScenarioConfig reversed = plain;
    reversed.orientation = Orientation::ReversedHorizontal;
    const auto xs = linspace(5e-6, 40e-6, 20);
    CHECK(curve_bytes(predict_scenario(plain, xs)) ==
          curve_bytes(predict_scenario(reversed, xs)));
}

TEST_CASE("the absorber overhang only ever costs flux") {
    ScenarioConfig fwd;
    ScenarioConfig rev;
    rev.orientation = Orientation::ReversedHorizontal;
    const auto xs = linspace(5e-6, 40e-6, 20);
    const auto a = predict_scenario(fwd, xs);
    const auto b = predict_scenario(rev, xs);
    for (std::size_t i = 0; i < xs.size(); ++i)
        CHECK(b.points[i].n_count <= a.points[i].n_count);
    CHECK(param(b, "excess_absorber_m") == doctest::Approx(0.03).epsilon(1e-12));
    CHECK(param(b, "excess_attenuation") ==
          doctest::Approx(std::exp(-default_kappa() * 0.03)).epsilon(1e-12));
    // kappa_free overrides kappa when set
    rev.kappa_free = 10.0;
    const auto c2 = predict_scenario(rev, xs);
    CHECK(param(c2, "kappa_free_per_m") == 10.0);
    CHECK(param(c2, "excess_attenuation") ==
          doctest::Approx(std::exp(-10.0 * 0.03)).epsilon(1e-12));
}

TEST_CASE("gravity and box families disagree at 30 um, both confirmed numerically") {
    const std::vector<double> xs = {30e-6, 40e-6};
    ScenarioConfig grav;
    ScenarioConfig box;
    box.model_family = ModelFamily::BoxOnly;
    const double n_grav = predict_scenario(grav, xs).points[0].n_count;
    const double n_box = predict_scenario(box, xs).points[0].n_count;
    // the families genuinely disagree here
    CHECK(std::fabs(n_grav - n_box) > 0.1 * std::max(n_grav, n_box));

    const double kT = thermal_energy(C, 20e-9).joules;
    const double kappa = default_kappa();
    const double survive = survival_fraction(grav.beam, 0.01);

    // gravity family redone with the finite-difference solver at 10x points
    {
        PotentialSpec spec;
        spec.kind = PotentialKind::GravityMirror;
        const Grid grid = sample(spec, C, 120000, grav.max_states);
        const auto states = solve_numeric(grid, C, grav.max_states, Boundary::DirichletBoth);
        REQUIRE(static_cast<int>(states.size()) == grav.max_states);
        std::vector<Energy> es;
        for (const auto& s : states) es.push_back(s.energy);
        const auto w = boltzmann_weights(es, kT, grav.max_states);
        double n = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i)
            n += w[i] * std::exp(-kappa * absorber_overlap(states[i], 30e-6) * 0.10);
        CHECK(n_grav == doctest::Approx(n * survive).epsilon(1e-3));
    }

    // box family likewise: retention and partition frozen at 40 um
    {
        PotentialSpec ref_spec;
        ref_spec.kind = PotentialKind::InfiniteBox;
        ref_spec.slit_width = 40e-6;
        const Grid ref_grid = sample(ref_spec, C, 80000, 12);
        const auto ref_states = solve_numeric(ref_grid, C, 12, Boundary::DirichletBoth);
        int keep = 0;
        double z_ref = 0.0;
        for (const auto& s : ref_states) {
            if (keep >= box.max_states) break;
            if (s.energy.joules > 10.0 * kT && keep > 0) break;
            z_ref += std::exp(-s.energy.joules / kT);
            ++keep;
        }
        PotentialSpec spec;
        spec.kind = PotentialKind::InfiniteBox;
        spec.slit_width = 30e-6;
        const Grid grid = sample(spec, C, 80000, keep);
        const auto states = solve_numeric(grid, C, keep, Boundary::DirichletBoth);
        double n = 0.0;
        for (int i = 0; i < keep; ++i)
            n += std::exp(-states[static_cast<std::size_t>(i)].energy.joules / kT) *
                 std::exp(-kappa * absorber_overlap(states[static_cast<std::size_t>(i)], 30e-6) *
                          0.10);
        CHECK(n_box == doctest::Approx(n / z_ref * survive).epsilon(1e-3));
    }
}

TEST_CASE("identical configs give identical bytes") {
    ScenarioConfig cfg;
    const auto xs = linspace(1e-6, 40e-6, 40);
    CHECK(curve_bytes(predict_scenario(cfg, xs)) == curve_bytes(predict_scenario(cfg, xs)));
}

TEST_CASE("failures downstream carry scenario context") {
    ScenarioConfig cfg;
    cfg.beam.transverse_temperature = 1e-30; // freezes out every state
    try {
        predict_scenario(cfg, {10e-6, 20e-6});
        FAIL("expected a NumericError");
    } catch (const NumericError& e) {
        CHECK(std::string(e.what()).rfind("predict_scenario: ", 0) == 0);
    }
    ScenarioConfig bad;
    bad.max_states = 0;
    CHECK_THROWS_AS(predict_scenario(bad, {10e-6}), ValidationError);
    CHECK_THROWS_AS(predict_scenario(ScenarioConfig{}, {}), ValidationError);
}

} // TEST_SUITE("scenario")
