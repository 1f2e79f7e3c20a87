// Potential construction: grid domains, sampled values, validation.

#include "doctest.h"

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "qbounce/errors.hpp"
#include "qbounce/potential.hpp"

using namespace qbounce;

namespace {
const PhysicalConstants& C = PhysicalConstants::reference();
}

TEST_SUITE("potential") {

TEST_CASE("box grid is flat zero across the slit") {
    PotentialSpec spec;
    spec.kind = PotentialKind::InfiniteBox;
    spec.slit_width = 15e-6;
    const Grid g = sample(spec, C, 64, 2);
    CHECK(g.z_min == 0.0);
    CHECK(g.z_max == 15e-6);
    CHECK(g.n_points == 64);
    CHECK(g.spacing() == doctest::Approx(15e-6 / 63).epsilon(1e-15));
    CHECK(!g.barrier_top.has_value());
    for (double v : g.values) CHECK(v == 0.0);
}

TEST_CASE("gravity-mirror grid is the linear ramp m g z") {
    PotentialSpec spec;
    spec.kind = PotentialKind::GravityMirror;
    const Grid g = sample(spec, C, 128, 3);
    // domain reaches 4x the turning point of the highest requested state
    const double z3 = oracle::kTurningPointUm[2] * 1e-6;
    CHECK(g.z_max == doctest::Approx(4.0 * z3).epsilon(1e-9));
    const double mg = C.neutron_mass * C.g_accel;
    for (int i = 0; i < g.n_points; ++i)
        CHECK(g.values[i] == doctest::Approx(mg * g.z_at(i)).epsilon(1e-14));
}

TEST_CASE("gravity-box keeps the ramp but clips the domain at the slit") {
    PotentialSpec spec;
    spec.kind = PotentialKind::GravityBox;
    spec.slit_width = 25e-6;
    const Grid g = sample(spec, C, 64, 4);
    CHECK(g.z_max == 25e-6);
    const double mg = C.neutron_mass * C.g_accel;
    CHECK(g.values.back() == doctest::Approx(mg * 25e-6).epsilon(1e-14));
    // dropping gravity reproduces the flat box on the same domain
    spec.gravity_on = false;
    const Grid flat = sample(spec, C, 64, 4);
    for (double v : flat.values) CHECK(v == 0.0);
}

TEST_CASE("absorber grid steps up past the slit and records the barrier top") {
    PotentialSpec spec;
    spec.kind = PotentialKind::GravityAbsorber;
    spec.slit_width = 20e-6;
    spec.absorber_height = Energy::from_pev(50.0).joules;
    const Grid g = sample(spec, C, 512, 4);
    REQUIRE(g.barrier_top.has_value());
    const double mg = C.neutron_mass * C.g_accel;
    CHECK(*g.barrier_top ==
          doctest::Approx(mg * spec.slit_width + spec.absorber_height).epsilon(1e-14));
    CHECK(g.z_max > spec.slit_width); // room for the evanescent tail
    bool seen_step = false;
    for (int i = 0; i < g.n_points; ++i) {
        const double z = g.z_at(i);
        const double expect = mg * z + (z >= spec.slit_width ? spec.absorber_height : 0.0);
        CHECK(g.values[i] == doctest::Approx(expect).epsilon(1e-14));
        if (z >= spec.slit_width) seen_step = true;
    }
    CHECK(seen_step);
}

TEST_CASE("specs reject out-of-range fields by name") {
    PotentialSpec spec;
    spec.kind = PotentialKind::InfiniteBox;
    spec.slit_width = 0.0;
    CHECK_THROWS_WITH_AS(spec.validate(),
                         "PotentialSpec.slit_width: must be > 0 and finite", ValidationError);
    spec.slit_width = 15e-6;
    CHECK_NOTHROW(spec.validate());

    spec.kind = PotentialKind::GravityAbsorber;
    spec.absorber_height = -1.0;
    CHECK_THROWS_WITH_AS(spec.validate(),
                         "PotentialSpec.absorber_height: must be > 0 and finite",
                         ValidationError);

    PotentialSpec unbound;
    unbound.kind = PotentialKind::GravityMirror;
    unbound.gravity_on = false;
    CHECK_THROWS_AS(unbound.validate(), ValidationError);
}

TEST_CASE("sampling preconditions") {
    PotentialSpec spec;
    spec.kind = PotentialKind::InfiniteBox;
    spec.slit_width = 15e-6;
    CHECK_THROWS_AS(sample(spec, C, 15, 1), ValidationError);
    CHECK_THROWS_AS(sample(spec, C, 64, 0), ValidationError);
    CHECK_NOTHROW(sample(spec, C, 16, 1));
}

TEST_CASE("grid CSV header and layout") {
    PotentialSpec spec;
    spec.kind = PotentialKind::InfiniteBox;
    spec.slit_width = 2e-6;
    const Grid g = sample(spec, C, 16, 1);
    std::ostringstream os;
    write_grid_csv(g, os);
    const std::string text = os.str();
    CHECK(text.rfind("z_meters,V_joules\n0,0\n", 0) == 0);
    // one row per grid point plus the header
    int lines = 0;
    for (char ch : text)
        if (ch == '\n') ++lines;
    CHECK(lines == 17);
}

} // TEST_SUITE("potential")
