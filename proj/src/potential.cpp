#include "qbounce/potential.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "qbounce/airy.hpp"
#include "qbounce/errors.hpp"

namespace qbounce {

namespace {

bool needs_slit(PotentialKind k) { return k != PotentialKind::GravityMirror; }

// epsilon0 = (hbar^2 m g^2 / 2)^(1/3), the gravity problem's energy scale.
double gravity_energy_scale(const PhysicalConstants& c) {
    return std::cbrt(c.hbar * c.hbar * c.neutron_mass * c.g_accel * c.g_accel / 2.0);
}

// z0 = (hbar^2 / (2 m^2 g))^(1/3)
double gravity_length_scale(const PhysicalConstants& c) {
    return std::cbrt(c.hbar * c.hbar / (2.0 * c.neutron_mass * c.neutron_mass * c.g_accel));
}

} // namespace

void PotentialSpec::validate() const {
    if (needs_slit(kind)) {
        if (!(slit_width > 0.0) || !std::isfinite(slit_width))
            throw ValidationError("PotentialSpec.slit_width: must be > 0 and finite");
    }
    if (kind == PotentialKind::GravityAbsorber) {
        if (!(absorber_height > 0.0) || !std::isfinite(absorber_height))
            throw ValidationError("PotentialSpec.absorber_height: must be > 0 and finite");
    }
    if (kind == PotentialKind::GravityMirror && !gravity_on)
        throw ValidationError("PotentialSpec.gravity_on: GravityMirror without gravity is unbound");
}

Grid sample(const PotentialSpec& spec, const PhysicalConstants& c, int n_points,
            int n_states_hint) {
    spec.validate();
    if (n_points < 16) throw ValidationError("sample: n_points must be >= 16");
    if (n_states_hint < 1) throw ValidationError("sample: n_states_hint must be >= 1");

    const double mg = c.neutron_mass * c.g_accel;
    const double eps0 = gravity_energy_scale(c);
    const int hint = std::min(n_states_hint, 100);

    Grid grid;
    grid.z_min = 0.0;
    grid.n_points = n_points;

    switch (spec.kind) {
    case PotentialKind::GravityMirror: {
        // Turning point of the highest requested state: z_n = z0 * alpha_n.
        const double z_turn = gravity_length_scale(c) * airy_zero(hint);
        grid.z_max = 4.0 * z_turn;
        break;
    }
    case PotentialKind::InfiniteBox:
    case PotentialKind::GravityBox:
        grid.z_max = spec.slit_width;
        break;
    case PotentialKind::GravityAbsorber: {
        const double a = spec.slit_width;
        // Highest energy that could be requested: the larger of the gravity
        // and box estimates for state `hint`, plus the shift from sitting in
        // the gravity ramp.
        const double e_box = c.hbar * c.hbar * M_PI * M_PI * hint * hint /
                             (2.0 * c.neutron_mass * a * a);
        const double e_grav = spec.gravity_on ? eps0 * airy_zero(hint) + mg * a : 0.0;
        const double e_max = std::max(e_box, e_grav);
        // Penetration depth under the step; floor keeps it finite when the
        // requested states reach the barrier top.
        const double v_gap = std::max(spec.absorber_height - e_max, 0.05 * spec.absorber_height);
        const double depth = c.hbar / std::sqrt(2.0 * c.neutron_mass * v_gap);
        double z_max = a + std::max(20.0 * depth, 0.25 * a);
        if (spec.gravity_on) {
            // Extend until V - E_max exceeds 20x the ground-state scale.
            const double z_rule = (e_max + 20.0 * eps0 - spec.absorber_height) / mg;
            z_max = std::max(z_max, z_rule);
        }
        grid.z_max = z_max;
        grid.barrier_top = mg * a * (spec.gravity_on ? 1.0 : 0.0) + spec.absorber_height;
        break;
    }
    }

    grid.values.resize(n_points);
    const double slope = (spec.gravity_on && spec.kind != PotentialKind::InfiniteBox) ? mg : 0.0;
    for (int i = 0; i < n_points; ++i) {
        const double z = grid.z_at(i);
        double v = slope * z;
        if (spec.kind == PotentialKind::GravityAbsorber && z >= spec.slit_width)
            v += spec.absorber_height;
        grid.values[i] = v;
    }
    return grid;
}

void write_grid_csv(const Grid& grid, std::ostream& os) {
    os << "z_meters,V_joules\n";
    char line[80];
    for (int i = 0; i < grid.n_points; ++i) {
        std::snprintf(line, sizeof line, "%.12g,%.12g\n", grid.z_at(i), grid.values[i]);
        os << line;
    }
}

} // namespace qbounce
