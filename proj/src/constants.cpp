#include "qbounce/constants.hpp"

#include <cmath>
#include <sstream>

#include "qbounce/errors.hpp"

namespace qbounce {

namespace {
constexpr double kElementaryChargeJ = 1.602176634e-19; // J per eV (exact SI)

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw ValidationError(std::string(what) + " must be finite");
}
} // namespace

Energy Energy::from_ev(double ev) { return Energy{ev * kElementaryChargeJ}; }
Energy Energy::from_pev(double pev) { return from_ev(pev * 1e-12); }

double Energy::ev() const { return joules / kElementaryChargeJ; }
double Energy::pev() const { return ev() * 1e12; }

const PhysicalConstants& PhysicalConstants::reference() {
    static const PhysicalConstants c{
        /*neutron_mass=*/1.67492749804e-27,
        /*g_accel=*/9.80665,
        /*hbar=*/1.054571817e-34,
        /*planck_h=*/2.0 * M_PI * 1.054571817e-34,
        /*light_speed=*/2.99792458e8,
        /*boltzmann=*/1.380649e-23,
        /*ev_per_joule=*/1.0 / kElementaryChargeJ,
    };
    return c;
}

std::string PhysicalConstants::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\n"
       << "  \"neutron_mass_kg\": " << neutron_mass << ",\n"
       << "  \"g_accel_m_s2\": " << g_accel << ",\n"
       << "  \"hbar_J_s\": " << hbar << ",\n"
       << "  \"planck_h_J_s\": " << planck_h << ",\n"
       << "  \"light_speed_m_s\": " << light_speed << ",\n"
       << "  \"boltzmann_J_K\": " << boltzmann << ",\n"
       << "  \"ev_per_joule\": " << ev_per_joule << "\n"
       << "}\n";
    return os.str();
}

double de_broglie_wavelength(const PhysicalConstants& c, double velocity) {
    require_finite(velocity, "velocity");
    if (velocity <= 0.0) throw ValidationError("de_broglie_wavelength: velocity must be > 0");
    return c.planck_h / (c.neutron_mass * velocity);
}

double classical_height(const PhysicalConstants& c, Energy e) {
    require_finite(e.joules, "energy");
    if (e.joules < 0.0) throw ValidationError("classical_height: energy must be >= 0");
    return e.joules / (c.neutron_mass * c.g_accel);
}

double graviton_wavelength(const PhysicalConstants& c, Energy delta_e) {
    require_finite(delta_e.joules, "delta_e");
    if (delta_e.joules <= 0.0) throw ValidationError("graviton_wavelength: transition energy must be > 0");
    return c.planck_h * c.light_speed / delta_e.joules;
}

Energy thermal_energy(const PhysicalConstants& c, double temperature) {
    require_finite(temperature, "temperature");
    if (temperature < 0.0) throw ValidationError("thermal_energy: temperature must be >= 0");
    return Energy{c.boltzmann * temperature};
}

} // namespace qbounce
