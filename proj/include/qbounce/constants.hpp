#ifndef QBOUNCE_CONSTANTS_HPP
#define QBOUNCE_CONSTANTS_HPP

#include <string>

namespace qbounce {

// Energy carried around in joules internally; peV/eV only at I/O boundaries.
struct Energy {
    double joules = 0.0;

    static Energy from_joules(double j) { return Energy{j}; }
    static Energy from_ev(double ev);
    static Energy from_pev(double pev);

    double ev() const;
    double pev() const;
};

// Reference values (CODATA-style), fixed at construction.
struct PhysicalConstants {
    double neutron_mass;  // kg
    double g_accel;       // m/s^2
    double hbar;          // J s
    double planck_h;      // J s, = 2*pi*hbar
    double light_speed;   // m/s
    double boltzmann;     // J/K
    double ev_per_joule;  // eV/J

    static const PhysicalConstants& reference();

    std::string to_json() const;
};

// lambda = h / (m v)
double de_broglie_wavelength(const PhysicalConstants& c, double velocity);

// z = E / (m g), the classical turning height of a bouncing neutron.
double classical_height(const PhysicalConstants& c, Energy e);

// lambda_grav = h c / dE for a transition of energy dE.
double graviton_wavelength(const PhysicalConstants& c, Energy delta_e);

// E = k_B T
Energy thermal_energy(const PhysicalConstants& c, double temperature);

} // namespace qbounce

#endif
