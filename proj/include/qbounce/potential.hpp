#ifndef QBOUNCE_POTENTIAL_HPP
#define QBOUNCE_POTENTIAL_HPP

#include <iosfwd>
#include <optional>
#include <vector>

#include "qbounce/constants.hpp"

namespace qbounce {

enum class PotentialKind { GravityMirror, InfiniteBox, GravityBox, GravityAbsorber };

// Declarative description of the confining potential along the vertical
// coordinate z.  Hard walls are boundary conditions, never large finite
// values, so they do not appear in the sampled values.
struct PotentialSpec {
    PotentialKind kind = PotentialKind::GravityMirror;
    double slit_width = 0.0;      // m; required for all kinds except GravityMirror
    double absorber_height = 0.0; // J; GravityAbsorber only, finite step above slit_width
    bool gravity_on = true;      // false reproduces the pure box from GravityBox

    // Throws ValidationError naming the offending field.
    void validate() const;
};

// Uniform sampling of V(z).  Dirichlet boundaries are implied at both ends.
struct Grid {
    double z_min = 0.0;
    double z_max = 0.0;
    int n_points = 0;
    std::vector<double> values; // V(z_i) in J

    // Top of the finite absorber step (GravityAbsorber grids only); states
    // above it are not genuinely bound in the slit.
    std::optional<double> barrier_top;

    double spacing() const { return (z_max - z_min) / (n_points - 1); }
    double z_at(int i) const { return z_min + i * spacing(); }
};

// Samples the potential onto a uniform grid sized for the lowest
// n_states_hint states.  For GravityMirror the domain is [0, z_cut] with
// z_cut = 4x the classical turning point of the highest requested state;
// for GravityAbsorber the domain extends past the step until bound states
// have decayed to negligible amplitude.
Grid sample(const PotentialSpec& spec, const PhysicalConstants& c, int n_points,
            int n_states_hint);

// Two-column CSV: z_meters,V_joules
void write_grid_csv(const Grid& grid, std::ostream& os);

} // namespace qbounce

#endif
