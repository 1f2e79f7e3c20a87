#ifndef QBOUNCE_EIGEN_HPP
#define QBOUNCE_EIGEN_HPP

#include <vector>

#include "qbounce/constants.hpp"
#include "qbounce/potential.hpp"

namespace qbounce {

enum class SolveMethod { AnalyticAiry, AnalyticBox, NumericFD };
enum class Boundary { DirichletBoth, DirichletLeftDecayRight };

// One normalized bound state sampled on a uniform grid.
// Invariants: trapezoid integral of psi^2 is 1; psi has exactly n-1 interior
// sign changes; psi is positive on its first interior lobe.
struct EigenSolution {
    int n = 0; // 1-based quantum number
    Energy energy;
    std::vector<double> z;   // m
    std::vector<double> psi; // m^(-1/2)
    SolveMethod method = SolveMethod::NumericFD;

    double grid_spacing() const { return (z.back() - z.front()) / (z.size() - 1); }
};

// Scale factors of the gravity+mirror spectrum:
//   E_n = epsilon0 * alpha_n,  psi_n(z) ~ Ai(z/z0 - alpha_n)
// with epsilon0 = (hbar^2 m g^2 / 2)^(1/3) and z0 = (hbar^2 / (2 m^2 g))^(1/3),
// so epsilon0 = m g z0.
struct AirySpectrumScale {
    Energy epsilon0;
    double z0 = 0.0;
};

AirySpectrumScale airy_spectrum_scale(const PhysicalConstants& c);

// Closed-form gravity+mirror spectrum, n = 1..n_states (n_states <= 50).
// n_points = 0 picks a grid fine enough for the quadrature invariants;
// min_z_cut extends the sampled domain when callers need it (e.g. overlap
// integrals above the highest turning point).
std::vector<EigenSolution> gravity_mirror_spectrum(const PhysicalConstants& c, int n_states,
                                                   int n_points = 0, double min_z_cut = 0.0);

// Closed-form infinite-box spectrum, E_n = hbar^2 pi^2 n^2 / (2 m a^2),
// psi_n = sqrt(2/a) sin(n pi z / a).  n_states <= 1000.
std::vector<EigenSolution> box_spectrum(const PhysicalConstants& c, double width, int n_states,
                                        int n_points = 0);

// General grid solver: lowest n_states eigenpairs of the second-order
// central-difference discretization of -(hbar^2/2m) psi'' + V psi = E psi.
// Eigenvalues by bisection with Sturm-sequence counting, eigenvectors by
// inverse iteration.  Under DirichletLeftDecayRight with a finite absorber
// step, only states below the barrier top are returned; a shorter list than
// requested flags the shortfall.
std::vector<EigenSolution> solve_numeric(const Grid& grid, const PhysicalConstants& c,
                                         int n_states, Boundary boundary);

// Trapezoid quadrature of f and g sampled on the solution's grid.
double inner_product(const EigenSolution& a, const EigenSolution& b);

// Number of interior sign changes (noise-filtered).
int count_nodes(const EigenSolution& s);

} // namespace qbounce

#endif
