#ifndef QBOUNCE_TRANSMISSION_HPP
#define QBOUNCE_TRANSMISSION_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qbounce/constants.hpp"
#include "qbounce/eigen.hpp"

namespace qbounce {

enum class TransmissionModel { QuantumGravity, QuantumBox, ClassicalTranslated, ClassicalPure };

// Stable snake_case tag used in CSV sidecars and fit reports.
const char* model_name(TransmissionModel m);

struct CurvePoint {
    double delta_h = 0.0; // m (doubles as the cavity coordinate for leakage curves)
    double n_count = 0.0; // dimensionless, >= 0
};

// Predicted count rate versus slit width for one model, carrying the
// parameters that produced it (insertion order preserved so serialization
// is reproducible).
struct TransmissionCurve {
    TransmissionModel model = TransmissionModel::QuantumGravity;
    std::vector<CurvePoint> points;
    std::vector<std::pair<std::string, double>> params;

    // Throws ValidationError unless delta_h strictly increases and every
    // count is finite and >= 0.
    void validate() const;
};

// Single-mode cavity leakage N(x) = n0 exp(-k x).
struct LeakageModel {
    double n0 = 1.0;      // counts at x = 0
    double k = 0.0;       // 1/m
    double delta_h = 0.0; // m, slit width this k belongs to (bookkeeping only)

    void validate() const; // n0 > 0, k >= 0
};

// Fraction of |psi|^2 at z >= delta_h by trapezoid rule, the boundary cell
// split at delta_h with linear interpolation of psi^2. Clamped to [0, 1].
// delta_h outside the sampled span throws ValidationError.
double absorber_overlap(const EigenSolution& sol, double delta_h);

// k = kappa * absorber_overlap(sol, delta_h). kappa = 0 is allowed (the
// no-absorber limit several callers rely on); negative kappa throws.
double leakage_rate(const EigenSolution& sol, double delta_h, double kappa);

// N(x) = n0 exp(-k x) at each cavity coordinate x >= 0.
std::vector<CurvePoint> leakage_curve(const LeakageModel& model,
                                      const std::vector<double>& x_values);

// Bound-state source: slit width -> normalized states, lowest first.
using SpectrumFn = std::function<std::vector<EigenSolution>(double)>;

// Boltzmann factors exp(-E/kT) over the states with E <= 10 kT (the ground
// state is always kept), capped at max_states, renormalized to sum 1.
// Energies must be sorted ascending.
std::vector<double> boltzmann_weights(const std::vector<Energy>& energies, double kT,
                                      int max_states = 20);

// N(dh) = sum_n weights_n exp(-kappa * overlap_n(dh) * cavity_length) with
// fixed mode weights (normalized, one per state returned by spectrum_for).
// The result must come out nondecreasing in dh; anything else means the
// spectra fed in were inconsistent and raises NumericError.
TransmissionCurve quantum_transmission(const SpectrumFn& spectrum_for,
                                       const std::vector<double>& weights, double cavity_length,
                                       double kappa, const std::vector<double>& delta_h_values,
                                       TransmissionModel model = TransmissionModel::QuantumGravity);

// Thermal-beam weighting for spectra whose energies move with the slit
// width: each state enters with exp(-E_n(dh)/kT) against a partition sum
// frozen at reference_width, so a spectrum whose levels climb as the slit
// narrows filters itself out even with zero absorber overlap. Pass the
// largest swept width as reference_width to keep counts in [0, 1]. With a
// dh-independent spectrum this reduces exactly to quantum_transmission with
// boltzmann_weights.
struct BeamFilter {
    double kT = 0.0;              // J
    double reference_width = 0.0; // m
    int max_states = 20;
};

TransmissionCurve beam_transmission(const SpectrumFn& spectrum_for, const BeamFilter& beam,
                                    double cavity_length, double kappa,
                                    const std::vector<double>& delta_h_values,
                                    TransmissionModel model);

// N(dh) = a_scale * max(0, dh - h1)^exponent. Tagged ClassicalPure when
// h1 == 0, ClassicalTranslated otherwise.
TransmissionCurve classical_curve(double a_scale, double h1, double exponent,
                                  const std::vector<double>& delta_h_values);

} // namespace qbounce

#endif
