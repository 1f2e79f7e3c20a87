#include "qbounce/transmission.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "qbounce/errors.hpp"

namespace qbounce {

namespace {

std::string fmt_g(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

void require_increasing(const std::vector<double>& xs, const char* op) {
    if (xs.empty()) throw ValidationError(std::string(op) + ": empty sweep");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || (i > 0 && xs[i] <= xs[i - 1]))
            throw ValidationError(std::string(op) +
                                  ": slit widths must be finite and strictly increasing");
    }
}

void require_nondecreasing(const TransmissionCurve& curve, const char* op) {
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        if (curve.points[i].n_count < curve.points[i - 1].n_count - 1e-12)
            throw NumericError(std::string(op) + ": curve decreases at delta_h = " +
                               fmt_g(curve.points[i].delta_h) + " m");
    }
}

std::vector<EigenSolution> spectrum_at(const SpectrumFn& spectrum_for, double dh,
                                       const char* op) {
    try {
        return spectrum_for(dh);
    } catch (const ValidationError& e) {
        throw ValidationError(std::string(op) + " at delta_h = " + fmt_g(dh) +
                              " m: " + e.what());
    } catch (const NumericError& e) {
        throw NumericError(std::string(op) + " at delta_h = " + fmt_g(dh) + " m: " + e.what());
    }
}

} // namespace

const char* model_name(TransmissionModel m) {
    switch (m) {
    case TransmissionModel::QuantumGravity: return "quantum_gravity";
    case TransmissionModel::QuantumBox: return "quantum_box";
    case TransmissionModel::ClassicalTranslated: return "classical_translated";
    case TransmissionModel::ClassicalPure: return "classical_pure";
    }
    return "unknown";
}

void TransmissionCurve::validate() const {
    if (points.empty()) throw ValidationError("TransmissionCurve: no points");
    double prev = -std::numeric_limits<double>::infinity();
    for (const CurvePoint& p : points) {
        if (!std::isfinite(p.delta_h) || p.delta_h <= prev)
            throw ValidationError("TransmissionCurve: delta_h must be strictly increasing");
        if (!std::isfinite(p.n_count) || p.n_count < 0.0)
            throw ValidationError("TransmissionCurve: counts must be finite and >= 0");
        prev = p.delta_h;
    }
}

void LeakageModel::validate() const {
    if (!(n0 > 0.0) || !std::isfinite(n0))
        throw ValidationError("LeakageModel: n0 must be > 0");
    if (!(k >= 0.0) || !std::isfinite(k))
        throw ValidationError("LeakageModel: k must be >= 0");
    if (!std::isfinite(delta_h)) throw ValidationError("LeakageModel: delta_h must be finite");
}

double absorber_overlap(const EigenSolution& sol, double delta_h) {
    const std::size_t npts = sol.z.size();
    if (npts < 2 || sol.psi.size() != npts)
        throw ValidationError("absorber_overlap: malformed solution");
    const double z_lo = sol.z.front(), z_hi = sol.z.back();
    const double slack = 1e-12 * (z_hi - z_lo);
    if (!(delta_h >= z_lo - slack) || !(delta_h <= z_hi + slack))
        throw ValidationError("absorber_overlap: delta_h = " + fmt_g(delta_h) +
                              " m outside the sampled span [" + fmt_g(z_lo) + ", " +
                              fmt_g(z_hi) + "] m");
    delta_h = std::clamp(delta_h, z_lo, z_hi);

    const double h = sol.grid_spacing();
    // first grid index at or above delta_h
    std::size_t j = static_cast<std::size_t>(std::ceil((delta_h - z_lo) / h - 1e-9));
    if (j > npts - 1) j = npts - 1;

    auto sq = [](double v) { return v * v; };
    double tail = 0.0;
    if (j + 1 < npts) {
        tail = 0.5 * (sq(sol.psi[j]) + sq(sol.psi[npts - 1]));
        for (std::size_t i = j + 1; i + 1 < npts; ++i) tail += sq(sol.psi[i]);
        tail *= h;
    }
    if (j > 0) {
        // partial cell [delta_h, z_j], psi^2 interpolated linearly
        const double zj = z_lo + static_cast<double>(j) * h;
        const double w = zj - delta_h;
        if (w > 0.0) {
            const double f = (delta_h - (zj - h)) / h;
            const double p_cut = sq(sol.psi[j - 1]) * (1.0 - f) + sq(sol.psi[j]) * f;
            tail += 0.5 * w * (p_cut + sq(sol.psi[j]));
        }
    }
    return std::clamp(tail, 0.0, 1.0);
}

double leakage_rate(const EigenSolution& sol, double delta_h, double kappa) {
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
        throw ValidationError("leakage_rate: kappa must be >= 0");
    return kappa * absorber_overlap(sol, delta_h);
}

std::vector<CurvePoint> leakage_curve(const LeakageModel& model,
                                      const std::vector<double>& x_values) {
    model.validate();
    std::vector<CurvePoint> out;
    out.reserve(x_values.size());
    for (double x : x_values) {
        if (!(x >= 0.0) || !std::isfinite(x))
            throw ValidationError("leakage_curve: x must be >= 0, got " + fmt_g(x));
        out.push_back({x, model.n0 * std::exp(-model.k * x)});
    }
    return out;
}

std::vector<double> boltzmann_weights(const std::vector<Energy>& energies, double kT,
                                      int max_states) {
    if (!(kT > 0.0) || !std::isfinite(kT))
        throw ValidationError("boltzmann_weights: kT must be > 0");
    if (max_states < 1) throw ValidationError("boltzmann_weights: max_states must be >= 1");
    if (energies.empty()) throw ValidationError("boltzmann_weights: no states");

    std::vector<double> w;
    double prev = -std::numeric_limits<double>::infinity();
    for (const Energy& e : energies) {
        if (e.joules < prev)
            throw ValidationError("boltzmann_weights: energies must be sorted ascending");
        prev = e.joules;
        if (static_cast<int>(w.size()) >= max_states) break;
        if (e.joules > 10.0 * kT && !w.empty()) break;
        w.push_back(std::exp(-e.joules / kT));
    }
    double sum = 0.0;
    for (double x : w) sum += x;
    if (!(sum > 0.0)) throw NumericError("boltzmann_weights: all factors underflowed");
    for (double& x : w) x /= sum;
    return w;
}

TransmissionCurve quantum_transmission(const SpectrumFn& spectrum_for,
                                       const std::vector<double>& weights, double cavity_length,
                                       double kappa, const std::vector<double>& delta_h_values,
                                       TransmissionModel model) {
    if (!(cavity_length > 0.0) || !std::isfinite(cavity_length))
        throw ValidationError("quantum_transmission: cavity_length must be > 0");
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
        throw ValidationError("quantum_transmission: kappa must be >= 0");
    if (weights.empty()) throw ValidationError("quantum_transmission: empty weights");
    double wsum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw ValidationError("quantum_transmission: weights must be >= 0");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-9)
        throw ValidationError("quantum_transmission: weights must sum to 1, got " + fmt_g(wsum));
    require_increasing(delta_h_values, "quantum_transmission");

    TransmissionCurve curve;
    curve.model = model;
    curve.params = {{"cavity_length_m", cavity_length},
                    {"kappa_per_m", kappa},
                    {"n_states", static_cast<double>(weights.size())}};
    for (double dh : delta_h_values) {
        const std::vector<EigenSolution> states =
            spectrum_at(spectrum_for, dh, "quantum_transmission");
        if (states.size() != weights.size())
            throw ValidationError("quantum_transmission: spectrum at delta_h = " + fmt_g(dh) +
                                  " m has " + std::to_string(states.size()) + " states for " +
                                  std::to_string(weights.size()) + " weights");
        double n = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i)
            n += weights[i] * std::exp(-leakage_rate(states[i], dh, kappa) * cavity_length);
        curve.points.push_back({dh, n});
    }
    require_nondecreasing(curve, "quantum_transmission");
    curve.validate();
    return curve;
}

TransmissionCurve beam_transmission(const SpectrumFn& spectrum_for, const BeamFilter& beam,
                                    double cavity_length, double kappa,
                                    const std::vector<double>& delta_h_values,
                                    TransmissionModel model) {
    if (!(beam.kT > 0.0) || !std::isfinite(beam.kT))
        throw ValidationError("beam_transmission: kT must be > 0");
    if (!(beam.reference_width > 0.0) || !std::isfinite(beam.reference_width))
        throw ValidationError("beam_transmission: reference_width must be > 0");
    if (beam.max_states < 1) throw ValidationError("beam_transmission: max_states must be >= 1");
    if (!(cavity_length > 0.0) || !std::isfinite(cavity_length))
        throw ValidationError("beam_transmission: cavity_length must be > 0");
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
        throw ValidationError("beam_transmission: kappa must be >= 0");
    require_increasing(delta_h_values, "beam_transmission");

    // State retention and the partition sum are frozen at the reference width.
    const std::vector<EigenSolution> ref =
        spectrum_at(spectrum_for, beam.reference_width, "beam_transmission");
    if (ref.empty())
        throw NumericError("beam_transmission: no states at reference width " +
                           fmt_g(beam.reference_width) + " m");
    int keep = 0;
    double z_ref = 0.0;
    for (const EigenSolution& s : ref) {
        if (keep >= beam.max_states) break;
        if (s.energy.joules > 10.0 * beam.kT && keep > 0) break;
        z_ref += std::exp(-s.energy.joules / beam.kT);
        ++keep;
    }
    if (!(z_ref > 0.0))
        throw NumericError("beam_transmission: reference partition sum underflowed");

    TransmissionCurve curve;
    curve.model = model;
    curve.params = {{"cavity_length_m", cavity_length},
                    {"kappa_per_m", kappa},
                    {"kT_J", beam.kT},
                    {"reference_width_m", beam.reference_width},
                    {"n_states", static_cast<double>(keep)}};
    for (double dh : delta_h_values) {
        const std::vector<EigenSolution> states =
            spectrum_at(spectrum_for, dh, "beam_transmission");
        if (static_cast<int>(states.size()) < keep)
            throw NumericError("beam_transmission: spectrum at delta_h = " + fmt_g(dh) +
                               " m has " + std::to_string(states.size()) + " of " +
                               std::to_string(keep) + " states");
        double n = 0.0;
        for (int i = 0; i < keep; ++i) {
            const double w = std::exp(-states[i].energy.joules / beam.kT);
            n += w * std::exp(-leakage_rate(states[i], dh, kappa) * cavity_length);
        }
        curve.points.push_back({dh, n / z_ref});
    }
    require_nondecreasing(curve, "beam_transmission");
    curve.validate();
    return curve;
}

TransmissionCurve classical_curve(double a_scale, double h1, double exponent,
                                  const std::vector<double>& delta_h_values) {
    if (!(exponent > 0.0) || !std::isfinite(exponent))
        throw ValidationError("classical_curve: exponent must be > 0");
    if (!(h1 >= 0.0) || !std::isfinite(h1))
        throw ValidationError("classical_curve: h1 must be >= 0");
    if (!(a_scale >= 0.0) || !std::isfinite(a_scale))
        throw ValidationError("classical_curve: a_scale must be >= 0");
    require_increasing(delta_h_values, "classical_curve");

    TransmissionCurve curve;
    curve.model = (h1 == 0.0) ? TransmissionModel::ClassicalPure
                              : TransmissionModel::ClassicalTranslated;
    curve.params = {{"a_scale", a_scale}, {"h1_m", h1}, {"exponent", exponent}};
    for (double dh : delta_h_values)
        curve.points.push_back({dh, a_scale * std::pow(std::max(0.0, dh - h1), exponent)});
    curve.validate();
    return curve;
}

} // namespace qbounce
