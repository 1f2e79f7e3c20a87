#include "qbounce/scenario.hpp"

#include <cmath>

#include "qbounce/eigen.hpp"
#include "qbounce/errors.hpp"

namespace qbounce {

const char* orientation_name(Orientation o) {
    switch (o) {
    case Orientation::Horizontal: return "horizontal";
    case Orientation::Vertical: return "vertical";
    case Orientation::ReversedHorizontal: return "reversed_horizontal";
    }
    return "unknown";
}

const char* family_name(ModelFamily f) {
    return f == ModelFamily::Gravity ? "gravity" : "box_only";
}

Orientation parse_orientation(const std::string& s) {
    if (s == "horizontal") return Orientation::Horizontal;
    if (s == "vertical") return Orientation::Vertical;
    if (s == "reversed_horizontal") return Orientation::ReversedHorizontal;
    throw ValidationError("orientation must be horizontal, vertical, or reversed_horizontal; got \"" +
                          s + "\"");
}

ModelFamily parse_family(const std::string& s) {
    if (s == "gravity") return ModelFamily::Gravity;
    if (s == "box_only") return ModelFamily::BoxOnly;
    throw ValidationError("model_family must be gravity or box_only; got \"" + s + "\"");
}

void GeometryConfig::validate() const {
    if (!(mirror_length > 0.0) || !std::isfinite(mirror_length))
        throw ValidationError("GeometryConfig: mirror_length must be > 0");
    if (!(absorber_length > 0.0) || !std::isfinite(absorber_length))
        throw ValidationError("GeometryConfig: absorber_length must be > 0");
    if (!(slit_width > 0.0) || !std::isfinite(slit_width))
        throw ValidationError("GeometryConfig: slit_width must be > 0");
    if (absorber_length < mirror_length)
        throw ValidationError("GeometryConfig: absorber_length must be >= mirror_length");
}

void BeamSpec::validate() const {
    if (!(transverse_temperature > 0.0) || !std::isfinite(transverse_temperature))
        throw ValidationError("BeamSpec: transverse_temperature must be > 0");
    if (!(horizontal_velocity > 0.0) || !std::isfinite(horizontal_velocity))
        throw ValidationError("BeamSpec: horizontal_velocity must be > 0");
    if (!(lifetime > 0.0) || !std::isfinite(lifetime))
        throw ValidationError("BeamSpec: lifetime must be > 0");
}

void ScenarioConfig::validate() const {
    geometry.validate();
    beam.validate();
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
        throw ValidationError("ScenarioConfig: kappa must be >= 0");
    if (kappa_free >= 0.0 && !std::isfinite(kappa_free))
        throw ValidationError("ScenarioConfig: kappa_free must be finite");
    if (max_states < 1 || max_states > 50)
        throw ValidationError("ScenarioConfig: max_states must be in [1, 50]");
}

double default_kappa() { return std::log(2.0) / (0.05 * 0.10); }

double survival_fraction(const BeamSpec& beam, double transit_time) {
    beam.validate();
    if (!(transit_time >= 0.0) || !std::isfinite(transit_time))
        throw ValidationError("survival_fraction: transit_time must be >= 0");
    return std::exp(-transit_time / beam.lifetime);
}

TransmissionCurve predict_scenario(const ScenarioConfig& cfg,
                                   const std::vector<double>& delta_h_values,
                                   const PhysicalConstants& c) {
    cfg.validate();
    if (delta_h_values.empty())
        throw ValidationError("predict_scenario: empty slit-width sweep");

    const double kT = thermal_energy(c, cfg.beam.transverse_temperature).joules;
    const double cavity = cfg.geometry.mirror_length;
    const bool box_family = cfg.orientation == Orientation::Vertical ||
                            cfg.model_family == ModelFamily::BoxOnly;

    TransmissionCurve curve;
    try {
        if (box_family) {
            const BeamFilter filter{kT, delta_h_values.back(), cfg.max_states};
            const int n_states = cfg.max_states;
            SpectrumFn box = [&c, n_states](double dh) { return box_spectrum(c, dh, n_states); };
            curve = beam_transmission(box, filter, cavity, cfg.kappa, delta_h_values,
                                      TransmissionModel::QuantumBox);
        } else {
            std::vector<EigenSolution> spectrum =
                gravity_mirror_spectrum(c, cfg.max_states, 0, delta_h_values.back());
            std::vector<Energy> energies;
            energies.reserve(spectrum.size());
            for (const EigenSolution& s : spectrum) energies.push_back(s.energy);
            const std::vector<double> weights = boltzmann_weights(energies, kT, cfg.max_states);
            spectrum.resize(weights.size());
            SpectrumFn fixed = [spectrum](double) { return spectrum; };
            curve = quantum_transmission(fixed, weights, cavity, cfg.kappa, delta_h_values,
                                         TransmissionModel::QuantumGravity);
            curve.params.emplace_back("kT_J", kT);
        }
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("predict_scenario: ") + e.what());
    } catch (const NumericError& e) {
        throw NumericError(std::string("predict_scenario: ") + e.what());
    }

    const double survive =
        survival_fraction(cfg.beam, cavity / cfg.beam.horizontal_velocity);
    for (CurvePoint& p : curve.points) p.n_count *= survive;
    curve.params.emplace_back("survival", survive);

    if (cfg.orientation == Orientation::ReversedHorizontal) {
        const double attenuation =
            std::exp(-cfg.effective_kappa_free() * cfg.geometry.excess_absorber());
        for (CurvePoint& p : curve.points) p.n_count *= attenuation;
        curve.params.emplace_back("kappa_free_per_m", cfg.effective_kappa_free());
        curve.params.emplace_back("excess_absorber_m", cfg.geometry.excess_absorber());
        curve.params.emplace_back("excess_attenuation", attenuation);
    }
    curve.validate();
    return curve;
}

} // namespace qbounce
