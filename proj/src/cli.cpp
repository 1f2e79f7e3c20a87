#include "qbounce/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qbounce/airy.hpp"
#include "qbounce/config.hpp"
#include "qbounce/csv.hpp"
#include "qbounce/eigen.hpp"
#include "qbounce/errors.hpp"
#include "qbounce/fit.hpp"
#include "qbounce/potential.hpp"
#include "qbounce/scenario.hpp"
#include "qbounce/transmission.hpp"

namespace qbounce {

namespace {

using ordered_json = nlohmann::ordered_json;

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ValidationError("cannot open output file: " + path);
    os << text << std::flush;
    if (!os) throw ValidationError("failed writing output file: " + path);
}

// Parameter sidecar next to a CSV written with --output; skipped on stdout
// so the data stream stays clean.
void emit_meta(const std::string& csv_path, const ordered_json& meta) {
    if (csv_path.empty()) return;
    emit(csv_path + ".meta.json", meta.dump(2) + "\n");
}

ordered_json params_json(const std::vector<std::pair<std::string, double>>& params) {
    ordered_json p = ordered_json::object();
    for (const auto& [k, v] : params) p[k] = v;
    return p;
}

ordered_json curve_meta(const TransmissionCurve& curve) {
    ordered_json j;
    j["model"] = model_name(curve.model);
    j["params"] = params_json(curve.params);
    return j;
}

ordered_json fit_json(const FitResult& f) {
    ordered_json j;
    j["model"] = f.model;
    j["params"] = params_json(f.params);
    j["n_free"] = f.n_free;
    j["residual_ss"] = f.residual_ss;
    j["n_points"] = f.n_points;
    j["converged"] = f.converged;
    j["iterations"] = f.iterations;
    return j;
}

PotentialKind parse_potential(const std::string& s) {
    if (s == "gravity-mirror") return PotentialKind::GravityMirror;
    if (s == "box") return PotentialKind::InfiniteBox;
    if (s == "gravity-box") return PotentialKind::GravityBox;
    if (s == "gravity-absorber") return PotentialKind::GravityAbsorber;
    throw ValidationError(
        "potential must be gravity-mirror, box, gravity-box, or gravity-absorber; got \"" + s +
        "\"");
}

TransmissionModel parse_model(const std::string& s) {
    if (s == "quantum-gravity") return TransmissionModel::QuantumGravity;
    if (s == "quantum-box") return TransmissionModel::QuantumBox;
    if (s == "classical-translated") return TransmissionModel::ClassicalTranslated;
    if (s == "classical-pure") return TransmissionModel::ClassicalPure;
    throw ValidationError("model must be quantum-gravity, quantum-box, classical-translated, or "
                          "classical-pure; got \"" +
                          s + "\"");
}

std::vector<DataPoint> load_data(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ValidationError("cannot open input file: " + path);
    return read_data_csv(is, path);
}

ScenarioFile load_config(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ValidationError("cannot open config file: " + path);
    return read_scenario_config(is, path);
}

struct PotentialArgs {
    std::string potential = "gravity-mirror";
    std::string method = "auto";
    double slit_um = 15.0;
    int grid = 0;         // 0 = solver default
    double absorber_pev = 0.0; // 0 = auto: 100x the gravity ground state
};

std::vector<EigenSolution> compute_states(const PotentialArgs& a, int n_states,
                                          const PhysicalConstants& c) {
    const PotentialKind kind = parse_potential(a.potential);
    const bool has_analytic =
        kind == PotentialKind::GravityMirror || kind == PotentialKind::InfiniteBox;
    bool analytic = false;
    if (a.method == "auto") {
        analytic = has_analytic;
    } else if (a.method == "analytic") {
        if (!has_analytic)
            throw ValidationError("no analytic solver for --potential " + a.potential);
        analytic = true;
    } else if (a.method != "numeric") {
        throw ValidationError("method must be auto, analytic, or numeric; got \"" + a.method +
                              "\"");
    }

    if (analytic) {
        if (kind == PotentialKind::GravityMirror)
            return gravity_mirror_spectrum(c, n_states, a.grid);
        return box_spectrum(c, a.slit_um * 1e-6, n_states, a.grid);
    }

    PotentialSpec spec;
    spec.kind = kind;
    spec.gravity_on = kind != PotentialKind::InfiniteBox;
    if (kind != PotentialKind::GravityMirror) spec.slit_width = a.slit_um * 1e-6;
    if (kind == PotentialKind::GravityAbsorber)
        spec.absorber_height = a.absorber_pev > 0.0
                                   ? Energy::from_pev(a.absorber_pev).joules
                                   : 100.0 * airy_spectrum_scale(c).epsilon0.joules * airy_zero(1);
    const int pts = a.grid > 0 ? a.grid : (kind == PotentialKind::InfiniteBox ? 4000 : 8000);
    const Grid grid = sample(spec, c, pts, n_states);
    const Boundary boundary = kind == PotentialKind::GravityAbsorber
                                  ? Boundary::DirichletLeftDecayRight
                                  : Boundary::DirichletBoth;
    return solve_numeric(grid, c, n_states, boundary);
}

std::vector<TransmissionModel> parse_candidates(const std::string& list) {
    std::vector<TransmissionModel> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = list.find(',', start);
        const std::string item =
            list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (item.empty()) throw ValidationError("empty entry in --candidates list");
        out.push_back(parse_model(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw ValidationError("empty --candidates list");
    return out;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"ultracold-neutron bound states between a mirror and an absorber: spectra, "
                 "transmission curves, and model discrimination"};
    app.require_subcommand(1);
    const PhysicalConstants& c = PhysicalConstants::reference();

    // constants
    auto* cmd_const = app.add_subcommand("constants", "dump the physical constants in use (JSON)");
    std::string const_out;
    cmd_const->add_option("-o,--output", const_out, "output file (default stdout)");
    cmd_const->callback([&]() { emit(const_out, c.to_json()); });

    // eigen
    auto* cmd_eigen = app.add_subcommand("eigen", "bound-state spectrum as CSV");
    PotentialArgs eig_args;
    int eig_states = 4;
    std::string eig_out;
    cmd_eigen->add_option("--potential", eig_args.potential,
                          "gravity-mirror | box | gravity-box | gravity-absorber");
    cmd_eigen->add_option("--slit-um", eig_args.slit_um, "slit width in micrometers");
    cmd_eigen->add_option("--states", eig_states, "number of states")->check(CLI::Range(1, 50));
    cmd_eigen->add_option("--method", eig_args.method, "auto | analytic | numeric");
    cmd_eigen->add_option("--grid", eig_args.grid, "grid points (0 = solver default)");
    cmd_eigen->add_option("--absorber-pev", eig_args.absorber_pev,
                          "absorber step height in peV (0 = auto)");
    cmd_eigen->add_option("-o,--output", eig_out, "output file (default stdout)");
    cmd_eigen->callback([&]() {
        const std::vector<EigenSolution> states = compute_states(eig_args, eig_states, c);
        if (static_cast<int>(states.size()) < eig_states)
            std::cerr << "note: only " << states.size() << " of " << eig_states
                      << " requested states are bound below the absorber step\n";
        std::ostringstream os;
        write_spectrum_csv(states, c, os);
        emit(eig_out, os.str());
    });

    // wavefunction
    auto* cmd_wf = app.add_subcommand("wavefunction", "one state's psi(z) as CSV");
    PotentialArgs wf_args;
    int wf_n = 1;
    std::string wf_out;
    cmd_wf->add_option("--potential", wf_args.potential,
                       "gravity-mirror | box | gravity-box | gravity-absorber");
    cmd_wf->add_option("--slit-um", wf_args.slit_um, "slit width in micrometers");
    cmd_wf->add_option("--n", wf_n, "state index, 1-based")->check(CLI::Range(1, 50));
    cmd_wf->add_option("--method", wf_args.method, "auto | analytic | numeric");
    cmd_wf->add_option("--grid", wf_args.grid, "grid points (0 = solver default)");
    cmd_wf->add_option("--absorber-pev", wf_args.absorber_pev,
                       "absorber step height in peV (0 = auto)");
    cmd_wf->add_option("-o,--output", wf_out, "output file (default stdout)");
    cmd_wf->callback([&]() {
        const std::vector<EigenSolution> states = compute_states(wf_args, wf_n, c);
        if (static_cast<int>(states.size()) < wf_n)
            throw ValidationError("state " + std::to_string(wf_n) +
                                  " is not bound below the absorber step (only " +
                                  std::to_string(states.size()) + " bound states)");
        std::ostringstream os;
        write_wavefunction_csv(states[static_cast<std::size_t>(wf_n) - 1], os);
        emit(wf_out, os.str());
    });

    // transmission
    auto* cmd_tr = app.add_subcommand("transmission", "model transmission curve N(dh) as CSV");
    std::string tr_model = "quantum-gravity";
    double tr_dh_min = 1.0, tr_dh_max = 40.0;
    int tr_steps = 200;
    double tr_kappa = default_kappa();
    double tr_cavity = 0.10;
    double tr_temp_nk = 20.0;
    int tr_max_states = 20;
    double tr_a_scale = 1.0, tr_h1_um = 15.0, tr_exponent = 1.5;
    std::string tr_out;
    cmd_tr->add_option("--model", tr_model,
                       "quantum-gravity | quantum-box | classical-translated | classical-pure");
    cmd_tr->add_option("--dh-min-um", tr_dh_min, "sweep start, micrometers");
    cmd_tr->add_option("--dh-max-um", tr_dh_max, "sweep end, micrometers");
    cmd_tr->add_option("--steps", tr_steps, "sweep points");
    cmd_tr->add_option("--kappa", tr_kappa, "absorption strength, 1/m");
    cmd_tr->add_option("--cavity-m", tr_cavity, "cavity (mirror) length, m");
    cmd_tr->add_option("--temperature-nk", tr_temp_nk, "transverse temperature, nK");
    cmd_tr->add_option("--max-states", tr_max_states, "state cap for quantum models")
        ->check(CLI::Range(1, 50));
    cmd_tr->add_option("--a-scale", tr_a_scale, "classical scale factor");
    cmd_tr->add_option("--h1-um", tr_h1_um, "classical threshold, micrometers");
    cmd_tr->add_option("--exponent", tr_exponent, "classical exponent");
    cmd_tr->add_option("-o,--output", tr_out, "output file (default stdout)");
    cmd_tr->callback([&]() {
        const SweepSpec sweep{tr_dh_min * 1e-6, tr_dh_max * 1e-6, tr_steps};
        const std::vector<double> xs = sweep.values();
        const TransmissionModel m = parse_model(tr_model);
        TransmissionCurve curve;
        if (m == TransmissionModel::QuantumGravity) {
            const double kT = thermal_energy(c, tr_temp_nk * 1e-9).joules;
            std::vector<EigenSolution> spectrum =
                gravity_mirror_spectrum(c, tr_max_states, 0, xs.back());
            std::vector<Energy> energies;
            for (const EigenSolution& s : spectrum) energies.push_back(s.energy);
            const std::vector<double> weights = boltzmann_weights(energies, kT, tr_max_states);
            spectrum.resize(weights.size());
            SpectrumFn fixed = [spectrum](double) { return spectrum; };
            curve = quantum_transmission(fixed, weights, tr_cavity, tr_kappa, xs, m);
            curve.params.emplace_back("kT_J", kT);
        } else if (m == TransmissionModel::QuantumBox) {
            const double kT = thermal_energy(c, tr_temp_nk * 1e-9).joules;
            const BeamFilter filter{kT, xs.back(), tr_max_states};
            const int n_states = tr_max_states;
            SpectrumFn box = [&, n_states](double dh) { return box_spectrum(c, dh, n_states); };
            curve = beam_transmission(box, filter, tr_cavity, tr_kappa, xs, m);
        } else {
            if (m == TransmissionModel::ClassicalPure && cmd_tr->count("--h1-um"))
                throw ValidationError("--h1-um conflicts with --model classical-pure (h1 = 0)");
            const double h1 = m == TransmissionModel::ClassicalPure ? 0.0 : tr_h1_um * 1e-6;
            curve = classical_curve(tr_a_scale, h1, tr_exponent, xs);
        }
        std::ostringstream os;
        write_curve_csv(curve, os);
        emit(tr_out, os.str());
        emit_meta(tr_out, curve_meta(curve));
    });

    // leakage
    auto* cmd_lk = app.add_subcommand("leakage", "cavity leakage N(x) for one mode as CSV");
    double lk_dh_um = 25.0, lk_xmax = 0.13, lk_kappa = default_kappa(), lk_n0 = 1.0;
    int lk_steps = 100, lk_state = 1;
    std::string lk_out;
    cmd_lk->add_option("--dh-um", lk_dh_um, "slit width in micrometers");
    cmd_lk->add_option("--x-max-m", lk_xmax, "cavity coordinate end, m");
    cmd_lk->add_option("--steps", lk_steps, "sweep points");
    cmd_lk->add_option("--kappa", lk_kappa, "absorption strength, 1/m");
    cmd_lk->add_option("--state", lk_state, "gravity-mirror state index")->check(CLI::Range(1, 50));
    cmd_lk->add_option("--n0", lk_n0, "count at x = 0");
    cmd_lk->add_option("-o,--output", lk_out, "output file (default stdout)");
    cmd_lk->callback([&]() {
        if (lk_steps < 2) throw ValidationError("leakage: steps must be >= 2");
        if (!(lk_xmax > 0.0)) throw ValidationError("leakage: x-max-m must be > 0");
        const std::vector<EigenSolution> spectrum =
            gravity_mirror_spectrum(c, lk_state, 0, lk_dh_um * 1e-6);
        LeakageModel model;
        model.n0 = lk_n0;
        model.delta_h = lk_dh_um * 1e-6;
        model.k = leakage_rate(spectrum.back(), model.delta_h, lk_kappa);
        std::vector<double> xs(static_cast<std::size_t>(lk_steps));
        for (int i = 0; i < lk_steps; ++i)
            xs[static_cast<std::size_t>(i)] = lk_xmax * i / (lk_steps - 1);
        const std::vector<CurvePoint> pts = leakage_curve(model, xs);
        std::ostringstream os;
        write_leakage_csv(pts, os);
        emit(lk_out, os.str());
        ordered_json meta;
        meta["model"] = "leakage";
        meta["params"] = params_json({{"n0", model.n0},
                                      {"k_per_m", model.k},
                                      {"delta_h_m", model.delta_h},
                                      {"kappa_per_m", lk_kappa},
                                      {"state", static_cast<double>(lk_state)}});
        emit_meta(lk_out, meta);
    });

    // scenario
    auto* cmd_sc = app.add_subcommand("scenario", "end-to-end predicted curve from a config file");
    std::string sc_config, sc_orientation, sc_family, sc_out;
    double sc_kappa = 0.0, sc_kappa_free = 0.0, sc_dh_min = 0.0, sc_dh_max = 0.0;
    int sc_steps = 0;
    bool sc_emit_config = false;
    cmd_sc->add_option("--config", sc_config, "scenario config file (TOML subset)");
    cmd_sc->add_option("--orientation", sc_orientation,
                       "override: horizontal | vertical | reversed_horizontal");
    cmd_sc->add_option("--family", sc_family, "override: gravity | box_only");
    cmd_sc->add_option("--kappa", sc_kappa, "override: absorption strength, 1/m");
    cmd_sc->add_option("--kappa-free", sc_kappa_free, "override: overhang absorption, 1/m");
    cmd_sc->add_option("--dh-min-um", sc_dh_min, "override: sweep start, micrometers");
    cmd_sc->add_option("--dh-max-um", sc_dh_max, "override: sweep end, micrometers");
    cmd_sc->add_option("--steps", sc_steps, "override: sweep points");
    cmd_sc->add_flag("--emit-config", sc_emit_config,
                     "write the effective config instead of running it");
    cmd_sc->add_option("-o,--output", sc_out, "output file (default stdout)");
    cmd_sc->callback([&]() {
        ScenarioFile f;
        if (!sc_config.empty()) f = load_config(sc_config);
        if (cmd_sc->count("--orientation"))
            f.scenario.orientation = parse_orientation(sc_orientation);
        if (cmd_sc->count("--family")) f.scenario.model_family = parse_family(sc_family);
        if (cmd_sc->count("--kappa")) f.scenario.kappa = sc_kappa;
        if (cmd_sc->count("--kappa-free")) f.scenario.kappa_free = sc_kappa_free;
        if (cmd_sc->count("--dh-min-um")) f.sweep.dh_min = sc_dh_min * 1e-6;
        if (cmd_sc->count("--dh-max-um")) f.sweep.dh_max = sc_dh_max * 1e-6;
        if (cmd_sc->count("--steps")) f.sweep.steps = sc_steps;
        if (sc_emit_config) {
            std::ostringstream os;
            write_scenario_config(f, os);
            emit(sc_out, os.str());
            return;
        }
        const TransmissionCurve curve = predict_scenario(f.scenario, f.sweep.values());
        std::ostringstream os;
        write_curve_csv(curve, os);
        emit(sc_out, os.str());
        ordered_json meta = curve_meta(curve);
        meta["orientation"] = orientation_name(f.scenario.orientation);
        meta["model_family"] = family_name(f.scenario.model_family);
        emit_meta(sc_out, meta);
    });

    // fit
    auto* cmd_fit = app.add_subcommand("fit", "fit one model to data, FitResult as JSON");
    std::string fit_input, fit_model = "classical-translated", fit_config, fit_out;
    double fit_fix_exponent = 0.0;
    cmd_fit->add_option("--input", fit_input, "data CSV (delta_h_um,n_count or x_m,n_count)")
        ->required();
    cmd_fit->add_option("--model", fit_model,
                        "classical-translated | classical-pure | quantum-gravity | quantum-box "
                        "| exponential");
    cmd_fit->add_option("--fix-exponent", fit_fix_exponent, "pin the power-law exponent");
    cmd_fit->add_option("--config", fit_config, "scenario config for quantum candidates");
    cmd_fit->add_option("-o,--output", fit_out, "output file (default stdout)");
    cmd_fit->callback([&]() {
        const std::vector<DataPoint> pts = load_data(fit_input);
        std::optional<double> fix;
        if (cmd_fit->count("--fix-exponent")) fix = fit_fix_exponent;
        ScenarioConfig cfg;
        if (!fit_config.empty()) cfg = load_config(fit_config).scenario;

        FitResult result;
        if (fit_model == "exponential") {
            if (fix) throw ValidationError("--fix-exponent only applies to power-law models");
            result = fit_exponential(pts);
        } else if (fit_model == "classical-translated") {
            result = fit_power_law(pts, fix);
        } else if (fit_model == "classical-pure") {
            result = detail::fit_power_law_pinned(pts, fix, 0.0, "classical_pure");
        } else if (fit_model == "quantum-gravity" || fit_model == "quantum-box") {
            if (fix) throw ValidationError("--fix-exponent only applies to power-law models");
            const ComparisonReport report = compare_models(pts, {parse_model(fit_model)}, cfg);
            result = report.fits.front();
        } else {
            throw ValidationError("model must be classical-translated, classical-pure, "
                                  "quantum-gravity, quantum-box, or exponential; got \"" +
                                  fit_model + "\"");
        }
        emit(fit_out, fit_json(result).dump(2) + "\n");
    });

    // compare
    auto* cmd_cmp = app.add_subcommand("compare", "fit candidate models, ranked report as JSON");
    std::string cmp_input, cmp_config, cmp_out;
    std::string cmp_candidates = "quantum-gravity,quantum-box,classical-translated,classical-pure";
    cmd_cmp->add_option("--input", cmp_input, "data CSV")->required();
    cmd_cmp->add_option("--candidates", cmp_candidates, "comma-separated model list");
    cmd_cmp->add_option("--config", cmp_config, "scenario config for quantum candidates");
    cmd_cmp->add_option("-o,--output", cmp_out, "output file (default stdout)");
    cmd_cmp->callback([&]() {
        const std::vector<DataPoint> pts = load_data(cmp_input);
        ScenarioConfig cfg;
        if (!cmp_config.empty()) cfg = load_config(cmp_config).scenario;
        const ComparisonReport report =
            compare_models(pts, parse_candidates(cmp_candidates), cfg);
        ordered_json j;
        j["best_model"] = report.best_model;
        ordered_json fits = ordered_json::array();
        for (const FitResult& f : report.fits) fits.push_back(fit_json(f));
        j["fits"] = fits;
        ordered_json ratios = ordered_json::object();
        for (const auto& [name, ratio] : report.residual_ratios) ratios[name] = ratio;
        j["residual_ratios"] = ratios;
        emit(cmp_out, j.dump(2) + "\n");
    });

    // synth
    auto* cmd_syn = app.add_subcommand("synth", "synthetic noisy data from a scenario config");
    std::string syn_config, syn_out;
    double syn_sigma = 0.0;
    std::uint64_t syn_seed = 1;
    cmd_syn->add_option("--config", syn_config, "scenario config file");
    cmd_syn->add_option("--sigma", syn_sigma, "relative noise level");
    cmd_syn->add_option("--seed", syn_seed, "random seed");
    cmd_syn->add_option("-o,--output", syn_out, "output file (default stdout)");
    cmd_syn->callback([&]() {
        ScenarioFile f;
        if (!syn_config.empty()) f = load_config(syn_config);
        const TransmissionCurve curve = predict_scenario(f.scenario, f.sweep.values());
        const std::vector<DataPoint> pts = synthesize_data(curve, syn_sigma, syn_seed);
        std::ostringstream os;
        write_data_csv(pts, os);
        emit(syn_out, os.str());
        ordered_json meta = curve_meta(curve);
        meta["orientation"] = orientation_name(f.scenario.orientation);
        meta["model_family"] = family_name(f.scenario.model_family);
        meta["noise_sigma_rel"] = syn_sigma;
        meta["seed"] = syn_seed;
        emit_meta(syn_out, meta);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

} // namespace qbounce
