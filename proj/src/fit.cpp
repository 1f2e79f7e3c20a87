#include "qbounce/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "qbounce/eigen.hpp"
#include "qbounce/errors.hpp"

namespace qbounce {

namespace {

constexpr double kKappaScanMax = 2000.0; // 1/m, generous multiple of the default kappa
constexpr int kKappaScanSteps = 240;
constexpr int kPowerIterCap = 200;
// Per-dof residuals within this relative window count as a ranking tie.
constexpr double kMetricTieRel = 0.15;

void check_points(const std::vector<DataPoint>& pts, std::size_t min_count, const char* op,
                  bool require_positive_counts) {
    if (pts.size() < min_count)
        throw ValidationError(std::string(op) + ": need at least " + std::to_string(min_count) +
                              " points, got " + std::to_string(pts.size()));
    double prev = -std::numeric_limits<double>::infinity();
    for (const DataPoint& p : pts) {
        if (!std::isfinite(p.x) || p.x <= prev)
            throw ValidationError(std::string(op) + ": x must be finite and strictly increasing");
        prev = p.x;
        if (!std::isfinite(p.n) || p.n < 0.0)
            throw ValidationError(std::string(op) + ": counts must be finite and >= 0");
        if (require_positive_counts && p.n <= 0.0)
            throw ValidationError(std::string(op) + ": counts must be > 0 (log is taken)");
    }
}

// Solve the f x f system G delta = g in place, partial pivoting. Returns
// false when G is numerically singular.
bool solve_small(double G[3][3], double g[3], int f, double delta[3]) {
    int idx[3] = {0, 1, 2};
    for (int col = 0; col < f; ++col) {
        int piv = col;
        for (int r = col + 1; r < f; ++r)
            if (std::abs(G[idx[r]][col]) > std::abs(G[idx[piv]][col])) piv = r;
        std::swap(idx[col], idx[piv]);
        const double d = G[idx[col]][col];
        if (std::abs(d) < 1e-300) return false;
        for (int r = col + 1; r < f; ++r) {
            const double m = G[idx[r]][col] / d;
            for (int cc = col; cc < f; ++cc) G[idx[r]][cc] -= m * G[idx[col]][cc];
            g[idx[r]] -= m * g[idx[col]];
        }
    }
    for (int row = f - 1; row >= 0; --row) {
        double s = g[idx[row]];
        for (int cc = row + 1; cc < f; ++cc) s -= G[idx[row]][cc] * delta[cc];
        const double d = G[idx[row]][row];
        if (std::abs(d) < 1e-300) return false;
        delta[row] = s / d;
    }
    for (int i = 0; i < f; ++i)
        if (!std::isfinite(delta[i])) return false;
    return true;
}

struct PowerParams {
    double a = 0.0;  // in x-scaled units
    double h1 = 0.0; // in x-scaled units
    double p = 1.5;
};

double power_ss(const std::vector<double>& xs, const std::vector<double>& ns,
                const PowerParams& q) {
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double t = xs[i] - q.h1;
        const double model = t > 0.0 ? q.a * std::pow(t, q.p) : 0.0;
        const double r = ns[i] - model;
        ss += r * r;
    }
    return ss;
}

double closed_form_scale(const std::vector<double>& xs, const std::vector<double>& ns, double h1,
                         double p) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double t = xs[i] - h1;
        if (t <= 0.0) continue;
        const double y = std::pow(t, p);
        num += ns[i] * y;
        den += y * y;
    }
    return den > 0.0 ? num / den : 0.0;
}

} // namespace

namespace detail {

// Gauss-Newton with Levenberg damping for N = a max(0, x - h1)^p. fix_h1
// pins h1 (the pure power-law candidate); fix_exponent pins p. x is rescaled
// by its largest value internally so the normal equations stay conditioned.
FitResult fit_power_law_pinned(const std::vector<DataPoint>& pts,
                               std::optional<double> fix_exponent,
                               std::optional<double> fix_h1, const char* tag) {
    check_points(pts, 4, "fit_power_law", false);
    const double x_scale = pts.back().x;
    if (!(x_scale > 0.0)) throw ValidationError("fit_power_law: x values must be positive");

    std::vector<double> xs(pts.size()), ns(pts.size());
    double max_n = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        xs[i] = pts[i].x / x_scale;
        ns[i] = pts[i].n;
        max_n = std::max(max_n, ns[i]);
    }
    if (max_n <= 0.0)
        throw ValidationError("fit_power_law: degenerate data, all counts are zero");
    if (fix_exponent && !(*fix_exponent > 0.0 && std::isfinite(*fix_exponent)))
        throw ValidationError("fit_power_law: fixed exponent must be > 0");

    const bool free_h1 = !fix_h1.has_value();
    const bool free_p = !fix_exponent.has_value();
    const int n_free = 1 + (free_h1 ? 1 : 0) + (free_p ? 1 : 0);

    PowerParams q;
    q.p = fix_exponent.value_or(1.5);
    if (free_h1) {
        // threshold guess: the largest x whose count sits below 2% of the peak
        q.h1 = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (ns[i] < 0.02 * max_n) q.h1 = std::max(q.h1, xs[i]);
    } else {
        q.h1 = *fix_h1 / x_scale;
    }
    q.a = closed_form_scale(xs, ns, q.h1, q.p);
    if (q.a <= 0.0) q.a = max_n; // all mass below the initial hinge; start flat

    const double runaway = xs.front() - 10.0 * (xs.back() - xs.front());
    double ss = power_ss(xs, ns, q);
    double lambda = 1e-3;
    bool converged = false;
    int it = 0;

    for (it = 1; it <= kPowerIterCap; ++it) {
        if (q.h1 < runaway) break; // threshold left the sweep: unidentifiable

        // Jacobian over the active set only; the hinge has no derivative.
        double G[3][3] = {{0}}, g[3] = {0};
        int active = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double t = xs[i] - q.h1;
            if (t <= 1e-12) continue;
            ++active;
            const double tp = std::pow(t, q.p);
            const double model = q.a * tp;
            const double r = ns[i] - model;
            double J[3];
            int f = 0;
            J[f++] = tp; // d model / d a
            if (free_h1) J[f++] = -q.a * q.p * std::pow(t, q.p - 1.0);
            if (free_p) J[f++] = model * std::log(t);
            for (int row = 0; row < f; ++row) {
                for (int col = 0; col < f; ++col) G[row][col] += J[row] * J[col];
                g[row] += J[row] * r;
            }
        }
        if (active < n_free + 1) break; // too few points above the hinge

        bool stepped = false;
        double rel_step = 0.0;
        while (lambda <= 1e12) {
            double Gd[3][3], gd[3], delta[3];
            for (int r = 0; r < 3; ++r)
                for (int cc = 0; cc < 3; ++cc) Gd[r][cc] = G[r][cc];
            for (int r = 0; r < n_free; ++r) Gd[r][r] += lambda * G[r][r];
            for (int r = 0; r < 3; ++r) gd[r] = g[r];
            if (!solve_small(Gd, gd, n_free, delta)) {
                lambda *= 10.0;
                continue;
            }
            PowerParams trial = q;
            int f = 0;
            trial.a += delta[f++];
            if (free_h1) trial.h1 += delta[f++];
            if (free_p) trial.p += delta[f++];
            if (!(trial.a > 0.0) || !(trial.p > 0.05) || !(trial.p < 10.0)) {
                lambda *= 10.0;
                continue;
            }
            const double trial_ss = power_ss(xs, ns, trial);
            if (trial_ss <= ss) {
                rel_step = std::abs(trial.a - q.a) / (std::abs(q.a) + 1e-30);
                if (free_h1)
                    rel_step = std::max(rel_step,
                                        std::abs(trial.h1 - q.h1) / (std::abs(q.h1) + 1e-3));
                if (free_p)
                    rel_step = std::max(rel_step, std::abs(trial.p - q.p) / std::abs(q.p));
                q = trial;
                ss = trial_ss;
                lambda = std::max(lambda / 10.0, 1e-12);
                stepped = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!stepped) {
            // no damping level improves: stationary point if the gradient is
            // flat at the data scale, otherwise a genuine failure
            double ginf = 0.0;
            for (int row = 0; row < n_free; ++row) ginf = std::max(ginf, std::abs(g[row]));
            converged = ginf <= 1e-8 * (1.0 + max_n) * active;
            break;
        }
        if (rel_step < 1e-11 || ss < 1e-28 * max_n * max_n * static_cast<double>(pts.size())) {
            converged = true;
            break;
        }
    }

    FitResult out;
    out.model = tag;
    out.params = {{"a_scale", q.a / std::pow(x_scale, q.p)},
                  {"h1_m", q.h1 * x_scale},
                  {"exponent", q.p}};
    out.n_free = n_free;
    out.residual_ss = power_ss(xs, ns, q);
    out.n_points = static_cast<int>(pts.size());
    out.converged = converged;
    out.iterations = it;
    return out;
}

} // namespace detail

double FitResult::metric() const {
    const int dof = n_points - n_free;
    if (dof <= 0) return std::numeric_limits<double>::infinity();
    return residual_ss / dof;
}

FitResult fit_power_law(const std::vector<DataPoint>& points,
                        std::optional<double> fix_exponent) {
    return detail::fit_power_law_pinned(points, fix_exponent, std::nullopt,
                                        "classical_translated");
}

FitResult fit_exponential(const std::vector<DataPoint>& points) {
    check_points(points, 3, "fit_exponential", true);
    const double n = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const DataPoint& p : points) {
        const double y = std::log(p.n);
        sx += p.x;
        sy += y;
        sxx += p.x * p.x;
        sxy += p.x * y;
    }
    const double det = n * sxx - sx * sx;
    if (!(std::abs(det) > 0.0))
        throw ValidationError("fit_exponential: x values are degenerate");
    const double slope = (n * sxy - sx * sy) / det;
    const double intercept = (sy - slope * sx) / n;
    const double n0 = std::exp(intercept);
    const double k = -slope;

    double ss = 0.0;
    for (const DataPoint& p : points) {
        const double r = p.n - n0 * std::exp(-k * p.x);
        ss += r * r;
    }
    FitResult out;
    out.model = "exponential";
    out.params = {{"n0", n0}, {"k_per_m", k}};
    out.n_free = 2;
    out.residual_ss = ss;
    out.n_points = static_cast<int>(points.size());
    out.converged = true;
    out.iterations = 1;
    return out;
}

namespace {

// Scale-only least squares of data onto a fixed shape: s = sum(N q)/sum(q^2).
double scale_onto(const std::vector<double>& ns, const std::vector<double>& q, double* ss_out) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        num += ns[i] * q[i];
        den += q[i] * q[i];
    }
    const double s = den > 0.0 ? num / den : 0.0;
    double ss = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double r = ns[i] - s * q[i];
        ss += r * r;
    }
    if (ss_out) *ss_out = ss;
    return s;
}

FitResult fit_quantum_gravity(const std::vector<DataPoint>& pts, const ScenarioConfig& cfg,
                              const PhysicalConstants& c) {
    const double kT = thermal_energy(c, cfg.beam.transverse_temperature).joules;
    const double cavity = cfg.geometry.mirror_length;

    std::vector<EigenSolution> spectrum =
        gravity_mirror_spectrum(c, cfg.max_states, 0, pts.back().x);
    std::vector<Energy> energies;
    energies.reserve(spectrum.size());
    for (const EigenSolution& s : spectrum) energies.push_back(s.energy);
    const std::vector<double> weights = boltzmann_weights(energies, kT, cfg.max_states);
    spectrum.resize(weights.size());

    // kappa-independent absorption exponents, one per (state, point)
    std::vector<std::vector<double>> expo(weights.size(), std::vector<double>(pts.size()));
    for (std::size_t k = 0; k < weights.size(); ++k)
        for (std::size_t i = 0; i < pts.size(); ++i)
            expo[k][i] = absorber_overlap(spectrum[k], pts[i].x) * cavity;

    std::vector<double> ns(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) ns[i] = pts[i].n;

    int evals = 0;
    std::vector<double> q(pts.size());
    auto ss_at = [&](double kappa) {
        ++evals;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            double v = 0.0;
            for (std::size_t k = 0; k < weights.size(); ++k)
                v += weights[k] * std::exp(-kappa * expo[k][i]);
            q[i] = v;
        }
        double ss = 0.0;
        scale_onto(ns, q, &ss);
        return ss;
    };

    // coarse scan, then golden-section refinement in the winning bracket
    double best_kappa = 0.0, best_ss = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= kKappaScanSteps; ++j) {
        const double kappa = kKappaScanMax * j / kKappaScanSteps;
        const double ss = ss_at(kappa);
        if (ss < best_ss) {
            best_ss = ss;
            best_kappa = kappa;
        }
    }
    const double step = kKappaScanMax / kKappaScanSteps;
    double lo = std::max(0.0, best_kappa - step);
    double hi = std::min(kKappaScanMax, best_kappa + step);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = ss_at(x1), f2 = ss_at(x2);
    for (int j = 0; j < 80 && hi - lo > 1e-10 * kKappaScanMax; ++j) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = ss_at(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = ss_at(x2);
        }
    }
    const double kappa = 0.5 * (lo + hi);
    double ss = 0.0;
    ss_at(kappa);
    const double scale = scale_onto(ns, q, &ss);

    FitResult out;
    out.model = model_name(TransmissionModel::QuantumGravity);
    out.params = {{"scale", scale}, {"kappa_per_m", kappa}};
    out.n_free = 2;
    out.residual_ss = ss;
    out.n_points = static_cast<int>(pts.size());
    out.converged = true;
    out.iterations = evals;
    return out;
}

FitResult fit_quantum_box(const std::vector<DataPoint>& pts, const ScenarioConfig& cfg,
                          const PhysicalConstants& c) {
    const double kT = thermal_energy(c, cfg.beam.transverse_temperature).joules;
    const double ref = pts.back().x;

    // Same retention and partition sum beam_transmission freezes at the
    // reference width; absorber overlap is identically zero for hard-box
    // modes, so kappa drops out and scale is the only free parameter.
    const double e1_ref = c.hbar * c.hbar * M_PI * M_PI / (2.0 * c.neutron_mass * ref * ref);
    int keep = 0;
    double z_ref = 0.0;
    for (int n = 1; n <= cfg.max_states; ++n) {
        const double e = e1_ref * n * n;
        if (e > 10.0 * kT && keep > 0) break;
        z_ref += std::exp(-e / kT);
        ++keep;
    }
    if (!(z_ref > 0.0)) throw NumericError("compare_models: box partition sum underflowed");

    std::vector<double> ns(pts.size()), q(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        ns[i] = pts[i].n;
        const double e1 =
            c.hbar * c.hbar * M_PI * M_PI / (2.0 * c.neutron_mass * pts[i].x * pts[i].x);
        double v = 0.0;
        for (int n = 1; n <= keep; ++n) v += std::exp(-(e1 * n * n) / kT);
        q[i] = v / z_ref;
    }
    double ss = 0.0;
    const double scale = scale_onto(ns, q, &ss);

    FitResult out;
    out.model = model_name(TransmissionModel::QuantumBox);
    out.params = {{"scale", scale}};
    out.n_free = 1;
    out.residual_ss = ss;
    out.n_points = static_cast<int>(pts.size());
    out.converged = true;
    out.iterations = 1;
    return out;
}

} // namespace

ComparisonReport compare_models(const std::vector<DataPoint>& points,
                                const std::vector<TransmissionModel>& candidates,
                                const ScenarioConfig& cfg, const PhysicalConstants& c) {
    check_points(points, 6, "compare_models", false);
    if (candidates.empty()) throw ValidationError("compare_models: no candidates");
    cfg.validate();

    // canonical candidate order makes the report permutation-invariant
    std::vector<TransmissionModel> order(candidates);
    std::sort(order.begin(), order.end(), [](TransmissionModel a, TransmissionModel b) {
        return std::string(model_name(a)) < model_name(b);
    });
    order.erase(std::unique(order.begin(), order.end()), order.end());

    ComparisonReport report;
    for (TransmissionModel m : order) {
        switch (m) {
        case TransmissionModel::QuantumGravity:
            report.fits.push_back(fit_quantum_gravity(points, cfg, c));
            break;
        case TransmissionModel::QuantumBox:
            report.fits.push_back(fit_quantum_box(points, cfg, c));
            break;
        case TransmissionModel::ClassicalTranslated:
            report.fits.push_back(detail::fit_power_law_pinned(points, std::nullopt,
                                                               std::nullopt,
                                                               "classical_translated"));
            break;
        case TransmissionModel::ClassicalPure:
            report.fits.push_back(
                detail::fit_power_law_pinned(points, std::nullopt, 0.0, "classical_pure"));
            break;
        }
    }

    std::stable_sort(report.fits.begin(), report.fits.end(),
                     [](const FitResult& a, const FitResult& b) {
                         if (a.converged != b.converged) return a.converged;
                         const double ma = a.metric(), mb = b.metric();
                         if (ma != mb) return ma < mb;
                         if (a.n_free != b.n_free) return a.n_free < b.n_free;
                         return a.model < b.model;
                     });

    // Parsimony pass. A model nesting another (classical_translated contains
    // classical_pure at h1 = 0) always lands at equal-or-lower residual, with
    // the extra parameter soaking up noise; per-dof metrics this close are a
    // statistical tie, resolved toward fewer parameters. Crude surrogate for
    // an F-test; the window is sized for ~1% multiplicative noise.
    if (!report.fits.empty() && report.fits.front().converged) {
        const double best_metric = report.fits.front().metric();
        std::size_t pick = 0;
        for (std::size_t i = 1; i < report.fits.size(); ++i) {
            const FitResult& f = report.fits[i];
            if (!f.converged) break; // converged fits sort first
            if (f.metric() > best_metric * (1.0 + kMetricTieRel)) continue;
            const FitResult& p = report.fits[pick];
            if (f.n_free < p.n_free || (f.n_free == p.n_free && f.model < p.model)) pick = i;
        }
        if (pick != 0) {
            FitResult promoted = report.fits[static_cast<std::ptrdiff_t>(pick)];
            report.fits.erase(report.fits.begin() + static_cast<std::ptrdiff_t>(pick));
            report.fits.insert(report.fits.begin(), promoted);
        }
    }

    if (!report.fits.empty() && report.fits.front().converged) {
        report.best_model = report.fits.front().model;
        const double best = report.fits.front().metric();
        for (const FitResult& f : report.fits) {
            if (!f.converged) continue;
            const double m = f.metric();
            double ratio;
            if (best == 0.0 && m == 0.0)
                ratio = 1.0;
            else if (m == 0.0)
                ratio = 1.0; // cannot happen for non-best fits (sorted), kept for safety
            else
                ratio = best / m;
            report.residual_ratios.emplace_back(f.model, ratio);
        }
    } else {
        report.best_model = "none";
    }
    return report;
}

std::vector<DataPoint> synthesize_data(const TransmissionCurve& curve, double noise_sigma_rel,
                                       std::uint64_t seed) {
    if (!(noise_sigma_rel >= 0.0) || !std::isfinite(noise_sigma_rel))
        throw ValidationError("synthesize_data: noise_sigma_rel must be >= 0");
    curve.validate();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<DataPoint> out;
    out.reserve(curve.points.size());
    for (const CurvePoint& p : curve.points) {
        const double n = p.n_count * (1.0 + noise_sigma_rel * gauss(rng));
        out.push_back({p.delta_h, std::max(0.0, n)});
    }
    return out;
}

} // namespace qbounce
