#ifndef QBOUNCE_FIT_HPP
#define QBOUNCE_FIT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbounce/constants.hpp"
#include "qbounce/scenario.hpp"
#include "qbounce/transmission.hpp"

namespace qbounce {

struct DataPoint {
    double x = 0.0; // slit width (or cavity coordinate), m
    double n = 0.0; // counts
};

struct FitResult {
    std::string model;
    // Fitted values in fixed order; pinned parameters are reported too.
    std::vector<std::pair<std::string, double>> params;
    int n_free = 0; // free parameters only, the dof bookkeeping for ranking
    double residual_ss = 0.0;
    int n_points = 0;
    bool converged = false;
    int iterations = 0;

    // residual_ss / (n_points - n_free); infinity when dof <= 0
    double metric() const;
};

struct ComparisonReport {
    // Ranked by residual per degree of freedom, best first, non-converged
    // fits at the end. One exception to strict metric order: metrics within
    // 15% count as a tie, resolved toward fewer free parameters, so a nested
    // model (translated vs pure power law) cannot win on noise alone.
    std::vector<FitResult> fits;
    std::string best_model; // "none" when nothing converged
    // metric(best) / metric(model): 1 for the winner, toward 0 the further
    // behind a model falls (slightly above 1 only for a fit outranked inside
    // the tie window). Converged fits only.
    std::vector<std::pair<std::string, double>> residual_ratios;
};

// Least squares for N = a_scale * max(0, x - h1)^exponent by Gauss-Newton
// with Levenberg damping. Points below the current h1 carry no derivatives
// but stay in the objective, so the hinge cannot hide misfit. Needs >= 4
// points with strictly increasing x; all counts zero is degenerate and
// throws. Unidentifiable data (h1 running away below the sweep, or a
// singular normal matrix) comes back converged = false.
FitResult fit_power_law(const std::vector<DataPoint>& points,
                        std::optional<double> fix_exponent = std::nullopt);

// (n0, k) of N = n0 exp(-k x) by linear regression on log N. Needs >= 3
// points, every count > 0. Exact on noiseless exponentials; residual_ss is
// reported in count space, not log space.
FitResult fit_exponential(const std::vector<DataPoint>& points);

// Fits every candidate to the data and ranks by residual_ss per degree of
// freedom (ties toward fewer free parameters, then model name). Quantum
// candidates expose (scale, kappa) resp. scale only; their spectra come from
// cfg and c exactly as predict_scenario builds them, with the largest data x
// as the box-family reference width. Candidate order does not matter.
ComparisonReport compare_models(const std::vector<DataPoint>& points,
                                const std::vector<TransmissionModel>& candidates,
                                const ScenarioConfig& cfg = {},
                                const PhysicalConstants& c = PhysicalConstants::reference());

// Multiplicative Gaussian noise, N -> N * (1 + sigma * g), clamped at 0;
// deterministic per seed.
std::vector<DataPoint> synthesize_data(const TransmissionCurve& curve, double noise_sigma_rel,
                                       std::uint64_t seed);

namespace detail {
// Power-law core with an optionally pinned threshold. fit_power_law wraps
// it; compare_models and the pure-power CLI fit pin h1 = 0.
FitResult fit_power_law_pinned(const std::vector<DataPoint>& points,
                               std::optional<double> fix_exponent,
                               std::optional<double> fix_h1, const char* tag);
} // namespace detail

} // namespace qbounce

#endif
