#ifndef QBOUNCE_CONFIG_HPP
#define QBOUNCE_CONFIG_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "qbounce/scenario.hpp"

namespace qbounce {

// Inclusive uniform sweep of the slit width.
struct SweepSpec {
    double dh_min = 1e-6;  // m
    double dh_max = 40e-6; // m
    int steps = 200;       // number of points
    // Gaussian slit-width jitter. Accepted in config files for forward
    // compatibility but not applied anywhere yet; nonzero values are carried
    // through untouched.
    double smear = 0.0; // m

    void validate() const; // 0 < dh_min < dh_max, 2 <= steps <= 1e6, smear >= 0
    std::vector<double> values() const;
};

struct ScenarioFile {
    ScenarioConfig scenario;
    SweepSpec sweep;
};

// TOML subset: '#' comments, [section] headers, key = number or "string".
// Unknown keys are errors so typos cannot silently fall back to defaults.
// Failures throw ValidationError as origin:line: message.
ScenarioFile read_scenario_config(std::istream& is, const std::string& origin);

// Emits what read_scenario_config accepts, numbers in shortest form that
// parses back to the same double.
void write_scenario_config(const ScenarioFile& f, std::ostream& os);

} // namespace qbounce

#endif
