#include "qbounce/config.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "qbounce/errors.hpp"

namespace qbounce {

namespace {

std::string trim(const std::string& s) {
    const std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    throw ValidationError(origin + ":" + std::to_string(line) + ": " + msg);
}

// cut a trailing '# comment' that is not inside a quoted string
std::string strip_comment(const std::string& s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

double parse_number(const std::string& raw, const std::string& origin, int line) {
    double v = 0.0;
    const char* first = raw.data();
    const char* last = raw.data() + raw.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) fail(origin, line, "not a number: \"" + raw + "\"");
    return v;
}

int parse_int(const std::string& raw, const std::string& origin, int line) {
    const double v = parse_number(raw, origin, line);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        fail(origin, line, "expected an integer: \"" + raw + "\"");
    return static_cast<int>(v);
}

std::string parse_string(const std::string& raw, const std::string& origin, int line) {
    if (raw.size() < 2 || raw.front() != '"' || raw.back() != '"')
        fail(origin, line, "expected a quoted string: " + raw);
    return raw.substr(1, raw.size() - 2);
}

std::string shortest(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

// For fields stored in SI but written in a display unit. The reader computes
// value * parse_factor, and the naive quotient can land one ulp away from a
// number that maps back exactly (25e-6 prints as 24.999999999999996
// otherwise), so nudge toward an exact preimage when one exists.
std::string shortest_in_unit(double v, double parse_factor) {
    const double guess = v / parse_factor;
    for (double cand : {guess, std::nextafter(guess, HUGE_VAL),
                        std::nextafter(guess, -HUGE_VAL)}) {
        if (cand * parse_factor == v) return shortest(cand);
    }
    return shortest(guess);
}

} // namespace

void SweepSpec::validate() const {
    if (!(dh_min > 0.0) || !std::isfinite(dh_min))
        throw ValidationError("sweep: dh_min must be > 0");
    if (!(dh_max > dh_min) || !std::isfinite(dh_max))
        throw ValidationError("sweep: dh_max must be > dh_min");
    if (steps < 2 || steps > 1000000)
        throw ValidationError("sweep: steps must be in [2, 1000000]");
    if (smear < 0.0 || !std::isfinite(smear))
        throw ValidationError("sweep: smear_um must be >= 0");
}

std::vector<double> SweepSpec::values() const {
    validate();
    std::vector<double> xs(static_cast<std::size_t>(steps));
    const double h = (dh_max - dh_min) / (steps - 1);
    for (int i = 0; i < steps; ++i) xs[static_cast<std::size_t>(i)] = dh_min + i * h;
    xs.back() = dh_max; // exact endpoint regardless of accumulated rounding
    return xs;
}

ScenarioFile read_scenario_config(std::istream& is, const std::string& origin) {
    ScenarioFile f;
    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        line = trim(strip_comment(line));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(origin, lineno, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "geometry" && section != "beam" && section != "absorption" &&
                section != "sweep")
                fail(origin, lineno, "unknown section [" + section + "]");
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(origin, lineno, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string raw = trim(line.substr(eq + 1));
        if (key.empty() || raw.empty()) fail(origin, lineno, "expected key = value");

        try {
            if (section.empty()) {
                if (key == "orientation")
                    f.scenario.orientation =
                        parse_orientation(parse_string(raw, origin, lineno));
                else if (key == "model_family")
                    f.scenario.model_family = parse_family(parse_string(raw, origin, lineno));
                else
                    fail(origin, lineno, "unknown key \"" + key + "\"");
            } else if (section == "geometry") {
                if (key == "mirror_length_m")
                    f.scenario.geometry.mirror_length = parse_number(raw, origin, lineno);
                else if (key == "absorber_length_m")
                    f.scenario.geometry.absorber_length = parse_number(raw, origin, lineno);
                else if (key == "slit_width_um")
                    f.scenario.geometry.slit_width = parse_number(raw, origin, lineno) * 1e-6;
                else
                    fail(origin, lineno, "unknown key \"geometry." + key + "\"");
            } else if (section == "beam") {
                if (key == "transverse_temperature_nk")
                    f.scenario.beam.transverse_temperature =
                        parse_number(raw, origin, lineno) * 1e-9;
                else if (key == "horizontal_velocity_m_s")
                    f.scenario.beam.horizontal_velocity = parse_number(raw, origin, lineno);
                else if (key == "lifetime_s")
                    f.scenario.beam.lifetime = parse_number(raw, origin, lineno);
                else
                    fail(origin, lineno, "unknown key \"beam." + key + "\"");
            } else if (section == "absorption") {
                if (key == "kappa_per_m")
                    f.scenario.kappa = parse_number(raw, origin, lineno);
                else if (key == "kappa_free_per_m")
                    f.scenario.kappa_free = parse_number(raw, origin, lineno);
                else if (key == "max_states")
                    f.scenario.max_states = parse_int(raw, origin, lineno);
                else
                    fail(origin, lineno, "unknown key \"absorption." + key + "\"");
            } else { // sweep
                if (key == "dh_min_um")
                    f.sweep.dh_min = parse_number(raw, origin, lineno) * 1e-6;
                else if (key == "dh_max_um")
                    f.sweep.dh_max = parse_number(raw, origin, lineno) * 1e-6;
                else if (key == "steps")
                    f.sweep.steps = parse_int(raw, origin, lineno);
                else if (key == "smear_um")
                    f.sweep.smear = parse_number(raw, origin, lineno) * 1e-6;
                else
                    fail(origin, lineno, "unknown key \"sweep." + key + "\"");
            }
        } catch (const ValidationError& e) {
            // enum parsers throw without location context; add it
            std::string what = e.what();
            if (what.rfind(origin, 0) == 0) throw;
            fail(origin, lineno, what);
        }
    }

    try {
        f.scenario.validate();
        f.sweep.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(origin + ": " + e.what());
    }
    return f;
}

void write_scenario_config(const ScenarioFile& f, std::ostream& os) {
    os << "orientation = \"" << orientation_name(f.scenario.orientation) << "\"\n";
    os << "model_family = \"" << family_name(f.scenario.model_family) << "\"\n";
    os << "\n[geometry]\n";
    os << "mirror_length_m = " << shortest(f.scenario.geometry.mirror_length) << '\n';
    os << "absorber_length_m = " << shortest(f.scenario.geometry.absorber_length) << '\n';
    os << "slit_width_um = " << shortest_in_unit(f.scenario.geometry.slit_width, 1e-6) << '\n';
    os << "\n[beam]\n";
    os << "transverse_temperature_nk = "
       << shortest_in_unit(f.scenario.beam.transverse_temperature, 1e-9) << '\n';
    os << "horizontal_velocity_m_s = " << shortest(f.scenario.beam.horizontal_velocity) << '\n';
    os << "lifetime_s = " << shortest(f.scenario.beam.lifetime) << '\n';
    os << "\n[absorption]\n";
    os << "kappa_per_m = " << shortest(f.scenario.kappa) << '\n';
    os << "kappa_free_per_m = " << shortest(f.scenario.kappa_free) << '\n';
    os << "max_states = " << f.scenario.max_states << '\n';
    os << "\n[sweep]\n";
    os << "dh_min_um = " << shortest_in_unit(f.sweep.dh_min, 1e-6) << '\n';
    os << "dh_max_um = " << shortest_in_unit(f.sweep.dh_max, 1e-6) << '\n';
    os << "steps = " << f.sweep.steps << '\n';
    os << "smear_um = " << shortest_in_unit(f.sweep.smear, 1e-6) << '\n';
}

} // namespace qbounce
