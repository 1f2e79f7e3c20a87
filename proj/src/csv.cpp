#include "qbounce/csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

#include "qbounce/errors.hpp"

namespace qbounce {

namespace {

const char* kCurveHeader = "delta_h_um,n_count";
const char* kLeakageHeader = "x_m,n_count";

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

double parse_double(const std::string& field, const std::string& origin, int lineno) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw ValidationError(origin + ":" + std::to_string(lineno) + ": not a number: \"" +
                              field + "\"");
    return v;
}

} // namespace

std::string format_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_curve_csv(const TransmissionCurve& curve, std::ostream& os) {
    os << kCurveHeader << '\n';
    for (const CurvePoint& p : curve.points)
        os << format_g(p.delta_h * 1e6) << ',' << format_g(p.n_count) << '\n';
}

void write_leakage_csv(const std::vector<CurvePoint>& points, std::ostream& os) {
    os << kLeakageHeader << '\n';
    for (const CurvePoint& p : points)
        os << format_g(p.delta_h) << ',' << format_g(p.n_count) << '\n';
}

void write_spectrum_csv(const std::vector<EigenSolution>& states, const PhysicalConstants& c,
                        std::ostream& os) {
    os << "n,energy_peV,turning_point_um\n";
    for (const EigenSolution& s : states)
        os << s.n << ',' << format_g(s.energy.pev()) << ','
           << format_g(classical_height(c, s.energy) * 1e6) << '\n';
}

void write_wavefunction_csv(const EigenSolution& s, std::ostream& os) {
    os << "z_m,psi,psi_squared\n";
    for (std::size_t i = 0; i < s.z.size(); ++i)
        os << format_g(s.z[i]) << ',' << format_g(s.psi[i]) << ','
           << format_g(s.psi[i] * s.psi[i]) << '\n';
}

void write_data_csv(const std::vector<DataPoint>& points, std::ostream& os) {
    os << kCurveHeader << '\n';
    for (const DataPoint& p : points)
        os << format_g(p.x * 1e6) << ',' << format_g(p.n) << '\n';
}

std::vector<DataPoint> read_data_csv(std::istream& is, const std::string& origin) {
    std::string line;
    int lineno = 0;
    if (!std::getline(is, line)) throw ValidationError(origin + ": empty file");
    ++lineno;
    strip_cr(line);

    double unit = 0.0;
    if (line == kCurveHeader)
        unit = 1e-6;
    else if (line == kLeakageHeader)
        unit = 1.0;
    else
        throw ValidationError(origin + ":1: unrecognized header \"" + line + "\" (expected " +
                              kCurveHeader + " or " + kLeakageHeader + ")");

    std::vector<DataPoint> out;
    while (std::getline(is, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw ValidationError(origin + ":" + std::to_string(lineno) +
                                  ": expected exactly two comma-separated fields");
        const double x = parse_double(line.substr(0, comma), origin, lineno);
        const double n = parse_double(line.substr(comma + 1), origin, lineno);
        out.push_back({x * unit, n});
    }
    if (out.empty()) throw ValidationError(origin + ": no data rows");
    return out;
}

} // namespace qbounce
