#ifndef QBOUNCE_CSV_HPP
#define QBOUNCE_CSV_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "qbounce/constants.hpp"
#include "qbounce/eigen.hpp"
#include "qbounce/fit.hpp"
#include "qbounce/transmission.hpp"

namespace qbounce {

// %.12g, '.' decimal, no locale. Shared by every writer so identical inputs
// give byte-identical files.
std::string format_g(double v);

// delta_h_um,n_count
void write_curve_csv(const TransmissionCurve& curve, std::ostream& os);

// x_m,n_count
void write_leakage_csv(const std::vector<CurvePoint>& points, std::ostream& os);

// n,energy_peV,turning_point_um (turning point = E / m g, the height a
// classical neutron of that energy reaches)
void write_spectrum_csv(const std::vector<EigenSolution>& states, const PhysicalConstants& c,
                        std::ostream& os);

// z_m,psi,psi_squared
void write_wavefunction_csv(const EigenSolution& s, std::ostream& os);

// delta_h_um,n_count (synthetic data)
void write_data_csv(const std::vector<DataPoint>& points, std::ostream& os);

// Accepts `delta_h_um,n_count` (micrometers converted to meters) or
// `x_m,n_count`; the header picks the unit. Malformed rows throw
// ValidationError as origin:line: message.
std::vector<DataPoint> read_data_csv(std::istream& is, const std::string& origin);

} // namespace qbounce

#endif
