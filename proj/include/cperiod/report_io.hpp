#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cperiod/convolution.hpp"
#include "cperiod/mean_spectrum.hpp"
#include "cperiod/rotation_orbit.hpp"
#include "cperiod/solver.hpp"

namespace cperiod {

using nlohmann::json;

/// {re, im, arg_kind, p, q} or {re, im, arg_kind, phi}.
json to_json(const UnitComplex& c);
/// Accepts {arg_kind: "rational", p, q}, {arg_kind: "irrational", phi} or
/// {re, im} (treated as irrational with phi = arg / pi). re/im given next to a
/// tag are cross-checked. Unknown keys throw ValidationError; |c| != 1 throws InvalidMultiplier.
UnitComplex unit_complex_from_json(const json& j);

/// [[re, im], ...] per component.
json to_json(const Vector& v);
json to_json(const Grid& g);
Grid grid_from_json(const json& j);

json to_json(const Defect& d);
/// {c, epsilon, tau_max, tau_step, accepted, max_gap, grid, p?}.
json to_json(const PeriodScanReport& r);
json to_json(const RecurrenceReport& r);
json to_json(const OrbitApproximants& o);
json to_json(const MeanEstimate& m);
json to_json(const MeanZeroResult& m);
json to_json(const std::vector<SpectralLine>& lines);
json to_json(const ConvolutionValue& v);
/// {iterations, residual, M1, converged, residual_history}.
json solve_report(const Trajectory& u, double M1);

/// Writes via a temporary sibling file and rename.
void write_file_atomic(const std::string& path, const std::string& content);
void write_json(const std::string& path, const json& j);

/// Rows of numbers under a header line.
std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);
std::string curve_csv(const std::vector<std::pair<double, double>>& curve, const std::string& x, const std::string& y);
/// t, Re u_1, Im u_1, Re u_2, ...
std::string trajectory_csv(const Trajectory& u);
std::string values_csv(const std::vector<double>& ts, const std::vector<Vector>& values);

}  // namespace cperiod
