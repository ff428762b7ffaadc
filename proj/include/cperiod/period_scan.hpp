#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cperiod/grid.hpp"
#include "cperiod/signal.hpp"
#include "cperiod/unit_complex.hpp"

namespace cperiod {

/// Grid maximum of ||f(t + tau) - c f(t)||.
struct Defect {
  double value = 0.0;
  /// value + L * step when a Lipschitz constant is registered: bounds the
  /// supremum over the whole grid interval, not just its nodes.
  std::optional<double> certified;
  /// 2 * tail bound of the truncated series over the touched horizon; the
  /// defect of the untruncated limit is within this of value.
  double tail_slack = 0.0;
};

Defect defect(const Signal& f, double tau, const UnitComplex& c, const Grid& grid);

/// Same maximum over an explicit node list (no certified slack).
double defect_on_nodes(const Signal& f, double tau, const UnitComplex& c, std::span<const double> nodes);

using TauDefect = std::pair<double, double>;

struct PeriodScanReport {
  UnitComplex c;
  double epsilon = 0.0;
  double tau_max = 0.0;
  double tau_step = 0.0;
  /// (tau, defect) with defect <= epsilon, tau strictly increasing.
  std::vector<TauDefect> accepted;
  /// Largest gap between consecutive members of {0, accepted taus, tau_max}.
  double max_gap = 0.0;
  Grid grid;
  /// Set for Stepanov scans.
  std::optional<double> stepanov_p;
  /// Full (tau, defect) curve, filled only when requested.
  std::vector<TauDefect> curve;
};

struct ScanOptions {
  /// Compute every defect exactly instead of stopping at the first node above epsilon.
  bool record_curve = false;
};

/// Tests tau = k * tau_step for k = 1, 2, ... while tau <= tau_max.
PeriodScanReport scan_periods(const Signal& f, const UnitComplex& c, double epsilon, double tau_max,
                              double tau_step, const Grid& grid, const ScanOptions& options = {});

/// max_gap of {0, taus..., tau_max}; tau_max when taus is empty.
double max_gap_of(const std::vector<TauDefect>& accepted, double tau_max);

/// Length l such that every window of length l in [0, tau_max] meets an
/// accepted tau. A scan can only witness density, so an empty report yields nullopt.
std::optional<double> relative_density(const PeriodScanReport& report);

struct RecurrenceReport {
  std::vector<double> alphas;
  std::vector<double> defects;
};

/// Defects of f at each alpha_n; alphas must be positive and strictly increasing.
RecurrenceReport recurrence_defects(const Signal& f, const UnitComplex& c, const std::vector<double>& alphas,
                                    std::optional<Grid> grid = std::nullopt);

struct SemiCheckResult {
  std::optional<double> period;
  int m_checked = 0;
};

/// First p with ||f(t + m p) - c^m f(t)|| <= epsilon on grid for every 1 <= m <= m_max.
/// Negative m are never needed: positive m already characterize semi-c-periodicity.
SemiCheckResult semi_c_check(const Signal& f, const UnitComplex& c, double epsilon,
                             const std::vector<double>& p_candidates, int m_max, const Grid& grid);

struct PowerDefectBound {
  double lhs = 0.0;  // defect(f, l tau, c^l)
  double rhs = 0.0;  // l * defect(f, tau, c)
};

PowerDefectBound power_defect_bound(const Signal& f, const UnitComplex& c, double tau, int l, const Grid& grid);

/// Certifies the (epsilon/2, c^{l_k})-periods of base as (epsilon, c')-periods
/// via ||f(t+tau) - c' f(t)|| <= ||f(t+tau) - c^{l_k} f(t)|| + |c^{l_k} - c'| ||f||.
/// Throws TransferError naming the violated inequality.
std::vector<double> transfer_periods(const PeriodScanReport& base, const UnitComplex& c_prime, double sup_norm_f,
                                     double epsilon);

/// Defect restricted to nodes with |t| >= M and |t + tau| >= M. Throws EmptyMaskError when no node qualifies.
double defect_beyond(const Signal& f, double tau, const UnitComplex& c, const Grid& grid, double M);

struct Extension {
  Vector value;
  double tau = 0.0;
  /// Distance to the true c-almost periodic extension, from one application of the period relation.
  double error_bound = 0.0;
};

/// Extends a half-line signal to x < 0 by c^{-1} f(x + tau) with the smallest
/// accepted tau >= |x|. Throws ExtensionError when no such tau exists.
Extension extend_half_line(const Signal& f, const UnitComplex& c, double epsilon, double x,
                           const PeriodScanReport& report);

}  // namespace cperiod
