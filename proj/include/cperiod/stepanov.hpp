#pragma once

#include "cperiod/period_scan.hpp"

namespace cperiod {

/// Exponent p >= 1 and the node count of the composite trapezoid rule on each unit window.
struct StepanovParams {
  double p = 2.0;
  int nodes_per_window = 64;
};

/// max over window starts t of (int_t^{t+1} ||f||^p)^{1/p}.
double stepanov_norm(const Signal& f, const StepanovParams& params, const Grid& starts);

/// max over window starts t of (int_t^{t+1} ||f(s + tau) - c f(s)||^p ds)^{1/p}:
/// the c-defect of the lift s -> f(t + s) in the L^p([0,1]) metric.
double stepanov_defect(const Signal& f, double tau, const UnitComplex& c, const StepanovParams& params,
                       const Grid& starts);

/// scan_periods with stepanov_defect in place of the pointwise defect.
PeriodScanReport stepanov_scan(const Signal& f, const UnitComplex& c, double epsilon, const StepanovParams& params,
                               double tau_max, double tau_step, const Grid& starts,
                               const ScanOptions& options = {});

}  // namespace cperiod
