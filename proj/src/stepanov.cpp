#include "cperiod/stepanov.hpp"

#include <algorithm>
#include <cmath>

#include "cperiod/errors.hpp"
#include "cperiod/parallel.hpp"

namespace cperiod {
namespace {

struct Window {
  std::vector<double> offsets;
  std::vector<double> weights;  // trapezoid weights, summing to 1
  double p;

  explicit Window(const StepanovParams& params) : p(params.p) {
    if (!(params.p >= 1.0) || !std::isfinite(params.p)) throw ValidationError("Stepanov exponent must be >= 1");
    if (params.nodes_per_window < 8) throw ValidationError("Stepanov windows need at least 8 nodes");
    const int n = params.nodes_per_window;
    const double h = 1.0 / (n - 1);
    for (int j = 0; j < n; ++j) {
      offsets.push_back(j * h);
      weights.push_back(j == 0 || j == n - 1 ? h / 2.0 : h);
    }
  }

  // (sum_j w_j |g_j|^p)^{1/p} for the moduli produced by modulus_at(j).
  template <class F>
  double norm(F&& modulus_at) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < offsets.size(); ++j) acc += weights[j] * std::pow(modulus_at(j), p);
    return std::pow(acc, 1.0 / p);
  }
};

void require_windows(const Signal& f, const Grid& starts) { f.require_grid(starts); }

}  // namespace

double stepanov_norm(const Signal& f, const StepanovParams& params, const Grid& starts) {
  const Window w(params);
  require_windows(f, starts);
  return parallel_max(starts.size(), [&](std::size_t i) {
    const double t = starts[i];
    return w.norm([&](std::size_t j) { return f.eval_unchecked(t + w.offsets[j]).norm(); });
  });
}

double stepanov_defect(const Signal& f, double tau, const UnitComplex& c, const StepanovParams& params,
                       const Grid& starts) {
  if (!(tau > 0.0)) throw ValidationError("shift tau must be positive");
  const Window w(params);
  require_windows(f, starts);
  const complex cv = c.value();
  return parallel_max(starts.size(), [&](std::size_t i) {
    const double t = starts[i];
    return w.norm([&](std::size_t j) {
      const double s = t + w.offsets[j];
      return (f.eval_unchecked(s + tau) - cv * f.eval_unchecked(s)).norm();
    });
  });
}

PeriodScanReport stepanov_scan(const Signal& f, const UnitComplex& c, double epsilon, const StepanovParams& params,
                               double tau_max, double tau_step, const Grid& starts, const ScanOptions& options) {
  if (!(epsilon > 0.0)) throw ValidationError("scan needs epsilon > 0");
  if (!(tau_step > 0.0)) throw ValidationError("scan needs tau_step > 0");
  if (!(tau_max >= tau_step)) throw ValidationError("scan needs tau_max >= tau_step");
  const Window w(params);
  require_windows(f, starts);

  const std::size_t nodes = w.offsets.size();
  std::vector<Vector> cf(starts.size() * nodes);
  const complex cv = c.value();
  for (std::size_t i = 0; i < starts.size(); ++i) {
    for (std::size_t j = 0; j < nodes; ++j) cf[i * nodes + j] = cv * f.eval_unchecked(starts[i] + w.offsets[j]);
  }

  const auto count = static_cast<std::size_t>(std::floor(tau_max / tau_step * (1.0 + 1e-12)));
  std::vector<double> d(count);
  parallel_for(count, [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const double tau = static_cast<double>(k + 1) * tau_step;
      double m = 0.0;
      for (std::size_t i = 0; i < starts.size(); ++i) {
        const double t = starts[i];
        m = std::max(m, w.norm([&](std::size_t j) {
          return (f.eval_unchecked(t + w.offsets[j] + tau) - cf[i * nodes + j]).norm();
        }));
        if (!options.record_curve && m > epsilon) break;
      }
      d[k] = m;
    }
  });

  PeriodScanReport report{c, epsilon, tau_max, tau_step, {}, 0.0, starts, params.p, {}};
  for (std::size_t k = 0; k < count; ++k) {
    const double tau = static_cast<double>(k + 1) * tau_step;
    if (d[k] <= epsilon) report.accepted.emplace_back(tau, d[k]);
    if (options.record_curve) report.curve.emplace_back(tau, d[k]);
  }
  report.max_gap = max_gap_of(report.accepted, tau_max);
  return report;
}

}  // namespace cperiod
