#include "cperiod/period_scan.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cperiod/errors.hpp"
#include "cperiod/parallel.hpp"

namespace cperiod {
namespace {

void require_positive_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ValidationError("shift tau must be positive and finite");
}

double horizon_of(const Grid& grid, double tau) {
  return std::max({std::abs(grid.start()), std::abs(grid.last()), std::abs(grid.start() + tau),
                   std::abs(grid.last() + tau)});
}

std::vector<Vector> scaled_samples(const Signal& f, const UnitComplex& c, const Grid& grid) {
  std::vector<Vector> out(grid.size());
  const complex cv = c.value();
  parallel_for(grid.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = cv * f.eval_unchecked(grid[i]);
  });
  return out;
}

// Max over nodes of ||f(t_i + tau) - cf_i||, abandoning the sweep once the
// running max exceeds cutoff. Returns a value > cutoff in that case.
double sweep(const Signal& f, double tau, const Grid& grid, const std::vector<Vector>& cf, double cutoff) {
  double m = 0.0;
  for (std::size_t i = 0; i < cf.size(); ++i) {
    m = std::max(m, (f.eval_unchecked(grid[i] + tau) - cf[i]).norm());
    if (m > cutoff) return m;
  }
  return m;
}

}  // namespace

Defect defect(const Signal& f, double tau, const UnitComplex& c, const Grid& grid) {
  require_positive_tau(tau);
  f.require_grid(grid);
  const complex cv = c.value();
  Defect out;
  out.value = parallel_max(grid.size(), [&](std::size_t i) {
    const double t = grid[i];
    return (f.eval_unchecked(t + tau) - cv * f.eval_unchecked(t)).norm();
  });
  if (f.lipschitz()) out.certified = out.value + *f.lipschitz() * grid.step();
  out.tail_slack = 2.0 * f.tail_bound(horizon_of(grid, tau));
  return out;
}

double defect_on_nodes(const Signal& f, double tau, const UnitComplex& c, std::span<const double> nodes) {
  const complex cv = c.value();
  for (double t : nodes) {
    if (!f.contains(t)) throw DomainError("node outside the signal domain");
  }
  return parallel_max(nodes.size(), [&](std::size_t i) {
    const double t = nodes[i];
    return (f.eval_unchecked(t + tau) - cv * f.eval_unchecked(t)).norm();
  });
}

double max_gap_of(const std::vector<TauDefect>& accepted, double tau_max) {
  if (accepted.empty()) return tau_max;
  double gap = accepted.front().first;
  for (std::size_t i = 1; i < accepted.size(); ++i) gap = std::max(gap, accepted[i].first - accepted[i - 1].first);
  return std::max(gap, tau_max - accepted.back().first);
}

PeriodScanReport scan_periods(const Signal& f, const UnitComplex& c, double epsilon, double tau_max,
                              double tau_step, const Grid& grid, const ScanOptions& options) {
  if (!(epsilon > 0.0)) throw ValidationError("scan needs epsilon > 0");
  if (!(tau_step > 0.0)) throw ValidationError("scan needs tau_step > 0");
  if (!(tau_max >= tau_step)) throw ValidationError("scan needs tau_max >= tau_step");
  f.require_grid(grid);

  const auto count = static_cast<std::size_t>(std::floor(tau_max / tau_step * (1.0 + 1e-12)));
  const auto cf = scaled_samples(f, c, grid);
  const double cutoff = options.record_curve ? INFINITY : epsilon;
  std::vector<double> d(count);
  parallel_for(count, [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) d[k] = sweep(f, static_cast<double>(k + 1) * tau_step, grid, cf, cutoff);
  });

  PeriodScanReport report{c, epsilon, tau_max, tau_step, {}, 0.0, grid, std::nullopt, {}};
  for (std::size_t k = 0; k < count; ++k) {
    const double tau = static_cast<double>(k + 1) * tau_step;
    if (d[k] <= epsilon) report.accepted.emplace_back(tau, d[k]);
    if (options.record_curve) report.curve.emplace_back(tau, d[k]);
  }
  report.max_gap = max_gap_of(report.accepted, tau_max);
  return report;
}

std::optional<double> relative_density(const PeriodScanReport& report) {
  if (report.accepted.empty()) return std::nullopt;
  return report.max_gap;
}

RecurrenceReport recurrence_defects(const Signal& f, const UnitComplex& c, const std::vector<double>& alphas,
                                    std::optional<Grid> grid) {
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0)) throw ValidationError("alphas must be positive");
    if (i > 0 && !(alphas[i] > alphas[i - 1])) throw ValidationError("alphas must be strictly increasing");
  }
  const Grid g = grid.value_or(default_grid(f));
  RecurrenceReport out;
  out.alphas = alphas;
  for (double a : alphas) out.defects.push_back(defect(f, a, c, g).value);
  return out;
}

SemiCheckResult semi_c_check(const Signal& f, const UnitComplex& c, double epsilon,
                             const std::vector<double>& p_candidates, int m_max, const Grid& grid) {
  if (!(epsilon > 0.0)) throw ValidationError("semi_c_check needs epsilon > 0");
  if (m_max < 1) throw ValidationError("semi_c_check needs m_max >= 1");
  f.require_grid(grid);

  std::vector<Vector> samples(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) samples[i] = f.eval_unchecked(grid[i]);
  std::vector<complex> powers;
  for (int m = 1; m <= m_max; ++m) powers.push_back(c.pow(m).value());

  SemiCheckResult result;
  result.m_checked = m_max;
  for (double p : p_candidates) {
    require_positive_tau(p);
    bool ok = true;
    for (int m = 1; m <= m_max && ok; ++m) {
      const double shift = m * p;
      const complex cm = powers[m - 1];
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if ((f.eval_unchecked(grid[i] + shift) - cm * samples[i]).norm() > epsilon) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      result.period = p;
      return result;
    }
  }
  return result;
}

PowerDefectBound power_defect_bound(const Signal& f, const UnitComplex& c, double tau, int l, const Grid& grid) {
  if (l < 1) throw ValidationError("power_defect_bound needs l >= 1");
  PowerDefectBound out;
  out.lhs = defect(f, l * tau, c.pow(l), grid).value;
  out.rhs = l * defect(f, tau, c, grid).value;
  return out;
}

std::vector<double> transfer_periods(const PeriodScanReport& base, const UnitComplex& c_prime, double sup_norm_f,
                                     double epsilon) {
  if (!(epsilon > 0.0)) throw TransferError("epsilon must be positive");
  if (!(sup_norm_f >= 0.0)) throw TransferError("sup norm must be nonnegative");
  if (base.epsilon > epsilon / 2.0) {
    std::ostringstream os;
    os << "base.epsilon <= epsilon/2 fails: " << base.epsilon << " > " << epsilon / 2.0;
    throw TransferError(os.str());
  }
  const double distance = std::abs(base.c.value() - c_prime.value());
  if (sup_norm_f > 0.0 && !(distance < epsilon / (2.0 * sup_norm_f))) {
    std::ostringstream os;
    os << "|c^l - c'| < epsilon/(2 sup|f|) fails: " << distance << " >= " << epsilon / (2.0 * sup_norm_f);
    throw TransferError(os.str());
  }
  std::vector<double> taus;
  for (const auto& [tau, d] : base.accepted) taus.push_back(tau);
  return taus;
}

double defect_beyond(const Signal& f, double tau, const UnitComplex& c, const Grid& grid, double M) {
  require_positive_tau(tau);
  f.require_grid(grid);
  std::vector<double> nodes;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    if (std::abs(t) >= M && std::abs(t + tau) >= M) nodes.push_back(t);
  }
  if (nodes.empty()) throw EmptyMaskError("no grid node satisfies |t| >= M and |t + tau| >= M");
  return defect_on_nodes(f, tau, c, nodes);
}

Extension extend_half_line(const Signal& f, const UnitComplex& c, double epsilon, double x,
                           const PeriodScanReport& report) {
  if (!(x < 0.0)) throw ValidationError("extend_half_line needs x < 0");
  for (const auto& [tau, d] : report.accepted) {
    if (tau >= -x && d <= epsilon) {
      Extension ext;
      ext.tau = tau;
      ext.value = c.inverse().value() * f(x + tau);
      ext.error_bound = epsilon;
      return ext;
    }
  }
  std::ostringstream os;
  os << "no accepted tau >= " << -x << " with defect <= " << epsilon;
  throw ExtensionError(os.str());
}

}  // namespace cperiod
