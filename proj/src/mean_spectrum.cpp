#include "cperiod/mean_spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "cperiod/errors.hpp"
#include "cperiod/parallel.hpp"
#include "cperiod/rotation_orbit.hpp"

namespace cperiod {
namespace {

constexpr std::size_t kChunk = 4096;

struct Integral {
  Vector value;
  double sup = 0.0;  // max ||f|| over the quadrature nodes
};

// Composite trapezoid of e^{-irs} f(s) over [a, b] with about step-sized cells.
// Chunk sums are combined in index order, so the result does not depend on
// the thread count.
Integral trapezoid(const Signal& f, double r, double a, double b, double step) {
  const auto cells = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / step - 1e-9)));
  const double h = (b - a) / static_cast<double>(cells);
  const std::size_t nodes = cells + 1;
  const std::size_t chunks = (nodes + kChunk - 1) / kChunk;
  std::vector<Vector> sums(chunks, Vector::Zero(f.dim()));
  std::vector<double> sups(chunks, 0.0);
  parallel_for(chunks, [&](std::size_t cb, std::size_t ce) {
    for (std::size_t c = cb; c < ce; ++c) {
      Vector acc = Vector::Zero(f.dim());
      double sup = 0.0;
      for (std::size_t i = c * kChunk; i < std::min(nodes, (c + 1) * kChunk); ++i) {
        const double s = i == cells ? b : a + static_cast<double>(i) * h;
        const Vector v = f.eval_unchecked(s);
        sup = std::max(sup, v.norm());
        const double w = (i == 0 || i == cells) ? 0.5 : 1.0;
        acc += (w * std::polar(1.0, -r * s)) * v;
      }
      sums[c] = acc;
      sups[c] = sup;
    }
  });
  Integral out{Vector::Zero(f.dim()), 0.0};
  for (std::size_t c = 0; c < chunks; ++c) {
    out.value += sums[c];
    out.sup = std::max(out.sup, sups[c]);
  }
  out.value *= h;
  return out;
}

void require_horizons(const std::vector<double>& horizons) {
  if (horizons.empty()) throw ValidationError("at least one horizon is required");
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    if (!(horizons[i] > 0.0) || !std::isfinite(horizons[i])) throw ValidationError("horizons must be positive");
    if (i > 0 && !(horizons[i] > horizons[i - 1])) throw ValidationError("horizons must be strictly increasing");
  }
}

}  // namespace

double quadrature_step(const Signal& f, double r, const MeanOptions& options) {
  if (options.step) {
    if (!(*options.step > 0.0)) throw ValidationError("quadrature step must be positive");
    return *options.step;
  }
  if (f.bandwidth()) return std::min(0.05, 0.05 / (*f.bandwidth() + std::abs(r)));
  return 0.01;
}

std::vector<double> doubling_horizons(double T0, int count) {
  if (!(T0 > 0.0) || count < 1) throw ValidationError("doubling horizons need T0 > 0 and count >= 1");
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(T0 * std::ldexp(1.0, k));
  return out;
}

MeanEstimate bohr_coefficient(const Signal& f, double r, const std::vector<double>& horizons, double tol,
                              const MeanOptions& options) {
  require_horizons(horizons);
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
  const double step = quadrature_step(f, r, options);
  MeanEstimate out;
  out.tol = tol;
  out.horizons = horizons;
  Vector running = Vector::Zero(f.dim());
  double previous = 0.0;
  for (double T : horizons) {
    running += trapezoid(f, r, previous, T, step).value;
    out.values.push_back(running / T);
    previous = T;
  }
  if (out.values.size() >= 2) {
    const auto n = out.values.size();
    out.converged = (out.values[n - 1] - out.values[n - 2]).norm() <= tol;
  }
  if (out.converged) out.limit = out.values.back();
  return out;
}

MeanEstimate cesaro_mean(const Signal& f, const std::vector<double>& horizons, double tol,
                         const MeanOptions& options) {
  return bohr_coefficient(f, 0.0, horizons, tol, options);
}

std::vector<SpectralLine> spectrum_scan(const Signal& f, const std::vector<double>& frequencies, double threshold,
                                        const std::vector<double>& horizons, double tol,
                                        const MeanOptions& options) {
  if (!(threshold > 0.0)) throw ValidationError("spectrum threshold must be positive");
  std::vector<SpectralLine> out;
  for (double r : frequencies) {
    const auto est = bohr_coefficient(f, r, horizons, tol, options);
    if (est.converged && est.limit->norm() >= threshold) out.push_back({r, *est.limit});
  }
  return out;
}

MeanZeroResult mean_zero_check(const Signal& f, const UnitComplex& c, const PeriodScanReport& scan, int n_count,
                               const MeanOptions& options) {
  if (!c.is_rational()) throw WrongKindError("mean-zero check needs a rational argument");
  if (c.is_one()) throw ValidationError("mean-zero check needs c != 1");
  if (scan.accepted.empty()) throw ValidationError("mean-zero check needs a nonempty period scan");
  if (n_count < 1) throw ValidationError("mean-zero check needs n_count >= 1");

  MeanZeroResult out;
  out.tau = scan.accepted.front().first;
  out.order = root_structure(c).order;
  const double step = quadrature_step(f, 0.0, options);
  const double eps = scan.epsilon;
  const auto m = out.order;

  Vector running = Vector::Zero(f.dim());
  std::vector<Vector> means;
  for (int n = 1; n <= n_count; ++n) {
    const auto piece = trapezoid(f, 0.0, (n - 1) * out.tau, n * out.tau, step);
    running += piece.value;
    out.sup_norm = std::max(out.sup_norm, piece.sup);
    means.push_back(running / (n * out.tau));
  }
  out.passed = true;
  for (int n = 1; n <= n_count; ++n) {
    const double T = n * out.tau;
    const double mean = means[n - 1].norm();
    const double bound =
        (static_cast<double>(n / m) * eps * static_cast<double>(m * (m - 1)) / 2.0 +
         static_cast<double>(n % m) * out.sup_norm) / n;
    out.curve.emplace_back(T, mean);
    out.bounds.push_back(bound);
    if (mean > bound + 1e-9) out.passed = false;
  }
  return out;
}

}  // namespace cperiod
