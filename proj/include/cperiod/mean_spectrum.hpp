#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cperiod/period_scan.hpp"

namespace cperiod {

/// Long-run averages (1/T) int_0^T e^{-irs} f(s) ds at increasing horizons.
struct MeanEstimate {
  std::vector<double> horizons;
  std::vector<Vector> values;
  /// ||values[last] - values[last-1]|| <= tol.
  bool converged = false;
  std::optional<Vector> limit;
  double tol = 0.0;
};

struct MeanOptions {
  /// Trapezoid step; when unset it is derived from the signal bandwidth and r.
  std::optional<double> step;
};

/// Step used for frequency r: explicit step, else min(0.05, 0.05 / (bandwidth + |r|)), else 0.01.
double quadrature_step(const Signal& f, double r, const MeanOptions& options);

/// T0, 2 T0, 4 T0, ...
std::vector<double> doubling_horizons(double T0, int count);

/// Bohr-Fourier coefficient estimates. Horizons must be positive and strictly
/// increasing; integrals are accumulated incrementally across them.
MeanEstimate bohr_coefficient(const Signal& f, double r, const std::vector<double>& horizons, double tol,
                              const MeanOptions& options = {});

MeanEstimate cesaro_mean(const Signal& f, const std::vector<double>& horizons, double tol,
                         const MeanOptions& options = {});

struct SpectralLine {
  double r = 0.0;
  Vector coefficient;
};

/// Frequencies whose coefficient estimate converged with norm >= threshold.
std::vector<SpectralLine> spectrum_scan(const Signal& f, const std::vector<double>& frequencies, double threshold,
                                        const std::vector<double>& horizons, double tol,
                                        const MeanOptions& options = {});

/// Decay of the means (1/(n tau)) int_0^{n tau} f for an accepted tau.
///
/// For c of order m (c^m = 1, c != 1) and an (eps, c)-period tau, blocks of m
/// consecutive translates cancel up to eps * m (m - 1) / 2, which gives
///   ||mean(n tau)|| <= (floor(n/m) eps m (m-1)/2 + (n mod m) S) / n
/// with S the sup of ||f|| on [0, n tau].
struct MeanZeroResult {
  bool passed = false;
  double tau = 0.0;
  std::int64_t order = 0;
  double sup_norm = 0.0;
  std::vector<std::pair<double, double>> curve;  // (T, ||mean||)
  std::vector<double> bounds;                    // admissible ||mean|| per curve point
};

/// Throws WrongKindError for irrational c, ValidationError for c = 1 or an empty scan.
MeanZeroResult mean_zero_check(const Signal& f, const UnitComplex& c, const PeriodScanReport& scan, int n_count = 32,
                               const MeanOptions& options = {});

}  // namespace cperiod
