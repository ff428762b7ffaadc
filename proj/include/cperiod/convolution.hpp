#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cperiod/signal.hpp"

namespace cperiod {

enum class KernelKind { Exponential, Fractional, Heat };

std::string to_string(KernelKind kind);

/// Nonnegative scalar kernel u -> R(u) acting as R(u) times the identity on C^d.
class Kernel {
 public:
  /// e^{-omega u}, omega > 0.
  static Kernel exponential(double omega);
  /// u^{gamma-1} on (0, 1], u^{-gamma-1} beyond; gamma in (0, 1).
  static Kernel fractional(double gamma);
  /// Gaussian e^{-u^2/(4 t0)} / (2 sqrt(pi t0)) of unit mass on the line; t0 > 0.
  static Kernel heat(double t0);
  static Kernel from_json(const nlohmann::json& j);

  KernelKind kind() const noexcept { return kind_; }
  /// omega, gamma or t0.
  double parameter() const noexcept { return param_; }

  double operator()(double u) const;
  /// int_0^inf R for the causal kernels; the full-line mass 1 for heat.
  double integral() const;
  /// int_T^inf R, T >= 0 (causal kernels only).
  double tail_integral(double T) const;
  /// Smallest truncation with tail_integral <= tol, capped at kMaxFractionalTruncation.
  double truncation_for(double tol) const;

  nlohmann::json to_json() const;

 private:
  Kernel(KernelKind kind, double param) : kind_(kind), param_(param) {}
  void require_causal(const char* what) const;

  KernelKind kind_;
  double param_;
};

/// Fractional tails decay like T^{-gamma}; reaching the 1e-8 target would need
/// astronomically long windows, so truncation stops here and the tail is reported.
constexpr double kMaxFractionalTruncation = 2000.0;
constexpr double kDefaultKernelTailTol = 1e-8;

struct QTail {
  double value = 0.0;
  /// |value - sum over all windows| <= error_bound.
  double error_bound = 0.0;
  long windows = 0;
};

/// sum_k (int_k^{k+1} R^q)^{1/q}. Throws SingularWindowError when the first
/// window diverges, i.e. (gamma - 1) q <= -1 for fractional kernels.
QTail kernel_q_tail(const Kernel& kernel, double q);

/// q / (q - 1) for q > 1.
double conjugate_exponent(double q);

/// (gamma - 1) q / (q - 1) > -1, for gamma in (0, 1) and q > 1. Equivalent to
/// kernel_q_tail(fractional(gamma), conjugate_exponent(q)) being finite.
bool gejacina_admissible(double gamma, double q);

/// Weights for int_0^T R(u) g(u) du ~ sum_j weights[j] g(j h), exact for g
/// piecewise linear on the nodes. Cells containing u = 1 are split for the
/// fractional branch change; the cell at 0 integrates u^{gamma-1} exactly.
struct ProductRule {
  double step = 0.0;
  double truncation = 0.0;  // cells * step
  std::vector<double> weights;
  double tail = 0.0;        // tail_integral(truncation)
};

ProductRule product_rule(const Kernel& kernel, double truncation, double step);

struct ConvolveOptions {
  /// Defaults to kernel.truncation_for(kDefaultKernelTailTol).
  std::optional<double> truncation;
  double step = 1e-3;
};

struct ConvolutionValue {
  Vector value;
  double truncation = 0.0;
  /// sup ||f|| over the quadrature nodes times int_T^inf R.
  double tail_bound = 0.0;
};

/// int_{t-T}^t R(t - s) f(s) ds.
ConvolutionValue convolve_line(const Kernel& kernel, const Signal& f, double t, const ConvolveOptions& options = {});

/// Same with a prebuilt rule.
ConvolutionValue convolve_with_rule(const ProductRule& rule, const Signal& f, double t);

/// int_0^t R(t - s) f(s) ds, t > 0.
ConvolutionValue convolve_halfline(const Kernel& kernel, const Signal& f, double t, double step = 1e-3);

/// convolve_line at every node of ts, in parallel.
std::vector<ConvolutionValue> convolve_grid(const Kernel& kernel, const Signal& f, const Grid& ts,
                                            const ConvolveOptions& options = {});

/// The map t -> convolve_line(kernel, f, t) as a full-line signal with a fixed rule.
Signal convolution_signal(const Kernel& kernel, const Signal& f, const ConvolveOptions& options = {});

struct HeatOptions {
  /// Half-width of the window around x; defaults to 12 sqrt(t0).
  std::optional<double> window;
  /// Defaults to min(0.01, 0.1 sqrt(2 t0)).
  std::optional<double> step;
};

/// (1 / (2 sqrt(pi t0))) int_{x-W}^{x+W} e^{-(x-s)^2/(4 t0)} f(s) ds; the
/// tail bound is sup ||f|| * erfc(W / (2 sqrt t0)).
ConvolutionValue heat_solution(const Signal& f, double t0, double x, const HeatOptions& options = {});

}  // namespace cperiod
