#include "cperiod/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "cperiod/errors.hpp"
#include "cperiod/parallel.hpp"

namespace cperiod {
namespace {

struct Moments {
  double m0 = 0.0;  // int_a^b R
  double j = 0.0;   // int_a^b (u - a) R
};

Moments exponential_moments(double omega, double a, double b) {
  const double x = omega * (b - a);
  const double e = std::exp(-omega * a);
  return {e * -std::expm1(-x) / omega, e * (-std::expm1(-x) - x * std::exp(-x)) / (omega * omega)};
}

// Branch u^{g-1} on [a, b] within [0, 1].
Moments fractional_inner(double g, double a, double b) {
  if (a == 0.0) return {std::pow(b, g) / g, std::pow(b, g + 1.0) / (g + 1.0)};
  const double r = std::log1p((b - a) / a);
  const double m0 = std::pow(a, g) * std::expm1(g * r) / g;
  const double m1 = std::pow(a, g + 1.0) * std::expm1((g + 1.0) * r) / (g + 1.0);
  return {m0, m1 - a * m0};
}

// Branch u^{-g-1} on [a, b] within [1, inf).
Moments fractional_outer(double g, double a, double b) {
  const double r = std::log1p((b - a) / a);
  const double m0 = std::pow(a, -g) * -std::expm1(-g * r) / g;
  const double m1 = std::pow(a, 1.0 - g) * std::expm1((1.0 - g) * r) / (1.0 - g);
  return {m0, m1 - a * m0};
}

Moments fractional_moments(double g, double a, double b) {
  if (b <= 1.0) return fractional_inner(g, a, b);
  if (a >= 1.0) return fractional_outer(g, a, b);
  const Moments lo = fractional_inner(g, a, 1.0);
  const Moments hi = fractional_outer(g, 1.0, b);
  return {lo.m0 + hi.m0, lo.j + hi.j + (1.0 - a) * hi.m0};
}

double require_positive(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) throw ValidationError(std::string("kernel needs numeric '") + key + "'");
  return j.at(key).get<double>();
}

}  // namespace

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Exponential: return "exponential";
    case KernelKind::Fractional: return "fractional";
    case KernelKind::Heat: return "heat";
  }
  return "unknown";
}

Kernel Kernel::exponential(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ValidationError("exponential kernel needs omega > 0");
  return {KernelKind::Exponential, omega};
}

Kernel Kernel::fractional(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ValidationError("fractional kernel needs gamma in (0, 1)");
  return {KernelKind::Fractional, gamma};
}

Kernel Kernel::heat(double t0) {
  if (!(t0 > 0.0) || !std::isfinite(t0)) throw ValidationError("heat kernel needs t0 > 0");
  return {KernelKind::Heat, t0};
}

Kernel Kernel::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw ValidationError("kernel descriptor needs a 'kind' string");
  const auto kind = j.at("kind").get<std::string>();
  const char* key = kind == "exponential" ? "omega" : kind == "fractional" ? "gamma" : kind == "heat" ? "t0" : nullptr;
  if (!key) throw ValidationError("unknown kernel kind '" + kind + "'");
  for (const auto& [k, v] : j.items())
    if (k != "kind" && k != key) throw ValidationError("unknown kernel field '" + k + "'");
  const double p = require_positive(j, key);
  if (kind == "exponential") return exponential(p);
  if (kind == "fractional") return fractional(p);
  return heat(p);
}

nlohmann::json Kernel::to_json() const {
  switch (kind_) {
    case KernelKind::Exponential: return {{"kind", "exponential"}, {"omega", param_}};
    case KernelKind::Fractional: return {{"kind", "fractional"}, {"gamma", param_}};
    case KernelKind::Heat: return {{"kind", "heat"}, {"t0", param_}};
  }
  return {};
}

void Kernel::require_causal(const char* what) const {
  if (kind_ == KernelKind::Heat) throw WrongKindError(std::string(what) + " needs a causal kernel, not heat");
}

double Kernel::operator()(double u) const {
  switch (kind_) {
    case KernelKind::Exponential:
      if (!(u > 0.0)) throw ValidationError("kernel argument must be positive");
      return std::exp(-param_ * u);
    case KernelKind::Fractional:
      if (!(u > 0.0)) throw ValidationError("kernel argument must be positive");
      return u <= 1.0 ? std::pow(u, param_ - 1.0) : std::pow(u, -param_ - 1.0);
    case KernelKind::Heat:
      return std::exp(-u * u / (4.0 * param_)) / (2.0 * std::sqrt(std::numbers::pi * param_));
  }
  return 0.0;
}

double Kernel::integral() const {
  switch (kind_) {
    case KernelKind::Exponential: return 1.0 / param_;
    case KernelKind::Fractional: return 2.0 / param_;
    case KernelKind::Heat: return 1.0;
  }
  return 0.0;
}

double Kernel::tail_integral(double T) const {
  require_causal("tail_integral");
  if (!(T >= 0.0)) throw ValidationError("tail start must be nonnegative");
  if (kind_ == KernelKind::Exponential) return std::exp(-param_ * T) / param_;
  const double g = param_;
  if (T >= 1.0) return std::pow(T, -g) / g;
  return (1.0 - std::pow(T, g)) / g + 1.0 / g;
}

double Kernel::truncation_for(double tol) const {
  require_causal("truncation_for");
  if (!(tol > 0.0)) throw ValidationError("tail tolerance must be positive");
  if (kind_ == KernelKind::Exponential) return std::max(std::log(1.0 / (tol * param_)) / param_, 1.0 / param_);
  const double T = std::pow(param_ * tol, -1.0 / param_);
  return std::clamp(T, 1.0, kMaxFractionalTruncation);
}

QTail kernel_q_tail(const Kernel& kernel, double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw ValidationError("q must be a finite real >= 1");
  const double w = kernel.parameter();
  if (kernel.kind() == KernelKind::Heat) throw WrongKindError("kernel_q_tail needs a causal kernel");
  if (kernel.kind() == KernelKind::Exponential) {
    // Windows form a geometric series with ratio e^{-omega}.
    const double first = std::pow(-std::expm1(-q * w) / (q * w), 1.0 / q);
    return {first / -std::expm1(-w), 0.0, 0};
  }
  const double g = w;
  const double e0 = (g - 1.0) * q;
  if (e0 <= -1.0)
    throw SingularWindowError("first window diverges: (gamma-1)q = " + std::to_string(e0) + " <= -1");
  double sum = std::pow(1.0 / (e0 + 1.0), 1.0 / q);
  const double s = (g + 1.0) * q - 1.0;
  constexpr long kWindows = 1000000;
  for (long k = 1; k <= kWindows; ++k) {
    const double kd = static_cast<double>(k);
    const double log_int = -s * std::log(kd) + std::log(-std::expm1(-s * std::log1p(1.0 / kd))) - std::log(s);
    sum += std::exp(log_int / q);
  }
  // Window k lies between (k+1)^{-g-1} and k^{-g-1}.
  const double K = static_cast<double>(kWindows);
  const double upper = std::pow(K, -g) / g;
  const double lower = std::pow(K + 2.0, -g) / g;
  return {sum + 0.5 * (upper + lower), 0.5 * (upper - lower), kWindows + 1};
}

double conjugate_exponent(double q) {
  if (!(q > 1.0)) throw ValidationError("conjugate exponent needs q > 1");
  return std::isinf(q) ? 1.0 : q / (q - 1.0);
}

bool gejacina_admissible(double gamma, double q) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ValidationError("gamma must lie in (0, 1)");
  return (gamma - 1.0) * conjugate_exponent(q) > -1.0;
}

ProductRule product_rule(const Kernel& kernel, double truncation, double step) {
  if (kernel.kind() == KernelKind::Heat) throw WrongKindError("product rule needs a causal kernel");
  if (!(truncation > 0.0) || !std::isfinite(truncation)) throw ValidationError("truncation must be positive");
  if (!(step > 0.0)) throw ValidationError("quadrature step must be positive");
  const auto cells = static_cast<std::size_t>(std::max(1.0, std::ceil(truncation / step - 1e-9)));
  ProductRule rule;
  rule.step = step;
  rule.truncation = static_cast<double>(cells) * step;
  rule.weights.assign(cells + 1, 0.0);
  const double p = kernel.parameter();
  for (std::size_t k = 0; k < cells; ++k) {
    const double a = static_cast<double>(k) * step;
    const double b = static_cast<double>(k + 1) * step;
    const Moments m = kernel.kind() == KernelKind::Exponential ? exponential_moments(p, a, b)
                                                               : fractional_moments(p, a, b);
    rule.weights[k] += m.m0 - m.j / step;
    rule.weights[k + 1] += m.j / step;
  }
  rule.tail = kernel.tail_integral(rule.truncation);
  return rule;
}

ConvolutionValue convolve_with_rule(const ProductRule& rule, const Signal& f, double t) {
  if (!f.contains(t - rule.truncation)) throw DomainError("convolution window leaves the signal's domain");
  Vector acc = Vector::Zero(f.dim());
  double sup = 0.0;
  for (std::size_t j = 0; j < rule.weights.size(); ++j) {
    const Vector v = f.eval_unchecked(t - static_cast<double>(j) * rule.step);
    sup = std::max(sup, v.norm());
    acc += rule.weights[j] * v;
  }
  return {std::move(acc), rule.truncation, sup * rule.tail};
}

ConvolutionValue convolve_line(const Kernel& kernel, const Signal& f, double t, const ConvolveOptions& options) {
  const double T = options.truncation ? *options.truncation : kernel.truncation_for(kDefaultKernelTailTol);
  return convolve_with_rule(product_rule(kernel, T, options.step), f, t);
}

ConvolutionValue convolve_halfline(const Kernel& kernel, const Signal& f, double t, double step) {
  if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("half-line convolution needs t > 0");
  if (!(step > 0.0)) throw ValidationError("quadrature step must be positive");
  const double cells = std::max(1.0, std::ceil(t / step - 1e-9));
  const double h = t / cells;
  const ProductRule rule = product_rule(kernel, t, h);
  Vector acc = Vector::Zero(f.dim());
  for (std::size_t j = 0; j < rule.weights.size(); ++j) {
    const double s = std::max(0.0, t - static_cast<double>(j) * h);
    acc += rule.weights[j] * f(s);
  }
  return {std::move(acc), t, 0.0};
}

std::vector<ConvolutionValue> convolve_grid(const Kernel& kernel, const Signal& f, const Grid& ts,
                                            const ConvolveOptions& options) {
  const double T = options.truncation ? *options.truncation : kernel.truncation_for(kDefaultKernelTailTol);
  const ProductRule rule = product_rule(kernel, T, options.step);
  if (!f.contains(ts.start() - rule.truncation)) throw DomainError("convolution window leaves the signal's domain");
  std::vector<ConvolutionValue> out(ts.size());
  parallel_for(ts.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = convolve_with_rule(rule, f, ts[i]);
  });
  return out;
}

Signal convolution_signal(const Kernel& kernel, const Signal& f, const ConvolveOptions& options) {
  if (f.domain() != Domain::FullLine) throw DomainError("convolution_signal needs a full-line signal");
  const double T = options.truncation ? *options.truncation : kernel.truncation_for(kDefaultKernelTailTol);
  auto rule = std::make_shared<const ProductRule>(product_rule(kernel, T, options.step));
  double mass = 0.0;
  for (double w : rule->weights) mass += w;
  Signal out = Signal::custom(
      Domain::FullLine, f.dim(), [rule, f](double t) { return convolve_with_rule(*rule, f, t).value; },
      "convolution");
  if (f.lipschitz()) out = out.with_lipschitz(*f.lipschitz() * mass);
  return out.with_bandwidth(f.bandwidth());
}

ConvolutionValue heat_solution(const Signal& f, double t0, double x, const HeatOptions& options) {
  const Kernel k = Kernel::heat(t0);
  const double W = options.window ? *options.window : 12.0 * std::sqrt(t0);
  const double step = options.step ? *options.step : std::min(0.01, 0.1 * std::sqrt(2.0 * t0));
  if (!(W > 0.0)) throw ValidationError("heat window must be positive");
  if (!(step > 0.0)) throw ValidationError("quadrature step must be positive");
  if (!f.contains(x - W)) throw DomainError("heat window leaves the signal's domain");
  const auto cells = static_cast<std::size_t>(std::ceil(2.0 * W / step - 1e-9));
  const double h = 2.0 * W / static_cast<double>(cells);
  Vector acc = Vector::Zero(f.dim());
  double sup = 0.0;
  for (std::size_t i = 0; i <= cells; ++i) {
    const double u = -W + static_cast<double>(i) * h;
    const Vector v = f.eval_unchecked(x - u);
    sup = std::max(sup, v.norm());
    const double w = (i == 0 || i == cells) ? 0.5 * h : h;
    acc += (w * k(u)) * v;
  }
  return {std::move(acc), W, sup * std::erfc(W / (2.0 * std::sqrt(t0)))};
}

}  // namespace cperiod
