#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>

#include "json.hpp"

#include "cperiod/grid.hpp"
#include "cperiod/unit_complex.hpp"

namespace cperiod {

/// Signal values live in E = C^d with the Euclidean norm.
using Vector = Eigen::VectorXcd;

enum class Domain { FullLine, HalfLine };

std::string to_string(Domain d);

/// Truncated-series metadata. tail_bound(h) bounds, in sup norm over
/// |t| <= h, the distance between the truncated series and its formal limit.
struct Truncation {
  int terms = 0;
  std::function<double(double)> tail_bound;
};

/// Immutable, deterministic map t -> C^d on the full line or on [0, inf).
///
/// Copies share nothing mutable, so a Signal can be evaluated concurrently.
/// The JSON descriptor {name, params, transforms[]} rebuilds the same signal
/// through signal_from_descriptor().
class Signal {
 public:
  using EvalFn = std::function<Vector(double)>;

  Signal(Domain domain, Eigen::Index dim, EvalFn eval, nlohmann::json descriptor);

  /// Wraps an arbitrary user map. The descriptor records only the name, so
  /// custom signals cannot be rebuilt from JSON.
  static Signal custom(Domain domain, Eigen::Index dim, EvalFn eval, const std::string& name);

  /// Throws DomainError for t < 0 on half-line signals.
  Vector operator()(double t) const;
  /// Skips the domain check; callers validate whole grids up front.
  Vector eval_unchecked(double t) const { return eval_(t); }

  Domain domain() const noexcept { return domain_; }
  Eigen::Index dim() const noexcept { return dim_; }
  bool contains(double t) const noexcept { return domain_ == Domain::FullLine || t >= 0.0; }
  /// Throws DomainError unless every node of grid lies in the domain.
  void require_grid(const Grid& grid) const;

  const std::optional<double>& lipschitz() const noexcept { return lipschitz_; }
  const std::optional<Truncation>& truncation() const noexcept { return truncation_; }
  /// Largest angular frequency present, when known; sizes quadrature steps.
  const std::optional<double>& bandwidth() const noexcept { return bandwidth_; }
  const nlohmann::json& descriptor() const noexcept { return descriptor_; }

  /// Tail bound over |t| <= horizon; zero for exact (untruncated) signals.
  double tail_bound(double horizon) const;

  Signal with_lipschitz(std::optional<double> L) const;
  Signal with_truncation(std::optional<Truncation> t) const;
  Signal with_bandwidth(std::optional<double> b) const;

 private:
  Domain domain_;
  Eigen::Index dim_;
  EvalFn eval_;
  nlohmann::json descriptor_;
  std::optional<double> lipschitz_;
  std::optional<Truncation> truncation_;
  std::optional<double> bandwidth_;
};

// Transforms. Each returns a new signal whose descriptor records the step.

Signal scale(const Signal& f, complex alpha);
/// t -> f(t + a); on the half line a must be nonnegative.
Signal shift(const Signal& f, double a);
/// t -> f(b t), b != 0; on the half line b must be positive.
Signal dilate(const Signal& f, double b);
/// t -> f(-t); full line only.
Signal reflect(const Signal& f);
Signal add(const Signal& f, const Signal& g);
/// Componentwise product; dimensions and domains must match.
Signal multiply(const Signal& f, const Signal& g);
/// t -> ||f(t)||, a one-dimensional real-valued signal.
Signal modulus(const Signal& f);
/// Restriction of a full-line signal to [0, inf).
Signal restrict_to_half_line(const Signal& f);

inline Signal operator+(const Signal& f, const Signal& g) { return add(f, g); }
inline Signal operator*(complex alpha, const Signal& f) { return scale(f, alpha); }

/// Grid maximum of ||f(t)||, plus max + L * step / 2 when a Lipschitz constant is registered.
struct SupNorm {
  double value = 0.0;
  std::optional<double> certified;
};

SupNorm sup_norm(const Signal& f, const Grid& grid);

/// Default grid for suprema over the signal's domain.
Grid default_grid(const Signal& f);

}  // namespace cperiod
