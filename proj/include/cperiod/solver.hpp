#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cperiod/convolution.hpp"
#include "cperiod/period_scan.hpp"

namespace cperiod {

/// Nonlinearity F(t, u) with a declared Lipschitz constant in u.
struct Forcing {
  using EvalFn = std::function<Vector(double, const Vector&)>;

  EvalFn eval;
  double lipschitz = 0.0;
  std::string description;
};

/// F(t, u) = f(t) + L g(u) with g in {sin-re (componentwise sin of the real
/// part), linear (identity), none}. For "none" L only records the declared constant.
Forcing make_forcing(const Signal& f, const std::string& nonlinearity, double lipschitz);

/// Samples ||F(t,x) - F(t,y)|| <= L ||x - y|| + 1e-9 at random probes; throws ValidationError on a violation.
void check_lipschitz(const Forcing& forcing, Eigen::Index dim, int probes = 256, std::uint64_t seed = 1);

struct Trajectory {
  Trajectory(Grid g, Eigen::MatrixXcd v) : grid(g), values(std::move(v)) {}

  Grid grid;
  /// dim x nodes.
  Eigen::MatrixXcd values;
  /// Nodes before this index have convolution windows leaving the grid.
  std::size_t first_interior = 0;
  int iterations = 0;
  /// Sup-norm change of the last iteration over interior nodes.
  double residual = 0.0;
  bool converged = false;
  std::vector<double> residual_history;

  Eigen::Index dim() const { return values.rows(); }
  Vector at(std::size_t i) const { return values.col(static_cast<Eigen::Index>(i)); }
  /// Linear interpolation between nodes; t must lie in [grid.start(), grid.last()].
  Vector interpolate(double t) const;
};

Trajectory make_trajectory(const Grid& grid, Eigen::Index dim, const std::function<Vector(double)>& fn);
Trajectory constant_trajectory(const Grid& grid, const Vector& value);
/// Entries uniform in the square [-amplitude, amplitude]^2 of C.
Trajectory random_trajectory(const Grid& grid, Eigen::Index dim, double amplitude, std::uint64_t seed);

struct UpsilonOptions {
  /// Defaults to kernel.truncation_for(kDefaultKernelTailTol).
  std::optional<double> truncation;
};

/// (Upsilon u)(t_i) = int_0^T R(v) F(t_i - v, u(t_i - v)) dv on the nodes of u.
/// Windows that leave the grid see u frozen at its first node.
Trajectory upsilon_apply(const Forcing& forcing, const Kernel& kernel, const Trajectory& u,
                         const UpsilonOptions& options = {});

/// (L int_0^inf R)^n, an upper bound for M_n when the Lipschitz constant is constant.
double contraction_estimate(double lipschitz, const Kernel& kernel, int n);

struct SolveOptions {
  double tol = 1e-8;
  int max_iter = 200;
  /// Iterate even when M1 >= 1.
  bool allow_noncontraction = false;
  std::optional<double> truncation;
};

/// Picard iteration u <- Upsilon u until the interior sup-norm change is <= tol.
/// Throws NonContractionError when M1 >= 1 without override and DivergenceError
/// after 5 consecutive residual increases.
Trajectory fixed_point_solve(const Forcing& forcing, const Kernel& kernel, const Trajectory& u0,
                             const SolveOptions& options = {});

/// Defects max_i ||u(t_i + alpha) - c u(t_i)|| over interior nodes with t_i + alpha on the grid.
/// Throws ValidationError when a shift leaves no such node.
RecurrenceReport recurrence_of_solution(const Trajectory& solution, const UnitComplex& c,
                                        const std::vector<double>& alphas);

}  // namespace cperiod
