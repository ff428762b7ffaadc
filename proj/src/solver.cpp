#include "cperiod/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "cperiod/errors.hpp"
#include "cperiod/parallel.hpp"

namespace cperiod {

Forcing make_forcing(const Signal& f, const std::string& nonlinearity, double lipschitz) {
  if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) throw ValidationError("forcing Lipschitz constant must be positive");
  if (f.domain() != Domain::FullLine) throw DomainError("forcing signal must live on the full line");
  const double L = lipschitz;
  Forcing out;
  out.lipschitz = L;
  if (nonlinearity == "sin-re") {
    out.eval = [f, L](double t, const Vector& u) -> Vector {
      Vector v = f.eval_unchecked(t);
      for (Eigen::Index k = 0; k < v.size(); ++k) v[k] += L * std::sin(u[k].real());
      return v;
    };
  } else if (nonlinearity == "linear") {
    out.eval = [f, L](double t, const Vector& u) -> Vector { return f.eval_unchecked(t) + L * u; };
  } else if (nonlinearity == "none") {
    out.eval = [f](double t, const Vector&) -> Vector { return f.eval_unchecked(t); };
  } else {
    throw ValidationError("unknown nonlinearity '" + nonlinearity + "'");
  }
  out.description = f.descriptor().dump() + " + " + nonlinearity;
  return out;
}

void check_lipschitz(const Forcing& forcing, Eigen::Index dim, int probes, std::uint64_t seed) {
  if (!(forcing.lipschitz > 0.0)) throw ValidationError("forcing Lipschitz constant must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> time(-50.0, 50.0);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  auto random_vector = [&] {
    Vector v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) v[k] = complex(coord(rng), coord(rng));
    return v;
  };
  for (int i = 0; i < probes; ++i) {
    const double t = time(rng);
    const Vector x = random_vector();
    const Vector y = random_vector();
    const double lhs = (forcing.eval(t, x) - forcing.eval(t, y)).norm();
    const double rhs = forcing.lipschitz * (x - y).norm() + 1e-9;
    if (lhs > rhs) {
      std::ostringstream os;
      os << "forcing violates its Lipschitz constant " << forcing.lipschitz << " at t = " << t << " (" << lhs
         << " > " << rhs << ")";
      throw ValidationError(os.str());
    }
  }
}

Vector Trajectory::interpolate(double t) const {
  const double x = (t - grid.start()) / grid.step();
  const auto n = static_cast<double>(grid.size() - 1);
  if (!(x >= -1e-9 && x <= n + 1e-9)) throw ValidationError("interpolation point outside the trajectory grid");
  const double xc = std::clamp(x, 0.0, n);
  const auto i = std::min(static_cast<std::size_t>(xc), grid.size() - 2);
  const double w = xc - static_cast<double>(i);
  return (1.0 - w) * values.col(static_cast<Eigen::Index>(i)) + w * values.col(static_cast<Eigen::Index>(i + 1));
}

Trajectory make_trajectory(const Grid& grid, Eigen::Index dim, const std::function<Vector(double)>& fn) {
  Trajectory out{grid, Eigen::MatrixXcd(dim, static_cast<Eigen::Index>(grid.size()))};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vector v = fn(grid[i]);
    if (v.size() != dim) throw ValidationError("trajectory values have the wrong dimension");
    out.values.col(static_cast<Eigen::Index>(i)) = v;
  }
  return out;
}

Trajectory constant_trajectory(const Grid& grid, const Vector& value) {
  return make_trajectory(grid, value.size(), [&](double) { return value; });
}

Trajectory random_trajectory(const Grid& grid, Eigen::Index dim, double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-amplitude, amplitude);
  return make_trajectory(grid, dim, [&](double) {
    Vector v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) v[k] = complex(coord(rng), coord(rng));
    return v;
  });
}

Trajectory upsilon_apply(const Forcing& forcing, const Kernel& kernel, const Trajectory& u,
                         const UpsilonOptions& options) {
  const double T = options.truncation ? *options.truncation : kernel.truncation_for(kDefaultKernelTailTol);
  const ProductRule rule = product_rule(kernel, T, u.grid.step());
  const std::size_t n = rule.weights.size() - 1;
  const std::size_t N = u.grid.size();
  const Eigen::Index dim = u.dim();

  // history column k holds F at t_0 + (k - n) h; the first n use u frozen at t_0.
  Eigen::MatrixXcd history(dim, static_cast<Eigen::Index>(N + n));
  const Vector u0 = u.at(0);
  parallel_for(N + n, [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      if (k < n) {
        const double t = u.grid.start() - static_cast<double>(n - k) * u.grid.step();
        history.col(static_cast<Eigen::Index>(k)) = forcing.eval(t, u0);
      } else {
        history.col(static_cast<Eigen::Index>(k)) = forcing.eval(u.grid[k - n], u.at(k - n));
      }
    }
  });

  Trajectory out{u.grid, Eigen::MatrixXcd(dim, static_cast<Eigen::Index>(N))};
  out.first_interior = std::min(n, N);
  parallel_for(N, [&](std::size_t b, std::size_t e) {
    Vector acc(dim);
    for (std::size_t i = b; i < e; ++i) {
      acc.setZero();
      for (std::size_t j = 0; j <= n; ++j)
        acc += rule.weights[j] * history.col(static_cast<Eigen::Index>(i + n - j));
      out.values.col(static_cast<Eigen::Index>(i)) = acc;
    }
  });
  return out;
}

double contraction_estimate(double lipschitz, const Kernel& kernel, int n) {
  if (!(lipschitz > 0.0)) throw ValidationError("Lipschitz constant must be positive");
  if (n < 1) throw ValidationError("contraction power must be >= 1");
  return std::pow(lipschitz * kernel.integral(), n);
}

namespace {

double interior_sup_change(const Trajectory& a, const Trajectory& b) {
  double out = 0.0;
  for (std::size_t i = a.first_interior; i < a.grid.size(); ++i)
    out = std::max(out, (a.values.col(static_cast<Eigen::Index>(i)) - b.values.col(static_cast<Eigen::Index>(i))).norm());
  return out;
}

}  // namespace

Trajectory fixed_point_solve(const Forcing& forcing, const Kernel& kernel, const Trajectory& u0,
                             const SolveOptions& options) {
  if (!(options.tol > 0.0)) throw ValidationError("solver tolerance must be positive");
  if (options.max_iter < 1) throw ValidationError("max_iter must be >= 1");
  if (kernel.kind() == KernelKind::Heat) throw WrongKindError("the solver needs a causal kernel");
  const double M1 = contraction_estimate(forcing.lipschitz, kernel, 1);
  if (M1 >= 1.0 && !options.allow_noncontraction) {
    std::ostringstream os;
    os << "M1 = " << M1 << " >= 1: the mild-solution map is not a contraction";
    throw NonContractionError(os.str());
  }
  const UpsilonOptions up{options.truncation};
  Trajectory u = u0;
  int growth = 0;
  for (int it = 1; it <= options.max_iter; ++it) {
    Trajectory next = upsilon_apply(forcing, kernel, u, up);
    const double r = interior_sup_change(next, u);
    next.residual_history = std::move(u.residual_history);
    if (!next.residual_history.empty() && r > next.residual_history.back())
      ++growth;
    else
      growth = 0;
    next.residual_history.push_back(r);
    next.iterations = it;
    next.residual = r;
    u = std::move(next);
    if (r <= options.tol) {
      u.converged = true;
      return u;
    }
    if (growth >= 5) {
      std::ostringstream os;
      os << "residual grew over 5 consecutive iterations (last " << r << ")";
      throw DivergenceError(os.str());
    }
  }
  return u;
}

RecurrenceReport recurrence_of_solution(const Trajectory& solution, const UnitComplex& c,
                                        const std::vector<double>& alphas) {
  RecurrenceReport out;
  const complex cv = c.value();
  const auto& g = solution.grid;
  for (double alpha : alphas) {
    if (!(alpha > 0.0)) throw ValidationError("shifts must be positive");
    double worst = -1.0;
    for (std::size_t i = solution.first_interior; i < g.size(); ++i) {
      if (g[i] + alpha > g.last()) break;
      worst = std::max(worst, (solution.interpolate(g[i] + alpha) - cv * solution.at(i)).norm());
    }
    if (worst < 0.0) throw ValidationError("shift " + std::to_string(alpha) + " exceeds the trajectory grid");
    out.alphas.push_back(alpha);
    out.defects.push_back(worst);
  }
  return out;
}

}  // namespace cperiod
