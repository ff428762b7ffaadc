#pragma once

#include <cstdint>
#include <vector>

#include "cperiod/unit_complex.hpp"

namespace cperiod {

/// Powers l of c = exp(i pi phi) with |c^l - target| < epsilon.
struct OrbitApproximants {
  double phi = 0.0;
  complex target;
  double epsilon = 0.0;
  std::vector<std::int64_t> ls;
  /// Upper bound on consecutive differences of ls.
  std::int64_t gaps_bound = 1;
  /// True when gaps_bound comes from the continued-fraction argument and so
  /// holds for the whole infinite admissible set; otherwise it is the
  /// largest gap observed among ls.
  bool gaps_certified = false;
};

struct OrbitOptions {
  std::int64_t l_max = 10'000'000;
};

/// Throws SearchBudgetError if fewer than k_count admissible powers exist below l_max.
OrbitApproximants orbit_approximants(double phi, complex target, double epsilon, int k_count,
                                     const OrbitOptions& options = {});

/// min_{1 <= l <= L} |c^l - target|.
double orbit_min_distance(double phi, complex target, std::int64_t L);

struct Convergent {
  std::int64_t p = 0;
  std::int64_t q = 1;
};

/// Continued-fraction convergents of x in [0, 1) with denominators up to limit.
std::vector<Convergent> convergents(long double x, std::int64_t limit);

struct RootStructure {
  std::int64_t order = 1;  // smallest n >= 1 with c^n = 1
  int q_power_sign = 1;    // c^q = (-1)^p
};

/// Throws WrongKindError for irrational multipliers.
RootStructure root_structure(const UnitComplex& c);

}  // namespace cperiod
