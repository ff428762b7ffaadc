#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cperiod/builtins.hpp"
#include "cperiod/period_scan.hpp"

using namespace cperiod;
constexpr double pi = std::numbers::pi;

// Brute-force oracle on the same grid: 9 accepted shifts, the first at 54428.06.
TEST(Slow, StrinaScanFindsLateAlmostPeriods) {
  const auto f = make_builtin("strina-series", {{"p", 3}, {"q", 1}, {"N", 40}});
  const auto r = scan_periods(f, UnitComplex::rational(1, 1), 0.1, 60000.0, 0.01, Grid(-200 * pi, 200 * pi, 0.05));
  ASSERT_EQ(r.accepted.size(), 9u);
  EXPECT_NEAR(r.accepted.front().first, 54428.06, 1e-6);
  EXPECT_NEAR(r.accepted.front().second, 0.0972, 5e-4);
  for (const auto& [tau, d] : r.accepted) EXPECT_LE(d, 0.1);
  EXPECT_NEAR(r.max_gap, r.accepted.front().first, 1e-9);
}

// The sup keeps growing, roughly like log t.
TEST(Slow, HarauxSupGrows) {
  const auto f = make_builtin("haraux-souplet", {{"base", 2}, {"N", 30}});
  const double s4 = sup_norm(f, Grid(0.0, 1e4, 0.01)).value;
  const double s5 = sup_norm(f, Grid(0.0, 1e5, 0.01)).value;
  const double s6 = sup_norm(f, Grid(0.0, 1e6, 0.02)).value;
  EXPECT_LT(s4, s5);
  EXPECT_LT(s5, s6);
}
