#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cperiod/builtins.hpp"
#include "cperiod/convolution.hpp"
#include "cperiod/errors.hpp"
#include "cperiod/period_scan.hpp"

using namespace cperiod;
constexpr double pi = std::numbers::pi;

TEST(Kernel, EvalAndIntegrals) {
  const auto e = Kernel::exponential(2.0);
  EXPECT_DOUBLE_EQ(e(1.0), std::exp(-2.0));
  EXPECT_DOUBLE_EQ(e.integral(), 0.5);
  EXPECT_NEAR(e.tail_integral(3.0), std::exp(-6.0) / 2.0, 1e-17);
  const auto f = Kernel::fractional(0.5);
  EXPECT_DOUBLE_EQ(f(0.25), 2.0);
  EXPECT_DOUBLE_EQ(f(4.0), 0.125);
  EXPECT_DOUBLE_EQ(f(1.0), 1.0);
  EXPECT_DOUBLE_EQ(f.integral(), 4.0);
  EXPECT_DOUBLE_EQ(f.tail_integral(0.0), 4.0);
  EXPECT_DOUBLE_EQ(f.tail_integral(4.0), 1.0);
  EXPECT_NEAR(Kernel::heat(1.0)(0.0), 1.0 / (2.0 * std::sqrt(pi)), 1e-16);
  EXPECT_THROW(Kernel::fractional(1.0), ValidationError);
  EXPECT_THROW(Kernel::exponential(0.0), ValidationError);
  EXPECT_THROW(f(0.0), ValidationError);
}

TEST(Kernel, JsonRoundTrip) {
  for (const auto& k : {Kernel::exponential(1.5), Kernel::fractional(0.25), Kernel::heat(2.0)}) {
    const auto back = Kernel::from_json(k.to_json());
    EXPECT_EQ(back.kind(), k.kind());
    EXPECT_EQ(back.parameter(), k.parameter());
  }
  EXPECT_THROW(Kernel::from_json({{"kind", "fractional"}, {"gamma", 0.5}, {"omega", 1}}), ValidationError);
  EXPECT_THROW(Kernel::from_json({{"kind", "gamma"}}), ValidationError);
}

TEST(Kernel, DefaultTruncation) {
  const auto e = Kernel::exponential(1.0);
  EXPECT_NEAR(e.tail_integral(e.truncation_for(1e-8)), 1e-8, 1e-15);
  EXPECT_DOUBLE_EQ(Kernel::fractional(0.5).truncation_for(1e-8), kMaxFractionalTruncation);
  EXPECT_THROW(Kernel::heat(1.0).truncation_for(1e-8), WrongKindError);
}

TEST(QTail, ExponentialAndExactMass) {
  EXPECT_NEAR(kernel_q_tail(Kernel::exponential(1.0), 1.0).value, 1.0, 1e-15);
  EXPECT_NEAR(kernel_q_tail(Kernel::exponential(3.0), 1.0).value, 1.0 / 3.0, 1e-15);
  // q = 1 sums the windows back to the full integral 2 / gamma.
  for (double g : {0.3, 0.5, 0.8}) {
    const auto t = kernel_q_tail(Kernel::fractional(g), 1.0);
    EXPECT_NEAR(t.value, 2.0 / g, t.error_bound + 1e-10) << g;
  }
}

TEST(QTail, FractionalOracle) {
  // Euler-Maclaurin summation of the closed-form window integrals.
  const struct {
    double g, q, value;
  } cases[] = {{0.5, 1.5, 4.536277461972931}, {0.5, 1.2, 4.152487423699681}, {0.7, 2.5, 3.227290078652192}};
  for (const auto& c : cases) {
    const auto t = kernel_q_tail(Kernel::fractional(c.g), c.q);
    EXPECT_NEAR(t.value, c.value, t.error_bound + 1e-10) << c.g << " " << c.q;
    EXPECT_LT(t.error_bound, 1e-8);
  }
}

TEST(QTail, AdmissibilityGate) {
  EXPECT_TRUE(gejacina_admissible(0.5, 3.0));
  EXPECT_DOUBLE_EQ((0.5 - 1.0) * conjugate_exponent(3.0), -0.75);
  EXPECT_NO_THROW(kernel_q_tail(Kernel::fractional(0.5), conjugate_exponent(3.0)));
  EXPECT_THROW(kernel_q_tail(Kernel::fractional(0.5), 4.0), SingularWindowError);
  EXPECT_THROW(kernel_q_tail(Kernel::fractional(0.5), 2.0), SingularWindowError);
  EXPECT_THROW(kernel_q_tail(Kernel::fractional(0.5), 0.5), ValidationError);
  // The gate agrees with the first-window test at the conjugate exponent.
  for (double g : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    for (double q : {1.1, 1.5, 1.9, 2.1, 3.0, 4.0, 9.0}) {
      bool finite = true;
      try {
        kernel_q_tail(Kernel::fractional(g), conjugate_exponent(q));
      } catch (const SingularWindowError&) {
        finite = false;
      }
      EXPECT_EQ(finite, gejacina_admissible(g, q)) << g << " " << q;
    }
  }
}

TEST(ProductRule, WeightsAreNonnegativeAndIntegrateTheKernel) {
  for (const auto& k : {Kernel::exponential(1.0), Kernel::fractional(0.5), Kernel::fractional(0.2)}) {
    const auto rule = product_rule(k, 7.3, 0.013);
    double mass = 0.0;
    for (double w : rule.weights) {
      ASSERT_GE(w, 0.0);
      mass += w;
    }
    EXPECT_NEAR(mass, k.integral() - rule.tail, 1e-12);
  }
}

TEST(ConvolveLine, ExponentialKernelClosedForm) {
  const auto k = Kernel::exponential(1.0);
  const auto f = make_builtin("exponential");
  for (double t : {-3.0, 0.0, 1.0, 17.5}) {
    const auto v = convolve_line(k, f, t);
    EXPECT_NEAR(std::abs(v.value[0] - std::exp(complex(0, t)) / complex(1, 1)), 0.0, 1e-6) << t;
    EXPECT_NEAR(std::abs(v.value[0]), 1.0 / std::sqrt(2.0), 1e-6);
    EXPECT_LE(v.tail_bound, 1.1e-8);
  }
  EXPECT_NEAR(convolve_line(k, make_builtin("constant"), 4.0).value[0].real(), 1.0, 2e-8);
}

TEST(ConvolveLine, FractionalKernelReference) {
  // High-precision value of int_0^inf R(u) e^{-iu} du for gamma = 1/2.
  const auto v = convolve_line(Kernel::fractional(0.5), make_builtin("exponential"), 0.0);
  EXPECT_NEAR(v.value[0].real(), 1.62409801912947, 1e-4);
  EXPECT_NEAR(v.value[0].imag(), -1.19200989609247, 1e-4);
  EXPECT_NEAR(v.tail_bound, 2.0 / std::sqrt(2000.0), 1e-12);
}

TEST(ConvolveLine, ZeroAndDomain) {
  const auto zero = make_builtin("constant", {{"re", 0.0}, {"im", 0.0}});
  EXPECT_EQ(convolve_line(Kernel::fractional(0.3), zero, 2.0, {50.0, 0.01}).value[0], complex(0.0, 0.0));
  EXPECT_THROW(convolve_line(Kernel::exponential(1.0), make_builtin("decay"), 1.0), DomainError);
  EXPECT_THROW(convolve_line(Kernel::heat(1.0), make_builtin("cosine"), 1.0), WrongKindError);
}

TEST(ConvolveLine, GridMatchesPointwise) {
  const auto k = Kernel::exponential(0.5);
  const auto f = make_builtin("kader-g");
  const ConvolveOptions opts{40.0, 0.01};
  const Grid ts(0.0, 3.0, 0.5);
  const auto vs = convolve_grid(k, f, ts, opts);
  for (std::size_t i = 0; i < ts.size(); ++i) EXPECT_EQ(vs[i].value, convolve_line(k, f, ts[i], opts).value);
}

TEST(ConvolveHalfline, Examples) {
  const auto k = Kernel::exponential(1.0);
  const auto one = restrict_to_half_line(make_builtin("constant"));
  for (double t : {0.1, 1.0, 5.0}) EXPECT_NEAR(convolve_halfline(k, one, t).value[0].real(), 1.0 - std::exp(-t), 1e-12);
  const auto far = convolve_halfline(k, one, 40.0).value[0].real();
  EXPECT_NEAR(far, convolve_line(k, make_builtin("constant"), 40.0).value[0].real(), 1e-8);
  EXPECT_NEAR(convolve_halfline(Kernel::fractional(0.5), one, 1.0).value[0].real(), 2.0, 1e-12);
  EXPECT_THROW(convolve_halfline(k, one, 0.0), ValidationError);
}

TEST(ConvolveHalfline, ConvergesToLineConvolution) {
  const auto k = Kernel::fractional(0.5);
  const auto f = make_builtin("exponential");
  const auto fh = restrict_to_half_line(f);
  for (double t : {10.0, 50.0, 200.0}) {
    const auto h = convolve_halfline(k, fh, t, 0.005).value;
    const auto l = convolve_line(k, f, t, {t, 0.005}).value;
    EXPECT_LE((h - l).norm(), 1e-9);
    const auto full = convolve_line(k, f, t, {2000.0, 0.005}).value;
    EXPECT_LE((h - full).norm(), k.tail_integral(t) + 1e-5);
  }
}

TEST(HeatSolution, Examples) {
  for (double x : {-2.0, 0.0, 0.7}) {
    const auto v = heat_solution(make_builtin("exponential"), 1.0, x);
    EXPECT_NEAR(std::abs(v.value[0] - std::exp(-1.0) * std::exp(complex(0, x))), 0.0, 1e-6);
    EXPECT_LT(v.tail_bound, 1e-15);
  }
  for (double t0 : {0.01, 1.0, 30.0}) EXPECT_NEAR(heat_solution(make_builtin("constant"), t0, 3.0).value[0].real(), 1.0, 1e-12);
  EXPECT_NEAR(heat_solution(make_builtin("cosine"), 0.5, 0.0).value[0].real(), 0.6065306597126334, 1e-6);
  EXPECT_THROW(heat_solution(make_builtin("decay"), 1.0, 0.0), DomainError);
}

TEST(ConvolutionProperties, InvarianceTransport) {
  // defect(F, tau, c) <= d * int R where d is the defect of f on the nodes the rule touches.
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> tau(0.5, 30.0), angle(-pi, pi);
  const auto f = make_builtin("exponential") + scale(make_builtin("exponential", {{"mu", std::sqrt(2.0)}}), 0.5);
  const auto k = Kernel::exponential(1.0);
  const ConvolveOptions opts{20.0, 0.05};
  const auto F = convolution_signal(k, f, opts);
  const Grid out(0.0, 10.0, 0.05);
  const Grid in(-20.0, 10.0, 0.05);
  for (int i = 0; i < 20; ++i) {
    const double t = tau(rng);
    const auto c = UnitComplex::from_angle(angle(rng));
    const double d = defect(f, t, c, in).value;
    EXPECT_LE(defect(F, t, c, out).value, d * k.integral() + 1e-9);
  }
}
