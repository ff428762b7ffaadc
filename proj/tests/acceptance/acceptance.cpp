// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "cperiod/builtins.hpp"
#include "cperiod/cli.hpp"
#include "cperiod/convolution.hpp"
#include "cperiod/errors.hpp"
#include "cperiod/mean_spectrum.hpp"
#include "cperiod/period_scan.hpp"
#include "cperiod/report_io.hpp"
#include "cperiod/rotation_orbit.hpp"
#include "cperiod/solver.hpp"

using namespace cperiod;
using nlohmann::json;
constexpr double pi = std::numbers::pi;

namespace {

// A criterion body returns an empty string on success, otherwise the reason.
using Body = std::function<std::string(std::ostringstream& detail)>;

int failures = 0;

void criterion(int id, const char* title, double budget_s, const Body& body) {
  std::ostringstream detail;
  std::string why;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    why = body(detail);
  } catch (const std::exception& e) {
    why = std::string("unexpected exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (why.empty() && secs > budget_s) {
    std::ostringstream os;
    os << "runtime " << secs << " s exceeds " << budget_s << " s";
    why = os.str();
  }
  if (!why.empty()) ++failures;
  std::printf("%s %2d %s [%.2fs] %s%s\n", why.empty() ? "PASS" : "FAIL", id, title, secs, detail.str().c_str(),
              why.empty() ? "" : (" :: " + why).c_str());
  std::fflush(stdout);
}

std::string fmt(const char* what, double got, double bound) {
  std::ostringstream os;
  os.precision(6);
  os << what << ": " << got << " > " << bound;
  return os.str();
}

template <class E, class F>
bool throws(F&& f) {
  try {
    f();
  } catch (const E&) {
    return true;
  } catch (...) {
    return false;
  }
  return false;
}

std::vector<std::int64_t> brute_force_orbit(double phi, complex target, double eps, std::int64_t L) {
  std::vector<std::int64_t> out;
  for (std::int64_t l = 1; l <= L; ++l)
    if (std::abs(std::polar(1.0, pi * std::fmod(phi * static_cast<double>(l), 2.0)) - target) < eps) out.push_back(l);
  return out;
}

std::int64_t max_gap(const std::vector<std::int64_t>& ls) {
  std::int64_t g = ls.empty() ? 0 : ls.front();
  for (std::size_t i = 1; i < ls.size(); ++i) g = std::max(g, ls[i] - ls[i - 1]);
  return g;
}

std::string exact_periods(std::ostringstream& detail) {
  const auto f = make_builtin("exponential");
  const Grid g(-50.0, 50.0, 0.01);
  double worst = 0.0;
  for (int k = 1; k <= 10; ++k) worst = std::max(worst, defect(f, 2 * pi * k, UnitComplex::one(), g).value);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> theta(0.01, 100.0);
  for (int i = 0; i < 20; ++i) {
    const double th = theta(rng);
    worst = std::max(worst, defect(f, th, UnitComplex::from_angle(th), g).value);
  }
  detail << "max defect " << worst;
  return worst <= 1e-10 ? "" : fmt("defect", worst, 1e-10);
}

std::string anti_period_bound(std::ostringstream& detail) {
  std::vector<double> alphas;
  for (int n = 1; n <= 4; ++n) alphas.push_back(std::pow(3.0, n) * pi);
  const Grid g(-200 * pi, 200 * pi, 0.01);
  const auto f = make_builtin("dugorocne-f", {{"N", 25}});
  const auto h = make_builtin("haraux-souplet", {{"base", 3}, {"N", 25}});
  const auto rf = recurrence_defects(f, UnitComplex::rational(1, 1), alphas, g);
  const auto rh = recurrence_defects(h, UnitComplex::one(), alphas, g);
  double margin = INFINITY;
  for (int n = 1; n <= 4; ++n) {
    const double horizon = 200 * pi + alphas[n - 1];
    const double bound = pi / (2.0 * (n + 1));
    const double bf = bound + 2.0 * f.tail_bound(horizon), bh = bound + 2.0 * h.tail_bound(horizon);
    if (rf.defects[n - 1] > bf) return fmt("dugorocne-f defect", rf.defects[n - 1], bf);
    if (rh.defects[n - 1] > bh) return fmt("haraux-souplet defect", rh.defects[n - 1], bh);
    margin = std::min({margin, bf - rf.defects[n - 1], bh - rh.defects[n - 1]});
  }
  detail << "n=1..4, smallest margin " << margin;
  return "";
}

std::string mean_growth(std::ostringstream& detail) {
  const auto f = make_builtin("haraux-souplet", {{"base", 3}, {"N", 25}});
  std::vector<double> horizons;
  for (int k = 8; k <= 12; ++k) horizons.push_back(std::pow(3.0, k) * pi);
  const auto m = cesaro_mean(f, horizons, 1e-3);
  detail << "means";
  for (int k = 8; k <= 12; ++k) {
    const double v = m.values[k - 8][0].real();
    const double lower = 0.5 * (std::log(static_cast<double>(k)) - 1.0) - 0.1;
    detail << " " << v;
    if (!(v > lower)) return fmt("lower bound not exceeded; bound", lower, v);
  }
  return "";
}

std::string mean_zero(std::ostringstream& detail) {
  const auto f = make_builtin("exponential");
  const auto c = UnitComplex::rational(1, 2);
  const auto scan = scan_periods(f, c, 1e-3, 10.0, 1e-4, Grid(-20.0, 20.0, 0.01));
  const auto r = mean_zero_check(f, c, scan, 32);
  if (!r.passed) return "mean_zero_check did not pass";
  for (const auto& [T, mean] : r.curve)
    if (mean > 2.0 / T) return fmt("|mean(T)| vs 2/T", mean, 2.0 / T);

  std::vector<double> freqs;
  for (int k = -5; k <= 5; ++k) freqs.push_back(k);
  const auto lines = spectrum_scan(make_builtin("kader-g"), freqs, 0.1, doubling_horizons(1000.0, 4), 1e-3);
  if (lines.size() != 4) return "kader-g spectrum has " + std::to_string(lines.size()) + " lines, expected 4";
  const double rs[] = {-4, -2, 2, 4}, mags[] = {0.25, 1.0, 1.0, 0.25};
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (lines[i].r != rs[i]) return "kader-g line at unexpected frequency " + std::to_string(lines[i].r);
    worst = std::max(worst, std::abs(lines[i].coefficient.norm() - mags[i]) / mags[i]);
  }
  detail << r.curve.size() << " mean samples, kader relative error " << worst;
  return worst <= 0.05 ? "" : fmt("kader relative error", worst, 0.05);
}

std::string telescoping(std::ostringstream& detail) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> tau(0.05, 20.0), angle(-pi, pi);
  std::uniform_int_distribution<int> l(1, 8), p(-7, 7), q(1, 9), coin(0, 1);
  const std::vector<Signal> fs{make_builtin("kader-g"), make_builtin("cosine", {{"omega", 1.7}}),
                               make_builtin("exponential", {{"mu", 0.3}}),
                               make_builtin("strina-series", {{"p", 3}, {"q", 1}, {"N", 8}})};
  const Grid g(-30.0, 30.0, 0.02);
  int violations = 0;
  for (int k = 0; k < 200; ++k) {
    const auto& f = fs[k % fs.size()];
    UnitComplex c = UnitComplex::from_angle(angle(rng));
    if (coin(rng)) {
      int pp = p(rng), qq = q(rng);
      if (pp == 0 || std::gcd(std::abs(pp), qq) != 1) pp = 1, qq = 1;
      c = UnitComplex::rational(pp, qq);
    }
    const auto b = power_defect_bound(f, c, tau(rng), l(rng), g);
    if (b.lhs > b.rhs + 2.0 * *f.lipschitz() * g.step()) ++violations;
  }
  detail << "200 cases, " << violations << " violations";
  return violations == 0 ? "" : "telescoping inequality violated";
}

std::string reflection_modulus(std::ostringstream& detail) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> tau_units(1, 4000);
  std::uniform_real_distribution<double> tau(0.1, 30.0), angle(-pi, pi);
  const auto f = make_builtin("kader-g") + make_builtin("exponential", {{"mu", 0.5}});
  const auto s = make_builtin("strina-series", {{"p", 3}, {"q", 1}, {"N", 12}});
  const Grid dyadic(-10.0, 10.0, 1.0 / 64);
  const Grid g(-20.0, 20.0, 0.02);
  int violations = 0;
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    // Dyadic shifts on a dyadic grid keep t + tau exact, so the identity holds to rounding.
    const double t = tau_units(rng) / 256.0;
    const auto c = UnitComplex::rational(1, 3 + k % 5);
    const double lhs = defect(reflect(f), t, c.inverse(), dyadic).value;
    std::vector<double> mirrored;
    for (std::size_t i = 0; i < dyadic.size(); ++i) mirrored.push_back(-(dyadic[i] + t));
    const double diff = std::abs(lhs - defect_on_nodes(f, t, c, mirrored));
    worst = std::max(worst, diff);
    if (diff > 1e-12) ++violations;
  }
  for (int k = 0; k < 50; ++k) {
    const double t = tau(rng);
    const auto c = UnitComplex::from_angle(angle(rng));
    if (defect(modulus(s), t, UnitComplex::one(), g).value > defect(s, t, c, g).value + 1e-15) ++violations;
  }
  detail << "100 cases, " << violations << " violations, reflection error " << worst;
  return violations == 0 ? "" : "identity or domination violated";
}

std::string orbit(std::ostringstream& detail) {
  const double phi = std::sqrt(2.0) - 1.0;
  const complex target(-1.0, 0.0);
  const auto o = orbit_approximants(phi, target, 0.05, 40);
  const auto oracle = brute_force_orbit(phi, target, 0.05, o.ls.back());
  if (o.ls != oracle) return "approximants differ from the brute-force admissible set";
  const auto long_run = brute_force_orbit(phi, target, 0.05, 2'000'000);
  const std::int64_t oracle_gap = max_gap(long_run);
  detail << o.ls.size() << " approximants match, gap " << max_gap(o.ls) << " <= oracle gap " << oracle_gap
         << ", certified bound " << o.gaps_bound;
  if (max_gap(o.ls) > oracle_gap) return "returned gaps exceed the oracle's max gap";
  if (o.gaps_bound < oracle_gap) return "reported gap bound is below the oracle's max gap";
  return "";
}

std::string convolution(std::ostringstream& detail) {
  const auto k = Kernel::exponential(1.0);
  const auto e = make_builtin("exponential");
  double worst = 0.0;
  for (double t : {-7.0, -1.0, 0.0, 2.5, 40.0}) {
    worst = std::max(worst, std::abs(convolve_line(k, e, t).value[0] - std::exp(complex(0, t)) / complex(1, 1)));
    worst = std::max(worst,
                     std::abs(heat_solution(e, 1.0, t).value[0] - std::exp(-1.0) * std::exp(complex(0, t))));
  }
  if (worst > 1e-6) return fmt("closed-form error", worst, 1e-6);

  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> tau(0.5, 30.0), angle(-pi, pi);
  const auto f = e + scale(make_builtin("exponential", {{"mu", std::sqrt(2.0)}}), 0.5);
  const ConvolveOptions opts{20.0, 0.05};
  const auto F = convolution_signal(k, f, opts);
  const Grid out(0.0, 10.0, 0.05), in(-20.0, 10.0, 0.05);
  int violations = 0;
  for (int i = 0; i < 50; ++i) {
    const double t = tau(rng);
    const auto c = UnitComplex::from_angle(angle(rng));
    const double d = defect(f, t, c, in).value;
    if (defect(F, t, c, out).value > d * k.integral() + 1e-9) ++violations;
  }
  detail << "closed-form error " << worst << ", 50 transport pairs, " << violations << " violations";
  return violations == 0 ? "" : "invariance transport violated";
}

std::string q_tail_gate(std::ostringstream& detail) {
  const auto k = Kernel::fractional(0.5);
  // For q = 3 the kernel enters in L^{q'} with q' = 3/2, and (gamma - 1) q' = -3/4 > -1.
  if (!gejacina_admissible(0.5, 3.0)) return "gate rejects q = 3";
  bool accepts3 = true;
  try {
    const auto t = kernel_q_tail(k, conjugate_exponent(3.0));
    detail << "q=3 tail " << t.value << " +- " << t.error_bound;
  } catch (const SingularWindowError&) {
    accepts3 = false;
  }
  // The kernel itself in L^4 has (gamma - 1) * 4 = -2 <= -1, so the first window diverges.
  const bool rejects4 = throws<SingularWindowError>([&] { kernel_q_tail(k, 4.0); });
  detail << ", q=4 " << (rejects4 ? "rejected" : "accepted");
  if (!accepts3) return "kernel_q_tail rejects q = 3";
  if (!rejects4) return "kernel_q_tail accepts q = 4";
  return "";
}

std::string solver(std::ostringstream& detail) {
  const Grid g(-20.0, 60.0, 0.01);
  const auto k = Kernel::exponential(1.0);
  const auto F = make_forcing(make_builtin("exponential"), "sin-re", 0.1);
  const double tol = 1e-8;
  const auto u = fixed_point_solve(F, k, constant_trajectory(g, Vector::Zero(1)), {tol, 100});
  if (!u.converged) return "solver did not converge";
  double worst_ratio = 0.0;
  for (std::size_t i = 1; i < u.residual_history.size(); ++i)
    worst_ratio = std::max(worst_ratio, u.residual_history[i] / u.residual_history[i - 1]);
  if (worst_ratio > 0.12) return fmt("residual ratio", worst_ratio, 0.12);

  const auto a = fixed_point_solve(F, k, random_trajectory(g, 1, 5.0, 1), {tol, 100});
  const auto b = fixed_point_solve(F, k, random_trajectory(g, 1, 5.0, 2), {tol, 100});
  double spread = 0.0;
  for (std::size_t i = a.first_interior; i < g.size(); ++i) spread = std::max(spread, (a.at(i) - b.at(i)).norm());
  if (spread > 2 * tol / (1 - 0.1)) return fmt("random starts differ", spread, 2 * tol / 0.9);

  std::vector<double> alphas;
  for (int n = 1; n <= 5; ++n) alphas.push_back(2 * pi * n);
  const auto rec = recurrence_of_solution(u, UnitComplex::one(), alphas);
  const double worst_rec = *std::max_element(rec.defects.begin(), rec.defects.end());
  detail << u.iterations << " iterations, ratio " << worst_ratio << ", spread " << spread << ", recurrence "
         << worst_rec;
  return worst_rec <= 1e-4 ? "" : fmt("recurrence defect", worst_rec, 1e-4);
}

std::string negative_guards(std::ostringstream& detail) {
  const auto cosine = make_builtin("cosine");
  const auto i = UnitComplex::rational(1, 2);
  const auto r = scan_periods(cosine, i, 0.5, 50.0, 0.01, Grid(-20.0, 20.0, 0.01));
  if (!r.accepted.empty()) return "c = i scan of cos t accepted a shift";
  // |cos(tau) - i| >= 1 at t = 0 for every tau.
  double lower = INFINITY;
  for (int k = 1; k <= 5000; ++k) lower = std::min(lower, defect_on_nodes(cosine, 0.01 * k, i, std::vector<double>{0.0}));
  if (lower < 1.0) return fmt("pointwise lower bound", 1.0, lower);

  int rejected = 0, total = 0;
  const auto expect = [&](bool ok) {
    ++total;
    rejected += ok;
  };
  expect(throws<InvalidMultiplier>([] { require_unit_modulus({1.5, 0.0}); }));
  expect(throws<InvalidMultiplier>([] { unit_complex_from_json(json{{"re", 1.5}, {"im", 0.0}}); }));
  expect(throws<InvalidMultiplier>([] { unit_complex_from_json(json{{"re", 0.0}, {"im", 0.999}}); }));
  expect(throws<InvalidMultiplier>([] {
    UnitComplex::checked(complex(0.0, 0.5), UnitComplex::ArgKind::Rational, 1, 2, 0.0);
  }));
  const json bad_c{{"re", 1.5}, {"im", 0.0}};
  const json grid{{"start", -5.0}, {"end", 5.0}, {"step", 0.1}};
  const std::vector<json> configs{
      {{"command", "defect"}, {"signal", "cosine"}, {"c", bad_c}, {"tau", 1.0}, {"grid", grid}},
      {{"command", "scan"}, {"signal", "cosine"}, {"c", bad_c}, {"epsilon", 0.1}, {"tau_max", 5.0},
       {"tau_step", 0.1}, {"grid", grid}},
      {{"command", "recurrence"}, {"signal", "cosine"}, {"c", bad_c}, {"alphas", {1.0, 2.0}}, {"grid", grid}},
      {{"command", "semi"}, {"signal", "cosine"}, {"c", bad_c}, {"epsilon", 0.1}, {"p_candidates", {1.0}},
       {"m_max", 2}, {"grid", grid}},
      {{"command", "stepanov"}, {"signal", "cosine"}, {"c", bad_c}, {"epsilon", 0.1}, {"tau_max", 5.0},
       {"tau_step", 0.1}},
      {{"command", "mean"}, {"signal", "exponential"}, {"c", bad_c}, {"epsilon", 0.1}, {"tau_max", 5.0},
       {"tau_step", 0.1}, {"grid", grid}},
  };
  for (const auto& cfg : configs) {
    std::ostringstream out, err;
    const int code = cli::run(cfg, out, err);
    expect(code == 2 && err.str().find("InvalidMultiplier") != std::string::npos);
  }
  detail << "scan empty, min |cos(tau) - i| = " << lower << ", " << rejected << "/" << total
         << " off-circle inputs rejected";
  return rejected == total ? "" : "an off-circle multiplier was accepted";
}

}  // namespace

int main() {
  criterion(1, "exact periods of e^{it}", 1.0, exact_periods);
  criterion(2, "anti-period bound pi/(2(n+1))", 30.0, anti_period_bound);
  criterion(3, "Cesaro mean growth of haraux-souplet base 3", 60.0, mean_growth);
  criterion(4, "mean zero for c = i and kader-g spectrum", 30.0, mean_zero);
  criterion(5, "telescoping power-defect inequality", 60.0, telescoping);
  criterion(6, "reflection identity and modulus domination", 60.0, reflection_modulus);
  criterion(7, "orbit approximants for sqrt(2) - 1 to -1", 10.0, orbit);
  criterion(8, "convolution closed forms and invariance transport", 60.0, convolution);
  criterion(9, "q-tail gate at gamma = 0.5", 10.0, q_tail_gate);
  criterion(10, "solver contraction, uniqueness, recurrence", 60.0, solver);
  criterion(11, "negative-case guards", 30.0, negative_guards);
  std::printf("%d/11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
