#include "cperiod/rotation_orbit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cperiod/errors.hpp"

namespace cperiod {
namespace {

// Rotation by c^l measured in turns: c^l = exp(2 pi i l theta).
struct Rotation {
  long double theta;  // phi / 2 reduced to [0, 1)
  long double alpha;  // arg(target) / (2 pi) in [0, 1)

  Rotation(double phi, complex target) {
    long double t = std::fmod(static_cast<long double>(phi) / 2.0L, 1.0L);
    theta = t < 0 ? t + 1.0L : t;
    long double a = std::atan2(static_cast<long double>(target.imag()), static_cast<long double>(target.real())) /
                    (2.0L * std::numbers::pi_v<long double>);
    alpha = a < 0 ? a + 1.0L : a;
  }

  // Circle distance between l * theta and alpha, in turns.
  long double distance(std::int64_t l) const {
    long double x = std::fmod(static_cast<long double>(l) * theta - alpha, 1.0L);
    if (x < 0) x += 1.0L;
    return std::min(x, 1.0L - x);
  }
};

// |e^{2 pi i x} - e^{2 pi i y}| = 2 sin(pi ||x - y||).
long double chord(long double turns) { return 2.0L * std::sin(std::numbers::pi_v<long double> * turns); }

}  // namespace

std::vector<Convergent> convergents(long double x, std::int64_t limit) {
  std::vector<Convergent> out;
  std::int64_t p_prev = 1, q_prev = 0, p = 0, q = 1;  // (p_{-1}, q_{-1}), (p_0, q_0) for a_0 = 0
  out.push_back({p, q});
  long double r = x;
  for (int k = 0; k < 64 && r > 0.0L; ++k) {
    const long double inv = 1.0L / r;
    const long double a_ld = std::floor(inv);
    if (a_ld > static_cast<long double>(limit)) break;
    const auto a = static_cast<std::int64_t>(a_ld);
    const std::int64_t p_next = a * p + p_prev;
    const std::int64_t q_next = a * q + q_prev;
    if (q_next > limit) break;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    out.push_back({p, q});
    r = inv - a_ld;
  }
  return out;
}

OrbitApproximants orbit_approximants(double phi, complex target, double epsilon, int k_count,
                                     const OrbitOptions& options) {
  if (!std::isfinite(phi) || phi == 0.0) throw ValidationError("orbit needs a finite nonzero phi");
  require_unit_modulus(target);
  if (!(epsilon > 0.0)) throw ValidationError("orbit needs epsilon > 0");
  if (k_count < 1) throw ValidationError("orbit needs k_count >= 1");

  const Rotation rot(phi, target);
  // Admissible arc half-width delta in turns: 2 sin(pi delta) = epsilon.
  const long double delta =
      epsilon >= 2.0 ? 1.0L : std::asin(static_cast<long double>(epsilon) / 2.0L) / std::numbers::pi_v<long double>;

  OrbitApproximants out;
  out.phi = phi;
  out.target = target;
  out.epsilon = epsilon;
  for (std::int64_t l = 1; l <= options.l_max && static_cast<int>(out.ls.size()) < k_count; ++l) {
    if (rot.distance(l) < delta) out.ls.push_back(l);
  }
  if (static_cast<int>(out.ls.size()) < k_count) {
    std::ostringstream os;
    os << "found " << out.ls.size() << " of " << k_count << " admissible powers below l_max = " << options.l_max;
    if (!out.ls.empty()) os << " (last l = " << out.ls.back() << ")";
    throw SearchBudgetError(os.str());
  }

  std::int64_t observed = 1;
  for (std::size_t i = 1; i < out.ls.size(); ++i) observed = std::max(observed, out.ls[i] - out.ls[i - 1]);
  out.gaps_bound = observed;

  // Any q_k consecutive points l theta lie within 1/q_{k+1} of a lattice of
  // spacing 1/q_k, so an arc of length 2 delta > 1/q_k + 2/q_{k+1} is hit by
  // each such block and consecutive admissible powers differ by at most q_k.
  const auto cf = convergents(rot.theta, options.l_max);
  for (std::size_t k = 0; k + 1 < cf.size(); ++k) {
    const long double qk = cf[k].q, qn = cf[k + 1].q;
    const long double err = std::abs(qk * rot.theta - cf[k].p);
    if (!(err * qn < 1.0L)) continue;
    if (2.0L * delta > 1.0L / qk + 2.0L / qn) {
      out.gaps_bound = std::max(observed, cf[k].q);
      out.gaps_certified = true;
      break;
    }
  }
  return out;
}

double orbit_min_distance(double phi, complex target, std::int64_t L) {
  require_unit_modulus(target);
  if (L < 1) throw ValidationError("orbit_min_distance needs L >= 1");
  const Rotation rot(phi, target);
  long double best = 1.0L;
  for (std::int64_t l = 1; l <= L; ++l) best = std::min(best, rot.distance(l));
  return static_cast<double>(chord(best));
}

RootStructure root_structure(const UnitComplex& c) {
  if (!c.is_rational()) throw WrongKindError("root structure needs a rational argument");
  RootStructure out;
  const bool odd = (c.p() % 2) != 0;
  out.order = odd ? 2 * c.q() : c.q();
  out.q_power_sign = odd ? -1 : 1;
  return out;
}

}  // namespace cperiod
