#include "cperiod/builtins.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "cperiod/errors.hpp"

namespace cperiod {
namespace {

using nlohmann::json;

Vector scalar(complex z) {
  Vector v(1);
  v(0) = z;
  return v;
}

// Fills defaults and rejects keys the builtin does not know.
json resolve_params(const std::string& name, const json& given, const json& defaults) {
  if (!given.is_null() && !given.is_object()) throw ValidationError(name + ": params must be an object");
  json out = defaults;
  if (given.is_object()) {
    for (auto it = given.begin(); it != given.end(); ++it) {
      if (!defaults.contains(it.key())) throw ValidationError(name + ": unknown parameter '" + it.key() + "'");
      out[it.key()] = it.value();
    }
  }
  for (auto it = out.begin(); it != out.end(); ++it) {
    if (it.value().is_null()) throw ValidationError(name + ": missing required parameter '" + it.key() + "'");
  }
  return out;
}

double number(const json& params, const char* key) {
  const json& v = params.at(key);
  if (!v.is_number()) throw ValidationError(std::string("parameter '") + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError(std::string("parameter '") + key + "' must be finite");
  return x;
}

std::int64_t integer(const json& params, const char* key) {
  const json& v = params.at(key);
  if (!v.is_number_integer()) throw ValidationError(std::string("parameter '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

json descriptor(const std::string& name, json params) {
  return {{"name", name}, {"params", std::move(params)}, {"transforms", json::array()}};
}

Signal exponential(const json& p) {
  const double mu = number(p, "mu");
  return Signal(Domain::FullLine, 1, [mu](double t) { return scalar(std::polar(1.0, mu * t)); },
                descriptor("exponential", p))
      .with_lipschitz(std::abs(mu))
      .with_bandwidth(std::abs(mu));
}

Signal cosine(const json& p) {
  const double w = number(p, "omega");
  return Signal(Domain::FullLine, 1, [w](double t) { return scalar(std::cos(w * t)); }, descriptor("cosine", p))
      .with_lipschitz(std::abs(w))
      .with_bandwidth(std::abs(w));
}

Signal constant(const json& p) {
  const complex z(number(p, "re"), number(p, "im"));
  return Signal(Domain::FullLine, 1, [z](double) { return scalar(z); }, descriptor("constant", p))
      .with_lipschitz(0.0)
      .with_bandwidth(0.0);
}

Signal decay(const json& p) {
  const double rate = number(p, "rate");
  if (!(rate > 0.0)) throw ValidationError("decay: rate must be positive");
  return Signal(Domain::HalfLine, 1, [rate](double t) { return scalar(std::exp(-rate * t)); }, descriptor("decay", p))
      .with_lipschitz(rate);
}

Signal kader_g(const json& p) {
  return Signal(Domain::FullLine, 1,
                [](double t) { return scalar(0.5 * std::cos(4.0 * t) + 2.0 * std::cos(2.0 * t)); },
                descriptor("kader-g", p))
      .with_lipschitz(6.0)
      .with_bandwidth(4.0);
}

Signal strina_series(const json& params) {
  const std::int64_t p = integer(params, "p");
  const std::int64_t q = integer(params, "q");
  const std::int64_t N = integer(params, "N");
  if (p < 1 || q < 1 || p % 2 == 0 || q % 2 == 0) throw ValidationError("strina-series: p and q must be odd naturals");
  if ((p - 1) % q != 0) throw ValidationError("strina-series: needs p - 1 = 0 (mod q)");
  if (N < 1 || N > 100000) throw ValidationError("strina-series: N must be in [1, 100000]");
  std::vector<double> freq(N), weight(N);
  double lipschitz = 0.0, partial = 0.0;
  for (std::int64_t n = 1; n <= N; ++n) {
    freq[n - 1] = 1.0 / static_cast<double>(2 * n * q + 1);
    weight[n - 1] = 1.0 / static_cast<double>(n * n);
    lipschitz += weight[n - 1] * freq[n - 1];
  }
  // Summed smallest-first for an accurate tail.
  for (std::int64_t n = N; n >= 1; --n) partial += weight[n - 1];
  const double tail = std::max(0.0, std::numbers::pi * std::numbers::pi / 6.0 - partial);
  Truncation tr{static_cast<int>(N), [tail](double) { return tail; }};
  return Signal(Domain::FullLine, 1,
                [freq = std::move(freq), weight = std::move(weight)](double t) {
                  complex s = 0.0;
                  for (std::size_t k = 0; k < freq.size(); ++k) s += weight[k] * std::polar(1.0, t * freq[k]);
                  return scalar(s);
                },
                descriptor("strina-series", params))
      .with_lipschitz(lipschitz)
      .with_truncation(tr)
      .with_bandwidth(freq.empty() ? 0.0 : 1.0 / static_cast<double>(2 * q + 1));
}

struct SineSquareSeries {
  std::vector<double> inv_scale;  // 1 / base^n
  std::vector<double> weight;     // 1 / n

  double operator()(double t) const {
    double s = 0.0;
    for (std::size_t k = 0; k < weight.size(); ++k) {
      const double v = std::sin(t * inv_scale[k]);
      s += weight[k] * v * v;
    }
    return s;
  }
};

SineSquareSeries sine_square_series(int base, int N) {
  SineSquareSeries s;
  double scale = 1.0;
  for (int n = 1; n <= N; ++n) {
    scale *= base;
    s.inv_scale.push_back(1.0 / scale);
    s.weight.push_back(1.0 / n);
  }
  return s;
}

void validate_sine_square(const char* name, std::int64_t base, std::int64_t N) {
  if (base != 2 && base != 3) throw ValidationError(std::string(name) + ": base must be 2 or 3");
  if (N < 1 || N > 600) throw ValidationError(std::string(name) + ": N must be in [1, 600]");
}

Signal haraux_souplet(const json& p) {
  const std::int64_t base = integer(p, "base");
  const std::int64_t N = integer(p, "N");
  validate_sine_square("haraux-souplet", base, N);
  auto series = sine_square_series(static_cast<int>(base), static_cast<int>(N));
  double lipschitz = 0.0;
  for (std::size_t k = 0; k < series.weight.size(); ++k) lipschitz += series.weight[k] * series.inv_scale[k];
  const int b = static_cast<int>(base), n = static_cast<int>(N);
  Truncation tr{n, [b, n](double h) { return haraux_souplet_tail(b, n, h); }};
  return Signal(Domain::FullLine, 1, [series](double t) { return scalar(series(t)); },
                descriptor("haraux-souplet", p))
      .with_lipschitz(lipschitz)
      .with_truncation(tr)
      .with_bandwidth(2.0 / static_cast<double>(base));
}

Signal dugorocne_f(const json& p) {
  const std::int64_t N = integer(p, "N");
  validate_sine_square("dugorocne-f", 3, N);
  auto series = sine_square_series(3, static_cast<int>(N));
  // |(sin t g)'| <= sup|g| + sup|g'| with sup|g| <= H_N for the truncation.
  double lipschitz = 0.0;
  for (std::size_t k = 0; k < series.weight.size(); ++k) {
    lipschitz += series.weight[k] * (1.0 + series.inv_scale[k]);
  }
  const int n = static_cast<int>(N);
  Truncation tr{n, [n](double h) { return haraux_souplet_tail(3, n, h); }};
  return Signal(Domain::FullLine, 1, [series](double t) { return scalar(std::sin(t) * series(t)); },
                descriptor("dugorocne-f", p))
      .with_lipschitz(lipschitz)
      .with_truncation(tr)
      .with_bandwidth(1.0 + 2.0 / 3.0);
}

// f_n from Bohr's recursion. Translates of f_{n-1} by m tau_n have disjoint
// supports because tau_n > 2 * support radius of f_{n-1}, so at most one
// translate is nonzero at any x.
class BohrRecursion {
 public:
  BohrRecursion(std::vector<double> taus) : taus_(std::move(taus)) {
    radius_.assign(taus_.size() + 1, 0.0);
    radius_[1] = 1.0;
    for (std::size_t n = 2; n < radius_.size(); ++n) {
      radius_[n] = radius_[n - 1] + static_cast<double>(n - 1) * taus_[n - 1];
    }
  }

  double operator()(double x) const { return eval(static_cast<int>(taus_.size()), x); }

 private:
  double eval(int n, double x) const {
    if (std::abs(x) > radius_[n]) return 0.0;
    if (n == 1) return std::max(0.0, 1.0 - std::abs(x));
    const double tau = taus_[n - 1];
    const double m = std::round(x / tau);
    if (std::abs(m) > n - 1) return 0.0;
    const double local = x - m * tau;
    if (std::abs(local) > radius_[n - 1]) return 0.0;
    return (static_cast<double>(n) - std::abs(m)) / n * eval(n - 1, local);
  }

  std::vector<double> taus_;
  std::vector<double> radius_;
};

Signal bohr_recurrent(const json& p) {
  const std::int64_t n_max = integer(p, "n_max");
  if (n_max < 1 || n_max > 8) throw ValidationError("bohr-recurrent: n_max must be in [1, 8]");
  std::vector<double> taus;
  if (p.at("taus").is_array() && !p.at("taus").empty()) {
    taus = p.at("taus").get<std::vector<double>>();
    if (static_cast<std::int64_t>(taus.size()) != n_max) {
      throw ValidationError("bohr-recurrent: taus must list exactly n_max values");
    }
    if (taus[0] != 1.0) throw ValidationError("bohr-recurrent: tau_1 must be 1");
    double weighted = 0.0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
      if (i > 0 && !(taus[i] > 2.0 * weighted)) {
        throw ValidationError("bohr-recurrent: needs tau_n > 2 * sum_{i<n} i tau_i");
      }
      weighted += static_cast<double>(i + 1) * taus[i];
    }
  } else {
    taus = bohr_recursion_taus(static_cast<int>(n_max));
  }
  json resolved = p;
  resolved["taus"] = taus;
  BohrRecursion rec(std::move(taus));
  return Signal(Domain::FullLine, 1, [rec](double t) { return scalar(rec(t)); }, descriptor("bohr-recurrent", resolved))
      .with_lipschitz(1.0);
}

Signal devries(const json& params) {
  std::vector<std::int64_t> periods;
  if (params.at("p").is_array() && !params.at("p").empty()) {
    periods = params.at("p").get<std::vector<std::int64_t>>();
  } else {
    periods = devries_default_periods(static_cast<int>(integer(params, "i_max")));
  }
  for (std::size_t i = 0; i < periods.size(); ++i) {
    if (periods[i] < 1) throw ValidationError("devries: periods must be positive integers");
    if (i > 0 && (periods[i] <= periods[i - 1] || periods[i] % periods[i - 1] != 0)) {
      throw ValidationError("devries: needs p_i strictly increasing with p_i | p_{i+1}");
    }
  }
  json resolved = params;
  resolved["p"] = periods;
  resolved["i_max"] = periods.size();
  std::vector<double> half(periods.begin(), periods.end());
  const double lipschitz = 1.0 / half.front();
  return Signal(Domain::FullLine, 1,
                [half = std::move(half)](double t) {
                  double best = 0.0;
                  for (double p : half) {
                    const double r = t - 2.0 * p * std::round(t / (2.0 * p));
                    best = std::max(best, std::min(1.0, std::abs(r) / p));
                  }
                  return scalar(best);
                },
                descriptor("devries", resolved))
      .with_lipschitz(lipschitz);
}

struct Entry {
  BuiltinInfo info;
  Signal (*make)(const json&);
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {{"exponential", {{"mu", 1.0}}, "e^{i mu t}"}, exponential},
      {{"cosine", {{"omega", 1.0}}, "cos(omega t)"}, cosine},
      {{"constant", {{"re", 1.0}, {"im", 0.0}}, "constant re + i im"}, constant},
      {{"decay", {{"rate", 1.0}}, "e^{-rate t} on [0, inf)"}, decay},
      {{"kader-g", json::object(), "cos(4t)/2 + 2cos(2t)"}, kader_g},
      {{"strina-series", {{"p", 3}, {"q", 1}, {"N", 50}}, "sum_{n<=N} e^{it/(2nq+1)}/n^2"}, strina_series},
      {{"haraux-souplet", {{"base", 2}, {"N", 20}}, "sum_{n<=N} sin^2(t/base^n)/n"}, haraux_souplet},
      {{"bohr-recurrent", {{"n_max", 5}, {"taus", json::array()}}, "Bohr bump recursion f_{n_max}"}, bohr_recurrent},
      {{"devries", {{"i_max", 4}, {"p", json::array()}}, "sup_i of 2p_i-periodic tents |t|/p_i"}, devries},
      {{"dugorocne-f", {{"N", 25}}, "sin(t) * sum_{n<=N} sin^2(t/3^n)/n"}, dugorocne_f},
  };
  return entries;
}

}  // namespace

Signal make_builtin(const std::string& name, const nlohmann::json& params) {
  for (const auto& e : registry()) {
    if (e.info.name == name) return e.make(resolve_params(name, params, e.info.defaults));
  }
  throw ValidationError("unknown builtin signal '" + name + "'");
}

const std::vector<BuiltinInfo>& builtin_catalog() {
  static const std::vector<BuiltinInfo> infos = [] {
    std::vector<BuiltinInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

std::vector<double> bohr_recursion_taus(int n_max) {
  std::vector<double> taus;
  double weighted = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const double tau = n == 1 ? 1.0 : 2.0 * weighted + 1.0;
    taus.push_back(tau);
    weighted += n * tau;
  }
  return taus;
}

std::vector<std::int64_t> devries_default_periods(int i_max) {
  if (i_max < 1 || i_max > 7) throw ValidationError("devries: i_max must be in [1, 7]");
  std::vector<std::int64_t> out;
  for (int i = 1; i <= i_max; ++i) out.push_back(std::int64_t{1} << (i * i));
  return out;
}

double haraux_souplet_tail(int base, int terms, double horizon) {
  const double h = std::abs(horizon);
  double scale = std::pow(static_cast<double>(base), terms);
  double tail = 0.0;
  int n = terms + 1;
  // Terms with horizon / base^n >= 1 can reach their full weight 1/n.
  for (; n < 100000; ++n) {
    scale *= base;
    if (h < scale) break;
    tail += 1.0 / n;
  }
  // Remaining terms: sin^2(t/b^n) <= (h/b^n)^2, summed as a geometric series.
  const double ratio = 1.0 / (static_cast<double>(base) * base);
  const double first = (h / scale) * (h / scale);
  tail += first / n / (1.0 - ratio);
  return tail;
}

UnitComplex strina_multiplier(std::int64_t p, std::int64_t q) { return UnitComplex::rational(p, q); }

double strina_c_period(std::int64_t p, std::int64_t q, int K) {
  if (K < 1) throw ValidationError("strina_c_period: K must be positive");
  double product = 1.0;
  for (int n = 1; n <= K; ++n) product *= static_cast<double>(2 * n * q + 1);
  return std::numbers::pi * static_cast<double>(p) * product / static_cast<double>(q);
}

}  // namespace cperiod
