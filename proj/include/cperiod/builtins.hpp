#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cperiod/signal.hpp"

namespace cperiod {

/// Builds a named signal. Unknown names or parameters throw ValidationError.
///
///   exponential    {mu=1}                 e^{i mu t}
///   cosine         {omega=1}              cos(omega t)
///   constant       {re=1, im=0}           constant value
///   decay          {rate=1}               e^{-rate t} on [0, inf)
///   kader-g        {}                     cos(4t)/2 + 2 cos(2t)
///   strina-series  {p, q, N}              sum_{n<=N} e^{it/(2nq+1)} / n^2, p and q odd, q | p-1
///   haraux-souplet {base in {2,3}, N}     sum_{n<=N} sin^2(t / base^n) / n
///   bohr-recurrent {n_max<=8, taus?}      n_max-th step of Bohr's bump recursion
///   devries        {i_max=4 | p=[...]}    sup_i of 2p_i-periodic tents |t|/p_i
///   dugorocne-f    {N}                    sin(t) * haraux-souplet(3, N)
///
/// Series builtins register a Truncation whose tail bound is valid on the
/// requested horizon.
Signal make_builtin(const std::string& name, const nlohmann::json& params = nlohmann::json::object());

struct BuiltinInfo {
  std::string name;
  nlohmann::json defaults;
  std::string summary;
};

const std::vector<BuiltinInfo>& builtin_catalog();

/// tau_1 = 1, tau_n = 2 * sum_{i<n} i tau_i + 1.
std::vector<double> bohr_recursion_taus(int n_max);

/// p_i = 2^{i^2}, i = 1..i_max.
std::vector<std::int64_t> devries_default_periods(int i_max);

/// sup_{|t| <= horizon} of sum_{n>N} sin^2(t / base^n) / n.
double haraux_souplet_tail(int base, int terms, double horizon);

/// Multiplier exp(i pi p / q) attached to strina-series(p, q, N).
UnitComplex strina_multiplier(std::int64_t p, std::int64_t q);

/// pi p (1+2q)(1+2*2q)...(1+2Kq) / q: an exact c-period of the first K terms
/// of strina-series(p, q, N) for c = strina_multiplier(p, q).
double strina_c_period(std::int64_t p, std::int64_t q, int K);

}  // namespace cperiod
