#pragma once

#include "json.hpp"

#include "cperiod/signal.hpp"

namespace cperiod {

/// Rebuilds a signal from {name, params, transforms[]}. Transform entries:
///   {"kind":"scale","re":..,"im":..}  {"kind":"shift","a":..}  {"kind":"dilate","b":..}
///   {"kind":"reflect"}  {"kind":"modulus"}  {"kind":"restrict"}
///   {"kind":"add","other":<descriptor>}  {"kind":"multiply","other":<descriptor>}
Signal signal_from_descriptor(const nlohmann::json& descriptor);

/// Applies one transform entry of the form above.
Signal apply_transform(const Signal& f, const nlohmann::json& step);

}  // namespace cperiod
