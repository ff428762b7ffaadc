#include "cperiod/descriptor.hpp"

#include <set>

#include "cperiod/builtins.hpp"
#include "cperiod/errors.hpp"

namespace cperiod {
namespace {

void require_keys(const nlohmann::json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + " must be a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) throw ValidationError(where + ": unknown field '" + it.key() + "'");
  }
}

double number_field(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj.at(key).is_number()) {
    throw ValidationError(where + ": field '" + key + "' must be a number");
  }
  return obj.at(key).get<double>();
}

}  // namespace

Signal apply_transform(const Signal& f, const nlohmann::json& step) {
  if (!step.is_object() || !step.contains("kind") || !step.at("kind").is_string()) {
    throw ValidationError("transform needs a string 'kind'");
  }
  const auto kind = step.at("kind").get<std::string>();
  const std::string where = "transform '" + kind + "'";
  if (kind == "scale") {
    require_keys(step, {"kind", "re", "im"}, where);
    return scale(f, complex(number_field(step, "re", where), step.contains("im") ? number_field(step, "im", where) : 0.0));
  }
  if (kind == "shift") {
    require_keys(step, {"kind", "a"}, where);
    return shift(f, number_field(step, "a", where));
  }
  if (kind == "dilate") {
    require_keys(step, {"kind", "b"}, where);
    return dilate(f, number_field(step, "b", where));
  }
  if (kind == "reflect") {
    require_keys(step, {"kind"}, where);
    return reflect(f);
  }
  if (kind == "modulus") {
    require_keys(step, {"kind"}, where);
    return modulus(f);
  }
  if (kind == "restrict") {
    require_keys(step, {"kind"}, where);
    return restrict_to_half_line(f);
  }
  if (kind == "add" || kind == "multiply") {
    require_keys(step, {"kind", "other"}, where);
    if (!step.contains("other")) throw ValidationError(where + " needs 'other'");
    const Signal g = signal_from_descriptor(step.at("other"));
    return kind == "add" ? add(f, g) : multiply(f, g);
  }
  throw ValidationError("unknown transform kind '" + kind + "'");
}

Signal signal_from_descriptor(const nlohmann::json& descriptor) {
  require_keys(descriptor, {"name", "params", "transforms"}, "signal descriptor");
  if (!descriptor.contains("name") || !descriptor.at("name").is_string()) {
    throw ValidationError("signal descriptor needs a string 'name'");
  }
  const auto params = descriptor.value("params", nlohmann::json::object());
  Signal f = make_builtin(descriptor.at("name").get<std::string>(), params);
  if (descriptor.contains("transforms")) {
    if (!descriptor.at("transforms").is_array()) throw ValidationError("'transforms' must be an array");
    for (const auto& step : descriptor.at("transforms")) f = apply_transform(f, step);
  }
  return f;
}

}  // namespace cperiod
