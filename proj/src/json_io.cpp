#include "coexist/json_io.hpp"

#include <cstdio>

#include <json.hpp>

namespace coexist {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Effect effect_from_json(const std::string& text, double tol) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& err) {
    throw Error(Errc::ParseError, std::string("invalid JSON: ") + err.what());
  }
  if (!parsed.is_object() || !parsed.contains("coeffs"))
    throw Error(Errc::ParseError, "expected an object with a \"coeffs\" key");
  const auto& coeffs = parsed["coeffs"];
  if (!coeffs.is_array() || coeffs.size() != 4)
    throw Error(Errc::ParseError, "\"coeffs\" must be an array of 4 numbers");
  MVec4 v;
  double* slots[4] = {&v.c0, &v.c1, &v.c2, &v.c3};
  for (int i = 0; i < 4; ++i) {
    if (!coeffs[i].is_number())
      throw Error(Errc::ParseError, "\"coeffs\" must be an array of 4 numbers");
    *slots[i] = coeffs[i].get<double>();
  }
  return Effect::make(v, tol);
}

std::string coeffs_to_json(const MVec4& v) {
  std::string out = "[";
  out += format_double(v.c0);
  out += ",";
  out += format_double(v.c1);
  out += ",";
  out += format_double(v.c2);
  out += ",";
  out += format_double(v.c3);
  out += "]";
  return out;
}

std::string effect_to_json(const Effect& e) {
  return std::string("{\"coeffs\":") + coeffs_to_json(e.vec()) + "}";
}

}  // namespace coexist
