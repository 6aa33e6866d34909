#include "leja/common.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>

namespace leja {

std::string_view to_string(PointKind kind) {
  return kind == PointKind::real ? "real" : "conjugate";
}

PointKind point_kind_from_string(std::string_view name) {
  if (name == "real")
    return PointKind::real;
  if (name == "conjugate")
    return PointKind::conjugate;
  throw ParameterError("unknown point kind '" + std::string(name) + "'");
}

Tolerance Tolerance::parse(std::string_view text) {
  if (text == "half")
    return half();
  if (text == "single")
    return single();
  if (text == "double")
    return dbl();
  std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw ParameterError("cannot parse tolerance '" + s + "'");
  if (!(v > 0.0) || v > 0x1p-10)
    throw ParameterError("tolerance must lie in (0, 2^-10], got '" + s + "'");
  return {v};
}

std::string Tolerance::name() const {
  if (*this == half())
    return "half";
  if (*this == single())
    return "single";
  if (*this == dbl())
    return "double";
  return "custom";
}

std::string Tolerance::hex() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", value);
  return buf;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

} // namespace leja
