#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace leja {

using cplx = std::complex<double>;

/// Invalid argument or violated precondition.
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Overflow, non-finite intermediate, or a root finder that failed to converge.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Requested interpolation table is not available.
class TableError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Real Leja points on [-c,c] or conjugate pairs on i[-c,c].
enum class PointKind { real, conjugate };

std::string_view to_string(PointKind kind);
PointKind point_kind_from_string(std::string_view name);

/// Maximal interpolation degree used by the planner.
inline constexpr int kMaxDegree = 100;
/// Largest index of a stored interval theta_j (ellipse focal intervals go up to here).
inline constexpr int kMaxInterval = 120;
/// Points needed at runtime and stored in table files (degree kMaxInterval).
inline constexpr std::size_t kMaxLejaPoints = kMaxInterval + 1;
/// Longest sequence the generator produces: the backward-error series for
/// degree m is truncated after 3m + 1 Newton terms.
inline constexpr std::size_t kMaxGeneratedPoints = 3 * kMaxInterval + 1;

/// Backward-error tolerance with an optional canonical name.
struct Tolerance {
  double value = 0x1p-53;

  static Tolerance half() { return {0x1p-10}; }
  static Tolerance single() { return {0x1p-24}; }
  static Tolerance dbl() { return {0x1p-53}; }

  /// "half", "single", "double", or a decimal/hex float in (0, 2^-10].
  static Tolerance parse(std::string_view text);

  /// "half", "single", "double" for the canonical values, otherwise "custom".
  std::string name() const;
  /// Hexadecimal float representation, e.g. "0x1p-53".
  std::string hex() const;

  friend bool operator==(const Tolerance&, const Tolerance&) = default;
};

/// Shortest decimal that round-trips a double (17 significant digits).
std::string format_double(double x);

} // namespace leja
