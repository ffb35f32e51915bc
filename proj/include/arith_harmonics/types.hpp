#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ah {

using Complex = std::complex<double>;
using Rational = mpq_class;
using BigInt = mpz_class;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Error taxonomy. Everything derives from a std exception so callers that
// only care about "bad input" vs "numerics went wrong" can catch broadly.
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct PreconditionViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotInvertible : std::domain_error {
  using std::domain_error::domain_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InternalConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A complex parameter s = re + i*im. Construction rejects NaN and infinity.
class ComplexParam {
 public:
  constexpr ComplexParam() = default;
  ComplexParam(double re, double im = 0.0) : re_(re), im_(im) {  // NOLINT(google-explicit-constructor)
    if (!std::isfinite(re) || !std::isfinite(im))
      throw InvalidArgument("ComplexParam: components must be finite");
  }
  ComplexParam(Complex z) : ComplexParam(z.real(), z.imag()) {}  // NOLINT(google-explicit-constructor)

  double re() const { return re_; }
  double im() const { return im_; }
  Complex value() const { return {re_, im_}; }
  operator Complex() const { return value(); }  // NOLINT(google-explicit-constructor)

  bool is_real() const { return im_ == 0.0; }

  /// Parses "2", "0.5", "2+3i", "1.5-0.25i", "3i", "-i".
  static ComplexParam parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const ComplexParam&, const ComplexParam&) = default;

 private:
  double re_ = 0.0;
  double im_ = 0.0;
};

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Complex to_complex(const Rational& q) { return {q.get_d(), 0.0}; }
inline Complex to_complex(const Complex& z) { return z; }
inline Complex to_complex(double x) { return {x, 0.0}; }
inline Complex to_complex(std::int64_t x) { return {static_cast<double>(x), 0.0}; }

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double x);

}  // namespace ah
