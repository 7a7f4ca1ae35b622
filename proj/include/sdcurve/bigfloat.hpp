// BigFloat: a value-semantic wrapper around an MPFR number.
//
// Every BigFloat owns its own mpfr_t and carries its own significand width.
// Binary operations round the result to the wider of the two operand
// precisions, with round-to-nearest-even throughout. Nothing here touches
// MPFR's global default precision, so values can be created and combined
// freely from any number of threads.

#ifndef SDCURVE_BIGFLOAT_HPP_
#define SDCURVE_BIGFLOAT_HPP_

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace sdcurve {

class BigFloat {
 public:
  static constexpr int kDefaultBits = 256;

  // Zero at the given precision.
  explicit BigFloat(int bits = kDefaultBits);
  // Correctly rounded conversions.
  BigFloat(double value, int bits);
  BigFloat(float value, int bits);
  BigFloat(std::int64_t value, int bits);
  BigFloat(int value, int bits) : BigFloat(static_cast<std::int64_t>(value), bits) {}
  // `other` rounded to `bits`.
  BigFloat(const BigFloat& other, int bits);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  // pi correctly rounded to `bits`.
  static BigFloat pi(int bits);
  static BigFloat infinity(int bits, bool negative = false);

  // Parses a decimal (or "inf"/"nan") string, rounding to nearest at `bits`.
  // Throws std::invalid_argument if the whole string is not a number.
  static BigFloat parse(std::string_view text, int bits);

  int precision() const { return static_cast<int>(mpfr_get_prec(value_)); }

  bool is_nan() const { return mpfr_nan_p(value_) != 0; }
  bool is_inf() const { return mpfr_inf_p(value_) != 0; }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool signbit() const { return mpfr_signbit(value_) != 0; }
  // -1, 0 or +1. NaN reports 0.
  int sign() const { return is_nan() ? 0 : mpfr_sgn(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  float to_float() const { return mpfr_get_flt(value_, MPFR_RNDN); }

  // Shortest decimal string that parses back to exactly this value at this
  // precision. Scientific notation, e.g. "2.6642267636486352e-01".
  std::string to_string() const;
  // `digits` significant digits, round to nearest.
  std::string to_string(int digits) const;

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);
  BigFloat& operator*=(std::int64_t rhs);
  BigFloat& operator/=(std::int64_t rhs);

  BigFloat operator-() const;

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(std::int64_t a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, std::int64_t b);
  friend BigFloat operator/(std::int64_t a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, std::int64_t b);

  // IEEE semantics: every comparison involving NaN is false except !=.
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.value_, b.value_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.value_, b.value_) != 0; }

  // Same value and same precision.
  bool identical(const BigFloat& other) const;

 private:
  mpfr_t value_;
};

BigFloat exp(const BigFloat& x);
BigFloat pow(const BigFloat& x, double exponent);
BigFloat sqrt(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat abs(const BigFloat& x);
bool isinf(const BigFloat& x);
bool isnan(const BigFloat& x);
bool isfinite(const BigFloat& x);

}  // namespace sdcurve

#endif  // SDCURVE_BIGFLOAT_HPP_
