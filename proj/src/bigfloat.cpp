#include "sdcurve/bigfloat.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace sdcurve {
namespace {

mpfr_prec_t checked_precision(int bits) {
  if (bits < MPFR_PREC_MIN || bits > MPFR_PREC_MAX) {
    throw std::invalid_argument("BigFloat: precision out of range: " + std::to_string(bits));
  }
  return static_cast<mpfr_prec_t>(bits);
}

mpfr_prec_t wider(const BigFloat& a, const BigFloat& b) {
  return std::max(mpfr_get_prec(a.get()), mpfr_get_prec(b.get()));
}

// Formats MPFR's (digits, exponent) pair as d.ddde[+-]XX.
std::string format_scientific(const char* raw, mpfr_exp_t exponent) {
  std::string digits(raw);
  std::string out;
  if (!digits.empty() && digits.front() == '-') {
    out.push_back('-');
    digits.erase(digits.begin());
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  out.push_back(digits.front());
  if (digits.size() > 1) {
    out.push_back('.');
    out.append(digits, 1, std::string::npos);
  }
  // raw represents 0.d1d2... x 10^exponent
  const long e = static_cast<long>(exponent) - 1;
  char buf[32];
  std::snprintf(buf, sizeof buf, "e%c%02ld", e < 0 ? '-' : '+', e < 0 ? -e : e);
  out.append(buf);
  return out;
}

}  // namespace

BigFloat::BigFloat(int bits) {
  mpfr_init2(value_, checked_precision(bits));
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double value, int bits) {
  mpfr_init2(value_, checked_precision(bits));
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(float value, int bits) {
  mpfr_init2(value_, checked_precision(bits));
  mpfr_set_flt(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(std::int64_t value, int bits) {
  mpfr_init2(value_, checked_precision(bits));
  static_assert(sizeof(long) == sizeof(std::int64_t));
  mpfr_set_si(value_, static_cast<long>(value), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other, int bits) {
  mpfr_init2(value_, checked_precision(bits));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::pi(int bits) {
  BigFloat r(bits);
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::infinity(int bits, bool negative) {
  BigFloat r(bits);
  mpfr_set_inf(r.value_, negative ? -1 : 1);
  return r;
}

BigFloat BigFloat::parse(std::string_view text, int bits) {
  const std::string s(text);
  BigFloat r(bits);
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(r.value_, s.c_str(), &end, 10, MPFR_RNDN);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw std::invalid_argument("not a decimal number: '" + s + "'");
  }
  return r;
}

std::string BigFloat::to_string() const {
  if (is_nan()) return "nan";
  if (is_inf()) return signbit() ? "-inf" : "inf";
  if (is_zero()) return signbit() ? "-0" : "0";
  // Fewest digits that survive a re-parse at this precision; round-tripping
  // is monotone in the digit count, so bisect.
  int lo = 1;
  int hi = static_cast<int>(mpfr_get_str_ndigits(10, mpfr_get_prec(value_)));
  BigFloat probe(precision());
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    const std::string candidate = to_string(mid);
    mpfr_strtofr(probe.value_, candidate.c_str(), nullptr, 10, MPFR_RNDN);
    if (mpfr_equal_p(probe.value_, value_)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return to_string(lo);
}

std::string BigFloat::to_string(int digits) const {
  if (is_nan()) return "nan";
  if (is_inf()) return signbit() ? "-inf" : "inf";
  if (is_zero()) return signbit() ? "-0" : "0";
  if (digits < 1) throw std::invalid_argument("BigFloat::to_string: digits must be positive");
  mpfr_exp_t exponent = 0;
  char* raw = mpfr_get_str(nullptr, &exponent, 10, static_cast<size_t>(digits), value_, MPFR_RNDN);
  if (raw == nullptr) throw std::runtime_error("mpfr_get_str failed");
  std::string out = format_scientific(raw, exponent);
  mpfr_free_str(raw);
  return out;
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
  if (mpfr_get_prec(rhs.value_) > mpfr_get_prec(value_)) mpfr_prec_round(value_, mpfr_get_prec(rhs.value_), MPFR_RNDN);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
  if (mpfr_get_prec(rhs.value_) > mpfr_get_prec(value_)) mpfr_prec_round(value_, mpfr_get_prec(rhs.value_), MPFR_RNDN);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
  if (mpfr_get_prec(rhs.value_) > mpfr_get_prec(value_)) mpfr_prec_round(value_, mpfr_get_prec(rhs.value_), MPFR_RNDN);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
  if (mpfr_get_prec(rhs.value_) > mpfr_get_prec(value_)) mpfr_prec_round(value_, mpfr_get_prec(rhs.value_), MPFR_RNDN);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(std::int64_t rhs) {
  mpfr_mul_si(value_, value_, static_cast<long>(rhs), MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(std::int64_t rhs) {
  mpfr_div_si(value_, value_, static_cast<long>(rhs), MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(precision());
  mpfr_neg(r.value_, value_, MPFR_RNDN);
  return r;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(static_cast<int>(wider(a, b)));
  mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(static_cast<int>(wider(a, b)));
  mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(static_cast<int>(wider(a, b)));
  mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(static_cast<int>(wider(a, b)));
  mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator*(std::int64_t a, const BigFloat& b) {
  BigFloat r(b.precision());
  mpfr_mul_si(r.value_, b.value_, static_cast<long>(a), MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, std::int64_t b) { return b * a; }

BigFloat operator/(std::int64_t a, const BigFloat& b) {
  BigFloat r(b.precision());
  mpfr_si_div(r.value_, static_cast<long>(a), b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, std::int64_t b) {
  BigFloat r(a.precision());
  mpfr_div_si(r.value_, a.value_, static_cast<long>(b), MPFR_RNDN);
  return r;
}

bool BigFloat::identical(const BigFloat& other) const {
  if (precision() != other.precision()) return false;
  if (is_nan() || other.is_nan()) return is_nan() && other.is_nan();
  return *this == other && signbit() == other.signbit();
}

BigFloat exp(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& x, double exponent) {
  BigFloat e(exponent, 64);
  BigFloat r(x.precision());
  mpfr_pow(r.get(), x.get(), e.get(), MPFR_RNDN);
  return r;
}

BigFloat sqrt(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigFloat log(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigFloat abs(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

bool isinf(const BigFloat& x) { return x.is_inf(); }
bool isnan(const BigFloat& x) { return x.is_nan(); }
bool isfinite(const BigFloat& x) { return x.is_finite(); }

}  // namespace sdcurve
