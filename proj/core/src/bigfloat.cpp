#include "afatk/numerics.hpp"

#include <cmath>
#include <cstdio>

namespace afatk {

namespace {
long checked_prec(long prec) {
  if (prec < MPFR_PREC_MIN || prec > 1 << 20)
    throw std::invalid_argument("unsupported precision: " + std::to_string(prec));
  return prec;
}
}  // namespace

BigFloat::BigFloat(long prec) {
  mpfr_init2(v_, checked_prec(prec));
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  if (this != &o) mpfr_swap(v_, o.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::from_long(long v, long prec) {
  BigFloat r(prec);
  mpfr_set_si(r.v_, v, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from_rational(const Rational& q, long prec) {
  BigFloat r(prec);
  mpfr_set_q(r.v_, q.to_mpq().get_mpq_t(), MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from_decimal(std::string_view s, long prec) {
  BigFloat r(prec);
  std::string buf(s);
  if (buf.empty() || mpfr_set_str(r.v_, buf.c_str(), 10, MPFR_RNDN) != 0)
    throw std::invalid_argument("malformed decimal: '" + buf + "'");
  return r;
}

BigFloat BigFloat::pi(long prec) {
  BigFloat r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pow2(long e, long prec) {
  BigFloat r(prec);
  mpfr_set_si_2exp(r.v_, 1, e, MPFR_RNDN);
  return r;
}

long BigFloat::precision() const { return mpfr_get_prec(v_); }

int BigFloat::sign() const { return mpfr_sgn(v_); }

BigFloat BigFloat::operator-() const {
  BigFloat r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::abs() const {
  BigFloat r(precision());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat abs(const BigFloat& x) { return x.abs(); }

namespace {
long result_prec(const BigFloat& a, const BigFloat& b) {
  return std::max(a.precision(), b.precision());
}
}  // namespace

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(result_prec(a, b));
  mpfr_add(r.raw_mut(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(result_prec(a, b));
  mpfr_sub(r.raw_mut(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(result_prec(a, b));
  mpfr_mul(r.raw_mut(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  if (b.is_zero()) throw std::invalid_argument("real division by zero");
  BigFloat r(result_prec(a, b));
  mpfr_div(r.raw_mut(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

bool operator==(const BigFloat& a, const BigFloat& b) {
  return mpfr_equal_p(a.raw(), b.raw()) != 0;
}

std::strong_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  return mpfr_cmp(a.raw(), b.raw()) <=> 0;
}

std::string BigFloat::to_decimal(int significant_digits) const {
  if (significant_digits < 1) significant_digits = 1;
  char* out = nullptr;
  mpfr_asprintf(&out, "%.*Re", significant_digits - 1, v_);
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

std::string BigFloat::to_string() const {
  // ceil(prec * log10(2)) + 2 significant digits round-trip at equal precision.
  int digits = static_cast<int>(std::ceil(precision() * 0.30102999566398119521)) + 2;
  return to_decimal(digits);
}

double BigFloat::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

BigFloat sin(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_sin(r.raw_mut(), x.raw(), MPFR_RNDN);
  return r;
}

BigFloat cos(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_cos(r.raw_mut(), x.raw(), MPFR_RNDN);
  return r;
}

BigFloat cot(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_cot(r.raw_mut(), x.raw(), MPFR_RNDN);
  return r;
}

long ceil_to_long(const BigFloat& x) {
  mpfr_t c;
  mpfr_init2(c, x.precision());
  mpfr_ceil(c, x.raw());
  if (!mpfr_fits_slong_p(c, MPFR_RNDN)) {
    mpfr_clear(c);
    throw std::overflow_error("ceil out of long range");
  }
  long r = mpfr_get_si(c, MPFR_RNDN);
  mpfr_clear(c);
  return r;
}

}  // namespace afatk
