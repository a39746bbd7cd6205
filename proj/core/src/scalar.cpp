#include "afatk/numerics.hpp"

namespace afatk {

std::string to_string(Regime r) { return r == Regime::exact ? "exact" : "real"; }

Regime regime_from_string(std::string_view s) {
  if (s == "exact") return Regime::exact;
  if (s == "real") return Regime::real;
  throw std::invalid_argument("unknown regime: '" + std::string(s) + "'");
}

Scalar::Scalar(BigFloat f)
    : kind_(Regime::real), real_(std::make_shared<const BigFloat>(std::move(f))) {}

Scalar Scalar::zero(Regime r, long prec) {
  if (r == Regime::exact) return Scalar(Rational(0));
  return Scalar(BigFloat(prec));
}

Scalar Scalar::one(Regime r, long prec) {
  if (r == Regime::exact) return Scalar(Rational(1));
  return Scalar(BigFloat::from_long(1, prec));
}

long Scalar::precision() const { return kind_ == Regime::real ? real_->precision() : 0; }

const Rational& Scalar::rat() const {
  if (kind_ != Regime::exact) throw regime_error("rat() on a Real scalar");
  return rat_;
}

const BigFloat& Scalar::real() const {
  if (kind_ != Regime::real) throw regime_error("real() on an Exact scalar");
  return *real_;
}

BigFloat Scalar::to_bigfloat(long prec) const {
  if (kind_ == Regime::exact) return BigFloat::from_rational(rat_, prec);
  if (real_->precision() == prec) return *real_;
  BigFloat r(prec);
  mpfr_set(r.raw_mut(), real_->raw(), MPFR_RNDN);
  return r;
}

bool Scalar::is_zero() const {
  return kind_ == Regime::exact ? rat_.is_zero() : real_->is_zero();
}

bool Scalar::is_one() const {
  if (kind_ == Regime::exact) return rat_.is_one();
  return mpfr_cmp_ui(real_->raw(), 1) == 0;
}

int Scalar::sign() const {
  return kind_ == Regime::exact ? rat_.sign() : real_->sign();
}

void Scalar::require_same_regime(const Scalar& o, const char* op) const {
  if (kind_ != o.kind_)
    throw regime_error(std::string("mixed Exact/Real operands in ") + op);
}

Scalar Scalar::operator-() const {
  if (kind_ == Regime::exact) return Scalar(-rat_);
  return Scalar(-*real_);
}

Scalar Scalar::abs() const {
  if (kind_ == Regime::exact) return Scalar(rat_.abs());
  return Scalar(real_->abs());
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  a.require_same_regime(b, "+");
  if (a.kind_ == Regime::exact) return Scalar(a.rat_ + b.rat_);
  return Scalar(*a.real_ + *b.real_);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  a.require_same_regime(b, "-");
  if (a.kind_ == Regime::exact) return Scalar(a.rat_ - b.rat_);
  return Scalar(*a.real_ - *b.real_);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  a.require_same_regime(b, "*");
  if (a.kind_ == Regime::exact) return Scalar(a.rat_ * b.rat_);
  return Scalar(*a.real_ * *b.real_);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  a.require_same_regime(b, "/");
  if (a.kind_ == Regime::exact) return Scalar(a.rat_ / b.rat_);
  return Scalar(*a.real_ / *b.real_);
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == Regime::exact) return a.rat_ == b.rat_;
  return *a.real_ == *b.real_;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  a.require_same_regime(b, "ordering");
  if (a.kind_ == Regime::exact) return a.rat_ <=> b.rat_;
  return *a.real_ <=> *b.real_;
}

std::string Scalar::to_string() const {
  if (kind_ == Regime::exact) return rat_.to_string();
  return real_->to_string() + "@" + std::to_string(real_->precision());
}

double Scalar::to_double() const {
  return kind_ == Regime::exact ? rat_.to_double() : real_->to_double();
}

}  // namespace afatk
