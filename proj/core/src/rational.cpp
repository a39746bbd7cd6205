#include "afatk/numerics.hpp"

#include <charconv>
#include <cstdlib>
#include <limits>

namespace afatk {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 u128_abs(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd_u128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr long long kMaxLL = std::numeric_limits<long long>::max();
constexpr long long kMinLL = std::numeric_limits<long long>::min();

bool fits_ll(i128 v) { return v >= static_cast<i128>(kMinLL) && v <= static_cast<i128>(kMaxLL); }

mpz_class mpz_from_i128(i128 v) {
  bool neg = v < 0;
  u128 a = u128_abs(v);
  mpz_class hi(static_cast<unsigned long>(a >> 64));
  mpz_class out = (hi << 64) + mpz_class(static_cast<unsigned long>(a & 0xffffffffffffffffULL));
  return neg ? mpz_class(-out) : out;
}

}  // namespace

Rational::Rational(long long n, long long d) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  *this = from_i128(static_cast<i128>(n), static_cast<i128>(d));
}

Rational::Rational(const mpq_class& canonical_q) {
  if (mpz_fits_slong_p(canonical_q.get_num().get_mpz_t()) &&
      mpz_fits_slong_p(canonical_q.get_den().get_mpz_t())) {
    n_ = mpz_get_si(canonical_q.get_num().get_mpz_t());
    d_ = mpz_get_si(canonical_q.get_den().get_mpz_t());
  } else {
    big_ = std::make_shared<const mpq_class>(canonical_q);
  }
}

Rational Rational::from_i128(i128 n, i128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n == 0) return Rational();
  u128 g = gcd_u128(u128_abs(n), static_cast<u128>(d));
  n /= static_cast<i128>(g);
  d /= static_cast<i128>(g);
  Rational r;
  if (fits_ll(n) && fits_ll(d)) {
    r.n_ = static_cast<long long>(n);
    r.d_ = static_cast<long long>(d);
  } else {
    mpq_class q(mpz_from_i128(n));
    q /= mpq_class(mpz_from_i128(d));
    r.big_ = std::make_shared<const mpq_class>(q);
  }
  return r;
}

Rational Rational::from_mpq(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  return Rational(c);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(static_cast<long>(n_), 1);
  q /= mpq_class(static_cast<long>(d_), 1);
  return q;
}

bool Rational::is_integer() const {
  if (big_) return mpz_cmp_ui(big_->get_den().get_mpz_t(), 1) == 0;
  return d_ == 1;
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return n_ > 0 ? 1 : (n_ < 0 ? -1 : 0);
}

long long Rational::as_integer() const {
  if (!is_integer()) throw std::invalid_argument("rational is not an integer: " + to_string());
  if (big_) {
    if (!mpz_fits_slong_p(big_->get_num().get_mpz_t()))
      throw std::overflow_error("integer out of long long range: " + to_string());
    return mpz_get_si(big_->get_num().get_mpz_t());
  }
  return n_;
}

Rational Rational::numerator() const {
  if (big_) return from_mpq(mpq_class(big_->get_num()));
  return Rational(n_);
}

Rational Rational::denominator() const {
  if (big_) return from_mpq(mpq_class(big_->get_den()));
  return Rational(d_);
}

Rational Rational::operator-() const {
  if (big_) return Rational(mpq_class(-*big_));
  if (n_ == kMinLL) return from_i128(-static_cast<i128>(n_), static_cast<i128>(d_));
  Rational r;
  r.n_ = -n_;
  r.d_ = d_;
  return r;
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational abs(const Rational& r) { return r.abs(); }

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.d_ == 1 && b.d_ == 1) {
      i128 n = static_cast<i128>(a.n_) + b.n_;
      if (fits_ll(n)) {
        Rational r;
        r.n_ = static_cast<long long>(n);
        return r;
      }
      return Rational::from_i128(n, 1);
    }
    i128 n = static_cast<i128>(a.n_) * b.d_ + static_cast<i128>(b.n_) * a.d_;
    i128 d = static_cast<i128>(a.d_) * b.d_;
    return Rational::from_i128(n, d);
  }
  return Rational::from_mpq(a.to_mpq() + b.to_mpq());
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.d_ == 1 && b.d_ == 1) {
      i128 n = static_cast<i128>(a.n_) * b.n_;
      if (fits_ll(n)) {
        Rational r;
        r.n_ = static_cast<long long>(n);
        return r;
      }
      return Rational::from_i128(n, 1);
    }
    return Rational::from_i128(static_cast<i128>(a.n_) * b.n_,
                               static_cast<i128>(a.d_) * b.d_);
  }
  return Rational::from_mpq(a.to_mpq() * b.to_mpq());
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::invalid_argument("rational division by zero");
  if (!a.big_ && !b.big_)
    return Rational::from_i128(static_cast<i128>(a.n_) * b.d_,
                               static_cast<i128>(a.d_) * b.n_);
  return Rational::from_mpq(a.to_mpq() / b.to_mpq());
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
  return mpq_equal(a.to_mpq().get_mpq_t(), b.to_mpq().get_mpq_t()) != 0;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 lhs = static_cast<i128>(a.n_) * b.d_;
    i128 rhs = static_cast<i128>(b.n_) * a.d_;
    return lhs <=> rhs;
  }
  int c = mpq_cmp(a.to_mpq().get_mpq_t(), b.to_mpq().get_mpq_t());
  return c <=> 0;
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str();
  if (d_ == 1) return std::to_string(n_);
  return std::to_string(n_) + "/" + std::to_string(d_);
}

std::string Rational::numerator_string() const {
  if (big_) return big_->get_num().get_str();
  return std::to_string(n_);
}

std::string Rational::denominator_string() const {
  if (big_) return big_->get_den().get_str();
  return std::to_string(d_);
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(n_) / static_cast<double>(d_);
}

Rational Rational::from_string(std::string_view s) {
  auto bad = [&] {
    return std::invalid_argument("malformed rational: '" + std::string(s) + "'");
  };
  if (s.empty()) throw bad();
  std::string_view num = s;
  std::string_view den;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
    if (num.empty() || den.empty()) throw bad();
  }
  auto parse_int = [&](std::string_view part, long long& out) {
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    return ec == std::errc() && ptr == part.data() + part.size();
  };
  auto check_digits = [&](std::string_view part) {
    size_t i = part[0] == '-' ? 1 : 0;
    if (i == part.size()) throw bad();
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') throw bad();
  };
  check_digits(num);
  if (!den.empty()) check_digits(den);

  long long n = 0, d = 1;
  if (parse_int(num, n) && (den.empty() || parse_int(den, d))) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(n, d);
  }
  // Out of int64 range: go through GMP.
  try {
    mpq_class q(std::string(s), 10);
    if (sgn(q.get_den()) == 0) throw std::invalid_argument("rational with zero denominator");
    q.canonicalize();
    return Rational(q);
  } catch (const std::invalid_argument& e) {
    if (std::string_view(e.what()).find("zero denominator") != std::string_view::npos) throw;
    throw bad();
  }
}

}  // namespace afatk
