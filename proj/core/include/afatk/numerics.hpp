// numerics.hpp -- exact rationals, high-precision reals, and the small dense
// linear algebra (affine/stochastic validity, matrix-vector products) that the
// automata layers build on.
//
// Two scalar regimes exist side by side:
//   * Exact  -- unbounded rationals, always in lowest terms. Equality is
//                literal; zero-error claims are checked with ==.
//   * Real   -- binary floating point at a configurable precision
//                (default 128 bits). Validity checks use a tolerance of
//                dim * 2^-64.
// Mixing the two regimes in one arithmetic expression is a checked error,
// never a silent coercion.

#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

namespace afatk {

enum class Regime { exact, real };

std::string to_string(Regime r);
Regime regime_from_string(std::string_view s);

/// Thrown when Exact and Real scalars meet in one operation.
class regime_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Rational: canonical p/q with unbounded magnitude.
//
// Values that fit in int64 are kept inline; anything larger is promoted to a
// GMP rational transparently. Both representations are canonical (lowest
// terms, positive denominator), so equality is representation-independent.
// ---------------------------------------------------------------------------
class Rational {
 public:
  Rational() : n_(0), d_(1) {}
  Rational(long long n) : n_(n), d_(1) {}  // NOLINT: implicit by design
  Rational(long long n, long long d);

  /// Parses "p" or "p/q" (optional leading sign on either part).
  static Rational from_string(std::string_view s);
  static Rational from_mpq(const mpq_class& q);

  bool is_zero() const { return big_ ? sgn(*big_) == 0 : n_ == 0; }
  bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
  bool is_integer() const;
  int sign() const;

  /// The value as a long long; throws unless it is an integer in range.
  long long as_integer() const;

  /// Numerator and denominator of the canonical form, as integers.
  Rational numerator() const;
  Rational denominator() const;

  Rational operator-() const;
  Rational abs() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::string to_string() const;  // "p" or "p/q"
  std::string numerator_string() const;
  std::string denominator_string() const;
  mpq_class to_mpq() const;
  double to_double() const;

 private:
  explicit Rational(const mpq_class& canonical_q);

  // Inline representation; ignored when big_ is set.
  long long n_ = 0;
  long long d_ = 1;
  std::shared_ptr<const mpq_class> big_;

  static Rational from_i128(__int128 n, __int128 d);
};

Rational abs(const Rational& r);

// ---------------------------------------------------------------------------
// BigFloat: immutable value wrapper over an mpfr_t at a fixed precision.
// ---------------------------------------------------------------------------
class BigFloat {
 public:
  static constexpr long default_precision = 128;

  explicit BigFloat(long prec = default_precision);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  static BigFloat from_long(long v, long prec = default_precision);
  static BigFloat from_rational(const Rational& r, long prec = default_precision);
  /// Parses a decimal string such as "1.5", "-3.25e-2".
  static BigFloat from_decimal(std::string_view s, long prec = default_precision);
  static BigFloat pi(long prec = default_precision);
  /// 2^e at the given precision (exact).
  static BigFloat pow2(long e, long prec = default_precision);

  long precision() const;
  int sign() const;
  bool is_zero() const { return sign() == 0; }

  BigFloat operator-() const;
  BigFloat abs() const;

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);

  friend bool operator==(const BigFloat& a, const BigFloat& b);
  friend std::strong_ordering operator<=>(const BigFloat& a, const BigFloat& b);

  /// Fixed-width scientific rendering with the given significant digits.
  std::string to_decimal(int significant_digits) const;
  /// Decimal with enough digits that parsing at the same precision round-trips
  /// to the identical value.
  std::string to_string() const;
  double to_double() const;

  const mpfr_t& raw() const { return v_; }
  mpfr_t& raw_mut() { return v_; }

 private:
  mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat cot(const BigFloat& x);
long ceil_to_long(const BigFloat& x);

// ---------------------------------------------------------------------------
// Scalar: one value in one declared regime.
// ---------------------------------------------------------------------------
class Scalar {
 public:
  Scalar() : kind_(Regime::exact) {}
  Scalar(Rational r) : kind_(Regime::exact), rat_(std::move(r)) {}  // NOLINT
  Scalar(BigFloat f);                                               // NOLINT
  Scalar(long long n) : kind_(Regime::exact), rat_(n) {}            // NOLINT

  static Scalar zero(Regime r, long prec = BigFloat::default_precision);
  static Scalar one(Regime r, long prec = BigFloat::default_precision);

  Regime regime() const { return kind_; }
  /// Precision of a Real scalar; 0 for Exact.
  long precision() const;

  const Rational& rat() const;
  const BigFloat& real() const;

  /// Explicit crossing into the Real regime (exact values convert, real
  /// values re-round when the precision differs).
  BigFloat to_bigfloat(long prec = BigFloat::default_precision) const;

  bool is_zero() const;
  bool is_one() const;
  int sign() const;

  Scalar operator-() const;
  Scalar abs() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  /// Equality across regimes is false (never throws); ordering across
  /// regimes throws regime_error.
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

  /// "p/q" (or "p") for Exact; round-trip decimal with "@<prec>" for Real.
  std::string to_string() const;
  double to_double() const;

 private:
  Regime kind_;
  Rational rat_;
  std::shared_ptr<const BigFloat> real_;

  void require_same_regime(const Scalar& o, const char* op) const;
};

// ---------------------------------------------------------------------------
// ColVec / SqMat: tiny dense column vectors and square matrices.
// SqMat is column-major in spirit and storage: column j is the image of
// basis state j.
// ---------------------------------------------------------------------------
class ColVec {
 public:
  ColVec() = default;
  explicit ColVec(std::vector<Scalar> entries);
  static ColVec zeros(int dim, Regime r, long prec = BigFloat::default_precision);
  static ColVec basis(int dim, int index, Regime r,
                      long prec = BigFloat::default_precision);

  int dim() const { return static_cast<int>(e_.size()); }
  const Scalar& operator[](int i) const { return e_[static_cast<size_t>(i)]; }
  Scalar& operator[](int i) { return e_[static_cast<size_t>(i)]; }

  friend bool operator==(const ColVec& a, const ColVec& b);

 private:
  std::vector<Scalar> e_;
};

class SqMat {
 public:
  SqMat() : n_(0) {}
  SqMat(int n, Regime r, long prec = BigFloat::default_precision);
  static SqMat identity(int n, Regime r, long prec = BigFloat::default_precision);
  static SqMat from_columns(const std::vector<ColVec>& cols);

  int dim() const { return n_; }
  const Scalar& at(int row, int col) const {
    return a_[static_cast<size_t>(col) * n_ + row];
  }
  Scalar& at(int row, int col) { return a_[static_cast<size_t>(col) * n_ + row]; }
  ColVec column(int j) const;

  friend bool operator==(const SqMat& a, const SqMat& b);

 private:
  int n_;
  std::vector<Scalar> a_;  // column-major
};

/// Sum of all entries.
Scalar zeta(const ColVec& v);
/// Sum of absolute values of all entries.
Scalar l1_norm(const ColVec& v);

/// Real-regime validity tolerance: dim * 2^-64.
BigFloat affine_tolerance(int dim);

/// True iff zeta(v) = 1 (exactly, or within affine_tolerance(dim) for Real).
bool validate_affine_state(const ColVec& v);
/// True iff every column is an affine state.
bool validate_affine_operator(const SqMat& a);
/// True iff affine-valid and all entries nonnegative.
bool validate_stochastic_operator(const SqMat& a);

struct ColumnSumDefect {
  int column;  // 0-based
  Scalar sum;
};
/// First column whose entries do not sum to 1, if any.
std::optional<ColumnSumDefect> first_non_affine_column(const SqMat& a);

/// Matrix-vector product. Throws on dimension or regime mismatch.
ColVec apply(const SqMat& a, const ColVec& v);
SqMat matmul(const SqMat& a, const SqMat& b);
SqMat transpose(const SqMat& a);
/// Kronecker product a (x) b; index (i,j) maps to i*dim(b)+j.
SqMat kronecker(const SqMat& a, const SqMat& b);

/// Common regime of all entries; throws regime_error when mixed.
Regime regime_of(const ColVec& v);
Regime regime_of(const SqMat& a);

}  // namespace afatk
