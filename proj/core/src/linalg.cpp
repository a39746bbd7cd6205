#include "afatk/numerics.hpp"

namespace afatk {

ColVec::ColVec(std::vector<Scalar> entries) : e_(std::move(entries)) {
  if (e_.empty()) throw std::invalid_argument("empty column vector");
}

ColVec ColVec::zeros(int dim, Regime r, long prec) {
  if (dim <= 0) throw std::invalid_argument("vector dimension must be positive");
  return ColVec(std::vector<Scalar>(static_cast<size_t>(dim), Scalar::zero(r, prec)));
}

ColVec ColVec::basis(int dim, int index, Regime r, long prec) {
  ColVec v = zeros(dim, r, prec);
  if (index < 0 || index >= dim) throw std::invalid_argument("basis index out of range");
  v[index] = Scalar::one(r, prec);
  return v;
}

bool operator==(const ColVec& a, const ColVec& b) {
  if (a.dim() != b.dim()) return false;
  for (int i = 0; i < a.dim(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

SqMat::SqMat(int n, Regime r, long prec) : n_(n) {
  if (n <= 0) throw std::invalid_argument("matrix dimension must be positive");
  a_.assign(static_cast<size_t>(n) * n, Scalar::zero(r, prec));
}

SqMat SqMat::identity(int n, Regime r, long prec) {
  SqMat m(n, r, prec);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(r, prec);
  return m;
}

SqMat SqMat::from_columns(const std::vector<ColVec>& cols) {
  if (cols.empty()) throw std::invalid_argument("no columns");
  int n = static_cast<int>(cols.size());
  for (const auto& c : cols)
    if (c.dim() != n) throw std::invalid_argument("column count does not match dimension");
  SqMat m;
  m.n_ = n;
  m.a_.reserve(static_cast<size_t>(n) * n);
  for (const auto& c : cols)
    for (int i = 0; i < n; ++i) m.a_.push_back(c[i]);
  return m;
}

ColVec SqMat::column(int j) const {
  std::vector<Scalar> out;
  out.reserve(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) out.push_back(at(i, j));
  return ColVec(std::move(out));
}

bool operator==(const SqMat& a, const SqMat& b) {
  if (a.n_ != b.n_) return false;
  for (size_t i = 0; i < a.a_.size(); ++i)
    if (!(a.a_[i] == b.a_[i])) return false;
  return true;
}

Regime regime_of(const ColVec& v) {
  Regime r = v[0].regime();
  for (int i = 1; i < v.dim(); ++i)
    if (v[i].regime() != r) throw regime_error("mixed regimes within one vector");
  return r;
}

Regime regime_of(const SqMat& a) {
  Regime r = a.at(0, 0).regime();
  for (int col = 0; col < a.dim(); ++col)
    for (int row = 0; row < a.dim(); ++row)
      if (a.at(row, col).regime() != r)
        throw regime_error("mixed regimes within one matrix");
  return r;
}

Scalar zeta(const ColVec& v) {
  Scalar s = v[0];
  for (int i = 1; i < v.dim(); ++i) s += v[i];
  return s;
}

Scalar l1_norm(const ColVec& v) {
  Scalar s = v[0].abs();
  for (int i = 1; i < v.dim(); ++i) s += v[i].abs();
  return s;
}

BigFloat affine_tolerance(int dim) {
  return BigFloat::from_long(dim, BigFloat::default_precision) * BigFloat::pow2(-64);
}

namespace {

bool sums_to_one(const Scalar& sum, int dim) {
  if (sum.regime() == Regime::exact) return sum.rat() == Rational(1);
  BigFloat gap = (sum.real() - BigFloat::from_long(1, sum.precision())).abs();
  return gap <= affine_tolerance(dim);
}

}  // namespace

bool validate_affine_state(const ColVec& v) { return sums_to_one(zeta(v), v.dim()); }

std::optional<ColumnSumDefect> first_non_affine_column(const SqMat& a) {
  for (int j = 0; j < a.dim(); ++j) {
    Scalar sum = zeta(a.column(j));
    if (!sums_to_one(sum, a.dim())) return ColumnSumDefect{j, sum};
  }
  return std::nullopt;
}

bool validate_affine_operator(const SqMat& a) {
  return !first_non_affine_column(a).has_value();
}

bool validate_stochastic_operator(const SqMat& a) {
  for (int col = 0; col < a.dim(); ++col)
    for (int row = 0; row < a.dim(); ++row)
      if (a.at(row, col).sign() < 0) return false;
  return validate_affine_operator(a);
}

ColVec apply(const SqMat& a, const ColVec& v) {
  if (a.dim() != v.dim())
    throw std::invalid_argument("dimension mismatch in matrix-vector product");
  if (a.at(0, 0).regime() != v[0].regime())
    throw regime_error("mixed Exact/Real operands in matrix-vector product");
  long prec = std::max(a.at(0, 0).precision(), v[0].precision());
  ColVec out = ColVec::zeros(v.dim(), v[0].regime(), prec);
  for (int j = 0; j < a.dim(); ++j) {
    const Scalar& coeff = v[j];
    if (coeff.is_zero()) continue;
    for (int i = 0; i < a.dim(); ++i) {
      const Scalar& entry = a.at(i, j);
      if (entry.is_zero()) continue;
      out[i] += entry * coeff;
    }
  }
  return out;
}

SqMat matmul(const SqMat& a, const SqMat& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch in matrix product");
  std::vector<ColVec> cols;
  cols.reserve(static_cast<size_t>(b.dim()));
  for (int j = 0; j < b.dim(); ++j) cols.push_back(apply(a, b.column(j)));
  return SqMat::from_columns(cols);
}

SqMat transpose(const SqMat& a) {
  SqMat out = a;
  for (int j = 0; j < a.dim(); ++j)
    for (int i = 0; i < a.dim(); ++i) out.at(i, j) = a.at(j, i);
  return out;
}

SqMat kronecker(const SqMat& a, const SqMat& b) {
  int na = a.dim(), nb = b.dim();
  int n = na * nb;
  Regime r = a.at(0, 0).regime();
  long prec = std::max(a.at(0, 0).precision(), b.at(0, 0).precision());
  SqMat out(n, r, prec);
  for (int ca = 0; ca < na; ++ca)
    for (int ra = 0; ra < na; ++ra) {
      const Scalar& va = a.at(ra, ca);
      if (va.is_zero()) continue;
      for (int cb = 0; cb < nb; ++cb)
        for (int rb = 0; rb < nb; ++rb) {
          const Scalar& vb = b.at(rb, cb);
          if (vb.is_zero()) continue;
          out.at(ra * nb + rb, ca * nb + cb) = va * vb;
        }
    }
  return out;
}

}  // namespace afatk
