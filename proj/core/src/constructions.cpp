#include "afatk/constructions.hpp"

#include <algorithm>

namespace afatk {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

Scalar one_like(const Scalar& s) { return Scalar::one(s.regime(), s.precision()); }

void require_normalized(const Nfa& n, const char* who) {
  if (n.has_epsilon())
    throw std::invalid_argument(std::string(who) +
                                ": NFA has epsilon transitions; run nfa_normalize first");
  if (n.has_dollar())
    throw std::invalid_argument(std::string(who) +
                                ": NFA uses the right end-marker; run nfa_normalize first");
}

// Boolean adjacency helpers for the normalization pass.
using BoolMat = std::vector<std::vector<bool>>;

BoolMat to_bool(const SqMat& a) {
  int n = a.dim();
  BoolMat m(static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(n), false));
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r)
      if (!a.at(r, c).is_zero()) m[static_cast<size_t>(r)][static_cast<size_t>(c)] = true;
  return m;
}

SqMat from_bool(const BoolMat& m) {
  int n = static_cast<int>(m.size());
  SqMat a(n, Regime::exact);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r)
      if (m[static_cast<size_t>(r)][static_cast<size_t>(c)]) a.at(r, c) = Scalar(Rational(1));
  return a;
}

BoolMat bool_mul(const BoolMat& a, const BoolMat& b) {
  size_t n = a.size();
  BoolMat out(n, std::vector<bool>(n, false));
  for (size_t c = 0; c < n; ++c)
    for (size_t k = 0; k < n; ++k)
      if (b[k][c])
        for (size_t r = 0; r < n; ++r)
          if (a[r][k]) out[r][c] = true;
  return out;
}

// Reflexive-transitive closure.
BoolMat bool_closure(BoolMat m) {
  size_t n = m.size();
  for (size_t i = 0; i < n; ++i) m[i][i] = true;
  for (size_t k = 0; k < n; ++k)
    for (size_t r = 0; r < n; ++r)
      if (m[r][k])
        for (size_t c = 0; c < n; ++c)
          if (m[k][c]) m[r][c] = true;
  return m;
}

mpz_class denominator_lcm(const SqMat& a, mpz_class acc) {
  for (int c = 0; c < a.dim(); ++c)
    for (int r = 0; r < a.dim(); ++r) {
      mpz_class den = a.at(r, c).rat().to_mpq().get_den();
      mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), den.get_mpz_t());
    }
  return acc;
}

SqMat scale_matrix(const SqMat& a, const Rational& factor) {
  SqMat out = a;
  Scalar f{factor};
  for (int c = 0; c < a.dim(); ++c)
    for (int r = 0; r < a.dim(); ++r) out.at(r, c) = a.at(r, c) * f;
  return out;
}

}  // namespace

ColVec embed_vector(const ColVec& v) {
  std::vector<Scalar> out;
  out.reserve(static_cast<size_t>(v.dim()) + 1);
  for (int i = 0; i < v.dim(); ++i) out.push_back(v[i]);
  out.push_back(one_like(v[0]) - zeta(v));
  return ColVec(std::move(out));
}

SqMat embed_operator(const SqMat& a) {
  int n = a.dim();
  Regime r = a.at(0, 0).regime();
  long prec = a.at(0, 0).precision();
  SqMat out(n + 1, r, prec);
  for (int c = 0; c < n; ++c) {
    Scalar sum = Scalar::zero(r, prec);
    for (int i = 0; i < n; ++i) {
      out.at(i, c) = a.at(i, c);
      sum += a.at(i, c);
    }
    out.at(n, c) = Scalar::one(r, prec) - sum;
  }
  out.at(n, n) = Scalar::one(r, prec);
  return out;
}

LinearSystem embed_linear(const LinearSystem& sys) {
  for (const auto& m : sys.mats)
    require(m.dim() == sys.v0.dim(), "linear system dimensions are inconsistent");
  LinearSystem out;
  out.v0 = embed_vector(sys.v0);
  out.mats.reserve(sys.mats.size());
  for (const auto& m : sys.mats) out.mats.push_back(embed_operator(m));
  return out;
}

Afa pfa_to_afa(const Pfa& p) {
  std::map<char, SqMat> ops;
  for (char c : p.alphabet().symbols) ops.emplace(c, p.op(c));
  return Afa(p.alphabet(), p.cent(), std::move(ops), p.dollar(), p.initial(), p.accept());
}

CutpointSpec::CutpointSpec(Pfa p, Rational l) : pfa(std::move(p)), lambda(std::move(l)) {
  require(pfa.regime() == Regime::exact, "cutpoint construction needs an exact-rational PFA");
  require(lambda >= Rational(0) && lambda <= Rational(1), "cutpoint must lie in [0,1]");
}

Afa exclusive_cutpoint_afa(const CutpointSpec& spec, long long t) {
  const Pfa& p = spec.pfa;
  require(t >= 1, "sharpness parameter t must be at least 1");
  require(p.states() >= 2, "cutpoint construction needs at least 2 PFA states");
  int n = p.states();

  // Common denominator of every transition value, so the scaled system is
  // integer-valued and the accept-sum comparison against lambda becomes an
  // integer sign test.
  mpz_class d(1);
  d = denominator_lcm(p.cent(), d);
  for (char c : p.alphabet().symbols) d = denominator_lcm(p.op(c), d);
  d = denominator_lcm(p.dollar(), d);
  Rational scale = Rational::from_mpq(mpq_class(d));

  SqMat cent = embed_operator(scale_matrix(p.cent(), scale));
  std::map<char, SqMat> ops;
  for (char c : p.alphabet().symbols)
    ops.emplace(c, embed_operator(scale_matrix(p.op(c), scale)));

  // Collapse: state i contributes c_i = lam_den*[i accepting] - lam_num, so
  // the first coordinate picks up t * (scaled integer multiple of f_P - lambda).
  Rational lam_num = spec.lambda.numerator();
  Rational lam_den = spec.lambda.denominator();
  SqMat collapse(n + 1, Regime::exact);
  Scalar st{Rational(t)};
  for (int i = 0; i < n; ++i) {
    Rational ci = (p.accept().count(i) ? lam_den : Rational(0)) - lam_num;
    Scalar sci{ci};
    collapse.at(0, i) = st * sci;
    collapse.at(1, i) = -(st * sci);
    collapse.at(2, i) = Scalar(Rational(1));
  }
  collapse.at(2, n) = Scalar(Rational(1));
  SqMat dollar = matmul(collapse, embed_operator(scale_matrix(p.dollar(), scale)));

  return Afa(p.alphabet(), std::move(cent), std::move(ops), std::move(dollar),
             p.initial(), {0, 1});
}

Afa qfa_to_afa(const Qfa& q) {
  int n = q.states();
  std::map<char, SqMat> ops;
  SqMat cent = embed_operator(kronecker(q.cent(), q.cent()));
  for (char c : q.alphabet().symbols)
    ops.emplace(c, embed_operator(kronecker(q.op(c), q.op(c))));

  // Collapse the embedded tensor state to (P, 1-P, 0, ..., 0): diagonal
  // accept coordinates feed the first state, everything else the second.
  int nn = n * n;
  Regime r = q.regime();
  long prec = q.precision();
  SqMat collapse(nn + 1, r, prec);
  for (int col = 0; col < nn; ++col) {
    int row = col / n, colq = col % n;
    bool diag_accept = (row == colq) && q.accept().count(row) > 0;
    collapse.at(diag_accept ? 0 : 1, col) = Scalar::one(r, prec);
  }
  collapse.at(1, nn) = Scalar::one(r, prec);
  SqMat dollar = matmul(collapse, embed_operator(kronecker(q.dollar(), q.dollar())));

  int initial = q.initial() * n + q.initial();
  return Afa(q.alphabet(), std::move(cent), std::move(ops), std::move(dollar), initial, {0});
}

Afa count_afa(long long m, long long t) {
  require(m >= 0, "count parameter m must be nonnegative");
  require(t >= 1, "sharpness parameter t must be at least 1");
  Rational rm(m), rt(t);

  SqMat cent(3, Regime::exact);
  cent.at(0, 0) = Scalar(Rational(1));
  cent.at(1, 0) = Scalar(rm);
  cent.at(2, 0) = Scalar(-rm);
  cent.at(1, 1) = Scalar(Rational(1));
  cent.at(2, 2) = Scalar(Rational(1));

  SqMat step(3, Regime::exact);
  step.at(0, 0) = Scalar(Rational(1));
  step.at(1, 0) = Scalar(Rational(-1));
  step.at(2, 0) = Scalar(Rational(1));
  step.at(1, 1) = Scalar(Rational(1));
  step.at(2, 2) = Scalar(Rational(1));

  // Scales the two counter coordinates by t. The affine completion puts
  // 1-t into the first row of columns 2 and 3, which acts as the identity
  // on every reachable pre-$ state (1, c, -c).
  SqMat dollar(3, Regime::exact);
  dollar.at(0, 0) = Scalar(Rational(1));
  dollar.at(0, 1) = Scalar(Rational(1) - rt);
  dollar.at(1, 1) = Scalar(rt);
  dollar.at(0, 2) = Scalar(Rational(1) - rt);
  dollar.at(2, 2) = Scalar(rt);

  return Afa(EndMarkedAlphabet("a"), std::move(cent), {{'a', std::move(step)}},
             std::move(dollar), 0, {0});
}

Afa mod_p_afa(long long p, const Rational& t, long prec) {
  require(p >= 3, "modulus p must be at least 3");
  require(p % 2 == 1, "modulus p must be odd");
  require(t.sign() > 0, "sharpness parameter t must be positive");

  BigFloat pi = BigFloat::pi(prec);
  BigFloat p_f = BigFloat::from_long(p, prec);
  BigFloat bound = cot(pi / p_f);
  BigFloat t_f = BigFloat::from_rational(t, prec);
  require(t_f > bound, "t must exceed cot(pi/p) = " + bound.to_decimal(12) +
                           " for the error bound to be valid");

  BigFloat theta = (BigFloat::from_long(2, prec) * pi) / p_f;
  BigFloat c = cos(theta), s = sin(theta);
  BigFloat one = BigFloat::from_long(1, prec);

  SqMat cent = SqMat::identity(3, Regime::real, prec);

  SqMat step(3, Regime::real, prec);
  step.at(0, 0) = Scalar(c);
  step.at(1, 0) = Scalar(s);
  step.at(2, 0) = Scalar(one - c - s);
  step.at(0, 1) = Scalar(-s);
  step.at(1, 1) = Scalar(c);
  step.at(2, 1) = Scalar(one + s - c);
  step.at(2, 2) = Scalar(one);

  // Scales the sine coordinate by t; affine-completed in the third row.
  SqMat dollar(3, Regime::real, prec);
  dollar.at(0, 0) = Scalar(one);
  dollar.at(1, 1) = Scalar(t_f);
  dollar.at(2, 1) = Scalar(one - t_f);
  dollar.at(2, 2) = Scalar(one);

  return Afa(EndMarkedAlphabet("a"), std::move(cent), {{'a', std::move(step)}},
             std::move(dollar), 0, {0});
}

Afa mod2k_afa(int k, long prec) {
  require(k >= 1, "k must be at least 1");

  SqMat step;
  Regime regime;
  if (k == 1) {
    // cos(pi/2) = 0, sin(pi/2) = 1: the quarter turn is integer-valued.
    regime = Regime::exact;
    SqMat rot(2, Regime::exact);
    rot.at(1, 0) = Scalar(Rational(1));
    rot.at(0, 1) = Scalar(Rational(-1));
    step = embed_operator(rot);
  } else {
    regime = Regime::real;
    BigFloat theta = BigFloat::pi(prec) / BigFloat::pow2(k, prec);
    SqMat rot(2, Regime::real, prec);
    rot.at(0, 0) = Scalar(cos(theta));
    rot.at(1, 0) = Scalar(sin(theta));
    rot.at(0, 1) = Scalar(-sin(theta));
    rot.at(1, 1) = Scalar(cos(theta));
    step = embed_operator(rot);
  }

  long p = (regime == Regime::exact) ? 0 : prec;
  SqMat cent = SqMat::identity(3, regime, p);

  // Halve the third coordinate and fold the other half into the first:
  // (1,0,0) stays put, (-1,0,2) collapses to (0,0,1).
  Scalar half = (regime == Regime::exact)
                    ? Scalar(Rational(1, 2))
                    : Scalar(BigFloat::from_rational(Rational(1, 2), prec));
  SqMat dollar(3, regime, p);
  dollar.at(0, 0) = Scalar::one(regime, p);
  dollar.at(1, 1) = Scalar::one(regime, p);
  dollar.at(0, 2) = half;
  dollar.at(2, 2) = half;

  return Afa(EndMarkedAlphabet("a"), std::move(cent), {{'a', std::move(step)}},
             std::move(dollar), 0, {0});
}

Nfa nfa_normalize(const Nfa& n) {
  EndMarkedAlphabet alphabet = n.alphabet();
  BoolMat cent = to_bool(n.cent());
  std::map<char, BoolMat> ops;
  for (char c : alphabet.symbols) ops.emplace(c, to_bool(n.op(c)));
  std::optional<BoolMat> dollar;
  if (n.has_dollar()) dollar = to_bool(n.dollar());

  if (n.has_epsilon()) {
    BoolMat closure = bool_closure(to_bool(n.epsilon()));
    cent = bool_mul(closure, bool_mul(cent, closure));
    for (auto& [c, m] : ops) m = bool_mul(closure, m);
    if (dollar) dollar = bool_mul(closure, *dollar);
  }

  if (!dollar) {
    if (!n.has_epsilon()) return n;
    std::map<char, SqMat> out_ops;
    for (auto& [c, m] : ops) out_ops.emplace(c, from_bool(m));
    return Nfa(alphabet, from_bool(cent), std::move(out_ops), std::nullopt, std::nullopt,
               n.initial(), n.accept());
  }

  // Right end-marker removal: transitions that could reach an accepting
  // state through $ additionally enter a fresh state, which becomes the
  // single accepting state.
  size_t old_n = cent.size();
  std::vector<bool> dollar_live(old_n, false);  // s_i --$--> some accepting state
  for (int a : n.accept())
    for (size_t i = 0; i < old_n; ++i)
      if ((*dollar)[static_cast<size_t>(a)][i]) dollar_live[i] = true;

  auto widen = [&](const BoolMat& m) {
    BoolMat out(old_n + 1, std::vector<bool>(old_n + 1, false));
    for (size_t r = 0; r < old_n; ++r)
      for (size_t c = 0; c < old_n; ++c) out[r][c] = m[r][c];
    for (size_t c = 0; c < old_n; ++c)
      for (size_t j = 0; j < old_n; ++j)
        if (dollar_live[j] && m[j][c]) out[old_n][c] = true;
    return out;
  };

  std::map<char, SqMat> out_ops;
  for (auto& [c, m] : ops) out_ops.emplace(c, from_bool(widen(m)));
  return Nfa(alphabet, from_bool(widen(cent)), std::move(out_ops), std::nullopt,
             std::nullopt, n.initial(), {static_cast<int>(old_n)});
}

namespace {

// Shared by both NFA-to-AfA conversions: embed the 0/1 system, then append a
// collapse whose accepting-state columns are given and whose remaining
// columns park all other mass on the third coordinate.
Afa nfa_afa_common(const Nfa& n, const std::vector<Scalar>& accept_column,
                   const std::set<int>& afa_accept) {
  int states = n.states();
  SqMat cent = embed_operator(n.cent());
  std::map<char, SqMat> ops;
  for (char c : n.alphabet().symbols) ops.emplace(c, embed_operator(n.op(c)));

  SqMat collapse(states + 1, Regime::exact);
  for (int i = 0; i <= states; ++i) {
    if (i < states && n.accept().count(i)) {
      for (int r = 0; r < static_cast<int>(accept_column.size()); ++r)
        collapse.at(r, i) = accept_column[static_cast<size_t>(r)];
    } else {
      collapse.at(2, i) = Scalar(Rational(1));
    }
  }
  return Afa(n.alphabet(), std::move(cent), std::move(ops), std::move(collapse),
             n.initial(), afa_accept);
}

}  // namespace

Afa nfa_to_afa(const Nfa& n, long long t) {
  require_normalized(n, "nfa_to_afa");
  require(n.states() > 1, "conversion needs an NFA with more than one state");
  require(t >= 1, "sharpness parameter t must be at least 1");
  Rational rt(t);
  std::vector<Scalar> col{Scalar(rt), Scalar(-rt), Scalar(Rational(1))};
  return nfa_afa_common(n, col, {0, 1});
}

Afa nfa_to_afa_zero_error(const Nfa& n, long long k) {
  require_normalized(n, "nfa_to_afa_zero_error");
  require(n.states() > 1, "conversion needs an NFA with more than one state");
  require(k >= 1, "path count k must be at least 1");
  Rational inv_k(1, k);
  std::vector<Scalar> col{Scalar(inv_k), Scalar(Rational(0)),
                          Scalar(Rational(1) - inv_k)};
  return nfa_afa_common(n, col, {0});
}

Nfa end_nfa(int n) {
  require(n >= 1, "end marker distance must be at least 1");
  int states = n + 1;  // guess state 0, chain 1..n
  SqMat cent = SqMat::identity(states, Regime::exact);

  SqMat zero_op(states, Regime::exact);
  zero_op.at(0, 0) = Scalar(Rational(1));
  for (int i = 1; i < n; ++i) zero_op.at(i + 1, i) = Scalar(Rational(1));
  SqMat one_op = zero_op;
  one_op.at(1, 0) = Scalar(Rational(1));  // guess: this 1 is the n-th from the end

  return Nfa(EndMarkedAlphabet("01"), std::move(cent),
             {{'0', std::move(zero_op)}, {'1', std::move(one_op)}}, std::nullopt,
             std::nullopt, 0, {n});
}

Nfa modxor_nfa(int k) {
  require(k >= 1, "k must be at least 1");
  int period = 2 * k;
  int states = 2 * period;  // (counter, parity); only one offset guess survives
  auto idx = [&](int counter, int parity) { return 2 * counter + parity; };

  // The ¢-operator guesses the prefix offset: from the entry state, one path
  // per counter value. Columns of unreachable states stay identity.
  SqMat cent(states, Regime::exact);
  for (int c = 0; c < period; ++c) cent.at(idx(c, 0), idx(0, 0)) = Scalar(Rational(1));
  for (int s = 1; s < states; ++s) cent.at(s, s) = Scalar(Rational(1));

  std::map<char, SqMat> ops;
  for (char sym : {'0', '1'}) {
    int bit = sym - '0';
    SqMat m(states, Regime::exact);
    for (int b = 0; b < 2; ++b) {
      // counter 0 is a block boundary: the next symbol is a marked bit
      m.at(idx(1 % period, b ^ bit), idx(0, b)) = Scalar(Rational(1));
      for (int c = 1; c < period; ++c)
        m.at(idx((c + 1) % period, b), idx(c, b)) = Scalar(Rational(1));
    }
    ops.emplace(sym, std::move(m));
  }

  return Nfa(EndMarkedAlphabet("01"), std::move(cent), std::move(ops), std::nullopt,
             std::nullopt, idx(0, 0), {idx(0, 1)});
}

Nfa nfa_union(const Nfa& a, const Nfa& b) {
  require_normalized(a, "nfa_union");
  require_normalized(b, "nfa_union");
  require(a.alphabet() == b.alphabet(), "union requires matching alphabets");
  int na = a.states(), nb = b.states();
  int states = na + nb;

  auto block_diag = [&](const SqMat& ma, const SqMat& mb) {
    SqMat out(states, Regime::exact);
    for (int c = 0; c < na; ++c)
      for (int r = 0; r < na; ++r) out.at(r, c) = ma.at(r, c);
    for (int c = 0; c < nb; ++c)
      for (int r = 0; r < nb; ++r) out.at(na + r, na + c) = mb.at(r, c);
    return out;
  };

  SqMat cent = block_diag(a.cent(), b.cent());
  // The shared entry point fans into both copies.
  for (int r = 0; r < nb; ++r)
    cent.at(na + r, a.initial()) = b.cent().at(r, b.initial());

  std::map<char, SqMat> ops;
  for (char c : a.alphabet().symbols) ops.emplace(c, block_diag(a.op(c), b.op(c)));

  std::set<int> accept = a.accept();
  for (int s : b.accept()) accept.insert(na + s);
  return Nfa(a.alphabet(), std::move(cent), std::move(ops), std::nullopt, std::nullopt,
             a.initial(), std::move(accept));
}

}  // namespace afatk
