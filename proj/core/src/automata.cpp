#include "afatk/automata.hpp"

#include <algorithm>

namespace afatk {

namespace {

constexpr std::string_view kReservedChars = "$,#\"";

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::string symbol_name(char c) { return std::string(1, c); }

void check_state_indices(int n, int initial, const std::set<int>& accept,
                         bool accept_may_be_empty) {
  require(initial >= 0 && initial < n, "initial state index out of range");
  require(accept_may_be_empty || !accept.empty(), "accept set must be nonempty");
  for (int s : accept) require(s >= 0 && s < n, "accept state index out of range");
}

struct OpTable {
  const SqMat* cent;
  const std::map<char, SqMat>* sym;
  const SqMat* dollar;  // may be null (NFA without right marker)
};

// Dimension/alphabet/regime consistency shared by all machine kinds.
// Returns the common regime and the maximum precision seen.
std::pair<Regime, long> check_table(const EndMarkedAlphabet& alphabet, const OpTable& t) {
  int n = t.cent->dim();
  Regime r = regime_of(*t.cent);
  long prec = t.cent->at(0, 0).precision();
  auto absorb = [&](const SqMat& m, const std::string& label) {
    require(m.dim() == n, "operator '" + label + "' has dimension " +
                              std::to_string(m.dim()) + ", expected " + std::to_string(n));
    Regime mr = regime_of(m);
    if (mr != r) throw regime_error("operator '" + label + "' is in a different scalar regime");
    for (int c = 0; c < m.dim(); ++c)
      for (int i = 0; i < m.dim(); ++i) prec = std::max(prec, m.at(i, c).precision());
  };
  require(alphabet.size() == static_cast<int>(t.sym->size()),
          "alphabet and per-symbol operator table disagree");
  for (char c : alphabet.symbols)
    require(t.sym->count(c) == 1, "missing operator for symbol '" + symbol_name(c) + "'");
  for (const auto& [c, m] : *t.sym) absorb(m, symbol_name(c));
  if (t.dollar) absorb(*t.dollar, kDollarLabel);
  return {r, r == Regime::real ? prec : 0};
}

void require_affine(const SqMat& a, const std::string& label) {
  if (auto defect = first_non_affine_column(a))
    throw std::invalid_argument(
        "operator '" + label + "' column " + std::to_string(defect->column + 1) +
        " is not an affine state: column sum is " + defect->sum.to_string() +
        ", expected 1");
}

void require_stochastic(const SqMat& a, const std::string& label) {
  for (int c = 0; c < a.dim(); ++c)
    for (int i = 0; i < a.dim(); ++i)
      require(a.at(i, c).sign() >= 0, "operator '" + label + "' entry [" +
                                          std::to_string(i + 1) + "," + std::to_string(c + 1) +
                                          "] is negative");
  require_affine(a, label);
}

void require_orthogonal(const SqMat& a, const std::string& label) {
  SqMat gram = matmul(transpose(a), a);
  Regime r = gram.at(0, 0).regime();
  for (int c = 0; c < a.dim(); ++c)
    for (int i = 0; i < a.dim(); ++i) {
      Scalar expected = (i == c) ? Scalar::one(r, gram.at(i, c).precision())
                                 : Scalar::zero(r, gram.at(i, c).precision());
      bool ok;
      if (r == Regime::exact) {
        ok = gram.at(i, c) == expected;
      } else {
        ok = (gram.at(i, c) - expected).abs().real() <= affine_tolerance(a.dim());
      }
      require(ok, "operator '" + label + "' is not orthogonal");
    }
}

void require_zero_one(const SqMat& a, const std::string& label) {
  for (int c = 0; c < a.dim(); ++c)
    for (int i = 0; i < a.dim(); ++i)
      require(a.at(i, c).is_zero() || a.at(i, c).is_one(),
              "operator '" + label + "' entry [" + std::to_string(i + 1) + "," +
                  std::to_string(c + 1) + "] is not 0 or 1");
}

template <typename Check>
void check_all_ops(const OpTable& t, Check check) {
  check(*t.cent, std::string(kCentLabel));
  for (const auto& [c, m] : *t.sym) check(m, symbol_name(c));
  if (t.dollar) check(*t.dollar, std::string(kDollarLabel));
}

const SqMat& lookup_op(const std::map<char, SqMat>& ops, char symbol) {
  auto it = ops.find(symbol);
  if (it == ops.end())
    throw std::invalid_argument("symbol '" + symbol_name(symbol) + "' not in alphabet");
  return it->second;
}

}  // namespace

EndMarkedAlphabet::EndMarkedAlphabet(std::string syms) : symbols(std::move(syms)) {
  require(!symbols.empty(), "alphabet must be nonempty");
  for (size_t i = 0; i < symbols.size(); ++i) {
    char c = symbols[i];
    require(c > ' ' && c <= '~', "alphabet symbols must be printable non-space ASCII");
    require(kReservedChars.find(c) == std::string_view::npos,
            "alphabet symbol '" + symbol_name(c) + "' is reserved");
    require(symbols.find(c, i + 1) == std::string::npos,
            "duplicate alphabet symbol '" + symbol_name(c) + "'");
  }
}

int EndMarkedAlphabet::index(char c) const {
  auto pos = symbols.find(c);
  return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

ErrorMode ErrorMode::two_sided(Rational eps) {
  require(eps >= Rational(0) && eps < Rational(1, 2),
          "two-sided error bound must satisfy 0 <= eps < 1/2");
  return {Kind::two_sided, std::move(eps)};
}

ErrorMode ErrorMode::positive_one_sided(Rational eps) {
  require(eps >= Rational(0) && eps < Rational(1),
          "one-sided error bound must satisfy 0 <= eps < 1");
  return {Kind::positive_one_sided, std::move(eps)};
}

ErrorMode ErrorMode::negative_one_sided(Rational eps) {
  require(eps >= Rational(0) && eps < Rational(1),
          "one-sided error bound must satisfy 0 <= eps < 1");
  return {Kind::negative_one_sided, std::move(eps)};
}

ErrorMode ErrorMode::zero() { return {Kind::zero, Rational(0)}; }

std::string ErrorMode::to_string() const {
  switch (kind) {
    case Kind::two_sided: return "two-sided(" + epsilon.to_string() + ")";
    case Kind::positive_one_sided: return "pos-one-sided(" + epsilon.to_string() + ")";
    case Kind::negative_one_sided: return "neg-one-sided(" + epsilon.to_string() + ")";
    case Kind::zero: return "zero";
  }
  return "?";
}

ErrorMode ErrorMode::from_name(std::string_view name, Rational eps) {
  if (name == "two-sided") return two_sided(std::move(eps));
  if (name == "pos-one-sided") return positive_one_sided(std::move(eps));
  if (name == "neg-one-sided") return negative_one_sided(std::move(eps));
  if (name == "zero") {
    require(eps.is_zero(), "zero-error mode requires eps = 0");
    return zero();
  }
  throw std::invalid_argument("unknown error mode: '" + std::string(name) + "'");
}

// --------------------------------------------------------------------------

Afa::Afa(EndMarkedAlphabet alphabet, SqMat cent, std::map<char, SqMat> per_symbol,
         SqMat dollar, int initial, std::set<int> accept)
    : alphabet_(std::move(alphabet)),
      cent_(std::move(cent)),
      ops_(std::move(per_symbol)),
      dollar_(std::move(dollar)),
      initial_(initial),
      accept_(std::move(accept)) {
  OpTable t{&cent_, &ops_, &dollar_};
  std::tie(regime_, precision_) = check_table(alphabet_, t);
  check_all_ops(t, require_affine);
  check_state_indices(states(), initial_, accept_, /*accept_may_be_empty=*/false);
}

const SqMat& Afa::op(char symbol) const { return lookup_op(ops_, symbol); }

bool operator==(const Afa& a, const Afa& b) {
  return a.alphabet_ == b.alphabet_ && a.cent_ == b.cent_ && a.ops_ == b.ops_ &&
         a.dollar_ == b.dollar_ && a.initial_ == b.initial_ && a.accept_ == b.accept_;
}

Pfa::Pfa(EndMarkedAlphabet alphabet, SqMat cent, std::map<char, SqMat> per_symbol,
         SqMat dollar, int initial, std::set<int> accept)
    : alphabet_(std::move(alphabet)),
      cent_(std::move(cent)),
      ops_(std::move(per_symbol)),
      dollar_(std::move(dollar)),
      initial_(initial),
      accept_(std::move(accept)) {
  OpTable t{&cent_, &ops_, &dollar_};
  std::tie(regime_, precision_) = check_table(alphabet_, t);
  check_all_ops(t, require_stochastic);
  check_state_indices(states(), initial_, accept_, /*accept_may_be_empty=*/false);
}

const SqMat& Pfa::op(char symbol) const { return lookup_op(ops_, symbol); }

bool operator==(const Pfa& a, const Pfa& b) {
  return a.alphabet_ == b.alphabet_ && a.cent_ == b.cent_ && a.ops_ == b.ops_ &&
         a.dollar_ == b.dollar_ && a.initial_ == b.initial_ && a.accept_ == b.accept_;
}

Qfa::Qfa(EndMarkedAlphabet alphabet, SqMat cent, std::map<char, SqMat> per_symbol,
         SqMat dollar, int initial, std::set<int> accept)
    : alphabet_(std::move(alphabet)),
      cent_(std::move(cent)),
      ops_(std::move(per_symbol)),
      dollar_(std::move(dollar)),
      initial_(initial),
      accept_(std::move(accept)) {
  OpTable t{&cent_, &ops_, &dollar_};
  std::tie(regime_, precision_) = check_table(alphabet_, t);
  check_all_ops(t, require_orthogonal);
  check_state_indices(states(), initial_, accept_, /*accept_may_be_empty=*/false);
}

const SqMat& Qfa::op(char symbol) const { return lookup_op(ops_, symbol); }

bool operator==(const Qfa& a, const Qfa& b) {
  return a.alphabet_ == b.alphabet_ && a.cent_ == b.cent_ && a.ops_ == b.ops_ &&
         a.dollar_ == b.dollar_ && a.initial_ == b.initial_ && a.accept_ == b.accept_;
}

Nfa::Nfa(EndMarkedAlphabet alphabet, SqMat cent, std::map<char, SqMat> per_symbol,
         std::optional<SqMat> dollar, std::optional<SqMat> epsilon, int initial,
         std::set<int> accept)
    : alphabet_(std::move(alphabet)),
      cent_(std::move(cent)),
      ops_(std::move(per_symbol)),
      dollar_(std::move(dollar)),
      epsilon_(std::move(epsilon)),
      initial_(initial),
      accept_(std::move(accept)) {
  OpTable t{&cent_, &ops_, dollar_ ? &*dollar_ : nullptr};
  auto [r, prec] = check_table(alphabet_, t);
  (void)prec;
  if (r != Regime::exact) throw regime_error("NFA matrices must be exact 0/1");
  check_all_ops(t, require_zero_one);
  if (epsilon_) {
    require(epsilon_->dim() == states(), "epsilon relation has wrong dimension");
    require_zero_one(*epsilon_, "epsilon");
  }
  check_state_indices(states(), initial_, accept_, /*accept_may_be_empty=*/true);
}

const SqMat& Nfa::op(char symbol) const { return lookup_op(ops_, symbol); }

const SqMat& Nfa::dollar() const {
  if (!dollar_) throw std::logic_error("NFA has no right end-marker matrix");
  return *dollar_;
}

const SqMat& Nfa::epsilon() const {
  if (!epsilon_) throw std::logic_error("NFA has no epsilon relation");
  return *epsilon_;
}

bool operator==(const Nfa& a, const Nfa& b) {
  return a.alphabet_ == b.alphabet_ && a.cent_ == b.cent_ && a.ops_ == b.ops_ &&
         a.dollar_ == b.dollar_ && a.epsilon_ == b.epsilon_ &&
         a.initial_ == b.initial_ && a.accept_ == b.accept_;
}

Ga::Ga(EndMarkedAlphabet alphabet, SqMat cent, std::map<char, SqMat> per_symbol,
       SqMat dollar, ColVec v0, std::vector<Scalar> weights)
    : alphabet_(std::move(alphabet)),
      cent_(std::move(cent)),
      ops_(std::move(per_symbol)),
      dollar_(std::move(dollar)),
      v0_(std::move(v0)),
      weights_(std::move(weights)) {
  OpTable t{&cent_, &ops_, &dollar_};
  std::tie(regime_, precision_) = check_table(alphabet_, t);
  require(v0_.dim() == states(), "initial vector has wrong dimension");
  require(static_cast<int>(weights_.size()) == states(), "weight row has wrong dimension");
  if (regime_of(v0_) != regime_) throw regime_error("initial vector regime mismatch");
  for (const auto& w : weights_)
    if (w.regime() != regime_) throw regime_error("weight row regime mismatch");
}

const SqMat& Ga::op(char symbol) const { return lookup_op(ops_, symbol); }

bool operator==(const Ga& a, const Ga& b) {
  return a.alphabet_ == b.alphabet_ && a.cent_ == b.cent_ && a.ops_ == b.ops_ &&
         a.dollar_ == b.dollar_ && a.v0_ == b.v0_ && a.weights_ == b.weights_;
}

// --------------------------------------------------------------------------

Scalar weighting(const ColVec& final_state, const std::set<int>& accept) {
  Regime r = final_state[0].regime();
  long prec = final_state[0].precision();
  Scalar num = Scalar::zero(r, prec);
  for (int s : accept) num += final_state[s].abs();
  Scalar den = l1_norm(final_state);
  if (den.is_zero()) throw std::invalid_argument("weighting of the zero vector");
  return num / den;
}

AfaRun::AfaRun(const Afa& m)
    : m_(&m),
      v_(apply(m.cent(),
               ColVec::basis(m.states(), m.initial(), m.regime(), m.precision()))) {}

void AfaRun::step(char symbol) { v_ = apply(m_->op(symbol), v_); }

ColVec AfaRun::final_state() const { return apply(m_->dollar(), v_); }

Scalar AfaRun::accept_prob() const { return weighting(final_state(), m_->accept()); }

ColVec afa_final_state(const Afa& m, std::string_view x) {
  AfaRun run(m);
  for (char c : x) run.step(c);
  return run.final_state();
}

Scalar afa_accept_prob(const Afa& m, std::string_view x) {
  return weighting(afa_final_state(m, x), m.accept());
}

Scalar pfa_accept_prob(const Pfa& m, std::string_view x) {
  ColVec v = ColVec::basis(m.states(), m.initial(), m.regime(), m.precision());
  v = apply(m.cent(), v);
  for (char c : x) v = apply(m.op(c), v);
  v = apply(m.dollar(), v);
  // Stochastic final state: the weighting step degenerates to the plain sum
  // of the accept-state probabilities.
  Scalar p = Scalar::zero(m.regime(), m.precision());
  for (int s : m.accept()) p += v[s];
  return p;
}

Scalar qfa_accept_prob(const Qfa& m, std::string_view x) {
  ColVec v = ColVec::basis(m.states(), m.initial(), m.regime(), m.precision());
  v = apply(m.cent(), v);
  for (char c : x) v = apply(m.op(c), v);
  v = apply(m.dollar(), v);
  Scalar p = Scalar::zero(m.regime(), m.precision());
  for (int s : m.accept()) p += v[s] * v[s];
  return p;
}

Scalar ga_value(const Ga& m, std::string_view x) {
  ColVec v = m.v0();
  v = apply(m.cent(), v);
  for (char c : x) v = apply(m.op(c), v);
  v = apply(m.dollar(), v);
  Scalar out = Scalar::zero(m.regime(), m.precision());
  for (int i = 0; i < m.states(); ++i) {
    if (m.weights()[static_cast<size_t>(i)].is_zero() || v[i].is_zero()) continue;
    out += m.weights()[static_cast<size_t>(i)] * v[i];
  }
  return out;
}

ColVec nfa_path_vector(const Nfa& m, std::string_view x) {
  if (m.has_epsilon())
    throw std::invalid_argument("NFA has epsilon transitions; run nfa_normalize first");
  if (m.has_dollar())
    throw std::invalid_argument("NFA uses the right end-marker; run nfa_normalize first");
  ColVec v = ColVec::basis(m.states(), m.initial(), Regime::exact);
  v = apply(m.cent(), v);
  for (char c : x) v = apply(m.op(c), v);
  return v;
}

bool nfa_accepts(const Nfa& m, std::string_view x) {
  ColVec v = nfa_path_vector(m, x);
  Rational total(0);
  for (int s : m.accept()) total += v[s].rat();
  return total.sign() > 0;
}

// --------------------------------------------------------------------------

Scalar machine_accept_value(const Machine& m, std::string_view x) {
  return std::visit(
      [&](const auto& a) -> Scalar {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Afa>) return afa_accept_prob(a, x);
        else if constexpr (std::is_same_v<T, Pfa>) return pfa_accept_prob(a, x);
        else if constexpr (std::is_same_v<T, Qfa>) return qfa_accept_prob(a, x);
        else if constexpr (std::is_same_v<T, Nfa>)
          return Scalar(Rational(nfa_accepts(a, x) ? 1 : 0));
        else return ga_value(a, x);
      },
      m);
}

const EndMarkedAlphabet& machine_alphabet(const Machine& m) {
  return std::visit([](const auto& a) -> const EndMarkedAlphabet& { return a.alphabet(); }, m);
}

std::string machine_kind_name(const Machine& m) {
  return std::visit(
      [](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Afa>) return "afa";
        else if constexpr (std::is_same_v<T, Pfa>) return "pfa";
        else if constexpr (std::is_same_v<T, Qfa>) return "qfa";
        else if constexpr (std::is_same_v<T, Nfa>) return "nfa";
        else return "ga";
      },
      m);
}

int machine_states(const Machine& m) {
  return std::visit([](const auto& a) { return a.states(); }, m);
}

Regime machine_regime(const Machine& m) {
  return std::visit(
      [](const auto& a) -> Regime {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Nfa>) return Regime::exact;
        else return a.regime();
      },
      m);
}

long machine_precision(const Machine& m) {
  return std::visit(
      [](const auto& a) -> long {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Nfa>) return 0;
        else return a.precision();
      },
      m);
}

}  // namespace afatk
