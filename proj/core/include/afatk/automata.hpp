// automata.hpp -- machine models over end-marked inputs and their execution
// semantics.
//
// Every machine reads ¢ x $ : the ¢-operator initializes, the per-symbol
// operators evolve, and the $-operator collapses. For an AfA the collapse is
// followed by the non-linear weighting step that turns the final affine state
// into an acceptance probability.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "afatk/numerics.hpp"

namespace afatk {

/// Input alphabet Σ; the end-markers ¢ and $ are implicit and kept out of Σ.
struct EndMarkedAlphabet {
  std::string symbols;

  EndMarkedAlphabet() = default;
  explicit EndMarkedAlphabet(std::string syms);

  int size() const { return static_cast<int>(symbols.size()); }
  bool contains(char c) const { return symbols.find(c) != std::string::npos; }
  int index(char c) const;

  friend bool operator==(const EndMarkedAlphabet&, const EndMarkedAlphabet&) = default;
};

/// Names for the marker operators in error messages and files.
inline constexpr const char* kCentLabel = "\xc2\xa2";  // ¢
inline constexpr const char* kDollarLabel = "$";

struct ErrorMode {
  enum class Kind { two_sided, positive_one_sided, negative_one_sided, zero };

  Kind kind;
  Rational epsilon;

  static ErrorMode two_sided(Rational eps);           // eps < 1/2
  static ErrorMode positive_one_sided(Rational eps);  // eps < 1
  static ErrorMode negative_one_sided(Rational eps);  // eps < 1
  static ErrorMode zero();                            // eps = 0

  std::string to_string() const;
  static ErrorMode from_name(std::string_view name, Rational eps);
};

// ---------------------------------------------------------------------------
// Machine models. All are immutable after construction; constructors check
// every model invariant and throw std::invalid_argument on violations.
// ---------------------------------------------------------------------------

/// Affine finite automaton: every operator is affine-valid.
class Afa {
 public:
  Afa(EndMarkedAlphabet alphabet, SqMat cent, std::map<char, SqMat> per_symbol,
      SqMat dollar, int initial, std::set<int> accept);

  int states() const { return cent_.dim(); }
  Regime regime() const { return regime_; }
  long precision() const { return precision_; }
  const EndMarkedAlphabet& alphabet() const { return alphabet_; }
  const SqMat& cent() const { return cent_; }
  const SqMat& dollar() const { return dollar_; }
  const SqMat& op(char symbol) const;
  int initial() const { return initial_; }
  const std::set<int>& accept() const { return accept_; }

  friend bool operator==(const Afa& a, const Afa& b);

 private:
  EndMarkedAlphabet alphabet_;
  SqMat cent_;
  std::map<char, SqMat> ops_;
  SqMat dollar_;
  int initial_;
  std::set<int> accept_;
  Regime regime_;
  long precision_;
};

/// Probabilistic finite automaton: every operator is stochastic.
class Pfa {
 public:
  Pfa(EndMarkedAlphabet alphabet, SqMat cent, std::map<char, SqMat> per_symbol,
      SqMat dollar, int initial, std::set<int> accept);

  int states() const { return cent_.dim(); }
  Regime regime() const { return regime_; }
  long precision() const { return precision_; }
  const EndMarkedAlphabet& alphabet() const { return alphabet_; }
  const SqMat& cent() const { return cent_; }
  const SqMat& dollar() const { return dollar_; }
  const SqMat& op(char symbol) const;
  int initial() const { return initial_; }
  const std::set<int>& accept() const { return accept_; }

  friend bool operator==(const Pfa& a, const Pfa& b);

 private:
  EndMarkedAlphabet alphabet_;
  SqMat cent_;
  std::map<char, SqMat> ops_;
  SqMat dollar_;
  int initial_;
  std::set<int> accept_;
  Regime regime_;
  long precision_;
};

/// Real-valued measure-once quantum finite automaton: every operator is
/// orthogonal (AᵀA = I, exactly or within the regime tolerance).
class Qfa {
 public:
  Qfa(EndMarkedAlphabet alphabet, SqMat cent, std::map<char, SqMat> per_symbol,
      SqMat dollar, int initial, std::set<int> accept);

  int states() const { return cent_.dim(); }
  Regime regime() const { return regime_; }
  long precision() const { return precision_; }
  const EndMarkedAlphabet& alphabet() const { return alphabet_; }
  const SqMat& cent() const { return cent_; }
  const SqMat& dollar() const { return dollar_; }
  const SqMat& op(char symbol) const;
  int initial() const { return initial_; }
  const std::set<int>& accept() const { return accept_; }

  friend bool operator==(const Qfa& a, const Qfa& b);

 private:
  EndMarkedAlphabet alphabet_;
  SqMat cent_;
  std::map<char, SqMat> ops_;
  SqMat dollar_;
  int initial_;
  std::set<int> accept_;
  Regime regime_;
  long precision_;
};

/// Nondeterministic finite automaton in linear representation: 0/1 matrices
/// where entry [j,i] = 1 iff there is a transition s_i -> s_j. The ε-relation
/// and the $-matrix are optional; nfa_normalize removes both.
class Nfa {
 public:
  Nfa(EndMarkedAlphabet alphabet, SqMat cent, std::map<char, SqMat> per_symbol,
      std::optional<SqMat> dollar, std::optional<SqMat> epsilon, int initial,
      std::set<int> accept);

  int states() const { return cent_.dim(); }
  const EndMarkedAlphabet& alphabet() const { return alphabet_; }
  const SqMat& cent() const { return cent_; }
  const SqMat& op(char symbol) const;
  bool has_dollar() const { return dollar_.has_value(); }
  const SqMat& dollar() const;
  bool has_epsilon() const { return epsilon_.has_value(); }
  const SqMat& epsilon() const;
  int initial() const { return initial_; }
  const std::set<int>& accept() const { return accept_; }

  friend bool operator==(const Nfa& a, const Nfa& b);

 private:
  EndMarkedAlphabet alphabet_;
  SqMat cent_;
  std::map<char, SqMat> ops_;
  std::optional<SqMat> dollar_;
  std::optional<SqMat> epsilon_;
  int initial_;
  std::set<int> accept_;
};

/// Generalized automaton: unrestricted real transitions, explicit initial
/// vector, and a weight row instead of an accept set.
class Ga {
 public:
  Ga(EndMarkedAlphabet alphabet, SqMat cent, std::map<char, SqMat> per_symbol,
     SqMat dollar, ColVec v0, std::vector<Scalar> weights);

  int states() const { return cent_.dim(); }
  Regime regime() const { return regime_; }
  long precision() const { return precision_; }
  const EndMarkedAlphabet& alphabet() const { return alphabet_; }
  const SqMat& cent() const { return cent_; }
  const SqMat& dollar() const { return dollar_; }
  const SqMat& op(char symbol) const;
  const ColVec& v0() const { return v0_; }
  const std::vector<Scalar>& weights() const { return weights_; }

  friend bool operator==(const Ga& a, const Ga& b);

 private:
  EndMarkedAlphabet alphabet_;
  SqMat cent_;
  std::map<char, SqMat> ops_;
  SqMat dollar_;
  ColVec v0_;
  std::vector<Scalar> weights_;
  Regime regime_;
  long precision_;
};

// ---------------------------------------------------------------------------
// Execution.
// ---------------------------------------------------------------------------

/// Weighting step: sum of |entries| over accept states, normalized by the
/// l1-norm of the whole vector.
Scalar weighting(const ColVec& final_state, const std::set<int>& accept);

/// Streaming evaluation of one AfA over one input, symbol by symbol. Useful
/// when many inputs share prefixes; copies of a run are independent.
class AfaRun {
 public:
  explicit AfaRun(const Afa& m);

  void step(char symbol);
  /// State after ¢ and the symbols consumed so far, before $.
  const ColVec& state() const { return v_; }
  ColVec final_state() const;
  Scalar accept_prob() const;

 private:
  const Afa* m_;
  ColVec v_;
};

/// v_f = A_$ A_x[m] ... A_x[1] A_¢ e_initial.
ColVec afa_final_state(const Afa& m, std::string_view x);
Scalar afa_accept_prob(const Afa& m, std::string_view x);
Scalar pfa_accept_prob(const Pfa& m, std::string_view x);
Scalar qfa_accept_prob(const Qfa& m, std::string_view x);
Scalar ga_value(const Ga& m, std::string_view x);

/// Integer vector counting, per state, the nondeterministic paths of ¢x that
/// end there. Requires a normalized (ε-free, $-free) NFA.
ColVec nfa_path_vector(const Nfa& m, std::string_view x);
bool nfa_accepts(const Nfa& m, std::string_view x);

// ---------------------------------------------------------------------------
// A machine of any kind, for file IO and sweeps.
// ---------------------------------------------------------------------------
using Machine = std::variant<Afa, Pfa, Qfa, Nfa, Ga>;

/// Acceptance value of any machine: probability for Afa/Pfa/Qfa, exact 0/1
/// for Nfa, the (unbounded) weighted value for Ga.
Scalar machine_accept_value(const Machine& m, std::string_view x);
const EndMarkedAlphabet& machine_alphabet(const Machine& m);
std::string machine_kind_name(const Machine& m);
int machine_states(const Machine& m);
Regime machine_regime(const Machine& m);
long machine_precision(const Machine& m);

}  // namespace afatk
