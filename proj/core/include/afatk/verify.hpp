// verify.hpp -- independent oracles and exhaustive sweeps that certify a
// machine's error-mode claim at bounded input length.
//
// Oracles are direct arithmetic predicates on strings, never automata, so a
// bug in the matrix machinery cannot hide on both sides of a check. The path
//-count oracle enumerates runs recursively, independent of matrix products.

#pragma once

#include <functional>
#include <optional>

#include "afatk/automata.hpp"

namespace afatk {

enum class Membership { member, nonmember, outside_promise };

std::string to_string(Membership m);

struct LanguageOracle {
  std::string name;
  std::function<Membership(std::string_view)> classify;
};

/// { a^m }.
LanguageOracle count_oracle(long long m);
/// { a^(jp) : j >= 0 }.
LanguageOracle mod_p_oracle(long long p);
/// Promise classifier over { a^(j*2^k) }: member iff j even; everything not
/// of that shape is outside the promise.
LanguageOracle mod2k_oracle(int k);
/// Strings over {0,1} whose n-th symbol from the end is 1.
LanguageOracle end_oracle(int n);
/// Block-XOR language over {0,1}: offset t = |w| mod 2k, marked bits every
/// 2k positions, XOR of marked bits = 1, at least one full block.
LanguageOracle modxor_oracle(int k);

/// Number of complete nondeterministic runs of ¢x that end in an accepting
/// state. Recursive enumeration over the transition relation; requires a
/// normalized (ε-free, $-free) NFA.
long long brute_force_paths(const Nfa& n, std::string_view x);

// ---------------------------------------------------------------------------
// Sweeps.
// ---------------------------------------------------------------------------

struct Enumeration {
  enum class Kind { all_strings, unary_multiples };

  Kind kind;
  int max_len = 0;          // all_strings: maximum string length
  long long block = 0;      // unary_multiples: strings a^(j*block)
  long long max_factor = 0; // unary_multiples: j = 0..max_factor

  static Enumeration all_strings(int max_len);
  static Enumeration unary_multiples(long long block, long long max_factor);

  std::string to_string() const;
};

/// Hard ceiling on sweep size.
inline constexpr long long kMaxSweepRows = 1'000'000;

struct SweepRow {
  std::string input;
  Scalar prob;
  Membership verdict;
  std::optional<long long> paths;
};

struct SweepSummary {
  long long rows = 0;
  long long members = 0;
  long long nonmembers = 0;
  long long outside = 0;
  std::optional<Scalar> min_member_prob;
  std::optional<Scalar> max_nonmember_prob;
};

struct SweepReport {
  std::string machine_desc;
  std::string oracle_name;
  Regime regime = Regime::exact;
  long precision = 0;
  std::string alphabet;
  std::string enumeration;
  std::vector<SweepRow> rows;  // canonical shortlex order
  SweepSummary summary;

  // Filled in when a mode check has been run against this report.
  std::optional<std::string> checked_mode;
  std::optional<bool> pass;
  std::optional<std::string> witness;
};

/// One row per enumerated string, in shortlex order. `path_source`, when
/// given, adds the accepting-path count of that NFA to each row. `jobs`
/// bounds worker threads; the result is independent of it.
SweepReport sweep(const Machine& m, const LanguageOracle& oracle,
                  const Enumeration& strings, int jobs = 1,
                  const Nfa* path_source = nullptr);

// ---------------------------------------------------------------------------
// Checks.
// ---------------------------------------------------------------------------

struct CheckResult {
  bool pass = false;
  std::string witness;              // first violating string, when failing
  std::optional<Scalar> witness_prob;
  std::string reason;               // human-readable account of the verdict
};

/// Checks the report against an error mode. Exact-regime reports are compared
/// literally (a supplied tolerance must be zero). Real-regime reports use the
/// tolerance, which defaults to 1e-9 except for zero-error, where it must be
/// given explicitly.
CheckResult check_error_mode(const SweepReport& report, const ErrorMode& mode,
                             std::optional<Rational> tolerance = std::nullopt);

/// PASS iff |f_M1(x) - f_M2(x)| <= tol for every string up to max_len.
/// Alphabets must agree; tol = 0 demands literal equality.
CheckResult equivalence_sweep(const Machine& m1, const Machine& m2, int max_len,
                              const Rational& tol);

/// Strings over the alphabet in shortlex order, lengths 0..max_len.
/// Throws when the total exceeds kMaxSweepRows.
std::vector<std::string> enumerate_strings(const EndMarkedAlphabet& alphabet,
                                           int max_len);

}  // namespace afatk
