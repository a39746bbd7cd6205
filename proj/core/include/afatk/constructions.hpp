// constructions.hpp -- builders that turn linear systems, PFAs, QFAs and NFAs
// into affine automata, plus the parametrized machine families for the unary
// counting/modular languages and the NFA witness languages.
//
// Every matrix emitted here is affine-valid; machine constructors re-check
// that on the way out.

#pragma once

#include "afatk/automata.hpp"

namespace afatk {

/// A plain real-valued linear system: a start vector and a sequence of
/// operators to apply in order.
struct LinearSystem {
  ColVec v0;
  std::vector<SqMat> mats;
};

/// Affine embedding of a linear system: one extra coordinate carries
/// 1 - zeta of the simulated vector, making every operator affine-valid.
/// For any prefix product, the embedded final vector is (v_f ; 1 - zeta(v_f)).
LinearSystem embed_linear(const LinearSystem& sys);

/// Embeds a single operator the same way (bottom row 1 - column sums,
/// last column the new basis state).
SqMat embed_operator(const SqMat& a);
/// (v ; 1 - zeta(v)).
ColVec embed_vector(const ColVec& v);

/// A PFA is an AfA as-is: same states, operators, accept set.
Afa pfa_to_afa(const Pfa& p);

/// A rational PFA with a rational cutpoint; recognizes { w : f_P(w) != lambda }.
struct CutpointSpec {
  Pfa pfa;
  Rational lambda;

  CutpointSpec(Pfa p, Rational l);
};

/// (n+1)-state integer-valued AfA for the exclusive cutpoint language:
/// f = 0 exactly when f_P(x) = lambda, otherwise f = 2t|a|/(2t|a|+1) for a
/// nonzero integer a, hence at least 2t/(2t+1). Requires n >= 2 and t >= 1.
Afa exclusive_cutpoint_afa(const CutpointSpec& spec, long long t);

/// Exact simulation of a real-valued QFA by an (n^2+1)-state AfA via the
/// tensor square of each operator.
Afa qfa_to_afa(const Qfa& q);

/// 3-state AfA for {a^m}: accepts a^m with probability 1 and a^l with
/// probability exactly 1/(2t|m-l|+1) otherwise. Exact regime.
Afa count_afa(long long m, long long t);

/// 3-state AfA for { a^(jp) : j >= 0 }, p odd >= 3: members accepted with
/// probability 1, non-members below cot(pi/p)/t. Requires t > cot(pi/p).
/// Real regime at the given precision.
Afa mod_p_afa(long long p, const Rational& t, long prec = BigFloat::default_precision);

/// 3-state AfA for the promise problem over { a^(j*2^k) }: probability 1 when
/// j is even, 0 when j is odd. Exact regime for k = 1, Real otherwise.
/// Behavior outside the promise set is unspecified.
Afa mod2k_afa(int k, long prec = BigFloat::default_precision);

/// Removes the ε-relation (no extra states) and the right end-marker matrix
/// (one extra state) while preserving the recognized language. ε-free,
/// $-free inputs come back unchanged.
Nfa nfa_normalize(const Nfa& n);

/// (n+1)-state AfA recognizing the NFA's language with positive one-sided
/// error: f(x) = 2ta/(2ta+1) where a is the accepting-path count, so
/// non-members get exactly 0 and members at least 2t/(2t+1).
/// Requires a normalized NFA with n > 1 states and t >= 1.
Afa nfa_to_afa(const Nfa& n, long long t);

/// (n+1)-state zero-error AfA for an NFA that accepts every member on
/// exactly k paths: members map to probability exactly 1, non-members to
/// exactly 0. Requires a normalized NFA with n > 1 states and k >= 1.
/// The uniform-path-count promise is the caller's to assert (the verify
/// module can certify it at bounded length).
Afa nfa_to_afa_zero_error(const Nfa& n, long long k);

/// (n+1)-state NFA for "the n-th symbol from the end is 1" over {0,1}:
/// a guess state plus an n-step chain; every member has exactly one
/// accepting path.
Nfa end_nfa(int n);

/// 4k-state NFA (offset counter x parity) for the block-XOR language over
/// {0,1}: strings {0,1}^t x_1 {0,1}^(2k-1) ... x_m {0,1}^(2k-1) with t < 2k,
/// m > 0 and XOR x_i = 1. Every member has exactly one accepting path
/// (only the offset matching |w| mod 2k survives to a block boundary).
Nfa modxor_nfa(int k);

/// Disjoint union: paths add, so the union of two copies of a single-path
/// machine accepts every member on exactly two paths. Alphabets must match;
/// inputs must be normalized.
Nfa nfa_union(const Nfa& a, const Nfa& b);

}  // namespace afatk
