// Shared helpers for the test suites: seeded random machine generators and
// slow reference implementations that stay independent of the library's
// matrix evaluation path.

#pragma once

#include <random>
#include <set>
#include <vector>

#include "afatk/automata.hpp"
#include "afatk/constructions.hpp"

namespace afatk::testing {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int max_abs_num = 3, int max_den = 4) {
  std::uniform_int_distribution<int> num(-max_abs_num, max_abs_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(num(rng), den(rng));
}

inline ColVec random_exact_vector(Rng& rng, int dim) {
  std::vector<Scalar> entries;
  entries.reserve(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) entries.emplace_back(random_rational(rng));
  return ColVec(std::move(entries));
}

inline SqMat random_exact_matrix(Rng& rng, int dim) {
  SqMat m(dim, Regime::exact);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r) m.at(r, c) = Scalar(random_rational(rng));
  return m;
}

/// Matrix whose columns each sum to 1 (last row completes the sum).
inline SqMat random_affine_matrix(Rng& rng, int dim) {
  SqMat m(dim, Regime::exact);
  for (int c = 0; c < dim; ++c) {
    Rational sum(0);
    for (int r = 0; r + 1 < dim; ++r) {
      Rational v = random_rational(rng);
      m.at(r, c) = Scalar(v);
      sum += v;
    }
    m.at(dim - 1, c) = Scalar(Rational(1) - sum);
  }
  return m;
}

/// Columns are random rational probability distributions.
inline SqMat random_stochastic_matrix(Rng& rng, int dim) {
  SqMat m(dim, Regime::exact);
  std::uniform_int_distribution<int> part(0, 3);
  for (int c = 0; c < dim; ++c) {
    std::vector<int> w(static_cast<size_t>(dim));
    int total = 0;
    for (int r = 0; r < dim; ++r) total += w[static_cast<size_t>(r)] = part(rng);
    if (total == 0) {
      w[static_cast<size_t>(std::uniform_int_distribution<int>(0, dim - 1)(rng))] = 1;
      total = 1;
    }
    for (int r = 0; r < dim; ++r)
      m.at(r, c) = Scalar(Rational(w[static_cast<size_t>(r)], total));
  }
  return m;
}

inline Pfa random_pfa(Rng& rng, int states, const std::string& alphabet) {
  std::map<char, SqMat> ops;
  for (char c : alphabet) ops.emplace(c, random_stochastic_matrix(rng, states));
  std::set<int> accept;
  std::uniform_int_distribution<int> coin(0, 1);
  for (int s = 0; s < states; ++s)
    if (coin(rng)) accept.insert(s);
  if (accept.empty()) accept.insert(states - 1);
  return Pfa(EndMarkedAlphabet(alphabet), random_stochastic_matrix(rng, states),
             std::move(ops), random_stochastic_matrix(rng, states), 0, std::move(accept));
}

/// Sparse random NFA: normalized (no ε, no $), expected out-degree kept low so
/// exhaustive path enumeration stays cheap.
inline Nfa random_nfa(Rng& rng, int states, const std::string& alphabet) {
  std::uniform_int_distribution<int> pick(0, states - 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double edge_prob = 1.4 / states;

  auto random_zero_one = [&] {
    SqMat m(states, Regime::exact);
    for (int from = 0; from < states; ++from) {
      bool any = false;
      for (int to = 0; to < states; ++to)
        if (u(rng) < edge_prob) {
          m.at(to, from) = Scalar(Rational(1));
          any = true;
        }
      if (!any && u(rng) < 0.7) m.at(pick(rng), from) = Scalar(Rational(1));
    }
    return m;
  };

  SqMat cent = SqMat::identity(states, Regime::exact);
  if (u(rng) < 0.5) cent.at(pick(rng), 0) = Scalar(Rational(1));  // extra ¢ branch

  std::map<char, SqMat> ops;
  for (char c : alphabet) ops.emplace(c, random_zero_one());
  std::set<int> accept{pick(rng)};
  if (u(rng) < 0.4) accept.insert(pick(rng));
  return Nfa(EndMarkedAlphabet(alphabet), std::move(cent), std::move(ops), std::nullopt,
             std::nullopt, 0, std::move(accept));
}

/// Givens rotation on coordinates (i, j) by angle_times_pi_over_12 * pi/12.
inline SqMat givens(int dim, int i, int j, int angle_times_pi_over_12, long prec) {
  BigFloat theta = BigFloat::pi(prec) *
                   BigFloat::from_rational(Rational(angle_times_pi_over_12, 12), prec);
  SqMat m = SqMat::identity(dim, Regime::real, prec);
  m.at(i, i) = Scalar(cos(theta));
  m.at(j, j) = Scalar(cos(theta));
  m.at(j, i) = Scalar(sin(theta));
  m.at(i, j) = Scalar(-sin(theta));
  return m;
}

inline SqMat random_orthogonal(Rng& rng, int dim, long prec) {
  std::uniform_int_distribution<int> angle(0, 23);
  std::uniform_int_distribution<int> axis(0, dim - 1);
  std::uniform_int_distribution<int> count(1, 3);
  SqMat m = SqMat::identity(dim, Regime::real, prec);
  int rotations = count(rng);
  for (int r = 0; r < rotations; ++r) {
    int i = axis(rng), j = axis(rng);
    if (i == j) j = (j + 1) % dim;
    m = matmul(m, givens(dim, std::min(i, j), std::max(i, j), angle(rng), prec));
  }
  return m;
}

inline Qfa random_qfa(Rng& rng, int states, const std::string& alphabet, long prec) {
  std::map<char, SqMat> ops;
  for (char c : alphabet) ops.emplace(c, random_orthogonal(rng, states, prec));
  std::uniform_int_distribution<int> pick(0, states - 1);
  return Qfa(EndMarkedAlphabet(alphabet), random_orthogonal(rng, states, prec),
             std::move(ops), random_orthogonal(rng, states, prec), pick(rng),
             {pick(rng)});
}

/// Reference acceptance for an arbitrary NFA (ε and $ included): set-of-states
/// simulation, no matrices. Used to cross-check nfa_normalize.
inline bool reference_nfa_accepts(const Nfa& n, std::string_view x) {
  int states = n.states();
  auto closure = [&](std::set<int> s) {
    if (!n.has_epsilon()) return s;
    std::vector<int> stack(s.begin(), s.end());
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (int to = 0; to < states; ++to)
        if (!n.epsilon().at(to, cur).is_zero() && !s.count(to)) {
          s.insert(to);
          stack.push_back(to);
        }
    }
    return s;
  };
  auto step = [&](const std::set<int>& s, const SqMat& m) {
    std::set<int> out;
    for (int from : s)
      for (int to = 0; to < states; ++to)
        if (!m.at(to, from).is_zero()) out.insert(to);
    return closure(out);
  };

  std::set<int> current = closure({n.initial()});
  current = step(current, n.cent());
  for (char c : x) current = step(current, n.op(c));
  if (n.has_dollar()) current = step(current, n.dollar());
  for (int s : current)
    if (n.accept().count(s)) return true;
  return false;
}

/// Two-state PFA that mixes uniformly on every input symbol.
inline Pfa fair_coin_pfa() {
  SqMat mix(2, Regime::exact);
  for (int c = 0; c < 2; ++c)
    for (int r = 0; r < 2; ++r) mix.at(r, c) = Scalar(Rational(1, 2));
  return Pfa(EndMarkedAlphabet("a"), SqMat::identity(2, Regime::exact), {{'a', mix}},
             SqMat::identity(2, Regime::exact), 0, {0});
}

}  // namespace afatk::testing
