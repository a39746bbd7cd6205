#include "afatk/verify.hpp"

#include <algorithm>
#include <thread>

namespace afatk {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool unary_a(std::string_view x) {
  return std::all_of(x.begin(), x.end(), [](char c) { return c == 'a'; });
}

}  // namespace

std::string to_string(Membership m) {
  switch (m) {
    case Membership::member: return "member";
    case Membership::nonmember: return "nonmember";
    case Membership::outside_promise: return "outside";
  }
  return "?";
}

LanguageOracle count_oracle(long long m) {
  require(m >= 0, "count parameter m must be nonnegative");
  return {"COUNT_" + std::to_string(m), [m](std::string_view x) {
            if (!unary_a(x)) return Membership::nonmember;
            return static_cast<long long>(x.size()) == m ? Membership::member
                                                         : Membership::nonmember;
          }};
}

LanguageOracle mod_p_oracle(long long p) {
  require(p >= 1, "modulus must be positive");
  return {"MOD_" + std::to_string(p), [p](std::string_view x) {
            if (!unary_a(x)) return Membership::nonmember;
            return static_cast<long long>(x.size()) % p == 0 ? Membership::member
                                                             : Membership::nonmember;
          }};
}

LanguageOracle mod2k_oracle(int k) {
  require(k >= 1, "k must be at least 1");
  long long block = 1LL << k;
  return {"MOD2^" + std::to_string(k), [block](std::string_view x) {
            if (!unary_a(x)) return Membership::outside_promise;
            long long len = static_cast<long long>(x.size());
            if (len % block != 0) return Membership::outside_promise;
            return (len / block) % 2 == 0 ? Membership::member : Membership::nonmember;
          }};
}

LanguageOracle end_oracle(int n) {
  require(n >= 1, "end marker distance must be at least 1");
  return {"END_" + std::to_string(n), [n](std::string_view x) {
            size_t len = x.size();
            if (len < static_cast<size_t>(n)) return Membership::nonmember;
            return x[len - static_cast<size_t>(n)] == '1' ? Membership::member
                                                          : Membership::nonmember;
          }};
}

LanguageOracle modxor_oracle(int k) {
  require(k >= 1, "k must be at least 1");
  long long period = 2LL * k;
  return {"MODXOR_" + std::to_string(k), [period](std::string_view x) {
            long long len = static_cast<long long>(x.size());
            if (len < period) return Membership::nonmember;  // needs m > 0 blocks
            long long offset = len % period;
            int parity = 0;
            for (long long pos = offset; pos < len; pos += period)
              parity ^= (x[static_cast<size_t>(pos)] == '1') ? 1 : 0;
            return parity == 1 ? Membership::member : Membership::nonmember;
          }};
}

long long brute_force_paths(const Nfa& n, std::string_view x) {
  if (n.has_epsilon())
    throw std::invalid_argument("NFA has epsilon transitions; run nfa_normalize first");
  if (n.has_dollar())
    throw std::invalid_argument("NFA uses the right end-marker; run nfa_normalize first");

  int states = n.states();
  auto adjacency = [states](const SqMat& m) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(states));
    for (int from = 0; from < states; ++from)
      for (int to = 0; to < states; ++to)
        if (!m.at(to, from).is_zero()) adj[static_cast<size_t>(from)].push_back(to);
    return adj;
  };

  auto cent_adj = adjacency(n.cent());
  std::vector<std::vector<std::vector<int>>> sym_adj;
  sym_adj.reserve(n.alphabet().symbols.size());
  for (char c : n.alphabet().symbols) sym_adj.push_back(adjacency(n.op(c)));

  std::vector<int> sym_index(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    int idx = n.alphabet().index(x[i]);
    if (idx < 0)
      throw std::invalid_argument("symbol '" + std::string(1, x[i]) + "' not in alphabet");
    sym_index[i] = idx;
  }

  // Plain recursive enumeration of complete runs; no matrix algebra involved.
  std::function<long long(int, size_t)> walk = [&](int state, size_t pos) -> long long {
    if (pos == x.size()) return n.accept().count(state) ? 1 : 0;
    long long total = 0;
    for (int next : sym_adj[static_cast<size_t>(sym_index[pos])][static_cast<size_t>(state)])
      total += walk(next, pos + 1);
    return total;
  };

  long long total = 0;
  for (int start : cent_adj[static_cast<size_t>(n.initial())]) total += walk(start, 0);
  return total;
}

// ---------------------------------------------------------------------------

Enumeration Enumeration::all_strings(int max_len) {
  require(max_len >= 0, "max length must be nonnegative");
  Enumeration e;
  e.kind = Kind::all_strings;
  e.max_len = max_len;
  return e;
}

Enumeration Enumeration::unary_multiples(long long block, long long max_factor) {
  require(block >= 1, "block length must be positive");
  require(max_factor >= 0, "factor bound must be nonnegative");
  Enumeration e;
  e.kind = Kind::unary_multiples;
  e.block = block;
  e.max_factor = max_factor;
  return e;
}

std::string Enumeration::to_string() const {
  if (kind == Kind::all_strings) return "all-strings(max-len=" + std::to_string(max_len) + ")";
  return "unary-multiples(block=" + std::to_string(block) +
         ",max-factor=" + std::to_string(max_factor) + ")";
}

std::vector<std::string> enumerate_strings(const EndMarkedAlphabet& alphabet, int max_len) {
  long long total = 1;
  long long level = 1;
  for (int l = 1; l <= max_len; ++l) {
    level *= alphabet.size();
    total += level;
    require(total <= kMaxSweepRows,
            "enumeration too large: more than " + std::to_string(kMaxSweepRows) + " strings");
  }
  std::vector<std::string> out;
  out.reserve(static_cast<size_t>(total));
  out.emplace_back();
  for (int l = 1; l <= max_len; ++l) {
    std::vector<int> odo(static_cast<size_t>(l), 0);
    while (true) {
      std::string s(static_cast<size_t>(l), ' ');
      for (int i = 0; i < l; ++i) s[static_cast<size_t>(i)] = alphabet.symbols[static_cast<size_t>(odo[static_cast<size_t>(i)])];
      out.push_back(std::move(s));
      int pos = l - 1;
      while (pos >= 0 && odo[static_cast<size_t>(pos)] == alphabet.size() - 1) {
        odo[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++odo[static_cast<size_t>(pos)];
    }
  }
  return out;
}

namespace {

std::vector<std::string> enumerate_inputs(const EndMarkedAlphabet& alphabet,
                                          const Enumeration& e) {
  if (e.kind == Enumeration::Kind::all_strings)
    return enumerate_strings(alphabet, e.max_len);
  require(alphabet.symbols == "a", "unary-multiples enumeration needs alphabet {a}");
  require(e.max_factor + 1 <= kMaxSweepRows, "enumeration too large");
  std::vector<std::string> out;
  out.reserve(static_cast<size_t>(e.max_factor) + 1);
  for (long long j = 0; j <= e.max_factor; ++j)
    out.emplace_back(static_cast<size_t>(j * e.block), 'a');
  return out;
}

std::string describe_machine(const Machine& m) {
  std::string desc = machine_kind_name(m) + "(states=" + std::to_string(machine_states(m)) +
                     ", regime=" + to_string(machine_regime(m));
  if (machine_regime(m) == Regime::real)
    desc += ", precision=" + std::to_string(machine_precision(m));
  return desc + ")";
}

}  // namespace

SweepReport sweep(const Machine& m, const LanguageOracle& oracle,
                  const Enumeration& strings, int jobs, const Nfa* path_source) {
  const EndMarkedAlphabet& alphabet = machine_alphabet(m);
  std::vector<std::string> inputs = enumerate_inputs(alphabet, strings);

  SweepReport report;
  report.machine_desc = describe_machine(m);
  report.oracle_name = oracle.name;
  report.regime = machine_regime(m);
  report.precision = machine_precision(m);
  report.alphabet = alphabet.symbols;
  report.enumeration = strings.to_string();
  report.rows.resize(inputs.size());

  auto fill_range = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      SweepRow& row = report.rows[i];
      row.input = inputs[i];
      row.prob = machine_accept_value(m, inputs[i]);
      row.verdict = oracle.classify(inputs[i]);
      if (path_source) row.paths = brute_force_paths(*path_source, inputs[i]);
    }
  };

  jobs = std::max(1, jobs);
  if (jobs == 1 || inputs.size() < 256) {
    fill_range(0, inputs.size());
  } else {
    std::vector<std::thread> workers;
    size_t chunk = (inputs.size() + static_cast<size_t>(jobs) - 1) / static_cast<size_t>(jobs);
    for (int w = 0; w < jobs; ++w) {
      size_t begin = static_cast<size_t>(w) * chunk;
      size_t end = std::min(inputs.size(), begin + chunk);
      if (begin >= end) break;
      workers.emplace_back(fill_range, begin, end);
    }
    for (auto& t : workers) t.join();
  }

  SweepSummary& s = report.summary;
  s.rows = static_cast<long long>(report.rows.size());
  for (const SweepRow& row : report.rows) {
    switch (row.verdict) {
      case Membership::member:
        ++s.members;
        if (!s.min_member_prob || row.prob < *s.min_member_prob)
          s.min_member_prob = row.prob;
        break;
      case Membership::nonmember:
        ++s.nonmembers;
        if (!s.max_nonmember_prob || row.prob > *s.max_nonmember_prob)
          s.max_nonmember_prob = row.prob;
        break;
      case Membership::outside_promise:
        ++s.outside;
        break;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

struct ModeBounds {
  // Exact regime: literal comparisons against these rationals.
  // Real regime: the same comparisons, slackened by the tolerance.
  bool member_must_be_one;     // f = 1 (vs f >= 1 - eps)
  bool nonmember_must_be_zero; // f = 0 (vs f <= eps)
};

ModeBounds bounds_for(const ErrorMode& mode) {
  using K = ErrorMode::Kind;
  switch (mode.kind) {
    case K::two_sided: return {false, false};
    case K::positive_one_sided: return {false, true};
    case K::negative_one_sided: return {true, false};
    case K::zero: return {true, true};
  }
  return {true, true};
}

}  // namespace

CheckResult check_error_mode(const SweepReport& report, const ErrorMode& mode,
                             std::optional<Rational> tolerance) {
  ModeBounds b = bounds_for(mode);

  Rational tol(0);
  if (report.regime == Regime::exact) {
    if (tolerance && !tolerance->is_zero())
      throw std::invalid_argument("exact-regime checks take no tolerance");
  } else {
    if (mode.kind == ErrorMode::Kind::zero && !tolerance)
      throw std::invalid_argument(
          "zero-error demanded of a Real-regime machine: declare the tolerance explicitly");
    tol = tolerance.value_or(Rational(1, 1'000'000'000));
  }

  long prec = std::max<long>(report.precision, BigFloat::default_precision);
  auto as_bf = [&](const Scalar& s) { return s.to_bigfloat(prec); };
  BigFloat tol_bf = BigFloat::from_rational(tol, prec);
  BigFloat eps_bf = BigFloat::from_rational(mode.epsilon, prec);
  BigFloat one_bf = BigFloat::from_long(1, prec);

  auto member_ok = [&](const Scalar& f) {
    if (report.regime == Regime::exact) {
      if (b.member_must_be_one) return f.rat() == Rational(1);
      return f.rat() >= Rational(1) - mode.epsilon;
    }
    if (b.member_must_be_one) return (as_bf(f) - one_bf).abs() <= tol_bf;
    return as_bf(f) >= one_bf - eps_bf - tol_bf;
  };
  auto nonmember_ok = [&](const Scalar& f) {
    if (report.regime == Regime::exact) {
      if (b.nonmember_must_be_zero) return f.rat().is_zero();
      return f.rat() <= mode.epsilon;
    }
    if (b.nonmember_must_be_zero) return as_bf(f).abs() <= tol_bf;
    return as_bf(f) <= eps_bf + tol_bf;
  };

  for (const SweepRow& row : report.rows) {
    bool ok = true;
    std::string expectation;
    if (row.verdict == Membership::member && !member_ok(row.prob)) {
      ok = false;
      expectation = b.member_must_be_one ? "expected probability 1"
                                         : "expected at least 1 - eps";
    } else if (row.verdict == Membership::nonmember && !nonmember_ok(row.prob)) {
      ok = false;
      expectation = b.nonmember_must_be_zero ? "expected probability 0"
                                             : "expected at most eps";
    }
    if (!ok) {
      CheckResult r;
      r.pass = false;
      r.witness = row.input;
      r.witness_prob = row.prob;
      r.reason = "mode " + mode.to_string() + " violated at \"" + row.input +
                 "\": probability " + row.prob.to_string() + ", " + expectation;
      return r;
    }
  }

  CheckResult r;
  r.pass = true;
  r.reason = "mode " + mode.to_string() + " holds on all " +
             std::to_string(report.rows.size()) + " rows";
  return r;
}

CheckResult equivalence_sweep(const Machine& m1, const Machine& m2, int max_len,
                              const Rational& tol) {
  if (!(machine_alphabet(m1) == machine_alphabet(m2)))
    throw std::invalid_argument("equivalence sweep requires matching alphabets");
  require(tol >= Rational(0), "tolerance must be nonnegative");

  std::vector<std::string> inputs = enumerate_strings(machine_alphabet(m1), max_len);
  bool both_exact =
      machine_regime(m1) == Regime::exact && machine_regime(m2) == Regime::exact;
  long prec = std::max({machine_precision(m1), machine_precision(m2),
                        BigFloat::default_precision});

  for (const std::string& x : inputs) {
    Scalar f1 = machine_accept_value(m1, x);
    Scalar f2 = machine_accept_value(m2, x);
    bool ok;
    if (both_exact) {
      ok = (f1.rat() - f2.rat()).abs() <= tol;
    } else {
      BigFloat diff = (f1.to_bigfloat(prec) - f2.to_bigfloat(prec)).abs();
      ok = diff <= BigFloat::from_rational(tol, prec);
    }
    if (!ok) {
      CheckResult r;
      r.pass = false;
      r.witness = x;
      r.witness_prob = f1;
      r.reason = "values differ at \"" + x + "\": " + f1.to_string() + " vs " +
                 f2.to_string();
      return r;
    }
  }

  CheckResult r;
  r.pass = true;
  r.reason = "values agree on all " + std::to_string(inputs.size()) +
             " strings up to length " + std::to_string(max_len);
  return r;
}

}  // namespace afatk
