#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "afatk/constructions.hpp"
#include "afatk/io.hpp"
#include "afatk/verify.hpp"
#include "test_support.hpp"

using namespace afatk;

namespace {

Scalar exact(long long n, long long d = 1) { return Scalar(Rational(n, d)); }

std::string unary(long long l) { return std::string(static_cast<size_t>(l), 'a'); }

}  // namespace

TEST_CASE("oracle spot checks") {
  LanguageOracle count5 = count_oracle(5);
  CHECK(count5.classify(unary(5)) == Membership::member);
  CHECK(count5.classify(unary(4)) == Membership::nonmember);

  LanguageOracle mod3 = mod_p_oracle(3);
  CHECK(mod3.classify("") == Membership::member);
  CHECK(mod3.classify(unary(7)) == Membership::nonmember);

  LanguageOracle promise = mod2k_oracle(2);
  CHECK(promise.classify("") == Membership::member);           // j = 0
  CHECK(promise.classify(unary(4)) == Membership::nonmember);  // j = 1
  CHECK(promise.classify(unary(8)) == Membership::member);     // j = 2
  CHECK(promise.classify(unary(3)) == Membership::outside_promise);

  LanguageOracle end2 = end_oracle(2);
  CHECK(end2.classify("10") == Membership::member);
  CHECK(end2.classify("01") == Membership::nonmember);
  CHECK(end2.classify("1") == Membership::nonmember);

  LanguageOracle xor1 = modxor_oracle(1);
  CHECK(xor1.classify("10") == Membership::member);   // t = 0, x_1 = 1
  CHECK(xor1.classify("00") == Membership::nonmember);
  CHECK(xor1.classify("") == Membership::nonmember);  // m > 0 required
  CHECK(xor1.classify("110") == Membership::member);  // t = 1, x_1 = 1
}

TEST_CASE("brute force path counting") {
  // no transitions out of the initial state
  SqMat dead(2, Regime::exact);
  SqMat cent = SqMat::identity(2, Regime::exact);
  Nfa stuck(EndMarkedAlphabet("a"), cent, {{'a', dead}}, std::nullopt, std::nullopt, 0,
            {1});
  CHECK(brute_force_paths(stuck, "a") == 0);

  CHECK(brute_force_paths(end_nfa(2), "110") == 1);

  // agreement with the matrix path vector on random machines
  testing::Rng rng(211);
  for (int trial = 0; trial < 100; ++trial) {
    Nfa n = testing::random_nfa(rng, 2 + static_cast<int>(rng() % 5), "01");
    std::string x;
    for (int i = static_cast<int>(rng() % 7); i > 0; --i)
      x += (rng() % 2) ? '1' : '0';
    ColVec v = nfa_path_vector(n, x);
    Rational accept_sum(0);
    for (int s : n.accept()) accept_sum += v[s].rat();
    CHECK(accept_sum == Rational(brute_force_paths(n, x)));
  }
}

TEST_CASE("sweep row shapes") {
  SweepReport unary_report =
      sweep(Machine(count_afa(3, 1)), count_oracle(3), Enumeration::all_strings(6));
  CHECK(unary_report.rows.size() == 7);
  CHECK(unary_report.summary.members == 1);
  CHECK(unary_report.summary.nonmembers == 6);
  CHECK(*unary_report.summary.min_member_prob == exact(1));
  CHECK(*unary_report.summary.max_nonmember_prob == exact(1, 3));  // d = 1, t = 1

  SweepReport promise_report = sweep(Machine(mod2k_afa(2)), mod2k_oracle(2),
                                     Enumeration::unary_multiples(4, 8));
  CHECK(promise_report.rows.size() == 9);
  CHECK(promise_report.summary.members == 5);
  CHECK(promise_report.summary.nonmembers == 4);
  CHECK(promise_report.summary.outside == 0);

  Nfa end2 = end_nfa(2);
  SweepReport binary_report = sweep(Machine(nfa_to_afa(end2, 1)), end_oracle(2),
                                    Enumeration::all_strings(5), 1, &end2);
  CHECK(binary_report.rows.size() == 63);  // 2^0 + ... + 2^5
  for (const SweepRow& row : binary_report.rows) {
    REQUIRE(row.paths.has_value());
    if (row.verdict == Membership::member) CHECK(*row.paths >= 1);
  }

  CHECK_THROWS_AS(sweep(Machine(nfa_to_afa(end2, 1)), end_oracle(2),
                        Enumeration::all_strings(25)),
                  std::invalid_argument);
}

TEST_CASE("sweep rows come back in shortlex order and deterministically") {
  Nfa end2 = end_nfa(2);
  Machine m(nfa_to_afa_zero_error(end2, 1));
  SweepReport a = sweep(m, end_oracle(2), Enumeration::all_strings(4));
  SweepReport b = sweep(m, end_oracle(2), Enumeration::all_strings(4), /*jobs=*/2);
  REQUIRE(a.rows.size() == b.rows.size());
  for (size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].input == b.rows[i].input);
    CHECK(a.rows[i].prob == b.rows[i].prob);
    if (i > 0) {
      const std::string& prev = a.rows[i - 1].input;
      const std::string& cur = a.rows[i].input;
      CHECK((prev.size() < cur.size() || (prev.size() == cur.size() && prev < cur)));
    }
  }

  std::ostringstream csv1, csv2;
  write_report_csv(csv1, a);
  write_report_csv(csv2, b);
  CHECK(csv1.str() == csv2.str());
}

TEST_CASE("error mode checks on the counting machine") {
  for (long long t : {1LL, 3LL}) {
    SweepReport report =
        sweep(Machine(count_afa(4, t)), count_oracle(4), Enumeration::all_strings(20));

    CheckResult pass =
        check_error_mode(report, ErrorMode::negative_one_sided(Rational(1, 2 * t + 1)));
    CHECK(pass.pass);

    // monotone: any larger bound of the same kind still passes
    CheckResult wider =
        check_error_mode(report, ErrorMode::negative_one_sided(Rational(1, 2)));
    CHECK(wider.pass);

    // tighter bound fails, and the witness is the first offender in shortlex
    CheckResult tight =
        check_error_mode(report, ErrorMode::negative_one_sided(Rational(1, 100 * t)));
    CHECK(!tight.pass);
    CHECK(tight.witness == "");  // a^0 is the nearest miss for m = 4
  }

  // zero error fails with the first nonzero non-member; for m = 0 that is "a"
  SweepReport zero_report =
      sweep(Machine(count_afa(0, 2)), count_oracle(0), Enumeration::all_strings(10));
  CheckResult zr = check_error_mode(zero_report, ErrorMode::zero());
  CHECK(!zr.pass);
  CHECK(zr.witness == "a");
  REQUIRE(zr.witness_prob.has_value());
  CHECK(*zr.witness_prob == exact(1, 5));
}

TEST_CASE("zero-error checks demand an explicit tolerance in the real regime") {
  SweepReport report = sweep(Machine(mod2k_afa(2)), mod2k_oracle(2),
                             Enumeration::unary_multiples(4, 8));
  CHECK_THROWS_AS(check_error_mode(report, ErrorMode::zero()), std::invalid_argument);
  CheckResult ok =
      check_error_mode(report, ErrorMode::zero(), Rational(1, 1'000'000'000));
  CHECK(ok.pass);
}

TEST_CASE("exact-regime checks reject tolerances") {
  SweepReport report =
      sweep(Machine(count_afa(1, 1)), count_oracle(1), Enumeration::all_strings(4));
  CHECK_THROWS_AS(check_error_mode(report, ErrorMode::zero(), Rational(1, 10)),
                  std::invalid_argument);
  CHECK_NOTHROW(check_error_mode(report, ErrorMode::zero(), Rational(0)));
}

TEST_CASE("equivalence sweeps") {
  Machine self(count_afa(2, 1));
  CHECK(equivalence_sweep(self, self, 8, Rational(0)).pass);

  Pfa coin = testing::fair_coin_pfa();
  CHECK(equivalence_sweep(Machine(coin), Machine(pfa_to_afa(coin)), 7, Rational(0)).pass);

  long prec = 128;
  testing::Rng rng(223);
  Qfa q = testing::random_qfa(rng, 2, "ab", prec);
  CHECK(equivalence_sweep(Machine(q), Machine(qfa_to_afa(q)), 5,
                          Rational(1, 1'000'000'000))
            .pass);

  // a genuinely different machine fails with a witness: the empty string
  // already separates these two (1/3 vs 1/5)
  CheckResult diff = equivalence_sweep(Machine(count_afa(1, 1)),
                                       Machine(count_afa(2, 1)), 4, Rational(0));
  CHECK(!diff.pass);
  CHECK(diff.witness == "");

  CHECK_THROWS_AS(equivalence_sweep(Machine(count_afa(1, 1)), Machine(end_nfa(2)), 3,
                                    Rational(0)),
                  std::invalid_argument);
}
