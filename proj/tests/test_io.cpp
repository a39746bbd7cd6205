#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "afatk/constructions.hpp"
#include "afatk/io.hpp"
#include "test_support.hpp"

using namespace afatk;

namespace {

Machine round_trip(const Machine& m, std::string_view provenance = "unit test") {
  std::ostringstream os;
  write_machine(os, m, provenance);
  CHECK(os.str().back() == '\n');
  std::istringstream is(os.str());
  return read_machine(is);
}

template <typename T>
void check_round_trip(const T& machine) {
  Machine back = round_trip(Machine(machine));
  REQUIRE(std::holds_alternative<T>(back));
  CHECK(std::get<T>(back) == machine);
}

}  // namespace

TEST_CASE("scalar file strings") {
  CHECK(scalar_to_file_string(Scalar(Rational(-7, 3))) == "-7/3");
  CHECK(scalar_to_file_string(Scalar(Rational(4))) == "4");
  Scalar parsed = scalar_from_file_string("-7/3", Regime::exact, 0);
  CHECK(parsed == Scalar(Rational(-7, 3)));

  testing::Rng rng(301);
  for (int i = 0; i < 50; ++i) {
    Scalar s{testing::random_rational(rng, 1000, 999)};
    CHECK(scalar_from_file_string(scalar_to_file_string(s), Regime::exact, 0) == s);
  }
  for (int i = 0; i < 50; ++i) {
    BigFloat x = BigFloat::from_rational(testing::random_rational(rng, 5000, 77), 128) *
                 BigFloat::pi(128);
    Scalar s{x};
    CHECK(scalar_from_file_string(scalar_to_file_string(s), Regime::real, 128) == s);
  }

  // precision annotation wins over the header precision
  Scalar at192 = scalar_from_file_string("1.5@192", Regime::real, 128);
  CHECK(at192.precision() == 192);
  CHECK_THROWS_AS(scalar_from_file_string("1.5@xyz", Regime::real, 128),
                  std::invalid_argument);
  CHECK_THROWS_AS(scalar_from_file_string("zz", Regime::exact, 0), std::invalid_argument);
}

TEST_CASE("every construction round-trips through its file form") {
  check_round_trip(count_afa(5, 3));
  check_round_trip(mod_p_afa(5, Rational(14)));
  check_round_trip(mod2k_afa(1));
  check_round_trip(mod2k_afa(3));
  check_round_trip(end_nfa(3));
  check_round_trip(modxor_nfa(2));
  check_round_trip(nfa_to_afa(end_nfa(2), 10));
  check_round_trip(nfa_to_afa_zero_error(modxor_nfa(1), 1));
  check_round_trip(testing::fair_coin_pfa());
  check_round_trip(pfa_to_afa(testing::fair_coin_pfa()));
  check_round_trip(
      exclusive_cutpoint_afa(CutpointSpec(testing::fair_coin_pfa(), Rational(1, 3)), 2));

  testing::Rng rng(307);
  check_round_trip(testing::random_qfa(rng, 2, "ab", 128));
  check_round_trip(qfa_to_afa(testing::random_qfa(rng, 2, "a", 128)));
}

TEST_CASE("nfa files keep the optional relations") {
  Nfa end2 = end_nfa(2);
  SqMat eps(end2.states(), Regime::exact);
  eps.at(2, 0) = Scalar(Rational(1));
  SqMat dollar = SqMat::identity(end2.states(), Regime::exact);
  Nfa messy(end2.alphabet(), end2.cent(), {{'0', end2.op('0')}, {'1', end2.op('1')}},
            dollar, eps, 0, end2.accept());
  check_round_trip(messy);

  Machine back = round_trip(Machine(messy));
  const Nfa& parsed = std::get<Nfa>(back);
  CHECK(parsed.has_epsilon());
  CHECK(parsed.has_dollar());
}

TEST_CASE("ga files carry the weight row") {
  Pfa coin = testing::fair_coin_pfa();
  std::vector<Scalar> weights{Scalar(Rational(2, 3)), Scalar(Rational(-1, 3))};
  Ga ga(coin.alphabet(), coin.cent(), {{'a', coin.op('a')}}, coin.dollar(),
        ColVec::basis(2, 0, Regime::exact), weights);
  check_round_trip(ga);
}

TEST_CASE("parse errors are structured and carry the defect") {
  auto parse = [](const std::string& text) {
    std::istringstream is(text);
    return read_machine(is);
  };

  CHECK_THROWS_WITH_AS(parse(""), doctest::Contains("empty"), parse_error);
  CHECK_THROWS_WITH_AS(parse("hello\n"), doctest::Contains("not an automaton file"),
                       parse_error);

  std::string bad_sum =
      "afatk-automaton v1\n"
      "kind: afa\n"
      "regime: exact\n"
      "alphabet: a\n"
      "states: 2\n"
      "initial: 1\n"
      "accept: 1\n"
      "op \xc2\xa2\n"
      "1 0\n"
      "0 1\n"
      "op a\n"
      "1 1\n"   // column 1 sums to 2
      "0 1\n"
      "op $\n"
      "1 0\n"
      "0 1\n";
  CHECK_THROWS_WITH_AS(parse(bad_sum), doctest::Contains("column sum is 2"), parse_error);

  // the uncorrected t-scaling matrix is rejected naming the zero column sum
  std::string zero_sum =
      "afatk-automaton v1\n"
      "kind: afa\n"
      "regime: exact\n"
      "alphabet: a\n"
      "states: 3\n"
      "initial: 1\n"
      "accept: 1\n"
      "op \xc2\xa2\n"
      "1 0 0\n"
      "0 1 0\n"
      "0 0 1\n"
      "op a\n"
      "1 0 0\n"
      "0 1 0\n"
      "0 0 1\n"
      "op $\n"
      "1 0 0\n"
      "-3 3 0\n"
      "-3 0 3\n";
  CHECK_THROWS_WITH_AS(parse(zero_sum),
                       doctest::Contains("column 2 is not an affine state: column sum is 0"),
                       parse_error);

  std::string bad_kind =
      "afatk-automaton v1\nkind: zfa\nregime: exact\nalphabet: a\nstates: 1\n"
      "initial: 1\naccept: 1\nop \xc2\xa2\n1\nop a\n1\nop $\n1\n";
  CHECK_THROWS_WITH_AS(parse(bad_kind), doctest::Contains("unknown machine kind"),
                       parse_error);

  std::string bad_index =
      "afatk-automaton v1\nkind: afa\nregime: exact\nalphabet: a\nstates: 1\n"
      "initial: 4\naccept: 1\nop \xc2\xa2\n1\nop a\n1\nop $\n1\n";
  CHECK_THROWS_WITH_AS(parse(bad_index), doctest::Contains("out of range"), parse_error);

  std::string missing_op =
      "afatk-automaton v1\nkind: afa\nregime: exact\nalphabet: a\nstates: 1\n"
      "initial: 1\naccept: 1\nop \xc2\xa2\n1\nop $\n1\n";
  CHECK_THROWS_WITH_AS(parse(missing_op), doctest::Contains("missing operator 'a'"),
                       parse_error);

  std::string stray_op =
      "afatk-automaton v1\nkind: afa\nregime: exact\nalphabet: a\nstates: 1\n"
      "initial: 1\naccept: 1\nop \xc2\xa2\n1\nop a\n1\nop b\n1\nop $\n1\n";
  CHECK_THROWS_WITH_AS(parse(stray_op), doctest::Contains("not in the alphabet"),
                       parse_error);

  std::string short_row =
      "afatk-automaton v1\nkind: afa\nregime: exact\nalphabet: a\nstates: 2\n"
      "initial: 1\naccept: 1\nop \xc2\xa2\n1 0\n0 1\nop a\n1\n0 1\nop $\n1 0\n0 1\n";
  CHECK_THROWS_WITH_AS(parse(short_row), doctest::Contains("has 1 entries, expected 2"),
                       parse_error);
}

TEST_CASE("csv report golden bytes") {
  SweepReport report =
      sweep(Machine(count_afa(1, 1)), count_oracle(1), Enumeration::all_strings(2));
  std::ostringstream os;
  write_report_csv(os, report);
  CHECK(os.str() ==
        "string,prob_num,prob_den,oracle,paths\n"
        ",1,3,nonmember,\n"
        "a,1,1,member,\n"
        "aa,1,3,nonmember,\n");
}

TEST_CASE("json report shape") {
  Nfa end2 = end_nfa(2);
  SweepReport report = sweep(Machine(nfa_to_afa_zero_error(end2, 1)), end_oracle(2),
                             Enumeration::all_strings(2), 1, &end2);
  report.checked_mode = "zero";
  report.pass = true;

  std::ostringstream os;
  write_report_json(os, report);
  std::string text = os.str();
  CHECK(text.back() == '\n');

  auto j = nlohmann::json::parse(text);
  CHECK(j["schema"] == "afatk.sweep-report/1");
  CHECK(j["regime"] == "exact");
  CHECK(j["rows"].size() == 7);
  CHECK(j["rows"][5]["string"] == "10");
  CHECK(j["rows"][5]["prob"] == "1");
  CHECK(j["rows"][5]["paths"] == 1);
  CHECK(j["summary"]["members"] == 2);  // "10" and "11"
  CHECK(j["check"]["pass"] == true);

  // identical runs serialize to identical bytes
  SweepReport again = sweep(Machine(nfa_to_afa_zero_error(end2, 1)), end_oracle(2),
                            Enumeration::all_strings(2), 1, &end2);
  again.checked_mode = "zero";
  again.pass = true;
  std::ostringstream os2;
  write_report_json(os2, again);
  CHECK(os.str() == os2.str());
}

TEST_CASE("report files round trip for diffing") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "afatk-io-test";
  fs::create_directories(dir);

  SweepReport report =
      sweep(Machine(count_afa(2, 2)), count_oracle(2), Enumeration::all_strings(5));
  write_report_file(dir / "r.csv", report, "csv");
  write_report_file(dir / "r.json", report, "json");

  ReportRows csv = read_report_rows_file(dir / "r.csv");
  ReportRows json = read_report_rows_file(dir / "r.json");
  REQUIRE(csv.rows.size() == report.rows.size());
  REQUIRE(json.rows.size() == report.rows.size());
  for (size_t i = 0; i < csv.rows.size(); ++i) {
    CHECK(csv.rows[i] == json.rows[i]);
  }

  fs::remove_all(dir);
}

TEST_CASE("machine files round trip on disk with provenance") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "afatk-io-test2";
  fs::create_directories(dir);

  Afa m = count_afa(7, 2);
  write_machine_file(dir / "m.afa", Machine(m), "count --m 7 --t 2");

  std::ifstream is(dir / "m.afa");
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  CHECK(text.find("# built by: count --m 7 --t 2") != std::string::npos);

  Machine back = read_machine_file(dir / "m.afa");
  CHECK(std::get<Afa>(back) == m);

  fs::remove_all(dir);
}
