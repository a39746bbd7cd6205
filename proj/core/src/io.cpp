#include "afatk/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace afatk {

namespace {

constexpr std::string_view kMagic = "afatk-automaton v1";
constexpr int kReportDigits = 20;  // fixed rendering width for real probabilities

std::string prob_string(const Scalar& s) {
  if (s.regime() == Regime::exact) return s.rat().to_string();
  return s.real().to_decimal(kReportDigits);
}

}  // namespace

std::string scalar_to_file_string(const Scalar& s) { return s.to_string(); }

Scalar scalar_from_file_string(std::string_view token, Regime regime, long precision) {
  if (regime == Regime::exact) return Scalar(Rational::from_string(token));
  if (auto at = token.rfind('@'); at != std::string_view::npos) {
    std::string_view digits = token.substr(at + 1);
    long prec = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), prec);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
      throw std::invalid_argument("malformed precision annotation: '" + std::string(token) + "'");
    return Scalar(BigFloat::from_decimal(token.substr(0, at), prec));
  }
  return Scalar(BigFloat::from_decimal(token, precision));
}

// ---------------------------------------------------------------------------
// Writing machines.
// ---------------------------------------------------------------------------

namespace {

void write_matrix(std::ostream& os, const std::string& label, const SqMat& m) {
  os << "op " << label << "\n";
  for (int col = 0; col < m.dim(); ++col) {
    for (int row = 0; row < m.dim(); ++row) {
      if (row) os << ' ';
      os << scalar_to_file_string(m.at(row, col));
    }
    os << "\n";
  }
}

void write_index_list(std::ostream& os, const char* key, const std::set<int>& states) {
  os << key << ":";
  for (int s : states) os << ' ' << s + 1;
  os << "\n";
}

struct CommonHeader {
  std::string kind;
  Regime regime;
  long precision;
  const EndMarkedAlphabet* alphabet;
};

void write_header(std::ostream& os, const CommonHeader& h, std::string_view provenance) {
  os << kMagic << "\n";
  if (!provenance.empty()) os << "# built by: " << provenance << "\n";
  os << "kind: " << h.kind << "\n";
  os << "regime: " << to_string(h.regime) << "\n";
  if (h.regime == Regime::real) os << "precision: " << h.precision << "\n";
  os << "alphabet: " << h.alphabet->symbols << "\n";
}

template <typename M>
void write_linear_machine(std::ostream& os, const char* kind, const M& m,
                          std::string_view provenance) {
  write_header(os, {kind, m.regime(), m.precision(), &m.alphabet()}, provenance);
  os << "states: " << m.states() << "\n";
  os << "initial: " << m.initial() + 1 << "\n";
  write_index_list(os, "accept", m.accept());
  write_matrix(os, kCentLabel, m.cent());
  for (char c : m.alphabet().symbols) write_matrix(os, std::string(1, c), m.op(c));
  write_matrix(os, kDollarLabel, m.dollar());
}

}  // namespace

void write_machine(std::ostream& os, const Machine& m, std::string_view provenance) {
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Afa>) {
          write_linear_machine(os, "afa", a, provenance);
        } else if constexpr (std::is_same_v<T, Pfa>) {
          write_linear_machine(os, "pfa", a, provenance);
        } else if constexpr (std::is_same_v<T, Qfa>) {
          write_linear_machine(os, "qfa", a, provenance);
        } else if constexpr (std::is_same_v<T, Nfa>) {
          write_header(os, {"nfa", Regime::exact, 0, &a.alphabet()}, provenance);
          os << "states: " << a.states() << "\n";
          os << "initial: " << a.initial() + 1 << "\n";
          write_index_list(os, "accept", a.accept());
          write_matrix(os, kCentLabel, a.cent());
          for (char c : a.alphabet().symbols) write_matrix(os, std::string(1, c), a.op(c));
          if (a.has_epsilon()) write_matrix(os, "epsilon", a.epsilon());
          if (a.has_dollar()) write_matrix(os, kDollarLabel, a.dollar());
        } else {
          write_header(os, {"ga", a.regime(), a.precision(), &a.alphabet()}, provenance);
          os << "states: " << a.states() << "\n";
          os << "v0:";
          for (int i = 0; i < a.states(); ++i)
            os << ' ' << scalar_to_file_string(a.v0()[i]);
          os << "\n";
          os << "weights:";
          for (const auto& w : a.weights()) os << ' ' << scalar_to_file_string(w);
          os << "\n";
          write_matrix(os, kCentLabel, a.cent());
          for (char c : a.alphabet().symbols) write_matrix(os, std::string(1, c), a.op(c));
          write_matrix(os, kDollarLabel, a.dollar());
        }
      },
      m);
}

void write_machine_file(const std::filesystem::path& path, const Machine& m,
                        std::string_view provenance) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
  write_machine(os, m, provenance);
}

// ---------------------------------------------------------------------------
// Reading machines.
// ---------------------------------------------------------------------------

namespace {

struct Lines {
  std::vector<std::pair<int, std::string>> content;  // (line number, text)
  size_t pos = 0;

  bool done() const { return pos >= content.size(); }
  const std::pair<int, std::string>& peek() const { return content[pos]; }
  std::pair<int, std::string> next() { return content[pos++]; }
};

Lines significant_lines(std::istream& is) {
  Lines out;
  std::string line;
  int number = 0;
  while (std::getline(is, line)) {
    ++number;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    size_t last = line.find_last_not_of(" \t\r");
    std::string trimmed = line.substr(first, last - first + 1);
    if (trimmed[0] == '#') continue;
    out.content.emplace_back(number, std::move(trimmed));
  }
  return out;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream iss(s);
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

// "key: value" lines; returns value or throws.
std::string expect_kv(Lines& lines, const std::string& key) {
  if (lines.done()) throw parse_error("unexpected end of file, expected '" + key + ":'");
  auto [num, text] = lines.next();
  std::string prefix = key + ":";
  if (text.rfind(prefix, 0) != 0)
    throw parse_error(num, "expected '" + key + ":', got '" + text + "'");
  std::string value = text.substr(prefix.size());
  size_t first = value.find_first_not_of(" \t");
  return first == std::string::npos ? "" : value.substr(first);
}

long parse_long(const std::string& s, int line, const char* what) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw parse_error(line, std::string("malformed ") + what + ": '" + s + "'");
  return v;
}

SqMat read_matrix(Lines& lines, int dim, Regime regime, long precision,
                  const std::string& label) {
  SqMat m(dim, regime, regime == Regime::real ? precision : BigFloat::default_precision);
  for (int col = 0; col < dim; ++col) {
    if (lines.done())
      throw parse_error("unexpected end of file inside operator '" + label + "'");
    auto [num, text] = lines.next();
    std::vector<std::string> toks = split_ws(text);
    if (static_cast<int>(toks.size()) != dim)
      throw parse_error(num, "operator '" + label + "' column " + std::to_string(col + 1) +
                                 " has " + std::to_string(toks.size()) + " entries, expected " +
                                 std::to_string(dim));
    for (int row = 0; row < dim; ++row) {
      try {
        m.at(row, col) = scalar_from_file_string(toks[static_cast<size_t>(row)], regime, precision);
      } catch (const std::invalid_argument& e) {
        throw parse_error(num, e.what());
      }
    }
  }
  return m;
}

}  // namespace

Machine read_machine(std::istream& is) {
  Lines lines = significant_lines(is);
  if (lines.done()) throw parse_error("empty automaton file");
  {
    auto [num, text] = lines.next();
    if (text != kMagic)
      throw parse_error(num, "not an automaton file (missing '" + std::string(kMagic) + "')");
  }

  std::string kind = expect_kv(lines, "kind");
  int regime_line = lines.done() ? 0 : lines.peek().first;
  Regime regime;
  try {
    regime = regime_from_string(expect_kv(lines, "regime"));
  } catch (const std::invalid_argument& e) {
    throw parse_error(regime_line, e.what());
  }
  long precision = BigFloat::default_precision;
  if (regime == Regime::real) {
    int line = lines.done() ? 0 : lines.peek().first;
    precision = parse_long(expect_kv(lines, "precision"), line, "precision");
  }

  int alpha_line = lines.done() ? 0 : lines.peek().first;
  std::string alphabet_str = expect_kv(lines, "alphabet");
  int states_line = lines.done() ? 0 : lines.peek().first;
  int states = static_cast<int>(parse_long(expect_kv(lines, "states"), states_line, "state count"));
  if (states <= 0) throw parse_error(states_line, "state count must be positive");

  EndMarkedAlphabet alphabet;
  try {
    alphabet = EndMarkedAlphabet(alphabet_str);
  } catch (const std::invalid_argument& e) {
    throw parse_error(alpha_line, e.what());
  }

  int initial = 0;
  std::set<int> accept;
  ColVec ga_v0;
  std::vector<Scalar> ga_weights;

  auto parse_index = [&](const std::string& tok, int line) {
    long v = parse_long(tok, line, "state index");
    if (v < 1 || v > states)
      throw parse_error(line, "state index " + tok + " out of range 1.." + std::to_string(states));
    return static_cast<int>(v - 1);
  };

  if (kind == "ga") {
    int line = lines.done() ? 0 : lines.peek().first;
    std::vector<std::string> toks = split_ws(expect_kv(lines, "v0"));
    if (static_cast<int>(toks.size()) != states)
      throw parse_error(line, "v0 has " + std::to_string(toks.size()) + " entries, expected " +
                                  std::to_string(states));
    std::vector<Scalar> entries;
    for (const auto& t : toks) {
      try {
        entries.push_back(scalar_from_file_string(t, regime, precision));
      } catch (const std::invalid_argument& e) {
        throw parse_error(line, e.what());
      }
    }
    ga_v0 = ColVec(std::move(entries));

    line = lines.done() ? 0 : lines.peek().first;
    toks = split_ws(expect_kv(lines, "weights"));
    if (static_cast<int>(toks.size()) != states)
      throw parse_error(line, "weights has " + std::to_string(toks.size()) +
                                  " entries, expected " + std::to_string(states));
    for (const auto& t : toks) {
      try {
        ga_weights.push_back(scalar_from_file_string(t, regime, precision));
      } catch (const std::invalid_argument& e) {
        throw parse_error(line, e.what());
      }
    }
  } else {
    int line = lines.done() ? 0 : lines.peek().first;
    initial = parse_index(expect_kv(lines, "initial"), line);
    line = lines.done() ? 0 : lines.peek().first;
    std::vector<std::string> toks = split_ws(expect_kv(lines, "accept"));
    for (const auto& t : toks) accept.insert(parse_index(t, line));
  }

  // Operator sections, in any order.
  std::map<std::string, SqMat> mats;
  while (!lines.done()) {
    auto [num, text] = lines.next();
    if (text.rfind("op ", 0) != 0)
      throw parse_error(num, "expected an 'op <label>' section, got '" + text + "'");
    std::string label = text.substr(3);
    if (mats.count(label)) throw parse_error(num, "duplicate operator '" + label + "'");
    if (label != kCentLabel && label != kDollarLabel && label != "epsilon" &&
        !(label.size() == 1 && alphabet.contains(label[0])))
      throw parse_error(num, "operator label '" + label + "' is not in the alphabet");
    mats.emplace(label, read_matrix(lines, states, regime, precision, label));
  }

  auto take = [&](const std::string& label) -> SqMat {
    auto it = mats.find(label);
    if (it == mats.end())
      throw parse_error("missing operator '" + label + "'");
    SqMat m = std::move(it->second);
    mats.erase(it);
    return m;
  };
  auto take_optional = [&](const std::string& label) -> std::optional<SqMat> {
    auto it = mats.find(label);
    if (it == mats.end()) return std::nullopt;
    SqMat m = std::move(it->second);
    mats.erase(it);
    return m;
  };

  try {
    SqMat cent = take(kCentLabel);
    std::map<char, SqMat> per_symbol;
    for (char c : alphabet.symbols) per_symbol.emplace(c, take(std::string(1, c)));

    if (kind == "nfa") {
      std::optional<SqMat> eps = take_optional("epsilon");
      std::optional<SqMat> dollar = take_optional(kDollarLabel);
      if (!mats.empty()) throw parse_error("unused operator '" + mats.begin()->first + "'");
      return Nfa(alphabet, std::move(cent), std::move(per_symbol), std::move(dollar),
                 std::move(eps), initial, accept);
    }

    SqMat dollar = take(kDollarLabel);
    if (!mats.empty()) throw parse_error("unused operator '" + mats.begin()->first + "'");
    if (kind == "afa")
      return Afa(alphabet, std::move(cent), std::move(per_symbol), std::move(dollar),
                 initial, accept);
    if (kind == "pfa")
      return Pfa(alphabet, std::move(cent), std::move(per_symbol), std::move(dollar),
                 initial, accept);
    if (kind == "qfa")
      return Qfa(alphabet, std::move(cent), std::move(per_symbol), std::move(dollar),
                 initial, accept);
    if (kind == "ga")
      return Ga(alphabet, std::move(cent), std::move(per_symbol), std::move(dollar),
                std::move(ga_v0), std::move(ga_weights));
    throw parse_error("unknown machine kind: '" + kind + "'");
  } catch (const parse_error&) {
    throw;
  } catch (const std::exception& e) {
    // Model invariant violations (bad column sums, non-orthogonal operators,
    // index errors) surface as structured parse errors.
    throw parse_error(std::string("invalid ") + kind + ": " + e.what());
  }
}

Machine read_machine_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path.string());
  return read_machine(is);
}

// ---------------------------------------------------------------------------
// Reports.
// ---------------------------------------------------------------------------

void write_report_csv(std::ostream& os, const SweepReport& report) {
  bool exact = report.regime == Regime::exact;
  os << (exact ? "string,prob_num,prob_den,oracle,paths" : "string,prob,oracle,paths") << "\n";
  for (const SweepRow& row : report.rows) {
    os << row.input << ',';
    if (exact)
      os << row.prob.rat().numerator_string() << ',' << row.prob.rat().denominator_string();
    else
      os << row.prob.real().to_decimal(kReportDigits);
    os << ',' << to_string(row.verdict) << ',';
    if (row.paths) os << *row.paths;
    os << "\n";
  }
}

void write_report_json(std::ostream& os, const SweepReport& report) {
  nlohmann::json j;
  j["schema"] = "afatk.sweep-report/1";
  j["machine"] = report.machine_desc;
  j["oracle"] = report.oracle_name;
  j["regime"] = to_string(report.regime);
  if (report.regime == Regime::real)
    j["precision"] = report.precision;
  else
    j["precision"] = nullptr;
  j["alphabet"] = report.alphabet;
  j["enumeration"] = report.enumeration;

  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& row : report.rows) {
    nlohmann::json r;
    r["string"] = row.input;
    r["prob"] = prob_string(row.prob);
    r["oracle"] = to_string(row.verdict);
    if (row.paths)
      r["paths"] = *row.paths;
    else
      r["paths"] = nullptr;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);

  nlohmann::json s;
  s["rows"] = report.summary.rows;
  s["members"] = report.summary.members;
  s["nonmembers"] = report.summary.nonmembers;
  s["outside"] = report.summary.outside;
  s["min_member_prob"] = report.summary.min_member_prob
                             ? nlohmann::json(prob_string(*report.summary.min_member_prob))
                             : nlohmann::json(nullptr);
  s["max_nonmember_prob"] = report.summary.max_nonmember_prob
                                ? nlohmann::json(prob_string(*report.summary.max_nonmember_prob))
                                : nlohmann::json(nullptr);
  j["summary"] = std::move(s);

  if (report.checked_mode) {
    nlohmann::json c;
    c["mode"] = *report.checked_mode;
    c["pass"] = report.pass.value_or(false);
    c["witness"] = report.witness ? nlohmann::json(*report.witness) : nlohmann::json(nullptr);
    j["check"] = std::move(c);
  }

  os << j.dump(2) << "\n";
}

void write_report_file(const std::filesystem::path& path, const SweepReport& report,
                       std::string_view format) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
  if (format == "csv")
    write_report_csv(os, report);
  else if (format == "json")
    write_report_json(os, report);
  else
    throw std::invalid_argument("unknown report format: '" + std::string(format) + "'");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

ReportRows read_report_rows_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path.string());

  ReportRows out;
  char first = 0;
  is.get(first);
  is.unget();

  if (first == '{') {
    nlohmann::json j;
    try {
      is >> j;
    } catch (const nlohmann::json::parse_error& e) {
      throw parse_error(std::string("malformed JSON report: ") + e.what());
    }
    if (!j.contains("rows") || !j["rows"].is_array())
      throw parse_error("JSON report has no rows array");
    out.decimal_probs = j.value("regime", "exact") != std::string("exact");
    for (const auto& r : j["rows"])
      out.rows.emplace_back(r.at("string").get<std::string>(), r.at("prob").get<std::string>());
    return out;
  }

  std::string line;
  if (!std::getline(is, line)) throw parse_error("empty report file");
  std::vector<std::string> header = split_csv_line(line);
  bool exact;
  if (header.size() == 5 && header[1] == "prob_num" && header[2] == "prob_den") {
    exact = true;
  } else if (header.size() == 4 && header[1] == "prob") {
    exact = false;
  } else {
    throw parse_error("unrecognized CSV report header: '" + line + "'");
  }
  out.decimal_probs = !exact;

  int number = 1;
  while (std::getline(is, line)) {
    ++number;
    if (line.empty()) continue;
    std::vector<std::string> cols = split_csv_line(line);
    if (cols.size() != header.size())
      throw parse_error(number, "row has " + std::to_string(cols.size()) +
                                    " columns, expected " + std::to_string(header.size()));
    std::string prob = exact ? Rational(Rational::from_string(cols[1]) /
                                        Rational::from_string(cols[2]))
                                   .to_string()
                             : cols[1];
    out.rows.emplace_back(cols[0], std::move(prob));
  }
  return out;
}

}  // namespace afatk
