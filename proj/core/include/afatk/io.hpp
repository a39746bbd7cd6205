// io.hpp -- the human-readable automaton file format and the CSV/JSON sweep
// report serializers.
//
// Automaton files are structured text. Matrices are listed column by column
// (one line per column), so an affine operator reads as a list of affine
// states. Rationals appear as "p/q" (or "p"), reals as decimal strings with
// an explicit "@<precision>" annotation. All emitted files end in a newline.

#pragma once

#include <filesystem>
#include <iosfwd>

#include "afatk/verify.hpp"

namespace afatk {

class parse_error : public std::runtime_error {
 public:
  parse_error(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  explicit parse_error(const std::string& msg) : std::runtime_error(msg), line_(0) {}
  int line() const { return line_; }

 private:
  int line_;
};

std::string scalar_to_file_string(const Scalar& s);
Scalar scalar_from_file_string(std::string_view token, Regime regime, long precision);

void write_machine(std::ostream& os, const Machine& m, std::string_view provenance = "");
void write_machine_file(const std::filesystem::path& path, const Machine& m,
                        std::string_view provenance = "");

Machine read_machine(std::istream& is);
Machine read_machine_file(const std::filesystem::path& path);

void write_report_csv(std::ostream& os, const SweepReport& report);
void write_report_json(std::ostream& os, const SweepReport& report);
void write_report_file(const std::filesystem::path& path, const SweepReport& report,
                       std::string_view format);  // "csv" | "json"

/// Rows shared by both report formats, for diffing: (input, probability).
/// Probabilities come back as "p/q" strings or decimal strings.
struct ReportRows {
  bool decimal_probs = false;
  std::vector<std::pair<std::string, std::string>> rows;
};
ReportRows read_report_rows_file(const std::filesystem::path& path);

}  // namespace afatk
