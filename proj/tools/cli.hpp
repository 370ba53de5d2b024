#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "riesz/pwl.hpp"
#include "riesz/rational.hpp"
#include "riesz/reals.hpp"

namespace riesz::cli {

enum class Command { Integrate, Measure, Roundtrip, Selftest };
enum class OutputFormat { Text, KeyValue };

struct JobSpec {
  Command command = Command::Selftest;
  std::optional<PwlFunction> function;  // --f
  std::optional<PwlFunction> open;      // --a, generator of D(a)
  std::string valuation;                // --mu
  std::string integral;                 // --i
  Rational eps{1, 100};
  Budget budget = 1000;
  OutputFormat format = OutputFormat::Text;
};

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kBudget = 3 };

/// Parses and runs one command line (without the program name). Never
/// throws; every error becomes a message on `err` and an exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_integrate(const JobSpec& job, std::ostream& out, std::ostream& err);
int cmd_measure(const JobSpec& job, std::ostream& out, std::ostream& err);
int cmd_roundtrip(const JobSpec& job, std::ostream& out, std::ostream& err);
int cmd_selftest(const JobSpec& job, std::ostream& out, std::ostream& err);

/// Functions and opens used by roundtrip when --f / --a is absent.
std::vector<PwlFunction> default_function_corpus();
std::vector<PwlFunction> default_open_corpus();

}  // namespace riesz::cli
