#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

namespace ltlsmc::cli {

enum class Command { Parse, Classify, Monitor, Check };
enum class OutputFormat { Human, Json };

/// Exit codes shared by every command.
inline constexpr int kExitPass = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitInputError = 2;

struct RunConfig {
  Command command = Command::Parse;
  std::string properties;  // property file path
  std::string trace;       // monitor: newline-delimited JSON states
  std::string program;     // check: program document
  std::size_t depth = 12;
  std::optional<std::string> schedule;
  OutputFormat format = OutputFormat::Human;
  std::size_t jobs = 1;
  bool verbose = false;
};

int run_parse(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_classify(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_monitor(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_check(const RunConfig& config, std::ostream& out, std::ostream& err);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace ltlsmc::cli
