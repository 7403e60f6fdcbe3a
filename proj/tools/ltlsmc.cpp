#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "ltlsmc/cli.hpp"

int main(int argc, char** argv) {
  using namespace ltlsmc::cli;

  CLI::App app{"LTL checking over finite traces and stateless interleaving exploration"};
  app.require_subcommand(1);

  RunConfig config;
  const std::map<std::string, OutputFormat> formats{{"human", OutputFormat::Human}, {"json", OutputFormat::Json}};

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--properties", config.properties, "Property file, one formula per line")->required();
    sub->add_option("--format", config.format, "Output format: human or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };

  CLI::App* parse = app.add_subcommand("parse", "Print the AST and basis rewrite of each property");
  common(parse);

  CLI::App* classify = app.add_subcommand("classify", "Print the temporal class of each property");
  common(classify);

  CLI::App* monitor = app.add_subcommand("monitor", "Evaluate properties over a recorded trace");
  common(monitor);
  monitor->add_option("--trace", config.trace, "Newline-delimited JSON state records")->required();
  monitor->add_flag("--verbose", config.verbose, "Print the root messages after every state");

  CLI::App* check = app.add_subcommand("check", "Explore all interleavings of a program");
  common(check);
  check->add_option("--program", config.program, "Program document (JSON)")->required();
  check->add_option("--depth", config.depth, "Depth bound in states")->check(CLI::PositiveNumber);
  check->add_option("--schedule", config.schedule, "Replay one schedule, e.g. T2,T2,T1");
  check->add_option("--jobs", config.jobs, "Parallel exploration workers")->check(CLI::PositiveNumber);
  check->add_flag("--verbose", config.verbose, "List every iteration (and per-state messages with --schedule)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  if (parse->parsed()) config.command = Command::Parse;
  else if (classify->parsed()) config.command = Command::Classify;
  else if (monitor->parsed()) config.command = Command::Monitor;
  else config.command = Command::Check;

  return run(config, std::cout, std::cerr);
}
