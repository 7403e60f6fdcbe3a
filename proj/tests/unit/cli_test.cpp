#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "generators.hpp"
#include "json.hpp"
#include "ltlsmc/cli.hpp"

using namespace ltlsmc;
using namespace ltlsmc::cli;

namespace {

const std::string kFixtures = LTLSMC_FIXTURE_DIR;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome invoke(const RunConfig& c) {
  std::ostringstream out, err;
  Outcome o;
  o.code = run(c, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string temp_file(const std::string& name, const std::string& contents) {
  const auto dir = std::filesystem::temp_directory_path() / "ltlsmc_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path, std::ios::binary) << contents;
  return path.string();
}

RunConfig config(Command cmd, const std::string& properties) {
  RunConfig c;
  c.command = cmd;
  c.properties = properties;
  return c;
}

bool contains(const std::string& s, std::string_view part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("parse command") {
  Outcome o = invoke(config(Command::Parse, kFixtures + "/mutex.ltl"));
  CHECK(o.code == kExitPass);
  CHECK(contains(o.out, "¬(true U (crit1 ∧ crit2))"));
  CHECK(contains(o.out, "[0] Globally"));

  RunConfig json = config(Command::Parse, kFixtures + "/mutex.ltl");
  json.format = OutputFormat::Json;
  o = invoke(json);
  CHECK(o.code == kExitPass);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j[0]["basis_symbolic"] == "¬(true U (crit1 ∧ crit2))");
  CHECK(j[0]["line"] == 2);

  o = invoke(config(Command::Parse, temp_file("bad.ltl", "p\nU p\n")));
  CHECK(o.code == kExitInputError);
  CHECK(contains(o.err, ":2:1:"));

  o = invoke(config(Command::Parse, temp_file("empty.ltl", "")));
  CHECK(o.code == kExitPass);
  CHECK(contains(o.out, "0 formula(s)"));

  o = invoke(config(Command::Parse, "/nonexistent/props.ltl"));
  CHECK(o.code == kExitInputError);
}

TEST_CASE("classify command") {
  RunConfig c = config(Command::Classify, temp_file("classes.ltl", "G (!(crit1 && crit2))\nF p\nG F p\n"));
  Outcome o = invoke(c);
  CHECK(o.code == kExitPass);
  CHECK(contains(o.out, "TL_G\tsupported\tG (!(crit1 && crit2))"));
  CHECK(contains(o.out, "TL_F\tsupported\tF p"));
  CHECK(contains(o.out, "TL_GF\tnot supported for monitoring\tG F p"));
  c.format = OutputFormat::Json;
  const auto j = nlohmann::json::parse(invoke(c).out);
  CHECK(j[2]["class"] == "TL_GF");
  CHECK(j[2]["monitorable"] == false);
  CHECK(j[1]["monitorable"] == true);
}

TEST_CASE("monitor command") {
  RunConfig c = config(Command::Monitor, kFixtures + "/mutex.ltl");
  c.trace = kFixtures + "/mutex_trace.ndjson";
  c.format = OutputFormat::Json;
  Outcome o = invoke(c);
  CHECK(o.code == kExitPropertyFailure);
  const auto rec = nlohmann::json::parse(o.out);
  CHECK(rec["property"] == "G (!(crit1 && crit2))");
  CHECK(rec["class"] == "TL_G");
  CHECK(rec["verdict"] == "false");
  CHECK(rec["resolved_at_state"] == 10);

  c.trace = temp_file("empty.ndjson", "");
  o = invoke(c);
  CHECK(o.code == kExitPass);
  CHECK(nlohmann::json::parse(o.out)["verdict"] == "presumably_true");
  CHECK(nlohmann::json::parse(o.out)["resolved_at_state"].is_null());

  c.trace = temp_file("gap.ndjson", "{\"state\":0,\"aps\":{\"crit1\":true,\"crit2\":false}}\n"
                                    "{\"state\":2,\"aps\":{\"crit1\":true,\"crit2\":false}}\n");
  CHECK(invoke(c).code == kExitInputError);

  c.trace = temp_file("missing.ndjson", "{\"state\":0,\"aps\":{\"crit1\":true}}\n");
  CHECK(invoke(c).code == kExitInputError);

  c.trace = temp_file("garbage.ndjson", "{\"state\":0,\n");
  CHECK(invoke(c).code == kExitInputError);

  // Keys are matched as atoms, so spacing does not matter.
  RunConfig cmp = config(Command::Monitor, temp_file("cmp.ltl", "F (x>1)\n"));
  cmp.trace = temp_file("cmp.ndjson", "{\"state\":0,\"aps\":{\"x>1\":false}}\n{\"state\":1,\"aps\":{\"x > 1\":true}}\n");
  o = invoke(cmp);
  CHECK(o.code == kExitPass);
  CHECK(contains(o.out, "true\tTL_F\tF (x>1)"));

  RunConfig unsupported = config(Command::Monitor, temp_file("gf.ltl", "G F p\n"));
  unsupported.trace = temp_file("p.ndjson", "{\"state\":0,\"aps\":{\"p\":true}}\n");
  CHECK(invoke(unsupported).code == kExitInputError);
}

TEST_CASE("check command") {
  RunConfig c = config(Command::Check, kFixtures + "/mutex.ltl");
  c.program = kFixtures + "/mutex.json";
  c.depth = 10;
  Outcome o = invoke(c);
  CHECK(o.code == kExitPropertyFailure);
  CHECK(contains(o.out, "overall: FAIL"));

  RunConfig flags = config(Command::Check, temp_file("notp.ltl", "G !p\n"));
  flags.program = kFixtures + "/flags.json";
  o = invoke(flags);
  CHECK(o.code == kExitPass);
  CHECK(contains(o.out, "PRESUMABLY-PASS"));

  RunConfig gf = config(Command::Check, temp_file("gfp.ltl", "G F p\n"));
  gf.program = kFixtures + "/flags.json";
  o = invoke(gf);
  CHECK(o.code == kExitInputError);
  CHECK(contains(o.err, "not supported for monitoring"));

  RunConfig zero = c;
  zero.depth = 0;
  CHECK(invoke(zero).code == kExitInputError);

  RunConfig badprog = c;
  badprog.program = temp_file("bad.json", "{\"vars\":{},\"threads\":[]}");
  CHECK(invoke(badprog).code == kExitInputError);

  RunConfig undeclared = config(Command::Check, temp_file("q.ltl", "G !q\n"));
  undeclared.program = kFixtures + "/flags.json";
  CHECK(invoke(undeclared).code == kExitInputError);
}

TEST_CASE("check with a schedule equals replay") {
  RunConfig c = config(Command::Check, kFixtures + "/mutex.ltl");
  c.program = kFixtures + "/mutex.json";
  c.schedule = "T2,T2,T1,T1,T1,T1,T1,T2,T2,T2";
  c.verbose = true;
  Outcome o = invoke(c);
  CHECK(o.code == kExitPropertyFailure);
  CHECK(contains(o.out, "s9 T2: crit1=true crit2=false | (false, false)"));
  CHECK(contains(o.out, "s10 T2: crit1=true crit2=true | (false, true)"));

  c.format = OutputFormat::Json;
  c.verbose = false;
  const auto j = nlohmann::json::parse(invoke(c).out);
  CHECK(j["iterations"].size() == 1);
  CHECK(j["iterations"][0]["verdicts"][0]["verdict"] == "false");
  CHECK(j["iterations"][0]["verdicts"][0]["resolved_at_state"] == 10);

  c.schedule = "T2,T2,T1,T2";
  CHECK(invoke(c).code == kExitInputError);
}

TEST_CASE("exit codes follow the report in both formats") {
  testgen::Rng rng(51);
  const std::string props = temp_file("rand.ltl", "G !(p && q)\nF q\n");
  for (int i = 0; i < 10; ++i) {
    RunConfig c = config(Command::Check, props);
    c.program = temp_file("rand" + std::to_string(i) + ".json", testgen::random_program(rng));
    c.depth = 6;
    const Outcome human = invoke(c);
    c.format = OutputFormat::Json;
    const Outcome json = invoke(c);
    CHECK(human.code == json.code);
    const std::string status = nlohmann::json::parse(json.out)["status"];
    CHECK(json.code == (status == "FAIL" ? kExitPropertyFailure : kExitPass));
    c.jobs = 4;
    CHECK(invoke(c).out == json.out);
  }
}
