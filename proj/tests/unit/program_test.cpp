#include <string>

#include "doctest.h"
#include "ltlsmc/program.hpp"
#include "ltlsmc/smc.hpp"

using namespace ltlsmc;

namespace {

const std::string kFixtures = LTLSMC_FIXTURE_DIR;

Program mutex() { return load_program_file(kFixtures + "/mutex.json"); }

std::int64_t int_var(const Program& p, const ExecState& s, std::string_view name) {
  return std::get<std::int64_t>(s.vars[*p.var_index(name)]);
}

bool bool_var(const Program& p, const ExecState& s, std::string_view name) {
  return std::get<bool>(s.vars[*p.var_index(name)]);
}

std::string error_of(const std::string& doc) {
  try {
    load_program(doc);
  } catch (const ProgramError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, std::string_view part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("load_program: mutex fixture") {
  const Program p = mutex();
  CHECK(p.name == "mutex");
  CHECK(p.threads.size() == 2);
  CHECK(p.threads[0].locations.size() == 6);
  CHECK(p.threads[1].locations.size() == 6);
  CHECK(p.threads[0].locations[5].next == 1);
  CHECK(p.threads[0].locations[0].next == 2);
  REQUIRE(p.find_ap("crit1") != nullptr);
  CHECK(p.find_ap("nope") == nullptr);
  CHECK(p.vars.size() == 5);
}

TEST_CASE("load_program: validation errors") {
  CHECK(contains(error_of(R"({"vars": {}, "threads": []})"), "no threads"));
  CHECK(contains(error_of(R"({"vars": {"x": 0}, "aps": {"p": "z > 0"}, "threads": [[{}]]})"), "undeclared variable 'z'"));
  CHECK(contains(error_of(R"({"vars": {"x": 0}, "threads": [[]]})"), "empty thread"));
  CHECK(contains(error_of(R"({"vars": {"x": 0}, "aps": {"p": "x > 0", "p": "x < 0"}, "threads": [[{}]]})"),
                 "duplicate AP name"));
  CHECK(contains(error_of(R"({"vars": {"x": 0}, "threads": [[{"guard": "x +"}]]})"), "location 1"));
  CHECK(contains(error_of(R"({"vars": {"x": 0}, "threads": [[{"guard": "x + 1"}]]})"), "guard must be boolean"));
  CHECK(contains(error_of(R"({"vars": {"x": 0}, "threads": [[{"body": ["x := true"]}]]})"), "x"));
  CHECK(contains(error_of(R"({"vars": {"x": 0}, "threads": [[{"next": 3}]]})"), "does not exist"));
  CHECK(contains(error_of(R"({"vars": {"x": 0}, "threads": [[{"jump": 1}]]})"), "unknown key"));
  CHECK(contains(error_of(R"({"vars": {"x": 0}, "threads": [[{}]], "extra": 1})"), "unknown top-level key"));
  CHECK(contains(error_of(R"({"vars": {"x": 1.5}, "threads": [[{}]]})"), "integer or boolean"));
  CHECK(contains(error_of("{not json"), "malformed"));
  CHECK(error_of(R"({"vars": {"x": 0}, "threads": [[{"next": "end"}, {}]]})").empty());
}

TEST_CASE("expressions: typing and evaluation") {
  const std::vector<Variable> vars{{"x", std::int64_t{3}}, {"b", true}};
  const std::vector<Value> vals{std::int64_t{3}, true};
  CHECK(std::get<std::int64_t>(parse_expression("x + 2 - -1", vars).eval(vals)) == 6);
  CHECK(parse_expression("x > 2 && b", vars).eval_bool(vals));
  CHECK_FALSE(parse_expression("!(x == 3) || !b", vars).eval_bool(vals));
  CHECK(parse_expression("b == true", vars).eval_bool(vals));
  CHECK(parse_expression("(x + 1) - x == 1", vars).eval_bool(vals));
  CHECK_THROWS_AS(parse_expression("x * 2", vars), ProgramError);
}

TEST_CASE("expressions: static errors") {
  const std::vector<Variable> vars{{"x", std::int64_t{3}}, {"b", true}};
  CHECK_THROWS_AS(parse_expression("x && b", vars), ProgramError);
  CHECK_THROWS_AS(parse_expression("x == b", vars), ProgramError);
  CHECK_THROWS_AS(parse_expression("b < b", vars), ProgramError);
  CHECK_THROWS_AS(parse_expression("y", vars), ProgramError);
  CHECK_THROWS_AS(parse_expression("x +", vars), ProgramError);
  CHECK_THROWS_AS(parse_assignment("x = 1", vars), ProgramError);
  CHECK_THROWS_AS(parse_assignment("b := 1", vars), ProgramError);
  CHECK_NOTHROW(parse_assignment("b := x > 0", vars));
}

TEST_CASE("expressions: overflow is a run-time error") {
  const std::vector<Variable> vars{{"x", std::int64_t{0}}};
  const Expr e = parse_expression("x + 1", vars);
  const std::vector<Value> big{std::int64_t{9223372036854775807}};
  CHECK_THROWS_AS(e.eval(big), ExecutionError);
}

TEST_CASE("enabled_threads") {
  const Program p = load_program(R"({"vars": {"b2": true}, "threads": [[{}, {}], [{}, {}]]})");
  const ExecState s0 = initial_state(p);
  CHECK(enabled_threads(p, s0) == std::vector<ThreadId>{0, 1});

  const Program guarded = load_program(R"({"vars": {"b2": true}, "threads": [[{"guard": "b2 == false"}], [{}]]})");
  CHECK(enabled_threads(guarded, initial_state(guarded)) == std::vector<ThreadId>{1});

  ExecState s = s0;
  for (ThreadId t : {0, 0, 1, 1}) s = execute_location(p, s, t);
  CHECK(s.all_done());
  CHECK(enabled_threads(p, s).empty());
}

TEST_CASE("execute_location: mutex steps") {
  const Program p = mutex();
  const ExecState s0 = initial_state(p);
  CHECK(s0.pcs == std::vector<std::optional<std::size_t>>{1, 1});

  const ExecState s1 = execute_location(p, s0, 1);
  CHECK(s1.vars == s0.vars);
  CHECK(s1.pcs == std::vector<std::optional<std::size_t>>{1, 2});
  CHECK(s1.index == 1);
  CHECK(s1.schedule == std::vector<ThreadId>{1});

  const ExecState s2 = execute_location(p, s1, 1);
  const ExecState s3 = execute_location(p, s2, 0);
  CHECK(int_var(p, s2, "x1") == 1);
  CHECK(int_var(p, s3, "x1") == 2);
  CHECK(s3.pcs == std::vector<std::optional<std::size_t>>{2, 3});

  // T2 is now blocked at location 3 until crit1 holds.
  CHECK(enabled_threads(p, s3) == std::vector<ThreadId>{0});
  CHECK_THROWS_AS(execute_location(p, s3, 1), ExecutionError);
  CHECK_THROWS_AS(execute_location(p, s3, 5), ExecutionError);
}

TEST_CASE("mutex schedule reproduces every table row") {
  const Program p = mutex();
  const std::vector<ThreadId> schedule = parse_schedule("T2,T2,T1,T1,T1,T1,T1,T2,T2,T2");
  // Columns s0..s10.
  const std::size_t pc1[] = {1, 1, 1, 2, 3, 4, 5, 6, 6, 6, 6};
  const std::size_t pc2[] = {1, 2, 3, 3, 3, 3, 3, 3, 4, 5, 6};
  const std::int64_t x1[] = {1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2};
  const bool b1[] = {false, false, false, false, true, true, true, true, true, true, true};
  const bool b2[] = {false, false, false, false, false, false, false, false, true, true, true};
  const bool crit1[] = {false, false, false, false, false, false, false, true, true, true, true};
  const bool crit2[] = {false, false, false, false, false, false, false, false, false, false, true};
  ExecState s = initial_state(p);
  for (std::size_t k = 0; k <= schedule.size(); ++k) {
    if (k > 0) s = execute_location(p, s, schedule[k - 1]);
    INFO("s" << k);
    CHECK(s.pcs[0] == pc1[k]);
    CHECK(s.pcs[1] == pc2[k]);
    CHECK(int_var(p, s, "x1") == x1[k]);
    CHECK(bool_var(p, s, "b1") == b1[k]);
    CHECK(bool_var(p, s, "b2") == b2[k]);
    const APSnapshot snap = snapshot_aps(p, s);
    CHECK(snap.aps.at("crit1") == crit1[k]);
    CHECK(snap.aps.at("crit2") == crit2[k]);
  }
}

TEST_CASE("atom valuation over program states") {
  const Program p = mutex();
  const AtomValuation v(p, {Atom::identifier("crit1"), Atom::comparison("x1", CompareOp::Ge, std::int64_t{2}),
                            Atom::comparison("b1", CompareOp::Ne, std::string("b2"))});
  const ExecState s0 = initial_state(p);
  const APSnapshot a = v.evaluate(s0, 0);
  CHECK(a.state == 0);
  CHECK(a.aps.at("crit1") == false);
  CHECK(a.aps.at("x1 >= 2") == false);
  CHECK(a.aps.at("b1 != b2") == false);
  const APSnapshot b = v.evaluate(execute_location(p, s0, 0), 1);
  CHECK(b.aps.at("x1 >= 2") == true);

  CHECK_THROWS_AS(AtomValuation(p, {Atom::identifier("x1")}), ProgramError);
  CHECK_THROWS_AS(AtomValuation(p, {Atom::comparison("zz", CompareOp::Eq, std::int64_t{0})}), ProgramError);
  CHECK_THROWS_AS(AtomValuation(p, {Atom::comparison("b1", CompareOp::Lt, std::int64_t{0})}), ProgramError);
}

TEST_CASE("schedules") {
  CHECK(parse_schedule("T2, T2,T1") == std::vector<ThreadId>{1, 1, 0});
  CHECK(parse_schedule("").empty());
  CHECK(format_schedule({1, 1, 0}) == "T2,T2,T1");
  CHECK(thread_name(0) == "T1");
  CHECK_THROWS_AS(parse_schedule("T0"), ProgramError);
  CHECK_THROWS_AS(parse_schedule("X1"), ProgramError);
  CHECK_THROWS_AS(parse_schedule("T1,,T2"), ProgramError);
}
