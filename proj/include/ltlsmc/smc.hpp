#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ltlsmc/formula.hpp"
#include "ltlsmc/monitor.hpp"
#include "ltlsmc/program.hpp"

namespace ltlsmc {

/// One concrete program state. Program counters are 1-based location
/// numbers; nullopt marks a finished thread.
struct ExecState {
  std::vector<Value> vars;
  std::vector<std::optional<std::size_t>> pcs;
  std::vector<ThreadId> schedule;
  std::size_t index = 0;  // == schedule.size()

  bool all_done() const;
  bool operator==(const ExecState&) const = default;
};

ExecState initial_state(const Program& p);

/// Threads that are not done and whose current guard holds, ascending.
std::vector<ThreadId> enabled_threads(const Program& p, const ExecState& s);

/// Runs the current location of `t` atomically. Throws ExecutionError if `t`
/// is not enabled or the body fails at run time.
ExecState execute_location(const Program& p, const ExecState& s, ThreadId t);

/// Valuation of every declared AP of `p` in `s`.
APSnapshot snapshot_aps(const Program& p, const ExecState& s);

/// Evaluates property atoms (AP names or variable comparisons) on program
/// states.
class AtomValuation {
 public:
  AtomValuation(const Program& p, const std::vector<Atom>& atoms);

  /// Snapshot keyed by canonical atom text, stamped with `state`.
  APSnapshot evaluate(const ExecState& s, std::size_t state) const;

 private:
  std::vector<std::pair<std::string, Expr>> atoms_;
};

/// Distinct atoms of all properties, by canonical text.
std::vector<Atom> collect_atoms(const Master& m);

enum class Termination { AllThreadsDone, Deadlock, DepthBound, ScheduleEnd };

std::string_view to_string(Termination t);

struct IterationResult {
  std::vector<ThreadId> schedule;
  std::vector<Verdict> verdicts;
  std::vector<std::optional<std::size_t>> resolved_at;  // state index, per property
  Termination termination = Termination::AllThreadsDone;

  bool operator==(const IterationResult&) const = default;
};

/// Per-state record of a replay, mirroring the rows of a verification table.
struct StateLog {
  std::size_t state = 0;  // execution state index, 1-based
  ThreadId thread = 0;
  ExecState exec;
  APSnapshot snapshot;
  std::vector<ResultMessage> roots;                  // per property
  std::vector<std::vector<ResultMessage>> frontier;  // per property, per subformula
};

struct ReplayResult {
  IterationResult result;
  std::vector<StateLog> states;
};

/// Runs `schedule` from the initial state, stepping every monitor of `m`
/// after each state. `m` is reset first.
ReplayResult replay(const Program& p, const std::vector<ThreadId>& schedule, Master& m);

struct PropertyInfo {
  std::string text;
  TemporalClass cls = TemporalClass::TL_G;
};

enum class ProgramStatus { Pass, PresumablyPass, Fail };

std::string_view to_string(ProgramStatus s);

struct ProgramVerdict {
  ProgramStatus status = ProgramStatus::Pass;
  std::map<Verdict, std::size_t> counts;
  /// Index of the first iteration whose verdict is False0 or PresumablyFalse.
  std::optional<std::size_t> first_failure;
};

/// Combines the verdicts of property `property` over all iterations.
ProgramVerdict aggregate(const std::vector<IterationResult>& results, std::size_t property);

struct ProgramReport {
  std::string program;
  std::size_t depth_bound = 0;
  std::vector<PropertyInfo> properties;
  std::vector<IterationResult> iterations;
  std::vector<ProgramVerdict> verdicts;  // per property

  /// FAIL if any property fails, else PRESUMABLY-PASS if any is presumable.
  ProgramStatus overall() const;
};

struct ExploreOptions {
  std::size_t depth_bound = 12;
  std::size_t jobs = 1;
  NetworkOptions network;
};

/// Exhaustive stateless exploration: every maximal schedule (up to the depth
/// bound) is one iteration, re-executed from the initial state. Iterations
/// are reported in schedule-lexicographic order whatever `jobs` is.
ProgramReport explore(const Program& p, const std::vector<std::string>& properties, const ExploreOptions& opts);

/// Single-iteration report for a fixed schedule.
ProgramReport replay_report(const Program& p, const std::vector<std::string>& properties,
                            const std::vector<ThreadId>& schedule, std::size_t depth_bound);

std::string report_to_json(const ProgramReport& r);
std::string report_to_human(const ProgramReport& r, bool verbose);

}  // namespace ltlsmc
