#include <algorithm>
#include <set>

#include "ltlsmc/smc.hpp"
#include "ltlsmc/worker_pool.hpp"

namespace ltlsmc {

bool ExecState::all_done() const {
  return std::all_of(pcs.begin(), pcs.end(), [](const auto& pc) { return !pc.has_value(); });
}

ExecState initial_state(const Program& p) {
  ExecState s;
  s.vars.reserve(p.vars.size());
  for (const auto& v : p.vars) s.vars.push_back(v.initial);
  s.pcs.assign(p.threads.size(), std::optional<std::size_t>(1));
  return s;
}

std::vector<ThreadId> enabled_threads(const Program& p, const ExecState& s) {
  std::vector<ThreadId> out;
  for (ThreadId t = 0; t < p.threads.size(); ++t) {
    if (!s.pcs[t]) continue;
    const Location& loc = p.threads[t].locations[*s.pcs[t] - 1];
    if (!loc.guard || loc.guard->eval_bool(s.vars)) out.push_back(t);
  }
  return out;
}

ExecState execute_location(const Program& p, const ExecState& s, ThreadId t) {
  if (t >= p.threads.size()) throw ExecutionError("no thread " + thread_name(t));
  if (!s.pcs[t]) throw ExecutionError(thread_name(t) + " has already finished");
  const Location& loc = p.threads[t].locations[*s.pcs[t] - 1];
  if (loc.guard && !loc.guard->eval_bool(s.vars)) {
    throw ExecutionError(thread_name(t) + " is blocked at location " + std::to_string(*s.pcs[t]));
  }
  ExecState next = s;
  for (const Assignment& a : loc.body) next.vars[a.var] = a.value.eval(next.vars);
  next.pcs[t] = loc.next;
  next.schedule.push_back(t);
  next.index = s.index + 1;
  return next;
}

APSnapshot snapshot_aps(const Program& p, const ExecState& s) {
  APSnapshot snap;
  snap.state = s.index;
  for (const auto& ap : p.aps) snap.aps[ap.name] = ap.predicate.eval_bool(s.vars);
  return snap;
}

AtomValuation::AtomValuation(const Program& p, const std::vector<Atom>& atoms) {
  for (const Atom& a : atoms) {
    if (a.kind == Atom::Kind::Identifier) {
      const AtomicProposition* ap = p.find_ap(a.lhs);
      if (!ap) throw ProgramError("property uses undeclared AP '" + a.lhs + "'");
      atoms_.emplace_back(a.text(), ap->predicate);
      continue;
    }
    const auto lhs = p.var_index(a.lhs);
    if (!lhs) throw ProgramError("property compares undeclared variable '" + a.lhs + "'");
    Expr left = Expr::variable(*lhs, type_of(p.vars[*lhs].initial));
    Expr right = Expr::constant(std::int64_t{0});
    if (const auto* name = std::get_if<std::string>(&a.rhs)) {
      const auto rhs = p.var_index(*name);
      if (!rhs) throw ProgramError("property compares undeclared variable '" + *name + "'");
      right = Expr::variable(*rhs, type_of(p.vars[*rhs].initial));
    } else {
      right = Expr::constant(std::get<std::int64_t>(a.rhs));
    }
    static constexpr Expr::Op kOps[] = {Expr::Op::Eq, Expr::Op::Ne, Expr::Op::Lt,
                                        Expr::Op::Le, Expr::Op::Gt, Expr::Op::Ge};
    try {
      atoms_.emplace_back(a.text(), Expr::binary(kOps[static_cast<int>(a.op)], std::move(left), std::move(right)));
    } catch (const ProgramError& e) {
      throw ProgramError("property atom '" + a.text() + "': " + e.what());
    }
  }
}

APSnapshot AtomValuation::evaluate(const ExecState& s, std::size_t state) const {
  APSnapshot snap;
  snap.state = state;
  for (const auto& [name, expr] : atoms_) snap.aps[name] = expr.eval_bool(s.vars);
  return snap;
}

std::vector<Atom> collect_atoms(const Master& m) {
  std::vector<Atom> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (const FormulaNode& n : m[i].original().nodes()) {
      if (n.kind == FormulaKind::Atom && seen.insert(n.atom->text()).second) out.push_back(*n.atom);
    }
  }
  return out;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::AllThreadsDone: return "all-threads-done";
    case Termination::Deadlock: return "deadlock";
    case Termination::DepthBound: return "depth-bound";
    case Termination::ScheduleEnd: return "schedule-end";
  }
  return "?";
}

std::string_view to_string(ProgramStatus s) {
  switch (s) {
    case ProgramStatus::Pass: return "PASS";
    case ProgramStatus::PresumablyPass: return "PRESUMABLY-PASS";
    case ProgramStatus::Fail: return "FAIL";
  }
  return "?";
}

namespace {

void finish_iteration(const Master& m, IterationResult& r) {
  r.verdicts = m.finish();
  r.resolved_at.clear();
  for (std::size_t i = 0; i < m.size(); ++i) r.resolved_at.push_back(m[i].network().resolved_at());
}

// Steps the monitors on state `s` (the word position is s.index - 1).
void observe(Master& m, const AtomValuation& atoms, const ExecState& s) {
  m.step(atoms.evaluate(s, s.index - 1));
}

}  // namespace

ReplayResult replay(const Program& p, const std::vector<ThreadId>& schedule, Master& m) {
  m.reset();
  const AtomValuation atoms(p, collect_atoms(m));
  ReplayResult out;
  ExecState s = initial_state(p);
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const ThreadId t = schedule[i];
    const auto enabled = enabled_threads(p, s);
    if (std::find(enabled.begin(), enabled.end(), t) == enabled.end()) {
      throw ExecutionError("infeasible schedule at step " + std::to_string(i + 1) + ": " + thread_name(t) +
                           " is not enabled");
    }
    s = execute_location(p, s, t);
    StateLog log;
    log.state = s.index;
    log.thread = t;
    log.exec = s;
    log.snapshot = atoms.evaluate(s, s.index - 1);
    log.roots = m.step(log.snapshot);
    for (std::size_t k = 0; k < m.size(); ++k) log.frontier.push_back(m[k].network().frontier_messages());
    out.states.push_back(std::move(log));
  }
  out.result.schedule = schedule;
  if (s.all_done()) {
    out.result.termination = Termination::AllThreadsDone;
  } else if (enabled_threads(p, s).empty()) {
    out.result.termination = Termination::Deadlock;
  } else {
    out.result.termination = Termination::ScheduleEnd;
  }
  finish_iteration(m, out.result);
  return out;
}

ProgramVerdict aggregate(const std::vector<IterationResult>& results, std::size_t property) {
  ProgramVerdict v;
  for (Verdict k : {Verdict::False0, Verdict::True1, Verdict::PresumablyTrue, Verdict::PresumablyFalse}) {
    v.counts[k] = 0;
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    const Verdict r = results[i].verdicts.at(property);
    ++v.counts[r];
    if ((r == Verdict::False0 || r == Verdict::PresumablyFalse) && !v.first_failure) v.first_failure = i;
  }
  if (v.first_failure) {
    v.status = ProgramStatus::Fail;
  } else if (v.counts[Verdict::PresumablyTrue] > 0) {
    v.status = ProgramStatus::PresumablyPass;
  } else {
    v.status = ProgramStatus::Pass;
  }
  return v;
}

ProgramStatus ProgramReport::overall() const {
  ProgramStatus s = ProgramStatus::Pass;
  for (const auto& v : verdicts) {
    if (v.status == ProgramStatus::Fail) return ProgramStatus::Fail;
    if (v.status == ProgramStatus::PresumablyPass) s = ProgramStatus::PresumablyPass;
  }
  return s;
}

namespace {

Master make_master(const std::vector<std::string>& properties, const NetworkOptions& options) {
  Master m;
  for (const auto& text : properties) m.add(PropertyMonitor(text, options));
  return m;
}

struct ChoicePoint {
  std::vector<ThreadId> enabled;
  std::size_t chosen = 0;
};

/// Depth-first stateless search below a fixed schedule prefix. Every
/// iteration re-executes from the initial state; only the choice stack
/// survives between iterations.
class SubtreeExplorer {
 public:
  SubtreeExplorer(const Program& p, std::size_t depth_bound) : p_(p), depth_bound_(depth_bound) {}

  /// Calls `leaf(schedule, state, termination)` for each maximal schedule
  /// extending `prefix`. With `stop_depth`, schedules are cut there and
  /// reported with termination nullopt.
  template <typename Observe, typename Leaf>
  void run(const std::vector<ThreadId>& prefix, std::optional<std::size_t> stop_depth, Observe&& on_state,
           Leaf&& leaf) {
    std::vector<ChoicePoint> stack;
    while (true) {
      ExecState s = initial_state(p_);
      on_state(nullptr);
      for (ThreadId t : prefix) {
        s = execute_location(p_, s, t);
        on_state(&s);
      }
      std::size_t level = 0;
      std::optional<Termination> why;
      while (true) {
        if (s.all_done()) { why = Termination::AllThreadsDone; break; }
        if (s.index >= depth_bound_) { why = Termination::DepthBound; break; }
        if (stop_depth && s.index >= *stop_depth) break;
        auto enabled = enabled_threads(p_, s);
        if (enabled.empty()) { why = Termination::Deadlock; break; }
        ThreadId t;
        if (level < stack.size()) {
          if (stack[level].enabled != enabled) {
            throw ExecutionError("non-deterministic re-execution after " + format_schedule(s.schedule));
          }
          t = stack[level].enabled[stack[level].chosen];
        } else {
          stack.push_back(ChoicePoint{std::move(enabled), 0});
          t = stack.back().enabled.front();
        }
        ++level;
        s = execute_location(p_, s, t);
        on_state(&s);
      }
      leaf(s, why);
      while (!stack.empty() && stack.back().chosen + 1 == stack.back().enabled.size()) stack.pop_back();
      if (stack.empty()) return;
      ++stack.back().chosen;
    }
  }

 private:
  const Program& p_;
  std::size_t depth_bound_;
};

std::vector<IterationResult> explore_below(const Program& p, const std::vector<std::string>& properties,
                                           const std::vector<ThreadId>& prefix, const ExploreOptions& opts) {
  Master m = make_master(properties, opts.network);
  const AtomValuation atoms(p, collect_atoms(m));
  std::vector<IterationResult> out;
  SubtreeExplorer(p, opts.depth_bound)
      .run(
          prefix, std::nullopt,
          [&](const ExecState* s) {
            if (s == nullptr) {
              m.reset();
            } else {
              observe(m, atoms, *s);
            }
          },
          [&](const ExecState& s, std::optional<Termination> why) {
            IterationResult r;
            r.schedule = s.schedule;
            r.termination = *why;
            finish_iteration(m, r);
            out.push_back(std::move(r));
          });
  return out;
}

}  // namespace

ProgramReport explore(const Program& p, const std::vector<std::string>& properties, const ExploreOptions& opts) {
  if (opts.depth_bound < 1) throw std::invalid_argument("depth bound must be at least 1");

  ProgramReport report;
  report.program = p.name;
  report.depth_bound = opts.depth_bound;
  {
    // Validates every property and its atoms before any work starts.
    Master m = make_master(properties, opts.network);
    AtomValuation check(p, collect_atoms(m));
    for (std::size_t i = 0; i < m.size(); ++i) report.properties.push_back({m[i].text(), m[i].temporal_class()});
  }

  const std::size_t jobs = std::max<std::size_t>(1, opts.jobs);
  if (jobs == 1) {
    report.iterations = explore_below(p, properties, {}, opts);
  } else {
    // Split the tree at the shallowest depth that yields enough subtrees to
    // keep the workers busy; the result order does not depend on the split.
    std::vector<std::vector<ThreadId>> prefixes{{}};
    for (std::size_t depth = 1; depth <= opts.depth_bound && prefixes.size() < 4 * jobs; ++depth) {
      std::vector<std::vector<ThreadId>> next;
      bool grew = false;
      SubtreeExplorer(p, opts.depth_bound)
          .run({}, depth, [](const ExecState*) {},
               [&](const ExecState& s, std::optional<Termination> why) {
                 next.push_back(s.schedule);
                 grew = grew || !why.has_value();
               });
      prefixes = std::move(next);
      if (!grew) break;
    }
    std::vector<std::vector<IterationResult>> parts(prefixes.size());
    WorkerPool pool(jobs);
    pool.parallel_for(prefixes.size(),
                      [&](std::size_t i) { parts[i] = explore_below(p, properties, prefixes[i], opts); });
    for (auto& part : parts) {
      for (auto& r : part) report.iterations.push_back(std::move(r));
    }
  }

  for (std::size_t i = 0; i < properties.size(); ++i) report.verdicts.push_back(aggregate(report.iterations, i));
  return report;
}

ProgramReport replay_report(const Program& p, const std::vector<std::string>& properties,
                            const std::vector<ThreadId>& schedule, std::size_t depth_bound) {
  Master m = make_master(properties, {});
  ProgramReport report;
  report.program = p.name;
  report.depth_bound = depth_bound;
  for (std::size_t i = 0; i < m.size(); ++i) report.properties.push_back({m[i].text(), m[i].temporal_class()});
  IterationResult r = replay(p, schedule, m).result;
  if (r.termination == Termination::ScheduleEnd && schedule.size() >= depth_bound) {
    r.termination = Termination::DepthBound;
  }
  report.iterations.push_back(std::move(r));
  for (std::size_t i = 0; i < properties.size(); ++i) report.verdicts.push_back(aggregate(report.iterations, i));
  return report;
}

}  // namespace ltlsmc
