#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ltlsmc/formula.hpp"
#include "ltlsmc/oracle.hpp"

namespace ltlsmc {

class WorkerPool;

/// The value exchanged between evaluators. `resolved == false` is the waiting
/// message; its `value` carries no information and is always false.
struct ResultMessage {
  bool value = false;
  bool resolved = false;

  static constexpr ResultMessage waiting() { return {false, false}; }
  static constexpr ResultMessage of(bool v) { return {v, true}; }

  bool is_true() const { return resolved && value; }
  bool is_false() const { return resolved && !value; }

  bool operator==(const ResultMessage&) const = default;
};

ThreeValue to_three_value(ResultMessage m);
ResultMessage to_message(ThreeValue v);

/// `(value, resolved)` as in `(false, true)`.
std::string to_string(ResultMessage m);

// Operator transition functions. All are total over the 3x3 message grid.

/// Until without a continuation: right true resolves true, left and right
/// both false resolves false, everything else waits.
ResultMessage until_transition(ResultMessage left, ResultMessage right);

/// One unrolling step `right || (left && continuation)`, where
/// `continuation` is the same until at the next state.
ResultMessage until_step(ResultMessage left, ResultMessage right, ResultMessage continuation);

/// Conjunction; a resolved false operand decides the result on its own.
ResultMessage and_transition(ResultMessage left, ResultMessage right);

ResultMessage not_transition(ResultMessage child);

enum class WorkerKind { UntilWorker, AndWorker, NotWorker, NextWorker, ConditionChecker, TrueLeaf };

std::string_view to_string(WorkerKind k);

/// Identifies one evaluator: a subformula pinned to the state at which its
/// window starts.
struct EvaluatorKey {
  SubformulaId subformula = 0;
  std::uint32_t offset = 0;

  bool operator==(const EvaluatorKey&) const = default;
};

struct EvaluatorKeyHash {
  std::size_t operator()(const EvaluatorKey& k) const {
    return (static_cast<std::size_t>(k.subformula) << 32) ^ k.offset;
  }
};

/// Per-state valuation of the atoms, keyed by canonical atom text.
struct APSnapshot {
  std::size_t state = 0;
  std::map<std::string, bool> aps;
};

class SnapshotError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Static structure of a network: one worker per operator node and one
/// condition checker per distinct atom.
struct NetworkShape {
  std::size_t property_checkers = 1;
  std::size_t until_workers = 0;
  std::size_t and_workers = 0;
  std::size_t not_workers = 0;
  std::size_t next_workers = 0;
  std::size_t true_leaves = 0;
  std::size_t condition_checkers = 0;

  std::size_t operator_workers() const { return until_workers + and_workers + not_workers + next_workers; }
  bool operator==(const NetworkShape&) const = default;
};

enum class Sharing {
  /// Evaluators are memoized by (structural subformula, offset).
  Memoized,
  /// Every demand creates a fresh evaluator.
  Isolated,
};

enum class ExecutorKind {
  /// Single FIFO mailbox drained in order.
  Sequential,
  /// Evaluators with pending mail run in parallel rounds; effects on the
  /// registry are applied between rounds.
  Concurrent,
};

struct NetworkOptions {
  Sharing sharing = Sharing::Memoized;
  ExecutorKind executor = ExecutorKind::Sequential;
  /// Threads for the concurrent executor (including the caller).
  std::size_t threads = 4;
  /// When set, the sequential executor delivers pending mail in a
  /// pseudo-random order derived from this seed.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Actor network evaluating one basis formula over a growing trace.
class MonitorNetwork {
 public:
  /// Builds the hierarchy for `basis`. Throws UnsupportedClassError for
  /// classes other than TL_G/TL_F and std::invalid_argument when `basis`
  /// contains derived operators.
  MonitorNetwork(Formula basis, TemporalClass cls, NetworkOptions options = {});
  ~MonitorNetwork();
  MonitorNetwork(MonitorNetwork&&) noexcept;
  MonitorNetwork& operator=(MonitorNetwork&&) noexcept;

  /// Feeds the valuation of the next state and runs the network to
  /// quiescence. Returns the root message.
  ResultMessage step(const APSnapshot& snap);

  /// Verdict for the trace seen so far. An unresolved root maps by class.
  Verdict finish() const;

  /// Back to the freshly built state.
  void reset();

  const Formula& formula() const { return formula_; }
  TemporalClass temporal_class() const { return cls_; }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const NetworkShape& shape() const { return shape_; }

  std::size_t state_count() const { return states_; }
  ResultMessage root_message() const;
  bool latched() const { return latched_.has_value(); }
  /// Number of states consumed when the root first resolved.
  std::optional<std::size_t> resolved_at() const { return resolved_at_; }

  /// For every subformula id, the message of its evaluator with the latest
  /// window; waiting when none has been instantiated yet.
  std::vector<ResultMessage> frontier_messages() const;

  std::size_t evaluator_count() const;

 private:
  struct Evaluator;
  struct Mail;
  struct Subscriber {
    std::uint32_t parent;
    std::uint8_t slot;
  };
  struct Reaction;

  void instantiate_root();
  std::uint32_t demand(EvaluatorKey key, std::optional<Subscriber> parent, std::vector<Mail>& out);
  std::uint32_t create(EvaluatorKey key, std::vector<Mail>& out);
  Reaction react(Evaluator& e, const Mail& m) const;
  void apply(std::uint32_t index, Reaction& r, std::vector<Mail>& out);
  void run_sequential(std::vector<Mail> mail);
  void run_concurrent(std::vector<Mail> mail);

  Formula formula_;
  TemporalClass cls_;
  NetworkOptions options_;
  std::vector<std::string> atoms_;
  std::vector<SubformulaId> canonical_;    // structural representative per node
  std::vector<std::uint32_t> atom_slot_;   // node -> index into atoms_
  NetworkShape shape_;

  std::vector<Evaluator> evaluators_;
  std::unordered_map<EvaluatorKey, std::uint32_t, EvaluatorKeyHash> registry_;
  std::vector<std::vector<std::uint32_t>> waiting_for_state_;
  std::vector<std::vector<bool>> history_;  // per atom, per state
  std::vector<std::optional<std::uint32_t>> frontier_;
  std::uint32_t root_ = 0;
  std::size_t states_ = 0;
  std::optional<ResultMessage> latched_;
  std::optional<std::size_t> resolved_at_;
  std::uint64_t shuffle_state_ = 0;
  std::unique_ptr<WorkerPool> pool_;
};

/// A parsed property together with its class, basis form and network.
class PropertyMonitor {
 public:
  /// Parses, classifies and rewrites `text`. Throws ParseError or
  /// UnsupportedClassError.
  explicit PropertyMonitor(std::string text, NetworkOptions options = {});
  PropertyMonitor(std::string text, const Formula& original, NetworkOptions options = {});

  const std::string& text() const { return text_; }
  const Formula& original() const { return original_; }
  const Formula& basis() const { return network_.formula(); }
  TemporalClass temporal_class() const { return network_.temporal_class(); }
  MonitorNetwork& network() { return network_; }
  const MonitorNetwork& network() const { return network_; }

 private:
  std::string text_;
  Formula original_;
  MonitorNetwork network_;
};

/// The master: owns one network per loaded property and fans each snapshot
/// out to all of them.
class Master {
 public:
  Master() = default;
  explicit Master(std::vector<PropertyMonitor> monitors);

  void add(PropertyMonitor m);
  std::size_t size() const { return monitors_.size(); }
  PropertyMonitor& operator[](std::size_t i) { return monitors_.at(i); }
  const PropertyMonitor& operator[](std::size_t i) const { return monitors_.at(i); }

  /// Union of the atoms of all properties, sorted.
  std::vector<std::string> atoms() const;

  std::vector<ResultMessage> step(const APSnapshot& snap);
  std::vector<Verdict> finish() const;
  void reset();

 private:
  std::vector<PropertyMonitor> monitors_;
};

/// JSON-facing verdict record, as written by the `monitor` command.
struct VerdictRecord {
  std::string property;
  TemporalClass cls = TemporalClass::TL_G;
  Verdict verdict = Verdict::PresumablyTrue;
  std::optional<std::size_t> resolved_at_state;
};

VerdictRecord verdict_record(const PropertyMonitor& m);

}  // namespace ltlsmc
