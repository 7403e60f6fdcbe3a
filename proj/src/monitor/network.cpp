#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>

#include "ltlsmc/monitor.hpp"
#include "ltlsmc/worker_pool.hpp"

namespace ltlsmc {

struct MonitorNetwork::Evaluator {
  EvaluatorKey key;
  SubformulaId node = 0;  // node of formula_ whose children this evaluator demands
  WorkerKind kind = WorkerKind::TrueLeaf;
  // 0: left/only child, 1: right child, 2: the until's continuation.
  std::array<ResultMessage, 3> slots{};
  ResultMessage out;
  bool continuation_demanded = false;
  std::vector<Subscriber> parents;
};

struct MonitorNetwork::Mail {
  enum class Type : std::uint8_t { StateReady, ChildResult };

  std::uint32_t target = 0;
  Type type = Type::StateReady;
  std::uint8_t slot = 0;
  ResultMessage msg;
};

struct MonitorNetwork::Reaction {
  bool resolved_now = false;
  std::vector<std::pair<EvaluatorKey, std::uint8_t>> demands;
};

namespace {

WorkerKind worker_kind(FormulaKind k) {
  switch (k) {
    case FormulaKind::True: return WorkerKind::TrueLeaf;
    case FormulaKind::Atom: return WorkerKind::ConditionChecker;
    case FormulaKind::Not: return WorkerKind::NotWorker;
    case FormulaKind::And: return WorkerKind::AndWorker;
    case FormulaKind::Next: return WorkerKind::NextWorker;
    case FormulaKind::StrongUntil: return WorkerKind::UntilWorker;
    default: break;
  }
  throw std::invalid_argument("monitor network needs a basis formula, found " + std::string(to_string(k)));
}

// Structural representative of every node: the smallest id whose subtree is
// equal to it.
std::vector<SubformulaId> canonical_ids(const Formula& f) {
  std::vector<std::string> keys(f.size());
  for (std::size_t i = f.size(); i-- > 0;) {
    const FormulaNode& n = f.node(static_cast<SubformulaId>(i));
    std::string k(to_string(n.kind));
    if (n.atom) k += ":" + n.atom->text();
    k += '(';
    for (std::size_t c = 0; c < arity(n.kind); ++c) k += keys[n.children[c]] + ",";
    k += ')';
    keys[i] = std::move(k);
  }
  std::map<std::string, SubformulaId> first;
  std::vector<SubformulaId> out(f.size());
  for (SubformulaId i = 0; i < f.size(); ++i) out[i] = first.emplace(keys[i], i).first->second;
  return out;
}

}  // namespace

MonitorNetwork::MonitorNetwork(Formula basis, TemporalClass cls, NetworkOptions options)
    : formula_(std::move(basis)), cls_(cls), options_(options) {
  if (!is_monitorable(cls_)) throw UnsupportedClassError(cls_);

  atoms_ = atom_names(formula_);
  canonical_ = canonical_ids(formula_);
  atom_slot_.assign(formula_.size(), 0);
  std::set<SubformulaId> true_leaves;
  for (SubformulaId id = 0; id < formula_.size(); ++id) {
    const FormulaNode& n = formula_.node(id);
    switch (worker_kind(n.kind)) {
      case WorkerKind::UntilWorker: ++shape_.until_workers; break;
      case WorkerKind::AndWorker: ++shape_.and_workers; break;
      case WorkerKind::NotWorker: ++shape_.not_workers; break;
      case WorkerKind::NextWorker: ++shape_.next_workers; break;
      case WorkerKind::TrueLeaf: true_leaves.insert(canonical_[id]); break;
      case WorkerKind::ConditionChecker: {
        const auto it = std::find(atoms_.begin(), atoms_.end(), n.atom->text());
        atom_slot_[id] = static_cast<std::uint32_t>(it - atoms_.begin());
        break;
      }
    }
  }
  shape_.true_leaves = true_leaves.size();
  shape_.condition_checkers = atoms_.size();

  if (options_.executor == ExecutorKind::Concurrent && options_.threads > 1) {
    pool_ = std::make_unique<WorkerPool>(options_.threads);
  }
  reset();
}

MonitorNetwork::~MonitorNetwork() = default;
MonitorNetwork::MonitorNetwork(MonitorNetwork&&) noexcept = default;
MonitorNetwork& MonitorNetwork::operator=(MonitorNetwork&&) noexcept = default;

void MonitorNetwork::reset() {
  evaluators_.clear();
  registry_.clear();
  waiting_for_state_.clear();
  history_.assign(atoms_.size(), {});
  frontier_.assign(formula_.size(), std::nullopt);
  states_ = 0;
  latched_.reset();
  resolved_at_.reset();
  shuffle_state_ = options_.shuffle_seed.value_or(0);
  instantiate_root();
}

void MonitorNetwork::instantiate_root() {
  std::vector<Mail> mail;
  root_ = demand(EvaluatorKey{canonical_[0], 0}, std::nullopt, mail);
  // Nothing can be ready before the first state.
  if (!mail.empty()) run_sequential(std::move(mail));
}

std::uint32_t MonitorNetwork::demand(EvaluatorKey key, std::optional<Subscriber> parent, std::vector<Mail>& out) {
  if (options_.sharing == Sharing::Memoized) key.subformula = canonical_[key.subformula];
  std::uint32_t index;
  const auto found = options_.sharing == Sharing::Memoized ? registry_.find(key) : registry_.end();
  if (found != registry_.end()) {
    index = found->second;
  } else {
    index = create(key, out);
  }
  if (parent) {
    Evaluator& e = evaluators_[index];
    e.parents.push_back(*parent);
    if (e.out.resolved) out.push_back(Mail{parent->parent, Mail::Type::ChildResult, parent->slot, e.out});
  }
  return index;
}

std::uint32_t MonitorNetwork::create(EvaluatorKey key, std::vector<Mail>& out) {
  const auto index = static_cast<std::uint32_t>(evaluators_.size());
  const FormulaNode& n = formula_.node(key.subformula);
  {
    Evaluator e;
    e.key = key;
    e.node = key.subformula;
    e.kind = worker_kind(n.kind);
    evaluators_.push_back(std::move(e));
  }
  if (options_.sharing == Sharing::Memoized) registry_.emplace(key, index);
  auto& front = frontier_[key.subformula];
  if (!front || evaluators_[*front].key.offset <= key.offset) front = index;

  const auto wait_for = [&](std::size_t state) {
    if (state < states_) {
      out.push_back(Mail{index, Mail::Type::StateReady, 0, {}});
      return;
    }
    if (waiting_for_state_.size() <= state) waiting_for_state_.resize(state + 1);
    waiting_for_state_[state].push_back(index);
  };
  const auto at = [&](std::size_t child, std::uint32_t offset) {
    return EvaluatorKey{n.children[child], offset};
  };

  switch (evaluators_[index].kind) {
    case WorkerKind::ConditionChecker:
    case WorkerKind::TrueLeaf:
      wait_for(key.offset);
      break;
    case WorkerKind::NotWorker:
      demand(at(0, key.offset), Subscriber{index, 0}, out);
      break;
    case WorkerKind::NextWorker:
      demand(at(0, key.offset + 1), Subscriber{index, 0}, out);
      break;
    case WorkerKind::AndWorker:
      demand(at(0, key.offset), Subscriber{index, 0}, out);
      demand(at(1, key.offset), Subscriber{index, 1}, out);
      break;
    case WorkerKind::UntilWorker:
      demand(at(0, key.offset), Subscriber{index, 0}, out);
      demand(at(1, key.offset), Subscriber{index, 1}, out);
      // The continuation is considered once the next state exists.
      wait_for(static_cast<std::size_t>(key.offset) + 1);
      break;
  }
  return index;
}

MonitorNetwork::Reaction MonitorNetwork::react(Evaluator& e, const Mail& m) const {
  Reaction r;
  if (e.out.resolved) return r;

  if (m.type == Mail::Type::ChildResult && m.msg.resolved) e.slots[m.slot] = m.msg;

  ResultMessage next = ResultMessage::waiting();
  switch (e.kind) {
    case WorkerKind::ConditionChecker:
      if (m.type == Mail::Type::StateReady) {
        next = ResultMessage::of(history_[atom_slot_[e.node]][e.key.offset]);
      }
      break;
    case WorkerKind::TrueLeaf:
      if (m.type == Mail::Type::StateReady) next = ResultMessage::of(true);
      break;
    case WorkerKind::NotWorker:
      next = not_transition(e.slots[0]);
      break;
    case WorkerKind::NextWorker:
      next = e.slots[0];
      break;
    case WorkerKind::AndWorker:
      next = and_transition(e.slots[0], e.slots[1]);
      break;
    case WorkerKind::UntilWorker: {
      next = until_step(e.slots[0], e.slots[1], e.slots[2]);
      const bool next_state_exists = states_ > static_cast<std::size_t>(e.key.offset) + 1;
      // Keep the window open while neither short-circuit has fired: the value
      // may still be decided by the same until one state later.
      if (!next.resolved && !e.continuation_demanded && next_state_exists && !e.slots[0].is_false() &&
          !e.slots[1].is_true()) {
        e.continuation_demanded = true;
        r.demands.emplace_back(EvaluatorKey{e.node, e.key.offset + 1}, std::uint8_t{2});
      }
      break;
    }
  }
  if (next.resolved) {
    e.out = next;
    r.resolved_now = true;
  }
  return r;
}

void MonitorNetwork::apply(std::uint32_t index, Reaction& r, std::vector<Mail>& out) {
  for (const auto& [key, slot] : r.demands) demand(key, Subscriber{index, slot}, out);
  if (!r.resolved_now) return;
  const Evaluator& e = evaluators_[index];
  for (const Subscriber& s : e.parents) {
    out.push_back(Mail{s.parent, Mail::Type::ChildResult, s.slot, e.out});
  }
}

void MonitorNetwork::run_sequential(std::vector<Mail> initial) {
  std::deque<Mail> queue(initial.begin(), initial.end());
  std::mt19937_64 rng(shuffle_state_);
  std::vector<Mail> produced;
  while (!queue.empty()) {
    if (options_.shuffle_seed && queue.size() > 1) {
      std::uniform_int_distribution<std::size_t> pick(0, queue.size() - 1);
      std::swap(queue.front(), queue[pick(rng)]);
    }
    const Mail m = queue.front();
    queue.pop_front();
    Reaction r = react(evaluators_[m.target], m);
    produced.clear();
    apply(m.target, r, produced);
    queue.insert(queue.end(), produced.begin(), produced.end());
  }
  shuffle_state_ = rng();
}

void MonitorNetwork::run_concurrent(std::vector<Mail> mail) {
  std::vector<Mail> next;
  while (!mail.empty()) {
    std::stable_sort(mail.begin(), mail.end(), [](const Mail& a, const Mail& b) { return a.target < b.target; });
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    for (std::size_t i = 0; i < mail.size();) {
      std::size_t j = i;
      while (j < mail.size() && mail[j].target == mail[i].target) ++j;
      groups.emplace_back(i, j);
      i = j;
    }
    // Each group touches only its own evaluator; registry changes wait for
    // the barrier below.
    std::vector<std::vector<Reaction>> reactions(groups.size());
    const auto run_group = [&](std::size_t g) {
      const auto [begin, end] = groups[g];
      Evaluator& e = evaluators_[mail[begin].target];
      for (std::size_t i = begin; i < end; ++i) reactions[g].push_back(react(e, mail[i]));
    };
    if (pool_) {
      pool_->parallel_for(groups.size(), run_group);
    } else {
      for (std::size_t g = 0; g < groups.size(); ++g) run_group(g);
    }
    next.clear();
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (Reaction& r : reactions[g]) apply(mail[groups[g].first].target, r, next);
    }
    mail.swap(next);
  }
}

ResultMessage MonitorNetwork::step(const APSnapshot& snap) {
  if (snap.state != states_) {
    throw SnapshotError("snapshot for state " + std::to_string(snap.state) + " but the network expects state " +
                        std::to_string(states_));
  }
  std::vector<bool> bits(atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto it = snap.aps.find(atoms_[i]);
    if (it == snap.aps.end()) {
      throw SnapshotError("snapshot for state " + std::to_string(snap.state) + " lacks atom '" + atoms_[i] + "'");
    }
    bits[i] = it->second;
  }
  if (latched_) {
    ++states_;
    return *latched_;
  }
  for (std::size_t i = 0; i < atoms_.size(); ++i) history_[i].push_back(bits[i]);
  const std::size_t state = states_++;

  std::vector<Mail> mail;
  if (state < waiting_for_state_.size()) {
    for (std::uint32_t index : waiting_for_state_[state]) mail.push_back(Mail{index, Mail::Type::StateReady, 0, {}});
    waiting_for_state_[state].clear();
  }
  if (options_.executor == ExecutorKind::Concurrent) {
    run_concurrent(std::move(mail));
  } else {
    run_sequential(std::move(mail));
  }

  const ResultMessage root = evaluators_[root_].out;
  if (root.resolved) {
    latched_ = root;
    resolved_at_ = states_;
  }
  return root;
}

std::size_t MonitorNetwork::evaluator_count() const { return evaluators_.size(); }

ResultMessage MonitorNetwork::root_message() const {
  return latched_ ? *latched_ : evaluators_[root_].out;
}

Verdict MonitorNetwork::finish() const {
  return to_verdict(to_three_value(root_message()), cls_);
}

std::vector<ResultMessage> MonitorNetwork::frontier_messages() const {
  std::vector<ResultMessage> out(formula_.size());
  for (SubformulaId id = 0; id < formula_.size(); ++id) {
    const SubformulaId node = options_.sharing == Sharing::Memoized ? canonical_[id] : id;
    if (frontier_[node]) out[id] = evaluators_[*frontier_[node]].out;
  }
  return out;
}

// --- property monitors -----------------------------------------------------

namespace {

TemporalClass monitorable_class(const Formula& f) {
  const TemporalClass cls = classify(f);
  if (!is_monitorable(cls)) throw UnsupportedClassError(cls);
  return cls;
}

}  // namespace

PropertyMonitor::PropertyMonitor(std::string text, NetworkOptions options)
    : PropertyMonitor(text, parse_property(text), options) {}

PropertyMonitor::PropertyMonitor(std::string text, const Formula& original, NetworkOptions options)
    : text_(std::move(text)),
      original_(original),
      network_(rewrite_to_basis(original), monitorable_class(original), options) {}

Master::Master(std::vector<PropertyMonitor> monitors) : monitors_(std::move(monitors)) {}

void Master::add(PropertyMonitor m) { monitors_.push_back(std::move(m)); }

std::vector<std::string> Master::atoms() const {
  std::set<std::string> all;
  for (const auto& m : monitors_) all.insert(m.network().atoms().begin(), m.network().atoms().end());
  return {all.begin(), all.end()};
}

std::vector<ResultMessage> Master::step(const APSnapshot& snap) {
  std::vector<ResultMessage> out;
  out.reserve(monitors_.size());
  for (auto& m : monitors_) out.push_back(m.network().step(snap));
  return out;
}

std::vector<Verdict> Master::finish() const {
  std::vector<Verdict> out;
  out.reserve(monitors_.size());
  for (const auto& m : monitors_) out.push_back(m.network().finish());
  return out;
}

void Master::reset() {
  for (auto& m : monitors_) m.network().reset();
}

VerdictRecord verdict_record(const PropertyMonitor& m) {
  return VerdictRecord{m.text(), m.temporal_class(), m.network().finish(), m.network().resolved_at()};
}

}  // namespace ltlsmc
