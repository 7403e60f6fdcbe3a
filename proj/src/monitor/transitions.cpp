#include "ltlsmc/monitor.hpp"

namespace ltlsmc {

ThreeValue to_three_value(ResultMessage m) {
  if (!m.resolved) return ThreeValue::VQ;
  return m.value ? ThreeValue::V1 : ThreeValue::V0;
}

ResultMessage to_message(ThreeValue v) {
  switch (v) {
    case ThreeValue::V0: return ResultMessage::of(false);
    case ThreeValue::V1: return ResultMessage::of(true);
    case ThreeValue::VQ: break;
  }
  return ResultMessage::waiting();
}

std::string to_string(ResultMessage m) {
  std::string out = "(";
  out += m.value ? "true" : "false";
  out += ", ";
  out += m.resolved ? "true" : "false";
  out += ')';
  return out;
}

std::string_view to_string(WorkerKind k) {
  switch (k) {
    case WorkerKind::UntilWorker: return "until";
    case WorkerKind::AndWorker: return "and";
    case WorkerKind::NotWorker: return "not";
    case WorkerKind::NextWorker: return "next";
    case WorkerKind::ConditionChecker: return "condition";
    case WorkerKind::TrueLeaf: return "true";
  }
  return "?";
}

ResultMessage until_transition(ResultMessage left, ResultMessage right) {
  if (right.is_true()) return ResultMessage::of(true);
  if (right.is_false() && left.is_false()) return ResultMessage::of(false);
  // Right false and left true: the until carries over to the next state.
  return ResultMessage::waiting();
}

ResultMessage until_step(ResultMessage left, ResultMessage right, ResultMessage continuation) {
  const ThreeValue carried = meet(to_three_value(left), to_three_value(continuation));
  return to_message(join(to_three_value(right), carried));
}

ResultMessage and_transition(ResultMessage left, ResultMessage right) {
  if (left.is_false() || right.is_false()) return ResultMessage::of(false);
  if (left.resolved && right.resolved) return ResultMessage::of(left.value && right.value);
  return ResultMessage::waiting();
}

ResultMessage not_transition(ResultMessage child) {
  if (!child.resolved) return ResultMessage::waiting();
  return ResultMessage::of(!child.value);
}

}  // namespace ltlsmc
