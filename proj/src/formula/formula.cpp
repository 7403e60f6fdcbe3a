#include "ltlsmc/formula.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace ltlsmc {

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "==";
    case CompareOp::Ne: return "!=";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
  }
  return "?";
}

Atom Atom::identifier(std::string name) {
  Atom a;
  a.kind = Kind::Identifier;
  a.lhs = std::move(name);
  a.rhs = std::int64_t{0};
  return a;
}

Atom Atom::comparison(std::string lhs, CompareOp op, std::variant<std::string, std::int64_t> rhs) {
  Atom a;
  a.kind = Kind::Comparison;
  a.lhs = std::move(lhs);
  a.op = op;
  a.rhs = std::move(rhs);
  return a;
}

std::string Atom::text() const {
  if (kind == Kind::Identifier) return lhs;
  std::string out = lhs;
  out += ' ';
  out += to_string(op);
  out += ' ';
  if (const auto* name = std::get_if<std::string>(&rhs)) {
    out += *name;
  } else {
    out += std::to_string(std::get<std::int64_t>(rhs));
  }
  return out;
}

std::string_view to_string(FormulaKind kind) {
  switch (kind) {
    case FormulaKind::True: return "True";
    case FormulaKind::False: return "False";
    case FormulaKind::Atom: return "Atom";
    case FormulaKind::Not: return "Not";
    case FormulaKind::And: return "And";
    case FormulaKind::Or: return "Or";
    case FormulaKind::Next: return "Next";
    case FormulaKind::StrongUntil: return "StrongUntil";
    case FormulaKind::WeakUntil: return "WeakUntil";
    case FormulaKind::Finally: return "Finally";
    case FormulaKind::Globally: return "Globally";
  }
  return "?";
}

std::size_t arity(FormulaKind kind) {
  switch (kind) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Atom:
      return 0;
    case FormulaKind::Not:
    case FormulaKind::Next:
    case FormulaKind::Finally:
    case FormulaKind::Globally:
      return 1;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::StrongUntil:
    case FormulaKind::WeakUntil:
      return 2;
  }
  return 0;
}

Formula Formula::make(FormulaKind kind, std::initializer_list<const Formula*> children) {
  Formula f;
  std::size_t total = 1;
  for (const Formula* c : children) total += c->size();
  f.nodes_.reserve(total);
  f.nodes_.push_back(FormulaNode{kind, std::nullopt, {0, 0}});
  std::size_t slot = 0;
  for (const Formula* c : children) {
    const auto base = static_cast<SubformulaId>(f.nodes_.size());
    f.nodes_.front().children[slot++] = base;
    for (FormulaNode n : c->nodes_) {
      for (std::size_t i = 0; i < arity(n.kind); ++i) n.children[i] += base;
      f.nodes_.push_back(std::move(n));
    }
  }
  return f;
}

Formula Formula::truth() { return make(FormulaKind::True, {}); }
Formula Formula::falsity() { return make(FormulaKind::False, {}); }

Formula Formula::atom(Atom a) {
  Formula f = make(FormulaKind::Atom, {});
  f.nodes_.front().atom = std::move(a);
  return f;
}

Formula Formula::negation(const Formula& f) { return make(FormulaKind::Not, {&f}); }
Formula Formula::conjunction(const Formula& l, const Formula& r) { return make(FormulaKind::And, {&l, &r}); }
Formula Formula::disjunction(const Formula& l, const Formula& r) { return make(FormulaKind::Or, {&l, &r}); }
Formula Formula::next(const Formula& f) { return make(FormulaKind::Next, {&f}); }
Formula Formula::until(const Formula& l, const Formula& r) { return make(FormulaKind::StrongUntil, {&l, &r}); }
Formula Formula::weak_until(const Formula& l, const Formula& r) { return make(FormulaKind::WeakUntil, {&l, &r}); }
Formula Formula::eventually(const Formula& f) { return make(FormulaKind::Finally, {&f}); }
Formula Formula::always(const Formula& f) { return make(FormulaKind::Globally, {&f}); }

Formula Formula::subtree(SubformulaId id) const {
  // Pre-order layout: a subtree occupies a contiguous range starting at id.
  std::size_t end = id + 1;
  std::vector<SubformulaId> stack{id};
  while (!stack.empty()) {
    const FormulaNode& n = nodes_.at(stack.back());
    stack.pop_back();
    for (std::size_t i = 0; i < arity(n.kind); ++i) {
      end = std::max<std::size_t>(end, n.children[i] + 1);
      stack.push_back(n.children[i]);
    }
  }
  Formula f;
  f.nodes_.assign(nodes_.begin() + id, nodes_.begin() + static_cast<std::ptrdiff_t>(end));
  for (FormulaNode& n : f.nodes_) {
    for (std::size_t i = 0; i < arity(n.kind); ++i) n.children[i] -= id;
  }
  return f;
}

Formula Formula::child(std::size_t i) const {
  if (i >= arity(kind())) throw std::out_of_range("formula child index out of range");
  return subtree(nodes_.front().children[i]);
}

std::size_t Formula::depth() const {
  std::function<std::size_t(SubformulaId)> rec = [&](SubformulaId id) -> std::size_t {
    const FormulaNode& n = nodes_[id];
    std::size_t d = 0;
    for (std::size_t i = 0; i < arity(n.kind); ++i) d = std::max(d, rec(n.children[i]));
    return d + 1;
  };
  return rec(0);
}

std::vector<std::pair<SubformulaId, Formula>> subformulas(const Formula& f) {
  std::vector<std::pair<SubformulaId, Formula>> out;
  out.reserve(f.size());
  for (SubformulaId id = 0; id < f.size(); ++id) out.emplace_back(id, f.subtree(id));
  return out;
}

std::vector<std::string> atom_names(const Formula& f) {
  std::set<std::string> names;
  for (const FormulaNode& n : f.nodes()) {
    if (n.kind == FormulaKind::Atom) names.insert(n.atom->text());
  }
  return {names.begin(), names.end()};
}

namespace {

struct Printer {
  const Formula& f;
  Notation notation;

  std::string_view op(FormulaKind k) const {
    const bool sym = notation == Notation::Symbolic;
    switch (k) {
      case FormulaKind::Not: return sym ? "¬" : "!";
      case FormulaKind::And: return sym ? " ∧ " : " && ";
      case FormulaKind::Or: return sym ? " ∨ " : " || ";
      case FormulaKind::Next: return "X ";
      case FormulaKind::Finally: return "F ";
      case FormulaKind::Globally: return "G ";
      case FormulaKind::StrongUntil: return " U ";
      case FormulaKind::WeakUntil: return " W ";
      default: return "";
    }
  }

  // Binary operands are always parenthesized, so the output re-parses to the
  // same tree regardless of precedence and associativity.
  std::string operand(SubformulaId id) const {
    std::string s = print(id);
    return arity(f.node(id).kind) == 2 ? "(" + s + ")" : s;
  }

  std::string print(SubformulaId id) const {
    const FormulaNode& n = f.node(id);
    switch (n.kind) {
      case FormulaKind::True: return "true";
      case FormulaKind::False: return "false";
      case FormulaKind::Atom: {
        if (n.atom->kind == Atom::Kind::Comparison) return "(" + n.atom->text() + ")";
        return n.atom->text();
      }
      case FormulaKind::Not: {
        std::string s = operand(n.children[0]);
        return std::string(op(n.kind)) + s;
      }
      case FormulaKind::Next:
      case FormulaKind::Finally:
      case FormulaKind::Globally:
        return std::string(op(n.kind)) + operand(n.children[0]);
      default:
        return operand(n.children[0]) + std::string(op(n.kind)) + operand(n.children[1]);
    }
  }
};

}  // namespace

std::string to_string(const Formula& f, Notation notation) {
  return Printer{f, notation}.print(0);
}

std::string dump_tree(const Formula& f) {
  std::ostringstream out;
  std::function<void(SubformulaId, int)> rec = [&](SubformulaId id, int indent) {
    const FormulaNode& n = f.node(id);
    out << std::string(static_cast<std::size_t>(indent) * 2, ' ') << '[' << id << "] " << to_string(n.kind);
    if (n.kind == FormulaKind::Atom) out << ' ' << n.atom->text();
    out << '\n';
    for (std::size_t i = 0; i < arity(n.kind); ++i) rec(n.children[i], indent + 1);
  };
  rec(0, 0);
  return out.str();
}

}  // namespace ltlsmc
