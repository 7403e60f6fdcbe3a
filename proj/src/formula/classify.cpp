#include <array>

#include "ltlsmc/formula.hpp"

namespace ltlsmc {

std::string_view to_string(TemporalClass c) {
  switch (c) {
    case TemporalClass::TL_G: return "TL_G";
    case TemporalClass::TL_F: return "TL_F";
    case TemporalClass::TL_Prefix: return "TL_Prefix";
    case TemporalClass::TL_GF: return "TL_GF";
    case TemporalClass::TL_FG: return "TL_FG";
    case TemporalClass::TL_Streett: return "TL_Streett";
    case TemporalClass::Unclassified: return "Unclassified";
  }
  return "?";
}

bool is_monitorable(TemporalClass c) { return c == TemporalClass::TL_G || c == TemporalClass::TL_F; }

namespace {

// TL_G: every weak until (W, G) occurs under an even number of negations and
// every strong until (U, F) under an odd number. TL_F is the dual. F counts as
// a strong until at its own position; G as a weak one ([phi W false]).
bool polarity_ok(const Formula& f, SubformulaId id, bool negated, bool want_g) {
  const FormulaNode& n = f.node(id);
  bool strong_ok = want_g ? negated : !negated;
  switch (n.kind) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Atom:
      return true;
    case FormulaKind::Not:
      return polarity_ok(f, n.children[0], !negated, want_g);
    case FormulaKind::Next:
      return polarity_ok(f, n.children[0], negated, want_g);
    case FormulaKind::And:
    case FormulaKind::Or:
      return polarity_ok(f, n.children[0], negated, want_g) && polarity_ok(f, n.children[1], negated, want_g);
    case FormulaKind::StrongUntil:
      return strong_ok && polarity_ok(f, n.children[0], negated, want_g) &&
             polarity_ok(f, n.children[1], negated, want_g);
    case FormulaKind::Finally:
      return strong_ok && polarity_ok(f, n.children[0], negated, want_g);
    case FormulaKind::WeakUntil:
      return !strong_ok && polarity_ok(f, n.children[0], negated, want_g) &&
             polarity_ok(f, n.children[1], negated, want_g);
    case FormulaKind::Globally:
      return !strong_ok && polarity_ok(f, n.children[0], negated, want_g);
  }
  return false;
}

class Grammar {
 public:
  explicit Grammar(const Formula& f) : f_(f), memo_(f.size()) {}

  bool member(SubformulaId id, TemporalClass c) {
    const auto slot = static_cast<std::size_t>(c);
    auto& cell = memo_[id][slot];
    if (cell == 0) cell = compute(id, c) ? 1 : 2;
    return cell == 1;
  }

 private:
  bool is_boolean(FormulaKind k) const {
    return k == FormulaKind::Not || k == FormulaKind::And || k == FormulaKind::Or;
  }

  bool all_children(SubformulaId id, TemporalClass c) {
    const FormulaNode& n = f_.node(id);
    for (std::size_t i = 0; i < arity(n.kind); ++i) {
      if (!member(n.children[i], c)) return false;
    }
    return true;
  }

  bool compute(SubformulaId id, TemporalClass c) {
    const FormulaNode& n = f_.node(id);
    switch (c) {
      case TemporalClass::TL_G:
        return polarity_ok(f_, id, false, true);
      case TemporalClass::TL_F:
        return polarity_ok(f_, id, false, false);
      case TemporalClass::TL_Prefix:
        return member(id, TemporalClass::TL_G) || member(id, TemporalClass::TL_F) ||
               (is_boolean(n.kind) && all_children(id, c));
      case TemporalClass::TL_GF:
      case TemporalClass::TL_FG:
        return member(id, TemporalClass::TL_Prefix) || recurrence(id, c == TemporalClass::TL_GF);
      case TemporalClass::TL_Streett:
        return member(id, TemporalClass::TL_GF) || member(id, TemporalClass::TL_FG) ||
               (is_boolean(n.kind) && all_children(id, c));
      case TemporalClass::Unclassified:
        return true;
    }
    return false;
  }

  // P_GF ::= P_Prefix | !P_FG | P_GF && P_GF | P_GF || P_GF | X P_GF
  //        | [P_GF W P_GF] | [P_GF U P_F]
  // P_FG ::= P_Prefix | !P_GF | P_FG && P_FG | P_FG || P_FG | X P_FG
  //        | [P_FG U P_FG] | [P_G W P_FG]
  bool recurrence(SubformulaId id, bool gf) {
    const TemporalClass self = gf ? TemporalClass::TL_GF : TemporalClass::TL_FG;
    const TemporalClass dual = gf ? TemporalClass::TL_FG : TemporalClass::TL_GF;
    const FormulaNode& n = f_.node(id);
    const auto child = [&](std::size_t i) { return n.children[i]; };
    switch (n.kind) {
      case FormulaKind::Not:
        return member(child(0), dual);
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Next:
        return all_children(id, self);
      case FormulaKind::WeakUntil:
        if (gf) return all_children(id, self);
        return member(child(0), TemporalClass::TL_G) && member(child(1), self);
      case FormulaKind::Globally:  // [phi W false]
        if (gf) return member(child(0), self);
        return member(child(0), TemporalClass::TL_G);
      case FormulaKind::StrongUntil:
        if (gf) return member(child(0), self) && member(child(1), TemporalClass::TL_F);
        return all_children(id, self);
      case FormulaKind::Finally:  // [true U phi]
        if (gf) return member(child(0), TemporalClass::TL_F);
        return member(child(0), self);
      default:
        return false;
    }
  }

  const Formula& f_;
  std::vector<std::array<char, 7>> memo_;
};

}  // namespace

bool in_class(const Formula& f, TemporalClass c) { return Grammar(f).member(0, c); }

TemporalClass classify(const Formula& f) {
  Grammar g(f);
  for (TemporalClass c : {TemporalClass::TL_G, TemporalClass::TL_F, TemporalClass::TL_Prefix,
                          TemporalClass::TL_GF, TemporalClass::TL_FG, TemporalClass::TL_Streett}) {
    if (g.member(0, c)) return c;
  }
  return TemporalClass::Unclassified;
}

}  // namespace ltlsmc
