#include "ltlsmc/formula.hpp"

namespace ltlsmc {

namespace {

// Negation with Not(Not x) -> x.
Formula negate(const Formula& f) {
  if (f.kind() == FormulaKind::Not) return f.child(0);
  return Formula::negation(f);
}

Formula rewrite(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::Atom:
      return f;
    case FormulaKind::False:
      return Formula::negation(Formula::truth());
    case FormulaKind::Not:
      return negate(rewrite(f.child(0)));
    case FormulaKind::And:
      return Formula::conjunction(rewrite(f.child(0)), rewrite(f.child(1)));
    case FormulaKind::Or:
      return negate(Formula::conjunction(negate(rewrite(f.child(0))), negate(rewrite(f.child(1)))));
    case FormulaKind::Next:
      return Formula::next(rewrite(f.child(0)));
    case FormulaKind::StrongUntil:
      return Formula::until(rewrite(f.child(0)), rewrite(f.child(1)));
    case FormulaKind::Finally:
      return Formula::until(Formula::truth(), rewrite(f.child(0)));
    case FormulaKind::Globally:
      return negate(Formula::until(Formula::truth(), negate(rewrite(f.child(0)))));
    case FormulaKind::WeakUntil: {
      // [a W b] = [a U b] || G a = !(!(a U b) && (true U !a))
      const Formula a = rewrite(f.child(0));
      const Formula b = rewrite(f.child(1));
      const Formula strong = Formula::until(a, b);
      const Formula not_always = Formula::until(Formula::truth(), negate(a));
      return negate(Formula::conjunction(negate(strong), not_always));
    }
  }
  return f;
}

}  // namespace

Formula rewrite_to_basis(const Formula& f) { return rewrite(f); }

bool is_basis(const Formula& f) {
  for (const FormulaNode& n : f.nodes()) {
    switch (n.kind) {
      case FormulaKind::True:
      case FormulaKind::Atom:
      case FormulaKind::Not:
      case FormulaKind::And:
      case FormulaKind::Next:
      case FormulaKind::StrongUntil:
        break;
      default:
        return false;
    }
  }
  return true;
}

}  // namespace ltlsmc
