#include "ltlsmc/oracle.hpp"

#include <algorithm>

namespace ltlsmc {

std::string_view to_string(ThreeValue v) {
  switch (v) {
    case ThreeValue::V0: return "0";
    case ThreeValue::VQ: return "?";
    case ThreeValue::V1: return "1";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::False0: return "false";
    case Verdict::True1: return "true";
    case Verdict::PresumablyTrue: return "presumably_true";
    case Verdict::PresumablyFalse: return "presumably_false";
  }
  return "?";
}

UnsupportedClassError::UnsupportedClassError(TemporalClass c)
    : std::invalid_argument("class " + std::string(to_string(c)) + " not supported for monitoring"), cls_(c) {}

Verdict to_verdict(ThreeValue v, TemporalClass cls) {
  if (!is_monitorable(cls)) throw UnsupportedClassError(cls);
  switch (v) {
    case ThreeValue::V0: return Verdict::False0;
    case ThreeValue::V1: return Verdict::True1;
    case ThreeValue::VQ: break;
  }
  return cls == TemporalClass::TL_G ? Verdict::PresumablyTrue : Verdict::PresumablyFalse;
}

FiniteWord::FiniteWord(std::vector<std::string> aps, std::vector<Letter> letters)
    : aps_(std::move(aps)), letters_(std::move(letters)) {
  if (aps_.size() > kMaxAps) throw std::invalid_argument("too many atomic propositions for a word");
  const Letter mask = aps_.size() == kMaxAps ? ~Letter{0} : (Letter{1} << aps_.size()) - 1;
  for (Letter l : letters_) {
    if (l & ~mask) throw std::invalid_argument("letter mentions atoms outside the universe");
  }
}

std::optional<std::size_t> FiniteWord::index_of(std::string_view atom) const {
  const auto it = std::find(aps_.begin(), aps_.end(), atom);
  if (it == aps_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - aps_.begin());
}

void FiniteWord::push_back(Letter letter) { letters_.push_back(letter); }

FiniteWord FiniteWord::suffix(std::size_t from) const {
  from = std::min(from, letters_.size());
  return FiniteWord(aps_, {letters_.begin() + static_cast<std::ptrdiff_t>(from), letters_.end()});
}

FiniteWord FiniteWord::prefix(std::size_t length) const {
  length = std::min(length, letters_.size());
  return FiniteWord(aps_, {letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(length)});
}

FiniteWord FiniteWord::concat(const FiniteWord& tail) const {
  if (tail.aps_ != aps_) throw std::invalid_argument("cannot concatenate words over different universes");
  std::vector<Letter> all = letters_;
  all.insert(all.end(), tail.letters_.begin(), tail.letters_.end());
  return FiniteWord(aps_, std::move(all));
}

std::string FiniteWord::to_string() const {
  if (letters_.empty()) return "ε";
  std::string out;
  for (Letter l : letters_) {
    out += '{';
    bool first = true;
    for (std::size_t i = 0; i < aps_.size(); ++i) {
      if (!((l >> i) & 1U)) continue;
      if (!first) out += ',';
      out += aps_[i];
      first = false;
    }
    out += '}';
  }
  return out;
}

namespace {

class Evaluator {
 public:
  Evaluator(const FiniteWord& u, const Formula& f) : u_(u), f_(f), atom_index_(f.size()) {
    for (SubformulaId id = 0; id < f.size(); ++id) {
      const FormulaNode& n = f.node(id);
      if (n.kind != FormulaKind::Atom) continue;
      const auto idx = u.index_of(n.atom->text());
      if (!idx) throw UnknownAtomError(n.atom->text());
      atom_index_[id] = *idx;
    }
  }

  ThreeValue eval(SubformulaId id, std::size_t pos) const {
    if (pos >= u_.size()) return ThreeValue::VQ;
    const FormulaNode& n = f_.node(id);
    switch (n.kind) {
      case FormulaKind::True:
        return ThreeValue::V1;
      case FormulaKind::Atom:
        return u_.holds(pos, atom_index_[id]) ? ThreeValue::V1 : ThreeValue::V0;
      case FormulaKind::Not:
        return complement(eval(n.children[0], pos));
      case FormulaKind::And:
        return meet(eval(n.children[0], pos), eval(n.children[1], pos));
      case FormulaKind::Next:
        return eval(n.children[0], pos + 1);
      case FormulaKind::StrongUntil:
        // [a U b] = b || (a && X[a U b])
        return join(eval(n.children[1], pos), meet(eval(n.children[0], pos), eval(id, pos + 1)));
      default:
        throw std::invalid_argument("oracle expects a basis formula, found " + std::string(to_string(n.kind)));
    }
  }

 private:
  const FiniteWord& u_;
  const Formula& f_;
  std::vector<std::size_t> atom_index_;
};

}  // namespace

ThreeValue eval_three_valued(const FiniteWord& u, const Formula& f, SubformulaId id, std::size_t position) {
  return Evaluator(u, f).eval(id, position);
}

ThreeValue eval_three_valued(const FiniteWord& u, const Formula& f) { return eval_three_valued(u, f, 0, 0); }

Verdict verdict_finite(const FiniteWord& u, const Formula& f, TemporalClass cls) {
  if (!is_monitorable(cls)) throw UnsupportedClassError(cls);
  return to_verdict(eval_three_valued(u, f), cls);
}

WordEnumerator::WordEnumerator(std::vector<std::string> aps, std::size_t max_len)
    : aps_(std::move(aps)), max_len_(max_len) {
  if (aps_.size() > kMaxAps) throw std::invalid_argument("word enumeration supports at most 4 atoms");
  if (max_len_ > kMaxLength) throw std::invalid_argument("word enumeration supports length at most 8");
}

std::uint64_t WordEnumerator::count() const {
  const std::uint64_t alphabet = std::uint64_t{1} << aps_.size();
  std::uint64_t total = 0;
  std::uint64_t power = 1;
  for (std::size_t len = 0; len <= max_len_; ++len) {
    total += power;
    power *= alphabet;
  }
  return total;
}

std::optional<FiniteWord> WordEnumerator::next() {
  if (done_) return std::nullopt;
  FiniteWord out(aps_, current_);
  // Advance: odometer over the current length, then grow.
  const FiniteWord::Letter top = FiniteWord::Letter{1} << aps_.size();
  std::size_t i = 0;
  for (; i < current_.size(); ++i) {
    if (++current_[i] < top) break;
    current_[i] = 0;
  }
  if (i == current_.size()) {
    if (length_ == max_len_) {
      done_ = true;
    } else {
      ++length_;
      current_.assign(length_, 0);
    }
  }
  return out;
}

std::vector<FiniteWord> enumerate_words(const std::vector<std::string>& aps, std::size_t max_len) {
  WordEnumerator e(aps, max_len);
  std::vector<FiniteWord> out;
  out.reserve(static_cast<std::size_t>(e.count()));
  while (auto w = e.next()) out.push_back(std::move(*w));
  return out;
}

}  // namespace ltlsmc
