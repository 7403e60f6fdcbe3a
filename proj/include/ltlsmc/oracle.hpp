#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ltlsmc/formula.hpp"

namespace ltlsmc {

/// Three-valued lattice V0 < VQ < V1. VQ is the unresolved value.
enum class ThreeValue : std::uint8_t { V0 = 0, VQ = 1, V1 = 2 };

constexpr ThreeValue meet(ThreeValue a, ThreeValue b) { return a < b ? a : b; }
constexpr ThreeValue join(ThreeValue a, ThreeValue b) { return a < b ? b : a; }
constexpr ThreeValue complement(ThreeValue v) {
  return v == ThreeValue::V0 ? ThreeValue::V1 : v == ThreeValue::V1 ? ThreeValue::V0 : ThreeValue::VQ;
}

std::string_view to_string(ThreeValue v);

enum class Verdict { False0, True1, PresumablyTrue, PresumablyFalse };

/// Lower-case external spelling: `false`, `true`, `presumably_true`,
/// `presumably_false`.
std::string_view to_string(Verdict v);

/// Maps a three-valued result to a verdict. VQ becomes PresumablyTrue for
/// TL_G and PresumablyFalse for TL_F.
Verdict to_verdict(ThreeValue v, TemporalClass cls);

class UnsupportedClassError : public std::invalid_argument {
 public:
  explicit UnsupportedClassError(TemporalClass c);
  TemporalClass temporal_class() const { return cls_; }

 private:
  TemporalClass cls_;
};

class UnknownAtomError : public std::invalid_argument {
 public:
  explicit UnknownAtomError(const std::string& atom)
      : std::invalid_argument("atom '" + atom + "' is not in the word's AP universe") {}
};

/// Finite word over a declared AP universe. Each letter is the set of atoms
/// that hold, stored as a bitmask over the universe order.
class FiniteWord {
 public:
  using Letter = std::uint64_t;
  static constexpr std::size_t kMaxAps = 64;

  FiniteWord() = default;
  explicit FiniteWord(std::vector<std::string> aps, std::vector<Letter> letters = {});

  const std::vector<std::string>& aps() const { return aps_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  /// Index of `atom` in the universe, if declared.
  std::optional<std::size_t> index_of(std::string_view atom) const;
  bool holds(std::size_t position, std::size_t ap_index) const {
    return (letters_.at(position) >> ap_index) & 1U;
  }

  void push_back(Letter letter);
  FiniteWord suffix(std::size_t from) const;
  FiniteWord prefix(std::size_t length) const;
  FiniteWord concat(const FiniteWord& tail) const;

  /// `{p}{}{p,q}` style rendering; `ε` for the empty word.
  std::string to_string() const;

  bool operator==(const FiniteWord&) const = default;

 private:
  std::vector<std::string> aps_;
  std::vector<Letter> letters_;
};

/// Recursive finite-path evaluation. `f` must be a basis formula.
ThreeValue eval_three_valued(const FiniteWord& u, const Formula& f);

/// Evaluation of the subformula `id` of `f` on the suffix of `u` starting at
/// `position`.
ThreeValue eval_three_valued(const FiniteWord& u, const Formula& f, SubformulaId id, std::size_t position);

/// Verdict for a basis formula under the TL_G or TL_F reading. Throws
/// UnsupportedClassError for every other class.
Verdict verdict_finite(const FiniteWord& u, const Formula& f, TemporalClass cls);

/// Exhaustive enumeration of words up to `max_len` letters, shortest first;
/// within a length, letters count upward as little-endian bitmasks.
class WordEnumerator {
 public:
  static constexpr std::size_t kMaxAps = 4;
  static constexpr std::size_t kMaxLength = 8;

  WordEnumerator(std::vector<std::string> aps, std::size_t max_len);

  std::optional<FiniteWord> next();

  /// Number of words the enumerator yields in total.
  std::uint64_t count() const;

 private:
  std::vector<std::string> aps_;
  std::size_t max_len_;
  std::size_t length_ = 0;
  std::vector<FiniteWord::Letter> current_;
  bool done_ = false;
};

std::vector<FiniteWord> enumerate_words(const std::vector<std::string>& aps, std::size_t max_len);

}  // namespace ltlsmc
