#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace ltlsmc {

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view to_string(CompareOp op);

/// An atomic proposition: either a named boolean AP or a comparison
/// between a program variable and a variable or integer literal.
struct Atom {
  enum class Kind { Identifier, Comparison };

  Kind kind = Kind::Identifier;
  std::string lhs;  // AP name for identifiers, variable name otherwise
  CompareOp op = CompareOp::Eq;
  std::variant<std::string, std::int64_t> rhs;

  static Atom identifier(std::string name);
  static Atom comparison(std::string lhs, CompareOp op,
                         std::variant<std::string, std::int64_t> rhs);

  /// Canonical text, e.g. `crit1` or `a > 0`. Used as the key of the atom in
  /// words, snapshots and trace files.
  std::string text() const;

  bool operator==(const Atom&) const = default;
};

enum class FormulaKind {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Next,
  StrongUntil,
  WeakUntil,
  Finally,
  Globally,
};

std::string_view to_string(FormulaKind kind);
std::size_t arity(FormulaKind kind);

using SubformulaId = std::uint32_t;

struct FormulaNode {
  FormulaKind kind = FormulaKind::True;
  std::optional<Atom> atom;
  std::array<SubformulaId, 2> children{0, 0};

  bool operator==(const FormulaNode&) const = default;
};

/// Immutable LTL formula. Nodes are stored in pre-order, so the identifier of
/// a subformula is its pre-order position and the root is always 0.
class Formula {
 public:
  static Formula truth();
  static Formula falsity();
  static Formula atom(Atom a);
  static Formula atom(std::string name) { return atom(Atom::identifier(std::move(name))); }
  static Formula negation(const Formula& f);
  static Formula conjunction(const Formula& l, const Formula& r);
  static Formula disjunction(const Formula& l, const Formula& r);
  static Formula next(const Formula& f);
  static Formula until(const Formula& l, const Formula& r);
  static Formula weak_until(const Formula& l, const Formula& r);
  static Formula eventually(const Formula& f);
  static Formula always(const Formula& f);

  FormulaKind kind() const { return nodes_.front().kind; }
  std::size_t size() const { return nodes_.size(); }
  const FormulaNode& node(SubformulaId id) const { return nodes_.at(id); }
  const std::vector<FormulaNode>& nodes() const { return nodes_; }

  /// Copy of the subtree rooted at `id`, renumbered from 0.
  Formula subtree(SubformulaId id) const;
  /// Subtree of the i-th child of the root.
  Formula child(std::size_t i) const;

  std::size_t depth() const;

  bool operator==(const Formula&) const = default;

 private:
  Formula() = default;
  static Formula make(FormulaKind kind, std::initializer_list<const Formula*> children);

  std::vector<FormulaNode> nodes_;
};

/// Deterministic pre-order enumeration; identifiers match node ids.
std::vector<std::pair<SubformulaId, Formula>> subformulas(const Formula& f);

/// Distinct atoms of `f` by canonical text, sorted.
std::vector<std::string> atom_names(const Formula& f);

enum class Notation { Ascii, Symbolic };

/// Pretty printer. The ASCII notation is accepted by `parse_property`.
std::string to_string(const Formula& f, Notation notation = Notation::Ascii);

/// Indented tree dump, one node per line with its subformula id.
std::string dump_tree(const Formula& f);

// --- parsing ---------------------------------------------------------------

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string token, const std::string& what);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& token() const { return token_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string token_;
};

/// Parse one property. Precedence, tightest first: unary `! X F G`, then the
/// right-associative `U W`, then `&&`, then `||`.
Formula parse_property(std::string_view text, std::size_t line = 1);

/// A formula read from a property file, with its source line.
struct PropertyLine {
  std::size_t line = 0;
  std::string text;
  Formula formula;
};

/// One formula per line, `#` starts a comment, blank lines are skipped.
std::vector<PropertyLine> parse_property_file(std::string_view contents);

// --- rewriting and classification -----------------------------------------

/// Rewrite into {True, Atom, Not, And, Next, StrongUntil}. Double negations
/// produced by the rewrite (or present in the input) are removed.
Formula rewrite_to_basis(const Formula& f);

bool is_basis(const Formula& f);

enum class TemporalClass { TL_G, TL_F, TL_Prefix, TL_GF, TL_FG, TL_Streett, Unclassified };

std::string_view to_string(TemporalClass c);

/// True for the two classes the monitor network supports.
bool is_monitorable(TemporalClass c);

/// Grammar membership for each class of the hierarchy.
bool in_class(const Formula& f, TemporalClass c);

/// Smallest class containing `f`, ties broken G < F < Prefix < GF < FG <
/// Streett. Runs on the formula as written, before rewriting.
TemporalClass classify(const Formula& f);

}  // namespace ltlsmc
