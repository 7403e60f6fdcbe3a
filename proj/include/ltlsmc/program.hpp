#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ltlsmc {

/// Shared-variable value: integer or boolean.
using Value = std::variant<std::int64_t, bool>;

enum class ValueType { Int, Bool };

ValueType type_of(const Value& v);
std::string to_string(const Value& v);
std::string_view to_string(ValueType t);

class ProgramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised while running a location (type or overflow errors at run time, a
/// disabled thread, an infeasible schedule).
class ExecutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Variable {
  std::string name;
  Value initial;
};

/// Type-checked expression over the shared variables.
class Expr {
 public:
  enum class Op { Const, Var, Neg, Not, Add, Sub, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

  static Expr constant(Value v);
  static Expr variable(std::size_t index, ValueType type);
  static Expr unary(Op op, Expr operand);
  static Expr binary(Op op, Expr lhs, Expr rhs);

  ValueType type() const { return type_; }
  Op op() const { return op_; }

  Value eval(std::span<const Value> vars) const;
  bool eval_bool(std::span<const Value> vars) const;

 private:
  Op op_ = Op::Const;
  ValueType type_ = ValueType::Bool;
  Value constant_ = false;
  std::size_t var_ = 0;
  std::vector<Expr> args_;
};

/// Parses an expression against `vars`. Grammar, loosest first: `||`, `&&`,
/// prefix `!`, comparisons, `+ -`, unary `-`, then literals, variables and
/// parentheses. Throws ProgramError on syntax, scope and type errors.
Expr parse_expression(std::string_view text, const std::vector<Variable>& vars);

struct Assignment {
  std::size_t var = 0;
  Expr value;
};

/// `var := expr`
Assignment parse_assignment(std::string_view text, const std::vector<Variable>& vars);

struct Location {
  /// Blocking visible operation; the location is enabled iff it holds.
  std::optional<Expr> guard;
  std::vector<Assignment> body;
  /// 1-based successor location, or nullopt for `end`.
  std::optional<std::size_t> next;
};

struct Thread {
  std::vector<Location> locations;  // location k is locations[k - 1]
};

struct AtomicProposition {
  std::string name;
  Expr predicate;
};

struct Program {
  std::string name;
  std::vector<Variable> vars;
  std::vector<AtomicProposition> aps;
  std::vector<Thread> threads;

  std::optional<std::size_t> var_index(std::string_view name) const;
  const AtomicProposition* find_ap(std::string_view name) const;
};

/// Loads and validates a program document (JSON text).
Program load_program(std::string_view json_text);
Program load_program_file(const std::string& path);

using ThreadId = std::size_t;  // 0-based; printed as T1, T2, ...

std::string thread_name(ThreadId t);
/// Parses `T2,T2,T1` (whitespace tolerated).
std::vector<ThreadId> parse_schedule(std::string_view text);
std::string format_schedule(const std::vector<ThreadId>& schedule);

}  // namespace ltlsmc
