#include <cctype>
#include <charconv>
#include <limits>

#include "ltlsmc/program.hpp"

namespace ltlsmc {

ValueType type_of(const Value& v) { return std::holds_alternative<bool>(v) ? ValueType::Bool : ValueType::Int; }

std::string to_string(const Value& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::to_string(std::get<std::int64_t>(v));
}

std::string_view to_string(ValueType t) { return t == ValueType::Bool ? "bool" : "int"; }

Expr Expr::constant(Value v) {
  Expr e;
  e.op_ = Op::Const;
  e.type_ = type_of(v);
  e.constant_ = v;
  return e;
}

Expr Expr::variable(std::size_t index, ValueType type) {
  Expr e;
  e.op_ = Op::Var;
  e.type_ = type;
  e.var_ = index;
  return e;
}

namespace {

bool is_comparison(Expr::Op op) {
  return op == Expr::Op::Eq || op == Expr::Op::Ne || op == Expr::Op::Lt || op == Expr::Op::Le ||
         op == Expr::Op::Gt || op == Expr::Op::Ge;
}

}  // namespace

Expr Expr::unary(Op op, Expr operand) {
  Expr e;
  e.op_ = op;
  if (op == Op::Neg) {
    if (operand.type() != ValueType::Int) throw ProgramError("unary '-' applied to a boolean");
    e.type_ = ValueType::Int;
  } else if (op == Op::Not) {
    if (operand.type() != ValueType::Bool) throw ProgramError("'!' applied to an integer");
    e.type_ = ValueType::Bool;
  } else {
    throw ProgramError("not a unary operator");
  }
  e.args_.push_back(std::move(operand));
  return e;
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  Expr e;
  e.op_ = op;
  if (op == Op::Add || op == Op::Sub) {
    if (lhs.type() != ValueType::Int || rhs.type() != ValueType::Int) {
      throw ProgramError("arithmetic on booleans");
    }
    e.type_ = ValueType::Int;
  } else if (op == Op::And || op == Op::Or) {
    if (lhs.type() != ValueType::Bool || rhs.type() != ValueType::Bool) {
      throw ProgramError("boolean connective applied to an integer");
    }
    e.type_ = ValueType::Bool;
  } else if (is_comparison(op)) {
    if (lhs.type() != rhs.type()) throw ProgramError("comparison between int and bool");
    if (lhs.type() == ValueType::Bool && op != Op::Eq && op != Op::Ne) {
      throw ProgramError("ordering comparison on booleans");
    }
    e.type_ = ValueType::Bool;
  } else {
    throw ProgramError("not a binary operator");
  }
  e.args_.push_back(std::move(lhs));
  e.args_.push_back(std::move(rhs));
  return e;
}

Value Expr::eval(std::span<const Value> vars) const {
  const auto as_int = [](const Value& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
    throw ExecutionError("arithmetic on booleans");
  };
  const auto as_bool = [](const Value& v) {
    if (const auto* b = std::get_if<bool>(&v)) return *b;
    throw ExecutionError("integer used as a condition");
  };
  switch (op_) {
    case Op::Const: return constant_;
    case Op::Var: return vars[var_];
    case Op::Neg: {
      const std::int64_t v = as_int(args_[0].eval(vars));
      if (v == std::numeric_limits<std::int64_t>::min()) throw ExecutionError("integer overflow");
      return -v;
    }
    case Op::Not: return !as_bool(args_[0].eval(vars));
    case Op::And: return as_bool(args_[0].eval(vars)) && as_bool(args_[1].eval(vars));
    case Op::Or: return as_bool(args_[0].eval(vars)) || as_bool(args_[1].eval(vars));
    case Op::Add:
    case Op::Sub: {
      const std::int64_t a = as_int(args_[0].eval(vars));
      const std::int64_t b = as_int(args_[1].eval(vars));
      std::int64_t r;
      const bool overflow = op_ == Op::Add ? __builtin_add_overflow(a, b, &r) : __builtin_sub_overflow(a, b, &r);
      if (overflow) throw ExecutionError("integer overflow");
      return r;
    }
    default: break;
  }
  const Value a = args_[0].eval(vars);
  const Value b = args_[1].eval(vars);
  if (type_of(a) != type_of(b)) throw ExecutionError("comparison between int and bool");
  switch (op_) {
    case Op::Eq: return a == b;
    case Op::Ne: return a != b;
    case Op::Lt: return as_int(a) < as_int(b);
    case Op::Le: return as_int(a) <= as_int(b);
    case Op::Gt: return as_int(a) > as_int(b);
    case Op::Ge: return as_int(a) >= as_int(b);
    default: break;
  }
  throw ExecutionError("malformed expression");
}

bool Expr::eval_bool(std::span<const Value> vars) const {
  const Value v = eval(vars);
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  throw ExecutionError("integer used as a condition");
}

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const std::vector<Variable>& vars) : text_(text), vars_(vars) {}

  Expr parse_all() {
    Expr e = disjunction();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(text_.substr(pos_)) + "'");
    return e;
  }

  Assignment assignment() {
    const std::string name = identifier();
    const auto idx = lookup(name);
    if (!accept(":=")) fail("expected ':=' after '" + name + "'");
    Expr value = disjunction();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(text_.substr(pos_)) + "'");
    const ValueType declared = type_of(vars_[idx].initial);
    if (value.type() != declared) {
      fail("cannot assign " + std::string(to_string(value.type())) + " to " + std::string(to_string(declared)) +
           " variable '" + name + "'");
    }
    return Assignment{idx, std::move(value)};
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ProgramError("in '" + std::string(text_) + "' at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_space();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }

  // Wraps construction so type errors carry the position.
  template <typename F>
  Expr build(F&& f) {
    try {
      return f();
    } catch (const ProgramError& e) {
      fail(e.what());
    }
  }

  Expr disjunction() {
    Expr e = conjunction();
    while (accept("||")) {
      Expr rhs = conjunction();
      e = build([&] { return Expr::binary(Expr::Op::Or, std::move(e), std::move(rhs)); });
    }
    return e;
  }

  Expr conjunction() {
    Expr e = negation();
    while (accept("&&")) {
      Expr rhs = negation();
      e = build([&] { return Expr::binary(Expr::Op::And, std::move(e), std::move(rhs)); });
    }
    return e;
  }

  Expr negation() {
    skip_space();
    if (text_.substr(pos_, 1) == "!" && text_.substr(pos_, 2) != "!=") {
      ++pos_;
      Expr operand = negation();
      return build([&] { return Expr::unary(Expr::Op::Not, std::move(operand)); });
    }
    return comparison();
  }

  Expr comparison() {
    Expr lhs = additive();
    static constexpr std::pair<std::string_view, Expr::Op> kOps[] = {
        {"==", Expr::Op::Eq}, {"!=", Expr::Op::Ne}, {"<=", Expr::Op::Le},
        {">=", Expr::Op::Ge}, {"<", Expr::Op::Lt},  {">", Expr::Op::Gt},
    };
    for (const auto& [tok, op] : kOps) {
      if (accept(tok)) {
        Expr rhs = additive();
        return build([&, op = op] { return Expr::binary(op, std::move(lhs), std::move(rhs)); });
      }
    }
    return lhs;
  }

  Expr additive() {
    Expr e = unary_minus();
    while (true) {
      skip_space();
      Expr::Op op;
      if (accept("+")) op = Expr::Op::Add;
      else if (text_.substr(pos_, 1) == "-") { ++pos_; op = Expr::Op::Sub; }
      else return e;
      Expr rhs = unary_minus();
      e = build([&] { return Expr::binary(op, std::move(e), std::move(rhs)); });
    }
  }

  Expr unary_minus() {
    skip_space();
    if (text_.substr(pos_, 1) == "-") {
      ++pos_;
      Expr operand = unary_minus();
      return build([&] { return Expr::unary(Expr::Op::Neg, std::move(operand)); });
    }
    return primary();
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = disjunction();
      if (!accept(")")) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      std::int64_t v = 0;
      const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + end, v);
      if (ec != std::errc{}) fail("integer literal out of range");
      pos_ = end;
      return Expr::constant(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::string name = identifier();
      if (name == "true") return Expr::constant(true);
      if (name == "false") return Expr::constant(false);
      const auto idx = lookup(name);
      return Expr::variable(idx, type_of(vars_[idx].initial));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string identifier() {
    skip_space();
    std::size_t end = pos_;
    while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) ++end;
    if (end == pos_ || std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected an identifier");
    std::string name(text_.substr(pos_, end - pos_));
    pos_ = end;
    return name;
  }

  std::size_t lookup(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i].name == name) return i;
    }
    throw ProgramError("in '" + std::string(text_) + "': undeclared variable '" + name + "'");
  }

  std::string_view text_;
  const std::vector<Variable>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view text, const std::vector<Variable>& vars) {
  return ExprParser(text, vars).parse_all();
}

Assignment parse_assignment(std::string_view text, const std::vector<Variable>& vars) {
  return ExprParser(text, vars).assignment();
}

}  // namespace ltlsmc
