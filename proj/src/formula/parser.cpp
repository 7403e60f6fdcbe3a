#include <cctype>
#include <charconv>

#include "ltlsmc/formula.hpp"

namespace ltlsmc {

ParseError::ParseError(std::size_t line, std::size_t column, std::string token, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

namespace {

enum class Tok {
  Ident,
  Int,
  True,
  False,
  Not,
  And,
  Or,
  Next,
  Until,
  WeakUntil,
  Finally,
  Globally,
  LParen,
  RParen,
  Cmp,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;  // 1-based
  CompareOp cmp = CompareOp::Eq;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "end of input", pos_ + 1});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  Token next() {
    const std::size_t start = pos_;
    const char c = text_[pos_];
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < text_.size() && text_[pos_ + 1] == b;
    };
    auto emit = [&](Tok k, std::size_t len, CompareOp op = CompareOp::Eq) {
      pos_ += len;
      return Token{k, std::string(text_.substr(start, len)), start + 1, op};
    };

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      const std::string_view word = text_.substr(pos_, end - pos_);
      Tok kind = Tok::Ident;
      if (word == "true") kind = Tok::True;
      else if (word == "false") kind = Tok::False;
      else if (word == "X") kind = Tok::Next;
      else if (word == "U") kind = Tok::Until;
      else if (word == "W") kind = Tok::WeakUntil;
      else if (word == "F") kind = Tok::Finally;
      else if (word == "G") kind = Tok::Globally;
      return emit(kind, word.size());
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      std::size_t end = pos_ + 1;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      return emit(Tok::Int, end - pos_);
    }
    if (two('&', '&')) return emit(Tok::And, 2);
    if (two('|', '|')) return emit(Tok::Or, 2);
    if (two('=', '=')) return emit(Tok::Cmp, 2, CompareOp::Eq);
    if (two('!', '=')) return emit(Tok::Cmp, 2, CompareOp::Ne);
    if (two('<', '=')) return emit(Tok::Cmp, 2, CompareOp::Le);
    if (two('>', '=')) return emit(Tok::Cmp, 2, CompareOp::Ge);
    if (c == '<') return emit(Tok::Cmp, 1, CompareOp::Lt);
    if (c == '>') return emit(Tok::Cmp, 1, CompareOp::Gt);
    if (c == '!') return emit(Tok::Not, 1);
    if (c == '(') return emit(Tok::LParen, 1);
    if (c == ')') return emit(Tok::RParen, 1);

    // Anything else is not part of the token set. Report the whole run of
    // punctuation so that e.g. `&` or `->` shows up intact.
    std::size_t end = pos_ + 1;
    while (end < text_.size() && std::ispunct(static_cast<unsigned char>(text_[end])) &&
           text_[end] != '(' && text_[end] != ')')
      ++end;
    const std::string bad(text_.substr(pos_, end - pos_));
    throw ParseError(line_, start + 1, bad, "unknown operator token '" + bad + "'");
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::size_t line) : toks_(std::move(tokens)), line_(line) {}

  Formula run() {
    Formula f = disjunction();
    if (peek().kind != Tok::End) fail("unexpected token '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line_, peek().column, peek().text, what);
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek().kind == Tok::Or) {
      take();
      f = Formula::disjunction(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = until();
    while (peek().kind == Tok::And) {
      take();
      f = Formula::conjunction(f, until());
    }
    return f;
  }

  Formula until() {
    Formula lhs = unary();
    if (peek().kind == Tok::Until) {
      take();
      return Formula::until(lhs, until());
    }
    if (peek().kind == Tok::WeakUntil) {
      take();
      return Formula::weak_until(lhs, until());
    }
    return lhs;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::Not: take(); return Formula::negation(unary());
      case Tok::Next: take(); return Formula::next(unary());
      case Tok::Finally: take(); return Formula::eventually(unary());
      case Tok::Globally: take(); return Formula::always(unary());
      default: return primary();
    }
  }

  Formula primary() {
    switch (peek().kind) {
      case Tok::True: take(); return Formula::truth();
      case Tok::False: take(); return Formula::falsity();
      case Tok::LParen: {
        take();
        Formula f = disjunction();
        if (peek().kind != Tok::RParen) fail("expected ')' but found '" + peek().text + "'");
        take();
        return f;
      }
      case Tok::Ident: return atom();
      case Tok::End: fail("unexpected end of input");
      default: fail("unexpected token '" + peek().text + "'");
    }
  }

  Formula atom() {
    std::string lhs = take().text;
    if (peek().kind != Tok::Cmp) return Formula::atom(Atom::identifier(std::move(lhs)));
    const CompareOp op = take().cmp;
    if (peek().kind == Tok::Ident) {
      return Formula::atom(Atom::comparison(std::move(lhs), op, take().text));
    }
    if (peek().kind == Tok::Int) {
      const Token t = peek();
      std::int64_t value = 0;
      const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
      if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) fail("integer literal out of range");
      take();
      return Formula::atom(Atom::comparison(std::move(lhs), op, value));
    }
    fail("expected variable or integer after '" + std::string(to_string(op)) + "'");
  }

  std::vector<Token> toks_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_property(std::string_view text, std::size_t line) {
  return Parser(Lexer(text, line).run(), line).run();
}

std::vector<PropertyLine> parse_property_file(std::string_view contents) {
  std::vector<PropertyLine> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= contents.size()) {
    std::size_t eol = contents.find('\n', pos);
    if (eol == std::string_view::npos) eol = contents.size();
    std::string_view line = contents.substr(pos, eol - pos);
    ++line_no;
    pos = eol + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    const auto last = line.find_last_not_of(" \t");
    line = line.substr(first, last - first + 1);
    try {
      Formula f = parse_property(line, line_no);
      out.push_back(PropertyLine{line_no, std::string(line), std::move(f)});
    } catch (const ParseError& e) {
      // Columns are relative to the trimmed text; report them against the file line.
      const std::string_view message = e.what();
      const auto colon = message.find(": ");
      throw ParseError(e.line(), e.column() + first, e.token(),
                       std::string(message.substr(colon == std::string_view::npos ? 0 : colon + 2)));
    }
  }
  return out;
}

}  // namespace ltlsmc
