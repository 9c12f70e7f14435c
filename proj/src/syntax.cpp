#include "lfp/syntax.hpp"

#include <cctype>
#include <charconv>
#include <optional>

#include "lfp/combinators.hpp"

namespace lfp {

SyntaxError::SyntaxError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

UnboundConstant::UnboundConstant(const std::string& name, std::size_t line, std::size_t column)
    : SyntaxError("unbound constant '" + name + "'", line, column), name_(name) {}

void Definitions::define(const std::string& name, Term t) {
  auto it = index_.find(name);
  if (it != index_.end()) {
    entries_[it->second].second = std::move(t);
    return;
  }
  index_.emplace(name, entries_.size());
  entries_.emplace_back(name, std::move(t));
}

const Term* Definitions::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &entries_[it->second].second;
}

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::optional<std::size_t> y_index(std::string_view s) {
  if (s.size() < 3 || s.substr(0, 2) != "Y_") return std::nullopt;
  std::size_t n = 0;
  auto digits = s.substr(2);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
  return n;
}

enum class Tok { Lambda, Dot, LParen, RParen, Ident, Constant, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  Lexer(std::string_view src, std::size_t line) : src_(src), line_(line) {}

  Token next() {
    skip_space();
    std::size_t line = line_;
    std::size_t col = column_;
    if (pos_ >= src_.size()) return {Tok::End, "", line, col};
    char c = src_[pos_];
    if (c == '\\') return advance(1, Tok::Lambda, line, col);
    if (static_cast<unsigned char>(c) == 0xCE && pos_ + 1 < src_.size() &&
        static_cast<unsigned char>(src_[pos_ + 1]) == 0xBB) {
      return advance(2, Tok::Lambda, line, col);
    }
    if (c == '.') return advance(1, Tok::Dot, line, col);
    if (c == '(') return advance(1, Tok::LParen, line, col);
    if (c == ')') return advance(1, Tok::RParen, line, col);
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < src_.size() && ident_char(src_[end])) ++end;
      Tok kind = std::islower(static_cast<unsigned char>(c)) ? Tok::Ident : Tok::Constant;
      return advance(end - pos_, kind, line, col);
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
  }

 private:
  Token advance(std::size_t n, Tok kind, std::size_t line, std::size_t col) {
    Token t{kind, std::string(src_.substr(pos_, n)), line, col};
    pos_ += n;
    column_ += 1;  // one code point
    if (kind == Tok::Ident || kind == Tok::Constant) column_ += n - 1;
    return t;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        column_ = 1;
        ++pos_;
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++column_;
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t column_ = 1;
};

class Parser {
 public:
  Parser(std::string_view src, const Definitions& defs, std::size_t line) : lex_(src, line), defs_(defs) {
    cur_ = lex_.next();
  }

  Term parse_all() {
    Term t = term();
    if (cur_.kind != Tok::End) fail("unexpected '" + cur_.text + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, cur_.line, cur_.column); }

  void shift() { cur_ = lex_.next(); }

  bool starts_atom() const {
    return cur_.kind == Tok::Ident || cur_.kind == Tok::Constant || cur_.kind == Tok::LParen;
  }

  Term term() {
    if (cur_.kind == Tok::Lambda) return lambda();
    if (!starts_atom()) fail(cur_.kind == Tok::End ? "unexpected end of input" : "expected a term");
    Term t = atom();
    while (starts_atom() || cur_.kind == Tok::Lambda) {
      if (cur_.kind == Tok::Lambda) return app(t, lambda());
      t = app(t, atom());
    }
    return t;
  }

  Term lambda() {
    shift();
    std::vector<Name> binders;
    while (cur_.kind == Tok::Ident) {
      binders.push_back(cur_.text);
      shift();
    }
    if (binders.empty()) fail("expected a binder after lambda");
    if (cur_.kind != Tok::Dot) fail("expected '.'");
    shift();
    Term body = term();
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = lam(*it, body);
    return body;
  }

  Term atom() {
    if (cur_.kind == Tok::Ident) {
      Term t = var(cur_.text);
      shift();
      return t;
    }
    if (cur_.kind == Tok::Constant) {
      Term t = constant(cur_);
      shift();
      return t;
    }
    shift();  // '('
    Term t = term();
    if (cur_.kind != Tok::RParen) fail("expected ')'");
    shift();
    return t;
  }

  Term constant(const Token& tok) const {
    if (const Term* d = defs_.find(tok.text)) return *d;
    if (tok.text == "Y") return y_combinator();
    if (tok.text == "THETA") return theta();
    if (auto n = y_index(tok.text)) return y_n(*n);
    throw UnboundConstant(tok.text, tok.line, tok.column);
  }

  Lexer lex_;
  const Definitions& defs_;
  Token cur_;
};

}  // namespace

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!ident_char(c)) return false;
  }
  return true;
}

bool is_constant_name(std::string_view s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!ident_char(c)) return false;
  }
  return true;
}

bool is_builtin_constant(std::string_view s) { return s == "Y" || s == "THETA" || y_index(s).has_value(); }

Term parse(std::string_view src, const Definitions& defs) { return Parser(src, defs, 1).parse_all(); }

Definitions parse_definitions(std::string_view src, const Definitions& base) {
  Definitions defs = base;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= src.size()) {
    std::size_t end = src.find('\n', start);
    if (end == std::string_view::npos) end = src.size();
    std::string_view line = src.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw SyntaxError("expected 'NAME = term'", line_no, first + 1);
    std::string_view lhs = line.substr(first, eq - first);
    while (!lhs.empty() && std::isspace(static_cast<unsigned char>(lhs.back()))) lhs.remove_suffix(1);
    if (!is_constant_name(lhs)) throw SyntaxError("definition name must be uppercase-initial", line_no, first + 1);
    if (is_builtin_constant(lhs)) throw SyntaxError("cannot redefine built-in '" + std::string(lhs) + "'", line_no, first + 1);
    if (defs.find(std::string(lhs))) throw SyntaxError("duplicate definition '" + std::string(lhs) + "'", line_no, first + 1);
    // Column offsets inside the right-hand side are reported relative to the line.
    std::string padded(eq + 1, ' ');
    padded.append(line.substr(eq + 1));
    defs.define(std::string(lhs), Parser(padded, defs, line_no).parse_all());
    if (end == src.size()) break;
  }
  return defs;
}

std::size_t DescriptorTable::index_of(const TagPtr& tag) {
  for (std::size_t i = 0; i < tags_.size(); ++i) {
    if (tags_[i] == tag || tags_[i]->same_variable(*tag)) return i;
  }
  tags_.push_back(tag);
  return tags_.size() - 1;
}

namespace {

void print_rec(const Term& t, std::string& out, DescriptorTable* table) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out += t.name();
      return;
    case Term::Kind::Tracked:
      if (!table) throw std::invalid_argument("cannot print tracked variable without a descriptor table");
      out += "⟨υ:" + std::to_string(table->index_of(t.tag_ptr())) + "⟩";
      return;
    case Term::Kind::Lam:
      out += '\\';
      out += t.binder();
      out += '.';
      print_rec(t.body(), out, table);
      return;
    case Term::Kind::App: {
      const Term& f = t.fun();
      if (f.is_lam()) {
        out += '(';
        print_rec(f, out, table);
        out += ')';
      } else {
        print_rec(f, out, table);
      }
      out += ' ';
      const Term& a = t.arg();
      if (a.is_app() || a.is_lam()) {
        out += '(';
        print_rec(a, out, table);
        out += ')';
      } else {
        print_rec(a, out, table);
      }
      return;
    }
  }
}

}  // namespace

std::string print(const Term& t) {
  std::string out;
  print_rec(t, out, nullptr);
  return out;
}

std::string print(const Term& t, DescriptorTable& table) {
  std::string out;
  print_rec(t, out, &table);
  return out;
}

}  // namespace lfp
