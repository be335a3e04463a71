#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <set>

#include "prefkb/error.hpp"
#include "prefkb/query.hpp"

namespace prefkb {

namespace {

enum class Tok { Var, Ident, String, Integer, LBrace, RBrace, LParen, RParen, Dot, Semicolon, End };

struct Token {
  Tok kind;
  std::string text;
  std::int64_t number = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == ':' || c == '/' || c == '~';
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Var: return "'?" + t.text + "'";
    case Tok::Ident: return "'" + t.text + "'";
    case Tok::String: return "string literal";
    case Tok::Integer: return "integer literal";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Dot: return "'.'";
    case Tok::Semicolon: return "';'";
    case Tok::End: return "end of input";
  }
  return "token";
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance();
      continue;
    }
    Token tok{Tok::End, {}, 0, line, col};
    switch (c) {
      case '{': tok.kind = Tok::LBrace; advance(); out.push_back(tok); continue;
      case '}': tok.kind = Tok::RBrace; advance(); out.push_back(tok); continue;
      case '(': tok.kind = Tok::LParen; advance(); out.push_back(tok); continue;
      case ')': tok.kind = Tok::RParen; advance(); out.push_back(tok); continue;
      case '.': tok.kind = Tok::Dot; advance(); out.push_back(tok); continue;
      case ';': tok.kind = Tok::Semicolon; advance(); out.push_back(tok); continue;
      default: break;
    }
    if (c == '?') {
      advance();
      std::size_t start = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) advance();
      if (i == start) throw SyntaxError("expected a variable name after '?'", tok.line, tok.column);
      tok.kind = Tok::Var;
      tok.text = std::string(text.substr(start, i - start));
    } else if (c == '"') {
      advance();
      tok.kind = Tok::String;
      while (true) {
        if (i >= text.size()) throw SyntaxError("unterminated string literal", tok.line, tok.column);
        char d = text[i];
        if (d == '"') {
          advance();
          break;
        }
        if (d == '\\') {
          advance();
          if (i >= text.size()) throw SyntaxError("unterminated string literal", tok.line, tok.column);
          d = text[i];
        }
        tok.text += d;
        advance();
      }
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      std::size_t start = i;
      advance();
      while (i < text.size() && is_name_char(text[i])) advance();
      const auto lexeme = text.substr(start, i - start);
      auto [ptr, ec] = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), tok.number);
      if (ec == std::errc() && ptr == lexeme.data() + lexeme.size()) {
        tok.kind = Tok::Integer;
      } else if (c != '-' && std::all_of(lexeme.begin(), lexeme.end(), is_name_char) && ec != std::errc::result_out_of_range) {
        tok.kind = Tok::Ident;
        tok.text = std::string(lexeme);
      } else {
        throw SyntaxError("malformed integer literal '" + std::string(lexeme) + "'", tok.line, tok.column);
      }
    } else if (is_name_char(c)) {
      std::size_t start = i;
      while (i < text.size() && is_name_char(text[i])) advance();
      tok.kind = Tok::Ident;
      tok.text = std::string(text.substr(start, i - start));
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", tok.line, tok.column);
    }
    out.push_back(std::move(tok));
  }
  out.push_back({Tok::End, {}, 0, line, col});
  return out;
}

bool keyword(const Token& t, std::string_view kw) {
  if (t.kind != Tok::Ident || t.text.size() != kw.size()) return false;
  for (std::size_t i = 0; i < kw.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(t.text[i])) != kw[i]) return false;
  }
  return true;
}

void collect_vars(const TriplePattern& p, std::set<std::string>& out) {
  if (p.subject.is_variable()) out.insert(p.subject.text);
  if (p.object.is_variable()) out.insert(p.object.text);
}

struct PendingBlock {
  std::vector<TriplePattern> patterns;
  /// For NOT IN: inner variables other than `excluded` are private, and
  /// `excluded` stands for `linked`.
  bool scoped = false;
  std::string excluded;
  Term linked;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  QueryAst parse() {
    expect_keyword("SELECT");
    std::vector<Token> select_toks;
    while (peek().kind == Tok::Var) select_toks.push_back(next());
    if (select_toks.empty()) fail(peek(), "expected at least one variable after SELECT");
    expect_keyword("WHERE");
    expect(Tok::LBrace, "'{' to open the WHERE clause");
    std::optional<Term> last_subject;
    parse_group(Tok::RBrace, ast_.where, &blocks_, last_subject);
    expect(Tok::RBrace, "'}' to close the WHERE clause");
    if (peek().kind != Tok::End) fail(peek(), "unexpected " + describe(peek()) + " after the query");

    std::set<std::string> outer;
    for (const auto& p : ast_.where) collect_vars(p, outer);
    std::set<std::string> seen_select;
    for (const auto& t : select_toks) {
      if (!outer.count(t.text)) fail(t, "select variable '?" + t.text + "' does not occur in the WHERE clause");
      if (seen_select.insert(t.text).second) ast_.select.push_back(t.text);
    }
    finish_blocks(outer);
    return std::move(ast_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  [[noreturn]] static void fail(const Token& t, const std::string& message) {
    throw SyntaxError(message, t.line, t.column);
  }
  const Token& expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail(peek(), "expected " + what + ", found " + describe(peek()));
    return next();
  }
  void expect_keyword(std::string_view kw) {
    if (!keyword(peek(), kw)) fail(peek(), "expected " + std::string(kw) + ", found " + describe(peek()));
    next();
  }

  static bool ends_statement(Tok k) {
    return k == Tok::Dot || k == Tok::Semicolon || k == Tok::RBrace || k == Tok::RParen;
  }

  Term parse_term(const Token& t) {
    switch (t.kind) {
      case Tok::Var: return Term::variable(t.text);
      case Tok::Ident: return Term::name(t.text);
      case Tok::String: return Term::string(t.text);
      case Tok::Integer: return Term::integer(t.number);
      default: fail(t, "expected a variable, name or literal, found " + describe(t));
    }
  }

  Term parse_subject() {
    const Token& t = next();
    if (t.kind != Tok::Var && t.kind != Tok::Ident) fail(t, "expected a subject, found " + describe(t));
    return parse_term(t);
  }

  std::string parse_predicate(const Token& t) {
    if (t.kind != Tok::Ident) fail(t, "expected a predicate, found " + describe(t));
    return t.text;
  }

  TriplePattern finish_triple(Term subject, const Token& pred_tok) {
    const std::string predicate = parse_predicate(pred_tok);
    if (ends_statement(peek().kind) || peek().kind == Tok::End) {
      fail(pred_tok, "predicate '" + predicate + "' has no object (found " + describe(peek()) + ")");
    }
    const Token& obj_tok = next();
    Term object = parse_term(obj_tok);
    if (predicate == "a" && object.kind != Term::Kind::Name) fail(obj_tok, "'a' must be followed by a concept name");
    return {std::move(subject), predicate, std::move(object)};
  }

  // Statements up to (not including) `close`. `blocks` is null inside nested groups.
  void parse_group(Tok close, std::vector<TriplePattern>& out, std::vector<PendingBlock>* blocks,
                   std::optional<Term>& last_subject) {
    while (peek().kind != close) {
      const Token& head = peek();
      if (head.kind == Tok::End) fail(head, "expected " + describe(Token{close, {}}) + " before end of input");
      if (head.kind == Tok::Dot) {
        next();
        continue;
      }
      if (keyword(head, "FILTER") && keyword(peek(1), "NOT")) {
        if (!blocks) fail(head, "nested negation is not supported");
        next();
        next();
        expect_keyword("EXISTS");
        expect(Tok::LBrace, "'{' after FILTER NOT EXISTS");
        PendingBlock block;
        std::optional<Term> inner_last;
        parse_group(Tok::RBrace, block.patterns, nullptr, inner_last);
        expect(Tok::RBrace, "'}' to close FILTER NOT EXISTS");
        if (block.patterns.empty()) fail(head, "empty FILTER NOT EXISTS block");
        blocks->push_back(std::move(block));
        continue;
      }
      if (keyword(head, "NOT") && keyword(peek(1), "IN")) {
        if (!blocks) fail(head, "nested negation is not supported");
        if (!last_subject) fail(head, "NOT IN needs a preceding statement whose subject it restricts");
        next();
        next();
        blocks->push_back(parse_not_in(*last_subject));
        continue;
      }
      parse_statement(out, last_subject);
    }
  }

  void parse_statement(std::vector<TriplePattern>& out, std::optional<Term>& last_subject) {
    const Token& first = peek();
    Term subject;
    const Token* pred_tok = nullptr;
    // "pred obj ." with no subject continues the previous subject.
    if (first.kind == Tok::Ident && peek(1).kind != Tok::End && !ends_statement(peek(1).kind) &&
        ends_statement(peek(2).kind)) {
      if (!last_subject) fail(first, "statement has no subject");
      subject = *last_subject;
      pred_tok = &next();
    } else {
      subject = parse_subject();
      pred_tok = &next();
    }
    out.push_back(finish_triple(subject, *pred_tok));
    while (peek().kind == Tok::Semicolon) {
      next();
      if (peek().kind == Tok::Dot || peek().kind == Tok::Semicolon || peek().kind == Tok::RBrace ||
          peek().kind == Tok::RParen) {
        continue;
      }
      const Token& p = next();
      out.push_back(finish_triple(subject, p));
    }
    last_subject = subject;
    if (peek().kind == Tok::Dot) next();
  }

  PendingBlock parse_not_in(const Term& linked) {
    expect(Tok::LParen, "'(' after NOT IN");
    expect_keyword("SELECT");
    const Token& var = expect(Tok::Var, "the excluded variable");
    expect_keyword("WHERE");
    PendingBlock block;
    block.scoped = true;
    std::optional<Term> inner_last;
    if (peek().kind == Tok::LBrace) {
      next();
      parse_group(Tok::RBrace, block.patterns, nullptr, inner_last);
      expect(Tok::RBrace, "'}' to close the subquery");
    } else {
      parse_group(Tok::RParen, block.patterns, nullptr, inner_last);
    }
    expect(Tok::RParen, "')' to close NOT IN");
    if (block.patterns.empty()) fail(var, "empty NOT IN subquery");
    bool occurs = false;
    for (const auto& p : block.patterns) {
      for (const Term* t : {&p.subject, &p.object}) occurs = occurs || (t->is_variable() && t->text == var.text);
    }
    block.excluded = var.text;
    block.linked = linked;
    if (!occurs) fail(var, "subquery variable '?" + var.text + "' does not occur in its WHERE clause");
    return block;
  }

  void finish_blocks(const std::set<std::string>& outer) {
    std::set<std::string> taken = outer;
    for (const auto& b : blocks_) {
      for (const auto& p : b.patterns) collect_vars(p, taken);
    }
    for (auto& b : blocks_) {
      if (b.scoped) {
        std::set<std::string> inner;
        for (const auto& p : b.patterns) collect_vars(p, inner);
        for (const auto& v : inner) {
          if (v == b.excluded || !outer.count(v)) continue;
          std::string fresh;
          for (int n = 1;; ++n) {
            fresh = v + "_" + std::to_string(n);
            if (!taken.count(fresh)) break;
          }
          taken.insert(fresh);
          for (auto& p : b.patterns) {
            for (Term* t : {&p.subject, &p.object}) {
              if (t->is_variable() && t->text == v) t->text = fresh;
            }
          }
        }
        for (auto& p : b.patterns) {
          for (Term* t : {&p.subject, &p.object}) {
            if (t->is_variable() && t->text == b.excluded) *t = b.linked;
          }
        }
      }
      NotExistsBlock block;
      block.patterns = std::move(b.patterns);
      std::set<std::string> vars;
      for (const auto& p : block.patterns) collect_vars(p, vars);
      for (const auto& v : vars) {
        if (!outer.count(v)) block.local_vars.push_back(v);
      }
      ast_.not_exists.push_back(std::move(block));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  QueryAst ast_;
  std::vector<PendingBlock> blocks_;
};

void print_pattern(std::string& out, const TriplePattern& p, const char* indent) {
  out += indent;
  out += p.subject.to_string();
  out += ' ';
  out += p.predicate;
  out += ' ';
  out += p.object.to_string();
  out += " .\n";
}

}  // namespace

std::string Term::to_string() const {
  switch (kind) {
    case Kind::Variable: return "?" + text;
    case Kind::Name: return text;
    case Kind::String: return Value::string(text).to_string();
    case Kind::Integer: return std::to_string(number);
  }
  return text;
}

QueryAst parse_query(std::string_view text) { return Parser(text).parse(); }

std::string print_query(const QueryAst& query) {
  std::string out = "SELECT";
  for (const auto& v : query.select) out += " ?" + v;
  out += " WHERE {\n";
  for (const auto& p : query.where) print_pattern(out, p, "  ");
  for (const auto& block : query.not_exists) {
    out += "  FILTER NOT EXISTS {\n";
    for (const auto& p : block.patterns) print_pattern(out, p, "    ");
    out += "  }\n";
  }
  out += "}\n";
  return out;
}

}  // namespace prefkb
