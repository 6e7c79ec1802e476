#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tauq/almost_split.hpp"
#include "tauq/classify.hpp"

namespace tauq {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Field-agnostic workspace file: the line-oriented text format.
// ---------------------------------------------------------------------------

struct TermDecl {
  Rational coef;
  std::vector<std::string> monomial;  // arrow ids, right to left
  int line = 0, col = 0;
};

struct MatrixDecl {
  std::string arrow;
  std::vector<std::vector<Rational>> entries;
  int line = 0, col = 0;
};

struct ModuleDecl {
  std::string name;
  std::vector<std::pair<std::string, std::size_t>> dims;  // vertex -> dimension
  std::vector<MatrixDecl> mats;
  int line = 0, col = 0;
};

struct WorkspaceData {
  long long field_p = 0;  // 0 means the rationals
  std::vector<std::string> vertices;
  struct ArrowDecl {
    std::string id, src, tgt;
  };
  std::vector<ArrowDecl> arrows;
  std::vector<std::vector<TermDecl>> relations;
  std::vector<std::string> boundary;
  std::vector<ModuleDecl> modules;
};

namespace detail {

struct Token {
  enum class Kind { ident, number, punct, end };
  Kind kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) {}

  Token next() {
    skip_space_and_comments();
    if (pos_ >= s_.size()) return {Token::Kind::end, "", line_, col_};
    const int l = line_, c = col_;
    const char ch = s_[pos_];
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::string id;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        id += advance();
      return {Token::Kind::ident, id, l, c};
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string num;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        num += advance();
      return {Token::Kind::number, num, l, c};
    }
    if (ch == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
      advance(), advance();
      return {Token::Kind::punct, "->", l, c};
    }
    advance();
    return {Token::Kind::punct, std::string(1, ch), l, c};
  }

  int line() const { return line_; }

 private:
  char advance() {
    const char ch = s_[pos_++];
    if (ch == '\n') ++line_, col_ = 1;
    else ++col_;
    return ch;
  }

  void skip_space_and_comments() {
    for (;;) {
      while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
        advance();
      if (pos_ < s_.size() && s_[pos_] == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance();
        continue;
      }
      return;
    }
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) { bump(); }

  WorkspaceData parse() {
    WorkspaceData ws;
    bool field_seen = false;
    while (tok_.kind != Token::Kind::end) {
      const Token head = expect_ident("declaration keyword");
      if (head.text == "field") {
        parse_field(ws);
        field_seen = true;
      } else if (head.text == "vertex") {
        while (tok_.kind == Token::Kind::ident || tok_.kind == Token::Kind::number)
          ws.vertices.push_back(take_name());
      } else if (head.text == "arrow") {
        WorkspaceData::ArrowDecl a;
        // Arrow ids must be identifiers so relation monomials stay
        // unambiguous next to numeric coefficients.
        a.id = expect_ident("arrow id").text;
        expect_punct(":");
        a.src = take_name();
        expect_punct("->");
        a.tgt = take_name();
        ws.arrows.push_back(std::move(a));
      } else if (head.text == "relation") {
        ws.relations.push_back(parse_relation());
      } else if (head.text == "boundary") {
        while (tok_.kind == Token::Kind::ident || tok_.kind == Token::Kind::number)
          ws.boundary.push_back(take_name());
      } else if (head.text == "module") {
        ws.modules.push_back(parse_module(head));
      } else {
        throw parse_error("unknown declaration '" + head.text + "'", head.line, head.col);
      }
    }
    if (!field_seen) throw parse_error("missing field declaration", 1, 1);
    return ws;
  }

 private:
  void bump() { tok_ = lex_.next(); }

  Token expect_ident(const std::string& what) {
    if (tok_.kind != Token::Kind::ident)
      throw parse_error("expected " + what, tok_.line, tok_.col);
    Token t = tok_;
    bump();
    return t;
  }

  // Vertex/arrow/module names may be plain identifiers or bare numbers.
  std::string take_name() {
    if (tok_.kind != Token::Kind::ident && tok_.kind != Token::Kind::number)
      throw parse_error("expected a name", tok_.line, tok_.col);
    std::string t = tok_.text;
    bump();
    return t;
  }

  void expect_punct(const std::string& p) {
    if (tok_.kind != Token::Kind::punct || tok_.text != p)
      throw parse_error("expected '" + p + "'", tok_.line, tok_.col);
    bump();
  }

  bool accept_punct(const std::string& p) {
    if (tok_.kind == Token::Kind::punct && tok_.text == p) {
      bump();
      return true;
    }
    return false;
  }

  long long take_integer() {
    if (tok_.kind != Token::Kind::number)
      throw parse_error("expected a number", tok_.line, tok_.col);
    long long v = std::stoll(tok_.text);
    bump();
    return v;
  }

  void parse_field(WorkspaceData& ws) {
    const Token t = tok_;
    const std::string name = take_name();
    if (name == "Q") {
      ws.field_p = 0;
      return;
    }
    if (name == "F") {
      const long long p = take_integer();
      for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw parse_error("field order must be prime", t.line, t.col);
      if (p < 2) throw parse_error("field order must be prime", t.line, t.col);
      ws.field_p = p;
      return;
    }
    throw parse_error("field must be Q or F <p>", t.line, t.col);
  }

  Rational parse_coefficient(bool negative) {
    const long long num = take_integer();
    long long den = 1;
    if (accept_punct("/")) den = take_integer();
    Rational r(num, den);
    return negative ? -r : r;
  }

  std::vector<TermDecl> parse_relation() {
    std::vector<TermDecl> terms;
    bool negative = accept_punct("-");
    for (;;) {
      TermDecl term;
      term.line = tok_.line;
      term.col = tok_.col;
      if (tok_.kind == Token::Kind::number) {
        term.coef = parse_coefficient(negative);
        expect_punct("*");
      } else {
        term.coef = negative ? Rational(-1) : Rational(1);
      }
      term.monomial.push_back(expect_ident("arrow id").text);
      while (accept_punct("*")) term.monomial.push_back(expect_ident("arrow id").text);
      terms.push_back(std::move(term));
      if (accept_punct("+")) negative = false;
      else if (accept_punct("-")) negative = true;
      else break;
    }
    return terms;
  }

  std::vector<std::vector<Rational>> parse_matrix() {
    std::vector<std::vector<Rational>> rows;
    expect_punct("[");
    while (accept_punct("[")) {
      std::vector<Rational> row;
      if (!accept_punct("]")) {
        for (;;) {
          bool neg = accept_punct("-");
          row.push_back(parse_coefficient(neg));
          if (!accept_punct(",")) break;
        }
        expect_punct("]");
      }
      rows.push_back(std::move(row));
      if (!accept_punct(",")) break;
    }
    expect_punct("]");
    return rows;
  }

  ModuleDecl parse_module(const Token& head) {
    ModuleDecl mod;
    mod.line = head.line;
    mod.col = head.col;
    mod.name = take_name();
    expect_punct("{");
    while (!accept_punct("}")) {
      const Token key = expect_ident("dim or mat");
      if (key.text == "dim") {
        std::string v = take_name();
        expect_punct("=");
        const long long n = take_integer();
        if (n < 0) throw parse_error("negative dimension", key.line, key.col);
        mod.dims.emplace_back(std::move(v), static_cast<std::size_t>(n));
      } else if (key.text == "mat") {
        MatrixDecl md;
        md.line = key.line;
        md.col = key.col;
        md.arrow = take_name();
        expect_punct("=");
        md.entries = parse_matrix();
        mod.mats.push_back(std::move(md));
      } else {
        throw parse_error("expected dim or mat", key.line, key.col);
      }
      expect_punct(";");
    }
    return mod;
  }

  Lexer lex_;
  Token tok_{Token::Kind::end, "", 0, 0};
};

inline std::string rational_str(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

}  // namespace detail

inline WorkspaceData parse_workspace(const std::string& text) {
  return detail::Parser(text).parse();
}

/// Canonical text form; parse(print(ws)) reproduces ws.
inline std::string print_workspace(const WorkspaceData& ws) {
  std::ostringstream os;
  if (ws.field_p == 0) os << "field Q\n";
  else os << "field F " << ws.field_p << "\n";
  os << "vertex";
  for (const auto& v : ws.vertices) os << " " << v;
  os << "\n";
  for (const auto& a : ws.arrows)
    os << "arrow " << a.id << ": " << a.src << " -> " << a.tgt << "\n";
  for (const auto& rel : ws.relations) {
    os << "relation ";
    for (std::size_t i = 0; i < rel.size(); ++i) {
      Rational c = rel[i].coef;
      if (i == 0) {
        if (c < 0) {
          os << "-";
          c = -c;
        }
      } else {
        os << (c < 0 ? " - " : " + ");
        if (c < 0) c = -c;
      }
      if (c != 1) os << detail::rational_str(c) << "*";
      for (std::size_t j = 0; j < rel[i].monomial.size(); ++j)
        os << (j ? "*" : "") << rel[i].monomial[j];
    }
    os << "\n";
  }
  if (!ws.boundary.empty()) {
    os << "boundary";
    for (const auto& v : ws.boundary) os << " " << v;
    os << "\n";
  }
  for (const auto& mod : ws.modules) {
    os << "module " << mod.name << " {";
    for (const auto& [v, n] : mod.dims)
      if (n > 0) os << " dim " << v << " = " << n << ";";
    for (const auto& md : mod.mats) {
      bool nonzero = false;
      for (const auto& row : md.entries)
        for (const auto& e : row)
          if (e != 0) nonzero = true;
      if (!nonzero) continue;
      os << " mat " << md.arrow << " = [";
      for (std::size_t r = 0; r < md.entries.size(); ++r) {
        os << (r ? "," : "") << "[";
        for (std::size_t c = 0; c < md.entries[r].size(); ++c)
          os << (c ? "," : "") << detail::rational_str(md.entries[r][c]);
        os << "]";
      }
      os << "];";
    }
    os << " }\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Typed instantiation over a concrete field.
// ---------------------------------------------------------------------------

template <scalar_field K>
struct Workspace {
  AlgebraPtr<K> algebra;
  std::vector<std::pair<std::string, RepPtr<K>>> modules;
  std::set<std::size_t> boundary;
};

template <scalar_field K>
Workspace<K> instantiate(const WorkspaceData& ws, const K& one, BuildCaps caps = {}) {
  std::vector<Arrow> arrows;
  // Build the quiver first so name errors carry locations where possible.
  {
    std::map<std::string, std::size_t> vid;
    for (std::size_t i = 0; i < ws.vertices.size(); ++i) vid[ws.vertices[i]] = i;
    for (const auto& a : ws.arrows) {
      auto s = vid.find(a.src), t = vid.find(a.tgt);
      if (s == vid.end()) throw input_error("unknown vertex in arrow " + a.id + ": " + a.src);
      if (t == vid.end()) throw input_error("unknown vertex in arrow " + a.id + ": " + a.tgt);
      arrows.push_back({a.id, s->second, t->second});
    }
  }
  Quiver quiver(ws.vertices, std::move(arrows));

  std::vector<PathCombo<K>> gens;
  for (const auto& rel : ws.relations) {
    PathCombo<K> combo;
    std::optional<std::pair<std::size_t, std::size_t>> endpoints;
    for (const auto& term : rel) {
      std::vector<std::size_t> traversal;
      for (auto it = term.monomial.rbegin(); it != term.monomial.rend(); ++it)
        traversal.push_back(quiver.arrow_index(*it));
      if (term.monomial.size() < 2)
        throw parse_error("relation monomials need length >= 2", term.line, term.col);
      Path p = [&]() {
        try {
          return Path::of_arrows(quiver, traversal);
        } catch (const input_error&) {
          throw parse_error("monomial is not composable", term.line, term.col);
        }
      }();
      std::pair<std::size_t, std::size_t> pe{p.source(), p.target(quiver)};
      if (!endpoints) endpoints = pe;
      else if (*endpoints != pe)
        throw parse_error("relation mixes non-parallel monomials", term.line, term.col);
      add_term(combo, p,
               field_ops<K>::from_ratio(one, static_cast<long long>(numerator(term.coef)),
                                        static_cast<long long>(denominator(term.coef))));
    }
    gens.push_back(std::move(combo));
  }

  Workspace<K> out;
  out.algebra = build_algebra<K>(quiver, std::move(gens), one, caps);
  for (const auto& v : ws.boundary) out.boundary.insert(quiver.vertex_index(v));

  for (const auto& mod : ws.modules) {
    std::vector<std::size_t> dims(quiver.vertex_count(), 0);
    for (const auto& [v, n] : mod.dims) dims[quiver.vertex_index(v)] = n;
    std::vector<Matrix<K>> action;
    for (std::size_t a = 0; a < quiver.arrow_count(); ++a)
      action.emplace_back(one, dims[quiver.arrow(a).tgt], dims[quiver.arrow(a).src]);
    for (const auto& md : mod.mats) {
      const std::size_t a = quiver.arrow_index(md.arrow);
      const std::size_t r = dims[quiver.arrow(a).tgt], c = dims[quiver.arrow(a).src];
      if (md.entries.size() != r)
        throw parse_error("matrix for " + md.arrow + " needs " + std::to_string(r) +
                              " rows",
                          md.line, md.col);
      Matrix<K> m(one, r, c);
      for (std::size_t i = 0; i < r; ++i) {
        if (md.entries[i].size() != c)
          throw parse_error("matrix for " + md.arrow + " needs " + std::to_string(c) +
                                " columns",
                            md.line, md.col);
        for (std::size_t j = 0; j < c; ++j)
          m.set(i, j,
                field_ops<K>::from_ratio(
                    one, static_cast<long long>(numerator(md.entries[i][j])),
                    static_cast<long long>(denominator(md.entries[i][j]))));
      }
      action[a] = std::move(m);
    }
    try {
      out.modules.emplace_back(mod.name, make_rep(out.algebra, std::move(dims),
                                                  std::move(action)));
    } catch (const input_error& e) {
      throw parse_error(std::string("module ") + mod.name + ": " + e.what(), mod.line,
                        mod.col);
    }
  }
  return out;
}

}  // namespace tauq
