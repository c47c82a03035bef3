#include "nszoo/parse.hpp"

#include <cctype>
#include <optional>

namespace nszoo {

namespace {

enum class Tok {
  Ident,
  Num,
  LParen,
  RParen,
  LBrack,
  RBrack,
  Comma,
  Dot,
  Colon,
  Bang,
  Question,
  Tilde,
  TildeTilde,
  Amp,
  Pipe,
  Arrow,
  Eq,
  EqEq,
  Neq,
  Le,
  Star,
  CaretStar,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) { tokenize(text); }
  const std::vector<Token>& tokens() const { return toks_; }

 private:
  void tokenize(const std::string& s) {
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Tok k, std::string t) { toks_.push_back({k, std::move(t), line, col}); };
    while (i < s.size()) {
      char c = s[i];
      if (c == '#') {
        while (i < s.size() && s[i] != '\n') i++;
        continue;
      }
      if (c == '\n') {
        line++;
        col = 1;
        i++;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        i++;
        col++;
        continue;
      }
      auto two = [&](char a, char b) { return c == a && i + 1 < s.size() && s[i + 1] == b; };
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t j = i;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
          j++;
        while (j < s.size() && s[j] == '\'') j++;
        push(Tok::Ident, s.substr(i, j - i));
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) j++;
        push(Tok::Num, s.substr(i, j - i));
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      if (two('-', '>')) {
        push(Tok::Arrow, "->");
        i += 2;
        col += 2;
        continue;
      }
      if (two('!', '=')) {
        push(Tok::Neq, "!=");
        i += 2;
        col += 2;
        continue;
      }
      if (two('<', '=')) {
        push(Tok::Le, "<=");
        i += 2;
        col += 2;
        continue;
      }
      if (two('=', '=')) {
        push(Tok::EqEq, "==");
        i += 2;
        col += 2;
        continue;
      }
      if (two('~', '~')) {
        push(Tok::TildeTilde, "~~");
        i += 2;
        col += 2;
        continue;
      }
      if (two('^', '*')) {
        push(Tok::CaretStar, "^*");
        i += 2;
        col += 2;
        continue;
      }
      switch (c) {
        case '(': push(Tok::LParen, "("); break;
        case ')': push(Tok::RParen, ")"); break;
        case '[': push(Tok::LBrack, "["); break;
        case ']': push(Tok::RBrack, "]"); break;
        case ',': push(Tok::Comma, ","); break;
        case '.': push(Tok::Dot, "."); break;
        case ':': push(Tok::Colon, ":"); break;
        case '!': push(Tok::Bang, "!"); break;
        case '?': push(Tok::Question, "?"); break;
        case '~': push(Tok::Tilde, "~"); break;
        case '&': push(Tok::Amp, "&"); break;
        case '|': push(Tok::Pipe, "|"); break;
        case '=': push(Tok::Eq, "="); break;
        case '*': push(Tok::Star, "*"); break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      }
      i++;
      col++;
    }
    toks_.push_back({Tok::End, "", line, col});
  }

  std::vector<Token> toks_;
};

bool is_reserved(const std::string& s) {
  return s == "st" || s == "in" || s == "sym" || s == "var" || s == "S" || s == "app" ||
         s == "proj1" || s == "proj2" || s == "len" || s == "idx" || s == "max0";
}

class Parser {
 public:
  Parser(const std::string& text, const Signature& sig)
      : lex_(text), sig_(sig), pos_(0) {
    for (const auto& [name, vd] : sig.vars()) ctx_[name] = vd.type;
  }

  FormulaPtr parse_formula_all() {
    FormulaPtr f = formula();
    expect(Tok::End, "end of input");
    typecheck(f, ctx_, sig_);
    return f;
  }

  TermPtr parse_term_all(const TypeContext& ctx) {
    ctx_ = ctx;
    TermPtr t = term();
    expect(Tok::End, "end of input");
    typecheck(t, ctx_, sig_);
    return t;
  }

  TypePtr parse_type_all() {
    TypePtr t = type();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& cur() const { return lex_.tokens()[pos_]; }
  const Token& peek(int k = 1) const {
    size_t i = pos_ + k;
    const auto& ts = lex_.tokens();
    return i < ts.size() ? ts[i] : ts.back();
  }
  Token advance() { return lex_.tokens()[pos_++]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_ident(const std::string& s) const { return at(Tok::Ident) && cur().text == s; }
  Token expect(Tok k, const std::string& what) {
    if (!at(k)) throw err("expected " + what + ", found '" + cur().text + "'");
    return advance();
  }
  ParseError err(const std::string& m) const { return ParseError(m, cur().line, cur().col); }

  // ---- types ----

  TypePtr type() {
    TypePtr t = type_primary();
    while (at(Tok::CaretStar)) {
      advance();
      t = type_seq(t);
    }
    return t;
  }

  TypePtr type_primary() {
    if (at(Tok::Num)) {
      int n = std::stoi(advance().text);
      return type_pure(n);
    }
    if (at(Tok::LParen)) {
      advance();
      TypePtr a = type();
      if (at(Tok::Arrow)) {
        advance();
        TypePtr b = type();
        expect(Tok::RParen, "')'");
        return type_arrow(a, b);
      }
      if (at(Tok::Star)) {
        advance();
        TypePtr b = type();
        expect(Tok::RParen, "')'");
        return type_prod(a, b);
      }
      expect(Tok::RParen, "'->', '*' or ')' in compound type");
      return a;
    }
    throw err("expected a type");
  }

  // ---- terms ----

  std::vector<TermPtr> term_args() {
    std::vector<TermPtr> args;
    args.push_back(term());
    while (at(Tok::Comma)) {
      advance();
      args.push_back(term());
    }
    return args;
  }

  TermPtr term() {
    if (at(Tok::Num)) {
      int n = std::stoi(advance().text);
      return mk_numeral(n);
    }
    if (at(Tok::LBrack)) {
      advance();
      if (at(Tok::RBrack)) {
        advance();
        expect(Tok::Colon, "':' with element type after empty sequence");
        TypePtr el = type();
        return mk_seqlit(el, {});
      }
      std::vector<TermPtr> elems = term_args();
      expect(Tok::RBrack, "']'");
      TypePtr el = typecheck(elems[0], ctx_, sig_);
      return mk_seqlit(el, std::move(elems));
    }
    if (at(Tok::LParen)) {
      advance();
      std::vector<TermPtr> elems = term_args();
      expect(Tok::RParen, "')'");
      return mk_tuple(elems);
    }
    if (!at(Tok::Ident)) throw err("expected a term");
    std::string name = advance().text;
    if (name == "S") {
      expect(Tok::LParen, "'('");
      TermPtr t = term();
      expect(Tok::RParen, "')'");
      return mk_succ(t);
    }
    if (name == "app") {
      expect(Tok::LParen, "'('");
      std::vector<TermPtr> args = term_args();
      expect(Tok::RParen, "')'");
      if (args.size() < 2) throw err("app needs a head and at least one argument");
      TermPtr head = args[0];
      std::vector<TermPtr> rest(args.begin() + 1, args.end());
      return apply_term(head, rest, ctx_, sig_);
    }
    if (name == "proj1" || name == "proj2" || name == "len" || name == "max0") {
      expect(Tok::LParen, "'('");
      TermPtr t = term();
      expect(Tok::RParen, "')'");
      if (name == "proj1") return mk_proj1(t);
      if (name == "proj2") return mk_proj2(t);
      if (name == "len") return mk_len(t);
      return mk_max0(t);
    }
    if (name == "idx") {
      expect(Tok::LParen, "'('");
      TermPtr t = term();
      expect(Tok::Comma, "','");
      TermPtr i = term();
      expect(Tok::RParen, "')'");
      return mk_idx(t, i);
    }
    if (is_reserved(name)) throw err("reserved word '" + name + "' used as a term");
    auto it = ctx_.find(name);
    if (it != ctx_.end()) {
      // a variable never takes an argument list, so name(...) can only mean
      // the declared symbol of the same name
      if (at(Tok::LParen)) {
        if (!sig_.has(name))
          throw err("variable " + name + " cannot take an argument list; use app(...)");
      } else {
        return mk_var(name, it->second);
      }
    }
    if (sig_.has(name)) {
      std::vector<TermPtr> args;
      if (at(Tok::LParen)) {
        advance();
        if (!at(Tok::RParen)) args = term_args();
        expect(Tok::RParen, "')'");
      }
      return mk_funsym(name, std::move(args));
    }
    throw err("undeclared name " + name);
  }

  // ---- formulas ----

  FormulaPtr formula() { return implication(); }

  FormulaPtr implication() {
    FormulaPtr a = disjunction();
    if (at(Tok::Arrow)) {
      advance();
      FormulaPtr b = implication();
      return mk_implies(a, b);
    }
    return a;
  }

  FormulaPtr disjunction() {
    FormulaPtr a = conjunction();
    while (at(Tok::Pipe)) {
      advance();
      a = mk_or(a, conjunction());
    }
    return a;
  }

  FormulaPtr conjunction() {
    FormulaPtr a = negation();
    while (at(Tok::Amp)) {
      advance();
      a = mk_and(a, negation());
    }
    return a;
  }

  FormulaPtr negation() {
    if (at(Tok::Tilde)) {
      advance();
      return mk_not(negation());
    }
    if (at(Tok::Bang) || at(Tok::Question)) return quantified();
    return atom();
  }

  FormulaPtr quantified() {
    bool universal = at(Tok::Bang);
    advance();
    bool st = false;
    if (at_ident("st")) {
      st = true;
      advance();
    }
    if (!at(Tok::Ident)) throw err("expected a bound variable name");
    std::string var = advance().text;
    if (is_reserved(var)) throw err("reserved word '" + var + "' used as a variable");
    if (at(Tok::Colon)) {
      advance();
      TypePtr ty = type();
      expect(Tok::Dot, "'.'");
      FormulaPtr body = with_binding(var, ty, [&] { return formula(); });
      Formula::Kind k = st ? (universal ? Formula::Kind::ForallSt : Formula::Kind::ExistsSt)
                           : (universal ? Formula::Kind::Forall : Formula::Kind::Exists);
      return mk_quant(k, var, ty, body);
    }
    if (at(Tok::Le)) {
      if (st) throw err("st cannot combine with a bounded quantifier");
      advance();
      TermPtr bound = term();
      expect(Tok::Dot, "'.'");
      TypePtr bt = typecheck(bound, ctx_, sig_);
      if (bt->kind != Type::Kind::Base) throw err("numeric bound must have type 0");
      FormulaPtr body = with_binding(var, type_base(), [&] { return formula(); });
      Formula::Kind k = universal ? Formula::Kind::BoundedForallLe : Formula::Kind::BoundedExistsLe;
      return mk_bounded(k, var, type_base(), bound, body);
    }
    if (at_ident("in")) {
      if (st) throw err("st cannot combine with a bounded quantifier");
      advance();
      TermPtr bound = term();
      expect(Tok::Dot, "'.'");
      TypePtr bt = typecheck(bound, ctx_, sig_);
      if (bt->kind != Type::Kind::Seq) throw err("in-bound must be a sequence");
      FormulaPtr body = with_binding(var, bt->a, [&] { return formula(); });
      Formula::Kind k = universal ? Formula::Kind::BoundedForallIn : Formula::Kind::BoundedExistsIn;
      return mk_bounded(k, var, bt->a, bound, body);
    }
    throw err("expected ':', '<=' or 'in' after bound variable");
  }

  FormulaPtr atom() {
    if (at_ident("st") && peek().kind == Tok::LParen) {
      advance();
      advance();
      TermPtr t = term();
      expect(Tok::RParen, "')'");
      return mk_st(t);
    }
    if (at(Tok::LParen)) {
      // backtracking: parenthesized formula, else a parenthesized term / tuple
      size_t save = pos_;
      advance();
      try {
        FormulaPtr f = formula();
        expect(Tok::RParen, "')'");
        return f;
      } catch (const ParseError&) {
        pos_ = save;
      }
    }
    return term_atom();
  }

  FormulaPtr term_atom() {
    TermPtr t = term();
    if (at(Tok::Eq)) {
      advance();
      return mk_eq(t, term());
    }
    if (at(Tok::Neq)) {
      advance();
      return mk_neq(t, term());
    }
    if (at(Tok::Le)) {
      advance();
      return mk_le(t, term());
    }
    if (at(Tok::EqEq) || at(Tok::TildeTilde)) {
      EqMode mode = at(Tok::EqEq) ? EqMode::Exact : EqMode::Approx;
      advance();
      expect(Tok::LBrack, "'['");
      TypePtr tau = type();
      expect(Tok::RBrack, "']'");
      TermPtr u = term();
      TypePtr lt = typecheck(t, ctx_, sig_);
      TypePtr rt = typecheck(u, ctx_, sig_);
      if (!type_equal(lt, tau) || !type_equal(rt, tau))
        throw err("defined equality at type " + show_type(tau) + " applied to terms of types " +
                  show_type(lt) + " and " + show_type(rt));
      return expand_equality(t, u, tau, mode, ctx_, sig_);
    }
    if (t->kind == Term::Kind::FunSym) {
      const SymbolDecl& d = sig_.get(t->name);
      if (d.result->kind != Type::Kind::Base)
        throw err("symbol " + t->name + " is not 0-valued and cannot be an atom");
      return mk_pred(t->name, t->args);
    }
    throw err("expected '=', '!=' or '<=' after term");
  }

  template <typename F>
  FormulaPtr with_binding(const std::string& var, const TypePtr& ty, F f) {
    auto old = ctx_.find(var) != ctx_.end() ? std::optional<TypePtr>(ctx_[var]) : std::nullopt;
    ctx_[var] = ty;
    FormulaPtr out = f();
    if (old)
      ctx_[var] = *old;
    else
      ctx_.erase(var);
    return out;
  }

  Lexer lex_;
  const Signature& sig_;
  TypeContext ctx_;
  size_t pos_;
};

// Parses one type from a token array (used for header lines).
TypePtr parse_type_tokens(const std::vector<Token>& ts, size_t& idx, int lineno) {
  auto fail = [&](const std::string& m) { return ParseError(m, lineno, ts[idx].col); };
  TypePtr t;
  if (ts[idx].kind == Tok::Num) {
    t = type_pure(std::stoi(ts[idx].text));
    idx++;
  } else if (ts[idx].kind == Tok::LParen) {
    idx++;
    TypePtr l = parse_type_tokens(ts, idx, lineno);
    if (ts[idx].kind == Tok::Arrow) {
      idx++;
      TypePtr r = parse_type_tokens(ts, idx, lineno);
      if (ts[idx].kind != Tok::RParen) throw fail("expected ')'");
      idx++;
      t = type_arrow(l, r);
    } else if (ts[idx].kind == Tok::Star) {
      idx++;
      TypePtr r = parse_type_tokens(ts, idx, lineno);
      if (ts[idx].kind != Tok::RParen) throw fail("expected ')'");
      idx++;
      t = type_prod(l, r);
    } else if (ts[idx].kind == Tok::RParen) {
      idx++;
      t = l;
    } else {
      throw fail("expected '->', '*' or ')' in compound type");
    }
  } else {
    throw fail("expected a type");
  }
  while (ts[idx].kind == Tok::CaretStar) {
    idx++;
    t = type_seq(t);
  }
  return t;
}

}  // namespace

Signature parse_signature(const std::string& text) {
  Signature sig;
  size_t start = 0;
  int lineno = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    std::string line = text.substr(start, end == std::string::npos ? std::string::npos
                                                                   : end - start);
    lineno++;
    start = end == std::string::npos ? text.size() + 1 : end + 1;
    // strip comments and whitespace
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    Lexer lex(line);
    const auto& ts = lex.tokens();
    size_t i = 0;
    auto need = [&](Tok k, const std::string& what) {
      if (ts[i].kind != k) throw ParseError("expected " + what, lineno, ts[i].col);
      return ts[i++];
    };
    if (ts[0].kind == Tok::Ident && ts[0].text == "sym") {
      i = 1;
      std::string name = need(Tok::Ident, "symbol name").text;
      need(Tok::Colon, "':'");
      // T1 x ... x Tn -> T, or a bare result type for 0-ary symbols
      std::vector<TypePtr> parts;
      auto parse_one_type = [&](size_t& idx) {
        return parse_type_tokens(ts, idx, lineno);
      };
      parts.push_back(parse_one_type(i));
      bool saw_arrow = false;
      TypePtr result;
      while (true) {
        if (ts[i].kind == Tok::Ident && ts[i].text == "x") {
          i++;
          parts.push_back(parse_one_type(i));
          continue;
        }
        if (ts[i].kind == Tok::Arrow) {
          i++;
          result = parse_one_type(i);
          saw_arrow = true;
          break;
        }
        break;
      }
      if (ts[i].kind != Tok::End) throw ParseError("trailing input", lineno, ts[i].col);
      SymbolDecl d;
      d.name = name;
      if (saw_arrow) {
        d.params = std::move(parts);
        d.result = result;
      } else {
        if (parts.size() != 1)
          throw ParseError("missing '-> T' in symbol declaration", lineno, 1);
        d.result = parts[0];
      }
      sig.declare(std::move(d));
      continue;
    }
    if (ts[0].kind == Tok::Ident && ts[0].text == "var") {
      i = 1;
      std::string name = need(Tok::Ident, "variable name").text;
      need(Tok::Colon, "':'");
      TypePtr ty = parse_type_tokens(ts, i, lineno);
      if (ts[i].kind != Tok::End) throw ParseError("trailing input", lineno, ts[i].col);
      sig.declare_var({name, ty});
      continue;
    }
    throw ParseError("expected 'sym' or 'var' header line", lineno, 1);
  }
  return sig;
}

FormulaPtr parse_formula(const std::string& text, const Signature& sig) {
  Parser p(text, sig);
  return p.parse_formula_all();
}

TermPtr parse_term(const std::string& text, const Signature& sig, const TypeContext& ctx) {
  Parser p(text, sig);
  return p.parse_term_all(ctx);
}

TypePtr parse_type(const std::string& text) {
  Parser p(text, Signature{});
  return p.parse_type_all();
}

ParsedFile parse_file(const std::string& text) {
  // header lines start with sym/var; the first other non-comment line starts
  // the formula, which runs to the end of the file
  size_t pos = 0;
  std::string headers;
  std::string rest;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    std::string line =
        text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    std::string stripped = line;
    size_t hash = stripped.find('#');
    if (hash != std::string::npos) stripped = stripped.substr(0, hash);
    size_t a = stripped.find_first_not_of(" \t\r");
    bool blank = a == std::string::npos;
    bool header = false;
    if (!blank) {
      std::string w = stripped.substr(a);
      header = w.rfind("sym ", 0) == 0 || w.rfind("var ", 0) == 0;
    }
    if (blank || header) {
      headers += line;
      headers += "\n";
      if (end == std::string::npos) break;
      pos = end + 1;
      continue;
    }
    rest = text.substr(pos);
    break;
  }
  ParsedFile out;
  out.signature = parse_signature(headers);
  if (rest.find_first_not_of(" \t\r\n") == std::string::npos)
    throw EngineError("file contains no formula");
  out.formula = parse_formula(rest, out.signature);
  return out;
}

}  // namespace nszoo
