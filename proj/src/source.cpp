#include "exref/source.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace exref {

std::string format_diagnostic(const Diagnostic& d) {
  return std::to_string(d.loc.line) + ":" + std::to_string(d.loc.column) + ": error: " + d.message;
}

const char* to_string(GoalKind k) {
  switch (k) {
    case GoalKind::TotalCorrect: return "total_correct";
    case GoalKind::PartialCorrect: return "partial_correct";
    case GoalKind::TotalRefine: return "total_refine";
    case GoalKind::PartialRefine: return "partial_refine";
    case GoalKind::DataRefine: return "data_refine";
    case GoalKind::Laws: return "laws";
  }
  return "?";
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok : std::uint8_t { Ident, Int, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  Loc loc;
  bool primed = false;
  std::int64_t value = 0;
};

struct ParseError {
  Loc loc;
  std::string message;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Longest first.
constexpr std::string_view kSymbols[] = {"<->", ";;", ":=", "->", "..", "=>", "<=", ">=", "!=", "<>", "[]", "[",
                                         "]",   "(",  ")",  "{",  "}",  ",",  ";",  ":",  "=",  "<",  ">",  "+",
                                         "-",   "*"};

std::vector<Token> lex(std::string_view src, std::vector<Diagnostic>& diags) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  const auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "//") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const Loc loc{line, col};
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      Token t{Tok::Ident, std::string(src.substr(i, j - i)), loc};
      if (j < src.size() && src[j] == '\'') {
        t.primed = true;
        ++j;
      }
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      Token t{Tok::Int, std::string(src.substr(i, j - i)), loc};
      const auto [p, ec] = std::from_chars(src.data() + i, src.data() + j, t.value);
      if (ec != std::errc()) diags.push_back({loc, "integer literal out of range"});
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    // ":in" is one token unless it starts a longer identifier (x:int(..)).
    if (src.substr(i, 3) == ":in" && (i + 3 >= src.size() || !ident_char(src[i + 3]))) {
      out.push_back({Tok::Sym, ":in", loc});
      advance(3);
      continue;
    }
    bool matched = false;
    for (auto sym : kSymbols) {
      if (src.substr(i, sym.size()) == sym) {
        out.push_back({Tok::Sym, std::string(sym), loc});
        advance(sym.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      diags.push_back({loc, std::string("unexpected character '") + c + "'"});
      advance(1);
    }
  }
  out.push_back({Tok::End, "", Loc{line, col}});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

const std::set<std::string, std::less<>> kDeclKeywords{"machine", "space", "relation", "program", "pred", "goal"};

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags) : toks_(std::move(toks)), diags_(diags) {}

  SourceModule module() {
    SourceModule m;
    while (!at_end()) {
      try {
        m.decls.push_back(decl());
      } catch (const ParseError& e) {
        diags_.push_back({e.loc, e.message});
        recover();
      }
    }
    return m;
  }

 private:
  // --- token helpers ---
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Tok::End; }
  const Token& next() {
    const auto& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool is_sym(std::string_view s, std::size_t k = 0) const { return peek(k).kind == Tok::Sym && peek(k).text == s; }
  bool is_kw(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && !peek(k).primed && peek(k).text == s;
  }
  bool accept_sym(std::string_view s) {
    if (!is_sym(s)) return false;
    next();
    return true;
  }
  bool accept_kw(std::string_view s) {
    if (!is_kw(s)) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError{peek().loc, msg}; }
  std::string describe(const Token& t) const {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + (t.primed ? "'" : "") + "'";
  }
  void expect_sym(std::string_view s) {
    if (!accept_sym(s)) fail("expected '" + std::string(s) + "', found " + describe(peek()));
  }
  void expect_kw(std::string_view s) {
    if (!accept_kw(s)) fail("expected '" + std::string(s) + "', found " + describe(peek()));
  }
  std::string name(const char* what) {
    if (peek().kind != Tok::Ident || peek().primed) fail(std::string("expected ") + what + ", found " + describe(peek()));
    return next().text;
  }
  std::int64_t integer() {
    const bool negative = accept_sym("-");
    if (peek().kind != Tok::Int) fail("expected integer, found " + describe(peek()));
    const auto v = next().value;
    return negative ? -v : v;
  }

  void recover() {
    int depth = 0;
    if (!at_end()) next();
    while (!at_end()) {
      if (depth == 0 && peek().kind == Tok::Ident && kDeclKeywords.count(peek().text) != 0) return;
      if (is_sym("{") || is_sym("(")) ++depth;
      if ((is_sym("}") || is_sym(")")) && depth > 0) --depth;
      next();
    }
  }

  // --- declarations ---
  Decl decl() {
    const auto loc = peek().loc;
    if (accept_kw("machine")) {
      expect_sym("(");
      const auto lo = integer();
      expect_sym(",");
      const auto hi = integer();
      expect_sym(")");
      accept_sym(";");
      return MachineDecl{{lo, hi}, loc};
    }
    if (accept_kw("space")) {
      SpaceDecl d{name("space name"), {}, loc};
      expect_sym("{");
      while (!accept_sym("}")) {
        auto v = name("variable name");
        expect_sym(":");
        d.vars.push_back({std::move(v), domain()});
        expect_sym(";");
      }
      accept_sym(";");
      return d;
    }
    if (accept_kw("relation")) {
      auto n = name("relation name");
      expect_sym(":");
      auto from = name("space name");
      expect_sym("<->");
      auto to = name("space name");
      expect_sym("=");
      auto link = expr();
      expect_sym(";");
      return RelationDecl{std::move(n), std::move(from), std::move(to), std::move(link), loc};
    }
    if (accept_kw("program")) {
      auto n = name("program name");
      expect_kw("over");
      auto over = name("space name");
      std::optional<std::pair<std::string, std::string>> exits;
      if (accept_sym("->")) {
        auto normal = name("space name");
        expect_sym(",");
        exits.emplace(std::move(normal), name("space name"));
      }
      expect_sym("{");
      auto body = stmt();
      expect_sym("}");
      accept_sym(";");
      return ProgramDecl{std::move(n), std::move(over), std::move(exits), std::move(body), loc};
    }
    if (accept_kw("pred")) {
      auto n = name("predicate name");
      expect_kw("over");
      auto over = name("space name");
      expect_sym("=");
      auto body = expr();
      expect_sym(";");
      return PredDecl{std::move(n), std::move(over), std::move(body), loc};
    }
    if (accept_kw("goal")) return goal(loc);
    fail("expected a declaration, found " + describe(peek()));
  }

  Domain domain() {
    if (accept_kw("bool")) return Domain::boolean();
    if (accept_kw("int")) {
      auto [lo, hi] = range();
      return Domain::int_range(lo, hi);
    }
    const bool array = is_kw("array");
    if (array || is_kw("bag")) {
      next();
      expect_sym("[");
      const auto n = integer();
      if (n < 0) fail("negative extent");
      expect_sym("]");
      expect_kw("of");
      expect_kw("int");
      auto [lo, hi] = range();
      const auto extent = static_cast<std::size_t>(n);
      return array ? Domain::array_fixed(extent, lo, hi) : Domain::bag_capped(lo, hi, extent);
    }
    fail("expected a domain (int(lo..hi), bool, array[n] of int(lo..hi), bag[n] of int(lo..hi)), found " +
         describe(peek()));
  }

  std::pair<std::int64_t, std::int64_t> range() {
    const auto loc = peek().loc;
    expect_sym("(");
    const auto lo = integer();
    expect_sym("..");
    const auto hi = integer();
    expect_sym(")");
    if (lo > hi) throw ParseError{loc, "empty range"};
    return {lo, hi};
  }

  GoalDecl goal(Loc loc) {
    GoalDecl g;
    g.loc = loc;
    if (peek().kind == Tok::Ident && is_sym(":", 1)) {
      g.label = next().text;
      next();
    }
    if (accept_kw("expect")) {
      if (accept_kw("holds")) g.expect = Status::Holds;
      else if (accept_kw("fails")) g.expect = Status::Fails;
      else if (accept_kw("refuted")) g.expect = Status::Refuted;
      else if (accept_kw("unknown")) g.expect = Status::Unknown;
      else fail("expected holds, fails, refuted or unknown, found " + describe(peek()));
    }
    const auto kind = name("goal kind");
    if (kind == "total_correct" || kind == "partial_correct") {
      g.kind = kind == "total_correct" ? GoalKind::TotalCorrect : GoalKind::PartialCorrect;
      g.program = name("program name");
      expect_kw("pre");
      g.pre = expr();
      expect_kw("post");
      g.post = expr();
      if (accept_kw("exc")) g.exc = expr();
    } else if (kind == "total_refine" || kind == "partial_refine") {
      g.kind = kind == "total_refine" ? GoalKind::TotalRefine : GoalKind::PartialRefine;
      g.left = name("program name");
      g.right = name("program name");
    } else if (kind == "data_refine") {
      g.kind = GoalKind::DataRefine;
      if (accept_kw("total")) g.data_kind = RefineKind::Total;
      else if (accept_kw("partial")) g.data_kind = RefineKind::Partial;
      else fail("expected total or partial, found " + describe(peek()));
      expect_kw("via");
      g.via = name("relation name");
      g.left = name("program name");
      g.right = name("program name");
    } else if (kind == "laws") {
      g.kind = GoalKind::Laws;
      g.laws.push_back(name("law id"));
      while (accept_sym(",")) g.laws.push_back(name("law id"));
    } else {
      pos_--;
      fail("unknown goal kind '" + kind + "'");
    }
    expect_sym(";");
    return g;
  }

  // --- statements ---
  Statement stmt() {
    auto s = unit();
    for (;;) {
      if (accept_sym(";")) {
        s = st::seq(std::move(s), unit());
      } else if (accept_sym(";;")) {
        s = st::exc_seq(std::move(s), unit());
      } else {
        return s;
      }
    }
  }

  Cond cond() {
    auto e = expr();
    if (const auto* b = std::get_if<BoolLit>(&e.node)) return b->value ? PredConst::True : PredConst::False;
    return e;
  }

  RelRef rel() {
    if (accept_kw("id")) return RelConst::Id;
    if (accept_kw("none")) return RelConst::Empty;
    if (accept_kw("all")) return RelConst::Full;
    return RelName{name("relation name")};
  }

  Statement unit() {
    if (accept_kw("skip")) return st::skip();
    if (accept_kw("raise")) return st::raise_();
    if (accept_kw("abort")) return st::abort_();
    if (accept_kw("stop")) return st::stop();
    if (accept_sym("(")) {
      auto s = stmt();
      expect_sym(")");
      return s;
    }
    if (accept_kw("if")) {
      auto guard = expr();
      expect_kw("then");
      auto a = unit();
      auto b = accept_kw("else") ? unit() : st::skip();
      return st::if_(std::move(guard), std::move(a), std::move(b));
    }
    if (accept_kw("while")) {
      auto guard = expr();
      expect_kw("do");
      return st::while_(std::move(guard), unit());
    }
    if (accept_kw("try")) {
      auto body = unit();
      expect_kw("catch");
      auto handler = unit();
      if (accept_kw("finally")) return st::try_catch_finally(std::move(body), std::move(handler), unit());
      return st::try_catch(std::move(body), std::move(handler));
    }
    if (accept_kw("choice")) {
      auto s = unit();
      expect_sym("[]");
      s = st::meet(std::move(s), unit());
      while (accept_sym("[]")) s = st::meet(std::move(s), unit());
      return s;
    }
    if (accept_kw("achoice")) {
      auto s = unit();
      expect_sym("<>");
      s = st::join(std::move(s), unit());
      while (accept_sym("<>")) s = st::join(std::move(s), unit());
      return s;
    }
    if (accept_kw("local")) {
      auto v = name("variable name");
      expect_sym(":");
      auto d = domain();
      std::optional<Expr> init;
      if (accept_sym(":=")) init = expr();
      expect_kw("in");
      return st::local(std::move(v), std::move(d), std::move(init), unit());
    }
    const bool assume = is_kw("assume");
    if ((assume || is_kw("assert")) && is_sym("(", 1)) {
      next();
      next();
      auto u = cond();
      if (accept_sym(")")) return assume ? Statement{AssumeOne{std::move(u)}} : Statement{AssertOne{std::move(u)}};
      expect_sym(",");
      auto v = cond();
      expect_sym(")");
      return assume ? st::assume(std::move(u), std::move(v)) : st::assert_(std::move(u), std::move(v));
    }
    const bool demonic = is_kw("update");
    if ((demonic || is_kw("aupdate")) && is_sym("(", 1)) {
      next();
      next();
      auto q = rel();
      if (accept_sym(")")) return demonic ? Statement{DemUpdOne{std::move(q)}} : Statement{AngUpdOne{std::move(q)}};
      expect_sym(",");
      auto r = rel();
      expect_sym(")");
      return demonic ? st::dem_upd(std::move(q), std::move(r)) : st::ang_upd(std::move(q), std::move(r));
    }
    if (peek().kind == Tok::Ident && !peek().primed) return assignment();
    fail("expected a statement, found " + describe(peek()));
  }

  Statement assignment() {
    std::vector<Target> targets;
    do {
      Target t{name("variable name"), std::nullopt};
      if (accept_sym("[")) {
        t.index = expr();
        expect_sym("]");
      }
      targets.push_back(std::move(t));
    } while (accept_sym(","));

    if (targets.size() == 1 && !targets[0].index && accept_sym(":in")) {
      return st::nondet(std::move(targets[0].var), expr());
    }
    expect_sym(":=");
    if (targets.size() == 1 && !targets[0].index && accept_kw("new")) {
      expect_kw("int");
      expect_sym("[");
      const auto n = integer();
      if (n < 0) fail("negative array length");
      expect_sym("]");
      return st::alloc(std::move(targets[0].var), static_cast<std::size_t>(n));
    }
    std::vector<Expr> values{expr()};
    while (accept_sym(",")) values.push_back(expr());
    if (values.size() != targets.size()) fail("assignment has " + std::to_string(targets.size()) + " targets but " +
                                              std::to_string(values.size()) + " values");
    return {Assign{std::move(targets), std::move(values)}};
  }

  // --- expressions ---
  Expr expr() {
    auto lhs = disjunction();
    if (accept_sym("=>")) return ex::bin(BinOp::Implies, std::move(lhs), expr());
    return lhs;
  }

  Expr disjunction() {
    auto e = conjunction();
    for (;;) {
      if (accept_kw("or")) e = ex::bin(BinOp::Or, std::move(e), conjunction());
      else if (accept_kw("cor")) e = ex::bin(BinOp::CondOr, std::move(e), conjunction());
      else return e;
    }
  }

  Expr conjunction() {
    auto e = negation();
    for (;;) {
      if (accept_kw("and")) e = ex::bin(BinOp::And, std::move(e), negation());
      else if (accept_kw("cand")) e = ex::bin(BinOp::CondAnd, std::move(e), negation());
      else return e;
    }
  }

  Expr negation() {
    if (accept_kw("not")) return ex::not_(negation());
    return comparison();
  }

  Expr comparison() {
    static const std::pair<std::string_view, BinOp> ops[] = {{"=", BinOp::Eq}, {"!=", BinOp::Ne}, {"<", BinOp::Lt},
                                                             {"<=", BinOp::Le}, {">", BinOp::Gt}, {">=", BinOp::Ge}};
    auto lhs = additive();
    for (const auto& [sym, op] : ops) {
      if (accept_sym(sym)) return ex::bin(op, std::move(lhs), additive());
    }
    return lhs;
  }

  Expr additive() {
    auto e = multiplicative();
    for (;;) {
      if (accept_sym("+")) e = ex::bin(BinOp::Add, std::move(e), multiplicative());
      else if (accept_sym("-")) e = ex::bin(BinOp::Sub, std::move(e), multiplicative());
      else return e;
    }
  }

  Expr multiplicative() {
    auto e = unary();
    for (;;) {
      if (accept_sym("*")) e = ex::bin(BinOp::Mul, std::move(e), unary());
      else if (accept_kw("div")) e = ex::bin(BinOp::Div, std::move(e), unary());
      else if (accept_kw("mod")) e = ex::bin(BinOp::Mod, std::move(e), unary());
      else return e;
    }
  }

  Expr unary() {
    if (accept_sym("-")) {
      if (peek().kind == Tok::Int) return postfix(ex::lit(-next().value));
      return ex::neg(unary());
    }
    return postfix(primary());
  }

  Expr postfix(Expr e) {
    while (accept_sym("[")) {
      auto i = expr();
      expect_sym("]");
      e = ex::index(std::move(e), std::move(i));
    }
    return e;
  }

  std::vector<Expr> args(std::size_t n, const std::string& fn) {
    expect_sym("(");
    std::vector<Expr> out;
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0) expect_sym(",");
      out.push_back(expr());
    }
    if (!accept_sym(")")) fail(fn + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
    return out;
  }

  Expr primary() {
    const auto& t = peek();
    if (t.kind == Tok::Int) return ex::lit(next().value);
    if (accept_kw("true")) return ex::lit(true);
    if (accept_kw("false")) return ex::lit(false);
    if (accept_sym("(")) {
      auto e = expr();
      expect_sym(")");
      return e;
    }
    if (accept_sym("[]")) return ex::bag_empty();
    if (accept_sym("[")) {
      if (accept_sym("]")) return ex::bag_empty();
      auto e = expr();
      expect_sym("]");
      return ex::bag_single(std::move(e));
    }
    if (accept_sym("{")) {
      std::vector<Expr> elems;
      if (accept_sym("}")) return ex::set_of({});
      elems.push_back(expr());
      if (accept_sym("..")) {
        auto hi = expr();
        expect_sym("}");
        return ex::set_range(std::move(elems[0]), std::move(hi));
      }
      while (accept_sym(",")) elems.push_back(expr());
      expect_sym("}");
      return ex::set_of(std::move(elems));
    }
    if (t.kind == Tok::Ident) {
      if (!t.primed && is_sym("(", 1)) {
        const std::string fn = t.text;
        if (fn == "len") {
          next();
          return ex::len(std::move(args(1, fn)[0]));
        }
        if (fn == "sum") {
          next();
          return ex::bag_sum(std::move(args(1, fn)[0]));
        }
        if (fn == "bagof") {
          next();
          auto a = args(2, fn);
          return ex::bagof(std::move(a[0]), std::move(a[1]));
        }
        if (fn == "write") {
          next();
          auto a = args(3, fn);
          return ex::write(std::move(a[0]), std::move(a[1]), std::move(a[2]));
        }
        if (fn == "fill") {
          next();
          const auto loc = peek(1).loc;
          auto a = args(2, fn);
          const auto* n = std::get_if<IntLit>(&a[0].node);
          if (n == nullptr || n->value < 0) throw ParseError{loc, "fill length must be a non-negative literal"};
          return ex::fill(static_cast<std::size_t>(n->value), std::move(a[1]));
        }
      }
      next();
      return ex::var(t.text, t.primed);
    }
    fail("expected an expression, found " + describe(t));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic>& diags_;
};

// ---------------------------------------------------------------------------
// Printer

struct ExprPrinter {
  std::string operator()(const IntLit& e) const { return std::to_string(e.value); }
  std::string operator()(const BoolLit& e) const { return e.value ? "true" : "false"; }
  std::string operator()(const VarRef& e) const { return e.name + (e.primed ? "'" : ""); }
  std::string operator()(const Unary& e) const {
    if (e.op == UnOp::Neg) return "-(" + print_expr(*e.operand) + ")";
    return "(not " + print_expr(*e.operand) + ")";
  }
  std::string operator()(const Binary& e) const {
    return "(" + print_expr(*e.lhs) + " " + to_string(e.op) + " " + print_expr(*e.rhs) + ")";
  }
  std::string operator()(const Index& e) const {
    const bool simple = std::holds_alternative<VarRef>(e.array->node) || std::holds_alternative<Index>(e.array->node);
    const auto a = print_expr(*e.array);
    return (simple ? a : "(" + a + ")") + "[" + print_expr(*e.index) + "]";
  }
  std::string operator()(const ArrayWrite& e) const {
    return "write(" + print_expr(*e.array) + ", " + print_expr(*e.index) + ", " + print_expr(*e.value) + ")";
  }
  std::string operator()(const ArrayFill& e) const {
    return "fill(" + std::to_string(e.length) + ", " + print_expr(*e.value) + ")";
  }
  std::string operator()(const Len& e) const { return "len(" + print_expr(*e.array) + ")"; }
  std::string operator()(const BagEmpty&) const { return "[]"; }
  std::string operator()(const BagSingle& e) const { return "[" + print_expr(*e.element) + "]"; }
  std::string operator()(const BagOf& e) const {
    return "bagof(" + print_expr(*e.array) + ", " + print_expr(*e.length) + ")";
  }
  std::string operator()(const BagSum& e) const { return "sum(" + print_expr(*e.bag) + ")"; }
  std::string operator()(const SetLit& e) const {
    std::string out = "{";
    for (std::size_t i = 0; i < e.elements.size(); ++i) out += (i ? ", " : "") + print_expr(e.elements[i]);
    return out + "}";
  }
  std::string operator()(const SetRange& e) const {
    return "{" + print_expr(*e.lo) + ".." + print_expr(*e.hi) + "}";
  }
};

std::string print_cond(const Cond& c) {
  if (const auto* k = std::get_if<PredConst>(&c)) return *k == PredConst::True ? "true" : "false";
  if (const auto* e = std::get_if<Expr>(&c)) return print_expr(*e);
  throw std::invalid_argument("a concrete predicate has no source form");
}

std::string print_rel(const RelRef& r) {
  if (const auto* k = std::get_if<RelConst>(&r)) {
    switch (*k) {
      case RelConst::Id: return "id";
      case RelConst::Empty: return "none";
      case RelConst::Full: return "all";
    }
  }
  if (const auto* n = std::get_if<RelName>(&r)) return n->name;
  throw std::invalid_argument("a concrete relation has no source form");
}

bool atomic(const Statement& s) {
  return std::holds_alternative<Skip>(s.node) || std::holds_alternative<Raise>(s.node) ||
         std::holds_alternative<Abort>(s.node) || std::holds_alternative<Stop>(s.node) ||
         std::holds_alternative<Assume>(s.node) || std::holds_alternative<AssertAV>(s.node) ||
         std::holds_alternative<DemUpd>(s.node) || std::holds_alternative<AngUpd>(s.node) ||
         std::holds_alternative<Assign>(s.node) || std::holds_alternative<NondetAssign>(s.node) ||
         std::holds_alternative<AssumeOne>(s.node) || std::holds_alternative<AssertOne>(s.node) ||
         std::holds_alternative<DemUpdOne>(s.node) || std::holds_alternative<AngUpdOne>(s.node) ||
         std::holds_alternative<AllocArray>(s.node);
}

std::string unit(const Statement& s) {
  const auto text = print_statement(s);
  return atomic(s) ? text : "(" + text + ")";
}

struct StmtPrinter {
  std::string operator()(const Abort&) const { return "abort"; }
  std::string operator()(const Stop&) const { return "stop"; }
  std::string operator()(const Skip&) const { return "skip"; }
  std::string operator()(const Raise&) const { return "raise"; }
  std::string operator()(const Assume& s) const {
    return "assume(" + print_cond(s.succeed) + ", " + print_cond(s.fail) + ")";
  }
  std::string operator()(const AssertAV& s) const {
    return "assert(" + print_cond(s.succeed) + ", " + print_cond(s.fail) + ")";
  }
  std::string operator()(const DemUpd& s) const {
    return "update(" + print_rel(s.normal) + ", " + print_rel(s.exceptional) + ")";
  }
  std::string operator()(const AngUpd& s) const {
    return "aupdate(" + print_rel(s.normal) + ", " + print_rel(s.exceptional) + ")";
  }
  std::string operator()(const Seq& s) const { return print_statement(*s.first) + " ; " + unit(*s.second); }
  std::string operator()(const ExcSeq& s) const { return print_statement(*s.first) + " ;; " + unit(*s.second); }
  std::string operator()(const DemChoice& s) const { return "choice " + unit(*s.left) + " [] " + unit(*s.right); }
  std::string operator()(const AngChoice& s) const { return "achoice " + unit(*s.left) + " <> " + unit(*s.right); }
  std::string operator()(const Assign& s) const {
    std::string out;
    for (std::size_t i = 0; i < s.targets.size(); ++i) {
      out += (i ? ", " : "") + s.targets[i].var;
      if (s.targets[i].index) out += "[" + print_expr(*s.targets[i].index) + "]";
    }
    out += " :=";
    for (std::size_t i = 0; i < s.values.size(); ++i) out += (i ? ", " : " ") + print_expr(s.values[i]);
    return out;
  }
  std::string operator()(const NondetAssign& s) const { return s.var + " :in " + print_expr(s.set); }
  std::string operator()(const If& s) const {
    return "if " + print_expr(s.guard) + " then " + unit(*s.then_branch) + " else " + unit(*s.else_branch);
  }
  std::string operator()(const While& s) const { return "while " + print_expr(s.guard) + " do " + unit(*s.body); }
  std::string operator()(const Local& s) const {
    std::string out = "local " + s.var + " : " + print_domain(s.domain);
    if (s.init) out += " := " + print_expr(*s.init);
    return out + " in " + unit(*s.body);
  }
  std::string operator()(const TryCatch& s) const { return "try " + unit(*s.body) + " catch " + unit(*s.handler); }
  std::string operator()(const TryCatchFinally& s) const {
    return "try " + unit(*s.body) + " catch " + unit(*s.handler) + " finally " + unit(*s.finalizer);
  }
  std::string operator()(const AssumeOne& s) const { return "assume(" + print_cond(s.cond) + ")"; }
  std::string operator()(const AssertOne& s) const { return "assert(" + print_cond(s.cond) + ")"; }
  std::string operator()(const DemUpdOne& s) const { return "update(" + print_rel(s.rel) + ")"; }
  std::string operator()(const AngUpdOne& s) const { return "aupdate(" + print_rel(s.rel) + ")"; }
  std::string operator()(const AllocArray& s) const {
    return s.var + " := new int[" + std::to_string(s.length) + "]";
  }
};

const char* status_word(Status s) {
  switch (s) {
    case Status::Holds: return "holds";
    case Status::Fails: return "fails";
    case Status::Refuted: return "refuted";
    case Status::Unknown: return "unknown";
  }
  return "?";
}

struct DeclPrinter {
  std::string operator()(const MachineDecl& d) const {
    return "machine(" + std::to_string(d.params.min) + ", " + std::to_string(d.params.max) + ")\n";
  }
  std::string operator()(const SpaceDecl& d) const {
    std::string out = "space " + d.name + " {";
    for (const auto& v : d.vars) out += " " + v.name + ": " + print_domain(v.domain) + ";";
    return out + " }\n";
  }
  std::string operator()(const RelationDecl& d) const {
    return "relation " + d.name + " : " + d.from + " <-> " + d.to + " = " + print_expr(d.link) + ";\n";
  }
  std::string operator()(const ProgramDecl& d) const {
    std::string out = "program " + d.name + " over " + d.over;
    if (d.exits) out += " -> " + d.exits->first + ", " + d.exits->second;
    return out + " {\n  " + print_statement(d.body) + "\n}\n";
  }
  std::string operator()(const PredDecl& d) const {
    return "pred " + d.name + " over " + d.over + " = " + print_expr(d.body) + ";\n";
  }
  std::string operator()(const GoalDecl& g) const {
    std::string out = "goal ";
    if (g.label) out += *g.label + ": ";
    if (g.expect) out += std::string("expect ") + status_word(*g.expect) + " ";
    out += to_string(g.kind);
    switch (g.kind) {
      case GoalKind::TotalCorrect:
      case GoalKind::PartialCorrect:
        out += " " + g.program + " pre " + print_expr(*g.pre) + " post " + print_expr(*g.post);
        if (g.exc) out += " exc " + print_expr(*g.exc);
        break;
      case GoalKind::TotalRefine:
      case GoalKind::PartialRefine: out += " " + g.left + " " + g.right; break;
      case GoalKind::DataRefine:
        out += std::string(g.data_kind == RefineKind::Total ? " total" : " partial") + " via " + g.via + " " +
               g.left + " " + g.right;
        break;
      case GoalKind::Laws:
        for (std::size_t i = 0; i < g.laws.size(); ++i) out += (i ? ", " : " ") + g.laws[i];
        break;
    }
    return out + ";\n";
  }
};

}  // namespace

ParseResult parse(std::string_view source) {
  ParseResult r;
  auto toks = lex(source, r.diagnostics);
  r.module = Parser(std::move(toks), r.diagnostics).module();
  return r;
}

std::string print_expr(const Expr& e) { return std::visit(ExprPrinter{}, e.node); }
std::string print_statement(const Statement& s) { return std::visit(StmtPrinter{}, s.node); }

std::string print_domain(const Domain& d) {
  const auto range = "int(" + std::to_string(d.lo()) + ".." + std::to_string(d.hi()) + ")";
  switch (d.kind()) {
    case Domain::Kind::Bool: return "bool";
    case Domain::Kind::IntRange: return range;
    case Domain::Kind::ArrayFixed: return "array[" + std::to_string(d.length()) + "] of " + range;
    case Domain::Kind::BagCapped: return "bag[" + std::to_string(d.cap()) + "] of " + range;
  }
  return "?";
}

std::string print_module(const SourceModule& m) {
  std::string out;
  for (const auto& d : m.decls) out += std::visit(DeclPrinter{}, d);
  return out;
}

}  // namespace exref
