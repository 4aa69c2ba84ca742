// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#include "revc/parser.hpp"

#include <cctype>
#include <map>
#include <optional>

namespace revc {

namespace sugar {

IExp iconst(int64_t v, SourceSpan span) {
  auto n = std::make_shared<IExpNode>();
  n->kind = IExpNode::Kind::Const;
  n->value = v;
  n->span = span;
  return n;
}
IExp ivar(std::string name, SourceSpan span) {
  auto n = std::make_shared<IExpNode>();
  n->kind = IExpNode::Kind::Var;
  n->name = std::move(name);
  n->span = span;
  return n;
}
IExp ibin(IExpNode::Kind k, IExp a, IExp b, SourceSpan span) {
  auto n = std::make_shared<IExpNode>();
  n->kind = k;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  n->span = span;
  return n;
}

namespace {

std::shared_ptr<SNode> mut(SNode::Kind k, SourceSpan span) {
  auto n = std::make_shared<SNode>();
  n->kind = k;
  n->span = span;
  return n;
}

// ---------------------------------------------------------------- lexer

enum class Tok : uint8_t {
  Ident, Nat,
  KwLet, KwIn, KwFun, KwFor, KwDo, KwDone, KwIf, KwThen, KwElse,
  KwNot, KwClean, KwAssert, KwRot, KwTrue, KwFalse, KwZeroCreate,
  LParen, RParen, LBracket, RBracket, LIndex /* .[ */, DotDot,
  Semi, Arrow /* -> */, LArrow /* <- */, Neq /* <> */, AndAnd, OrOr, At,
  Eq, Star, Plus, Minus, End,
};

struct Token {
  Tok kind;
  std::string text;
  uint64_t nat = 0;
  SourceSpan span;
};

const std::map<std::string, Tok> kKeywords = {
    {"let", Tok::KwLet},     {"in", Tok::KwIn},       {"fun", Tok::KwFun},
    {"for", Tok::KwFor},     {"do", Tok::KwDo},       {"done", Tok::KwDone},
    {"if", Tok::KwIf},       {"then", Tok::KwThen},   {"else", Tok::KwElse},
    {"not", Tok::KwNot},     {"clean", Tok::KwClean}, {"assert", Tok::KwAssert},
    {"rot", Tok::KwRot},     {"true", Tok::KwTrue},   {"false", Tok::KwFalse},
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  uint32_t line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  char peek(size_t off = 0) const { return pos + off < src.size() ? src[pos + off] : '\0'; }

  void advance() {
    if (pos < src.size()) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }

  void skipTrivia() {
    while (pos < src.size()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (pos < src.size() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skipTrivia();
      SourceSpan span{static_cast<uint32_t>(pos), 0, line, col};
      if (pos >= src.size()) {
        out.push_back({Tok::End, "", 0, span});
        break;
      }
      char c = peek();
      auto emit = [&](Tok k, const std::string& text) {
        span.end = static_cast<uint32_t>(pos);
        out.push_back({k, text, 0, span});
      };
      if (isalpha(c) || c == '_') {
        std::string word;
        while (isalnum(peek()) || peek() == '_' || peek() == '\'') {
          word += peek();
          advance();
        }
        if (word == "Array" && src.compare(pos, 11, ".zeroCreate") == 0) {
          for (int i = 0; i < 11; ++i) advance();
          emit(Tok::KwZeroCreate, "Array.zeroCreate");
        } else if (auto it = kKeywords.find(word); it != kKeywords.end()) {
          emit(it->second, word);
        } else {
          emit(Tok::Ident, word);
        }
      } else if (isdigit(c)) {
        uint64_t v = 0;
        std::string text;
        while (isdigit(peek())) {
          v = v * 10 + (peek() - '0');
          text += peek();
          advance();
        }
        span.end = static_cast<uint32_t>(pos);
        out.push_back({Tok::Nat, text, v, span});
      } else {
        auto two = [&](char a, char b) { return c == a && peek(1) == b; };
        if (two('-', '>')) { advance(); advance(); emit(Tok::Arrow, "->"); }
        else if (two('<', '-')) { advance(); advance(); emit(Tok::LArrow, "<-"); }
        else if (two('<', '>')) { advance(); advance(); emit(Tok::Neq, "<>"); }
        else if (two('&', '&')) { advance(); advance(); emit(Tok::AndAnd, "&&"); }
        else if (two('|', '|')) { advance(); advance(); emit(Tok::OrOr, "||"); }
        else if (two('.', '[')) { advance(); advance(); emit(Tok::LIndex, ".["); }
        else if (two('.', '.')) { advance(); advance(); emit(Tok::DotDot, ".."); }
        else {
          switch (c) {
            case '(': advance(); emit(Tok::LParen, "("); break;
            case ')': advance(); emit(Tok::RParen, ")"); break;
            case '[': advance(); emit(Tok::LBracket, "["); break;
            case ']': advance(); emit(Tok::RBracket, "]"); break;
            case ';': advance(); emit(Tok::Semi, ";"); break;
            case '@': advance(); emit(Tok::At, "@"); break;
            case '=': advance(); emit(Tok::Eq, "="); break;
            case '*': advance(); emit(Tok::Star, "*"); break;
            case '+': advance(); emit(Tok::Plus, "+"); break;
            case '-': advance(); emit(Tok::Minus, "-"); break;
            default:
              throw Error(ErrorKind::Parse, std::string("unexpected character '") + c + "'", span);
          }
        }
      }
    }
    return out;
  }
};

// ---------------------------------------------------------------- parser

struct Parser {
  std::vector<Token> toks;
  size_t at = 0;

  const Token& cur() const { return toks[at]; }
  const Token& next() { return toks[at++]; }
  bool is(Tok k) const { return cur().kind == k; }

  bool accept(Tok k) {
    if (is(k)) {
      ++at;
      return true;
    }
    return false;
  }

  Token expect(Tok k, const std::string& what) {
    if (!is(k))
      throw Error(ErrorKind::Parse, "expected " + what + ", found '" + cur().text + "'",
                  cur().span);
    return next();
  }

  std::string expectIdent() { return expect(Tok::Ident, "an identifier").text; }

  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorKind::Parse, msg + " (found '" + cur().text + "')", cur().span);
  }

  // term := let | fun | if | seq
  STerm parseTerm() {
    SourceSpan start = cur().span;
    if (accept(Tok::KwLet)) {
      std::string name = expectIdent();
      std::vector<std::string> params;
      while (is(Tok::Ident)) params.push_back(next().text);
      expect(Tok::Eq, "'='");
      STerm bound = parseTerm();
      // let f a b = e  is  let f = fun a -> fun b -> e
      for (auto it = params.rbegin(); it != params.rend(); ++it) {
        auto lam = mut(SNode::Kind::Lambda, bound->span);
        lam->name = *it;
        lam->t1 = bound;
        bound = lam;
      }
      expect(Tok::KwIn, "'in'");
      STerm body = parseTerm();
      auto n = mut(SNode::Kind::Let, start.merge(body->span));
      n->name = name;
      n->t1 = bound;
      n->t2 = body;
      return n;
    }
    if (accept(Tok::KwFun)) {
      std::vector<std::string> params{expectIdent()};
      while (is(Tok::Ident)) params.push_back(next().text);
      expect(Tok::Arrow, "'->'");
      STerm body = parseTerm();
      for (auto it = params.rbegin(); it != params.rend(); ++it) {
        auto lam = mut(SNode::Kind::Lambda, start.merge(body->span));
        lam->name = *it;
        lam->t1 = body;
        body = lam;
      }
      return body;
    }
    if (accept(Tok::KwIf)) {
      STerm c = parseTerm();
      expect(Tok::KwThen, "'then'");
      STerm a = parseTerm();
      expect(Tok::KwElse, "'else'");
      STerm b = parseTerm();
      auto n = mut(SNode::Kind::If, start.merge(b->span));
      n->t1 = c;
      n->t2 = a;
      n->t3 = b;
      return n;
    }
    return parseSeq();
  }

  STerm parseSeq() {
    STerm first = parseStmt();
    if (accept(Tok::Semi)) {
      STerm rest = parseTerm();
      auto n = mut(SNode::Kind::Seq, first->span.merge(rest->span));
      n->t1 = first;
      n->t2 = rest;
      return n;
    }
    return first;
  }

  STerm parseStmt() {
    SourceSpan start = cur().span;
    if (accept(Tok::KwFor)) {
      std::string var = expectIdent();
      expect(Tok::KwIn, "'in'");
      IExp lo = parseIExp();
      expect(Tok::DotDot, "'..'");
      IExp hi = parseIExp();
      expect(Tok::KwDo, "'do'");
      STerm body = parseTerm();
      Token done = expect(Tok::KwDone, "'done'");
      auto n = mut(SNode::Kind::For, start.merge(done.span));
      n->name = var;
      n->i1 = lo;
      n->i2 = hi;
      n->t1 = body;
      return n;
    }
    return parseAssign();
  }

  STerm parseAssign() {
    STerm lhs = parseOr();
    if (accept(Tok::LArrow)) {
      STerm rhs = parseOr();
      auto n = mut(SNode::Kind::Assign, lhs->span.merge(rhs->span));
      n->t1 = lhs;
      n->t2 = rhs;
      return n;
    }
    return lhs;
  }

  STerm binChain(SNode::Kind k, STerm lhs, STerm rhs) {
    auto n = mut(k, lhs->span.merge(rhs->span));
    n->t1 = lhs;
    n->t2 = rhs;
    return n;
  }

  STerm parseOr() {
    STerm t = parseXor();
    while (accept(Tok::OrOr)) t = binChain(SNode::Kind::Or, t, parseXor());
    return t;
  }

  STerm parseXor() {
    STerm t = parseAnd();
    while (accept(Tok::Neq)) t = binChain(SNode::Kind::Xor, t, parseAnd());
    return t;
  }

  STerm parseAnd() {
    STerm t = parseAppend();
    while (accept(Tok::AndAnd)) t = binChain(SNode::Kind::And, t, parseAppend());
    return t;
  }

  STerm parseAppend() {
    STerm t = parseUnary();
    while (accept(Tok::At)) t = binChain(SNode::Kind::Append, t, parseUnary());
    return t;
  }

  STerm parseUnary() {
    SourceSpan start = cur().span;
    if (accept(Tok::KwNot)) {
      STerm t = parseUnary();
      auto n = mut(SNode::Kind::Not, start.merge(t->span));
      n->t1 = t;
      return n;
    }
    if (accept(Tok::KwClean)) {
      STerm t = parseUnary();
      auto n = mut(SNode::Kind::Clean, start.merge(t->span));
      n->t1 = t;
      return n;
    }
    if (accept(Tok::KwAssert)) {
      STerm t = parseUnary();
      auto n = mut(SNode::Kind::Assert, start.merge(t->span));
      n->t1 = t;
      return n;
    }
    if (accept(Tok::KwRot)) {
      IExp amount = parseIExp();
      STerm t = parseUnary();
      auto n = mut(SNode::Kind::Rotate, start.merge(t->span));
      n->i1 = amount;
      n->t1 = t;
      return n;
    }
    return parseApp();
  }

  bool startsAtom() const {
    switch (cur().kind) {
      case Tok::Ident:
      case Tok::KwTrue:
      case Tok::KwFalse:
      case Tok::LParen:
      case Tok::LBracket:
      case Tok::KwZeroCreate:
        return true;
      default:
        return false;
    }
  }

  STerm parseApp() {
    STerm t = parsePostfix();
    while (startsAtom()) t = binChain(SNode::Kind::Apply, t, parsePostfix());
    return t;
  }

  STerm parsePostfix() {
    STerm t = parseAtom();
    while (accept(Tok::LIndex)) {
      IExp i = parseIExp();
      if (accept(Tok::DotDot)) {
        IExp j = parseIExp();
        Token close = expect(Tok::RBracket, "']'");
        auto n = mut(SNode::Kind::Slice, t->span.merge(close.span));
        n->t1 = t;
        n->i1 = i;
        n->i2 = j;
        t = n;
      } else {
        Token close = expect(Tok::RBracket, "']'");
        auto n = mut(SNode::Kind::Index, t->span.merge(close.span));
        n->t1 = t;
        n->i1 = i;
        t = n;
      }
    }
    return t;
  }

  STerm parseAtom() {
    SourceSpan start = cur().span;
    if (is(Tok::Ident)) {
      auto n = mut(SNode::Kind::Var, start);
      n->name = next().text;
      return n;
    }
    if (accept(Tok::KwTrue)) {
      auto n = mut(SNode::Kind::BoolConst, start);
      n->boolVal = true;
      return n;
    }
    if (accept(Tok::KwFalse)) {
      auto n = mut(SNode::Kind::BoolConst, start);
      n->boolVal = false;
      return n;
    }
    if (accept(Tok::LParen)) {
      if (is(Tok::RParen)) {
        Token close = next();
        return mut(SNode::Kind::UnitConst, start.merge(close.span));
      }
      STerm t = parseTerm();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (accept(Tok::LBracket)) {
      std::vector<STerm> elems;
      if (!is(Tok::RBracket)) {
        elems.push_back(parseAssign());
        while (accept(Tok::Semi)) elems.push_back(parseAssign());
      }
      Token close = expect(Tok::RBracket, "']'");
      auto n = mut(SNode::Kind::RegisterLit, start.merge(close.span));
      n->terms = std::move(elems);
      return n;
    }
    if (accept(Tok::KwZeroCreate)) {
      IExp size = parseIAtom();
      auto n = mut(SNode::Kind::ZeroCreate, start);
      n->i1 = size;
      return n;
    }
    fail("expected an expression");
  }

  IExp parseIExp() {
    IExp t = parseITerm();
    while (is(Tok::Plus) || is(Tok::Minus)) {
      auto k = next().kind == Tok::Plus ? IExpNode::Kind::Add : IExpNode::Kind::Sub;
      IExp rhs = parseITerm();
      t = ibin(k, t, rhs, t->span.merge(rhs->span));
    }
    return t;
  }

  IExp parseITerm() {
    IExp t = parseIAtom();
    while (accept(Tok::Star)) {
      IExp rhs = parseIAtom();
      t = ibin(IExpNode::Kind::Mul, t, rhs, t->span.merge(rhs->span));
    }
    return t;
  }

  IExp parseIAtom() {
    SourceSpan start = cur().span;
    if (is(Tok::Nat)) return iconst(static_cast<int64_t>(next().nat), start);
    if (is(Tok::Ident)) return ivar(next().text, start);
    if (accept(Tok::LParen)) {
      IExp t = parseIExp();
      expect(Tok::RParen, "')'");
      return t;
    }
    fail("expected an integer expression");
  }
};

// ---------------------------------------------------------------- desugar

using MetaEnv = std::map<std::string, int64_t>;

int64_t foldIExp(const IExp& e, const MetaEnv& env) {
  switch (e->kind) {
    case IExpNode::Kind::Const:
      return e->value;
    case IExpNode::Kind::Var: {
      auto it = env.find(e->name);
      if (it == env.end())
        throw Error(ErrorKind::Parse,
                    "non-constant meta-level integer: '" + e->name +
                        "' is not a loop variable in scope",
                    e->span);
      return it->second;
    }
    case IExpNode::Kind::Add:
      return foldIExp(e->lhs, env) + foldIExp(e->rhs, env);
    case IExpNode::Kind::Sub:
      return foldIExp(e->lhs, env) - foldIExp(e->rhs, env);
    case IExpNode::Kind::Mul:
      return foldIExp(e->lhs, env) * foldIExp(e->rhs, env);
  }
  return 0;
}

uint32_t foldNat(const IExp& e, const MetaEnv& env, const char* what) {
  int64_t v = foldIExp(e, env);
  if (v < 0)
    throw Error(ErrorKind::Parse, std::string(what) + " folds to the negative value " +
                                      std::to_string(v),
                e->span);
  if (v > UINT32_MAX)
    throw Error(ErrorKind::Parse, std::string(what) + " is too large", e->span);
  return static_cast<uint32_t>(v);
}

Term desugarTerm(const STerm& t, MetaEnv& env) {
  switch (t->kind) {
    case SNode::Kind::Let: {
      Term t1 = desugarTerm(t->t1, env);
      bool shadows = env.count(t->name) != 0;
      int64_t saved = shadows ? env[t->name] : 0;
      if (shadows) env.erase(t->name);
      Term t2 = desugarTerm(t->t2, env);
      if (shadows) env[t->name] = saved;
      return mkLet(t->name, t1, t2, t->span);
    }
    case SNode::Kind::Lambda: {
      bool shadows = env.count(t->name) != 0;
      int64_t saved = shadows ? env[t->name] : 0;
      if (shadows) env.erase(t->name);
      Term body = desugarTerm(t->t1, env);
      if (shadows) env[t->name] = saved;
      return mkLambda(t->name, body, t->span);
    }
    case SNode::Kind::Apply:
      return mkApply(desugarTerm(t->t1, env), desugarTerm(t->t2, env), t->span);
    case SNode::Kind::Seq:
      return mkSeq(desugarTerm(t->t1, env), desugarTerm(t->t2, env), t->span);
    case SNode::Kind::Var:
      if (env.count(t->name))
        throw Error(ErrorKind::Parse,
                    "loop variable '" + t->name + "' used as a term", t->span);
      return mkVar(t->name, t->span);
    case SNode::Kind::Assign:
      return mkAssign(desugarTerm(t->t1, env), desugarTerm(t->t2, env), t->span);
    case SNode::Kind::BoolConst:
      return mkBool(t->boolVal, t->span);
    case SNode::Kind::Xor:
      return mkXor(desugarTerm(t->t1, env), desugarTerm(t->t2, env), t->span);
    case SNode::Kind::And:
      return mkAnd(desugarTerm(t->t1, env), desugarTerm(t->t2, env), t->span);
    case SNode::Kind::Or: {
      // t1 || t2  ->  (t1 && t2) <> (t1 <> t2)
      Term a = desugarTerm(t->t1, env);
      Term b = desugarTerm(t->t2, env);
      return mkXor(mkAnd(a, b, t->span), mkXor(a, b, t->span), t->span);
    }
    case SNode::Kind::Not:
      return mkXor(mkBool(true, t->span), desugarTerm(t->t1, env), t->span);
    case SNode::Kind::If: {
      // if c then a else b  ->  (c && a) <> (not c && b)
      Term c = desugarTerm(t->t1, env);
      Term a = desugarTerm(t->t2, env);
      Term b = desugarTerm(t->t3, env);
      Term notC = mkXor(mkBool(true, t->span), c, t->span);
      return mkXor(mkAnd(c, a, t->span), mkAnd(notC, b, t->span), t->span);
    }
    case SNode::Kind::For: {
      int64_t lo = foldIExp(t->i1, env);
      int64_t hi = foldIExp(t->i2, env);
      if (lo > hi) return mkUnit(t->span);  // empty range runs zero iterations
      if (env.count(t->name))
        throw Error(ErrorKind::Parse, "loop variable '" + t->name + "' shadows an outer one",
                    t->span);
      std::vector<Term> bodies;
      bodies.reserve(static_cast<size_t>(hi - lo + 1));
      for (int64_t k = lo; k <= hi; ++k) {
        env[t->name] = k;
        bodies.push_back(desugarTerm(t->t1, env));
      }
      env.erase(t->name);
      Term acc = bodies.back();
      for (size_t i = bodies.size() - 1; i-- > 0;) acc = mkSeq(bodies[i], acc, t->span);
      return acc;
    }
    case SNode::Kind::Clean:
      return mkClean(desugarTerm(t->t1, env), t->span);
    case SNode::Kind::Assert:
      return mkAssert(desugarTerm(t->t1, env), t->span);
    case SNode::Kind::RegisterLit: {
      std::vector<Term> elems;
      elems.reserve(t->terms.size());
      for (const STerm& e : t->terms) elems.push_back(desugarTerm(e, env));
      return mkRegisterLit(std::move(elems), t->span);
    }
    case SNode::Kind::ZeroCreate: {
      uint32_t n = foldNat(t->i1, env, "register size");
      std::vector<Term> elems(n);
      for (auto& e : elems) e = mkBool(false, t->span);
      return mkRegisterLit(std::move(elems), t->span);
    }
    case SNode::Kind::Index:
      return mkIndex(desugarTerm(t->t1, env), foldNat(t->i1, env, "index"), t->span);
    case SNode::Kind::Slice:
      return mkSlice(desugarTerm(t->t1, env), foldNat(t->i1, env, "slice lower bound"),
                     foldNat(t->i2, env, "slice upper bound"), t->span);
    case SNode::Kind::Append:
      return mkAppend(desugarTerm(t->t1, env), desugarTerm(t->t2, env), t->span);
    case SNode::Kind::Rotate:
      return mkRotate(foldNat(t->i1, env, "rotation amount"), desugarTerm(t->t1, env), t->span);
    case SNode::Kind::UnitConst:
      return mkUnit(t->span);
  }
  throw Error(ErrorKind::Parse, "unreachable surface form");
}

}  // namespace

STerm parseSugared(const std::string& source) {
  Lexer lexer(source);
  Parser p{lexer.run()};
  STerm t = p.parseTerm();
  if (!p.is(Tok::End)) p.fail("trailing input after the program");
  return t;
}

Term desugar(const STerm& t) {
  MetaEnv env;
  return desugarTerm(t, env);
}

}  // namespace sugar

Term parse(const std::string& source) { return sugar::desugar(sugar::parseSugared(source)); }

}  // namespace revc
