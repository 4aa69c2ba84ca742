// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#include "revc/ast.hpp"

#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace revc {

namespace {

std::shared_ptr<TermNode> node(TermKind k, SourceSpan span) {
  auto n = std::make_shared<TermNode>();
  n->kind = k;
  n->span = span;
  return n;
}

}  // namespace

Term mkLet(std::string name, Term t1, Term t2, SourceSpan span) {
  auto n = node(TermKind::Let, span);
  n->name = std::move(name);
  n->t1 = std::move(t1);
  n->t2 = std::move(t2);
  return n;
}
Term mkLambda(std::string name, Term body, SourceSpan span) {
  auto n = node(TermKind::Lambda, span);
  n->name = std::move(name);
  n->t1 = std::move(body);
  return n;
}
Term mkApply(Term t1, Term t2, SourceSpan span) {
  auto n = node(TermKind::Apply, span);
  n->t1 = std::move(t1);
  n->t2 = std::move(t2);
  return n;
}
Term mkSeq(Term t1, Term t2, SourceSpan span) {
  auto n = node(TermKind::Seq, span);
  n->t1 = std::move(t1);
  n->t2 = std::move(t2);
  return n;
}
Term mkVar(std::string name, SourceSpan span) {
  auto n = node(TermKind::Var, span);
  n->name = std::move(name);
  return n;
}
Term mkAssign(Term t1, Term t2, SourceSpan span) {
  auto n = node(TermKind::Assign, span);
  n->t1 = std::move(t1);
  n->t2 = std::move(t2);
  return n;
}
Term mkBool(bool b, SourceSpan span) {
  auto n = node(TermKind::BoolConst, span);
  n->boolVal = b;
  return n;
}
Term mkXor(Term t1, Term t2, SourceSpan span) {
  auto n = node(TermKind::Xor, span);
  n->t1 = std::move(t1);
  n->t2 = std::move(t2);
  return n;
}
Term mkAnd(Term t1, Term t2, SourceSpan span) {
  auto n = node(TermKind::And, span);
  n->t1 = std::move(t1);
  n->t2 = std::move(t2);
  return n;
}
Term mkClean(Term t, SourceSpan span) {
  auto n = node(TermKind::Clean, span);
  n->t1 = std::move(t);
  return n;
}
Term mkAssert(Term t, SourceSpan span) {
  auto n = node(TermKind::Assert, span);
  n->t1 = std::move(t);
  return n;
}
Term mkRegisterLit(std::vector<Term> terms, SourceSpan span) {
  auto n = node(TermKind::RegisterLit, span);
  n->terms = std::move(terms);
  return n;
}
Term mkIndex(Term t, uint32_t i, SourceSpan span) {
  auto n = node(TermKind::Index, span);
  n->t1 = std::move(t);
  n->nat1 = i;
  return n;
}
Term mkSlice(Term t, uint32_t i, uint32_t j, SourceSpan span) {
  auto n = node(TermKind::Slice, span);
  n->t1 = std::move(t);
  n->nat1 = i;
  n->nat2 = j;
  return n;
}
Term mkAppend(Term t1, Term t2, SourceSpan span) {
  auto n = node(TermKind::Append, span);
  n->t1 = std::move(t1);
  n->t2 = std::move(t2);
  return n;
}
Term mkRotate(uint32_t i, Term t, SourceSpan span) {
  auto n = node(TermKind::Rotate, span);
  n->nat1 = i;
  n->t1 = std::move(t);
  return n;
}
Term mkLoc(uint32_t l, SourceSpan span) {
  auto n = node(TermKind::LocConst, span);
  n->nat1 = l;
  return n;
}
Term mkRegisterVal(std::vector<uint32_t> locs, SourceSpan span) {
  auto n = node(TermKind::RegisterVal, span);
  n->locs = std::move(locs);
  return n;
}
Term mkUnit(SourceSpan span) { return node(TermKind::UnitConst, span); }
Term mkBExpConst(BExp b, SourceSpan span) {
  auto n = node(TermKind::BExpConst, span);
  n->bexp = std::move(b);
  return n;
}

Term valueToTerm(const Value& v, SourceSpan span) {
  if (v.isUnit()) return mkUnit(span);
  if (v.isLoc()) return mkLoc(v.asLoc(), span);
  if (v.isReg()) return mkRegisterVal(v.asReg(), span);
  if (v.isBExp()) return mkBExpConst(v.asBExp(), span);
  const Closure& c = v.asClosure();
  return mkLambda(c.param, c.body, span);
}

namespace {

void collectFree(const Term& t0, std::map<std::string, int>& bound,
                 std::set<std::string>& out) {
  Term t = t0;
  while (t) {
    switch (t->kind) {
      case TermKind::Var:
        if (bound[t->name] == 0) out.insert(t->name);
        return;
      case TermKind::Let: {
        collectFree(t->t1, bound, out);
        bound[t->name]++;
        collectFree(t->t2, bound, out);
        bound[t->name]--;
        return;
      }
      case TermKind::Lambda: {
        bound[t->name]++;
        collectFree(t->t1, bound, out);
        bound[t->name]--;
        return;
      }
      case TermKind::Seq:
      case TermKind::Apply:
      case TermKind::Assign:
      case TermKind::Xor:
      case TermKind::And:
      case TermKind::Append:
        collectFree(t->t1, bound, out);
        t = t->t2;  // tail-iterate so long statement chains do not recurse
        continue;
      case TermKind::Clean:
      case TermKind::Assert:
      case TermKind::Index:
      case TermKind::Slice:
      case TermKind::Rotate:
        t = t->t1;
        continue;
      case TermKind::RegisterLit:
        for (const Term& e : t->terms) collectFree(e, bound, out);
        return;
      default:
        return;  // constants
    }
  }
}

size_t countUses(const Term& t0, const std::string& name) {
  size_t n = 0;
  Term t = t0;
  while (t) {
    switch (t->kind) {
      case TermKind::Var:
        return n + (t->name == name ? 1 : 0);
      case TermKind::Let:
        n += countUses(t->t1, name);
        if (t->name == name) return n;
        t = t->t2;
        continue;
      case TermKind::Lambda:
        if (t->name == name) return n;
        t = t->t1;
        continue;
      case TermKind::Seq:
      case TermKind::Apply:
      case TermKind::Assign:
      case TermKind::Xor:
      case TermKind::And:
      case TermKind::Append:
        n += countUses(t->t1, name);
        t = t->t2;
        continue;
      case TermKind::Clean:
      case TermKind::Assert:
      case TermKind::Index:
      case TermKind::Slice:
      case TermKind::Rotate:
        t = t->t1;
        continue;
      case TermKind::RegisterLit:
        for (const Term& e : t->terms) n += countUses(e, name);
        return n;
      default:
        return n;
    }
  }
  return n;
}

std::string freshName(const std::string& base, const std::set<std::string>& avoid) {
  std::string name = base;
  do {
    name += "'";
  } while (avoid.count(name));
  return name;
}

struct Subst {
  const std::string& name;
  const Term& replacement;
  std::set<std::string> fvReplacement;

  Term go(const Term& t) {
    switch (t->kind) {
      case TermKind::Var:
        return t->name == name ? replacement : t;
      case TermKind::Let: {
        Term t1 = go(t->t1);
        if (t->name == name) {
          if (t1 == t->t1) return t;
          return mkLet(t->name, t1, t->t2, t->span);
        }
        auto [binder, body] = renameIfCaptured(t->name, t->t2);
        return mkLet(binder, t1, go(body), t->span);
      }
      case TermKind::Lambda: {
        if (t->name == name) return t;
        auto [binder, body] = renameIfCaptured(t->name, t->t1);
        return mkLambda(binder, go(body), t->span);
      }
      case TermKind::Seq: {
        // Statement chains are long; rebuild the spine iteratively.
        std::vector<Term> spine;
        Term cur = t;
        while (cur->kind == TermKind::Seq) {
          spine.push_back(cur);
          cur = cur->t2;
        }
        Term acc = go(cur);
        for (auto it = spine.rbegin(); it != spine.rend(); ++it)
          acc = mkSeq(go((*it)->t1), acc, (*it)->span);
        return acc;
      }
      case TermKind::Apply:
        return mkApply(go(t->t1), go(t->t2), t->span);
      case TermKind::Assign:
        return mkAssign(go(t->t1), go(t->t2), t->span);
      case TermKind::Xor:
        return mkXor(go(t->t1), go(t->t2), t->span);
      case TermKind::And:
        return mkAnd(go(t->t1), go(t->t2), t->span);
      case TermKind::Append:
        return mkAppend(go(t->t1), go(t->t2), t->span);
      case TermKind::Clean:
        return mkClean(go(t->t1), t->span);
      case TermKind::Assert:
        return mkAssert(go(t->t1), t->span);
      case TermKind::Index:
        return mkIndex(go(t->t1), t->nat1, t->span);
      case TermKind::Slice:
        return mkSlice(go(t->t1), t->nat1, t->nat2, t->span);
      case TermKind::Rotate:
        return mkRotate(t->nat1, go(t->t1), t->span);
      case TermKind::RegisterLit: {
        std::vector<Term> elems;
        elems.reserve(t->terms.size());
        for (const Term& e : t->terms) elems.push_back(go(e));
        return mkRegisterLit(std::move(elems), t->span);
      }
      default:
        return t;  // constants and run-time values
    }
  }

  std::pair<std::string, Term> renameIfCaptured(const std::string& binder, const Term& body) {
    if (!fvReplacement.count(binder) || countUses(body, name) == 0) return {binder, body};
    std::set<std::string> avoid = fvReplacement;
    avoid.insert(name);
    for (const auto& fn : freeNames(body)) avoid.insert(fn);
    std::string fresh = freshName(binder, avoid);
    Subst rename{binder, mkVar(fresh), {}};
    return {fresh, rename.go(body)};
  }
};

}  // namespace

std::set<std::string> freeNames(const Term& t) {
  std::set<std::string> out;
  std::map<std::string, int> bound;
  collectFree(t, bound, out);
  return out;
}

size_t countFreeUses(const Term& t, const std::string& name) { return countUses(t, name); }

Term substitute(const Term& t, const std::string& name, const Term& v) {
  Subst s{name, v, freeNames(v)};
  return s.go(t);
}

bool termEquals(const Term& a0, const Term& b0) {
  Term a = a0, b = b0;
  while (true) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
      case TermKind::Var:
      case TermKind::Lambda:
      case TermKind::Let:
        if (a->name != b->name) return false;
        break;
      case TermKind::BoolConst:
        return a->boolVal == b->boolVal;
      case TermKind::Index:
      case TermKind::Rotate:
      case TermKind::LocConst:
        if (a->nat1 != b->nat1) return false;
        break;
      case TermKind::Slice:
        if (a->nat1 != b->nat1 || a->nat2 != b->nat2) return false;
        break;
      case TermKind::RegisterVal:
        return a->locs == b->locs;
      case TermKind::UnitConst:
        return true;
      case TermKind::BExpConst:
        return a->bexp == b->bexp;
      case TermKind::RegisterLit: {
        if (a->terms.size() != b->terms.size()) return false;
        for (size_t i = 0; i < a->terms.size(); ++i)
          if (!termEquals(a->terms[i], b->terms[i])) return false;
        return true;
      }
      default:
        break;
    }
    if (a->t1 && !b->t1) return false;
    if (!a->t1 && b->t1) return false;
    if (a->t1 && !termEquals(a->t1, b->t1)) return false;
    if (a->t2 && !b->t2) return false;
    if (!a->t2 && b->t2) return false;
    if (a->t2 && b->t2) {
      a = a->t2;  // iterate the right spine
      b = b->t2;
      continue;
    }
    return true;
  }
}

namespace {

// Precedence levels, higher binds tighter. Mirrors the parser.
constexpr int kPrecTerm = 0;     // let, fun
constexpr int kPrecSeq = 1;      // ;
constexpr int kPrecAssign = 2;   // <-
constexpr int kPrecOr = 3;       // || (sugared only)
constexpr int kPrecXor = 4;      // <>
constexpr int kPrecAnd = 5;      // &&
constexpr int kPrecAppend = 6;   // @
constexpr int kPrecUnary = 7;    // not, clean, assert, rot
constexpr int kPrecApp = 8;      // application
constexpr int kPrecPostfix = 9;  // .[i], .[i..j]
constexpr int kPrecAtom = 10;

void print(std::ostream& out, const Term& t0, int prec);

void printWrapped(std::ostream& out, int myPrec, int ctxPrec,
                  const std::function<void()>& body) {
  if (myPrec < ctxPrec) {
    out << "(";
    body();
    out << ")";
  } else {
    body();
  }
}

void print(std::ostream& out, const Term& t, int prec) {
  switch (t->kind) {
    case TermKind::Let:
      printWrapped(out, kPrecTerm, prec, [&] {
        out << "let " << t->name << " = ";
        print(out, t->t1, kPrecTerm);
        out << " in ";
        print(out, t->t2, kPrecTerm);
      });
      break;
    case TermKind::Lambda:
      printWrapped(out, kPrecTerm, prec, [&] {
        out << "fun " << t->name << " -> ";
        print(out, t->t1, kPrecTerm);
      });
      break;
    case TermKind::Seq:
      printWrapped(out, kPrecSeq, prec, [&] {
        print(out, t->t1, kPrecAssign);
        out << "; ";
        print(out, t->t2, kPrecSeq);
      });
      break;
    case TermKind::Assign:
      printWrapped(out, kPrecAssign, prec, [&] {
        print(out, t->t1, kPrecOr);
        out << " <- ";
        print(out, t->t2, kPrecOr);
      });
      break;
    case TermKind::Xor:
      printWrapped(out, kPrecXor, prec, [&] {
        print(out, t->t1, kPrecXor);
        out << " <> ";
        print(out, t->t2, kPrecAnd);
      });
      break;
    case TermKind::And:
      printWrapped(out, kPrecAnd, prec, [&] {
        print(out, t->t1, kPrecAnd);
        out << " && ";
        print(out, t->t2, kPrecAppend);
      });
      break;
    case TermKind::Append:
      printWrapped(out, kPrecAppend, prec, [&] {
        print(out, t->t1, kPrecAppend);
        out << " @ ";
        print(out, t->t2, kPrecUnary);
      });
      break;
    case TermKind::Clean:
      printWrapped(out, kPrecUnary, prec, [&] {
        out << "clean ";
        print(out, t->t1, kPrecUnary);
      });
      break;
    case TermKind::Assert:
      printWrapped(out, kPrecUnary, prec, [&] {
        out << "assert ";
        print(out, t->t1, kPrecUnary);
      });
      break;
    case TermKind::Rotate:
      printWrapped(out, kPrecUnary, prec, [&] {
        out << "rot " << t->nat1 << " ";
        print(out, t->t1, kPrecUnary);
      });
      break;
    case TermKind::Apply:
      printWrapped(out, kPrecApp, prec, [&] {
        print(out, t->t1, kPrecApp);
        out << " ";
        print(out, t->t2, kPrecPostfix);
      });
      break;
    case TermKind::Index:
      printWrapped(out, kPrecPostfix, prec, [&] {
        print(out, t->t1, kPrecPostfix);
        out << ".[" << t->nat1 << "]";
      });
      break;
    case TermKind::Slice:
      printWrapped(out, kPrecPostfix, prec, [&] {
        print(out, t->t1, kPrecPostfix);
        out << ".[" << t->nat1 << ".." << t->nat2 << "]";
      });
      break;
    case TermKind::Var:
      out << t->name;
      break;
    case TermKind::BoolConst:
      out << (t->boolVal ? "true" : "false");
      break;
    case TermKind::UnitConst:
      out << "()";
      break;
    case TermKind::RegisterLit: {
      out << "[";
      for (size_t i = 0; i < t->terms.size(); ++i) {
        if (i) out << "; ";
        print(out, t->terms[i], kPrecAssign);
      }
      out << "]";
      break;
    }
    case TermKind::LocConst:
      out << "#loc" << t->nat1;
      break;
    case TermKind::RegisterVal: {
      out << "#reg[";
      for (size_t i = 0; i < t->locs.size(); ++i) {
        if (i) out << " ";
        out << t->locs[i];
      }
      out << "]";
      break;
    }
    case TermKind::BExpConst:
      out << "#bexp(" << toString(t->bexp) << ")";
      break;
  }
}

}  // namespace

std::string prettyPrint(const Term& t) {
  std::ostringstream out;
  print(out, t, kPrecTerm);
  return out.str();
}

}  // namespace revc
