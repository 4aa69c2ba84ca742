// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#include "revc/types.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace revc {

IExp IExp::plus(const IExp& o) const {
  IExp out = *this;
  out.constant += o.constant;
  for (auto [v, c] : o.coeffs) {
    out.coeffs[v] += c;
    if (out.coeffs[v] == 0) out.coeffs.erase(v);
  }
  return out;
}

IExp IExp::minus(const IExp& o) const {
  IExp neg = o;
  neg.constant = -neg.constant;
  for (auto& [v, c] : neg.coeffs) c = -c;
  return plus(neg);
}

std::string IExp::str() const {
  std::ostringstream out;
  bool first = true;
  for (auto [v, c] : coeffs) {
    if (!first) out << (c >= 0 ? " + " : " - ");
    else if (c < 0) out << "-";
    first = false;
    int64_t a = std::abs(c);
    if (a != 1) out << a << "*";
    out << "n" << v;
  }
  if (constant != 0 || first) {
    if (!first) out << (constant >= 0 ? " + " : " - ");
    out << std::abs(constant);
    if (first && constant < 0) return "-" + out.str();
  }
  return out.str();
}

TExp TExp::var(uint32_t id) {
  TExp t;
  t.kind_ = Kind::Var;
  t.var_ = id;
  return t;
}
TExp TExp::unit() {
  TExp t;
  t.kind_ = Kind::Unit;
  return t;
}
TExp TExp::boolean() {
  TExp t;
  t.kind_ = Kind::Bool;
  return t;
}
TExp TExp::reg(IExp size) {
  TExp t;
  t.kind_ = Kind::Register;
  t.size_ = std::make_shared<IExp>(std::move(size));
  return t;
}
TExp TExp::fun(TExp param, TExp result) {
  TExp t;
  t.kind_ = Kind::Fun;
  t.a_ = std::make_shared<TExp>(std::move(param));
  t.b_ = std::make_shared<TExp>(std::move(result));
  return t;
}

std::string TExp::str() const {
  switch (kind_) {
    case Kind::Var: return "t" + std::to_string(var_);
    case Kind::Unit: return "Unit";
    case Kind::Bool: return "Bool";
    case Kind::Register: return "Register(" + size_->str() + ")";
    case Kind::Fun: {
      std::string p = a_->str();
      if (a_->kind() == Kind::Fun) p = "(" + p + ")";
      return p + " -> " + b_->str();
    }
  }
  return "?";
}

// ------------------------------------------------------------ generation

namespace {

struct Gen {
  VarSupply& supply;
  std::vector<Constraint> out;

  TExp freshT() { return TExp::var(supply.freshType()); }
  IExp freshI() { return IExp::v(supply.freshInt()); }

  TExp go(const std::map<std::string, TExp>& scope, const Term& t0) {
    Term t = t0;
    // Seq chains are long in unrolled programs; iterate them.
    while (t->kind == TermKind::Seq) {
      TExp t1 = go(scope, t->t1);
      out.push_back(Constraint::teq(t1, TExp::unit(), t->t1->span));
      t = t->t2;
    }
    switch (t->kind) {
      case TermKind::Var: {
        auto it = scope.find(t->name);
        if (it == scope.end())
          throw Error(ErrorKind::Type, "unbound name '" + t->name + "'", t->span);
        return it->second;
      }
      case TermKind::Let: {
        TExp t1 = go(scope, t->t1);
        auto inner = scope;
        inner.insert_or_assign(t->name, t1);
        return go(inner, t->t2);
      }
      case TermKind::Lambda: {
        TExp x = freshT();
        auto inner = scope;
        inner.insert_or_assign(t->name, x);
        TExp body = go(inner, t->t1);
        return TExp::fun(x, body);
      }
      case TermKind::Apply: {
        TExp t1 = go(scope, t->t1);
        TExp t2 = go(scope, t->t2);
        TExp x1 = freshT(), x2 = freshT();
        out.push_back(Constraint::teq(t1, TExp::fun(x1, x2), t->span));
        out.push_back(Constraint::tsub(t2, x1, t->span));
        return x2;
      }
      case TermKind::Assign: {
        TExp t1 = go(scope, t->t1);
        TExp t2 = go(scope, t->t2);
        out.push_back(Constraint::teq(t1, TExp::boolean(), t->t1->span));
        out.push_back(Constraint::teq(t2, TExp::boolean(), t->t2->span));
        return TExp::unit();
      }
      case TermKind::BoolConst:
        return TExp::boolean();
      case TermKind::UnitConst:
        return TExp::unit();
      case TermKind::Xor:
      case TermKind::And: {
        TExp t1 = go(scope, t->t1);
        TExp t2 = go(scope, t->t2);
        out.push_back(Constraint::teq(t1, TExp::boolean(), t->t1->span));
        out.push_back(Constraint::teq(t2, TExp::boolean(), t->t2->span));
        return TExp::boolean();
      }
      case TermKind::Clean:
      case TermKind::Assert: {
        TExp t1 = go(scope, t->t1);
        out.push_back(Constraint::teq(t1, TExp::boolean(), t->t1->span));
        return TExp::unit();
      }
      case TermKind::RegisterLit: {
        for (const Term& e : t->terms) {
          TExp te = go(scope, e);
          out.push_back(Constraint::teq(te, TExp::boolean(), e->span));
        }
        return TExp::reg(IExp::c(static_cast<int64_t>(t->terms.size())));
      }
      case TermKind::Index: {
        TExp tr = go(scope, t->t1);
        IExp x = freshI();
        out.push_back(Constraint::teq(tr, TExp::reg(x), t->span));
        // 0-based: index i needs width at least i+1
        out.push_back(Constraint::ileq(IExp::c(int64_t(t->nat1) + 1), x, t->span));
        return TExp::boolean();
      }
      case TermKind::Slice: {
        TExp tr = go(scope, t->t1);
        IExp x = freshI();
        out.push_back(Constraint::teq(tr, TExp::reg(x), t->span));
        out.push_back(Constraint::ileq(IExp::c(t->nat1), IExp::c(t->nat2), t->span));
        out.push_back(Constraint::ileq(IExp::c(int64_t(t->nat2) + 1), x, t->span));
        return TExp::reg(IExp::c(int64_t(t->nat2) - int64_t(t->nat1) + 1));
      }
      case TermKind::Append: {
        TExp ta = go(scope, t->t1);
        TExp tb = go(scope, t->t2);
        IExp x1 = freshI(), x2 = freshI(), x3 = freshI();
        out.push_back(Constraint::teq(ta, TExp::reg(x1), t->t1->span));
        out.push_back(Constraint::teq(tb, TExp::reg(x2), t->t2->span));
        out.push_back(Constraint::ieq(x3, x1.plus(x2), t->span));
        return TExp::reg(x3);
      }
      case TermKind::Rotate: {
        TExp tr = go(scope, t->t1);
        IExp x = freshI();
        out.push_back(Constraint::teq(tr, TExp::reg(x), t->span));
        out.push_back(Constraint::ileq(IExp::c(1), x, t->span));
        return TExp::reg(x);
      }
      default:
        throw Error(ErrorKind::Type, "run-time value constructor in source program", t->span);
    }
  }
};

// ------------------------------------------------------------ solving

struct Solver {
  VarSupply& supply;

  // Weighted union-find over integer variables: value(v) = value(root) + off.
  std::vector<uint32_t> parent;
  std::vector<int64_t> toParent;
  std::map<uint32_t, int64_t> lower;        // per root; naturals default to 0
  std::map<uint32_t, int64_t> upper;        // per root
  std::map<uint32_t, bool> explicitLower;   // root saw a real constraint
  std::map<uint32_t, int64_t> assigned;     // per root

  std::map<uint32_t, TExp> typeBind;
  struct PendingSub {
    uint32_t a, b;
    SourceSpan span;
  };
  std::vector<PendingSub> pendingVarSub;
  std::vector<std::pair<IExp, SourceSpan>> pendingEq;   // expr == 0
  std::vector<std::pair<IExp, SourceSpan>> pendingLeq;  // expr >= 0
  std::vector<std::string> warnings;
  bool progress = false;

  explicit Solver(VarSupply& s) : supply(s) {}

  void ensure(uint32_t v) {
    while (parent.size() <= v) {
      parent.push_back(static_cast<uint32_t>(parent.size()));
      toParent.push_back(0);
    }
  }

  std::pair<uint32_t, int64_t> find(uint32_t v) {
    ensure(v);
    if (parent[v] == v) return {v, 0};
    auto [r, off] = find(parent[v]);
    parent[v] = r;
    toParent[v] += off;
    return {r, toParent[v]};
  }

  void addLowerRoot(uint32_t r, int64_t c, bool fromConstraint) {
    auto it = lower.find(r);
    if (it == lower.end() || c > it->second) lower[r] = c;
    if (fromConstraint) explicitLower[r] = true;
    if (auto a = assigned.find(r); a != assigned.end() && a->second < c)
      throw Error(ErrorKind::Type, "register size already fixed below its lower bound");
  }

  void addUpperRoot(uint32_t r, int64_t c) {
    auto it = upper.find(r);
    if (it == upper.end() || c < it->second) upper[r] = c;
    if (auto a = assigned.find(r); a != assigned.end() && a->second > c)
      throw Error(ErrorKind::Type, "register size already fixed above its upper bound");
  }

  void assignRoot(uint32_t r, int64_t v, SourceSpan span) {
    if (v < 0)
      throw Error(ErrorKind::Type, "register size solves to the negative value " +
                                       std::to_string(v),
                  span);
    auto lo = lower.find(r);
    if (lo != lower.end() && v < lo->second)
      throw Error(ErrorKind::Type,
                  "size " + std::to_string(v) + " violates lower bound " +
                      std::to_string(lo->second),
                  span);
    auto hi = upper.find(r);
    if (hi != upper.end() && v > hi->second)
      throw Error(ErrorKind::Type,
                  "size " + std::to_string(v) + " violates upper bound " +
                      std::to_string(hi->second),
                  span);
    auto a = assigned.find(r);
    if (a != assigned.end()) {
      if (a->second != v)
        throw Error(ErrorKind::Type, "conflicting register sizes " + std::to_string(a->second) +
                                         " and " + std::to_string(v),
                    span);
      return;
    }
    assigned[r] = v;
    progress = true;
  }

  // value(a) = value(b) + k
  void unionVars(uint32_t a, uint32_t b, int64_t k, SourceSpan span) {
    auto [ra, oa] = find(a);
    auto [rb, ob] = find(b);
    if (ra == rb) {
      if (oa != ob + k)
        throw Error(ErrorKind::Type, "inconsistent register size equation", span);
      return;
    }
    // value(ra) = value(rb) + d
    int64_t d = ob + k - oa;
    parent[ra] = rb;
    toParent[ra] = d;
    if (auto it = lower.find(ra); it != lower.end()) {
      addLowerRoot(rb, it->second - d, explicitLower.count(ra) ? explicitLower[ra] : false);
      lower.erase(ra);
    }
    if (auto it = upper.find(ra); it != upper.end()) {
      addUpperRoot(rb, it->second - d);
      upper.erase(ra);
    }
    if (auto it = assigned.find(ra); it != assigned.end()) {
      int64_t v = it->second - d;
      assigned.erase(ra);
      assignRoot(rb, v, span);
    }
    // the natural-number floor of the absorbed class
    addLowerRoot(rb, -d, false);
    progress = true;
  }

  IExp reduce(const IExp& e) {
    IExp out;
    out.constant = e.constant;
    for (auto [v, c] : e.coeffs) {
      auto [r, off] = find(v);
      out.constant += c * off;
      if (auto a = assigned.find(r); a != assigned.end()) {
        out.constant += c * a->second;
      } else {
        out.coeffs[r] += c;
        if (out.coeffs[r] == 0) out.coeffs.erase(r);
      }
    }
    return out;
  }

  // expr == 0
  void intEq(const IExp& e0, SourceSpan span) {
    IExp e = reduce(e0);
    if (e.isConst()) {
      if (e.constant != 0)
        throw Error(ErrorKind::Type, "unsatisfiable size equation (" + e0.str() + " = 0)", span);
      return;
    }
    if (e.coeffs.size() == 1) {
      auto [v, c] = *e.coeffs.begin();
      if (e.constant % c != 0)
        throw Error(ErrorKind::Type, "register size equation has no integer solution", span);
      assignRoot(v, -e.constant / c, span);
      return;
    }
    if (e.coeffs.size() == 2) {
      auto it = e.coeffs.begin();
      auto [v1, c1] = *it++;
      auto [v2, c2] = *it;
      if (c1 == -c2 && e.constant % c1 == 0) {
        // c1*v1 - c1*v2 + k = 0  =>  v1 = v2 - k/c1
        unionVars(v1, v2, -e.constant / c1, span);
        return;
      }
    }
    pendingEq.push_back({e, span});
  }

  // expr >= 0
  void intGeq(const IExp& e0, SourceSpan span) {
    IExp e = reduce(e0);
    if (e.isConst()) {
      if (e.constant < 0)
        throw Error(ErrorKind::Type, "unsatisfiable size bound", span);
      return;
    }
    if (e.coeffs.size() == 1) {
      auto [v, c] = *e.coeffs.begin();
      if (c > 0) {
        // c*v + k >= 0  =>  v >= ceil(-k/c)
        int64_t num = -e.constant;
        int64_t bound = num <= 0 ? num / c : (num + c - 1) / c;
        addLowerRoot(v, bound, true);
      } else {
        // c*v + k >= 0, c<0  =>  v <= floor(k/(-c))
        int64_t num = e.constant;
        int64_t den = -c;
        int64_t bound = num >= 0 ? num / den : -((-num + den - 1) / den);
        addUpperRoot(v, bound);
      }
      progress = true;
      return;
    }
    pendingLeq.push_back({e, span});
  }

  TExp resolve(TExp t) {
    while (t.kind() == TExp::Kind::Var) {
      auto it = typeBind.find(t.varId());
      if (it == typeBind.end()) return t;
      t = it->second;
    }
    return t;
  }

  bool occurs(uint32_t id, const TExp& t0) {
    TExp t = resolve(t0);
    switch (t.kind()) {
      case TExp::Kind::Var: return t.varId() == id;
      case TExp::Kind::Fun: return occurs(id, t.param()) || occurs(id, t.result());
      default: return false;
    }
  }

  void bind(uint32_t id, const TExp& t, SourceSpan span) {
    if (t.kind() == TExp::Kind::Var && t.varId() == id) return;
    if (occurs(id, t))
      throw Error(ErrorKind::Type, "circular type constraint (occurs check)", span);
    typeBind.emplace(id, t);
    progress = true;
  }

  void unify(const TExp& a0, const TExp& b0, SourceSpan span) {
    TExp a = resolve(a0), b = resolve(b0);
    if (a.kind() == TExp::Kind::Var) {
      bind(a.varId(), b, span);
      return;
    }
    if (b.kind() == TExp::Kind::Var) {
      bind(b.varId(), a, span);
      return;
    }
    if (a.kind() != b.kind())
      throw Error(ErrorKind::Type, "cannot unify " + a.str() + " with " + b.str(), span);
    switch (a.kind()) {
      case TExp::Kind::Unit:
      case TExp::Kind::Bool:
        return;
      case TExp::Kind::Register:
        intEq(a.size().minus(b.size()), span);
        return;
      case TExp::Kind::Fun:
        unify(a.param(), b.param(), span);
        unify(a.result(), b.result(), span);
        return;
      default:
        return;
    }
  }

  // a usable where b is required
  void subtype(const TExp& a0, const TExp& b0, SourceSpan span) {
    TExp a = resolve(a0), b = resolve(b0);
    if (a.kind() == TExp::Kind::Var && b.kind() == TExp::Kind::Var) {
      if (a.varId() != b.varId()) pendingVarSub.push_back({a.varId(), b.varId(), span});
      return;
    }
    if (a.kind() == TExp::Kind::Var) {
      switch (b.kind()) {
        case TExp::Kind::Unit:
        case TExp::Kind::Bool:
          bind(a.varId(), b, span);
          return;
        case TExp::Kind::Register: {
          IExp x = IExp::v(supply.freshInt());
          bind(a.varId(), TExp::reg(x), span);
          intGeq(x.minus(b.size()), span);  // x >= required size
          return;
        }
        case TExp::Kind::Fun: {
          TExp x1 = TExp::var(supply.freshType());
          TExp x2 = TExp::var(supply.freshType());
          bind(a.varId(), TExp::fun(x1, x2), span);
          subtype(b.param(), x1, span);
          subtype(x2, b.result(), span);
          return;
        }
        default:
          return;
      }
    }
    if (b.kind() == TExp::Kind::Var) {
      switch (a.kind()) {
        case TExp::Kind::Unit:
        case TExp::Kind::Bool:
          bind(b.varId(), a, span);
          return;
        case TExp::Kind::Register: {
          IExp x = IExp::v(supply.freshInt());
          bind(b.varId(), TExp::reg(x), span);
          intGeq(a.size().minus(x), span);  // provided size >= x
          return;
        }
        case TExp::Kind::Fun: {
          TExp x1 = TExp::var(supply.freshType());
          TExp x2 = TExp::var(supply.freshType());
          bind(b.varId(), TExp::fun(x1, x2), span);
          subtype(x1, a.param(), span);
          subtype(a.result(), x2, span);
          return;
        }
        default:
          return;
      }
    }
    if (a.kind() != b.kind())
      throw Error(ErrorKind::Type, a.str() + " is not usable as " + b.str(), span);
    switch (a.kind()) {
      case TExp::Kind::Unit:
      case TExp::Kind::Bool:
        return;
      case TExp::Kind::Register:
        intGeq(a.size().minus(b.size()), span);  // wider register is the subtype
        return;
      case TExp::Kind::Fun:
        subtype(b.param(), a.param(), span);   // contravariant parameters
        subtype(a.result(), b.result(), span);  // covariant results
        return;
      default:
        return;
    }
  }

  void drainPendings() {
    bool anyProgress = true;
    while (anyProgress) {
      anyProgress = false;
      progress = false;
      auto subs = std::move(pendingVarSub);
      pendingVarSub.clear();
      for (const auto& p : subs) {
        TExp a = resolve(TExp::var(p.a)), b = resolve(TExp::var(p.b));
        if (a.kind() == TExp::Kind::Var && b.kind() == TExp::Kind::Var) {
          if (a.varId() != b.varId()) pendingVarSub.push_back({a.varId(), b.varId(), p.span});
        } else {
          subtype(a, b, p.span);
        }
      }
      auto eqs = std::move(pendingEq);
      pendingEq.clear();
      for (const auto& [e, span] : eqs) intEq(e, span);
      auto leqs = std::move(pendingLeq);
      pendingLeq.clear();
      for (const auto& [e, span] : leqs) intGeq(e, span);
      anyProgress = progress;
    }
  }

  void processAll(const std::vector<Constraint>& cs) {
    for (const Constraint& c : cs) {
      switch (c.kind) {
        case Constraint::Kind::TypeEq: unify(c.t1, c.t2, c.span); break;
        case Constraint::Kind::TypeSub: subtype(c.t1, c.t2, c.span); break;
        case Constraint::Kind::IntEq: intEq(c.i1.minus(c.i2), c.span); break;
        case Constraint::Kind::IntLeq: intGeq(c.i2.minus(c.i1), c.span); break;
      }
    }
    drainPendings();
  }

  std::vector<uint32_t> unassignedRoots() {
    std::vector<uint32_t> roots;
    for (uint32_t v = 0; v < supply.intCount(); ++v) {
      auto [r, off] = find(v);
      (void)off;
      if (!assigned.count(r)) roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
  }

  void assignAll() {
    while (true) {
      drainPendings();
      auto roots = unassignedRoots();
      if (roots.empty()) break;
      // Roots entangled in multi-variable equations are only assigned when
      // nothing simpler is left.
      std::set<uint32_t> inPending;
      for (const auto& [e, span] : pendingEq)
        for (auto [v, c] : reduce(e).coeffs) inPending.insert(v);
      bool did = false;
      for (uint32_t r : roots) {
        if (inPending.count(r)) continue;
        assignMinimal(r);
        did = true;
        break;
      }
      if (!did) assignMinimal(roots.front());
    }
    drainPendings();
  }

  void assignMinimal(uint32_t r) {
    int64_t lo = 0;
    bool hasExplicit = explicitLower.count(r) && explicitLower[r];
    if (auto it = lower.find(r); it != lower.end()) lo = std::max<int64_t>(0, it->second);
    if (!hasExplicit)
      warnings.push_back("register size n" + std::to_string(r) +
                         " is unconstrained; defaulting to " + std::to_string(lo));
    assignRoot(r, lo, SourceSpan::none());
  }

  void defaultTypeVars() {
    for (uint32_t v = 0; v < supply.typeCount(); ++v) {
      TExp t = resolve(TExp::var(v));
      if (t.kind() == TExp::Kind::Var && !typeBind.count(t.varId())) {
        typeBind.emplace(t.varId(), TExp::boolean());
        warnings.push_back("type variable t" + std::to_string(t.varId()) +
                           " is unconstrained; defaulting to Bool");
      }
    }
  }

  int64_t valueOf(uint32_t v) {
    auto [r, off] = find(v);
    auto it = assigned.find(r);
    if (it == assigned.end())
      throw Error(ErrorKind::Type, "internal: unassigned size variable n" + std::to_string(v));
    return it->second + off;
  }

  int64_t evalIExp(const IExp& e) {
    int64_t out = e.constant;
    for (auto [v, c] : e.coeffs) out += c * valueOf(v);
    return out;
  }

  TExp close(const TExp& t0) {
    TExp t = resolve(t0);
    switch (t.kind()) {
      case TExp::Kind::Var:
        return TExp::boolean();  // unreachable after defaulting
      case TExp::Kind::Unit:
      case TExp::Kind::Bool:
        return t;
      case TExp::Kind::Register:
        return TExp::reg(IExp::c(evalIExp(t.size())));
      case TExp::Kind::Fun:
        return TExp::fun(close(t.param()), close(t.result()));
    }
    return t;
  }

  void checkClosedSub(const TExp& a, const TExp& b, SourceSpan span) {
    if (a.kind() != b.kind())
      throw Error(ErrorKind::Type, a.str() + " is not usable as " + b.str(), span);
    switch (a.kind()) {
      case TExp::Kind::Register:
        if (a.size().constant < b.size().constant)
          throw Error(ErrorKind::Type, a.str() + " is narrower than required " + b.str(), span);
        return;
      case TExp::Kind::Fun:
        checkClosedSub(b.param(), a.param(), span);
        checkClosedSub(a.result(), b.result(), span);
        return;
      default:
        return;
    }
  }

  // Every original constraint must hold under the final substitution.
  void verify(const std::vector<Constraint>& cs) {
    for (const Constraint& c : cs) {
      switch (c.kind) {
        case Constraint::Kind::TypeEq: {
          TExp a = close(c.t1), b = close(c.t2);
          if (a.str() != b.str())
            throw Error(ErrorKind::Type, "cannot unify " + a.str() + " with " + b.str(), c.span);
          break;
        }
        case Constraint::Kind::TypeSub:
          checkClosedSub(close(c.t1), close(c.t2), c.span);
          break;
        case Constraint::Kind::IntEq:
          if (evalIExp(c.i1) != evalIExp(c.i2))
            throw Error(ErrorKind::Type, "size equation violated", c.span);
          break;
        case Constraint::Kind::IntLeq:
          if (evalIExp(c.i1) > evalIExp(c.i2))
            throw Error(ErrorKind::Type, "size bound violated", c.span);
          break;
      }
    }
  }

  BoundMap snapshot() {
    BoundMap bm;
    for (uint32_t v = 0; v < supply.intCount(); ++v) {
      auto [r, off] = find(v);
      BoundMap::IntEntry e;
      e.root = r;
      e.offset = off;
      if (auto it = lower.find(r); it != lower.end()) e.lower = it->second + off;
      if (auto it = upper.find(r); it != upper.end()) e.upper = it->second + off;
      if (auto it = assigned.find(r); it != assigned.end()) e.value = it->second + off;
      bm.ints.emplace(v, e);
    }
    for (const auto& [id, t] : typeBind) bm.types.emplace(id, resolve(t));
    return bm;
  }
};

}  // namespace

std::pair<TExp, std::vector<Constraint>> genConstraints(
    const std::map<std::string, TExp>& ctx, const Term& t, VarSupply& supply) {
  Gen g{supply, {}};
  TExp type = g.go(ctx, t);
  return {type, std::move(g.out)};
}

std::string BoundMap::str() const {
  std::ostringstream out;
  for (const auto& [v, e] : ints) {
    out << "n" << v << " in [" << (e.lower ? std::to_string(*e.lower) : "0") << ", "
        << (e.upper ? std::to_string(*e.upper) : "inf") << "]";
    if (e.value) out << " = " << *e.value;
    if (e.root != v) out << "  (== n" << e.root << (e.offset >= 0 ? " + " : " - ")
                         << std::abs(e.offset) << ")";
    out << "\n";
  }
  for (const auto& [id, t] : types) out << "t" << id << " = " << t.str() << "\n";
  return out.str();
}

TExp TypeSubst::apply(const TExp& t) const {
  switch (t.kind()) {
    case TExp::Kind::Var: {
      auto it = typeAssign.find(t.varId());
      return it == typeAssign.end() ? TExp::boolean() : it->second;
    }
    case TExp::Kind::Register: {
      int64_t v = t.size().constant;
      for (auto [var, c] : t.size().coeffs) v += c * intValue(var);
      return TExp::reg(IExp::c(v));
    }
    case TExp::Kind::Fun:
      return TExp::fun(apply(t.param()), apply(t.result()));
    default:
      return t;
  }
}

int64_t TypeSubst::intValue(uint32_t var) const {
  auto it = intAssign.find(var);
  if (it == intAssign.end())
    throw Error(ErrorKind::Type, "internal: unknown size variable n" + std::to_string(var));
  return it->second;
}

BoundMap computeBounds(const std::vector<Constraint>& cs, VarSupply& supply) {
  Solver s(supply);
  s.processAll(cs);
  return s.snapshot();
}

TypeSubst solve(const std::vector<Constraint>& cs, VarSupply& supply) {
  Solver s(supply);
  s.processAll(cs);
  s.assignAll();
  s.defaultTypeVars();
  s.verify(cs);
  TypeSubst subst;
  for (uint32_t v = 0; v < supply.typeCount(); ++v) subst.typeAssign[v] = s.close(TExp::var(v));
  for (uint32_t v = 0; v < supply.intCount(); ++v) subst.intAssign[v] = s.valueOf(v);
  subst.bounds_ = s.snapshot();
  return subst;
}

std::string Signature::str() const {
  std::ostringstream out;
  for (const auto& p : params) out << p.str() << " -> ";
  out << result.str();
  return out.str();
}

Signature inferSignature(const Term& t) {
  VarSupply supply;
  auto [type, cs] = genConstraints({}, t, supply);
  Solver s(supply);
  s.processAll(cs);
  s.assignAll();
  s.defaultTypeVars();
  s.verify(cs);

  Signature sig{.params = {}, .result = TExp::unit(), .warnings = s.warnings,
                .bounds = s.snapshot()};
  TExp cur = s.close(type);
  while (cur.kind() == TExp::Kind::Fun) {
    sig.params.push_back(cur.param());
    cur = cur.result();
  }
  sig.result = cur;
  return sig;
}

uint32_t paramWidth(const TExp& t) {
  switch (t.kind()) {
    case TExp::Kind::Bool:
      return 1;
    case TExp::Kind::Register:
      if (!t.size().isConst() || t.size().constant < 0)
        throw Error(ErrorKind::Type, "parameter register size did not solve to a constant");
      return static_cast<uint32_t>(t.size().constant);
    default:
      throw Error(ErrorKind::Type,
                  "parameter of type " + t.str() + " cannot be allocated as circuit inputs");
  }
}

}  // namespace revc
