// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#include "revc/eval.hpp"

#include <algorithm>

namespace revc {

// ------------------------------------------------------------ StdMachine

void StdMachine::allocInput(uint32_t count) {
  for (uint32_t i = 0; i < count; ++i) heap_[i] = false;
}

bool StdMachine::evalOverHeap(const BExp& b, SourceSpan span) const {
  BState s;
  for (uint32_t v : vars(b)) {
    auto it = heap_.find(v);
    if (it == heap_.end())
      throw Error(ErrorKind::Eval, "read of unbound location " + std::to_string(v), span);
    s.set(v, it->second);
  }
  return evalBExp(b, s);
}

void StdMachine::assign(uint32_t loc, const BExp& b, SourceSpan span) {
  heap_[loc] = evalOverHeap(b, span);
}

bool StdMachine::evalLoc(uint32_t loc, const BState&) const {
  auto it = heap_.find(loc);
  if (it == heap_.end())
    throw Error(ErrorKind::Eval, "read of unbound location " + std::to_string(loc));
  return it->second;
}

void StdMachine::clean(uint32_t loc, SourceSpan span) {
  auto it = heap_.find(loc);
  if (it == heap_.end())
    throw Error(ErrorKind::Eval, "clean of unbound location", span);
  if (it->second)
    throw Error(ErrorKind::Eval, "clean failed: location holds 1", span);
  heap_.erase(it);
}

void StdMachine::assertTrue(const BExp& b, SourceSpan span) {
  if (!evalOverHeap(b, span))
    throw Error(ErrorKind::Eval, "assertion failed", span);
}

std::vector<uint32_t> StdMachine::boundLocs() const {
  std::vector<uint32_t> out;
  out.reserve(heap_.size());
  for (const auto& [l, v] : heap_) out.push_back(l);
  std::sort(out.begin(), out.end());
  return out;
}

bool StdMachine::lookup(uint32_t loc, SourceSpan span) const {
  auto it = heap_.find(loc);
  if (it == heap_.end())
    throw Error(ErrorKind::Eval, "read of unbound location " + std::to_string(loc), span);
  return it->second;
}

// ------------------------------------------------------------ BexpMachine

void BexpMachine::allocInput(uint32_t count) {
  for (uint32_t i = 0; i < count; ++i) exprs_.emplace(i, BExp::var(i));
}

void BexpMachine::assign(uint32_t loc, const BExp& b, SourceSpan span) {
  try {
    BExp expanded = substExprs(
        b,
        [&](uint32_t l) -> const BExp* {
          auto it = exprs_.find(l);
          return it == exprs_.end() ? nullptr : &it->second;
        },
        cap_);
    exprs_.insert_or_assign(loc, std::move(expanded));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Limit) throw;
    throw Error(e.kind(), e.what(), span.known() ? span : e.span());
  }
}

bool BexpMachine::evalLoc(uint32_t loc, const BState& init) const {
  return evalBExp(lookup(loc), init);
}

void BexpMachine::clean(uint32_t loc, SourceSpan span) {
  if (!exprs_.count(loc)) throw Error(ErrorKind::Eval, "clean of unbound location", span);
  exprs_.erase(loc);
}

void BexpMachine::assertTrue(const BExp&, SourceSpan) {}

std::vector<uint32_t> BexpMachine::boundLocs() const {
  std::vector<uint32_t> out;
  out.reserve(exprs_.size());
  for (const auto& [l, e] : exprs_) out.push_back(l);
  std::sort(out.begin(), out.end());
  return out;
}

const BExp& BexpMachine::lookup(uint32_t loc, SourceSpan span) const {
  auto it = exprs_.find(loc);
  if (it == exprs_.end())
    throw Error(ErrorKind::Eval, "read of unbound location " + std::to_string(loc), span);
  return it->second;
}

// ------------------------------------------------------------ CircMachine

void CircMachine::allocInput(uint32_t count) {
  for (uint32_t i = 0; i < count; ++i) subs_.emplace(i, i);
  inputs_.resize(count);
  for (uint32_t i = 0; i < count; ++i) inputs_[i] = i;
  ah_ = AncHeap(count);
}

void CircMachine::assign(uint32_t loc, const BExp& b, SourceSpan span) {
  std::unordered_map<uint32_t, uint32_t> map;
  for (uint32_t v : vars(b)) {
    auto it = subs_.find(v);
    if (it == subs_.end())
      throw Error(ErrorKind::Eval, "read of unbound location " + std::to_string(v), span);
    map.emplace(v, it->second);
  }
  BExp onBits = substVars(b, map, /*mustBind=*/false);

  SynthResult res;
  auto it = subs_.find(loc);
  if (it != subs_.end()) {
    if (auto factored = factorAs(onBits, it->second)) {
      // XOR-equal pattern: update the existing bit in place.
      res = compileBExpClean(ah_, it->second, *factored, cleanup_);
    } else {
      uint32_t targ = ah_.popMin();
      res = compileBExpClean(ah_, targ, onBits, cleanup_);
      subs_[loc] = targ;
    }
  } else {
    uint32_t targ = ah_.popMin();
    res = compileBExpClean(ah_, targ, onBits, cleanup_);
    subs_.emplace(loc, targ);
  }
  ah_ = std::move(res.heap);
  circ_.insert(circ_.end(), res.circ.begin(), res.circ.end());
  if (debugInit_) checkZeroPool(span);
}

void CircMachine::checkZeroPool(SourceSpan span) const {
  BState st = evalCirc(circ_, *debugInit_);
  for (uint32_t p : ah_.pool())
    if (st.get(p))
      throw Error(ErrorKind::Contract,
                  "pooled ancilla " + std::to_string(p) + " is nonzero after assign", span);
}

bool CircMachine::evalLoc(uint32_t loc, const BState& init) const {
  return evalCirc(circ_, init).get(bitOf(loc));
}

void CircMachine::clean(uint32_t loc, SourceSpan span) {
  auto it = subs_.find(loc);
  if (it == subs_.end()) throw Error(ErrorKind::Eval, "clean of unbound location", span);
  // A directive: the bit is declared zero and returned to the pool. The BDD
  // checker is the tool that actually verifies the claim.
  ah_.insert(it->second);
  subs_.erase(it);
}

void CircMachine::assertTrue(const BExp&, SourceSpan) {}

std::vector<uint32_t> CircMachine::boundLocs() const {
  std::vector<uint32_t> out;
  out.reserve(subs_.size());
  for (const auto& [l, b] : subs_) out.push_back(l);
  std::sort(out.begin(), out.end());
  return out;
}

uint32_t CircMachine::bitOf(uint32_t loc, SourceSpan span) const {
  auto it = subs_.find(loc);
  if (it == subs_.end())
    throw Error(ErrorKind::Eval, "read of unbound location " + std::to_string(loc), span);
  return it->second;
}

// ------------------------------------------------------------ evaluator

namespace {

struct Evaluator {
  Machine& m;
  uint32_t& nextLoc;

  BExp coerceBExp(const Value& v, SourceSpan span) {
    if (v.isLoc()) return BExp::var(v.asLoc());
    if (v.isBExp()) return v.asBExp();
    throw Error(ErrorKind::Eval, "expected a Boolean value", span);
  }

  Value flushIfGrown(Value v, SourceSpan span) {
    if (!v.isBExp()) return v;
    uint32_t l = nextLoc++;
    m.assign(l, v.asBExp(), span);
    return Value::loc(l);
  }

  // let/apply share the binding rule: a grown expression bound to a name used
  // more than once is flushed to a location first.
  Value bindAndEval(const std::string& name, Value bound, const Term& body, SourceSpan span) {
    if (bound.isBExp() && countFreeUses(body, name) > 1) bound = flushIfGrown(bound, span);
    return eval(substitute(body, name, valueToTerm(bound, span)));
  }

  Value eval(Term t) {
    while (true) {
      switch (t->kind) {
        case TermKind::Seq: {
          Value v1 = eval(t->t1);
          if (!v1.isUnit())
            throw Error(ErrorKind::Eval, "left side of ';' did not evaluate to unit",
                        t->t1->span);
          t = t->t2;
          continue;
        }
        case TermKind::Let: {
          Value v1 = eval(t->t1);
          return bindAndEval(t->name, std::move(v1), t->t2, t->span);
        }
        case TermKind::Lambda:
          return Value::closure(t->name, t->t1);
        case TermKind::Apply: {
          Value f = eval(t->t1);
          if (!f.isClosure())
            throw Error(ErrorKind::Eval, "application of a non-function", t->span);
          Value arg = eval(t->t2);
          const Closure& c = f.asClosure();
          return bindAndEval(c.param, std::move(arg), c.body, t->span);
        }
        case TermKind::Var:
          throw Error(ErrorKind::Eval, "unbound name '" + t->name + "'", t->span);
        case TermKind::Assign: {
          Value lhs = eval(t->t1);
          if (!lhs.isLoc())
            throw Error(ErrorKind::Eval, "left side of '<-' is not an assignable location",
                        t->t1->span);
          Value rhs = eval(t->t2);
          m.assign(lhs.asLoc(), coerceBExp(rhs, t->t2->span), t->span);
          return Value::unit();
        }
        case TermKind::BoolConst:
          return Value::bexp(BExp::constant(t->boolVal));
        case TermKind::Xor: {
          BExp a = coerceBExp(eval(t->t1), t->t1->span);
          BExp b = coerceBExp(eval(t->t2), t->t2->span);
          return Value::bexp(BExp::xorOf(a, b));
        }
        case TermKind::And: {
          BExp a = coerceBExp(eval(t->t1), t->t1->span);
          BExp b = coerceBExp(eval(t->t2), t->t2->span);
          return Value::bexp(BExp::andOf(a, b));
        }
        case TermKind::Clean: {
          Value v = eval(t->t1);
          if (!v.isLoc())
            throw Error(ErrorKind::Eval,
                        "clean expects a named location, not an expression", t->span);
          m.clean(v.asLoc(), t->span);
          return Value::unit();
        }
        case TermKind::Assert: {
          Value v = eval(t->t1);
          m.assertTrue(coerceBExp(v, t->t1->span), t->span);
          return Value::unit();
        }
        case TermKind::RegisterLit: {
          std::vector<uint32_t> locs;
          locs.reserve(t->terms.size());
          for (const Term& e : t->terms) {
            Value v = flushIfGrown(eval(e), e->span);
            if (!v.isLoc())
              throw Error(ErrorKind::Eval, "register entries must be Booleans", e->span);
            locs.push_back(v.asLoc());
          }
          return Value::reg(std::move(locs));
        }
        case TermKind::Index: {
          Value v = eval(t->t1);
          if (!v.isReg())
            throw Error(ErrorKind::Eval, "indexing a non-register", t->span);
          const auto& locs = v.asReg();
          if (t->nat1 >= locs.size())
            throw Error(ErrorKind::Eval,
                        "index " + std::to_string(t->nat1) + " out of range for register of size " +
                            std::to_string(locs.size()),
                        t->span);
          return Value::loc(locs[t->nat1]);
        }
        case TermKind::Slice: {
          Value v = eval(t->t1);
          if (!v.isReg())
            throw Error(ErrorKind::Eval, "slicing a non-register", t->span);
          const auto& locs = v.asReg();
          if (t->nat1 > t->nat2 || t->nat2 >= locs.size())
            throw Error(ErrorKind::Eval,
                        "slice [" + std::to_string(t->nat1) + ".." + std::to_string(t->nat2) +
                            "] out of range for register of size " + std::to_string(locs.size()),
                        t->span);
          return Value::reg(std::vector<uint32_t>(locs.begin() + t->nat1,
                                                  locs.begin() + t->nat2 + 1));
        }
        case TermKind::Append: {
          Value a = eval(t->t1);
          Value b = eval(t->t2);
          if (!a.isReg() || !b.isReg())
            throw Error(ErrorKind::Eval, "append of non-registers", t->span);
          std::vector<uint32_t> locs = a.asReg();
          locs.insert(locs.end(), b.asReg().begin(), b.asReg().end());
          return Value::reg(std::move(locs));
        }
        case TermKind::Rotate: {
          Value v = eval(t->t1);
          if (!v.isReg())
            throw Error(ErrorKind::Eval, "rotating a non-register", t->span);
          const auto& locs = v.asReg();
          if (locs.empty())
            throw Error(ErrorKind::Eval, "rotate of an empty register", t->span);
          size_t n = locs.size();
          size_t k = t->nat1 % n;
          std::vector<uint32_t> out(n);
          for (size_t i = 0; i < n; ++i) out[i] = locs[(i + k) % n];
          return Value::reg(std::move(out));
        }
        case TermKind::LocConst:
          return Value::loc(t->nat1);
        case TermKind::RegisterVal:
          return Value::reg(t->locs);
        case TermKind::UnitConst:
          return Value::unit();
        case TermKind::BExpConst:
          return Value::bexp(t->bexp);
      }
    }
  }
};

}  // namespace

Value evalTerm(Machine& m, uint32_t& nextLoc, const Term& t) {
  Evaluator e{m, nextLoc};
  return e.eval(t);
}

PreparedProgram prepareProgram(const Term& t,
                               const std::optional<std::vector<TExp>>& paramTypes) {
  PreparedProgram p;
  if (paramTypes) {
    p.paramTypes = *paramTypes;
  } else {
    Signature sig = inferSignature(t);
    p.paramTypes = sig.params;
  }
  p.widths.reserve(p.paramTypes.size());
  for (const TExp& ty : p.paramTypes) p.widths.push_back(paramWidth(ty));

  Term body = t;
  uint32_t cursor = 0;
  for (size_t i = 0; i < p.paramTypes.size(); ++i) {
    if (body->kind != TermKind::Lambda)
      throw Error(ErrorKind::Type, "program has fewer parameters than its type", body->span);
    Value v = Value::unit();
    if (p.paramTypes[i].kind() == TExp::Kind::Bool) {
      v = Value::loc(cursor);
    } else {
      std::vector<uint32_t> locs(p.widths[i]);
      for (uint32_t k = 0; k < p.widths[i]; ++k) locs[k] = cursor + k;
      v = Value::reg(std::move(locs));
    }
    Term next = substitute(body->t1, body->name, valueToTerm(v, body->span));
    body = next;
    cursor += p.widths[i];
  }
  p.inputCount = cursor;
  p.body = body;
  p.nextLoc = cursor;
  return p;
}

std::vector<uint32_t> resultLocs(Machine& m, uint32_t& nextLoc, const Value& result) {
  if (result.isUnit()) return {};
  if (result.isLoc()) return {result.asLoc()};
  if (result.isReg()) return result.asReg();
  if (result.isBExp()) {
    uint32_t l = nextLoc++;
    m.assign(l, result.asBExp(), SourceSpan::none());
    return {l};
  }
  throw Error(ErrorKind::Eval, "program result must be Boolean data, not a function");
}

Stats statsOf(const Circuit& c, const std::vector<uint32_t>& inputs,
              const std::vector<uint32_t>& outputs) {
  Stats s;
  s.gates = c.size();
  for (const Gate& g : c)
    if (g.kind == Gate::Kind::Toffoli) ++s.toffolis;
  uint32_t w = width(c);
  for (uint32_t i : inputs) w = std::max(w, i + 1);
  for (uint32_t i : outputs) w = std::max(w, i + 1);
  s.bits = w;
  return s;
}

CompiledUnit compileProgram(const Term& t, const CompileOptions& options) {
  PreparedProgram p = prepareProgram(t, options.paramTypes);
  CompiledUnit unit;
  unit.paramTypes = p.paramTypes;

  if (options.mode == CompileMode::Default) {
    CircMachine m(options.cleanup);
    if (options.debugState) m.setDebugState(*options.debugState);
    m.allocInput(p.inputCount);
    uint32_t nextLoc = p.nextLoc;
    Value result = evalTerm(m, nextLoc, p.body);
    std::vector<uint32_t> outLocs = resultLocs(m, nextLoc, result);
    unit.circ = m.circuit();
    unit.inputBits = m.inputs();
    unit.outputBits.reserve(outLocs.size());
    for (uint32_t l : outLocs) unit.outputBits.push_back(m.bitOf(l));
    unit.cleanAncillas.assign(m.heap().pool().begin(), m.heap().pool().end());
  } else {
    BexpMachine m(options.exprCap);
    m.allocInput(p.inputCount);
    uint32_t nextLoc = p.nextLoc;
    Value result = evalTerm(m, nextLoc, p.body);
    std::vector<uint32_t> outLocs = resultLocs(m, nextLoc, result);
    AncHeap ah(p.inputCount);
    for (uint32_t i = 0; i < p.inputCount; ++i) unit.inputBits.push_back(i);
    for (uint32_t l : outLocs) {
      BExp e = m.lookup(l);
      e = simplify(distributeAnds(simplify(e), options.exprCap));
      uint32_t targ = ah.popMin();
      SynthResult r = compileBExpClean(ah, targ, e, options.cleanup);
      ah = std::move(r.heap);
      unit.circ.insert(unit.circ.end(), r.circ.begin(), r.circ.end());
      unit.outputBits.push_back(targ);
    }
    unit.cleanAncillas.assign(ah.pool().begin(), ah.pool().end());
  }
  unit.stats = statsOf(unit.circ, unit.inputBits, unit.outputBits);
  return unit;
}

std::vector<bool> runProgram(const Term& t, const std::vector<bool>& inputs,
                             const std::optional<std::vector<TExp>>& paramTypes) {
  PreparedProgram p = prepareProgram(t, paramTypes);
  if (inputs.size() != p.inputCount)
    throw Error(ErrorKind::Eval, "expected " + std::to_string(p.inputCount) +
                                     " input bits, got " + std::to_string(inputs.size()));
  StdMachine m;
  m.allocInput(p.inputCount);
  for (uint32_t i = 0; i < p.inputCount; ++i) m.setInput(i, inputs[i]);
  uint32_t nextLoc = p.nextLoc;
  Value result = evalTerm(m, nextLoc, p.body);
  std::vector<uint32_t> outLocs = resultLocs(m, nextLoc, result);
  std::vector<bool> out;
  out.reserve(outLocs.size());
  for (uint32_t l : outLocs) out.push_back(m.lookup(l));
  return out;
}

std::vector<bool> simulate(const CompiledUnit& u, const std::vector<bool>& inputs) {
  if (inputs.size() != u.inputBits.size())
    throw Error(ErrorKind::Eval, "expected " + std::to_string(u.inputBits.size()) +
                                     " input bits, got " + std::to_string(inputs.size()));
  uint32_t w = static_cast<uint32_t>(u.stats.bits);
  std::vector<bool> state(w, false);
  for (size_t i = 0; i < inputs.size(); ++i) state[u.inputBits[i]] = inputs[i];
  evalCircDense(u.circ, state);
  std::vector<bool> out;
  out.reserve(u.outputBits.size());
  for (uint32_t b : u.outputBits) out.push_back(state[b]);
  return out;
}

}  // namespace revc
