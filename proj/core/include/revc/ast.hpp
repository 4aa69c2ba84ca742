// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "revc/bexp.hpp"
#include "revc/diagnostics.hpp"

namespace revc {

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

/// Core term constructors after desugaring. LocConst, RegisterVal, UnitConst
/// and BExpConst never appear in parsed programs; they carry run-time values
/// back into terms during substitution-based evaluation.
enum class TermKind : uint8_t {
  Let,          // let name = t1 in t2
  Lambda,       // fun name -> t1
  Apply,        // t1 t2
  Seq,          // t1; t2
  Var,          // name
  Assign,       // t1 <- t2
  BoolConst,    // true | false
  Xor,          // t1 <> t2
  And,          // t1 && t2
  Clean,        // clean t1
  Assert,       // assert t1
  RegisterLit,  // [t1; ...; tn]
  Index,        // t1.[i]
  Slice,        // t1.[i..j]
  Append,       // t1 @ t2
  Rotate,       // rot i t1
  LocConst,     // run-time location value
  RegisterVal,  // run-time register value
  UnitConst,    // ()
  BExpConst,    // run-time Boolean expression value
};

struct TermNode {
  TermKind kind;
  SourceSpan span;
  std::string name;            // Let, Lambda, Var
  bool boolVal = false;        // BoolConst
  uint32_t nat1 = 0;           // Index/Slice/Rotate amount, LocConst
  uint32_t nat2 = 0;           // Slice upper bound
  Term t1, t2;
  std::vector<Term> terms;     // RegisterLit
  std::vector<uint32_t> locs;  // RegisterVal
  BExp bexp;                   // BExpConst
};

Term mkLet(std::string name, Term t1, Term t2, SourceSpan span = {});
Term mkLambda(std::string name, Term body, SourceSpan span = {});
Term mkApply(Term t1, Term t2, SourceSpan span = {});
Term mkSeq(Term t1, Term t2, SourceSpan span = {});
Term mkVar(std::string name, SourceSpan span = {});
Term mkAssign(Term t1, Term t2, SourceSpan span = {});
Term mkBool(bool b, SourceSpan span = {});
Term mkXor(Term t1, Term t2, SourceSpan span = {});
Term mkAnd(Term t1, Term t2, SourceSpan span = {});
Term mkClean(Term t, SourceSpan span = {});
Term mkAssert(Term t, SourceSpan span = {});
Term mkRegisterLit(std::vector<Term> terms, SourceSpan span = {});
Term mkIndex(Term t, uint32_t i, SourceSpan span = {});
Term mkSlice(Term t, uint32_t i, uint32_t j, SourceSpan span = {});
Term mkAppend(Term t1, Term t2, SourceSpan span = {});
Term mkRotate(uint32_t i, Term t, SourceSpan span = {});
Term mkLoc(uint32_t l, SourceSpan span = {});
Term mkRegisterVal(std::vector<uint32_t> locs, SourceSpan span = {});
Term mkUnit(SourceSpan span = {});
Term mkBExpConst(BExp b, SourceSpan span = {});

/// Run-time values of the big-step evaluator.
struct Closure {
  std::string param;
  Term body;
};

struct Value {
  // unit | location | register of locations | closure | grown Boolean expression
  std::variant<std::monostate, uint32_t, std::vector<uint32_t>, Closure, BExp> v;

  static Value unit() { return {std::monostate{}}; }
  static Value loc(uint32_t l) { return {l}; }
  static Value reg(std::vector<uint32_t> locs) { return {std::move(locs)}; }
  static Value closure(std::string param, Term body) {
    return {Closure{std::move(param), std::move(body)}};
  }
  static Value bexp(BExp b) { return {std::move(b)}; }

  bool isUnit() const { return std::holds_alternative<std::monostate>(v); }
  bool isLoc() const { return std::holds_alternative<uint32_t>(v); }
  bool isReg() const { return std::holds_alternative<std::vector<uint32_t>>(v); }
  bool isClosure() const { return std::holds_alternative<Closure>(v); }
  bool isBExp() const { return std::holds_alternative<BExp>(v); }

  uint32_t asLoc() const { return std::get<uint32_t>(v); }
  const std::vector<uint32_t>& asReg() const { return std::get<std::vector<uint32_t>>(v); }
  const Closure& asClosure() const { return std::get<Closure>(v); }
  const BExp& asBExp() const { return std::get<BExp>(v); }
};

/// Turn a value back into a (closed) term for substitution.
Term valueToTerm(const Value& v, SourceSpan span = {});

/// Free names of t.
std::set<std::string> freeNames(const Term& t);

/// Number of free occurrences of name in t.
size_t countFreeUses(const Term& t, const std::string& name);

/// Capture-avoiding substitution of v for free occurrences of name. Binders
/// whose bound name would capture a free name of v are renamed.
Term substitute(const Term& t, const std::string& name, const Term& v);

/// Structural equality, ignoring source spans.
bool termEquals(const Term& a, const Term& b);

/// Concrete-syntax form; parse(prettyPrint(t)) == t for core terms free of
/// run-time value constructors.
std::string prettyPrint(const Term& t);

}  // namespace revc
