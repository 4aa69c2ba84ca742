// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "revc/ast.hpp"

namespace revc {

/// Linear integer expression: constant + sum of coeff * var. Canonical form
/// drops zero coefficients.
struct IExp {
  int64_t constant = 0;
  std::map<uint32_t, int64_t> coeffs;

  static IExp c(int64_t v) { return IExp{v, {}}; }
  static IExp v(uint32_t var) { return IExp{0, {{var, 1}}}; }

  IExp plus(const IExp& o) const;
  IExp minus(const IExp& o) const;
  bool isConst() const { return coeffs.empty(); }
  std::string str() const;
};

/// Type expressions: variables, the three base types, fixed-width registers
/// (width possibly symbolic) and functions.
class TExp {
 public:
  enum class Kind : uint8_t { Var, Unit, Bool, Register, Fun };

  static TExp var(uint32_t id);
  static TExp unit();
  static TExp boolean();
  static TExp reg(IExp size);
  static TExp fun(TExp param, TExp result);

  Kind kind() const { return kind_; }
  uint32_t varId() const { return var_; }
  const IExp& size() const { return *size_; }
  const TExp& param() const { return *a_; }
  const TExp& result() const { return *b_; }

  std::string str() const;

 private:
  Kind kind_ = Kind::Var;
  uint32_t var_ = 0;
  std::shared_ptr<IExp> size_;
  std::shared_ptr<TExp> a_, b_;
};

struct Constraint {
  enum class Kind : uint8_t {
    TypeEq,   // T1 = T2
    TypeSub,  // T1 is usable where T2 is required
    IntEq,    // I1 = I2
    IntLeq,   // I1 <= I2 (as plain integers)
  };
  Kind kind;
  TExp t1, t2;
  IExp i1, i2;
  SourceSpan span;

  static Constraint teq(TExp a, TExp b, SourceSpan s) {
    return {Kind::TypeEq, std::move(a), std::move(b), {}, {}, s};
  }
  static Constraint tsub(TExp a, TExp b, SourceSpan s) {
    return {Kind::TypeSub, std::move(a), std::move(b), {}, {}, s};
  }
  static Constraint ieq(IExp a, IExp b, SourceSpan s) {
    return {Kind::IntEq, TExp::unit(), TExp::unit(), std::move(a), std::move(b), s};
  }
  static Constraint ileq(IExp a, IExp b, SourceSpan s) {
    return {Kind::IntLeq, TExp::unit(), TExp::unit(), std::move(a), std::move(b), s};
  }
};

/// Fresh-variable supply shared between generation and solving.
class VarSupply {
 public:
  uint32_t freshType() { return nextType_++; }
  uint32_t freshInt() { return nextInt_++; }
  uint32_t typeCount() const { return nextType_; }
  uint32_t intCount() const { return nextInt_; }

 private:
  uint32_t nextType_ = 0;
  uint32_t nextInt_ = 0;
};

/// Rule-by-rule constraint generation over the desugared core term.
/// Throws Error{Type} on unbound names or internal value constructors.
std::pair<TExp, std::vector<Constraint>> genConstraints(
    const std::map<std::string, TExp>& ctx, const Term& t, VarSupply& supply);

/// Per-variable interval record produced by constraint preprocessing. The
/// ordering on integer sizes is reversed, so the maximal solution is the
/// smallest register; intervals below are reported in plain integer order.
struct BoundMap {
  struct IntEntry {
    std::optional<int64_t> lower;  // x >= lower
    std::optional<int64_t> upper;  // x <= upper
    std::optional<int64_t> value;  // assigned
    uint32_t root;                 // representative after unification
    int64_t offset;                // x = root + offset
  };
  std::map<uint32_t, IntEntry> ints;
  std::map<uint32_t, TExp> types;  // resolved type variables
  std::string str() const;
};

/// A solved substitution: every type variable maps to a closed type, every
/// integer variable to a natural number.
class TypeSubst {
 public:
  TExp apply(const TExp& t) const;
  int64_t intValue(uint32_t var) const;
  const BoundMap& bounds() const { return bounds_; }

  std::map<uint32_t, TExp> typeAssign;
  std::map<uint32_t, int64_t> intAssign;
  BoundMap bounds_;
};

/// Process constraints into unified bounds (Alg.-2 style case analysis)
/// without committing assignments. Exposed mainly for inspection and tests.
BoundMap computeBounds(const std::vector<Constraint>& cs, VarSupply& supply);

/// Full solve: bounds, then repeated assignment of closed variables to their
/// minimal (reverse-order maximal) values. Throws Error{Type} when a bound
/// intersection is empty or constructors clash.
TypeSubst solve(const std::vector<Constraint>& cs, VarSupply& supply);

struct Signature {
  std::vector<TExp> params;  // closed parameter types, outermost first
  TExp result;
  std::vector<std::string> warnings;  // defaulted variables
  BoundMap bounds;

  std::string str() const;
};

/// Infer the parameter types of a closed, possibly curried lambda. Register
/// sizes are the minimal sizes consistent with all constraints.
Signature inferSignature(const Term& t);

/// Bits needed to allocate one parameter: 1 for Bool, n for Register(n).
/// Throws Error{Type} for parameters that cannot be circuit inputs.
uint32_t paramWidth(const TExp& t);

}  // namespace revc
