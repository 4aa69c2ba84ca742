// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "revc/ast.hpp"

namespace revc {

namespace sugar {

/// Meta-level integer expressions: loop bounds, indices, slice bounds,
/// rotation amounts and register sizes. These fold to constants during
/// desugaring; only loop variables may appear in them.
struct IExpNode;
using IExp = std::shared_ptr<const IExpNode>;

struct IExpNode {
  enum class Kind : uint8_t { Const, Var, Add, Sub, Mul };
  Kind kind;
  int64_t value = 0;
  std::string name;
  IExp lhs, rhs;
  SourceSpan span;
};

IExp iconst(int64_t v, SourceSpan span = {});
IExp ivar(std::string name, SourceSpan span = {});
IExp ibin(IExpNode::Kind k, IExp a, IExp b, SourceSpan span = {});

/// Surface-level term before desugaring: carries the derived forms
/// (not, ||, if, for) and unfolded meta-integer expressions.
struct SNode;
using STerm = std::shared_ptr<const SNode>;

struct SNode {
  enum class Kind : uint8_t {
    Let, Lambda, Apply, Seq, Var, Assign, BoolConst, Xor, And, Or, Not, If,
    For, Clean, Assert, RegisterLit, ZeroCreate, Index, Slice, Append, Rotate,
    UnitConst,
  };
  Kind kind;
  SourceSpan span;
  std::string name;
  bool boolVal = false;
  STerm t1, t2, t3;
  std::vector<STerm> terms;
  IExp i1, i2;
};

/// Parse source text to the sugared surface tree.
STerm parseSugared(const std::string& source);

/// Eliminate all derived forms:
///   not t            ->  true <> t
///   t1 || t2         ->  (t1 && t2) <> (t1 <> t2)
///   if c then a else b -> (c && a) <> ((true <> c) && b)
///   for x in i..j do t -> t[x:=i]; ...; t[x:=j]   (empty range -> unit)
/// and fold every meta-level integer expression to a literal.
Term desugar(const STerm& t);

}  // namespace sugar

/// Parse and desugar a whole program.
Term parse(const std::string& source);

}  // namespace revc
