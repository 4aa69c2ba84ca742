// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace revc {

/// Total map from bit/variable indices to Boolean values. Indices without an
/// explicit override read as 0, so sparse circuits over high indices simulate
/// without dense storage.
class BState {
 public:
  BState() = default;

  bool get(uint32_t i) const {
    auto it = over_.find(i);
    return it == over_.end() ? false : it->second;
  }
  void set(uint32_t i, bool v) {
    if (v)
      over_[i] = true;
    else
      over_.erase(i);  // keep the default-0 representation canonical
  }
  void flip(uint32_t i) { set(i, !get(i)); }

  bool operator==(const BState& o) const { return over_ == o.over_; }

  const std::unordered_map<uint32_t, bool>& overrides() const { return over_; }

 private:
  std::unordered_map<uint32_t, bool> over_;
};

/// XOR-AND Boolean expression over natural-number variable indices; the
/// compiler's intermediate representation. Values are immutable trees with
/// structural sharing, so substitution and copies are cheap.
class BExp {
 public:
  enum class Kind : uint8_t { False, True, Var, Xor, And };

  struct Node;
  using Ptr = std::shared_ptr<const Node>;

  struct Node {
    Kind kind;
    uint32_t var = 0;
    Ptr lhs, rhs;
    uint64_t size = 1;   // tree size, saturating
    uint64_t hash = 0;   // structural hash
  };

  BExp() : node_(falseNode()) {}

  static BExp constant(bool b) { return BExp(b ? trueNode() : falseNode()); }
  static BExp var(uint32_t i);
  static BExp xorOf(const BExp& a, const BExp& b);
  static BExp andOf(const BExp& a, const BExp& b);

  Kind kind() const { return node_->kind; }
  uint32_t varIndex() const { return node_->var; }
  BExp left() const { return BExp(node_->lhs); }
  BExp right() const { return BExp(node_->rhs); }
  uint64_t size() const { return node_->size; }
  uint64_t hash() const { return node_->hash; }

  bool isConst() const { return kind() == Kind::False || kind() == Kind::True; }
  bool isVar() const { return kind() == Kind::Var; }

  const Node* raw() const { return node_.get(); }

  /// Syntactic (structural) equality.
  bool operator==(const BExp& o) const;
  bool operator!=(const BExp& o) const { return !(*this == o); }

 private:
  explicit BExp(Ptr n) : node_(std::move(n)) {}
  static const Ptr& falseNode();
  static const Ptr& trueNode();

  Ptr node_;
};

/// Evaluate B in the field F2 under a total state.
bool evalBExp(const BExp& b, const BState& s);

/// Exact set of variable indices occurring in B.
std::set<uint32_t> vars(const BExp& b);

/// Largest variable index in B, if any.
std::optional<uint32_t> maxVar(const BExp& b);

/// Bottom-up constant/duplicate short-circuiting:
///   0+B -> B, B+B -> 0, 0&B -> 0, 1&B -> B, B&B -> B (and mirrored forms).
/// Duplicate elimination fires on syntactic equality only.
BExp simplify(const BExp& b);

/// Try to factor B as  targ + B'  with targ not occurring in B'. Var and Xor
/// nodes factor; And never does. nullopt means a fresh ancilla is needed.
std::optional<BExp> factorAs(const BExp& b, uint32_t targ);

/// Rewrite to positive-polarity ESOP form by distributing AND over XOR.
/// Throws Error{Limit} if the result would exceed sizeCap tree nodes.
BExp distributeAnds(const BExp& b, uint64_t sizeCap = 1'000'000);

/// Highest number of variable literals in any product of an ESOP-form
/// expression; constants have degree 0. Throws Error{Contract} on input that
/// is not an XOR of products of variables and constants.
uint32_t maxProductDegree(const BExp& b);

/// Replace every variable by its entry in the map; indices absent from the
/// map are left unchanged (mustBind=false) or reported (mustBind=true).
BExp substVars(const BExp& b, const std::unordered_map<uint32_t, uint32_t>& map,
               bool mustBind = false);

/// Replace every variable by a whole expression. Throws Error{Limit} if the
/// result exceeds sizeCap nodes, Error{Eval} on an unbound index.
BExp substExprs(const BExp& b,
                const std::function<const BExp*(uint32_t)>& lookup,
                uint64_t sizeCap = 1'000'000);

/// Debug form: ^ for XOR, & for AND, x<i> for variables.
std::string toString(const BExp& b);

}  // namespace revc
