// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "revc/bexp.hpp"

namespace revc {

/// Reduced ordered BDD store with hash-consing and an apply cache. Variable
/// order is fixed ascending by index; canonicity means semantic equality is
/// reference equality within one manager. References are only meaningful
/// together with the manager that produced them.
class BddManager {
 public:
  using Ref = uint32_t;
  static constexpr Ref kFalse = 0;
  static constexpr Ref kTrue = 1;

  enum class Op : uint8_t { And, Xor };

  explicit BddManager(size_t nodeLimit = 10'000'000);

  Ref constant(bool b) const { return b ? kTrue : kFalse; }
  Ref var(uint32_t i);
  Ref apply(Op op, Ref a, Ref b);

  /// Canonical BDD of an expression; Var indices become BDD variables.
  Ref bddOfBExp(const BExp& b);

  /// Evaluate a BDD under a total assignment.
  bool evaluate(Ref r, const BState& s) const;

  /// Lexicographically smallest assignment reaching the given terminal, as
  /// (var, value) pairs along the path; unlisted variables are zero.
  /// nullopt when the terminal is unreachable.
  std::optional<std::vector<std::pair<uint32_t, bool>>> findPath(Ref r, bool target) const;

  size_t nodeCount() const { return nodes_.size(); }

 private:
  struct Node {
    uint32_t var;
    Ref lo, hi;
  };
  struct NodeKey {
    uint32_t var;
    Ref lo, hi;
    bool operator==(const NodeKey&) const = default;
  };
  struct NodeKeyHash {
    size_t operator()(const NodeKey& k) const {
      uint64_t h = (uint64_t(k.var) << 40) ^ (uint64_t(k.lo) << 20) ^ k.hi;
      h ^= h >> 33;
      h *= 0xff51afd7ed558ccdULL;
      h ^= h >> 33;
      return static_cast<size_t>(h);
    }
  };

  static constexpr uint32_t kTermVar = UINT32_MAX;

  Ref mk(uint32_t var, Ref lo, Ref hi);
  uint32_t varOf(Ref r) const { return nodes_[r].var; }

  size_t limit_;
  std::vector<Node> nodes_;
  std::unordered_map<NodeKey, Ref, NodeKeyHash> unique_;
  std::unordered_map<uint64_t, Ref> cache_;
};

}  // namespace revc
