// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#include "revc/bdd.hpp"

#include <algorithm>

#include "revc/diagnostics.hpp"

namespace revc {

BddManager::BddManager(size_t nodeLimit) : limit_(nodeLimit) {
  nodes_.push_back({kTermVar, kFalse, kFalse});  // 0
  nodes_.push_back({kTermVar, kTrue, kTrue});    // 1
}

BddManager::Ref BddManager::mk(uint32_t var, Ref lo, Ref hi) {
  if (lo == hi) return lo;
  NodeKey key{var, lo, hi};
  auto it = unique_.find(key);
  if (it != unique_.end()) return it->second;
  if (nodes_.size() >= limit_)
    throw Error(ErrorKind::Limit,
                "BDD node limit of " + std::to_string(limit_) + " exceeded");
  Ref r = static_cast<Ref>(nodes_.size());
  nodes_.push_back({var, lo, hi});
  unique_.emplace(key, r);
  return r;
}

BddManager::Ref BddManager::var(uint32_t i) { return mk(i, kFalse, kTrue); }

BddManager::Ref BddManager::apply(Op op, Ref a, Ref b) {
  // terminal short-circuits
  if (op == Op::And) {
    if (a == kFalse || b == kFalse) return kFalse;
    if (a == kTrue) return b;
    if (b == kTrue) return a;
    if (a == b) return a;
  } else {
    if (a == b) return kFalse;
    if (a == kFalse) return b;
    if (b == kFalse) return a;
  }
  if (a > b && (op == Op::And || op == Op::Xor)) std::swap(a, b);  // both commute
  uint64_t key = (uint64_t(op == Op::And ? 1 : 2) << 60) | (uint64_t(a) << 30) | b;
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  uint32_t va = varOf(a), vb = varOf(b);
  uint32_t v = std::min(va, vb);
  Ref a0 = va == v ? nodes_[a].lo : a;
  Ref a1 = va == v ? nodes_[a].hi : a;
  Ref b0 = vb == v ? nodes_[b].lo : b;
  Ref b1 = vb == v ? nodes_[b].hi : b;
  Ref lo = apply(op, a0, b0);
  Ref hi = apply(op, a1, b1);
  Ref r = mk(v, lo, hi);
  cache_.emplace(key, r);
  return r;
}

BddManager::Ref BddManager::bddOfBExp(const BExp& b) {
  std::unordered_map<const BExp::Node*, Ref> memo;
  std::vector<std::pair<BExp, bool>> stack{{b, false}};
  while (!stack.empty()) {
    auto [e, ready] = stack.back();
    stack.pop_back();
    if (memo.count(e.raw())) continue;
    switch (e.kind()) {
      case BExp::Kind::False: memo.emplace(e.raw(), kFalse); break;
      case BExp::Kind::True: memo.emplace(e.raw(), kTrue); break;
      case BExp::Kind::Var: memo.emplace(e.raw(), var(e.varIndex())); break;
      default:
        if (!ready) {
          stack.push_back({e, true});
          if (!memo.count(e.left().raw())) stack.push_back({e.left(), false});
          if (!memo.count(e.right().raw())) stack.push_back({e.right(), false});
        } else {
          Op op = e.kind() == BExp::Kind::Xor ? Op::Xor : Op::And;
          memo.emplace(e.raw(), apply(op, memo.at(e.left().raw()), memo.at(e.right().raw())));
        }
    }
  }
  return memo.at(b.raw());
}

bool BddManager::evaluate(Ref r, const BState& s) const {
  while (r != kFalse && r != kTrue) {
    const Node& n = nodes_[r];
    r = s.get(n.var) ? n.hi : n.lo;
  }
  return r == kTrue;
}

std::optional<std::vector<std::pair<uint32_t, bool>>> BddManager::findPath(Ref r,
                                                                           bool target) const {
  Ref goal = target ? kTrue : kFalse;
  if (r == goal) return std::vector<std::pair<uint32_t, bool>>{};
  // which nodes can reach the goal terminal
  std::unordered_map<Ref, bool> reach;
  std::function<bool(Ref)> canReach = [&](Ref x) -> bool {
    if (x == goal) return true;
    if (x == kFalse || x == kTrue) return false;
    auto it = reach.find(x);
    if (it != reach.end()) return it->second;
    bool ok = canReach(nodes_[x].lo) || canReach(nodes_[x].hi);
    reach.emplace(x, ok);
    return ok;
  };
  if (!canReach(r)) return std::nullopt;
  std::vector<std::pair<uint32_t, bool>> path;
  while (r != goal) {
    const Node& n = nodes_[r];
    if (canReach(n.lo)) {  // prefer 0 for the smallest assignment
      path.emplace_back(n.var, false);
      r = n.lo;
    } else {
      path.emplace_back(n.var, true);
      r = n.hi;
    }
  }
  return path;
}

}  // namespace revc
