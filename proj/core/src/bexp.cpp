// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#include "revc/bexp.hpp"

#include <algorithm>
#include <cassert>

#include "revc/diagnostics.hpp"

namespace revc {

namespace {

constexpr uint64_t kSizeSaturation = uint64_t(1) << 62;

uint64_t mix(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

uint64_t hashNode(BExp::Kind k, uint32_t var, uint64_t hl, uint64_t hr) {
  uint64_t h = mix(static_cast<uint64_t>(k) * 0x9e3779b97f4a7c15ULL + var);
  h = mix(h ^ (hl + 0x9e3779b97f4a7c15ULL));
  h = mix(h ^ (hr + 0x632be59bd9b4e019ULL));
  return h;
}

uint64_t addSat(uint64_t a, uint64_t b) {
  uint64_t s = a + b;
  if (s < a || s > kSizeSaturation) return kSizeSaturation;
  return s;
}

}  // namespace

const BExp::Ptr& BExp::falseNode() {
  static const Ptr n = std::make_shared<Node>(
      Node{Kind::False, 0, nullptr, nullptr, 1, hashNode(Kind::False, 0, 0, 0)});
  return n;
}

const BExp::Ptr& BExp::trueNode() {
  static const Ptr n = std::make_shared<Node>(
      Node{Kind::True, 0, nullptr, nullptr, 1, hashNode(Kind::True, 0, 0, 0)});
  return n;
}

BExp BExp::var(uint32_t i) {
  return BExp(std::make_shared<Node>(
      Node{Kind::Var, i, nullptr, nullptr, 1, hashNode(Kind::Var, i, 0, 0)}));
}

BExp BExp::xorOf(const BExp& a, const BExp& b) {
  return BExp(std::make_shared<Node>(
      Node{Kind::Xor, 0, a.node_, b.node_, addSat(1, addSat(a.size(), b.size())),
           hashNode(Kind::Xor, 0, a.hash(), b.hash())}));
}

BExp BExp::andOf(const BExp& a, const BExp& b) {
  return BExp(std::make_shared<Node>(
      Node{Kind::And, 0, a.node_, b.node_, addSat(1, addSat(a.size(), b.size())),
           hashNode(Kind::And, 0, a.hash(), b.hash())}));
}

bool BExp::operator==(const BExp& o) const {
  // Hash mismatch settles almost everything; the structural walk below is the
  // tie-breaker and prunes on pointer equality.
  if (node_ == o.node_) return true;
  if (node_->hash != o.node_->hash) return false;
  std::vector<std::pair<const Node*, const Node*>> stack{{node_.get(), o.node_.get()}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    if (a == b) continue;
    if (a->kind != b->kind || a->var != b->var || a->hash != b->hash) return false;
    if (a->lhs) stack.emplace_back(a->lhs.get(), b->lhs.get());
    if (a->rhs) stack.emplace_back(a->rhs.get(), b->rhs.get());
  }
  return true;
}

namespace {

// Iterative post-order fold with per-node memoization. Handles deep and
// heavily shared expressions without recursion.
template <typename T, typename Leaf, typename Binary>
T foldBExp(const BExp& root, Leaf leaf, Binary binary) {
  std::unordered_map<const BExp::Node*, T> memo;
  std::vector<std::pair<BExp, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [e, ready] = stack.back();
    stack.pop_back();
    const auto* n = e.raw();
    if (memo.count(n)) continue;
    if (e.kind() == BExp::Kind::Xor || e.kind() == BExp::Kind::And) {
      if (!ready) {
        stack.push_back({e, true});
        if (!memo.count(e.left().raw())) stack.push_back({e.left(), false});
        if (!memo.count(e.right().raw())) stack.push_back({e.right(), false});
      } else {
        memo.emplace(n, binary(e, memo.at(e.left().raw()), memo.at(e.right().raw())));
      }
    } else {
      memo.emplace(n, leaf(e));
    }
  }
  return memo.at(root.raw());
}

}  // namespace

bool evalBExp(const BExp& b, const BState& s) {
  return foldBExp<bool>(
      b,
      [&](const BExp& e) {
        switch (e.kind()) {
          case BExp::Kind::False: return false;
          case BExp::Kind::True: return true;
          default: return s.get(e.varIndex());
        }
      },
      [](const BExp& e, bool l, bool r) {
        return e.kind() == BExp::Kind::Xor ? (l != r) : (l && r);
      });
}

std::set<uint32_t> vars(const BExp& b) {
  std::set<uint32_t> out;
  std::unordered_map<const BExp::Node*, bool> seen;
  std::vector<BExp> stack{b};
  while (!stack.empty()) {
    BExp e = stack.back();
    stack.pop_back();
    if (seen.count(e.raw())) continue;
    seen.emplace(e.raw(), true);
    switch (e.kind()) {
      case BExp::Kind::Var: out.insert(e.varIndex()); break;
      case BExp::Kind::Xor:
      case BExp::Kind::And:
        stack.push_back(e.left());
        stack.push_back(e.right());
        break;
      default: break;
    }
  }
  return out;
}

std::optional<uint32_t> maxVar(const BExp& b) {
  auto v = vars(b);
  if (v.empty()) return std::nullopt;
  return *v.rbegin();
}

namespace {

bool containsVar(const BExp& b, uint32_t targ) {
  std::unordered_map<const BExp::Node*, bool> seen;
  std::vector<BExp> stack{b};
  while (!stack.empty()) {
    BExp e = stack.back();
    stack.pop_back();
    if (seen.count(e.raw())) continue;
    seen.emplace(e.raw(), true);
    if (e.kind() == BExp::Kind::Var && e.varIndex() == targ) return true;
    if (e.kind() == BExp::Kind::Xor || e.kind() == BExp::Kind::And) {
      stack.push_back(e.left());
      stack.push_back(e.right());
    }
  }
  return false;
}

}  // namespace

BExp simplify(const BExp& b) {
  return foldBExp<BExp>(
      b, [](const BExp& e) { return e; },
      [](const BExp& e, const BExp& l, const BExp& r) {
        if (e.kind() == BExp::Kind::Xor) {
          if (l.kind() == BExp::Kind::False) return r;
          if (r.kind() == BExp::Kind::False) return l;
          if (l == r) return BExp::constant(false);
          return BExp::xorOf(l, r);
        }
        if (l.kind() == BExp::Kind::False || r.kind() == BExp::Kind::False)
          return BExp::constant(false);
        if (l.kind() == BExp::Kind::True) return r;
        if (r.kind() == BExp::Kind::True) return l;
        if (l == r) return l;
        return BExp::andOf(l, r);
      });
}

std::optional<BExp> factorAs(const BExp& b, uint32_t targ) {
  switch (b.kind()) {
    case BExp::Kind::False:
    case BExp::Kind::True:
      return std::nullopt;
    case BExp::Kind::Var:
      if (b.varIndex() == targ) return BExp::constant(false);
      return std::nullopt;
    case BExp::Kind::And:
      return std::nullopt;
    case BExp::Kind::Xor: {
      BExp x = b.left(), y = b.right();
      if (auto fx = factorAs(x, targ); fx && !containsVar(y, targ))
        return fx->kind() == BExp::Kind::False ? y : BExp::xorOf(*fx, y);
      if (auto fy = factorAs(y, targ); fy && !containsVar(x, targ))
        return fy->kind() == BExp::Kind::False ? x : BExp::xorOf(x, *fy);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

namespace {

// ESOP intermediate form: an expression as a list of products. False is the
// empty sum; a product is an And-tree over Var/True leaves.
using ProductList = std::vector<BExp>;

BExp productAnd(const BExp& p, const BExp& q) {
  if (p.kind() == BExp::Kind::True) return q;
  if (q.kind() == BExp::Kind::True) return p;
  return BExp::andOf(p, q);
}

uint64_t listSize(const ProductList& l) {
  uint64_t s = 0;
  for (const auto& p : l) s = addSat(s, p.size());
  return s;
}

}  // namespace

BExp distributeAnds(const BExp& b, uint64_t sizeCap) {
  auto products = foldBExp<ProductList>(
      b,
      [](const BExp& e) -> ProductList {
        switch (e.kind()) {
          case BExp::Kind::False: return {};
          default: return {e};
        }
      },
      [&](const BExp& e, const ProductList& l, const ProductList& r) -> ProductList {
        ProductList out;
        if (e.kind() == BExp::Kind::Xor) {
          out.reserve(l.size() + r.size());
          out.insert(out.end(), l.begin(), l.end());
          out.insert(out.end(), r.begin(), r.end());
        } else {
          out.reserve(l.size() * r.size());
          for (const auto& p : l)
            for (const auto& q : r) out.push_back(productAnd(p, q));
        }
        if (listSize(out) > sizeCap)
          throw Error(ErrorKind::Limit,
                      "expression exceeded the ESOP size cap of " + std::to_string(sizeCap) +
                          " nodes while distributing");
        return out;
      });
  if (products.empty()) return BExp::constant(false);
  BExp acc = products.front();
  for (size_t i = 1; i < products.size(); ++i) acc = BExp::xorOf(acc, products[i]);
  return acc;
}

namespace {

uint32_t productDegree(const BExp& p) {
  uint32_t deg = 0;
  std::vector<BExp> stack{p};
  while (!stack.empty()) {
    BExp e = stack.back();
    stack.pop_back();
    switch (e.kind()) {
      case BExp::Kind::Var: deg += 1; break;
      case BExp::Kind::True: break;
      case BExp::Kind::And:
        stack.push_back(e.left());
        stack.push_back(e.right());
        break;
      default:
        throw Error(ErrorKind::Contract, "not in ESOP form: " + toString(e) + " inside a product");
    }
  }
  return deg;
}

}  // namespace

uint32_t maxProductDegree(const BExp& b) {
  if (b.kind() == BExp::Kind::False) return 0;
  uint32_t best = 0;
  std::vector<BExp> spine{b};
  while (!spine.empty()) {
    BExp e = spine.back();
    spine.pop_back();
    if (e.kind() == BExp::Kind::Xor) {
      spine.push_back(e.left());
      spine.push_back(e.right());
    } else {
      best = std::max(best, productDegree(e));
    }
  }
  return best;
}

BExp substVars(const BExp& b, const std::unordered_map<uint32_t, uint32_t>& map, bool mustBind) {
  return foldBExp<BExp>(
      b,
      [&](const BExp& e) {
        if (e.kind() != BExp::Kind::Var) return e;
        auto it = map.find(e.varIndex());
        if (it == map.end()) {
          if (mustBind)
            throw Error(ErrorKind::Eval, "unbound location " + std::to_string(e.varIndex()) +
                                             " in expression");
          return e;
        }
        return BExp::var(it->second);
      },
      [](const BExp& e, const BExp& l, const BExp& r) {
        return e.kind() == BExp::Kind::Xor ? BExp::xorOf(l, r) : BExp::andOf(l, r);
      });
}

BExp substExprs(const BExp& b, const std::function<const BExp*(uint32_t)>& lookup,
                uint64_t sizeCap) {
  return foldBExp<BExp>(
      b,
      [&](const BExp& e) {
        if (e.kind() != BExp::Kind::Var) return e;
        const BExp* bound = lookup(e.varIndex());
        if (!bound)
          throw Error(ErrorKind::Eval,
                      "unbound location " + std::to_string(e.varIndex()) + " in expression");
        return *bound;
      },
      [&](const BExp& e, const BExp& l, const BExp& r) {
        BExp out = e.kind() == BExp::Kind::Xor ? BExp::xorOf(l, r) : BExp::andOf(l, r);
        if (out.size() > sizeCap)
          throw Error(ErrorKind::Limit,
                      "expression exceeded the size cap of " + std::to_string(sizeCap) +
                          " nodes; use the default compilation mode");
        return out;
      });
}

std::string toString(const BExp& b) {
  // Precedence: & binds tighter than ^.
  auto str = foldBExp<std::pair<std::string, int>>(
      b,
      [](const BExp& e) -> std::pair<std::string, int> {
        switch (e.kind()) {
          case BExp::Kind::False: return {"0", 2};
          case BExp::Kind::True: return {"1", 2};
          default: return {"x" + std::to_string(e.varIndex()), 2};
        }
      },
      [](const BExp& e, const std::pair<std::string, int>& l,
         const std::pair<std::string, int>& r) -> std::pair<std::string, int> {
        int prec = e.kind() == BExp::Kind::Xor ? 0 : 1;
        auto wrap = [&](const std::pair<std::string, int>& c) {
          return c.second < prec ? "(" + c.first + ")" : c.first;
        };
        const char* op = e.kind() == BExp::Kind::Xor ? " ^ " : " & ";
        return {wrap(l) + op + wrap(r), prec};
      });
  return str.first;
}

}  // namespace revc
