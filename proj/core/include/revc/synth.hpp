// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "revc/bexp.hpp"
#include "revc/circuit.hpp"

namespace revc {

/// Pool of free zero-valued ancilla indices plus a fresh counter. Allocation
/// returns the minimum pooled index when one exists, so previously used
/// ancillas are reused before new bits are brought in.
class AncHeap {
 public:
  AncHeap() = default;
  explicit AncHeap(uint32_t fresh) : fresh_(fresh) {}

  uint32_t popMin() {
    if (!pool_.empty()) {
      uint32_t i = *pool_.begin();
      pool_.erase(pool_.begin());
      return i;
    }
    return fresh_++;
  }

  void insert(uint32_t i) {
    // Pool entries stay below the fresh counter.
    if (i >= fresh_) fresh_ = i + 1;  // defensive; callers only return popped bits
    pool_.insert(i);
  }

  bool contains(uint32_t i) const { return pool_.count(i) != 0; }
  const std::set<uint32_t>& pool() const { return pool_; }
  uint32_t fresh() const { return fresh_; }

 private:
  std::set<uint32_t> pool_;
  uint32_t fresh_ = 0;
};

enum class Cleanup { Eager, Lazy };

/// Outcome of compiling one Boolean expression.
struct SynthResult {
  AncHeap heap;                      // heap after compilation
  uint32_t result = 0;               // bit holding the value
  std::vector<uint32_t> ancillas;    // allocated and still live, in pop order
  Circuit circ;
  std::set<uint32_t> allocated;      // every distinct index popped
  uint32_t peakLive = 0;             // most ancillas live at once
};

/// Alg.-1 core: circuit computing  s[targ] ^= [[B]]s  on states whose pooled
/// bits are zero. Requires vars(B), the pool, and {targ} pairwise disjoint.
SynthResult compileBExp(AncHeap ah, uint32_t targ, const BExp& b);

/// Out-of-place variant: a bare variable is returned as-is with no gates;
/// anything else is compiled onto a popped target.
SynthResult compileBExpOop(AncHeap ah, const BExp& b);

/// compileBExp followed by ancilla cleanup. Lazy appends one restricted
/// inverse of the whole circuit; eager uncomputes both conjunct sub-circuits
/// right after each Toffoli, so fewer bits are live at the cost of re-running
/// sub-circuits. Either way every allocated ancilla is zero afterwards and
/// returned to the pool.
SynthResult compileBExpClean(AncHeap ah, uint32_t targ, const BExp& b, Cleanup strategy);

/// Cleanup variant of compileBExpOop; the popped target stays live.
SynthResult compileBExpCleanOop(AncHeap ah, const BExp& b, Cleanup strategy);

/// Distinct ancillas allocated when compiling b onto a fresh target with the
/// given strategy. On an ESOP product of degree k, lazy allocates exactly
/// max(0, k-2).
uint32_t ancillaCount(const BExp& b, Cleanup strategy);

}  // namespace revc
