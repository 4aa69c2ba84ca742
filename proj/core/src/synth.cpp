// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#include "revc/synth.hpp"

#include <algorithm>

#include "revc/diagnostics.hpp"

namespace revc {

namespace {

struct Ctx {
  AncHeap heap;
  Circuit circ;
  std::vector<uint32_t> live;    // popped, not yet freed, in pop order
  std::set<uint32_t> allocated;  // every index ever popped here
  uint32_t peakLive = 0;
  Cleanup strategy = Cleanup::Lazy;
  bool eager = false;

  uint32_t pop() {
    uint32_t i = heap.popMin();
    live.push_back(i);
    allocated.insert(i);
    peakLive = std::max<uint32_t>(peakLive, static_cast<uint32_t>(live.size()));
    return i;
  }

  void freeBit(uint32_t i) {
    auto it = std::find(live.rbegin(), live.rend(), i);
    if (it == live.rend())
      throw Error(ErrorKind::Contract, "freeing an ancilla that is not live");
    live.erase(std::next(it).base());
    heap.insert(i);
  }

  void emit(const Gate& g) {
    // Controls must never sit on pooled (zero, reusable) bits.
    if (g.kind != Gate::Kind::Not && heap.contains(g.c1))
      throw Error(ErrorKind::Contract, "gate control on a pooled ancilla");
    if (g.kind == Gate::Kind::Toffoli && heap.contains(g.c2))
      throw Error(ErrorKind::Contract, "gate control on a pooled ancilla");
    circ.push_back(g);
  }
};

uint32_t compileOop(Ctx& ctx, const BExp& b);

// Compile b onto targ. Xor spines are walked iteratively so ESOP chains of
// arbitrary length do not recurse.
void compileOnto(Ctx& ctx, uint32_t targ, const BExp& b) {
  std::vector<BExp> work{b};
  while (!work.empty()) {
    BExp e = work.back();
    work.pop_back();
    switch (e.kind()) {
      case BExp::Kind::False:
        break;
      case BExp::Kind::True:
        ctx.emit(Gate::notGate(targ));
        break;
      case BExp::Kind::Var:
        ctx.emit(Gate::cnot(e.varIndex(), targ));
        break;
      case BExp::Kind::Xor:
        work.push_back(e.right());
        work.push_back(e.left());
        break;
      case BExp::Kind::And: {
        size_t mark = ctx.circ.size();
        std::vector<uint32_t> popsBefore = ctx.live;
        uint32_t r1 = compileOop(ctx, e.left());
        uint32_t r2 = compileOop(ctx, e.right());
        ctx.emit(Gate::toffoli(r1, r2, targ));
        if (ctx.eager) {
          // Undo both conjunct sub-circuits right away and free their bits.
          std::span<const Gate> segment(ctx.circ.data() + mark, ctx.circ.size() - mark);
          Circuit undo = uncompute(segment, {targ});
          for (const Gate& g : undo) ctx.circ.push_back(g);
          std::vector<uint32_t> toFree;
          for (uint32_t i : ctx.live)
            if (std::find(popsBefore.begin(), popsBefore.end(), i) == popsBefore.end())
              toFree.push_back(i);
          for (auto it = toFree.rbegin(); it != toFree.rend(); ++it) ctx.freeBit(*it);
        }
        break;
      }
    }
  }
}

uint32_t compileOop(Ctx& ctx, const BExp& b) {
  if (b.isVar()) return b.varIndex();
  uint32_t targ = ctx.pop();
  compileOnto(ctx, targ, b);
  return targ;
}

void checkDisjoint(const AncHeap& ah, const BExp& b, std::optional<uint32_t> targ) {
  for (uint32_t v : vars(b)) {
    if (ah.contains(v))
      throw Error(ErrorKind::Contract,
                  "variable x" + std::to_string(v) + " overlaps the ancilla pool");
    if (targ && v == *targ)
      throw Error(ErrorKind::Contract,
                  "target " + std::to_string(*targ) + " occurs in the expression");
  }
  if (targ && ah.contains(*targ))
    throw Error(ErrorKind::Contract, "target " + std::to_string(*targ) + " is a pooled ancilla");
}

SynthResult finish(Ctx&& ctx, uint32_t result) {
  SynthResult r;
  r.heap = std::move(ctx.heap);
  r.result = result;
  r.ancillas = std::move(ctx.live);
  r.circ = std::move(ctx.circ);
  r.allocated = std::move(ctx.allocated);
  r.peakLive = ctx.peakLive;
  return r;
}

}  // namespace

SynthResult compileBExp(AncHeap ah, uint32_t targ, const BExp& b) {
  checkDisjoint(ah, b, targ);
  Ctx ctx;
  ctx.heap = std::move(ah);
  compileOnto(ctx, targ, b);
  return finish(std::move(ctx), targ);
}

SynthResult compileBExpOop(AncHeap ah, const BExp& b) {
  checkDisjoint(ah, b, std::nullopt);
  Ctx ctx;
  ctx.heap = std::move(ah);
  uint32_t res = compileOop(ctx, b);
  return finish(std::move(ctx), res);
}

SynthResult compileBExpClean(AncHeap ah, uint32_t targ, const BExp& b, Cleanup strategy) {
  checkDisjoint(ah, b, targ);
  Ctx ctx;
  ctx.heap = std::move(ah);
  ctx.eager = strategy == Cleanup::Eager;
  compileOnto(ctx, targ, b);
  if (!ctx.eager) {
    Circuit undo = uncompute(ctx.circ, {targ});
    for (const Gate& g : undo) ctx.circ.push_back(g);
  }
  // Everything allocated has been uncomputed to zero; hand it back.
  std::vector<uint32_t> stillLive = ctx.live;
  for (auto it = stillLive.rbegin(); it != stillLive.rend(); ++it) ctx.freeBit(*it);
  return finish(std::move(ctx), targ);
}

SynthResult compileBExpCleanOop(AncHeap ah, const BExp& b, Cleanup strategy) {
  checkDisjoint(ah, b, std::nullopt);
  uint32_t targ = ah.popMin();
  SynthResult r = compileBExpClean(std::move(ah), targ, b, strategy);
  return r;
}

uint32_t ancillaCount(const BExp& b, Cleanup strategy) {
  uint32_t base = 0;
  if (auto mv = maxVar(b)) base = *mv + 1;
  uint32_t targ = base;
  AncHeap ah(base + 1);
  SynthResult r = compileBExpClean(std::move(ah), targ, b, strategy);
  return static_cast<uint32_t>(r.allocated.size());
}

}  // namespace revc
