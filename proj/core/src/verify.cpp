// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#include "revc/verify.hpp"

#include <algorithm>
#include <sstream>

namespace revc {

void BddMachine::allocInput(uint32_t count) {
  for (uint32_t i = 0; i < count; ++i) bdds_.emplace(i, mgr_.var(i));
}

BddManager::Ref BddMachine::build(const BExp& b, SourceSpan span) const {
  std::unordered_map<const BExp::Node*, BddManager::Ref> memo;
  std::vector<std::pair<BExp, bool>> stack{{b, false}};
  while (!stack.empty()) {
    auto [e, ready] = stack.back();
    stack.pop_back();
    if (memo.count(e.raw())) continue;
    switch (e.kind()) {
      case BExp::Kind::False:
        memo.emplace(e.raw(), BddManager::kFalse);
        break;
      case BExp::Kind::True:
        memo.emplace(e.raw(), BddManager::kTrue);
        break;
      case BExp::Kind::Var: {
        auto it = bdds_.find(e.varIndex());
        if (it == bdds_.end())
          throw Error(ErrorKind::Eval,
                      "read of unbound location " + std::to_string(e.varIndex()), span);
        memo.emplace(e.raw(), it->second);
        break;
      }
      default:
        if (!ready) {
          stack.push_back({e, true});
          if (!memo.count(e.left().raw())) stack.push_back({e.left(), false});
          if (!memo.count(e.right().raw())) stack.push_back({e.right(), false});
        } else {
          auto op = e.kind() == BExp::Kind::Xor ? BddManager::Op::Xor : BddManager::Op::And;
          memo.emplace(e.raw(), mgr_.apply(op, memo.at(e.left().raw()), memo.at(e.right().raw())));
        }
    }
  }
  return memo.at(b.raw());
}

void BddMachine::assign(uint32_t loc, const BExp& b, SourceSpan span) {
  bdds_.insert_or_assign(loc, build(b, span));
}

bool BddMachine::evalLoc(uint32_t loc, const BState& init) const {
  return mgr_.evaluate(lookup(loc), init);
}

void BddMachine::clean(uint32_t loc, SourceSpan span) {
  BddManager::Ref r = lookup(loc, span);
  CheckEntry entry{CheckEntry::Kind::Clean, span, r == BddManager::kFalse, std::nullopt};
  if (!entry.pass) {
    if (auto path = mgr_.findPath(r, true)) entry.counterexample = formatAssignment(*path);
  }
  report_.entries.push_back(std::move(entry));
  bdds_.erase(loc);  // mirror the [clean] domain restriction
}

void BddMachine::assertTrue(const BExp& b, SourceSpan span) {
  BddManager::Ref r = build(b, span);
  CheckEntry entry{CheckEntry::Kind::Assert, span, r == BddManager::kTrue, std::nullopt};
  if (!entry.pass) {
    if (auto path = mgr_.findPath(r, false)) entry.counterexample = formatAssignment(*path);
  }
  report_.entries.push_back(std::move(entry));
}

std::vector<uint32_t> BddMachine::boundLocs() const {
  std::vector<uint32_t> out;
  out.reserve(bdds_.size());
  for (const auto& [l, r] : bdds_) out.push_back(l);
  return out;
}

BddManager::Ref BddMachine::lookup(uint32_t loc, SourceSpan span) const {
  auto it = bdds_.find(loc);
  if (it == bdds_.end())
    throw Error(ErrorKind::Eval, "read of unbound location " + std::to_string(loc), span);
  return it->second;
}

std::string formatAssignment(const std::vector<std::pair<uint32_t, bool>>& path) {
  if (path.empty()) return "any input";
  std::ostringstream out;
  bool first = true;
  for (auto [v, b] : path) {
    if (!first) out << " ";
    first = false;
    out << "x" << v << "=" << (b ? 1 : 0);
  }
  return out.str();
}

CheckReport checkProgram(const Term& t, size_t nodeLimit) {
  PreparedProgram p = prepareProgram(t);
  BddManager mgr(nodeLimit);
  BddMachine m(mgr);
  m.allocInput(p.inputCount);
  uint32_t nextLoc = p.nextLoc;
  Value result = evalTerm(m, nextLoc, p.body);
  resultLocs(m, nextLoc, result);
  return m.takeReport();
}

std::vector<BddManager::Ref> symbolicCircuit(BddManager& mgr, const Circuit& c, uint32_t bits,
                                             const std::vector<uint32_t>& inputs) {
  std::vector<BddManager::Ref> state(bits, BddManager::kFalse);
  for (uint32_t i : inputs) {
    if (i >= bits) throw Error(ErrorKind::Contract, "input bit beyond circuit width");
    state[i] = mgr.var(i);
  }
  for (const Gate& g : c) {
    switch (g.kind) {
      case Gate::Kind::Not:
        state[g.target] = mgr.apply(BddManager::Op::Xor, state[g.target], BddManager::kTrue);
        break;
      case Gate::Kind::Cnot:
        state[g.target] = mgr.apply(BddManager::Op::Xor, state[g.target], state[g.c1]);
        break;
      case Gate::Kind::Toffoli: {
        BddManager::Ref prod = mgr.apply(BddManager::Op::And, state[g.c1], state[g.c2]);
        state[g.target] = mgr.apply(BddManager::Op::Xor, state[g.target], prod);
        break;
      }
    }
  }
  return state;
}

ValidationReport validateTranslation(const Term& t, const CompiledUnit& u, size_t nodeLimit,
                                     uint64_t exprCap) {
  ValidationReport report;
  BddManager mgr(nodeLimit);

  // Program side: expressions over the inputs, then canonical BDDs.
  PreparedProgram p = prepareProgram(t, u.paramTypes.empty()
                                            ? std::optional<std::vector<TExp>>{}
                                            : std::optional<std::vector<TExp>>{u.paramTypes});
  BexpMachine m(exprCap);
  m.allocInput(p.inputCount);
  uint32_t nextLoc = p.nextLoc;
  Value result = evalTerm(m, nextLoc, p.body);
  std::vector<uint32_t> outLocs = resultLocs(m, nextLoc, result);

  if (outLocs.size() != u.outputBits.size()) {
    report.outputCountMatches = false;
    return report;
  }

  std::vector<BddManager::Ref> programSide;
  programSide.reserve(outLocs.size());
  for (uint32_t l : outLocs) programSide.push_back(mgr.bddOfBExp(m.lookup(l)));

  // Circuit side: symbolic simulation from variables on the input bits.
  uint32_t bits = static_cast<uint32_t>(u.stats.bits);
  std::vector<BddManager::Ref> state = symbolicCircuit(mgr, u.circ, bits, u.inputBits);

  for (size_t i = 0; i < outLocs.size(); ++i) {
    BddManager::Ref circuitSide = state[u.outputBits[i]];
    if (circuitSide != programSide[i]) {
      report.mismatchedOutputs.push_back(i);
      if (!report.counterexample) {
        BddManager::Ref diff = mgr.apply(BddManager::Op::Xor, circuitSide, programSide[i]);
        if (auto path = mgr.findPath(diff, true))
          report.counterexample = formatAssignment(*path);
      }
    }
  }
  for (uint32_t a : u.cleanAncillas)
    if (a < bits && state[a] != BddManager::kFalse) report.dirtyAncillas.push_back(a);
  return report;
}

}  // namespace revc
