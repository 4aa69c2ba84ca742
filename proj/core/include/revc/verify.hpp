// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "revc/bdd.hpp"
#include "revc/eval.hpp"

namespace revc {

struct CheckEntry {
  enum class Kind : uint8_t { Assert, Clean };
  Kind kind;
  SourceSpan span;
  bool pass;
  std::optional<std::string> counterexample;  // e.g. "x0=1 x3=0"
};

struct CheckReport {
  std::vector<CheckEntry> entries;
  bool allPass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};

/// BDD interpretation: locations hold canonical BDDs over the input
/// variables. Asserts must be the true terminal, cleaned locations the false
/// terminal; failures are recorded with a counterexample input and evaluation
/// continues.
class BddMachine : public Machine {
 public:
  explicit BddMachine(BddManager& mgr) : mgr_(mgr) {}

  void allocInput(uint32_t count) override;
  void assign(uint32_t loc, const BExp& b, SourceSpan span) override;
  bool evalLoc(uint32_t loc, const BState& init) const override;
  void clean(uint32_t loc, SourceSpan span) override;
  void assertTrue(const BExp& b, SourceSpan span) override;
  std::vector<uint32_t> boundLocs() const override;

  BddManager::Ref lookup(uint32_t loc, SourceSpan span = {}) const;
  CheckReport takeReport() { return std::move(report_); }

 private:
  BddManager::Ref build(const BExp& b, SourceSpan span) const;

  BddManager& mgr_;
  std::map<uint32_t, BddManager::Ref> bdds_;
  CheckReport report_;
};

/// Evaluate the program under the BDD interpretation and check every assert
/// and clean. Throws Error{Limit} if the node cap is exceeded.
CheckReport checkProgram(const Term& t, size_t nodeLimit = 10'000'000);

struct ValidationReport {
  bool outputCountMatches = true;
  std::vector<size_t> mismatchedOutputs;   // indices where program != circuit
  std::vector<uint32_t> dirtyAncillas;     // clean-ancilla bits not false
  std::optional<std::string> counterexample;

  bool equivalent() const {
    return outputCountMatches && mismatchedOutputs.empty() && dirtyAncillas.empty();
  }
};

/// Translation validation: canonical BDDs of the program outputs (via the
/// Boolean-expression interpretation) against BDDs of the circuit outputs
/// (via symbolic simulation), plus a zero check on the unit's clean
/// ancillas.
ValidationReport validateTranslation(const Term& t, const CompiledUnit& u,
                                     size_t nodeLimit = 10'000'000,
                                     uint64_t exprCap = 1'000'000);

/// Symbolic circuit simulation: per-bit BDDs after applying every gate.
/// Bits listed in inputs start as variables (the bit index), others as 0.
std::vector<BddManager::Ref> symbolicCircuit(BddManager& mgr, const Circuit& c, uint32_t bits,
                                             const std::vector<uint32_t>& inputs);

std::string formatAssignment(const std::vector<std::pair<uint32_t, bool>>& path);

}  // namespace revc
