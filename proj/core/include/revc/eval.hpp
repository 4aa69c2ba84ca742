// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "revc/ast.hpp"
#include "revc/bexp.hpp"
#include "revc/circuit.hpp"
#include "revc/synth.hpp"
#include "revc/types.hpp"

namespace revc {

/// An interpretation: a domain (held by the object) together with assign and
/// eval, plus the clean/assert hooks the evaluator drives. Assign is the only
/// state-mutating entry point used by the evaluator.
class Machine {
 public:
  virtual ~Machine() = default;

  /// Bind locations 0..count-1 as the program inputs.
  virtual void allocInput(uint32_t count) = 0;

  /// Store the (location-indexed) expression at loc.
  virtual void assign(uint32_t loc, const BExp& b, SourceSpan span) = 0;

  /// Value of loc once evaluation/simulation starts from init.
  virtual bool evalLoc(uint32_t loc, const BState& init) const = 0;

  /// clean t: checking interpretations verify the value is 0; all free loc.
  virtual void clean(uint32_t loc, SourceSpan span) = 0;

  /// assert t: checking interpretations verify the value is 1.
  virtual void assertTrue(const BExp& b, SourceSpan span) = 0;

  /// Locations currently bound (for equivalence tests and output lookup).
  virtual std::vector<uint32_t> boundLocs() const = 0;
};

/// Example-2 standard interpretation: the heap holds concrete bits, assign
/// evaluates immediately. Coincides with the operational semantics, so this
/// machine is the reference interpreter.
class StdMachine : public Machine {
 public:
  void allocInput(uint32_t count) override;
  void setInput(uint32_t loc, bool v) { heap_[loc] = v; }
  void assign(uint32_t loc, const BExp& b, SourceSpan span) override;
  bool evalLoc(uint32_t loc, const BState& init) const override;
  void clean(uint32_t loc, SourceSpan span) override;
  void assertTrue(const BExp& b, SourceSpan span) override;
  std::vector<uint32_t> boundLocs() const override;

  bool lookup(uint32_t loc, SourceSpan span = {}) const;

 private:
  bool evalOverHeap(const BExp& b, SourceSpan span) const;
  std::unordered_map<uint32_t, bool> heap_;
};

/// Example-3 Boolean-expression interpretation: deferred evaluation. Stored
/// expressions mention only input variables; assign substitutes bindings in
/// full, which is where the exponential blowup can strike (hence the cap).
class BexpMachine : public Machine {
 public:
  explicit BexpMachine(uint64_t exprCap = 1'000'000) : cap_(exprCap) {}

  void allocInput(uint32_t count) override;
  void assign(uint32_t loc, const BExp& b, SourceSpan span) override;
  bool evalLoc(uint32_t loc, const BState& init) const override;
  void clean(uint32_t loc, SourceSpan span) override;
  void assertTrue(const BExp& b, SourceSpan span) override;
  std::vector<uint32_t> boundLocs() const override;

  const BExp& lookup(uint32_t loc, SourceSpan span = {}) const;

 private:
  uint64_t cap_;
  std::unordered_map<uint32_t, BExp> exprs_;
};

/// Example-4 reversible-circuit interpretation: locations map to bits, assign
/// compiles the expression. An update factorable as  targ ^ B'  compiles in
/// place; otherwise a fresh bit is popped and the location remapped.
class CircMachine : public Machine {
 public:
  explicit CircMachine(Cleanup cleanup = Cleanup::Lazy) : cleanup_(cleanup) {}

  void allocInput(uint32_t count) override;
  void assign(uint32_t loc, const BExp& b, SourceSpan span) override;
  bool evalLoc(uint32_t loc, const BState& init) const override;
  void clean(uint32_t loc, SourceSpan span) override;
  void assertTrue(const BExp& b, SourceSpan span) override;
  std::vector<uint32_t> boundLocs() const override;

  uint32_t bitOf(uint32_t loc, SourceSpan span = {}) const;
  const Circuit& circuit() const { return circ_; }
  const AncHeap& heap() const { return ah_; }
  const std::vector<uint32_t>& inputs() const { return inputs_; }
  const std::unordered_map<uint32_t, uint32_t>& subs() const { return subs_; }

  /// When set, the zero-filled-pool invariant is re-simulated after every
  /// assign from this initial state (slow; used by tests).
  void setDebugState(BState init) { debugInit_ = std::move(init); }

 private:
  void checkZeroPool(SourceSpan span) const;

  Cleanup cleanup_;
  std::unordered_map<uint32_t, uint32_t> subs_;
  AncHeap ah_;
  Circuit circ_;
  std::vector<uint32_t> inputs_;
  std::optional<BState> debugInit_;
};

/// Big-step evaluation of a closed term over an interpretation. Boolean
/// subterms grow symbolic expressions; they are flushed to fresh locations at
/// assignments, non-linear let/apply bindings, register entries and the
/// program result.
Value evalTerm(Machine& m, uint32_t& nextLoc, const Term& t);

/// A program peeled of its parameter lambdas, with inputs substituted as
/// location values.
struct PreparedProgram {
  std::vector<TExp> paramTypes;
  std::vector<uint32_t> widths;   // bits per parameter
  uint32_t inputCount = 0;
  Term body;                      // closed body
  uint32_t nextLoc = 0;           // first free location
};

/// Infer (or take) parameter types, then bind parameter values over input
/// locations 0..n-1.
PreparedProgram prepareProgram(const Term& t,
                               const std::optional<std::vector<TExp>>& paramTypes = {});

/// Locations of the result value, flushing a grown expression if needed.
std::vector<uint32_t> resultLocs(Machine& m, uint32_t& nextLoc, const Value& result);

enum class CompileMode { Default, Space };

struct CompileOptions {
  CompileMode mode = CompileMode::Default;
  Cleanup cleanup = Cleanup::Lazy;
  uint64_t exprCap = 1'000'000;
  std::optional<std::vector<TExp>> paramTypes;  // overrides inference
  std::optional<BState> debugState;             // re-check pool zero per assign
};

struct Stats {
  uint64_t bits = 0;
  uint64_t gates = 0;
  uint64_t toffolis = 0;
  bool operator==(const Stats&) const = default;
};

struct CompiledUnit {
  Circuit circ;
  std::vector<uint32_t> inputBits;
  std::vector<uint32_t> outputBits;
  std::vector<uint32_t> cleanAncillas;  // pooled at end of compilation; must read 0
  Stats stats;
  std::vector<TExp> paramTypes;
};

Stats statsOf(const Circuit& c, const std::vector<uint32_t>& inputs,
              const std::vector<uint32_t>& outputs);

/// Whole-program compilation. Default mode evaluates under the circuit
/// interpretation; space mode evaluates to expressions over the inputs,
/// normalizes each to ESOP, and compiles them against one shared heap.
CompiledUnit compileProgram(const Term& t, const CompileOptions& options = {});

/// Reference interpreter: evaluate under the standard interpretation with
/// dynamic assert/clean checking. Inputs and outputs are LSB-first.
std::vector<bool> runProgram(const Term& t, const std::vector<bool>& inputs,
                             const std::optional<std::vector<TExp>>& paramTypes = {});

/// Simulate a compiled unit on an input assignment (length = #inputBits).
std::vector<bool> simulate(const CompiledUnit& u, const std::vector<bool>& inputs);

}  // namespace revc
