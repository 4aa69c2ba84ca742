// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "revc/bexp.hpp"

namespace revc {

/// One reversible gate over natural-number bit indices. Controls are
/// read-only; the target is the single bit a gate updates.
struct Gate {
  enum class Kind : uint8_t { Not, Cnot, Toffoli };

  Kind kind;
  uint32_t c1 = 0;  // first control (Cnot, Toffoli)
  uint32_t c2 = 0;  // second control (Toffoli)
  uint32_t target = 0;

  static Gate notGate(uint32_t t) { return {Kind::Not, 0, 0, t}; }
  static Gate cnot(uint32_t c, uint32_t t) { return {Kind::Cnot, c, 0, t}; }
  static Gate toffoli(uint32_t c1, uint32_t c2, uint32_t t) { return {Kind::Toffoli, c1, c2, t}; }

  bool operator==(const Gate& o) const = default;
};

using Circuit = std::vector<Gate>;

/// Apply one gate: exactly the three update equations, all other bits fixed.
BState applyGate(const Gate& g, BState s);

/// Left-to-right fold of applyGate.
BState evalCirc(std::span<const Gate> c, BState s);

/// Dense-vector simulation backend; bits beyond state.size() are an error.
/// Agrees with evalCirc on the common domain.
void evalCircDense(std::span<const Gate> c, std::vector<bool>& state);

std::set<uint32_t> uses(std::span<const Gate> c);
std::set<uint32_t> mods(std::span<const Gate> c);
std::set<uint32_t> controls(std::span<const Gate> c);

/// True iff every gate's bit indices are pairwise distinct.
bool wellFormed(std::span<const Gate> c);

/// 1 + the largest index used, 0 for the empty circuit.
uint32_t width(std::span<const Gate> c);

/// The restricted inverse: reverse the gate order and drop every gate whose
/// target lies in the protected set.
Circuit uncompute(std::span<const Gate> c, const std::set<uint32_t>& protect);

Circuit reversed(std::span<const Gate> c);

/// A circuit together with its i/o declaration, as stored in the v1 text
/// format:
///
///   # revc circuit v1
///   bits: <n>
///   inputs: <idx> ...
///   outputs: <idx> ...
///   not <t> | cnot <c> <t> | tof <c1> <c2> <t>
struct CircuitFile {
  uint32_t bits = 0;
  std::vector<uint32_t> inputs;
  std::vector<uint32_t> outputs;
  Circuit circ;

  bool operator==(const CircuitFile& o) const = default;
};

std::string printCircuitFile(const CircuitFile& f);
CircuitFile parseCircuitFile(const std::string& text);

std::string toString(const Gate& g);

}  // namespace revc
