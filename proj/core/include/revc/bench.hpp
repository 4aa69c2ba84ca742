// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "revc/eval.hpp"

namespace revc {

/// One bundled benchmark with its recorded expectations. Bit counts are
/// structural and pinned exactly where known; gate-level counts carry ranges
/// since they are implementation-sensitive.
struct BenchmarkEntry {
  enum class OracleId { None, Nor, Majority4, AddMod, XorCarry, RippleSum };

  std::string name;
  std::string file;           // relative to the programs directory
  OracleId oracle = OracleId::None;
  uint32_t width = 0;         // operand width for the adder oracles

  std::optional<uint64_t> exactBitsDefault;
  std::optional<std::pair<uint64_t, uint64_t>> toffoliRangeDefault;  // inclusive
  std::optional<std::pair<uint64_t, uint64_t>> gateRangeDefault;     // inclusive
  std::optional<uint64_t> exactBitsSpace;

  bool spaceFeasible = true;  // space mode is expected to fit under the cap
  bool verifiable = false;    // small enough for BDD checking (<= 16 inputs)
};

const std::vector<BenchmarkEntry>& benchmarkSuite();

/// Directory holding the bundled .rvs sources: explicit argument, else the
/// REVC_PROGRAMS environment variable, else the build-time default.
std::string programsDir(const std::string& overridePath = "");

std::string readFile(const std::string& path);
Term loadProgram(const std::string& path);
Term loadBenchmark(const BenchmarkEntry& e, const std::string& dirOverride = "");

/// Reference outputs for a benchmark's oracle on an LSB-first input string.
std::vector<bool> oracleOutputs(const BenchmarkEntry& e, const std::vector<bool>& inputs);

/// Outcome of compiling and checking one entry.
struct BenchResult {
  std::string name;
  std::string mode;
  bool compiled = false;
  bool skipped = false;       // infeasible under the expression cap
  Stats stats;
  std::vector<std::string> failures;  // expectation regressions
};

BenchResult runBenchmark(const BenchmarkEntry& e, CompileMode mode,
                         const std::string& dirOverride = "");

}  // namespace revc
