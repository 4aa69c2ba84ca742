// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#include "revc/bench.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "revc/parser.hpp"

#ifndef REVC_PROGRAMS_DIR_DEFAULT
#define REVC_PROGRAMS_DIR_DEFAULT "programs"
#endif

namespace revc {

namespace {

BenchmarkEntry adder(const std::string& base, const std::string& file,
                     BenchmarkEntry::OracleId oracle, uint32_t n) {
  BenchmarkEntry e;
  e.name = base + " " + std::to_string(n);
  e.file = file;
  e.oracle = oracle;
  e.width = n;
  e.verifiable = 2 * n <= 16;
  return e;
}

std::vector<BenchmarkEntry> buildSuite() {
  std::vector<BenchmarkEntry> out;

  {
    BenchmarkEntry e;
    e.name = "nor";
    e.file = "nor.rvs";
    e.oracle = BenchmarkEntry::OracleId::Nor;
    e.exactBitsDefault = 3;
    e.toffoliRangeDefault = {{1, 1}};
    e.gateRangeDefault = {{4, 4}};
    e.verifiable = true;
    out.push_back(e);
  }

  for (uint32_t n : {2u, 4u, 8u, 32u}) {
    BenchmarkEntry e = adder("carryRippleAdder", "carryripple" + std::to_string(n) + ".rvs",
                             BenchmarkEntry::OracleId::RippleSum, n);
    e.exactBitsDefault = 4ull * n;
    e.toffoliRangeDefault = {{2ull * (n - 1), 2ull * (n - 1)}};
    e.gateRangeDefault = {{7ull * (n - 1) + 4, 7ull * (n - 1) + 4}};
    e.spaceFeasible = n <= 8;
    out.push_back(e);
  }

  for (uint32_t n : {2u, 4u, 8u, 32u}) {
    BenchmarkEntry e = adder("cucarroAdder", "cucarro" + std::to_string(n) + ".rvs",
                             BenchmarkEntry::OracleId::XorCarry, n);
    e.exactBitsDefault = 2ull * n + 1;
    e.toffoliRangeDefault = {{n, n}};
    e.gateRangeDefault = {{3ull * n, 3ull * n}};
    e.spaceFeasible = n <= 8;
    out.push_back(e);
  }

  for (uint32_t n : {2u, 4u, 32u}) {
    BenchmarkEntry e = adder("modAdd", "modadd" + std::to_string(n) + ".rvs",
                             BenchmarkEntry::OracleId::AddMod, n);
    e.exactBitsDefault = 2ull * n + 1;
    e.toffoliRangeDefault = {{2ull * (n - 1), 2ull * (n - 1)}};
    e.gateRangeDefault = {{6ull * (n - 1) + 2, 6ull * (n - 1) + 2}};
    e.spaceFeasible = n <= 8;
    out.push_back(e);
  }

  {
    BenchmarkEntry e;
    e.name = "ma4";
    e.file = "ma4.rvs";
    e.oracle = BenchmarkEntry::OracleId::Majority4;
    e.exactBitsDefault = 17;
    e.toffoliRangeDefault = {{8, 8}};
    e.gateRangeDefault = {{24, 24}};
    e.exactBitsSpace = 16;
    e.verifiable = true;  // 12 inputs
    out.push_back(e);
  }

  {
    BenchmarkEntry e;
    e.name = "SHA-2 2 rounds";
    e.file = "sha2_2.rvs";
    e.spaceFeasible = false;
    out.push_back(e);
  }
  {
    BenchmarkEntry e;
    e.name = "SHA-2 16 rounds";
    e.file = "sha2_16.rvs";
    e.spaceFeasible = false;
    out.push_back(e);
  }

  return out;
}

uint64_t decodeLE(const std::vector<bool>& bits, size_t from, size_t count) {
  uint64_t v = 0;
  for (size_t i = 0; i < count; ++i)
    if (bits[from + i]) v |= uint64_t(1) << i;
  return v;
}

void encodeLE(uint64_t v, size_t count, std::vector<bool>& out) {
  for (size_t i = 0; i < count; ++i) out.push_back((v >> i) & 1);
}

}  // namespace

const std::vector<BenchmarkEntry>& benchmarkSuite() {
  static const std::vector<BenchmarkEntry> suite = buildSuite();
  return suite;
}

std::string programsDir(const std::string& overridePath) {
  if (!overridePath.empty()) return overridePath;
  if (const char* env = std::getenv("REVC_PROGRAMS")) return env;
  return REVC_PROGRAMS_DIR_DEFAULT;
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Term loadProgram(const std::string& path) { return parse(readFile(path)); }

Term loadBenchmark(const BenchmarkEntry& e, const std::string& dirOverride) {
  return loadProgram(programsDir(dirOverride) + "/" + e.file);
}

std::vector<bool> oracleOutputs(const BenchmarkEntry& e, const std::vector<bool>& inputs) {
  std::vector<bool> out;
  switch (e.oracle) {
    case BenchmarkEntry::OracleId::None:
      throw Error(ErrorKind::Contract, "benchmark '" + e.name + "' has no oracle");
    case BenchmarkEntry::OracleId::Nor:
      out.push_back(!(inputs.at(0) || inputs.at(1)));
      break;
    case BenchmarkEntry::OracleId::Majority4:
      for (size_t i = 0; i < 4; ++i) {
        int ones = int(inputs.at(i)) + int(inputs.at(4 + i)) + int(inputs.at(8 + i));
        out.push_back(ones >= 2);
      }
      break;
    case BenchmarkEntry::OracleId::AddMod:
    case BenchmarkEntry::OracleId::RippleSum: {
      uint64_t a = decodeLE(inputs, 0, e.width);
      uint64_t b = decodeLE(inputs, e.width, e.width);
      uint64_t mask = e.width >= 64 ? ~uint64_t(0) : ((uint64_t(1) << e.width) - 1);
      encodeLE((a + b) & mask, e.width, out);
      break;
    }
    case BenchmarkEntry::OracleId::XorCarry: {
      uint64_t a = decodeLE(inputs, 0, e.width);
      uint64_t b = decodeLE(inputs, e.width, e.width);
      encodeLE(a ^ b, e.width, out);
      out.push_back(((a + b) >> e.width) & 1);
      break;
    }
  }
  return out;
}

BenchResult runBenchmark(const BenchmarkEntry& e, CompileMode mode,
                         const std::string& dirOverride) {
  BenchResult r;
  r.name = e.name;
  r.mode = mode == CompileMode::Default ? "default" : "space";
  Term t = loadBenchmark(e, dirOverride);
  CompileOptions opts;
  opts.mode = mode;
  CompiledUnit u;
  try {
    u = compileProgram(t, opts);
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::Limit && mode == CompileMode::Space && !e.spaceFeasible) {
      r.skipped = true;
      return r;
    }
    throw;
  }
  r.compiled = true;
  r.stats = u.stats;

  auto checkExact = [&](const char* what, uint64_t got, uint64_t want) {
    if (got != want)
      r.failures.push_back(std::string(what) + " = " + std::to_string(got) + ", expected " +
                           std::to_string(want));
  };
  auto checkRange = [&](const char* what, uint64_t got, std::pair<uint64_t, uint64_t> want) {
    if (got < want.first || got > want.second)
      r.failures.push_back(std::string(what) + " = " + std::to_string(got) + ", expected [" +
                           std::to_string(want.first) + ", " + std::to_string(want.second) + "]");
  };

  if (mode == CompileMode::Default) {
    if (e.exactBitsDefault) checkExact("bits", u.stats.bits, *e.exactBitsDefault);
    if (e.toffoliRangeDefault) checkRange("toffolis", u.stats.toffolis, *e.toffoliRangeDefault);
    if (e.gateRangeDefault) checkRange("gates", u.stats.gates, *e.gateRangeDefault);
  } else if (e.exactBitsSpace) {
    checkExact("bits", u.stats.bits, *e.exactBitsSpace);
  }
  return r;
}

}  // namespace revc
