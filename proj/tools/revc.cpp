// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0
//
// revc — a compiler from the .rvs register language to reversible circuits
// over NOT/CNOT/Toffoli, with simulation, BDD-based checking and a bundled
// benchmark suite.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "revc/bench.hpp"
#include "revc/bexp.hpp"
#include "revc/circuit.hpp"
#include "revc/eval.hpp"
#include "revc/parser.hpp"
#include "revc/types.hpp"
#include "revc/verify.hpp"

namespace {

using namespace revc;

constexpr int kExitOk = 0;
constexpr int kExitUserError = 1;
constexpr int kExitVerifyFail = 2;

std::vector<bool> parseInputBits(const std::string& s, size_t expected) {
  std::vector<bool> bits;
  if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0) {
    // hex value, expanded LSB-first to the expected width
    uint64_t v = std::stoull(s.substr(2), nullptr, 16);
    for (size_t i = 0; i < expected; ++i) bits.push_back((v >> i) & 1);
    if (expected < 64 && (v >> expected) != 0)
      throw Error(ErrorKind::Io, "input value does not fit in " + std::to_string(expected) +
                                     " bits");
    return bits;
  }
  for (char c : s) {
    if (c == '0')
      bits.push_back(false);
    else if (c == '1')
      bits.push_back(true);
    else
      throw Error(ErrorKind::Io, std::string("bad character '") + c + "' in input bit string");
  }
  if (bits.size() != expected)
    throw Error(ErrorKind::Io, "expected " + std::to_string(expected) + " input bits, got " +
                                   std::to_string(bits.size()));
  return bits;
}

std::string bitsToString(const std::vector<bool>& bits) {
  std::string out;
  out.reserve(bits.size());
  for (bool b : bits) out += b ? '1' : '0';
  return out;
}

CompileMode parseMode(const std::string& mode) {
  if (mode == "default") return CompileMode::Default;
  if (mode == "space") return CompileMode::Space;
  throw Error(ErrorKind::Io, "unknown mode '" + mode + "'");
}

Cleanup parseCleanup(const std::string& c) {
  if (c == "lazy") return Cleanup::Lazy;
  if (c == "eager") return Cleanup::Eager;
  throw Error(ErrorKind::Io, "unknown cleanup strategy '" + c + "'");
}

void printCheckReport(const std::string& file, const CheckReport& report) {
  for (const CheckEntry& e : report.entries) {
    std::cout << (e.pass ? "PASS " : "FAIL ")
              << (e.kind == CheckEntry::Kind::Assert ? "assert " : "clean ")
              << formatSpan(file, e.span);
    if (e.counterexample) std::cout << " [counterexample: " << *e.counterexample << "]";
    std::cout << "\n";
  }
}

int cmdCompile(const std::string& file, const std::string& mode, const std::string& cleanup,
               const std::string& outPath, bool json, bool dumpBexp, bool dumpTypes,
               uint64_t exprCap) {
  Term t = loadProgram(file);

  if (dumpTypes) {
    Signature sig = inferSignature(t);
    std::cout << sig.str() << "\n";
    for (const auto& w : sig.warnings) std::cout << "warning: " << w << "\n";
    std::cout << sig.bounds.str();
  }
  if (dumpBexp) {
    PreparedProgram p = prepareProgram(t);
    BexpMachine m(exprCap);
    m.allocInput(p.inputCount);
    uint32_t nextLoc = p.nextLoc;
    Value result = evalTerm(m, nextLoc, p.body);
    std::vector<uint32_t> outs = resultLocs(m, nextLoc, result);
    for (size_t i = 0; i < outs.size(); ++i)
      std::cout << "out[" << i << "] = " << toString(simplify(m.lookup(outs[i]))) << "\n";
  }

  CompileOptions opts;
  opts.mode = parseMode(mode);
  opts.cleanup = parseCleanup(cleanup);
  opts.exprCap = exprCap;
  CompiledUnit u = compileProgram(t, opts);

  if (!outPath.empty()) {
    CircuitFile f{static_cast<uint32_t>(u.stats.bits), u.inputBits, u.outputBits, u.circ};
    std::ofstream out(outPath, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + outPath + "'");
    out << printCircuitFile(f);
  }

  if (json) {
    nlohmann::json j{{"bits", u.stats.bits}, {"gates", u.stats.gates},
                     {"toffolis", u.stats.toffolis}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "bits: " << u.stats.bits << "\ngates: " << u.stats.gates
              << "\ntoffolis: " << u.stats.toffolis << "\n";
  }
  return kExitOk;
}

int cmdRun(const std::string& file, const std::string& input) {
  Term t = loadProgram(file);
  PreparedProgram p = prepareProgram(t);
  std::vector<bool> bits = parseInputBits(input, p.inputCount);
  std::vector<bool> out = runProgram(t, bits);
  std::cout << bitsToString(out) << "\n";
  return kExitOk;
}

int cmdSimulate(const std::string& file, const std::string& input) {
  CircuitFile f = parseCircuitFile(readFile(file));
  std::vector<bool> bits = parseInputBits(input, f.inputs.size());
  std::vector<bool> state(f.bits, false);
  for (size_t i = 0; i < f.inputs.size(); ++i) state[f.inputs[i]] = bits[i];
  evalCircDense(f.circ, state);
  std::string out;
  for (uint32_t b : f.outputs) out += state[b] ? '1' : '0';
  std::cout << out << "\n";
  return kExitOk;
}

int cmdCheck(const std::string& file, const std::string& circuitFile, size_t nodeLimit) {
  Term t = loadProgram(file);
  CheckReport report = checkProgram(t, nodeLimit);
  printCheckReport(file, report);
  bool ok = report.allPass();

  if (!circuitFile.empty()) {
    CircuitFile f = parseCircuitFile(readFile(circuitFile));
    CompiledUnit u;
    u.circ = f.circ;
    u.inputBits = f.inputs;
    u.outputBits = f.outputs;
    u.stats = statsOf(u.circ, u.inputBits, u.outputBits);
    if (u.stats.bits < f.bits) u.stats.bits = f.bits;
    ValidationReport v = validateTranslation(t, u, nodeLimit);
    if (!v.outputCountMatches) {
      std::cout << "FAIL translation: program and circuit output counts differ\n";
      ok = false;
    } else {
      for (size_t i : v.mismatchedOutputs) {
        std::cout << "FAIL translation output " << i;
        if (v.counterexample) std::cout << " [counterexample: " << *v.counterexample << "]";
        std::cout << "\n";
        ok = false;
      }
      if (v.mismatchedOutputs.empty()) std::cout << "PASS translation\n";
    }
  }
  return ok ? kExitOk : kExitVerifyFail;
}

int cmdTypes(const std::string& file) {
  Term t = loadProgram(file);
  Signature sig = inferSignature(t);
  std::cout << sig.str() << "\n";
  for (const auto& w : sig.warnings) std::cout << "warning: " << w << "\n";
  return kExitOk;
}

int cmdBench(const std::string& mode, const std::string& dir, bool json) {
  bool regression = false;
  nlohmann::json rows = nlohmann::json::array();
  auto runOne = [&](const BenchmarkEntry& e, CompileMode m) {
    BenchResult r = runBenchmark(e, m, dir);
    if (json) {
      nlohmann::json row{{"name", r.name}, {"mode", r.mode}};
      if (r.skipped) {
        row["skipped"] = true;
      } else {
        row["bits"] = r.stats.bits;
        row["gates"] = r.stats.gates;
        row["toffolis"] = r.stats.toffolis;
        row["ok"] = r.failures.empty();
      }
      rows.push_back(row);
    } else {
      std::cout << r.name << " [" << r.mode << "] ";
      if (r.skipped) {
        std::cout << "skipped (expression cap)\n";
      } else {
        std::cout << "bits " << r.stats.bits << ", gates " << r.stats.gates << ", toffolis "
                  << r.stats.toffolis;
        if (r.failures.empty()) {
          std::cout << "  ok\n";
        } else {
          std::cout << "  REGRESSION\n";
          for (const auto& f : r.failures) std::cout << "    " << f << "\n";
        }
      }
    }
    if (!r.failures.empty()) regression = true;
  };

  for (const BenchmarkEntry& e : benchmarkSuite()) {
    if (mode == "default" || mode == "both") runOne(e, CompileMode::Default);
    if (mode == "space" || mode == "both") runOne(e, CompileMode::Space);
  }
  if (json) std::cout << rows.dump(2) << "\n";
  return regression ? kExitUserError : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"revc: reversible circuit compiler"};
  app.require_subcommand(1);

  std::string file, input, outPath, circuitFile;
  std::string mode = "default", cleanup = "lazy", benchMode = "default", programs;
  bool json = false, dumpBexp = false, dumpTypes = false;
  uint64_t exprCap = 1'000'000;
  size_t nodeLimit = 10'000'000;

  CLI::App* compile = app.add_subcommand("compile", "compile a .rvs program to a circuit");
  compile->add_option("file", file)->required();
  compile->add_option("--mode", mode, "default|space");
  compile->add_option("--cleanup", cleanup, "lazy|eager");
  compile->add_option("-o,--output", outPath, "write the circuit in the v1 text format");
  compile->add_flag("--json", json, "print stats as JSON");
  compile->add_flag("--dump-bexp", dumpBexp, "print the program's output expressions");
  compile->add_flag("--dump-types", dumpTypes, "print the inferred signature and bounds");
  compile->add_option("--expr-cap", exprCap, "expression-size cap for space mode");

  CLI::App* run = app.add_subcommand("run", "interpret a program on an input");
  run->add_option("file", file)->required();
  run->add_option("--input", input, "LSB-first bit string or 0x<hex>")->required();

  CLI::App* simulate = app.add_subcommand("simulate", "simulate a circuit file");
  simulate->add_option("file", file)->required();
  simulate->add_option("--input", input, "LSB-first bit string or 0x<hex>")->required();

  CLI::App* check = app.add_subcommand("check", "BDD-check asserts/cleans; optionally validate "
                                                "a compiled circuit against the program");
  check->add_option("file", file)->required();
  check->add_option("circuit", circuitFile);
  check->add_option("--node-limit", nodeLimit);

  CLI::App* types = app.add_subcommand("types", "print the inferred signature");
  types->add_option("file", file)->required();

  CLI::App* bench = app.add_subcommand("bench", "compile the bundled benchmarks and compare "
                                                "against recorded expectations");
  bench->add_option("--mode", benchMode, "default|space|both");
  bench->add_option("--programs", programs, "directory holding the .rvs sources");
  bench->add_flag("--json", json);

  CLI11_PARSE(app, argc, argv);

  try {
    if (compile->parsed())
      return cmdCompile(file, mode, cleanup, outPath, json, dumpBexp, dumpTypes, exprCap);
    if (run->parsed()) return cmdRun(file, input);
    if (simulate->parsed()) return cmdSimulate(file, input);
    if (check->parsed()) return cmdCheck(file, circuitFile, nodeLimit);
    if (types->parsed()) return cmdTypes(file);
    if (bench->parsed()) return cmdBench(benchMode, programs, json);
  } catch (const Error& e) {
    std::cerr << "error";
    if (e.span().known()) std::cerr << " at " << formatSpan(file, e.span());
    std::cerr << ": " << e.what() << "\n";
    return kExitUserError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUserError;
  }
  return kExitUserError;
}
