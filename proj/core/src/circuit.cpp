// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#include "revc/circuit.hpp"

#include <algorithm>
#include <sstream>

#include "revc/diagnostics.hpp"

namespace revc {

BState applyGate(const Gate& g, BState s) {
  switch (g.kind) {
    case Gate::Kind::Not:
      s.set(g.target, !s.get(g.target));
      break;
    case Gate::Kind::Cnot:
      s.set(g.target, s.get(g.c1) != s.get(g.target));
      break;
    case Gate::Kind::Toffoli:
      s.set(g.target, (s.get(g.c1) && s.get(g.c2)) != s.get(g.target));
      break;
  }
  return s;
}

BState evalCirc(std::span<const Gate> c, BState s) {
  for (const Gate& g : c) s = applyGate(g, std::move(s));
  return s;
}

void evalCircDense(std::span<const Gate> c, std::vector<bool>& state) {
  for (const Gate& g : c) {
    if (g.target >= state.size() || (g.kind != Gate::Kind::Not && g.c1 >= state.size()) ||
        (g.kind == Gate::Kind::Toffoli && g.c2 >= state.size()))
      throw Error(ErrorKind::Eval, "gate index out of range of the dense state");
    switch (g.kind) {
      case Gate::Kind::Not:
        state[g.target] = !state[g.target];
        break;
      case Gate::Kind::Cnot:
        state[g.target] = state[g.target] != state[g.c1];
        break;
      case Gate::Kind::Toffoli:
        state[g.target] = state[g.target] != (state[g.c1] && state[g.c2]);
        break;
    }
  }
}

std::set<uint32_t> uses(std::span<const Gate> c) {
  std::set<uint32_t> out;
  for (const Gate& g : c) {
    out.insert(g.target);
    if (g.kind != Gate::Kind::Not) out.insert(g.c1);
    if (g.kind == Gate::Kind::Toffoli) out.insert(g.c2);
  }
  return out;
}

std::set<uint32_t> mods(std::span<const Gate> c) {
  std::set<uint32_t> out;
  for (const Gate& g : c) out.insert(g.target);
  return out;
}

std::set<uint32_t> controls(std::span<const Gate> c) {
  std::set<uint32_t> out;
  for (const Gate& g : c) {
    if (g.kind != Gate::Kind::Not) out.insert(g.c1);
    if (g.kind == Gate::Kind::Toffoli) out.insert(g.c2);
  }
  return out;
}

bool wellFormed(std::span<const Gate> c) {
  for (const Gate& g : c) {
    switch (g.kind) {
      case Gate::Kind::Not:
        break;
      case Gate::Kind::Cnot:
        if (g.c1 == g.target) return false;
        break;
      case Gate::Kind::Toffoli:
        if (g.c1 == g.c2 || g.c1 == g.target || g.c2 == g.target) return false;
        break;
    }
  }
  return true;
}

uint32_t width(std::span<const Gate> c) {
  uint32_t w = 0;
  for (const Gate& g : c) {
    w = std::max(w, g.target + 1);
    if (g.kind != Gate::Kind::Not) w = std::max(w, g.c1 + 1);
    if (g.kind == Gate::Kind::Toffoli) w = std::max(w, g.c2 + 1);
  }
  return w;
}

Circuit uncompute(std::span<const Gate> c, const std::set<uint32_t>& protect) {
  Circuit out;
  out.reserve(c.size());
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    if (!protect.count(it->target)) out.push_back(*it);
  return out;
}

Circuit reversed(std::span<const Gate> c) {
  return Circuit(c.rbegin(), c.rend());
}

std::string toString(const Gate& g) {
  switch (g.kind) {
    case Gate::Kind::Not:
      return "not " + std::to_string(g.target);
    case Gate::Kind::Cnot:
      return "cnot " + std::to_string(g.c1) + " " + std::to_string(g.target);
    case Gate::Kind::Toffoli:
      return "tof " + std::to_string(g.c1) + " " + std::to_string(g.c2) + " " +
             std::to_string(g.target);
  }
  return "";
}

std::string printCircuitFile(const CircuitFile& f) {
  std::ostringstream out;
  out << "# revc circuit v1\n";
  out << "bits: " << f.bits << "\n";
  out << "inputs:";
  for (uint32_t i : f.inputs) out << " " << i;
  out << "\n";
  out << "outputs:";
  for (uint32_t i : f.outputs) out << " " << i;
  out << "\n";
  for (const Gate& g : f.circ) out << toString(g) << "\n";
  return out.str();
}

namespace {

std::vector<std::string> splitWords(const std::string& line) {
  std::vector<std::string> words;
  std::istringstream in(line);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

uint32_t parseIndex(const std::string& w, uint32_t lineNo) {
  size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(w, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != w.size() || v > UINT32_MAX)
    throw Error(ErrorKind::Io, "bad bit index '" + w + "'",
                SourceSpan{0, 0, lineNo, 1});
  return static_cast<uint32_t>(v);
}

}  // namespace

CircuitFile parseCircuitFile(const std::string& text) {
  CircuitFile f;
  bool sawBits = false, sawInputs = false, sawOutputs = false;
  std::istringstream in(text);
  std::string line;
  uint32_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    auto words = splitWords(line);
    if (words.empty()) continue;
    SourceSpan here{0, 0, lineNo, 1};
    const std::string& head = words[0];
    auto rest = [&](size_t from) {
      std::vector<uint32_t> out;
      for (size_t i = from; i < words.size(); ++i) out.push_back(parseIndex(words[i], lineNo));
      return out;
    };
    if (head == "bits:") {
      if (words.size() != 2) throw Error(ErrorKind::Io, "bits: expects one count", here);
      f.bits = parseIndex(words[1], lineNo);
      sawBits = true;
    } else if (head == "inputs:") {
      f.inputs = rest(1);
      sawInputs = true;
    } else if (head == "outputs:") {
      f.outputs = rest(1);
      sawOutputs = true;
    } else if (head == "not") {
      if (words.size() != 2) throw Error(ErrorKind::Io, "not expects one index", here);
      f.circ.push_back(Gate::notGate(parseIndex(words[1], lineNo)));
    } else if (head == "cnot") {
      if (words.size() != 3) throw Error(ErrorKind::Io, "cnot expects two indices", here);
      f.circ.push_back(Gate::cnot(parseIndex(words[1], lineNo), parseIndex(words[2], lineNo)));
    } else if (head == "tof") {
      if (words.size() != 4) throw Error(ErrorKind::Io, "tof expects three indices", here);
      f.circ.push_back(Gate::toffoli(parseIndex(words[1], lineNo), parseIndex(words[2], lineNo),
                                     parseIndex(words[3], lineNo)));
    } else {
      throw Error(ErrorKind::Io, "unknown line '" + head + "'", here);
    }
  }
  if (!sawBits || !sawInputs || !sawOutputs)
    throw Error(ErrorKind::Io, "circuit file is missing a bits:/inputs:/outputs: header");
  uint32_t needed = width(f.circ);
  for (uint32_t i : f.inputs) needed = std::max(needed, i + 1);
  for (uint32_t i : f.outputs) needed = std::max(needed, i + 1);
  if (needed > f.bits)
    throw Error(ErrorKind::Io, "circuit uses index " + std::to_string(needed - 1) +
                                   " beyond declared width " + std::to_string(f.bits));
  return f;
}

}  // namespace revc
