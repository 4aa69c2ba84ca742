// Copyright (c) 2026 the revc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace revc {

/// Half-open byte range into a source buffer, with the line/column of its
/// start for diagnostics.
struct SourceSpan {
  uint32_t begin = 0;
  uint32_t end = 0;
  uint32_t line = 0;
  uint32_t column = 0;

  static SourceSpan none() { return SourceSpan{}; }
  bool known() const { return line != 0; }

  SourceSpan merge(const SourceSpan& o) const {
    if (!known()) return o;
    if (!o.known()) return *this;
    SourceSpan s = *this;
    if (o.begin < s.begin) {
      s.begin = o.begin;
      s.line = o.line;
      s.column = o.column;
    }
    if (o.end > s.end) s.end = o.end;
    return s;
  }
};

enum class ErrorKind {
  Parse,      // lexical or syntactic error
  Type,       // constraint generation or solving failed
  Eval,       // runtime failure in an interpretation (index range, clean/assert, ...)
  Contract,   // violated precondition of a compiler-internal operation
  Limit,      // configurable resource cap exceeded (expression size, BDD nodes)
  Io,         // file or format problem
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, SourceSpan span = SourceSpan::none())
      : std::runtime_error(std::move(message)), kind_(kind), span_(span) {}

  ErrorKind kind() const { return kind_; }
  const SourceSpan& span() const { return span_; }

 private:
  ErrorKind kind_;
  SourceSpan span_;
};

inline std::string formatSpan(const std::string& file, const SourceSpan& s) {
  if (!s.known()) return file;
  return file + ":" + std::to_string(s.line) + ":" + std::to_string(s.column);
}

}  // namespace revc
