// Copyright 2026 The qxmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qxmap/circuit.hpp"

namespace qxmap {

struct SourceLocation {
  int line = 0;
  int column = 0;
};

/// Base for every diagnostic raised while reading OpenQASM input.
class QasmError : public std::runtime_error {
 public:
  QasmError(const std::string& message, SourceLocation where);
  SourceLocation where() const { return where_; }

 private:
  SourceLocation where_;
};

class ParseError : public QasmError {
 public:
  using QasmError::QasmError;
};

/// A construct outside the supported subset (`if`, `opaque`, `reset`, ...).
class UnsupportedConstruct : public QasmError {
 public:
  UnsupportedConstruct(std::string construct, SourceLocation where);
  const std::string& construct() const { return construct_; }

 private:
  std::string construct_;
};

class FlattenError : public QasmError {
 public:
  using QasmError::QasmError;
};

/// Parameter expression. Gate-definition parameters are resolved to indices at
/// parse time.
struct Expr {
  enum class Op { Number, Param, Neg, Add, Sub, Mul, Div, Pow, Call };
  Op op = Op::Number;
  double value = 0.0;     // Number
  int param = -1;         // Param
  std::string function;   // Call: sin cos tan exp ln sqrt
  std::shared_ptr<const Expr> lhs;
  std::shared_ptr<const Expr> rhs;
};
using ExprPtr = std::shared_ptr<const Expr>;

/// Evaluates `expr` with gate parameters bound to `params`.
double evaluate(const Expr& expr, const std::vector<double>& params);

/// `reg` or `reg[index]`. Inside gate bodies `reg` names a formal qubit.
struct Argument {
  std::string reg;
  std::optional<int> index;
};

struct GateCall {
  std::string name;
  std::vector<ExprPtr> params;
  std::vector<Argument> args;
  SourceLocation where;
};

struct GateDefinition {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::string> qubits;
  std::vector<GateCall> body;
  SourceLocation where;
};

struct Register {
  std::string name;
  int width = 0;
};

struct MeasureStatement {
  Argument qubit;
  Argument bit;
  SourceLocation where;
};

struct BarrierStatement {
  std::vector<Argument> args;
  SourceLocation where;
};

using Statement = std::variant<GateCall, MeasureStatement, BarrierStatement>;

/// Faithful syntax tree of a program in the supported OpenQASM 2.0 subset.
struct SourceProgram {
  std::vector<Register> qregs;
  std::vector<Register> cregs;
  std::map<std::string, GateDefinition, std::less<>> definitions;
  std::vector<Statement> statements;

  const Register* find_qreg(std::string_view name) const;
  const Register* find_creg(std::string_view name) const;
};

struct ParseOptions {
  /// Contents used for `include "qelib1.inc";`. Defaults to the bundled copy.
  std::optional<std::string> stdlib;
};

/// The bundled `qelib1.inc` standard gate library.
std::string_view bundled_stdlib();

SourceProgram parse(std::string_view text, const ParseOptions& options = {});

/// Expands every call down to U and CX, in program order.
Circuit flatten(const SourceProgram& program);

/// parse + flatten.
Circuit load_qasm(std::string_view text, const ParseOptions& options = {});

}  // namespace qxmap
