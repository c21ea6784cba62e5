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

#include "qxmap/qasm.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "bundled_stdlib.hpp"

namespace qxmap {

namespace {

std::string located(const std::string& message, SourceLocation where) {
  std::ostringstream out;
  out << where.line << ':' << where.column << ": " << message;
  return out.str();
}

}  // namespace

QasmError::QasmError(const std::string& message, SourceLocation where)
    : std::runtime_error(located(message, where)), where_(where) {}

UnsupportedConstruct::UnsupportedConstruct(std::string construct, SourceLocation where)
    : QasmError("unsupported construct '" + construct + "'", where), construct_(std::move(construct)) {}

std::string_view bundled_stdlib() { return detail::kBundledStdlib; }

const Register* SourceProgram::find_qreg(std::string_view name) const {
  for (const Register& r : qregs)
    if (r.name == name) return &r;
  return nullptr;
}

const Register* SourceProgram::find_creg(std::string_view name) const {
  for (const Register& r : cregs)
    if (r.name == name) return &r;
  return nullptr;
}

double evaluate(const Expr& expr, const std::vector<double>& params) {
  switch (expr.op) {
    case Expr::Op::Number:
      return expr.value;
    case Expr::Op::Param:
      return params.at(static_cast<std::size_t>(expr.param));
    case Expr::Op::Neg:
      return -evaluate(*expr.lhs, params);
    case Expr::Op::Add:
      return evaluate(*expr.lhs, params) + evaluate(*expr.rhs, params);
    case Expr::Op::Sub:
      return evaluate(*expr.lhs, params) - evaluate(*expr.rhs, params);
    case Expr::Op::Mul:
      return evaluate(*expr.lhs, params) * evaluate(*expr.rhs, params);
    case Expr::Op::Div:
      return evaluate(*expr.lhs, params) / evaluate(*expr.rhs, params);
    case Expr::Op::Pow:
      return std::pow(evaluate(*expr.lhs, params), evaluate(*expr.rhs, params));
    case Expr::Op::Call: {
      const double x = evaluate(*expr.lhs, params);
      if (expr.function == "sin") return std::sin(x);
      if (expr.function == "cos") return std::cos(x);
      if (expr.function == "tan") return std::tan(x);
      if (expr.function == "exp") return std::exp(x);
      if (expr.function == "ln") return std::log(x);
      return std::sqrt(x);
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Ident, Number, String, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLocation where;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      SourceLocation at{line_, col_};
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", at});
        return out;
      }
      const char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string id;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          id += take();
        out.push_back({Tok::Ident, id, at});
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        out.push_back({Tok::Number, number(), at});
      } else if (c == '"') {
        take();
        std::string s;
        while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') s += take();
        if (pos_ >= text_.size() || text_[pos_] != '"') throw ParseError("unterminated string", at);
        take();
        out.push_back({Tok::String, s, at});
      } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        take();
        take();
        out.push_back({Tok::Symbol, "->", at});
      } else if (c == '=' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
        take();
        take();
        out.push_back({Tok::Symbol, "==", at});
      } else if (std::string_view(";,()[]{}+-*/^").find(c) != std::string_view::npos) {
        out.push_back({Tok::Symbol, std::string(1, take()), at});
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", at);
      }
    }
  }

 private:
  char take() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') take();
      } else {
        return;
      }
    }
  }

  std::string number() {
    std::string s;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) s += take();
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      s += take();
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      s += take();
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) s += take();
      digits();
    }
    return s;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

ExprPtr binary(Expr::Op op, ExprPtr lhs, ExprPtr rhs) {
  Expr e;
  e.op = op;
  e.lhs = std::move(lhs);
  e.rhs = std::move(rhs);
  return make(std::move(e));
}

const std::set<std::string, std::less<>> kFunctions = {"sin", "cos", "tan", "exp", "ln", "sqrt"};

class Parser {
 public:
  Parser(std::vector<Token> tokens, SourceProgram& program, const ParseOptions& options, bool in_stdlib)
      : toks_(std::move(tokens)), prog_(program), options_(options), in_stdlib_(in_stdlib) {}

  void run() {
    if (peek_ident("OPENQASM")) {
      next();
      const Token v = expect(Tok::Number, "version number");
      if (v.text.rfind("2", 0) != 0) throw UnsupportedConstruct("OPENQASM " + v.text, v.where);
      expect_symbol(";");
    }
    while (peek().kind != Tok::End) statement();
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool peek_ident(std::string_view s) const { return peek().kind == Tok::Ident && peek().text == s; }
  bool peek_symbol(std::string_view s) const { return peek().kind == Tok::Symbol && peek().text == s; }

  [[noreturn]] void fail(const std::string& what, const Token& at) const {
    const std::string got = at.kind == Tok::End ? "end of input" : "'" + at.text + "'";
    throw ParseError("expected " + what + ", found " + got, at.where);
  }
  Token expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail(what, peek());
    return next();
  }
  void expect_symbol(std::string_view s) {
    if (!peek_symbol(s)) fail("'" + std::string(s) + "'", peek());
    next();
  }
  int expect_int(const std::string& what) {
    const Token t = expect(Tok::Number, what);
    if (t.text.find_first_not_of("0123456789") != std::string::npos) fail(what, t);
    return std::stoi(t.text);
  }

  void statement() {
    const Token head = peek();
    if (head.kind != Tok::Ident) fail("statement", head);
    const std::string& kw = head.text;
    if (kw == "include") return include();
    if (kw == "qreg" || kw == "creg") return reg(kw == "qreg");
    if (kw == "gate") return gate_definition();
    if (kw == "measure") return measure();
    if (kw == "barrier") return barrier();
    if (kw == "opaque" || kw == "if" || kw == "reset") throw UnsupportedConstruct(kw, head.where);
    prog_.statements.emplace_back(gate_call(nullptr));
  }

  void include() {
    const Token kw = next();
    const Token file = expect(Tok::String, "file name");
    expect_symbol(";");
    if (file.text != "qelib1.inc") throw UnsupportedConstruct("include \"" + file.text + "\"", kw.where);
    if (in_stdlib_ || included_) return;
    included_ = true;
    const std::string text = options_.stdlib ? *options_.stdlib : std::string(bundled_stdlib());
    SourceProgram lib;
    Parser(Lexer(text).run(), lib, options_, true).run();
    for (auto& [name, def] : lib.definitions) {
      if (prog_.definitions.contains(name)) throw ParseError("redefinition of gate '" + name + "'", kw.where);
      prog_.definitions.emplace(name, def);
    }
  }

  void reg(bool quantum) {
    next();
    const Token name = expect(Tok::Ident, "register name");
    expect_symbol("[");
    const int width = expect_int("register width");
    expect_symbol("]");
    expect_symbol(";");
    if (width <= 0) throw ParseError("register '" + name.text + "' must have positive width", name.where);
    if (prog_.find_qreg(name.text) || prog_.find_creg(name.text))
      throw ParseError("redeclaration of register '" + name.text + "'", name.where);
    (quantum ? prog_.qregs : prog_.cregs).push_back({name.text, width});
  }

  void gate_definition() {
    const Token kw = next();
    const Token name = expect(Tok::Ident, "gate name");
    GateDefinition def;
    def.name = name.text;
    def.where = kw.where;
    if (peek_symbol("(")) {
      next();
      if (!peek_symbol(")")) {
        def.params.push_back(expect(Tok::Ident, "parameter name").text);
        while (peek_symbol(",")) {
          next();
          def.params.push_back(expect(Tok::Ident, "parameter name").text);
        }
      }
      expect_symbol(")");
    }
    def.qubits.push_back(expect(Tok::Ident, "qubit name").text);
    while (peek_symbol(",")) {
      next();
      def.qubits.push_back(expect(Tok::Ident, "qubit name").text);
    }
    expect_symbol("{");
    while (!peek_symbol("}")) {
      if (peek_ident("barrier")) {
        next();
        args_until_semicolon(&def);
        continue;
      }
      if (peek().kind == Tok::Ident && (peek().text == "measure" || peek().text == "reset" || peek().text == "if" ||
                                        peek().text == "opaque"))
        throw UnsupportedConstruct(peek().text + " inside gate body", peek().where);
      def.body.push_back(gate_call(&def));
    }
    expect_symbol("}");
    if (prog_.definitions.contains(def.name) || def.name == "U" || def.name == "CX")
      throw ParseError("redefinition of gate '" + def.name + "'", name.where);
    prog_.definitions.emplace(def.name, std::move(def));
  }

  GateCall gate_call(const GateDefinition* scope) {
    const Token name = expect(Tok::Ident, "gate name");
    GateCall call;
    call.name = name.text;
    call.where = name.where;
    if (peek_symbol("(")) {
      next();
      if (!peek_symbol(")")) {
        call.params.push_back(expr(scope));
        while (peek_symbol(",")) {
          next();
          call.params.push_back(expr(scope));
        }
      }
      expect_symbol(")");
    }
    call.args = args_until_semicolon(scope);
    return call;
  }

  std::vector<Argument> args_until_semicolon(const GateDefinition* scope) {
    std::vector<Argument> args;
    args.push_back(argument(scope, true));
    while (peek_symbol(",")) {
      next();
      args.push_back(argument(scope, true));
    }
    expect_symbol(";");
    return args;
  }

  Argument argument(const GateDefinition* scope, bool quantum) {
    const Token name = expect(Tok::Ident, quantum ? "qubit argument" : "classical bit");
    Argument arg{name.text, std::nullopt};
    if (scope) {
      if (std::find(scope->qubits.begin(), scope->qubits.end(), name.text) == scope->qubits.end())
        throw ParseError("unknown qubit '" + name.text + "' in gate '" + scope->name + "'", name.where);
      return arg;
    }
    const Register* r = quantum ? prog_.find_qreg(name.text) : prog_.find_creg(name.text);
    if (!r)
      throw ParseError(std::string("undeclared ") + (quantum ? "qreg" : "creg") + " '" + name.text + "'",
                       name.where);
    if (peek_symbol("[")) {
      next();
      const Token idx = peek();
      arg.index = expect_int("index");
      expect_symbol("]");
      if (*arg.index >= r->width)
        throw ParseError("index " + std::to_string(*arg.index) + " out of bounds for register '" + r->name + "[" +
                             std::to_string(r->width) + "]'",
                         idx.where);
    }
    return arg;
  }

  void measure() {
    const Token kw = next();
    MeasureStatement m;
    m.where = kw.where;
    m.qubit = argument(nullptr, true);
    expect_symbol("->");
    m.bit = argument(nullptr, false);
    expect_symbol(";");
    prog_.statements.emplace_back(std::move(m));
  }

  void barrier() {
    const Token kw = next();
    BarrierStatement b;
    b.where = kw.where;
    b.args = args_until_semicolon(nullptr);
    prog_.statements.emplace_back(std::move(b));
  }

  // expr := term (('+'|'-') term)*
  ExprPtr expr(const GateDefinition* scope) {
    ExprPtr lhs = term(scope);
    while (peek_symbol("+") || peek_symbol("-")) {
      const bool add = next().text == "+";
      lhs = binary(add ? Expr::Op::Add : Expr::Op::Sub, lhs, term(scope));
    }
    return lhs;
  }

  ExprPtr term(const GateDefinition* scope) {
    ExprPtr lhs = unary(scope);
    while (peek_symbol("*") || peek_symbol("/")) {
      const bool mul = next().text == "*";
      lhs = binary(mul ? Expr::Op::Mul : Expr::Op::Div, lhs, unary(scope));
    }
    return lhs;
  }

  ExprPtr unary(const GateDefinition* scope) {
    if (peek_symbol("-")) {
      next();
      Expr e;
      e.op = Expr::Op::Neg;
      e.lhs = unary(scope);
      return make(std::move(e));
    }
    if (peek_symbol("+")) {
      next();
      return unary(scope);
    }
    ExprPtr base = primary(scope);
    if (peek_symbol("^")) {
      next();
      return binary(Expr::Op::Pow, base, unary(scope));
    }
    return base;
  }

  ExprPtr primary(const GateDefinition* scope) {
    const Token t = peek();
    if (t.kind == Tok::Number) {
      next();
      Expr e;
      e.value = std::stod(t.text);
      return make(std::move(e));
    }
    if (peek_symbol("(")) {
      next();
      ExprPtr inner = expr(scope);
      expect_symbol(")");
      return inner;
    }
    if (t.kind == Tok::Ident) {
      next();
      if (t.text == "pi") {
        Expr e;
        e.value = std::numbers::pi;
        return make(std::move(e));
      }
      if (kFunctions.contains(t.text)) {
        expect_symbol("(");
        Expr e;
        e.op = Expr::Op::Call;
        e.function = t.text;
        e.lhs = expr(scope);
        expect_symbol(")");
        return make(std::move(e));
      }
      if (scope) {
        const auto it = std::find(scope->params.begin(), scope->params.end(), t.text);
        if (it != scope->params.end()) {
          Expr e;
          e.op = Expr::Op::Param;
          e.param = static_cast<int>(it - scope->params.begin());
          return make(std::move(e));
        }
      }
      throw ParseError("unknown identifier '" + t.text + "' in expression", t.where);
    }
    fail("expression", t);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  SourceProgram& prog_;
  const ParseOptions& options_;
  bool in_stdlib_;
  bool included_ = false;
};

// ---------------------------------------------------------------------------
// Flattening

class Flattener {
 public:
  explicit Flattener(const SourceProgram& program) : prog_(program) {
    int offset = 0;
    for (const Register& r : prog_.qregs) {
      offsets_[r.name] = offset;
      offset += r.width;
    }
    out_.num_qubits = offset;
    for (const Register& r : prog_.cregs) out_.cregs.push_back({r.name, r.width});
    measured_.assign(static_cast<std::size_t>(offset), false);
  }

  Circuit run() {
    for (const Statement& s : prog_.statements) {
      if (const auto* call = std::get_if<GateCall>(&s)) {
        std::vector<double> params;
        for (const ExprPtr& e : call->params) params.push_back(evaluate(*e, {}));
        for (const std::vector<int>& qubits : broadcast(call->args, call->where)) {
          stack_.clear();
          expand(call->name, params, qubits, call->where);
        }
      } else if (std::holds_alternative<BarrierStatement>(s)) {
        if (out_.barriers.empty() || out_.barriers.back() != out_.gates.size()) out_.barriers.push_back(out_.gates.size());
      } else {
        measure(std::get<MeasureStatement>(s));
      }
    }
    return std::move(out_);
  }

 private:
  int width_of(const Argument& a) const { return prog_.find_qreg(a.reg)->width; }
  int qubit_of(const Argument& a, int i) const { return offsets_.at(a.reg) + (a.index ? *a.index : i); }

  std::vector<std::vector<int>> broadcast(const std::vector<Argument>& args, SourceLocation where) const {
    int width = 1;
    bool any_register = false;
    for (const Argument& a : args) {
      if (a.index) continue;
      const int w = width_of(a);
      if (any_register && w != width) throw FlattenError("register arguments of different widths", where);
      width = w;
      any_register = true;
    }
    std::vector<std::vector<int>> out;
    for (int i = 0; i < width; ++i) {
      std::vector<int> qubits;
      for (const Argument& a : args) qubits.push_back(qubit_of(a, i));
      out.push_back(std::move(qubits));
    }
    return out;
  }

  void emit(Gate g, SourceLocation where) {
    for (int q : {g.q0, g.q1}) {
      if (q >= 0 && measured_[static_cast<std::size_t>(q)])
        throw UnsupportedConstruct("mid-circuit measurement", where);
    }
    out_.gates.push_back(g);
  }

  void expand(const std::string& name, const std::vector<double>& params, const std::vector<int>& qubits,
              SourceLocation where) {
    if (name == "U") {
      if (params.size() != 3 || qubits.size() != 1) throw FlattenError("U takes 3 parameters and 1 qubit", where);
      for (double p : params)
        if (!std::isfinite(p)) throw FlattenError("non-finite angle", where);
      emit(Gate::u(qubits[0], params[0], params[1], params[2]), where);
      return;
    }
    if (name == "CX") {
      if (!params.empty() || qubits.size() != 2) throw FlattenError("CX takes 2 qubits", where);
      if (qubits[0] == qubits[1]) throw FlattenError("CX control and target coincide", where);
      emit(Gate::cx(qubits[0], qubits[1]), where);
      return;
    }
    const auto it = prog_.definitions.find(name);
    if (it == prog_.definitions.end()) throw FlattenError("undefined gate '" + name + "'", where);
    const GateDefinition& def = it->second;
    if (def.params.size() != params.size() || def.qubits.size() != qubits.size())
      throw FlattenError("gate '" + name + "' expects " + std::to_string(def.params.size()) + " parameters and " +
                             std::to_string(def.qubits.size()) + " qubits",
                         where);
    for (std::size_t i = 0; i < qubits.size(); ++i)
      for (std::size_t j = i + 1; j < qubits.size(); ++j)
        if (qubits[i] == qubits[j]) throw FlattenError("gate '" + name + "' applied to a repeated qubit", where);
    if (std::find(stack_.begin(), stack_.end(), name) != stack_.end())
      throw FlattenError("recursive definition of gate '" + name + "'", where);

    stack_.push_back(name);
    for (const GateCall& call : def.body) {
      std::vector<double> inner;
      for (const ExprPtr& e : call.params) inner.push_back(evaluate(*e, params));
      std::vector<int> operands;
      for (const Argument& a : call.args) {
        const auto pos = std::find(def.qubits.begin(), def.qubits.end(), a.reg) - def.qubits.begin();
        operands.push_back(qubits[static_cast<std::size_t>(pos)]);
      }
      expand(call.name, inner, operands, where);
    }
    stack_.pop_back();
  }

  void measure(const MeasureStatement& m) {
    const Register* creg = prog_.find_creg(m.bit.reg);
    const int qwidth = m.qubit.index ? 1 : width_of(m.qubit);
    const int cwidth = m.bit.index ? 1 : creg->width;
    if (qwidth != cwidth) throw FlattenError("measure operands of different widths", m.where);
    for (int i = 0; i < qwidth; ++i) {
      const int q = qubit_of(m.qubit, i);
      const int bit = m.bit.index ? *m.bit.index : i;
      measured_[static_cast<std::size_t>(q)] = true;
      out_.measurements.push_back({q, creg->name, bit});
    }
  }

  const SourceProgram& prog_;
  std::map<std::string, int, std::less<>> offsets_;
  std::vector<bool> measured_;
  std::vector<std::string> stack_;
  Circuit out_;
};

}  // namespace

SourceProgram parse(std::string_view text, const ParseOptions& options) {
  SourceProgram program;
  Parser(Lexer(text).run(), program, options, false).run();
  return program;
}

Circuit flatten(const SourceProgram& program) { return Flattener(program).run(); }

Circuit load_qasm(std::string_view text, const ParseOptions& options) { return flatten(parse(text, options)); }

}  // namespace qxmap
