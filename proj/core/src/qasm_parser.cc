// Copyright 2026 The vqpu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "qasm_lexer.h"
#include "vqpu/gates.h"
#include "vqpu/qasm.h"

namespace vqpu {

namespace {

using qasm::Token;
using qasm::TokenKind;

constexpr int kMaxExpressionDepth = 256;

// Unwinds the current statement; the statement loop resynchronizes on ';'.
struct StatementAbort {};

struct RegisterInfo {
    bool quantum;
    std::size_t offset;
    std::size_t size;
    std::size_t index;  // position in quantum_registers / classical_registers
    bool usable;        // false once a capacity error was reported for it
};

struct Operand {
    const Token *token = nullptr;
    bool whole = false;
    std::size_t offset = 0;
    std::size_t size = 0;
    std::size_t index = 0;

    std::size_t at(std::size_t k) const {
        return whole ? offset + k : offset + index;
    }
};

class Parser {
   public:
    Parser(std::string_view source, const ParseOptions &options)
        : tokens_(qasm::tokenize(source)), options_(options) {
    }

    ParseResult run() {
        parse_header();
        while (cur().kind != TokenKind::End) {
            try {
                statement();
            } catch (const StatementAbort &) {
                synchronize();
            }
        }
        sort_diagnostics(diagnostics_);
        ParseResult result;
        if (!has_errors(diagnostics_)) {
            result.ir = std::move(ir_);
        }
        result.diagnostics = std::move(diagnostics_);
        return result;
    }

   private:
    // ---- token cursor ----

    const Token &cur() const {
        return tokens_[pos_];
    }

    const Token &advance() {
        const Token &t = tokens_[pos_];
        if (t.kind != TokenKind::End) {
            ++pos_;
        }
        return t;
    }

    bool accept(std::string_view symbol) {
        if (cur().kind == TokenKind::Symbol && cur().text == symbol) {
            advance();
            return true;
        }
        return false;
    }

    void expect(std::string_view symbol) {
        if (!accept(symbol)) {
            fail(cur(), diag::kSyntax, "expected '" + std::string(symbol) + "'" + describe(cur()));
        }
    }

    const Token &expect_kind(TokenKind kind, const char *what) {
        if (cur().kind != kind) {
            fail(cur(), diag::kSyntax, std::string("expected ") + what + describe(cur()));
        }
        return advance();
    }

    static std::string describe(const Token &t) {
        if (t.kind == TokenKind::End) {
            return " before end of input";
        }
        std::string shown;
        for (char c : t.text.substr(0, 24)) {
            shown += (c >= 0x20 && c < 0x7f) ? c : '?';
        }
        return ", found '" + shown + "'";
    }

    void synchronize() {
        while (cur().kind != TokenKind::End && !cur().is(";")) {
            advance();
        }
        accept(";");
    }

    // ---- diagnostics ----

    void report(const Token &at, Severity severity, const char *code, std::string message) {
        diagnostics_.push_back(Diagnostic{severity, at.line, at.column, std::move(message), code});
    }

    void error(const Token &at, const char *code, std::string message) {
        report(at, Severity::Error, code, std::move(message));
    }

    [[noreturn]] void fail(const Token &at, const char *code, std::string message) {
        error(at, code, std::move(message));
        throw StatementAbort{};
    }

    // ---- statements ----

    void parse_header() {
        if (!cur().is("OPENQASM")) {
            error(cur(), diag::kMissingHeader, "source must start with 'OPENQASM 2.0;'");
            return;
        }
        try {
            advance();
            const Token &version = cur();
            if (version.kind != TokenKind::Real && version.kind != TokenKind::Integer) {
                fail(version, diag::kSyntax, "expected version number" + describe(version));
            }
            advance();
            if (version.text != "2.0" && version.text != "2") {
                error(version, diag::kUnsupportedVersion,
                      "only OpenQASM 2.0 is supported, found '" + std::string(version.text) + "'");
            }
            expect(";");
        } catch (const StatementAbort &) {
            synchronize();
        }
    }

    void statement() {
        const Token &t = cur();
        if (t.kind != TokenKind::Identifier) {
            fail(t, diag::kSyntax, "expected a statement" + describe(t));
        }
        if (t.text == "OPENQASM") {
            fail(t, diag::kSyntax, "the OPENQASM header may only appear once, at the start");
        } else if (t.text == "include") {
            include();
        } else if (t.text == "qreg" || t.text == "creg") {
            declaration();
        } else if (t.text == "gate") {
            gate_definition();
        } else if (t.text == "opaque") {
            fail(t, diag::kUnsupported, "opaque gate declarations are not supported");
        } else if (t.text == "measure") {
            measure();
        } else if (t.text == "reset") {
            reset();
        } else if (t.text == "barrier") {
            barrier();
        } else if (t.text == "if") {
            conditional();
        } else {
            gate_application(std::nullopt);
        }
    }

    void include() {
        advance();
        const Token &file = cur();
        if (file.kind != TokenKind::String) {
            fail(file, diag::kSyntax, "expected a quoted file name" + describe(file));
        }
        advance();
        expect(";");
        if (file.text != "\"qelib1.inc\"") {
            error(file, diag::kUnsupported, "only \"qelib1.inc\" may be included");
        }
    }

    void declaration() {
        const Token &keyword = advance();
        bool quantum = keyword.text == "qreg";
        const Token &name = expect_kind(TokenKind::Identifier, "register name");
        expect("[");
        const Token &size_token = expect_kind(TokenKind::Integer, "register size");
        expect("]");
        expect(";");

        std::string reg_name(name.text);
        if (!is_valid_register_name(reg_name)) {
            error(name, diag::kInvalidName, "register names must match [a-z][A-Za-z0-9_]*");
            return;
        }
        if (registers_.count(reg_name) != 0) {
            error(name, diag::kDuplicateRegister, "register '" + reg_name + "' is already declared");
            return;
        }
        std::size_t size = 0;
        auto [end, ec] = std::from_chars(size_token.text.data(), size_token.text.data() + size_token.text.size(), size);
        if (ec != std::errc() || size == 0) {
            error(size_token, diag::kInvalidRegisterSize, "register size must be a positive integer");
            registers_[reg_name] = RegisterInfo{quantum, 0, 0, 0, false};
            return;
        }

        std::size_t limit = quantum ? options_.max_qubits : kMaxClassicalBits;
        std::size_t used = quantum ? ir_.num_qubits() : ir_.num_clbits();
        if (size > limit || used + size > limit) {
            error(size_token, diag::kCapacityExceeded,
                  std::string(quantum ? "qubit" : "classical bit") + " capacity of " + std::to_string(limit) +
                      " exceeded by register '" + reg_name + "'");
            registers_[reg_name] = RegisterInfo{quantum, 0, size, 0, false};
            return;
        }
        auto &list = quantum ? ir_.quantum_registers : ir_.classical_registers;
        registers_[reg_name] = RegisterInfo{quantum, used, size, list.size(), true};
        list.push_back(Register{reg_name, size});
    }

    void gate_definition() {
        const Token &keyword = advance();
        error(keyword, diag::kUnsupported, "user-defined gates are not supported");
        while (cur().kind != TokenKind::End && !cur().is("{")) {
            if (cur().is(";")) {
                advance();
                return;
            }
            advance();
        }
        int depth = 0;
        while (cur().kind != TokenKind::End) {
            if (cur().is("{")) {
                ++depth;
            } else if (cur().is("}")) {
                --depth;
                if (depth == 0) {
                    advance();
                    return;
                }
            }
            advance();
        }
    }

    void measure() {
        advance();
        auto qubit = argument();
        expect("->");
        auto bit = argument();
        expect(";");
        auto q = resolve(qubit, true);
        auto c = resolve(bit, false);
        if (!q || !c) {
            return;
        }
        if (q->whole != c->whole || (q->whole && q->size != c->size)) {
            error(*qubit.token, diag::kSizeMismatch, "measure needs operands of matching size");
            return;
        }
        std::size_t n = q->whole ? q->size : 1;
        for (std::size_t k = 0; k < n; ++k) {
            ir_.instructions.emplace_back(MeasureOp{q->at(k), c->at(k)});
        }
    }

    void reset() {
        advance();
        auto arg = argument();
        expect(";");
        if (auto q = resolve(arg, true)) {
            std::size_t n = q->whole ? q->size : 1;
            for (std::size_t k = 0; k < n; ++k) {
                ir_.instructions.emplace_back(ResetOp{q->at(k)});
            }
        }
    }

    void barrier() {
        advance();
        auto args = argument_list();
        expect(";");
        BarrierOp op;
        bool ok = true;
        for (const auto &arg : args) {
            auto q = resolve(arg, true);
            if (!q) {
                ok = false;
                continue;
            }
            std::size_t n = q->whole ? q->size : 1;
            for (std::size_t k = 0; k < n; ++k) {
                op.qubits.push_back(q->at(k));
            }
        }
        if (ok) {
            ir_.instructions.emplace_back(std::move(op));
        }
    }

    struct Condition {
        std::size_t creg;
        std::uint64_t value;
    };

    void conditional() {
        advance();
        expect("(");
        const Token &name = expect_kind(TokenKind::Identifier, "classical register name");
        expect("==");
        const Token &value_token = expect_kind(TokenKind::Integer, "integer");
        expect(")");

        std::uint64_t value = 0;
        auto [end, ec] =
            std::from_chars(value_token.text.data(), value_token.text.data() + value_token.text.size(), value);
        if (ec != std::errc()) {
            fail(value_token, diag::kSyntax, "condition value does not fit in 64 bits");
        }
        if (cur().is("measure") || cur().is("reset") || cur().is("if") || cur().is("barrier")) {
            fail(cur(), diag::kUnsupported, "only a gate may be conditioned");
        }

        std::optional<Condition> condition;
        auto it = registers_.find(std::string(name.text));
        if (it == registers_.end() || it->second.quantum) {
            error(name, diag::kUndeclaredRegister, "'" + std::string(name.text) + "' is not a declared creg");
        } else if (it->second.usable) {
            const auto &info = it->second;
            condition = Condition{info.index, value};
            if (info.size < 64 && value >= (std::uint64_t{1} << info.size)) {
                report(value_token, Severity::Warning, diag::kUnreachableCondition,
                       "value " + std::to_string(value) + " never fits in '" + std::string(name.text) + "'");
            }
        }
        gate_application(condition, condition.has_value());
    }

    void gate_application(std::optional<Condition> condition, bool emit = true) {
        const Token &name = advance();
        std::string gate_name(name.text);
        if (gate_name == "U") {
            gate_name = "u";
        } else if (gate_name == "CX") {
            gate_name = "cx";
        }

        std::vector<double> params;
        bool params_ok = true;
        if (accept("(")) {
            if (!cur().is(")")) {
                do {
                    const Token &start = cur();
                    double value = expression(0);
                    if (!std::isfinite(value)) {
                        error(start, diag::kInvalidParameter, "parameter does not evaluate to a finite number");
                        params_ok = false;
                    }
                    params.push_back(value);
                } while (accept(","));
            }
            expect(")");
        }
        auto args = argument_list();
        expect(";");

        const GateDefinition *def = find_gate(gate_name);
        if (def == nullptr) {
            error(name, diag::kUnknownGate, "unknown gate '" + gate_name + "'");
            return;
        }
        if (params.size() != def->num_params) {
            error(name, diag::kArityMismatch,
                  "'" + gate_name + "' takes " + std::to_string(def->num_params) + " parameter(s), got " +
                      std::to_string(params.size()));
            return;
        }
        if (args.size() != def->num_qubits()) {
            error(name, diag::kArityMismatch,
                  "'" + gate_name + "' acts on " + std::to_string(def->num_qubits()) + " qubit(s), got " +
                      std::to_string(args.size()));
            return;
        }

        std::vector<Operand> operands;
        bool ok = params_ok;
        for (const auto &arg : args) {
            auto q = resolve(arg, true);
            if (q) {
                operands.push_back(*q);
            } else {
                ok = false;
            }
        }
        if (!ok) {
            return;
        }
        std::optional<std::size_t> width;
        for (const auto &op : operands) {
            if (!op.whole) {
                continue;
            }
            if (width && *width != op.size) {
                error(*op.token, diag::kSizeMismatch, "broadcast over registers of different sizes");
                return;
            }
            width = op.size;
        }
        std::size_t n = width.value_or(1);
        std::vector<GateOp> expanded;
        for (std::size_t k = 0; k < n; ++k) {
            GateOp g{gate_name, params, {}, {}};
            std::set<std::size_t> seen;
            for (std::size_t a = 0; a < operands.size(); ++a) {
                std::size_t q = operands[a].at(k);
                if (!seen.insert(q).second) {
                    error(name, diag::kDuplicateOperand, "'" + gate_name + "' applied to the same qubit twice");
                    return;
                }
                (a < def->num_controls ? g.controls : g.targets).push_back(q);
            }
            expanded.push_back(std::move(g));
        }
        if (!emit) {
            return;
        }
        for (auto &g : expanded) {
            if (condition) {
                ir_.instructions.emplace_back(ConditionalOp{condition->creg, condition->value, std::move(g)});
            } else {
                ir_.instructions.emplace_back(std::move(g));
            }
        }
    }

    // ---- operands ----

    struct Argument {
        const Token *token;
        std::optional<std::size_t> index;  // nullopt = whole register
        bool index_ok = true;
    };

    Argument argument() {
        const Token &name = expect_kind(TokenKind::Identifier, "register operand");
        Argument arg{&name, std::nullopt};
        if (accept("[")) {
            const Token &idx = expect_kind(TokenKind::Integer, "index");
            expect("]");
            std::size_t value = 0;
            auto [end, ec] = std::from_chars(idx.text.data(), idx.text.data() + idx.text.size(), value);
            if (ec != std::errc()) {
                arg.index_ok = false;
            }
            arg.index = value;
        }
        return arg;
    }

    std::vector<Argument> argument_list() {
        std::vector<Argument> args;
        args.push_back(argument());
        while (accept(",")) {
            args.push_back(argument());
        }
        return args;
    }

    std::optional<Operand> resolve(const Argument &arg, bool quantum) {
        std::string name(arg.token->text);
        auto it = registers_.find(name);
        if (it == registers_.end() || it->second.quantum != quantum) {
            error(*arg.token, diag::kUndeclaredRegister,
                  "'" + name + "' is not a declared " + (quantum ? "qreg" : "creg"));
            return std::nullopt;
        }
        const RegisterInfo &info = it->second;
        if (!info.usable) {
            return std::nullopt;
        }
        Operand op{arg.token, !arg.index.has_value(), info.offset, info.size, 0};
        if (arg.index) {
            if (!arg.index_ok || *arg.index >= info.size) {
                error(*arg.token, diag::kIndexOutOfRange,
                      arg.index_ok ? "index " + std::to_string(*arg.index) + " is out of range for register '" + name +
                                         "' of size " + std::to_string(info.size)
                                   : "index is out of range for register '" + name + "'");
                return std::nullopt;
            }
            op.index = *arg.index;
        }
        return op;
    }

    // ---- parameter expressions ----

    void enter(int depth) {
        if (depth > kMaxExpressionDepth) {
            fail(cur(), diag::kSyntax, "expression nested too deeply");
        }
    }

    double expression(int depth) {
        enter(depth);
        double value = term(depth + 1);
        while (true) {
            if (accept("+")) {
                value += term(depth + 1);
            } else if (accept("-")) {
                value -= term(depth + 1);
            } else {
                return value;
            }
        }
    }

    double term(int depth) {
        double value = unary(depth + 1);
        while (true) {
            if (accept("*")) {
                value *= unary(depth + 1);
            } else if (accept("/")) {
                value /= unary(depth + 1);
            } else {
                return value;
            }
        }
    }

    double unary(int depth) {
        enter(depth);
        if (accept("-")) {
            return -unary(depth + 1);
        }
        if (accept("+")) {
            return unary(depth + 1);
        }
        double base = primary(depth + 1);
        if (accept("^")) {
            return std::pow(base, unary(depth + 1));
        }
        return base;
    }

    double primary(int depth) {
        enter(depth);
        const Token &t = cur();
        if (t.kind == TokenKind::Real || t.kind == TokenKind::Integer) {
            advance();
            double value = 0;
            auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
            if (ec == std::errc::result_out_of_range) {
                return HUGE_VAL;
            }
            return value;
        }
        if (t.is("pi")) {
            advance();
            return std::numbers::pi;
        }
        if (t.kind == TokenKind::Identifier) {
            static const std::map<std::string_view, double (*)(double)> kFunctions{
                {"sin", [](double x) { return std::sin(x); }},  {"cos", [](double x) { return std::cos(x); }},
                {"tan", [](double x) { return std::tan(x); }},  {"exp", [](double x) { return std::exp(x); }},
                {"ln", [](double x) { return std::log(x); }},   {"sqrt", [](double x) { return std::sqrt(x); }},
            };
            auto fn = kFunctions.find(t.text);
            if (fn == kFunctions.end()) {
                fail(t, diag::kSyntax, "unknown identifier '" + std::string(t.text) + "' in expression");
            }
            advance();
            expect("(");
            double arg = expression(depth + 1);
            expect(")");
            return fn->second(arg);
        }
        if (accept("(")) {
            double value = expression(depth + 1);
            expect(")");
            return value;
        }
        fail(t, diag::kSyntax, "expected a number or expression" + describe(t));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    ParseOptions options_;
    CircuitIR ir_;
    std::vector<Diagnostic> diagnostics_;
    std::map<std::string, RegisterInfo, std::less<>> registers_;
};

}  // namespace

ParseResult parse_qasm(std::string_view source, const ParseOptions &options) {
    return Parser(source, options).run();
}

}  // namespace vqpu
