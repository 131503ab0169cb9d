// Copyright 2026 The qcp Authors
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

#include "qcp/program_text.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <sstream>

namespace qcp {

ParseError::ParseError(std::string message, int line, int column)
    : Error("line " + std::to_string(line) + ", column " +
            std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

std::optional<GateKind> gate_kind_from_name(const std::string& name) {
    static const std::map<std::string, GateKind> table = {
        {"I", GateKind::I},       {"X", GateKind::X},
        {"Y", GateKind::Y},       {"Z", GateKind::Z},
        {"H", GateKind::H},       {"RX", GateKind::RX},
        {"RY", GateKind::RY},     {"RZ", GateKind::RZ},
        {"CNOT", GateKind::CNOT}, {"CZ", GateKind::CZ},
        {"SWAP", GateKind::SWAP}, {"MEASURE", GateKind::Measure},
    };
    auto it = table.find(name);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

// Single-line cursor. Columns are 1-based for error messages.
class LineCursor {
  public:
    LineCursor(std::string_view text, int line_no)
        : text_(text), line_no_(line_no) {}

    void skip_ws() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r'))
            ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size() || text_[pos_] == '#';
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void advance() { ++pos_; }
    int column() const { return static_cast<int>(pos_) + 1; }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, line_no_, column());
    }

    bool consume(char c) {
        skip_ws();
        if (peek() != c) return false;
        advance();
        return true;
    }

    void expect(char c, const std::string& what) {
        skip_ws();
        if (peek() != c) fail("expected " + what);
        advance();
    }

    std::string ident() {
        skip_ws();
        if (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != '_')
            fail("expected identifier");
        std::string out;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
            out += peek();
            advance();
        }
        return out;
    }

    // Unsigned integer literal (context guarantees no leading sign here).
    long integer() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected integer");
        long value = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            value = value * 10 + (peek() - '0');
            advance();
        }
        return value;
    }

    // Number literal via strtod; the caller has checked the first char.
    double number() {
        skip_ws();
        const char* begin = text_.data() + pos_;
        char* end = nullptr;
        double value = std::strtod(begin, &end);
        if (end == begin) fail("expected number");
        if (!std::isfinite(value)) fail("number out of range");
        pos_ += static_cast<std::size_t>(end - begin);
        return value;
    }

    // True when the upcoming number token has a fractional/exponent part,
    // which distinguishes FLOAT from a bare INT (physical qubit).
    bool looks_like_number() {
        skip_ws();
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_no_;
};

// expr := unary { '/' INT } ; unary := '-' unary | 'pi' | NUMBER | '%' IDENT
Param parse_expr(LineCursor& cur);

Param parse_unary(LineCursor& cur) {
    cur.skip_ws();
    if (cur.consume('-')) {
        Param inner = parse_unary(cur);
        if (inner.is_symbol())
            return Param::symbol(inner.symbol_name(), !inner.negated());
        return Param::constant(-inner.value());
    }
    if (cur.consume('%')) return Param::symbol(cur.ident());
    if (std::isalpha(static_cast<unsigned char>(cur.peek()))) {
        std::string word = cur.ident();
        if (word == "pi") return Param::constant(std::numbers::pi);
        cur.fail("unknown constant '" + word + "'");
    }
    if (!cur.looks_like_number()) cur.fail("expected expression");
    return Param::constant(cur.number());
}

Param parse_expr(LineCursor& cur) {
    Param value = parse_unary(cur);
    while (true) {
        cur.skip_ws();
        if (!cur.consume('/')) break;
        if (value.is_symbol())
            cur.fail("cannot divide a symbolic parameter");
        long divisor = cur.integer();
        if (divisor == 0) cur.fail("division by zero");
        value = Param::constant(value.value() / static_cast<double>(divisor));
    }
    return value;
}

QubitRef parse_qubit(LineCursor& cur) {
    cur.skip_ws();
    if (cur.consume('%')) return QubitRef::abstract(cur.ident());
    if (std::isdigit(static_cast<unsigned char>(cur.peek())))
        return QubitRef::physical(static_cast<int>(cur.integer()));
    cur.fail("expected qubit (INT or %name)");
}

Instruction parse_instruction(LineCursor& cur, int line_no) {
    cur.skip_ws();
    int name_col = cur.column();
    std::string name = cur.ident();
    auto kind = gate_kind_from_name(name);
    if (!kind) throw ParseError("unknown gate name '" + name + "'", line_no, name_col);

    if (*kind == GateKind::Measure) {
        QubitRef qubit = parse_qubit(cur);
        cur.skip_ws();
        cur.expect('-', "'->'");
        cur.expect('>', "'->'");
        int bit = static_cast<int>(cur.integer());
        if (!cur.at_end()) cur.fail("trailing tokens after MEASURE");
        return Instruction::measure(qubit, bit);
    }

    std::vector<Param> params;
    if (cur.consume('(')) {
        params.push_back(parse_expr(cur));
        while (cur.consume(',')) params.push_back(parse_expr(cur));
        cur.expect(')', "')'");
    }
    if (static_cast<int>(params.size()) != gate_param_arity(*kind))
        throw ParseError(name + " expects " +
                             std::to_string(gate_param_arity(*kind)) +
                             " parameter(s), got " + std::to_string(params.size()),
                         line_no, name_col);

    std::vector<QubitRef> qubits;
    qubits.push_back(parse_qubit(cur));
    while (!cur.at_end()) qubits.push_back(parse_qubit(cur));
    if (static_cast<int>(qubits.size()) != gate_qubit_arity(*kind))
        throw ParseError(name + " expects " +
                             std::to_string(gate_qubit_arity(*kind)) +
                             " qubit(s), got " + std::to_string(qubits.size()),
                         line_no, name_col);
    return Instruction::gate(*kind, std::move(qubits), std::move(params));
}

}  // namespace

Circuit parse_program(std::string_view text) {
    std::vector<Instruction> instructions;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t eol = text.find('\n', start);
        std::string_view line = text.substr(
            start, eol == std::string_view::npos ? std::string_view::npos
                                                 : eol - start);
        ++line_no;
        LineCursor cur(line, line_no);
        if (!cur.at_end()) instructions.push_back(parse_instruction(cur, line_no));
        if (eol == std::string_view::npos) break;
        start = eol + 1;
    }
    try {
        return Circuit(std::move(instructions));
    } catch (const Error& e) {
        // Structural violations have no single column; report the file start.
        throw ParseError(e.what(), 1, 1);
    }
}

std::string print_program(const Circuit& circuit) {
    std::ostringstream out;
    for (const Instruction& instr : circuit.instructions()) {
        if (instr.is_measure()) {
            out << "MEASURE " << instr.qubits[0].to_string() << " -> "
                << instr.classical_bit << "\n";
            continue;
        }
        out << gate_name(instr.kind);
        if (!instr.params.empty()) {
            out << '(';
            for (std::size_t i = 0; i < instr.params.size(); ++i) {
                if (i) out << ',';
                out << instr.params[i].to_string();
            }
            out << ')';
        }
        for (const QubitRef& q : instr.qubits) out << ' ' << q.to_string();
        out << "\n";
    }
    return out.str();
}

}  // namespace qcp
