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

#pragma once

#include <string>
#include <string_view>

#include "qcp/circuit.hpp"

namespace qcp {

/// Syntax or semantic error in program text, with 1-based position.
class ParseError : public Error {
  public:
    ParseError(std::string message, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

/// Parses the `.qp` textual program format:
///
///   gate   := NAME [ '(' expr {',' expr} ')' ] qubit {qubit}
///   qubit  := INT | '%' IDENT              (physical | abstract)
///   meas   := 'MEASURE' qubit '->' INT
///   expr   := FLOAT | INT | 'pi' | '-' expr | expr '/' INT | '%' IDENT
///
/// One instruction per line, '#' starts a comment, UTF-8. Constant
/// expressions are folded at parse time; a symbol may appear bare or
/// under unary minus.
Circuit parse_program(std::string_view text);

/// Canonical form: one instruction per line, constants printed with 17
/// significant digits (lossless for doubles). parse(print(c)) == c.
std::string print_program(const Circuit& circuit);

}  // namespace qcp
