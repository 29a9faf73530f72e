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

#ifndef VQPU_SRC_QASM_LEXER_H_
#define VQPU_SRC_QASM_LEXER_H_

#include <cstddef>
#include <string_view>
#include <vector>

namespace vqpu::qasm {

enum class TokenKind {
    Identifier,
    Integer,
    Real,
    String,
    Symbol,  // single punctuation character, or "->" / "=="
    Invalid,
    End,
};

struct Token {
    TokenKind kind;
    std::string_view text;
    std::size_t line;
    std::size_t column;

    bool is(std::string_view s) const noexcept {
        return (kind == TokenKind::Symbol || kind == TokenKind::Identifier) && text == s;
    }
};

/// Splits the whole source up front. Always ends with exactly one End token,
/// positioned on the last byte of the source (1:1 for empty input).
/// Unrecognized bytes and unterminated strings become Invalid tokens.
std::vector<Token> tokenize(std::string_view source);

}  // namespace vqpu::qasm

#endif  // VQPU_SRC_QASM_LEXER_H_
