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

#include "qasm_lexer.h"

namespace vqpu::qasm {

namespace {

bool is_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_digit(char c) {
    return c >= '0' && c <= '9';
}

class Lexer {
   public:
    explicit Lexer(std::string_view source) : src_(source) {
    }

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_blank();
            if (pos_ >= src_.size()) {
                break;
            }
            out.push_back(next());
        }
        std::size_t end_line = 1, end_col = 1;
        if (!src_.empty()) {
            end_line = last_line_;
            end_col = last_col_;
        }
        out.push_back(Token{TokenKind::End, {}, end_line, end_col});
        return out;
    }

   private:
    void advance() {
        last_line_ = line_;
        last_col_ = col_;
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void skip_blank() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance();
                }
            } else {
                break;
            }
        }
    }

    Token next() {
        std::size_t start = pos_, line = line_, col = col_;
        auto make = [&](TokenKind kind) { return Token{kind, src_.substr(start, pos_ - start), line, col}; };
        char c = src_[pos_];
        if (is_alpha(c)) {
            while (pos_ < src_.size() && (is_alpha(src_[pos_]) || is_digit(src_[pos_]))) {
                advance();
            }
            return make(TokenKind::Identifier);
        }
        if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
            bool real = false;
            while (is_digit(peek())) {
                advance();
            }
            if (peek() == '.') {
                real = true;
                advance();
                while (is_digit(peek())) {
                    advance();
                }
            }
            if ((peek() == 'e' || peek() == 'E') &&
                (is_digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && is_digit(peek(2))))) {
                real = true;
                advance();
                if (peek() == '+' || peek() == '-') {
                    advance();
                }
                while (is_digit(peek())) {
                    advance();
                }
            }
            return make(real ? TokenKind::Real : TokenKind::Integer);
        }
        if (c == '"') {
            advance();
            while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
                advance();
            }
            if (peek() != '"') {
                return make(TokenKind::Invalid);
            }
            advance();
            return make(TokenKind::String);
        }
        if ((c == '-' && peek(1) == '>') || (c == '=' && peek(1) == '=')) {
            advance();
            advance();
            return make(TokenKind::Symbol);
        }
        switch (c) {
            case ';':
            case ',':
            case '[':
            case ']':
            case '(':
            case ')':
            case '{':
            case '}':
            case '+':
            case '-':
            case '*':
            case '/':
            case '^':
                advance();
                return make(TokenKind::Symbol);
            default:
                advance();
                return make(TokenKind::Invalid);
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    std::size_t last_line_ = 1;
    std::size_t last_col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
    return Lexer(source).run();
}

}  // namespace vqpu::qasm
