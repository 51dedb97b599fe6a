#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pathgen/errors.hpp"

namespace pathgen {

enum class TokenType {
    Ident,
    IntLit,
    KwFn,
    KwLet,
    KwIf,
    KwElse,
    KwWhile,
    KwFor,
    KwReturn,
    KwInt,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Colon,
    Semicolon,
    Comma,
    Assign,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    AndAnd,
    OrOr,
    Bang,
    EndOfFile,
};

const char* token_type_name(TokenType type);

struct Token {
    TokenType type = TokenType::EndOfFile;
    std::string text;
    std::int64_t int_value = 0;
    SourcePos pos;
};

// Tokenizes the whole source. `//` comments run to end of line.
std::vector<Token> tokenize(const std::string& source);

}  // namespace pathgen
