#include "pathgen/lexer.hpp"

#include <cctype>
#include <unordered_map>

namespace pathgen {

const char* token_type_name(TokenType type) {
    switch (type) {
        case TokenType::Ident: return "identifier";
        case TokenType::IntLit: return "integer";
        case TokenType::KwFn: return "'fn'";
        case TokenType::KwLet: return "'let'";
        case TokenType::KwIf: return "'if'";
        case TokenType::KwElse: return "'else'";
        case TokenType::KwWhile: return "'while'";
        case TokenType::KwFor: return "'for'";
        case TokenType::KwReturn: return "'return'";
        case TokenType::KwInt: return "'int'";
        case TokenType::LParen: return "'('";
        case TokenType::RParen: return "')'";
        case TokenType::LBrace: return "'{'";
        case TokenType::RBrace: return "'}'";
        case TokenType::LBracket: return "'['";
        case TokenType::RBracket: return "']'";
        case TokenType::Colon: return "':'";
        case TokenType::Semicolon: return "';'";
        case TokenType::Comma: return "','";
        case TokenType::Assign: return "'='";
        case TokenType::Eq: return "'=='";
        case TokenType::Ne: return "'!='";
        case TokenType::Lt: return "'<'";
        case TokenType::Le: return "'<='";
        case TokenType::Gt: return "'>'";
        case TokenType::Ge: return "'>='";
        case TokenType::Plus: return "'+'";
        case TokenType::Minus: return "'-'";
        case TokenType::Star: return "'*'";
        case TokenType::Slash: return "'/'";
        case TokenType::Percent: return "'%'";
        case TokenType::AndAnd: return "'&&'";
        case TokenType::OrOr: return "'||'";
        case TokenType::Bang: return "'!'";
        case TokenType::EndOfFile: return "end of input";
    }
    return "?";
}

namespace {

const std::unordered_map<std::string, TokenType>& keywords() {
    static const std::unordered_map<std::string, TokenType> table = {
        {"fn", TokenType::KwFn},       {"let", TokenType::KwLet},
        {"if", TokenType::KwIf},       {"else", TokenType::KwElse},
        {"while", TokenType::KwWhile}, {"for", TokenType::KwFor},
        {"return", TokenType::KwReturn}, {"int", TokenType::KwInt},
    };
    return table;
}

class Lexer {
public:
    explicit Lexer(const std::string& source) : src_(source) {}

    std::vector<Token> run() {
        std::vector<Token> tokens;
        for (;;) {
            skip_ws_and_comments();
            Token tok = next_token();
            bool done = tok.type == TokenType::EndOfFile;
            tokens.push_back(std::move(tok));
            if (done) break;
        }
        return tokens;
    }

private:
    bool at_end() const { return offset_ >= src_.size(); }
    char peek() const { return at_end() ? '\0' : src_[offset_]; }
    char peek2() const { return offset_ + 1 < src_.size() ? src_[offset_ + 1] : '\0'; }

    char advance() {
        char c = src_[offset_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip_ws_and_comments() {
        for (;;) {
            if (at_end()) return;
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek2() == '/') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                return;
            }
        }
    }

    Token make(TokenType type, std::string text) {
        Token tok;
        tok.type = type;
        tok.text = std::move(text);
        tok.pos = start_;
        return tok;
    }

    Token next_token() {
        start_ = {line_, column_};
        if (at_end()) return make(TokenType::EndOfFile, "");
        char c = advance();

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string ident(1, c);
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
                ident.push_back(advance());
            auto it = keywords().find(ident);
            if (it != keywords().end()) return make(it->second, ident);
            return make(TokenType::Ident, ident);
        }

        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits(1, c);
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
                digits.push_back(advance());
            if (!at_end() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
                throw ParseError("malformed integer literal", start_);
            Token tok = make(TokenType::IntLit, digits);
            try {
                tok.int_value = std::stoll(digits);
            } catch (const std::out_of_range&) {
                throw ParseError("integer literal out of 64-bit range", start_);
            }
            return tok;
        }

        switch (c) {
            case '(': return make(TokenType::LParen, "(");
            case ')': return make(TokenType::RParen, ")");
            case '{': return make(TokenType::LBrace, "{");
            case '}': return make(TokenType::RBrace, "}");
            case '[': return make(TokenType::LBracket, "[");
            case ']': return make(TokenType::RBracket, "]");
            case ':': return make(TokenType::Colon, ":");
            case ';': return make(TokenType::Semicolon, ";");
            case ',': return make(TokenType::Comma, ",");
            case '+': return make(TokenType::Plus, "+");
            case '-': return make(TokenType::Minus, "-");
            case '*': return make(TokenType::Star, "*");
            case '/': return make(TokenType::Slash, "/");
            case '%': return make(TokenType::Percent, "%");
            case '=':
                if (peek() == '=') { advance(); return make(TokenType::Eq, "=="); }
                return make(TokenType::Assign, "=");
            case '!':
                if (peek() == '=') { advance(); return make(TokenType::Ne, "!="); }
                return make(TokenType::Bang, "!");
            case '<':
                if (peek() == '=') { advance(); return make(TokenType::Le, "<="); }
                return make(TokenType::Lt, "<");
            case '>':
                if (peek() == '=') { advance(); return make(TokenType::Ge, ">="); }
                return make(TokenType::Gt, ">");
            case '&':
                if (peek() == '&') { advance(); return make(TokenType::AndAnd, "&&"); }
                throw ParseError("stray '&' (did you mean '&&'?)", start_);
            case '|':
                if (peek() == '|') { advance(); return make(TokenType::OrOr, "||"); }
                throw ParseError("stray '|' (did you mean '||'?)", start_);
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", start_);
        }
    }

    const std::string& src_;
    std::size_t offset_ = 0;
    int line_ = 1;
    int column_ = 1;
    SourcePos start_;
};

}  // namespace

std::vector<Token> tokenize(const std::string& source) {
    return Lexer(source).run();
}

}  // namespace pathgen
