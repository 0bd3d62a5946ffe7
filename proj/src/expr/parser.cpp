#include "sge/expr.hpp"

#include <cctype>

namespace sge {

ParseError::ParseError(const std::string& what, int line_, int column_)
    : std::runtime_error(what + " at line " + std::to_string(line_) + ", column " + std::to_string(column_)),
      line(line_),
      column(column_) {}

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, Comma, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            Token t{Tok::End, "", line_, col_};
            if (pos_ >= text_.size()) {
                out.push_back(t);
                return out;
            }
            char ch = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
                t.kind = Tok::Number;
                t.text = number();
            } else if (std::isalpha(static_cast<unsigned char>(ch))) {
                t.kind = Tok::Ident;
                while (pos_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                    t.text += advance();
            } else {
                switch (ch) {
                    case '+': t.kind = Tok::Plus; break;
                    case '-': t.kind = Tok::Minus; break;
                    case '*': t.kind = Tok::Star; break;
                    case '^': t.kind = Tok::Caret; break;
                    case '(': t.kind = Tok::LParen; break;
                    case ')': t.kind = Tok::RParen; break;
                    case ',': t.kind = Tok::Comma; break;
                    default:
                        throw ParseError(std::string("unexpected character '") + ch + "'", line_, col_);
                }
                t.text = advance();
            }
            out.push_back(t);
        }
    }

private:
    char advance() {
        char ch = text_[pos_++];
        if (ch == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return ch;
    }
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
    }
    bool digit_at(std::size_t p) const {
        return p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]));
    }
    std::string number() {
        std::string s;
        while (digit_at(pos_)) s += advance();
        if (pos_ < text_.size() && text_[pos_] == '/' && digit_at(pos_ + 1)) {
            s += advance();
            while (digit_at(pos_)) s += advance();
            return s;
        }
        if (pos_ < text_.size() && text_[pos_] == '.') {
            s += advance();
            while (digit_at(pos_)) s += advance();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < text_.size() && (text_[p] == '-' || text_[p] == '+')) ++p;
            if (digit_at(p)) {
                while (pos_ < p) s += advance();
                while (digit_at(pos_)) s += advance();
            }
        }
        return s;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Expr parse() {
        Expr e = expr();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }
    void expect(Tok k, const char* what) {
        if (!accept(k)) fail(std::string("expected ") + what);
    }

    Expr expr() {
        std::vector<Expr> terms{term()};
        while (true) {
            if (accept(Tok::Plus)) terms.push_back(term());
            else if (accept(Tok::Minus)) terms.push_back(Expr::product({Expr::constant(GaussianRational(-1)), term()}));
            else break;
        }
        return terms.size() == 1 ? terms[0] : Expr::sum(std::move(terms));
    }

    Expr term() {
        std::vector<Expr> factors{factor()};
        while (accept(Tok::Star)) factors.push_back(factor());
        return factors.size() == 1 ? factors[0] : Expr::product(std::move(factors));
    }

    Expr factor() {
        Expr b = base();
        if (accept(Tok::Caret)) return Expr::power(b, integer_exponent());
        return b;
    }

    int integer_exponent() {
        bool parens = accept(Tok::LParen);
        bool negative = false;
        if (accept(Tok::Minus)) negative = true;
        else accept(Tok::Plus);
        if (peek().kind != Tok::Number) fail("exponent must be an integer");
        const Token& t = next();
        for (char ch : t.text)
            if (!std::isdigit(static_cast<unsigned char>(ch))) {
                --pos_;
                fail("non-integer exponent '" + t.text + "'");
            }
        int n = std::stoi(t.text);
        if (parens) expect(Tok::RParen, "')'");
        return negative ? -n : n;
    }

    Expr base() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Number: {
                next();
                try {
                    return Expr::constant(GaussianRational(Rational::parse(t.text)));
                } catch (const std::exception& ex) {
                    throw ParseError(ex.what(), t.line, t.column);
                }
            }
            case Tok::Minus:
                next();
                return Expr::product({Expr::constant(GaussianRational(-1)), factor()});
            case Tok::LParen: {
                next();
                Expr e = expr();
                expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::Ident: {
                next();
                if (peek().kind != Tok::LParen) {
                    if (t.text == "i") return Expr::constant(GaussianRational::i());
                    return Expr::symbol(t.text);
                }
                if (t.text == "D") return derivative();
                Func f;
                if (!func_from_name(t.text, f)) throw ParseError("unknown function '" + t.text + "'", t.line, t.column);
                next();
                Expr arg = expr();
                expect(Tok::RParen, "')'");
                return Expr::call(f, arg);
            }
            default:
                fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
        }
    }

    Expr derivative() {
        expect(Tok::LParen, "'('");
        if (peek().kind != Tok::Ident) fail("expected dependent variable in D(...)");
        std::string fn = next().text;
        std::vector<std::string> coords;
        while (accept(Tok::Comma)) {
            if (peek().kind != Tok::Ident) fail("expected coordinate name in D(...)");
            coords.push_back(next().text);
        }
        if (coords.empty()) fail("D(...) needs at least one coordinate");
        expect(Tok::RParen, "')'");
        return Expr::deriv(fn, coords);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(const std::string& text) {
    Lexer lexer(text);
    Parser parser(lexer.run());
    return canonical(parser.parse());
}

}  // namespace sge
