#include "hypo/parser.hpp"

#include <cctype>
#include <charconv>

namespace hypo {

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error("at position " + std::to_string(position) + ": " + message),
      reason_(message),
      position_(position) {}

namespace {

// Recursive descent over the grammar
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | '+' unary | power
//   power   := primary ('^' exponent)?
//   primary := number | 'i' | 'x' index | '(' expr ')'
class Parser {
public:
    Parser(std::string_view text, std::size_t n) : text_(text), n_(n) {}

    PolynomialSymbol run() {
        skip_ws();
        if (at_end()) throw ParseError("empty expression", pos_);
        PolynomialSymbol result = expr();
        skip_ws();
        if (!at_end()) throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
        return result;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    PolynomialSymbol expr() {
        PolynomialSymbol acc = term();
        while (true) {
            if (accept('+')) {
                acc = acc + term();
            } else if (accept('-')) {
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    PolynomialSymbol term() {
        PolynomialSymbol acc = unary();
        while (accept('*')) acc = acc * unary();
        return acc;
    }

    PolynomialSymbol unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    PolynomialSymbol power() {
        PolynomialSymbol base = primary();
        if (!accept('^')) return base;
        skip_ws();
        std::size_t start = pos_;
        if (peek() == '-') throw ParseError("negative exponent", pos_);
        if (!std::isdigit(static_cast<unsigned char>(peek()))) {
            throw ParseError("exponent must be a non-negative integer", pos_);
        }
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (peek() == '.' || peek() == '/') throw ParseError("non-integer exponent", start);
        unsigned exponent = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, exponent);
        if (ec != std::errc() || exponent > 64) throw ParseError("exponent too large", start);
        return base.pow(exponent);
    }

    PolynomialSymbol primary() {
        skip_ws();
        if (at_end()) throw ParseError("unexpected end of expression", pos_);
        char c = peek();
        if (c == '(') {
            std::size_t open = pos_;
            ++pos_;
            PolynomialSymbol inner = expr();
            if (!accept(')')) throw ParseError("missing ')' for '(' at " + std::to_string(open), pos_);
            return inner;
        }
        if (c == 'i') {
            ++pos_;
            if (std::isalnum(static_cast<unsigned char>(peek()))) throw ParseError("unknown identifier", pos_ - 1);
            return PolynomialSymbol::constant(n_, {Rational(0), Rational(1)});
        }
        if (c == 'x') {
            std::size_t start = pos_;
            ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected variable index after 'x'", pos_);
            std::size_t digits = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            std::size_t index = 0;
            auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, index);
            if (ec != std::errc() || index == 0 || index > n_) {
                throw ParseError("variable index out of range (dimension " + std::to_string(n_) + ")", start);
            }
            return PolynomialSymbol::variable(n_, index - 1);
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    PolynomialSymbol number() {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (peek() == '.') {
            ++pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        } else if (peek() == '/') {
            // p/q literal: the denominator must follow immediately.
            std::size_t slash = pos_;
            ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected denominator", pos_);
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            (void)slash;
        }
        std::string_view lit = text_.substr(start, pos_ - start);
        Rational value;
        try {
            value = Rational::parse(lit);
        } catch (const std::exception& e) {
            throw ParseError(std::string("bad number literal: ") + e.what(), start);
        }
        return PolynomialSymbol::constant(n_, {value, Rational(0)});
    }

    std::string_view text_;
    std::size_t n_;
    std::size_t pos_ = 0;
};

}  // namespace

PolynomialSymbol parse_symbol(std::string_view text, std::size_t dimension) {
    if (dimension == 0) throw ParseError("dimension must be positive", 0);
    return Parser(text, dimension).run();
}

}  // namespace hypo
