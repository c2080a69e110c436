#include "kdiv/poly.hpp"

#include <cctype>

namespace kdiv {

namespace {

class Parser {
public:
    Parser(const std::string& text, int nvars) : text_(text), nvars_(nvars) {}

    Poly run() {
        skip_ws();
        Poly p = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        return p;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    bool accept(char c) {
        if (peek() == c) { ++pos_; skip_ws(); return true; }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) throw ParseError(std::string("expected ") + what, pos_);
    }

    Poly expr() {
        bool neg = accept('-');
        Poly p = term();
        if (neg) p = -p;
        for (;;) {
            if (accept('+')) p += term();
            else if (accept('-')) p -= term();
            else break;
        }
        return p;
    }

    Poly term() {
        Poly p = factor();
        while (accept('*')) p = p * factor();
        return p;
    }

    Poly factor() {
        skip_ws();
        char c = peek();
        if (c == 'z') return var();
        if (c == '(') {
            // A '(' opens either a complex coefficient "(a+bi)" or a
            // parenthesized subexpression; try the coefficient form and
            // backtrack on failure.
            std::size_t save = pos_;
            try {
                return complex_coeff();
            } catch (const ParseError&) {
                pos_ = save;
            }
            expect('(', "'('");
            Poly p = expr();
            expect(')', "')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Poly::constant(nvars_, GaussRat(rat()));
        throw ParseError("expected coefficient, variable, or '('", pos_);
    }

    Poly var() {
        expect('z', "variable");
        std::size_t at = pos_;
        long idx = integer();
        if (idx < 1 || idx > nvars_)
            throw ParseError("variable index exceeds nvars", at);
        skip_ws();
        long e = 1;
        if (accept('^')) e = integer();
        if (e < 0) throw ParseError("negative exponent", pos_);
        Exponents exps(nvars_, 0);
        exps[idx - 1] = static_cast<unsigned>(e);
        skip_ws();
        return Poly::monomial(nvars_, exps, GaussRat(1));
    }

    Poly complex_coeff() {
        expect('(', "'('");
        Rat re = rat();
        skip_ws();
        Rat im;
        if (accept('+')) im = rat();
        else if (accept('-')) im = -rat();
        else throw ParseError("expected '+' or '-' in complex coefficient", pos_);
        skip_ws();
        if (!accept('i')) throw ParseError("expected 'i'", pos_);
        expect(')', "')'");
        return Poly::constant(nvars_, GaussRat(re, im));
    }

    Rat rat() {
        long num = integer();
        skip_ws();
        if (accept('/')) {
            std::size_t at = pos_;
            long den = integer();
            if (den == 0) throw ParseError("zero denominator", at);
            Rat q(num, den);
            q.canonicalize();
            skip_ws();
            return q;
        }
        return Rat(num);
    }

    long integer() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected integer", pos_);
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1'000'000'000L) throw ParseError("integer literal too large", pos_);
            ++pos_;
        }
        return v;
    }

    const std::string& text_;
    int nvars_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text, int nvars) {
    if (nvars < 1) throw std::invalid_argument("parse_poly: nvars must be positive");
    return Parser(text, nvars).run();
}

}  // namespace kdiv
