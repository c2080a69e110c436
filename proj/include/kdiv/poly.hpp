#pragma once

// Exact multivariate polynomials over Gaussian rationals.
//
// A polynomial in variables z1..zn is a map from exponent vectors to nonzero
// GaussRat coefficients, kept in descending graded-lexicographic order so
// equal polynomials always have identical representations and begin() is the
// leading term.

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kdiv/rational.hpp"

namespace kdiv {

using Exponents = std::vector<unsigned>;

// Descending graded lex: higher total degree first, ties broken by lex on the
// exponent vector (larger first).
struct GrlexDesc {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

class Poly {
public:
    using TermMap = std::map<Exponents, GaussRat, GrlexDesc>;

    explicit Poly(int nvars) : nvars_(nvars) {
        if (nvars < 1) throw std::invalid_argument("Poly: nvars must be positive");
    }

    static Poly zero(int nvars) { return Poly(nvars); }
    static Poly constant(int nvars, GaussRat c);
    // The monomial z_{var} (1-based).
    static Poly variable(int nvars, int var);
    static Poly monomial(int nvars, Exponents exps, GaussRat c);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    int total_degree() const;  // -1 for the zero polynomial

    void add_term(const Exponents& e, const GaussRat& c);

    std::complex<double> eval(const std::vector<std::complex<double>>& point) const;

    // Exact partial derivative with respect to z_{var} (1-based).
    Poly derivative(int var) const;

    // Exact single-divisor division in graded-lex order: returns the quotient
    // when *this = q * d, nullopt when d does not divide exactly.
    std::optional<Poly> divide_exact(const Poly& d) const;

    std::string to_string() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const GaussRat& c, const Poly& a);
    Poly& operator+=(const Poly& b) { *this = *this + b; return *this; }
    Poly& operator-=(const Poly& b) { *this = *this - b; return *this; }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    void check_same_ring(const Poly& other) const;

    int nvars_;
    TermMap terms_;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " at byte " + std::to_string(offset)),
          offset(offset) {}
    std::size_t offset;
};

// Parser for the ASCII polynomial grammar:
//   expr   := '-'? term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := coeff | var | '(' expr ')'
//   var    := 'z' INT ('^' INT)?
//   coeff  := '(' rat ('+'|'-') rat 'i' ')' | rat
//   rat    := INT ('/' INT)?
// Whitespace is insignificant; variables are z1..zn, 1-based.
Poly parse_poly(const std::string& text, int nvars);

// Lightweight numeric polynomial: complex float coefficients on the same
// monomial carrier. Produced from exact Polys or from float coefficient
// vectors in the least-norm solver; used by quadrature.
struct NumPoly {
    int nvars = 0;
    std::vector<std::pair<Exponents, std::complex<double>>> terms;  // grlex-desc order

    static NumPoly from(const Poly& p);
    std::complex<double> eval(const std::vector<std::complex<double>>& point) const;
    int total_degree() const;
};

}  // namespace kdiv
