#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace kdiv {

// Exact rational scalar. mpq_class keeps values canonical: lowest terms,
// positive denominator.
using Rat = mpq_class;

inline Rat rat_of(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline double to_double(const Rat& q) { return q.get_d(); }

// Gaussian rational a + b*i. The coefficient field for all exact polynomial
// arithmetic; every operation below is exact.
class GaussRat {
public:
    GaussRat() : re_(0), im_(0) {}
    GaussRat(Rat re, Rat im = Rat(0)) : re_(std::move(re)), im_(std::move(im)) {}
    GaussRat(long re) : re_(re), im_(0) {}

    const Rat& re() const { return re_; }
    const Rat& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussRat conj() const { return GaussRat(re_, -im_); }

    // |z|^2 as an exact rational.
    Rat norm2() const { return re_ * re_ + im_ * im_; }

    std::complex<double> to_complex() const {
        return {re_.get_d(), im_.get_d()};
    }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend GaussRat operator-(const GaussRat& a) { return GaussRat(-a.re_, -a.im_); }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re_ * b.re_ - a.im_ * b.im_,
                        a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        Rat n2 = b.norm2();
        if (n2 == 0) throw std::domain_error("division by zero GaussRat");
        GaussRat num = a * b.conj();
        return GaussRat(num.re_ / n2, num.im_ / n2);
    }
    GaussRat& operator+=(const GaussRat& b) { *this = *this + b; return *this; }
    GaussRat& operator-=(const GaussRat& b) { *this = *this - b; return *this; }
    GaussRat& operator*=(const GaussRat& b) { *this = *this * b; return *this; }

    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

private:
    Rat re_, im_;
};

// Best rational approximation of x by continued fractions. Used only when
// reporting float-optimized coefficients as exact-looking values; never on
// the residual path.
Rat rationalize(double x, double rel_tol = 1e-12, long long max_den = 1'000'000'000'000LL);

inline GaussRat rationalize(std::complex<double> z, double rel_tol = 1e-12) {
    return GaussRat(rationalize(z.real(), rel_tol), rationalize(z.imag(), rel_tol));
}

}  // namespace kdiv
