#pragma once

// Exterior algebra on increasing multi-indices, in two flavors: coefficients
// can be exact polynomials or complex floats. Basis convention: e_I with I
// strictly increasing carries coefficient +1 under wedge of its factors in
// increasing order, and the interior product contracts the first slot,
//   s . (e_{i1} ^ ... ^ e_{ip}) = sum_a (-1)^{a-1} s_{i_a} e_{I \ i_a}.

#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "kdiv/multi_index.hpp"
#include "kdiv/poly.hpp"

namespace kdiv {

namespace detail {
inline bool scalar_is_zero(const Poly& p) { return p.is_zero(); }
inline bool scalar_is_zero(const std::complex<double>& c) { return c == std::complex<double>{0.0, 0.0}; }
}  // namespace detail

template <class Scalar>
class ExtElem {
public:
    ExtElem(int r, int degree) : r_(r), degree_(degree) {
        if (r < 0 || degree < 0 || degree > r)
            throw std::invalid_argument("ExtElem: degree out of range 0..r");
    }

    int ambient() const { return r_; }
    int degree() const { return degree_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<MultiIndex, Scalar>& coeffs() const { return coeffs_; }

    void add(const MultiIndex& I, const Scalar& c) {
        if (I.ambient() != r_ || I.size() != degree_)
            throw std::invalid_argument("ExtElem: key shape mismatch");
        if (detail::scalar_is_zero(c)) return;
        auto it = coeffs_.find(I);
        if (it == coeffs_.end()) {
            coeffs_.emplace(I, c);
        } else {
            it->second += c;
            if (detail::scalar_is_zero(it->second)) coeffs_.erase(it);
        }
    }

    Scalar coeff(const MultiIndex& I, const Scalar& zero) const {
        auto it = coeffs_.find(I);
        return it == coeffs_.end() ? zero : it->second;
    }

    friend ExtElem operator+(const ExtElem& a, const ExtElem& b) {
        a.check_compatible(b);
        ExtElem out = a;
        for (const auto& [I, c] : b.coeffs_) out.add(I, c);
        return out;
    }
    friend ExtElem operator-(const ExtElem& a, const ExtElem& b) {
        a.check_compatible(b);
        ExtElem out = a;
        for (const auto& [I, c] : b.coeffs_) out.add(I, -c);
        return out;
    }

    friend bool operator==(const ExtElem& a, const ExtElem& b) {
        return a.r_ == b.r_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
    }

private:
    void check_compatible(const ExtElem& b) const {
        if (r_ != b.r_ || degree_ != b.degree_)
            throw std::invalid_argument("ExtElem: rank/degree mismatch");
    }

    int r_;
    int degree_;
    std::map<MultiIndex, Scalar> coeffs_;
};

using PolyExt = ExtElem<Poly>;
using NumExt = ExtElem<std::complex<double>>;

// Sign of merging two disjoint increasing index sets: the parity of the
// permutation sorting (I, J) into increasing order, or 0 when they intersect.
// On success *merged holds the union.
int merge_sign(const MultiIndex& I, const MultiIndex& J, MultiIndex* merged);

template <class Scalar>
ExtElem<Scalar> wedge(const ExtElem<Scalar>& a, const ExtElem<Scalar>& b) {
    if (a.ambient() != b.ambient())
        throw std::invalid_argument("wedge: ambient rank mismatch");
    int r = a.ambient();
    int deg = a.degree() + b.degree();
    if (deg > r) return ExtElem<Scalar>(r, 0);  // zero element
    ExtElem<Scalar> out(r, deg);
    for (const auto& [I, ca] : a.coeffs()) {
        for (const auto& [J, cb] : b.coeffs()) {
            MultiIndex merged;
            int sgn = merge_sign(I, J, &merged);
            if (sgn == 0) continue;
            Scalar c = ca * cb;
            if (sgn < 0) c = -c;
            out.add(merged, c);
        }
    }
    return out;
}

// Interior product by a covector of r scalars. Degree-0 input contracts to
// the distinguished zero element (of degree 0), making the bottom boundary
// map total.
template <class Scalar>
ExtElem<Scalar> interior(const std::vector<Scalar>& s, const ExtElem<Scalar>& xi) {
    int r = xi.ambient();
    if (static_cast<int>(s.size()) != r)
        throw std::invalid_argument("interior: covector length mismatch");
    if (xi.degree() == 0) return ExtElem<Scalar>(r, 0);
    ExtElem<Scalar> out(r, xi.degree() - 1);
    for (const auto& [I, c] : xi.coeffs()) {
        for (int a = 0; a < I.size(); ++a) {
            Scalar v = s[I[a] - 1] * c;
            if (a % 2 == 1) v = -v;
            out.add(I.erased(I[a]), v);
        }
    }
    return out;
}

// Sum of squared moduli over increasing multi-indices (numeric flavor only).
double ext_norm2(const NumExt& xi);

// Entrywise evaluation of a symbolic element at a point.
NumExt eval_ext(const PolyExt& xi, const std::vector<std::complex<double>>& point);

}  // namespace kdiv
