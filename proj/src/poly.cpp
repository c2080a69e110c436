#include "kdiv/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace kdiv {

bool GrlexDesc::operator()(const Exponents& a, const Exponents& b) const {
    unsigned da = std::accumulate(a.begin(), a.end(), 0u);
    unsigned db = std::accumulate(b.begin(), b.end(), 0u);
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Poly Poly::constant(int nvars, GaussRat c) {
    Poly p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

Poly Poly::variable(int nvars, int var) {
    if (var < 1 || var > nvars)
        throw std::invalid_argument("variable index out of range");
    Exponents e(nvars, 0);
    e[var - 1] = 1;
    return monomial(nvars, e, GaussRat(1));
}

Poly Poly::monomial(int nvars, Exponents exps, GaussRat c) {
    if (static_cast<int>(exps.size()) != nvars)
        throw std::invalid_argument("exponent vector length mismatch");
    Poly p(nvars);
    p.add_term(exps, c);
    return p;
}

void Poly::add_term(const Exponents& e, const GaussRat& c) {
    if (static_cast<int>(e.size()) != nvars_)
        throw std::invalid_argument("exponent vector length mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int Poly::total_degree() const {
    if (terms_.empty()) return -1;
    const Exponents& lead = terms_.begin()->first;
    return static_cast<int>(std::accumulate(lead.begin(), lead.end(), 0u));
}

void Poly::check_same_ring(const Poly& other) const {
    if (nvars_ != other.nvars_)
        throw std::invalid_argument("polynomials over different variable counts");
}

Poly operator+(const Poly& a, const Poly& b) {
    a.check_same_ring(b);
    Poly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    a.check_same_ring(b);
    Poly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
}

Poly operator-(const Poly& a) {
    Poly r(a.nvars_);
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_same_ring(b);
    Poly r(a.nvars_);
    Exponents e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Poly operator*(const GaussRat& c, const Poly& a) {
    Poly r(a.nvars());
    if (c.is_zero()) return r;
    for (const auto& [e, ca] : a.terms()) r.add_term(e, c * ca);
    return r;
}

std::complex<double> Poly::eval(const std::vector<std::complex<double>>& point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw std::invalid_argument("eval: point dimension mismatch");
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [e, c] : terms_) {
        std::complex<double> m = c.to_complex();
        for (int i = 0; i < nvars_; ++i) {
            std::complex<double> zp{1.0, 0.0};
            std::complex<double> base = point[i];
            unsigned k = e[i];
            while (k) {  // square-and-multiply keeps the evaluation order fixed
                if (k & 1u) zp *= base;
                base *= base;
                k >>= 1u;
            }
            m *= zp;
        }
        acc += m;
    }
    return acc;
}

Poly Poly::derivative(int var) const {
    if (var < 1 || var > nvars_)
        throw std::invalid_argument("derivative: variable index out of range");
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
        unsigned k = e[var - 1];
        if (k == 0) continue;
        Exponents e2 = e;
        e2[var - 1] = k - 1;
        r.add_term(e2, GaussRat(Rat(static_cast<long>(k))) * c);
    }
    return r;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
    check_same_ring(d);
    if (d.is_zero()) return std::nullopt;
    Poly q(nvars_);
    Poly r = *this;
    const auto& [de, dc] = *d.terms_.begin();
    while (!r.is_zero()) {
        const auto& [re, rc] = *r.terms_.begin();
        Exponents qe(nvars_);
        for (int i = 0; i < nvars_; ++i) {
            if (re[i] < de[i]) return std::nullopt;
            qe[i] = re[i] - de[i];
        }
        Poly t = Poly::monomial(nvars_, qe, rc / dc);
        q += t;
        r -= t * d;
    }
    return q;
}

namespace {

void append_rat(std::ostream& os, const Rat& q) {
    os << q.get_num().get_str();
    if (q.get_den() != 1) os << "/" << q.get_den().get_str();
}

void append_coeff(std::ostream& os, const GaussRat& c, bool with_mono) {
    if (c.is_real()) {
        if (with_mono && c.re() == 1) return;
        append_rat(os, c.re());
        if (with_mono) os << "*";
        return;
    }
    os << "(";
    append_rat(os, c.re());
    if (c.im() > 0) {
        os << "+";
        append_rat(os, c.im());
    } else {
        os << "-";
        append_rat(os, -c.im());
    }
    os << "i)";
    if (with_mono) os << "*";
}

}  // namespace

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        bool has_mono = std::any_of(e.begin(), e.end(), [](unsigned k) { return k > 0; });
        GaussRat cc = c;
        // the grammar has no signed rat, so a negative real part moves into
        // the term separator
        bool negate = cc.re() < 0;
        if (first) {
            if (negate) {
                os << "-";
                cc = -cc;
            }
        } else {
            if (negate) {
                os << " - ";
                cc = -cc;
            } else {
                os << " + ";
            }
        }
        append_coeff(os, cc, has_mono);
        if (has_mono) {
            bool first_var = true;
            for (int i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                if (!first_var) os << "*";
                os << "z" << (i + 1);
                if (e[i] > 1) os << "^" << e[i];
                first_var = false;
            }
        }
        first = false;
    }
    return os.str();
}

NumPoly NumPoly::from(const Poly& p) {
    NumPoly np;
    np.nvars = p.nvars();
    np.terms.reserve(p.term_count());
    for (const auto& [e, c] : p.terms()) np.terms.emplace_back(e, c.to_complex());
    return np;
}

std::complex<double> NumPoly::eval(const std::vector<std::complex<double>>& point) const {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [e, c] : terms) {
        std::complex<double> m = c;
        for (int i = 0; i < nvars; ++i) {
            std::complex<double> zp{1.0, 0.0};
            std::complex<double> base = point[i];
            unsigned k = e[i];
            while (k) {
                if (k & 1u) zp *= base;
                base *= base;
                k >>= 1u;
            }
            m *= zp;
        }
        acc += m;
    }
    return acc;
}

int NumPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms) {
        int t = static_cast<int>(std::accumulate(e.begin(), e.end(), 0u));
        d = std::max(d, t);
    }
    return d;
}

Rat rationalize(double x, double rel_tol, long long max_den) {
    if (x == 0.0) return Rat(0);
    bool neg = x < 0;
    double v = neg ? -x : x;
    // continued fraction convergents p/q
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int iter = 0; iter < 64; ++iter) {
        double a_f = std::floor(frac);
        long long a = static_cast<long long>(a_f);
        long long p2 = a * p1 + p0;
        long long q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double approx = static_cast<double>(p1) / static_cast<double>(q1);
        if (std::abs(approx - v) <= rel_tol * std::max(1.0, v)) break;
        double rem = frac - a_f;
        if (rem < 1e-18) break;
        frac = 1.0 / rem;
    }
    Rat q(static_cast<long>(neg ? -p1 : p1), static_cast<long>(q1));
    q.canonicalize();
    return q;
}

}  // namespace kdiv
