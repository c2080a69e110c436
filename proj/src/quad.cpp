#include "kdiv/quad.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace kdiv {

namespace {
constexpr double kPi = std::numbers::pi;
}

DomainSpec DomainSpec::unit_polydisc(int n) {
    DomainSpec d;
    d.center.assign(n, {0.0, 0.0});
    d.radii.assign(n, 1.0);
    return d;
}

void DomainSpec::validate() const {
    if (radii.empty() || center.size() != radii.size())
        throw std::invalid_argument("DomainSpec: center/radii length mismatch");
    for (double r : radii)
        if (!(r > 0.0)) throw std::invalid_argument("DomainSpec: radii must be positive");
}

PsiSpec PsiSpec::parse(const std::string& text, int n) {
    PsiSpec out;
    if (text.empty() || text == "0") {
        out.kind = Kind::zero;
        return out;
    }
    if (text.rfind("poly:", 0) == 0) {
        out.kind = Kind::poly_abs2;
        out.poly = parse_poly(text.substr(5), n);
        for (const auto& [e, c] : out.poly.terms())
            if (!c.is_real())
                throw std::invalid_argument("psi polynomial must have real coefficients");
        return out;
    }
    auto star = text.find('*');
    double c = 1.0;
    std::string tail = text;
    if (star != std::string::npos) {
        c = std::stod(text.substr(0, star));
        tail = text.substr(star + 1);
    }
    if (tail == "|z|^2") {
        out.kind = Kind::quad_norm;
        out.c = c;
        return out;
    }
    if (tail == "log(1+|z|^2)") {
        out.kind = Kind::log_norm;
        out.c = c;
        return out;
    }
    throw std::invalid_argument("unrecognized psi expression: " + text);
}

double PsiSpec::eval(const std::vector<std::complex<double>>& z) const {
    switch (kind) {
        case Kind::zero:
            return 0.0;
        case Kind::quad_norm: {
            double s = 0.0;
            for (const auto& v : z) s += std::norm(v);
            return c * s;
        }
        case Kind::log_norm: {
            double s = 0.0;
            for (const auto& v : z) s += std::norm(v);
            return c * std::log1p(s);
        }
        case Kind::poly_abs2: {
            std::vector<std::complex<double>> t(z.size());
            for (std::size_t i = 0; i < z.size(); ++i) t[i] = std::norm(z[i]);
            return poly.eval(t).real();
        }
    }
    return 0.0;
}

std::string PsiSpec::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::zero: return "0";
        case Kind::quad_norm: os << c << "*|z|^2"; return os.str();
        case Kind::log_norm: os << c << "*log(1+|z|^2)"; return os.str();
        case Kind::poly_abs2: return "poly:" + poly.to_string();
    }
    return "0";
}

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    // Newton iteration on P_n over [-1, 1], then mapped to [0, 1].
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double z1, pp;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            z1 = z;
            z = z1 - p1 / pp;
        } while (std::abs(z - z1) > 1e-15);
        nodes[i] = 0.5 * (1.0 - z);
        nodes[n - 1 - i] = 0.5 * (1.0 + z);
        weights[i] = 1.0 / ((1.0 - z * z) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

QuadratureGrid::QuadratureGrid(const DomainSpec& dom, int n_rad, int n_ang)
    : n_rad_(n_rad), n_ang_(n_ang), radii_(dom.radii) {
    dom.validate();
    if (n_rad < 2 || n_ang < 4)
        throw std::invalid_argument("QuadratureGrid: require n_rad >= 2, n_ang >= 4");
    std::vector<double> gl_nodes, gl_weights;
    gauss_legendre_01(n_rad, gl_nodes, gl_weights);
    int n = dom.dim();
    coord_nodes_.resize(n);
    coord_weights_.resize(n);
    for (int j = 0; j < n; ++j) {
        double rr = dom.radii[j];
        coord_nodes_[j].reserve(static_cast<std::size_t>(n_rad) * n_ang);
        coord_weights_[j].reserve(static_cast<std::size_t>(n_rad) * n_ang);
        for (int k = 0; k < n_rad; ++k) {
            double rho = rr * gl_nodes[k];
            double wr = rr * gl_weights[k] * rho;  // integrand carries rho drho
            for (int a = 0; a < n_ang; ++a) {
                double th = 2.0 * kPi * (a + 0.5) / n_ang;
                coord_nodes_[j].push_back(dom.center[j] +
                                          std::polar(rho, th));
                coord_weights_[j].push_back(wr * 2.0 * kPi / n_ang);
            }
        }
    }
    count_ = 1;
    for (int j = 0; j < n; ++j) count_ *= coord_nodes_[j].size();
}

void QuadratureGrid::node_at(std::size_t idx,
                             std::vector<std::complex<double>>& out) const {
    int n = dim();
    out.resize(n);
    for (int j = n - 1; j >= 0; --j) {
        std::size_t sz = coord_nodes_[j].size();
        out[j] = coord_nodes_[j][idx % sz];
        idx /= sz;
    }
}

double QuadratureGrid::weight_at(std::size_t idx) const {
    double w = 1.0;
    for (int j = dim() - 1; j >= 0; --j) {
        std::size_t sz = coord_weights_[j].size();
        w *= coord_weights_[j][idx % sz];
        idx /= sz;
    }
    return w;
}

double QuadratureGrid::volume() const {
    double v = 1.0;
    for (double r : radii_) v *= kPi * r * r;
    return v;
}

double QuadratureGrid::total_weight() const {
    double v = 1.0;
    for (const auto& ws : coord_weights_) {
        double s = 0.0;
        for (double w : ws) s += w;
        v *= s;
    }
    return v;
}

QuadratureGrid polydisc_grid(const DomainSpec& dom, int n_rad, int n_ang) {
    return QuadratureGrid(dom, n_rad, n_ang);
}

namespace {

// Fixed pairwise reduction: sums f(i) over [lo, lo+len) splitting in half
// down to sequential blocks. The tree shape depends only on the range, so
// results are bit-stable at fixed resolution.
template <class F>
double pairwise_sum(std::size_t lo, std::size_t len, const F& f) {
    if (len <= 256) {
        double acc = 0.0;
        for (std::size_t i = 0; i < len; ++i) acc += f(lo + i);
        return acc;
    }
    std::size_t half = len / 2;
    return pairwise_sum(lo, half, f) + pairwise_sum(lo + half, len - half, f);
}

}  // namespace

double weighted_norm2(const std::vector<NumPoly>& components, const WeightFn& w,
                      const QuadratureGrid& grid) {
    std::vector<std::complex<double>> z;
    auto term = [&](std::size_t i) {
        grid.node_at(i, z);
        double wv = w(z);
        if (!std::isfinite(wv)) {
            std::ostringstream os;
            os << "non-finite weight at node (";
            for (std::size_t j = 0; j < z.size(); ++j) {
                if (j) os << ", ";
                os << z[j].real() << (z[j].imag() < 0 ? "-" : "+")
                   << std::abs(z[j].imag()) << "i";
            }
            os << ")";
            throw NonFiniteWeight(os.str());
        }
        double f2 = 0.0;
        for (const NumPoly& c : components) f2 += std::norm(c.eval(z));
        return grid.weight_at(i) * f2 * wv;
    };
    return pairwise_sum(0, grid.size(), term);
}

double weighted_norm2(const std::vector<Poly>& components, const WeightFn& w,
                      const QuadratureGrid& grid) {
    std::vector<NumPoly> nps;
    nps.reserve(components.size());
    for (const Poly& p : components) nps.push_back(NumPoly::from(p));
    return weighted_norm2(nps, w, grid);
}

SkodaWeights skoda_weights(const KoszulSection& sec, const WeightSpec& ws) {
    bool all_zero = true;
    for (const Poly& gi : sec.g) all_zero = all_zero && gi.is_zero();
    if (all_zero) throw std::invalid_argument("skoda_weights: g identically zero");
    std::vector<NumPoly> gens;
    gens.reserve(sec.g.size());
    for (const Poly& gi : sec.g) gens.push_back(NumPoly::from(gi));
    double e_num = ws.q * (1.0 + ws.epsilon);
    double e_den = ws.q + ws.q * ws.epsilon + 1.0;
    return {power_weight(gens, e_num, ws.psi), power_weight(gens, e_den, ws.psi)};
}

WeightFn power_weight(std::vector<NumPoly> gens, double exponent, PsiSpec psi) {
    return [gens = std::move(gens), exponent, psi =
                std::move(psi)](const std::vector<std::complex<double>>& z) {
        double s2 = 0.0;
        for (const NumPoly& g : gens) s2 += std::norm(g.eval(z));
        double base = (exponent == 0.0) ? 1.0 : std::pow(s2, -exponent);
        return base * std::exp(-psi.eval(z));
    };
}

RefineResult refine_and_estimate(const std::vector<NumPoly>& components,
                                 const WeightFn& w, const DomainSpec& dom,
                                 int n_rad, int n_ang) {
    int half_rad = std::max(2, n_rad / 2);
    int half_ang = std::max(4, n_ang / 2);
    RefineResult out{};
    out.values[0] = weighted_norm2(components, w, polydisc_grid(dom, half_rad, half_ang));
    out.values[1] = weighted_norm2(components, w, polydisc_grid(dom, n_rad, n_ang));
    out.values[2] =
        weighted_norm2(components, w, polydisc_grid(dom, 2 * n_rad, 2 * n_ang));
    auto growth = [](double from, double to) {
        return (to - from) / std::max(std::abs(from), 1e-300);
    };
    out.diverging = growth(out.values[0], out.values[1]) > 0.10 &&
                    growth(out.values[1], out.values[2]) > 0.10;
    out.rel_change = std::abs(out.values[2] - out.values[1]) /
                     std::max(std::abs(out.values[2]), 1e-300);
    out.value = out.values[2];
    return out;
}

}  // namespace kdiv
