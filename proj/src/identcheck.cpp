#include "kdiv/identcheck.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace kdiv {

namespace {

std::complex<double> frob_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a.array() * b.array().conjugate()).sum();
}

double phi_log_norm2(const HoloFamily& fam, const CPoint& z) {
    double n2 = fam.entries.eval(z).squaredNorm();
    if (n2 <= 0.0)
        throw std::domain_error("log|Phi|^2 undefined: Phi vanishes at the point");
    return std::log(n2);
}

CPoint shifted(const CPoint& z, int var, std::complex<double> dz) {
    CPoint out = z;
    out[var] += dz;
    return out;
}

// Holomorphic FD derivative d/dz_alpha of a real function: combines real and
// imaginary central steps, (d/dx - i d/dy)/2.
std::complex<double> fd_dz(const HoloFamily& fam, const CPoint& z, int a, double h) {
    double dx = (phi_log_norm2(fam, shifted(z, a, {h, 0})) -
                 phi_log_norm2(fam, shifted(z, a, {-h, 0}))) / (2 * h);
    double dy = (phi_log_norm2(fam, shifted(z, a, {0, h})) -
                 phi_log_norm2(fam, shifted(z, a, {0, -h}))) / (2 * h);
    return {dx / 2, -dy / 2};
}

// Mixed second derivative d_u d_v of log|Phi|^2 along real coordinate
// directions u, v (each is a complex unit step direction in one variable).
// Identical directions use the three-point second difference; the four-point
// cross stencil degenerates to an effective step of 2h there.
double fd_mixed(const HoloFamily& fam, const CPoint& z, int a,
                std::complex<double> da, int b, std::complex<double> db, double h) {
    if (a == b && da == db) {
        double p = phi_log_norm2(fam, shifted(z, a, h * da));
        double c = phi_log_norm2(fam, z);
        double m = phi_log_norm2(fam, shifted(z, a, -h * da));
        return (p - 2 * c + m) / (h * h);
    }
    double pp = phi_log_norm2(fam, shifted(shifted(z, a, h * da), b, h * db));
    double pm = phi_log_norm2(fam, shifted(shifted(z, a, h * da), b, -h * db));
    double mp = phi_log_norm2(fam, shifted(shifted(z, a, -h * da), b, h * db));
    double mm = phi_log_norm2(fam, shifted(shifted(z, a, -h * da), b, -h * db));
    return (pp - pm - mp + mm) / (4 * h * h);
}

}  // namespace

HoloFamily HoloFamily::make(int n, PolyMatrix entries) {
    if (entries.nvars() != n)
        throw std::invalid_argument("HoloFamily: nvars mismatch");
    if (entries.is_zero())
        throw std::invalid_argument("HoloFamily: identically zero family");
    return HoloFamily{n, std::move(entries)};
}

HoloFamily HoloFamily::from_section(const KoszulSection& sec) {
    PolyMatrix m(1, sec.r, sec.n);
    for (int i = 0; i < sec.r; ++i) m.at(0, i) = sec.g[i];
    return make(sec.n, std::move(m));
}

SffData make_sff_data(const HoloFamily& fam, const CPoint& z) {
    SffData out;
    out.z = z;
    Eigen::MatrixXcd phi = fam.entries.eval(z);
    double n2 = phi.squaredNorm();
    if (n2 <= 0.0) throw std::domain_error("SffData: Phi vanishes at the point");
    for (int a = 1; a <= fam.n; ++a) {
        Eigen::MatrixXcd ba = fam.entries.derivative(a).eval(z);
        out.b.push_back(ba);
        out.b_perp.push_back(ba - (frob_inner(ba, phi) / n2) * phi);
    }
    return out;
}

double grad_phi_check(const HoloFamily& fam, const CPoint& z, double step) {
    if (step <= 0.0 || step > 1e-2)
        throw std::invalid_argument("grad_phi_check: step outside (0, 1e-2]");
    Eigen::MatrixXcd phi = fam.entries.eval(z);
    double n2 = phi.squaredNorm();
    if (n2 <= 0.0) throw std::domain_error("grad_phi_check: Phi vanishes at the point");
    double worst = 0.0;
    for (int a = 1; a <= fam.n; ++a) {
        std::complex<double> fd = fd_dz(fam, z, a - 1, step);
        std::complex<double> an =
            frob_inner(fam.entries.derivative(a).eval(z), phi) / n2;
        worst = std::max(worst, std::abs(fd - an));
    }
    return worst;
}

Eigen::MatrixXcd log_norm2_hessian(const HoloFamily& fam, const CPoint& z) {
    Eigen::MatrixXcd phi = fam.entries.eval(z);
    double n2 = phi.squaredNorm();
    if (n2 <= 0.0) throw std::domain_error("log_norm2_hessian: Phi vanishes at the point");
    int n = fam.n;
    std::vector<Eigen::MatrixXcd> b(n);
    for (int a = 1; a <= n; ++a) b[a - 1] = fam.entries.derivative(a).eval(z);
    Eigen::MatrixXcd h(n, n);
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            std::complex<double> cross =
                frob_inner(b[a], phi) * std::conj(frob_inner(b[c], phi)) / n2;
            h(a, c) = (frob_inner(b[a], b[c]) - cross) / n2;
        }
    return h;
}

double hessian_phi_check(const HoloFamily& fam, const CPoint& z, double step) {
    Eigen::MatrixXcd analytic = log_norm2_hessian(fam, z);
    // Second analytic route through the projected derivatives.
    SffData sff = make_sff_data(fam, z);
    double n2 = fam.entries.eval(z).squaredNorm();
    int n = fam.n;
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            std::complex<double> gram = frob_inner(sff.b_perp[a], sff.b_perp[c]) / n2;
            if (std::abs(gram - analytic(a, c)) > 1e-8)
                throw std::runtime_error(
                    "hessian_phi_check: projected-derivative Gram form disagrees "
                    "with the closed-form Hessian");
        }
    const std::complex<double> one{1, 0}, im{0, 1};
    double worst = 0.0;
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            double xx = fd_mixed(fam, z, a, one, c, one, step);
            double xy = fd_mixed(fam, z, a, one, c, im, step);
            double yx = fd_mixed(fam, z, a, im, c, one, step);
            double yy = fd_mixed(fam, z, a, im, c, im, step);
            // d/dz_a d/dzbar_c = ((xx + yy) + i (xy - yx)) / 4
            std::complex<double> fd{(xx + yy) / 4, (xy - yx) / 4};
            worst = std::max(worst, std::abs(fd - analytic(a, c)));
        }
    return worst;
}

SffErrors koszul_sff_check(const KoszulSection& sec, int p, const CPoint& z,
                           std::uint64_t seed) {
    PointFrame frame = PointFrame::at(sec, z);
    if (frame.s_norm2 <= 0.0)
        throw std::domain_error("koszul_sff_check: point on the zero locus of s");
    int r = sec.r;
    Eigen::VectorXcd g(r);
    for (int i = 0; i < r; ++i) g(i) = frame.g_at[i];

    PolyMatrix bnd = boundary_matrix(sec, p);
    Eigen::MatrixXcd m_at = bnd.eval(z);
    double m_n2 = m_at.squaredNorm();

    auto cols = all_multi_indices(r, p);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> gauss(0.0, 1.0);

    SffErrors err{0.0, 0.0};
    for (int a = 1; a <= sec.n; ++a) {
        // B_s = component of dg orthogonal to g
        Eigen::VectorXcd dg(r);
        for (int i = 0; i < r; ++i) dg(i) = sec.g[i].derivative(a).eval(z);
        Eigen::VectorXcd bs = dg - (g.dot(dg) / frame.s_norm2) * g;
        // g.dot(dg) = sum conj(g_i) dg_i = <dg, g>
        Eigen::MatrixXcd da = bnd.derivative(a).eval(z);
        Eigen::MatrixXcd bphi =
            da - (frob_inner(da, m_at) / m_n2) * m_at;

        std::vector<std::complex<double>> bs_cov(r);
        for (int i = 0; i < r; ++i) bs_cov[i] = bs(i);

        // interleave: B_Phi xi vs B_s-contraction of xi, on the basis plus a
        // few random unit elements
        auto check_xi = [&](const Eigen::VectorXcd& coords) {
            NumExt xi(r, p);
            for (std::size_t j = 0; j < cols.size(); ++j)
                xi.add(cols[j], coords(static_cast<int>(j)));
            NumExt contracted = interior(bs_cov, xi);
            Eigen::VectorXcd lhs = bphi * coords;
            Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(lhs.size());
            for (const auto& [I, c] : contracted.coeffs())
                rhs(multi_index_rank(I)) = c;
            err.interleave = std::max(err.interleave, (lhs - rhs).cwiseAbs().maxCoeff());
        };
        for (std::size_t j = 0; j < cols.size(); ++j) {
            Eigen::VectorXcd e = Eigen::VectorXcd::Zero(static_cast<int>(cols.size()));
            e(static_cast<int>(j)) = 1.0;
            check_xi(e);
        }
        for (int t = 0; t < 4; ++t) {
            Eigen::VectorXcd v(static_cast<int>(cols.size()));
            for (int j = 0; j < v.size(); ++j)
                v(j) = std::complex<double>(gauss(rng), gauss(rng));
            v /= v.norm();
            check_xi(v);
        }

        double lhs_norm = bphi.squaredNorm();
        double rhs_norm = static_cast<double>(binom(r - 1, p - 1)) * bs.squaredNorm();
        err.norm = std::max(err.norm, std::abs(lhs_norm - rhs_norm) /
                                          std::max(1.0, bs.squaredNorm()));
    }
    return err;
}

RankBoundResult rank_bound_check(const KoszulSection& sec,
                                 const std::vector<CPoint>& points) {
    double sup_g = 0.0;
    for (const auto& z : points) {
        double s2 = 0.0;
        for (const Poly& gi : sec.g) s2 += std::norm(gi.eval(z));
        sup_g = std::max(sup_g, std::sqrt(s2));
    }
    int q_bound = std::min(sec.n, sec.r - 1);
    RankBoundResult out{std::numeric_limits<int>::min(), 0};
    HoloFamily fam = HoloFamily::from_section(sec);
    for (const auto& z : points) {
        double s2 = 0.0;
        for (const Poly& gi : sec.g) s2 += std::norm(gi.eval(z));
        if (std::sqrt(s2) < 1e-4 * sup_g) {
            ++out.skipped;
            continue;
        }
        Eigen::MatrixXcd h = log_norm2_hessian(fam, z);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
        double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
        int rank = 0;
        if (smax > 0.0)
            for (int i = 0; i < svd.singularValues().size(); ++i)
                if (svd.singularValues()(i) >= 1e-9 * smax) ++rank;
        out.worst_excess = std::max(out.worst_excess, rank - q_bound);
    }
    if (out.worst_excess == std::numeric_limits<int>::min()) out.worst_excess = 0;
    return out;
}

double hessian_contraction_check(const KoszulSection& sec, const CPoint& z,
                                 int n_arrays, std::uint64_t seed) {
    PointFrame frame = PointFrame::at(sec, z);
    if (frame.s_norm2 <= 0.0)
        throw std::domain_error("hessian_contraction_check: zero locus point");
    HoloFamily fam = HoloFamily::from_section(sec);
    Eigen::MatrixXcd h = log_norm2_hessian(fam, z);
    int n = sec.n, r = sec.r;
    Eigen::VectorXcd g(r);
    for (int i = 0; i < r; ++i) g(i) = frame.g_at[i];
    std::vector<Eigen::VectorXcd> bs(n);
    for (int a = 1; a <= n; ++a) {
        Eigen::VectorXcd dg(r);
        for (int i = 0; i < r; ++i) dg(i) = sec.g[i].derivative(a).eval(z);
        bs[a - 1] = dg - (g.dot(dg) / frame.s_norm2) * g;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < n_arrays; ++t) {
        int k = 1 + static_cast<int>(rng() % 3);
        Eigen::MatrixXcd v(n, k);
        for (int a = 0; a < n; ++a)
            for (int c = 0; c < k; ++c)
                v(a, c) = std::complex<double>(gauss(rng), gauss(rng));
        std::complex<double> lhs = 0.0;
        double rhs = 0.0;
        for (int c = 0; c < k; ++c) {
            // sum_{a,b} H_ab v_a conj(v_b)
            lhs += (v.col(c).transpose() * h * v.col(c).conjugate()).value();
            Eigen::VectorXcd bsv = Eigen::VectorXcd::Zero(r);
            for (int a = 0; a < n; ++a) bsv += v(a, c) * bs[a];
            rhs += bsv.squaredNorm() / frame.s_norm2;
        }
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, rhs));
    }
    return worst;
}

}  // namespace kdiv
