#include "kdiv/koszul.hpp"

#include <cmath>

namespace kdiv {

KoszulSection KoszulSection::make(int n, std::vector<Poly> g) {
    if (g.empty()) throw std::invalid_argument("KoszulSection: empty generator tuple");
    for (const Poly& gi : g)
        if (gi.nvars() != n)
            throw std::invalid_argument("KoszulSection: generator nvars mismatch");
    KoszulSection sec;
    sec.n = n;
    sec.r = static_cast<int>(g.size());
    sec.g = std::move(g);
    return sec;
}

PointFrame PointFrame::at(const KoszulSection& sec,
                          const std::vector<std::complex<double>>& z) {
    PointFrame f;
    f.z = z;
    f.g_at.reserve(sec.r);
    double acc = 0.0;
    for (const Poly& gi : sec.g) {
        std::complex<double> v = gi.eval(z);
        acc += std::norm(v);
        f.g_at.push_back(v);
    }
    f.s_norm2 = acc;
    return f;
}

PointFrame PointFrame::from_values(std::vector<std::complex<double>> z,
                                   std::vector<std::complex<double>> g_at) {
    PointFrame f;
    f.z = std::move(z);
    f.g_at = std::move(g_at);
    double acc = 0.0;
    for (const auto& v : f.g_at) acc += std::norm(v);
    f.s_norm2 = acc;
    return f;
}

PolyMatrix boundary_matrix(const KoszulSection& sec, int p) {
    if (p < 1 || p > sec.r)
        throw std::invalid_argument("boundary_matrix: p out of range 1..r");
    auto rows = all_multi_indices(sec.r, p - 1);
    auto cols = all_multi_indices(sec.r, p);
    PolyMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()), sec.n);
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const MultiIndex& J = cols[j];
        for (int a = 0; a < J.size(); ++a) {
            MultiIndex I = J.erased(J[a]);
            int i = multi_index_rank(I);
            Poly entry = sec.g[J[a] - 1];
            if (a % 2 == 1) entry = -entry;
            m.at(i, static_cast<int>(j)) = m.at(i, static_cast<int>(j)) + entry;
        }
    }
    return m;
}

bool is_cycle(const KoszulSection& sec, int p, const PolyExt& f) {
    if (f.ambient() != sec.r || f.degree() != p - 1)
        throw std::invalid_argument("is_cycle: element shape mismatch");
    return interior(sec.g, f).is_zero();
}

KoszulPair koszul_pair_at(const KoszulSection& sec, int p,
                          const std::vector<std::complex<double>>& z) {
    if (p < 0 || p > sec.r)
        throw std::invalid_argument("koszul_pair_at: degree out of range 0..r");
    int mid = static_cast<int>(binom(sec.r, p));
    KoszulPair pair;
    pair.phi = (p < sec.r) ? boundary_matrix(sec, p + 1).eval(z)
                           : Eigen::MatrixXcd(mid, 0);
    pair.psi = (p >= 1) ? boundary_matrix(sec, p).eval(z)
                        : Eigen::MatrixXcd(0, mid);
    return pair;
}

double exactness_score(const Eigen::MatrixXcd& phi, const Eigen::MatrixXcd& psi) {
    if (psi.cols() != phi.rows())
        throw std::invalid_argument("exactness_score: shapes do not compose");
    Eigen::MatrixXcd comp = psi * phi;
    if (comp.size() > 0 && comp.cwiseAbs().maxCoeff() > 1e-8)
        throw std::invalid_argument("exactness_score: Psi*Phi != 0, not a complex");
    Eigen::MatrixXcd m = psi.adjoint() * psi + phi * phi.adjoint();
    m = 0.5 * (m + m.adjoint().eval());  // suppress round-off asymmetry
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

double exactness_score_single(const Eigen::MatrixXcd& phi) {
    if (phi.size() == 0 || phi.cwiseAbs().maxCoeff() == 0.0)
        throw std::invalid_argument("exactness_score_single: zero matrix");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(phi, Eigen::ComputeThinU);
    double smax = svd.singularValues()(0);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-10 * smax) ++rank;
    Eigen::MatrixXcd u = svd.matrixU().leftCols(rank);
    int m = static_cast<int>(phi.rows());
    Eigen::MatrixXcd p_perp =
        Eigen::MatrixXcd::Identity(m, m) - u * u.adjoint();
    Eigen::MatrixXcd mat = p_perp + phi * phi.adjoint();
    mat = 0.5 * (mat + mat.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

NumExt pointwise_lift(const PointFrame& frame, int p, const NumExt& f) {
    int r = static_cast<int>(frame.g_at.size());
    if (f.ambient() != r || f.degree() != p - 1)
        throw std::invalid_argument("pointwise_lift: element shape mismatch");
    if (frame.s_norm2 <= 0.0)
        throw std::domain_error("pointwise_lift: point on the zero locus of s");
    double fnorm = std::sqrt(ext_norm2(f));
    double defect = std::sqrt(ext_norm2(interior(frame.g_at, f)));
    if (defect > 1e-9 * std::max(fnorm, 1e-300))
        throw std::invalid_argument("pointwise_lift: f is not a cycle at the point");
    NumExt theta(r, 1);
    for (int i = 0; i < r; ++i)
        theta.add(MultiIndex({i + 1}, r), std::conj(frame.g_at[i]));
    NumExt top = wedge(theta, f);
    NumExt h(r, p);
    for (const auto& [I, c] : top.coeffs()) h.add(I, c / frame.s_norm2);
    return h;
}

HomNorm2 hom_norm2_check(const PointFrame& frame, int p) {
    int r = static_cast<int>(frame.g_at.size());
    if (p < 1 || p > r)
        throw std::invalid_argument("hom_norm2_check: p out of range 1..r");
    double acc = 0.0;
    for (const MultiIndex& I : all_multi_indices(r, p)) {
        NumExt e(r, p);
        e.add(I, {1.0, 0.0});
        acc += ext_norm2(interior(frame.g_at, e));
    }
    // each index sits in binom(r-1, p-1) of the increasing p-index sets, so
    // the squared homomorphism norm of the contraction is that multiple of
    // |s|^2
    double expected = static_cast<double>(binom(r - 1, p - 1)) * frame.s_norm2;
    return {acc, expected};
}

}  // namespace kdiv
