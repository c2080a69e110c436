#include "kdiv/trace.hpp"

#include <random>
#include <stdexcept>

namespace kdiv {

LinearMap LinearMap::make(Eigen::MatrixXcd m) {
    LinearMap d;
    d.dim_domain = static_cast<int>(m.cols());
    d.dim_codomain = static_cast<int>(m.rows());
    d.mat = std::move(m);
    return d;
}

BilinearMap BilinearMap::contraction(int dim_w, int dim_u) {
    if (dim_w < 1 || dim_u < 1)
        throw std::invalid_argument("contraction: dimensions must be positive");
    BilinearMap b;
    b.kind_ = Kind::contraction;
    b.sub_w_ = dim_w;
    b.sub_u_ = dim_u;
    b.dim_u_ = dim_u;
    b.dim_v_ = dim_w * dim_u;
    b.dim_w_ = dim_w;
    return b;
}

BilinearMap BilinearMap::interior(int m, int p) {
    if (m < 1 || p < 1 || p > m)
        throw std::invalid_argument("interior: require 1 <= p <= m");
    BilinearMap b;
    b.kind_ = Kind::interior;
    b.base_m_ = m;
    b.ext_p_ = p;
    b.dim_u_ = static_cast<int>(binom(m, p));
    b.dim_v_ = m;
    b.dim_w_ = static_cast<int>(binom(m, p - 1));
    return b;
}

BilinearMap BilinearMap::generic(std::vector<Eigen::MatrixXcd> tensor) {
    if (tensor.empty()) throw std::invalid_argument("generic: empty tensor");
    BilinearMap b;
    b.kind_ = Kind::generic;
    b.dim_w_ = static_cast<int>(tensor.size());
    b.dim_v_ = static_cast<int>(tensor[0].rows());
    b.dim_u_ = static_cast<int>(tensor[0].cols());
    for (const auto& t : tensor)
        if (t.rows() != b.dim_v_ || t.cols() != b.dim_u_)
            throw std::invalid_argument("generic: ragged tensor slices");
    b.tensor_ = std::move(tensor);
    return b;
}

Eigen::VectorXcd BilinearMap::apply(const Eigen::VectorXcd& v,
                                    const Eigen::VectorXcd& alpha) const {
    if (v.size() != dim_v_ || alpha.size() != dim_u_)
        throw std::invalid_argument("BilinearMap::apply: shape mismatch");
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim_w_);
    switch (kind_) {
        case Kind::contraction:
            // rho(w (x) u, alpha) = alpha(u) w with V index (a,j) = a*dim_u + j
            for (int a = 0; a < sub_w_; ++a)
                for (int j = 0; j < sub_u_; ++j)
                    out(a) += v(a * sub_u_ + j) * alpha(j);
            return out;
        case Kind::interior: {
            auto idx_p = all_multi_indices(base_m_, ext_p_);
            for (std::size_t jj = 0; jj < idx_p.size(); ++jj) {
                const MultiIndex& idx = idx_p[jj];
                for (int a = 0; a < idx.size(); ++a) {
                    std::complex<double> c = v(idx[a] - 1) * alpha(static_cast<int>(jj));
                    if (a % 2 == 1) c = -c;
                    out(multi_index_rank(idx.erased(idx[a]))) += c;
                }
            }
            return out;
        }
        case Kind::generic:
            for (int w = 0; w < dim_w_; ++w)
                out(w) = v.transpose() * tensor_[w] * alpha;
            return out;
    }
    return out;
}

double BilinearMap::norm(std::uint64_t seed) const {
    if (kind_ != Kind::generic) return 1.0;
    // alternating maximization of |rho(v, alpha)| over unit v, alpha
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_unit = [&](int n) {
        Eigen::VectorXcd v(n);
        for (int i = 0; i < n; ++i) v(i) = std::complex<double>(gauss(rng), gauss(rng));
        return (v / v.norm()).eval();
    };
    double best = 0.0;
    for (int restart = 0; restart < 3; ++restart) {
        Eigen::VectorXcd alpha = random_unit(dim_u_);
        double prev = 0.0;
        for (int iter = 0; iter < 200; ++iter) {
            // fix alpha: rho(v, alpha) = R v with R(w, v_idx)
            Eigen::MatrixXcd r_alpha(dim_w_, dim_v_);
            for (int w = 0; w < dim_w_; ++w)
                r_alpha.row(w) = (tensor_[w] * alpha).transpose();
            Eigen::JacobiSVD<Eigen::MatrixXcd> sv(r_alpha, Eigen::ComputeThinV);
            Eigen::VectorXcd v = sv.matrixV().col(0);
            // fix v: rho(v, alpha) = S alpha
            Eigen::MatrixXcd s_v(dim_w_, dim_u_);
            for (int w = 0; w < dim_w_; ++w)
                s_v.row(w) = v.transpose() * tensor_[w];
            Eigen::JacobiSVD<Eigen::MatrixXcd> sw(s_v, Eigen::ComputeThinV);
            alpha = sw.matrixV().col(0);
            double cur = sw.singularValues()(0);
            if (std::abs(cur - prev) <= 1e-6 * std::max(cur, 1e-30)) {
                prev = cur;
                break;
            }
            prev = cur;
        }
        best = std::max(best, prev);
    }
    return best;
}

Eigen::VectorXcd gen_trace(const LinearMap& d, const BilinearMap& rho) {
    if (d.dim_domain != rho.dim_u() || d.dim_codomain != rho.dim_v())
        throw std::invalid_argument("gen_trace: map incompatible with pairing");
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(rho.dim_w());
    Eigen::VectorXcd ei = Eigen::VectorXcd::Zero(rho.dim_u());
    for (int i = 0; i < rho.dim_u(); ++i) {
        ei(i) = 1.0;
        out += rho.apply(d.mat.col(i), ei);
        ei(i) = 0.0;
    }
    return out;
}

Eigen::VectorXcd gen_trace_in_basis(const LinearMap& d, const BilinearMap& rho,
                                    const Eigen::MatrixXcd& q) {
    if (q.rows() != rho.dim_u() || q.cols() != rho.dim_u())
        throw std::invalid_argument("gen_trace_in_basis: basis shape mismatch");
    Eigen::MatrixXcd qinv = q.inverse();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(rho.dim_w());
    for (int i = 0; i < rho.dim_u(); ++i) {
        // u_i = q col i, dual functional u^i has components row i of q^{-1}
        Eigen::VectorXcd du = d.mat * q.col(i);
        Eigen::VectorXcd alpha = qinv.row(i).transpose();
        out += rho.apply(du, alpha);
    }
    return out;
}

TraceBound trace_bound_check(const LinearMap& d, const BilinearMap& rho) {
    Eigen::VectorXcd tr = gen_trace(d, rho);
    double lhs = tr.norm();
    int rank = 0;
    if (d.mat.size() > 0) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(d.mat);
        double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
        for (int i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) >= 1e-10 * smax && smax > 0.0) ++rank;
    }
    double rhs = std::sqrt(static_cast<double>(rank)) * rho.norm() * d.mat.norm();
    if (lhs > rhs * (1.0 + 1e-9))
        throw std::runtime_error("trace bound violated: |Tr| > sqrt(rank)|rho||D|");
    return {lhs, rhs, rank};
}

}  // namespace kdiv
