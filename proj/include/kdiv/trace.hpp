#pragma once

// Generalized trace of a linear map against a bilinear pairing, and the
// rank-weighted Cauchy-Schwarz bound on it. Only two pairings are used in
// anger: the natural contraction on W (x) U and the interior product on
// exterior powers; a generic dense 3-tensor pairing is accepted for testing.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "kdiv/multi_index.hpp"

namespace kdiv {

struct LinearMap {
    int dim_domain = 0;
    int dim_codomain = 0;
    Eigen::MatrixXcd mat;  // dim_codomain x dim_domain

    static LinearMap make(Eigen::MatrixXcd m);
};

class BilinearMap {
public:
    enum class Kind { contraction, interior, generic };

    // rho(w (x) u, alpha) = alpha(u) w on V = W (x) U (row-major (w,u) index).
    static BilinearMap contraction(int dim_w, int dim_u);
    // rho(v, xi) = v-contraction of xi for xi in the degree-p exterior power
    // over an m-dimensional base space; W is the degree-(p-1) power.
    static BilinearMap interior(int m, int p);
    // rho given densely: tensor[w](v, j) = rho(e_v, u^j)_w.
    static BilinearMap generic(std::vector<Eigen::MatrixXcd> tensor);

    Kind kind() const { return kind_; }
    int dim_u() const { return dim_u_; }
    int dim_v() const { return dim_v_; }
    int dim_w() const { return dim_w_; }

    // Component w of rho(v, u^j).
    Eigen::VectorXcd apply(const Eigen::VectorXcd& v, const Eigen::VectorXcd& alpha) const;

    // Operator norm max_{|v|=|alpha|=1} |rho(v, alpha)|: exactly 1 for the
    // built-ins, estimated by alternating power iteration (1e-6 relative) for
    // generic tensors.
    double norm(std::uint64_t seed = 2024) const;

private:
    Kind kind_ = Kind::contraction;
    int dim_u_ = 0, dim_v_ = 0, dim_w_ = 0;
    int sub_w_ = 0, sub_u_ = 0;  // contraction factors
    int base_m_ = 0, ext_p_ = 0; // interior parameters
    std::vector<Eigen::MatrixXcd> tensor_;
};

// Tr_rho D = sum_i rho(D u_i, u^i) over the standard basis/dual pair.
Eigen::VectorXcd gen_trace(const LinearMap& d, const BilinearMap& rho);

// Same trace computed in the basis given by the columns of q (any invertible
// matrix); exists to exercise basis independence.
Eigen::VectorXcd gen_trace_in_basis(const LinearMap& d, const BilinearMap& rho,
                                    const Eigen::MatrixXcd& q);

struct TraceBound {
    double lhs;   // |Tr_rho D|
    double rhs;   // sqrt(rank D) * |rho| * |D|_HS
    int rank;
};

// Evaluates both sides of the trace bound; throws if the inequality fails
// beyond 1e-9 relative slack.
TraceBound trace_bound_check(const LinearMap& d, const BilinearMap& rho);

}  // namespace kdiv
