#pragma once

// Finite-difference verification of the pointwise derivative, Hessian, and
// second-fundamental-form identities for holomorphic matrix families with
// flat fiber metrics. All derivative checks compare a central-difference
// stencil on log |Phi|^2 against the closed forms in the projected
// derivative of Phi.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "kdiv/koszul.hpp"
#include "kdiv/poly_matrix.hpp"

namespace kdiv {

using CPoint = std::vector<std::complex<double>>;

struct HoloFamily {
    int n = 0;
    PolyMatrix entries;

    static HoloFamily make(int n, PolyMatrix entries);
    static HoloFamily from_section(const KoszulSection& sec);  // 1 x r row
};

// Derivative data of Phi at a point: B_alpha = entrywise d/dz_alpha of Phi,
// and its component orthogonal to Phi(z) in the Frobenius inner product.
struct SffData {
    CPoint z;
    std::vector<Eigen::MatrixXcd> b;
    std::vector<Eigen::MatrixXcd> b_perp;
};
SffData make_sff_data(const HoloFamily& fam, const CPoint& z);

// Worst absolute error across directions between the FD holomorphic
// derivative of log|Phi|^2 and e^{-phi} <d_alpha Phi, Phi>.
double grad_phi_check(const HoloFamily& fam, const CPoint& z, double step = 1e-3);

// Worst absolute entry error between the FD mixed Hessian of log|Phi|^2 and
// the closed form; also cross-checks the B_perp Gram form of the same matrix
// to 1e-8 and throws if the two analytic routes disagree.
double hessian_phi_check(const HoloFamily& fam, const CPoint& z, double step = 1e-3);

// Analytic mixed Hessian of log|Phi|^2 at z (n x n, Hermitian PSD for flat
// metrics).
Eigen::MatrixXcd log_norm2_hessian(const HoloFamily& fam, const CPoint& z);

struct SffErrors {
    double interleave;
    double norm;
};
// Checks that the projected derivative of the degree-p boundary map is the
// contraction by the projected derivative of g, and the binom(r,p-1) norm
// relation between them.
SffErrors koszul_sff_check(const KoszulSection& sec, int p, const CPoint& z,
                           std::uint64_t seed = 0);

struct RankBoundResult {
    int worst_excess;   // max over points of rank - min(n, r-1); <= 0 expected
    int skipped;        // points discarded for being on/near the zero locus
};
RankBoundResult rank_bound_check(const KoszulSection& sec,
                                 const std::vector<CPoint>& points);

// Contraction form of the flat Hessian identity: the Hessian of log|s|^2
// paired against coefficient arrays equals |B_s applied to the array|^2 / |s|^2.
// Returns the worst relative deviation over n_arrays random arrays.
double hessian_contraction_check(const KoszulSection& sec, const CPoint& z,
                                 int n_arrays, std::uint64_t seed);

}  // namespace kdiv
