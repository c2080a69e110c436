#pragma once

// Koszul complexes over polynomial generator tuples: boundary operators in
// the increasing multi-index bases, pointwise exactness diagnostics, and the
// minimal pointwise lift through the conjugate-section identity.

#include <Eigen/Dense>

#include "kdiv/exterior.hpp"
#include "kdiv/poly_matrix.hpp"

namespace kdiv {

struct KoszulSection {
    int n = 0;                // number of variables
    int r = 0;                // rank
    std::vector<Poly> g;      // generator tuple, length r, each over nvars = n

    static KoszulSection make(int n, std::vector<Poly> g);
};

// Pointwise data entering the flat-metric identities: the evaluated
// generators and |s|^2 at a point.
struct PointFrame {
    std::vector<std::complex<double>> z;
    std::vector<std::complex<double>> g_at;
    double s_norm2 = 0.0;

    static PointFrame at(const KoszulSection& sec,
                         const std::vector<std::complex<double>>& z);
    static PointFrame from_values(std::vector<std::complex<double>> z,
                                  std::vector<std::complex<double>> g_at);
};

// Matrix of the boundary d_p = g-contraction in the increasing multi-index
// bases, shape C(r,p-1) x C(r,p). Columns/rows are ordered lexicographically.
PolyMatrix boundary_matrix(const KoszulSection& sec, int p);

// True iff the contraction of f by g vanishes identically (vacuous at p = 1).
bool is_cycle(const KoszulSection& sec, int p, const PolyExt& f);

// Numeric pair (Phi, Psi) of boundary maps around the middle space of
// exterior degree p: Phi maps in (degree p+1), Psi maps out (degree p).
struct KoszulPair {
    Eigen::MatrixXcd phi;
    Eigen::MatrixXcd psi;
};
KoszulPair koszul_pair_at(const KoszulSection& sec, int p,
                          const std::vector<std::complex<double>>& z);

// Smallest eigenvalue of Psi*Psi + Phi Phi* on the middle space; positive
// exactly where the two-term complex is exact. Preconditions: shapes compose
// and Psi*Phi vanishes within 1e-8 entrywise.
double exactness_score(const Eigen::MatrixXcd& phi, const Eigen::MatrixXcd& psi);

// One-homomorphism variant: smallest eigenvalue of P_perp + Phi Phi*, where
// P_perp projects onto the orthogonal complement of the column space
// (numerical rank cut at 1e-10 of the largest singular value).
double exactness_score_single(const Eigen::MatrixXcd& phi);

// Minimal lift h with g-contraction h = f at a point with s != 0:
// h = conj(g) wedge f / |s|^2. Requires f to be a pointwise cycle.
NumExt pointwise_lift(const PointFrame& frame, int p, const NumExt& f);

// Squared homomorphism norm of d_p at a point against the closed form
// binom(r, p-1) |s|^2.
struct HomNorm2 {
    double norm2;
    double expected;
};
HomNorm2 hom_norm2_check(const PointFrame& frame, int p);

}  // namespace kdiv
