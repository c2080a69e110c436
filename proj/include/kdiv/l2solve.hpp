#pragma once

// Galerkin least-norm division: solve the contraction equation g . h = f
// exactly over a fixed-degree polynomial basis, minimize the weighted L2
// norm over the affine solution set, and certify the division inequality.
//
// The constraint path is exact (GaussRat elimination gives a particular
// solution plus a syzygy basis); only the nullspace coordinates of the
// minimizer are floating point, so every emitted h satisfies the equation
// identically.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "kdiv/exterior.hpp"
#include "kdiv/koszul.hpp"
#include "kdiv/quad.hpp"

namespace kdiv {

struct DivisionProblem {
    KoszulSection sec;
    int p = 1;
    PolyExt f;
    WeightSpec ws;
    DomainSpec dom;
    int degree = 0;  // polynomial basis degree bound d

    static DivisionProblem make(KoszulSection sec, int p, PolyExt f, WeightSpec ws,
                                DomainSpec dom, int degree);
    static int default_degree(const KoszulSection& sec, const PolyExt& f);

    DivisionProblem(KoszulSection s, int pp, PolyExt ff, WeightSpec w, DomainSpec d,
                    int deg)
        : sec(std::move(s)), p(pp), f(std::move(ff)), ws(w), dom(std::move(d)),
          degree(deg) {}
};

struct InfeasibleError : std::runtime_error {
    InfeasibleError(const std::string& msg, int rank_defect)
        : std::runtime_error(msg), rank_defect(rank_defect) {}
    int rank_defect;
};

struct DivergentNormError : std::runtime_error {
    explicit DivergentNormError(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact linear system over the monomial coefficients of h. Unknown ordering
// is component-major (increasing multi-indices of degree p, lex order) and
// monomial-minor (total degree <= d, graded order ascending).
struct ExactSystem {
    std::vector<MultiIndex> comps;
    std::vector<Exponents> basis;
    std::vector<std::vector<GaussRat>> rows;
    std::vector<GaussRat> rhs;

    int unknowns() const {
        return static_cast<int>(comps.size() * basis.size());
    }
    int column_of(int comp_idx, int mono_idx) const {
        return comp_idx * static_cast<int>(basis.size()) + mono_idx;
    }
};

ExactSystem assemble_constraints(const DivisionProblem& prob);

// All monomial exponent vectors of total degree <= d in n variables, graded
// order, constants first.
std::vector<Exponents> monomial_basis(int n, int d);

struct ExactSolveResult {
    std::vector<GaussRat> particular;
    std::vector<std::vector<GaussRat>> nullspace;
    int rank = 0;
};

// Exact row reduction; throws InfeasibleError when the system has no
// solution.
ExactSolveResult solve_exact(const ExactSystem& sys);

// Hermitian PSD Gram matrix of the weighted inner product on the unknowns;
// block diagonal over components.
Eigen::MatrixXcd gram_matrix(const DivisionProblem& prob, const QuadratureGrid& grid);

struct MinNormSolution {
    ExactSystem sys;
    Eigen::VectorXcd coeffs;              // float minimizer coefficients
    std::vector<GaussRat> coeffs_exact;   // snapped; still an exact solution
    int nullity = 0;

    PolyExt exact_element(const KoszulSection& sec, int p) const;
    // Per-component numeric polynomials of the float minimizer.
    std::vector<NumPoly> float_components() const;
};

MinNormSolution solve_min_norm(const DivisionProblem& prob, const QuadratureGrid& grid);

struct DivisionCertificate {
    PolyExt h{1, 0};
    PolyExt residual{1, 0};  // contraction defect of the exact h; zero when emitted
    double norm_h = 0.0;
    double norm_f = 0.0;
    double ratio = 0.0;
    double bound = 0.0;
    bool satisfied = false;
    double quadrature_rel_change = 0.0;
    double rel_change_h = 0.0;
    double rel_change_f = 0.0;
    std::string note;
};

// Full pipeline: check the f-norm hypothesis, solve, certify. Throws
// DivergentNormError when the hypothesis-side integral diverges and
// InfeasibleError when no degree-d polynomial solution exists.
DivisionCertificate skoda_report(const DivisionProblem& prob, int n_rad, int n_ang);

}  // namespace kdiv
