#include "kdiv/l2solve.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace kdiv {

DivisionProblem DivisionProblem::make(KoszulSection sec, int p, PolyExt f,
                                      WeightSpec ws, DomainSpec dom, int degree) {
    if (p < 1 || p > sec.r)
        throw std::invalid_argument("DivisionProblem: p out of range 1..r");
    if (degree < 0) throw std::invalid_argument("DivisionProblem: degree must be >= 0");
    if (!is_cycle(sec, p, f))
        throw std::invalid_argument("DivisionProblem: f is not a cycle");
    dom.validate();
    if (dom.dim() != sec.n)
        throw std::invalid_argument("DivisionProblem: domain dimension mismatch");
    return DivisionProblem(std::move(sec), p, std::move(f), ws, std::move(dom), degree);
}

int DivisionProblem::default_degree(const KoszulSection& sec, const PolyExt& f) {
    int d = 0;
    for (const auto& [I, c] : f.coeffs()) d = std::max(d, c.total_degree());
    for (const Poly& gi : sec.g) d = std::max(d, gi.total_degree());
    return d + 2;
}

std::vector<Exponents> monomial_basis(int n, int d) {
    std::vector<Exponents> out;
    Exponents cur(n, 0);
    // enumerate by total degree, lexicographic within a degree
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == n - 1) {
            cur[pos] = remaining;
            out.push_back(cur);
            return;
        }
        for (int k = remaining; k >= 0; --k) {
            cur[pos] = k;
            rec(pos + 1, remaining - k);
        }
    };
    for (int t = 0; t <= d; ++t) rec(0, t);
    return out;
}

ExactSystem assemble_constraints(const DivisionProblem& prob) {
    const KoszulSection& sec = prob.sec;
    ExactSystem sys;
    sys.comps = all_multi_indices(sec.r, prob.p);
    sys.basis = monomial_basis(sec.n, prob.degree);
    int ncols = sys.unknowns();

    auto targets = all_multi_indices(sec.r, prob.p - 1);
    for (const MultiIndex& K : targets) {
        // coefficient-matching rows of the polynomial equation in slot K
        std::map<Exponents, std::vector<GaussRat>, GrlexDesc> rows;
        std::map<Exponents, GaussRat, GrlexDesc> rhs;
        auto row_of = [&](const Exponents& e) -> std::vector<GaussRat>& {
            auto it = rows.find(e);
            if (it == rows.end())
                it = rows.emplace(e, std::vector<GaussRat>(ncols)).first;
            return it->second;
        };
        for (int nu = 1; nu <= sec.r; ++nu) {
            if (K.contains(nu)) continue;
            int pos = 0;
            MultiIndex I = K.inserted(nu, &pos);
            int comp_idx = multi_index_rank(I);
            GaussRat sgn((pos % 2 == 0) ? 1 : -1);
            for (std::size_t mi = 0; mi < sys.basis.size(); ++mi) {
                int col = sys.column_of(comp_idx, static_cast<int>(mi));
                for (const auto& [eg, cg] : sec.g[nu - 1].terms()) {
                    Exponents e(sec.n);
                    for (int v = 0; v < sec.n; ++v) e[v] = eg[v] + sys.basis[mi][v];
                    row_of(e)[col] += sgn * cg;
                }
            }
        }
        Poly fk(sec.n);
        auto it = prob.f.coeffs().find(K);
        if (it != prob.f.coeffs().end()) fk = it->second;
        for (const auto& [e, c] : fk.terms()) {
            row_of(e);  // make the row exist even if no unknown touches it
            rhs[e] += c;
        }
        for (auto& [e, row] : rows) {
            sys.rows.push_back(std::move(row));
            auto rit = rhs.find(e);
            sys.rhs.push_back(rit == rhs.end() ? GaussRat(0) : rit->second);
        }
    }
    return sys;
}

ExactSolveResult solve_exact(const ExactSystem& sys) {
    int m = static_cast<int>(sys.rows.size());
    int n = sys.unknowns();
    std::vector<std::vector<GaussRat>> a = sys.rows;
    std::vector<GaussRat> b = sys.rhs;

    std::vector<int> pivot_col_of_row;
    std::vector<int> pivot_row_of_col(n, -1);
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int pr = -1;
        for (int i = row; i < m; ++i)
            if (!a[i][col].is_zero()) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(a[pr], a[row]);
        std::swap(b[pr], b[row]);
        GaussRat inv = GaussRat(1) / a[row][col];
        for (int j = col; j < n; ++j) a[row][j] = inv * a[row][j];
        b[row] = inv * b[row];
        for (int i = 0; i < m; ++i) {
            if (i == row || a[i][col].is_zero()) continue;
            GaussRat factor = a[i][col];
            for (int j = col; j < n; ++j) a[i][j] -= factor * a[row][j];
            b[i] -= factor * b[row];
        }
        pivot_col_of_row.push_back(col);
        pivot_row_of_col[col] = row;
        ++row;
    }
    int rank = row;
    int defect = 0;
    for (int i = rank; i < m; ++i)
        if (!b[i].is_zero()) ++defect;
    if (defect > 0)
        throw InfeasibleError(
            "no polynomial solution up to the requested degree (rank defect " +
                std::to_string(defect) +
                "); the minimizer may be holomorphic but not polynomial",
            defect);

    ExactSolveResult out;
    out.rank = rank;
    out.particular.assign(n, GaussRat(0));
    for (int i = 0; i < rank; ++i) out.particular[pivot_col_of_row[i]] = b[i];
    for (int col = 0; col < n; ++col) {
        if (pivot_row_of_col[col] >= 0) continue;
        std::vector<GaussRat> v(n, GaussRat(0));
        v[col] = GaussRat(1);
        for (int i = 0; i < rank; ++i)
            v[pivot_col_of_row[i]] = -a[i][col];
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

Eigen::MatrixXcd gram_matrix(const DivisionProblem& prob, const QuadratureGrid& grid) {
    std::vector<Exponents> basis = monomial_basis(prob.sec.n, prob.degree);
    int nb = static_cast<int>(basis.size());
    auto comps = all_multi_indices(prob.sec.r, prob.p);
    SkodaWeights w = skoda_weights(prob.sec, prob.ws);

    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(nb, nb);
    std::vector<std::complex<double>> z;
    std::vector<std::complex<double>> vals(nb);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.node_at(i, z);
        double wv = w.w_num(z);
        if (!std::isfinite(wv))
            throw NonFiniteWeight("gram_matrix: singular weight at a grid node");
        for (int a = 0; a < nb; ++a) {
            std::complex<double> v{1.0, 0.0};
            for (int j = 0; j < prob.sec.n; ++j)
                for (unsigned k = 0; k < basis[a][j]; ++k) v *= z[j];
            vals[a] = v;
        }
        double wt = grid.weight_at(i) * wv;
        for (int a = 0; a < nb; ++a)
            for (int c = 0; c <= a; ++c)
                block(a, c) += wt * vals[a] * std::conj(vals[c]);
    }
    for (int a = 0; a < nb; ++a)
        for (int c = a + 1; c < nb; ++c) block(a, c) = std::conj(block(c, a));

    double trace = block.real().trace();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -1e-9 * std::max(trace, 1.0))
        throw std::runtime_error("gram_matrix: block not PSD");

    int nc = static_cast<int>(comps.size());
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(nc * nb, nc * nb);
    for (int c = 0; c < nc; ++c) full.block(c * nb, c * nb, nb, nb) = block;
    return full;
}

PolyExt MinNormSolution::exact_element(const KoszulSection& sec, int p) const {
    PolyExt h(sec.r, p);
    for (std::size_t ci = 0; ci < sys.comps.size(); ++ci) {
        Poly comp(sec.n);
        for (std::size_t mi = 0; mi < sys.basis.size(); ++mi) {
            const GaussRat& c =
                coeffs_exact[sys.column_of(static_cast<int>(ci), static_cast<int>(mi))];
            if (!c.is_zero()) comp += Poly::monomial(sec.n, sys.basis[mi], c);
        }
        if (!comp.is_zero()) h.add(sys.comps[ci], comp);
    }
    return h;
}

std::vector<NumPoly> MinNormSolution::float_components() const {
    std::vector<NumPoly> out;
    int n = sys.basis.empty() ? 1 : static_cast<int>(sys.basis[0].size());
    for (std::size_t ci = 0; ci < sys.comps.size(); ++ci) {
        NumPoly np;
        np.nvars = n;
        for (std::size_t mi = 0; mi < sys.basis.size(); ++mi) {
            std::complex<double> c =
                coeffs(sys.column_of(static_cast<int>(ci), static_cast<int>(mi)));
            if (c != std::complex<double>{0.0, 0.0})
                np.terms.emplace_back(sys.basis[mi], c);
        }
        out.push_back(std::move(np));
    }
    return out;
}

MinNormSolution solve_min_norm(const DivisionProblem& prob, const QuadratureGrid& grid) {
    MinNormSolution out;
    out.sys = assemble_constraints(prob);
    ExactSolveResult sol = solve_exact(out.sys);
    int n = out.sys.unknowns();
    int k = static_cast<int>(sol.nullspace.size());
    out.nullity = k;

    Eigen::VectorXcd x0(n);
    for (int i = 0; i < n; ++i) x0(i) = sol.particular[i].to_complex();

    Eigen::VectorXcd c_float = Eigen::VectorXcd::Zero(k);
    if (k > 0) {
        Eigen::MatrixXcd g = gram_matrix(prob, grid);
        Eigen::MatrixXcd nmat(n, k);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < n; ++i) nmat(i, j) = sol.nullspace[j][i].to_complex();
        Eigen::MatrixXcd m = nmat.adjoint() * g * nmat;
        Eigen::VectorXcd rhs = -(nmat.adjoint() * g * x0);
        m = 0.5 * (m + m.adjoint().eval());
        Eigen::LDLT<Eigen::MatrixXcd> ldlt(m);
        if (ldlt.info() == Eigen::Success) c_float = ldlt.solve(rhs);
        else c_float = m.completeOrthogonalDecomposition().solve(rhs);
        out.coeffs = x0;
        for (int j = 0; j < k; ++j) out.coeffs += c_float(j) * nmat.col(j);
    } else {
        out.coeffs = x0;
    }

    // snap the nullspace coordinates to rationals; the nullspace vectors are
    // exact syzygies, so the snapped element still solves the constraints
    out.coeffs_exact = sol.particular;
    for (int j = 0; j < k; ++j) {
        GaussRat cj = rationalize(c_float(j));
        for (int i = 0; i < n; ++i)
            out.coeffs_exact[i] += cj * sol.nullspace[j][i];
    }
    return out;
}

DivisionCertificate skoda_report(const DivisionProblem& prob, int n_rad, int n_ang) {
    DivisionCertificate cert;
    cert.bound = (1.0 + prob.ws.epsilon) / prob.ws.epsilon;
    SkodaWeights w = skoda_weights(prob.sec, prob.ws);

    std::vector<NumPoly> f_components;
    auto targets = all_multi_indices(prob.sec.r, prob.p - 1);
    for (const MultiIndex& K : targets) {
        auto it = prob.f.coeffs().find(K);
        f_components.push_back(it == prob.f.coeffs().end()
                                   ? NumPoly{prob.sec.n, {}}
                                   : NumPoly::from(it->second));
    }
    RefineResult fres = refine_and_estimate(f_components, w.w_den, prob.dom, n_rad, n_ang);
    if (fres.diverging)
        throw DivergentNormError(
            "f-norm diverging under refinement: the weighted integrability "
            "hypothesis fails for this data; no certificate");
    cert.norm_f = fres.value;
    cert.rel_change_f = fres.rel_change;

    QuadratureGrid gram_grid =
        polydisc_grid(prob.dom, std::min(n_rad, 48), std::min(n_ang, 48));
    MinNormSolution sol = solve_min_norm(prob, gram_grid);

    RefineResult hres =
        refine_and_estimate(sol.float_components(), w.w_num, prob.dom, n_rad, n_ang);
    cert.norm_h = hres.value;
    cert.rel_change_h = hres.rel_change;
    cert.quadrature_rel_change = std::max(fres.rel_change, hres.rel_change);

    cert.h = sol.exact_element(prob.sec, prob.p);
    PolyExt gh = interior(prob.sec.g, cert.h);
    cert.residual = gh - prob.f;
    if (!cert.residual.is_zero())
        throw std::logic_error("skoda_report: exact residual nonzero");

    cert.ratio = cert.norm_h / cert.norm_f;
    double tol = 10.0 * cert.quadrature_rel_change + 1e-6;
    cert.satisfied = cert.ratio <= cert.bound * (1.0 + tol);
    if (hres.diverging) {
        cert.satisfied = false;
        cert.note = "h-norm diverging within the degree-" +
                    std::to_string(prob.degree) + " subspace";
    } else if (!cert.satisfied) {
        cert.note =
            "ratio exceeds the bound: minimizer not found within the degree-" +
            std::to_string(prob.degree) +
            " subspace or quadrature unconverged (the inequality quantifies over "
            "all holomorphic h)";
    }
    return cert;
}

}  // namespace kdiv
