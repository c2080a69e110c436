#include "kdiv/adjdiv.hpp"

namespace kdiv {

BorderedMatrix build_bordered(const PolyMatrix& phi, const MultiIndex& I) {
    int q = phi.rows(), p = phi.cols();
    if (q > p) throw std::invalid_argument("build_bordered: require q <= p");
    if (I.size() != q || I.ambient() != p)
        throw std::invalid_argument("build_bordered: index shape mismatch");
    CompSign cs = comp_sign(I, p);
    PolyMatrix full(p, p, phi.nvars());
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < p; ++j) full.at(i, j) = phi.at(i, j);
    for (int a = 0; a < p - q; ++a)
        full.at(q + a, cs.complement[a] - 1) = Poly::constant(phi.nvars(), GaussRat(1));
    return {phi, I, std::move(full), cs.sign};
}

std::vector<Poly> assemble_solution(const PolyMatrix& phi,
                                    const ScalarDivisionData& data,
                                    const std::vector<Poly>& f) {
    int q = phi.rows(), p = phi.cols();
    if (static_cast<int>(f.size()) != q)
        throw std::invalid_argument("assemble_solution: f must have q components");
    auto delta = minors(phi);

    // scalar decomposition precheck: sum_I minor_I u_{I,nu} = f_nu exactly
    for (int nu = 0; nu < q; ++nu) {
        Poly acc(phi.nvars());
        for (const auto& [I, d] : delta) {
            auto it = data.u.find(I);
            if (it == data.u.end()) continue;
            if (static_cast<int>(it->second.size()) != q)
                throw std::invalid_argument("assemble_solution: u vector length != q");
            acc += d * it->second[nu];
        }
        Poly defect = acc - f[nu];
        if (!defect.is_zero())
            throw std::invalid_argument(
                "assemble_solution: scalar decomposition fails in component " +
                std::to_string(nu + 1) + "; defect = " + defect.to_string());
    }

    std::vector<Poly> h(p, Poly::zero(phi.nvars()));
    for (const auto& [I, uI] : data.u) {
        BorderedMatrix bm = build_bordered(phi, I);
        // stacked section (u_I, v_I)
        std::vector<Poly> ut(p, Poly::zero(phi.nvars()));
        for (int i = 0; i < q; ++i) ut[i] = uI[i];
        auto vit = data.v.find(I);
        if (vit != data.v.end()) {
            if (static_cast<int>(vit->second.size()) != p - q)
                throw std::invalid_argument("assemble_solution: v vector length != p-q");
            for (int i = 0; i < p - q; ++i) ut[q + i] = vit->second[i];
        }
        PolyMatrix adj = adjugate(bm.full);
        std::vector<Poly> hI(p, Poly::zero(phi.nvars()));
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) hI[i] += adj.at(i, j) * ut[j];
        // per-minor identity: Phi h_I = sign * minor_I * u_I
        const Poly& dI = delta.at(I);
        for (int nu = 0; nu < q; ++nu) {
            Poly lhs(phi.nvars());
            for (int j = 0; j < p; ++j) lhs += phi.at(nu, j) * hI[j];
            Poly rhs = dI * uI[nu];
            if (bm.sign < 0) rhs = -rhs;
            if (lhs != rhs)
                throw std::logic_error("assemble_solution: per-minor identity failed");
        }
        for (int i = 0; i < p; ++i) {
            if (bm.sign < 0) h[i] -= hI[i];
            else h[i] += hI[i];
        }
    }

    for (int nu = 0; nu < q; ++nu) {
        Poly lhs(phi.nvars());
        for (int j = 0; j < p; ++j) lhs += phi.at(nu, j) * h[j];
        if (lhs != f[nu])
            throw std::logic_error("assemble_solution: Phi h != f after assembly");
    }
    return h;
}

ScalarDivisionData scalar_backend_single(const std::map<MultiIndex, Poly>& delta,
                                         const std::vector<Poly>& f) {
    ScalarDivisionData out;
    bool f_zero = true;
    for (const Poly& fi : f) f_zero = f_zero && fi.is_zero();
    if (f_zero) return out;

    for (const auto& [I, d] : delta) {
        if (d.is_zero()) continue;
        std::vector<Poly> quotients;
        quotients.reserve(f.size());
        bool ok = true;
        for (const Poly& fi : f) {
            auto qv = fi.divide_exact(d);
            if (!qv) { ok = false; break; }
            quotients.push_back(std::move(*qv));
        }
        if (ok) {
            out.u.emplace(I, std::move(quotients));
            return out;
        }
    }
    throw std::invalid_argument(
        "scalar_backend_single: no single minor divides f exactly; supply the "
        "scalar division data u externally");
}

}  // namespace kdiv
