#include "kdiv/exterior.hpp"

namespace kdiv {

int merge_sign(const MultiIndex& I, const MultiIndex& J, MultiIndex* merged) {
    if (I.ambient() != J.ambient())
        throw std::invalid_argument("merge_sign: ambient rank mismatch");
    std::vector<int> out;
    out.reserve(I.size() + J.size());
    int a = 0, b = 0;
    long inv = 0;
    while (a < I.size() && b < J.size()) {
        if (I[a] == J[b]) return 0;
        if (I[a] < J[b]) {
            out.push_back(I[a]);
            ++a;
        } else {
            // J[b] jumps over the remaining entries of I
            inv += I.size() - a;
            out.push_back(J[b]);
            ++b;
        }
    }
    while (a < I.size()) out.push_back(I[a++]);
    while (b < J.size()) out.push_back(J[b++]);
    *merged = MultiIndex(std::move(out), I.ambient());
    return (inv % 2 == 0) ? 1 : -1;
}

double ext_norm2(const NumExt& xi) {
    double acc = 0.0;
    for (const auto& [I, c] : xi.coeffs()) acc += std::norm(c);
    return acc;
}

NumExt eval_ext(const PolyExt& xi, const std::vector<std::complex<double>>& point) {
    NumExt out(xi.ambient(), xi.degree());
    for (const auto& [I, p] : xi.coeffs()) out.add(I, p.eval(point));
    return out;
}

}  // namespace kdiv
