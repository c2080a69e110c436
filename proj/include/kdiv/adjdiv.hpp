#pragma once

// Adjugate-based matrix division: assemble an exact polynomial solution of
// Phi h = f from scalar division data over the maximal minors of Phi. The
// construction is purely algebraic; integrability of the scalar data is the
// caller's concern and is checked separately through quadrature.

#include <map>
#include <optional>
#include <vector>

#include "kdiv/poly_matrix.hpp"

namespace kdiv {

struct BorderedMatrix {
    PolyMatrix base;   // the q x p matrix Phi
    MultiIndex index;  // selected columns, size q over 1..p
    PolyMatrix full;   // p x p bordered extension
    int sign;          // parity of (index, complement) as a permutation of 1..p
};

// Extends Phi by unit rows at the complementary column positions, so that
// det(full) = sign * minor(index) exactly.
BorderedMatrix build_bordered(const PolyMatrix& phi, const MultiIndex& I);

// Scalar division data: for each minor index I a q-vector u_I with
// sum_I minor_I * u_I = f, plus an arbitrary fill v_I (defaults to zero).
struct ScalarDivisionData {
    std::map<MultiIndex, std::vector<Poly>> u;
    std::map<MultiIndex, std::vector<Poly>> v;
};

// Assembles h with Phi h = f as an exact polynomial identity. Verifies the
// scalar decomposition before assembly and the per-minor identity afterward.
std::vector<Poly> assemble_solution(const PolyMatrix& phi,
                                    const ScalarDivisionData& data,
                                    const std::vector<Poly>& f);

// Supplies scalar data in the single-divisor case: the first minor that
// exactly divides every component of f carries u = f / minor, all other
// entries are zero. Throws when no single minor divides f.
ScalarDivisionData scalar_backend_single(const std::map<MultiIndex, Poly>& delta,
                                         const std::vector<Poly>& f);

}  // namespace kdiv
