#include "kdiv/poly_matrix.hpp"

namespace kdiv {

PolyMatrix PolyMatrix::identity(int n, int nvars) {
    PolyMatrix m(n, n, nvars);
    for (int i = 0; i < n; ++i) m.at(i, i) = Poly::constant(nvars, GaussRat(1));
    return m;
}

bool PolyMatrix::is_zero() const {
    for (const auto& p : entries_)
        if (!p.is_zero()) return false;
    return true;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& other) const {
    if (cols_ != other.rows_)
        throw std::invalid_argument("matrix product shape mismatch");
    PolyMatrix out(rows_, other.cols_, nvars_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < other.cols_; ++j) {
            Poly acc(nvars_);
            for (int k = 0; k < cols_; ++k) acc += at(i, k) * other.at(k, j);
            out.at(i, j) = acc;
        }
    return out;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix difference shape mismatch");
    PolyMatrix out(rows_, cols_, nvars_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j) - other.at(i, j);
    return out;
}

Eigen::MatrixXcd PolyMatrix::eval(const std::vector<std::complex<double>>& point) const {
    Eigen::MatrixXcd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(i, j) = at(i, j).eval(point);
    return m;
}

PolyMatrix PolyMatrix::derivative(int var) const {
    PolyMatrix out(rows_, cols_, nvars_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j).derivative(var);
    return out;
}

namespace {

// Determinant of the submatrix given by rows row..n-1 and the columns listed
// in cols, expanded along the top row.
Poly det_rec(const PolyMatrix& m, int row, const std::vector<int>& cols) {
    int n = static_cast<int>(cols.size());
    if (n == 0) return Poly::constant(m.nvars(), GaussRat(1));
    if (n == 1) return m.at(row, cols[0]);
    Poly acc(m.nvars());
    std::vector<int> rest(n - 1);
    for (int a = 0; a < n; ++a) {
        const Poly& pivot = m.at(row, cols[a]);
        if (pivot.is_zero()) continue;
        for (int b = 0, w = 0; b < n; ++b)
            if (b != a) rest[w++] = cols[b];
        Poly sub = det_rec(m, row + 1, rest);
        if (a % 2 == 0) acc += pivot * sub;
        else acc -= pivot * sub;
    }
    return acc;
}

}  // namespace

Poly det(const PolyMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("det: matrix not square");
    std::vector<int> cols(m.cols());
    for (int j = 0; j < m.cols(); ++j) cols[j] = j;
    return det_rec(m, 0, cols);
}

PolyMatrix adjugate(const PolyMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("adjugate: matrix not square");
    int n = m.rows();
    PolyMatrix out(n, n, m.nvars());
    if (n == 0) return out;
    if (n == 1) {
        out.at(0, 0) = Poly::constant(m.nvars(), GaussRat(1));
        return out;
    }
    PolyMatrix sub(n - 1, n - 1, m.nvars());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int a = 0, ai = 0; a < n; ++a) {
                if (a == i) continue;
                for (int b = 0, bj = 0; b < n; ++b) {
                    if (b == j) continue;
                    sub.at(ai, bj) = m.at(a, b);
                    ++bj;
                }
                ++ai;
            }
            Poly c = det(sub);
            if ((i + j) % 2 == 1) c = -c;
            out.at(j, i) = c;  // transpose of the cofactor matrix
        }
    }
    return out;
}

std::map<MultiIndex, Poly> minors(const PolyMatrix& phi) {
    int q = phi.rows(), p = phi.cols();
    if (q > p) throw std::invalid_argument("minors: require rows <= cols");
    std::map<MultiIndex, Poly> out;
    for (const MultiIndex& I : all_multi_indices(p, q)) {
        PolyMatrix sub(q, q, phi.nvars());
        for (int i = 0; i < q; ++i)
            for (int a = 0; a < q; ++a) sub.at(i, a) = phi.at(i, I[a] - 1);
        out.emplace(I, det(sub));
    }
    return out;
}

}  // namespace kdiv
