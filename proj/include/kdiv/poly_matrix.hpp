#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "kdiv/multi_index.hpp"
#include "kdiv/poly.hpp"

namespace kdiv {

// Dense matrix of exact polynomials, row-major. All entries share nvars.
class PolyMatrix {
public:
    PolyMatrix(int rows, int cols, int nvars)
        : rows_(rows), cols_(cols), nvars_(nvars),
          entries_(static_cast<std::size_t>(rows) * cols, Poly::zero(nvars)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
    }

    static PolyMatrix identity(int n, int nvars);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nvars() const { return nvars_; }

    Poly& at(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Poly& at(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }

    bool is_zero() const;

    PolyMatrix operator*(const PolyMatrix& other) const;
    PolyMatrix operator-(const PolyMatrix& other) const;

    // Entrywise evaluation at a point.
    Eigen::MatrixXcd eval(const std::vector<std::complex<double>>& point) const;

    // Entrywise exact partial derivative.
    PolyMatrix derivative(int var) const;

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    int rows_, cols_, nvars_;
    std::vector<Poly> entries_;
};

// Exact determinant by cofactor expansion along the first row; matrices in
// this project stay small (<= 6x6) so exactness wins over speed.
Poly det(const PolyMatrix& m);

// Transpose of the cofactor matrix; satisfies m * adjugate(m) = det(m) * I
// as an exact polynomial identity.
PolyMatrix adjugate(const PolyMatrix& m);

// All q x q column minors of a q x p matrix, keyed by the strictly increasing
// column multi-index.
std::map<MultiIndex, Poly> minors(const PolyMatrix& phi);

}  // namespace kdiv
