#include <doctest.h>

#include <random>

#include "kdiv/trace.hpp"

using namespace kdiv;

namespace {

Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, int rows, int cols) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = {u(rng), u(rng)};
    return m;
}

Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, int n) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_matrix(rng, n, n));
    return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

// tensor slices of a built-in pairing, for the generic-vs-builtin cross check
std::vector<Eigen::MatrixXcd> tensor_of(const BilinearMap& rho) {
    std::vector<Eigen::MatrixXcd> out;
    for (int w = 0; w < rho.dim_w(); ++w)
        out.push_back(Eigen::MatrixXcd::Zero(rho.dim_v(), rho.dim_u()));
    Eigen::VectorXcd ev = Eigen::VectorXcd::Zero(rho.dim_v());
    Eigen::VectorXcd ej = Eigen::VectorXcd::Zero(rho.dim_u());
    for (int v = 0; v < rho.dim_v(); ++v) {
        ev(v) = 1.0;
        for (int j = 0; j < rho.dim_u(); ++j) {
            ej(j) = 1.0;
            Eigen::VectorXcd w = rho.apply(ev, ej);
            for (int a = 0; a < rho.dim_w(); ++a) out[a](v, j) = w(a);
            ej(j) = 0.0;
        }
        ev(v) = 0.0;
    }
    return out;
}

}  // namespace

TEST_CASE("gen_trace: contraction sharpness family D(u) = w0 (x) u") {
    int k = 4, dw = 3;
    Eigen::VectorXcd w0(dw);
    w0 << std::complex<double>{1, 1}, std::complex<double>{0, -2},
        std::complex<double>{0.5, 0};
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(dw * k, k);
    for (int a = 0; a < dw; ++a)
        for (int i = 0; i < k; ++i) d(a * k + i, i) = w0(a);
    BilinearMap rho = BilinearMap::contraction(dw, k);
    Eigen::VectorXcd tr = gen_trace(LinearMap::make(d), rho);
    CHECK((tr - double(k) * w0).norm() <= 1e-12);

    TraceBound tb = trace_bound_check(LinearMap::make(d), rho);
    CHECK(tb.rank == k);
    CHECK(tb.lhs == doctest::Approx(k * w0.norm()));
    CHECK(tb.rhs == doctest::Approx(k * w0.norm()));
    CHECK(tb.lhs / tb.rhs >= 1.0 - 1e-9);
    CHECK(tb.lhs / tb.rhs <= 1.0 + 1e-12);
}

TEST_CASE("gen_trace: zero map") {
    BilinearMap rho = BilinearMap::contraction(2, 3);
    LinearMap d = LinearMap::make(Eigen::MatrixXcd::Zero(6, 3));
    CHECK(gen_trace(d, rho).norm() == 0.0);
    TraceBound tb = trace_bound_check(d, rho);
    CHECK(tb.lhs == 0.0);
    CHECK(tb.rhs == 0.0);
    CHECK(tb.rank == 0);
}

TEST_CASE("gen_trace: builtin matches the generic dense route") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        BilinearMap rho = (t % 2 == 0) ? BilinearMap::contraction(2, 3)
                                       : BilinearMap::interior(4, 2);
        BilinearMap generic = BilinearMap::generic(tensor_of(rho));
        Eigen::MatrixXcd d = random_matrix(rng, rho.dim_v(), rho.dim_u());
        Eigen::VectorXcd a = gen_trace(LinearMap::make(d), rho);
        Eigen::VectorXcd b = gen_trace(LinearMap::make(d), generic);
        CHECK((a - b).norm() <= 1e-12 * std::max(1.0, a.norm()));
    }
}

TEST_CASE("gen_trace is basis independent") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 25; ++t) {
        BilinearMap rho = (t % 2 == 0) ? BilinearMap::contraction(2, 3)
                                       : BilinearMap::interior(4, 2);
        Eigen::MatrixXcd d = random_matrix(rng, rho.dim_v(), rho.dim_u());
        Eigen::MatrixXcd q = random_unitary(rng, rho.dim_u());
        Eigen::VectorXcd a = gen_trace(LinearMap::make(d), rho);
        Eigen::VectorXcd b = gen_trace_in_basis(LinearMap::make(d), rho, q);
        CHECK((a - b).norm() <= 1e-10 * std::max(1.0, a.norm()));
    }
}

TEST_CASE("trace bound holds across random low-rank maps") {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 1000; ++t) {
        bool use_interior = (t % 2 == 1);
        BilinearMap rho = use_interior
                              ? BilinearMap::interior(2 + static_cast<int>(rng() % 4),
                                                      1)
                              : BilinearMap::contraction(
                                    1 + static_cast<int>(rng() % 3),
                                    1 + static_cast<int>(rng() % 5));
        if (use_interior) {
            int m = rho.dim_v();
            int p = 1 + static_cast<int>(rng() % m);
            rho = BilinearMap::interior(m, p);
        }
        int rank_cap = 1 + static_cast<int>(rng() % 3);
        Eigen::MatrixXcd a = random_matrix(rng, rho.dim_v(), rank_cap);
        Eigen::MatrixXcd b = random_matrix(rng, rank_cap, rho.dim_u());
        // trace_bound_check throws if the inequality fails
        TraceBound tb = trace_bound_check(LinearMap::make(a * b), rho);
        CHECK(tb.lhs <= tb.rhs * (1 + 1e-9));
        CHECK(tb.rank <= rank_cap);
    }
}

TEST_CASE("interior pairing is a contraction: |rho(v, xi)| <= |v||xi|") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; ++t) {
        int m = 2 + static_cast<int>(rng() % 4);
        int p = 1 + static_cast<int>(rng() % m);
        BilinearMap rho = BilinearMap::interior(m, p);
        Eigen::VectorXcd v = random_matrix(rng, rho.dim_v(), 1);
        Eigen::VectorXcd xi = random_matrix(rng, rho.dim_u(), 1);
        CHECK(rho.apply(v, xi).norm() <= v.norm() * xi.norm() * (1 + 1e-12));
    }
}

TEST_CASE("generic pairing norm estimate brackets the builtin value") {
    BilinearMap rho = BilinearMap::contraction(2, 3);
    BilinearMap generic = BilinearMap::generic(tensor_of(rho));
    double n = generic.norm(7);
    CHECK(n == doctest::Approx(1.0).epsilon(1e-4));
    CHECK_THROWS(BilinearMap::contraction(0, 1));
    Eigen::MatrixXcd d(5, 3);
    d.setZero();
    CHECK_THROWS(gen_trace(LinearMap::make(d), rho));  // incompatible shapes
}
