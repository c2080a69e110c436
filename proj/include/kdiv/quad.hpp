#pragma once

// Deterministic quadrature on polydiscs and the weighted L2 norms built from
// the division weights. Radial nodes are Gauss-Legendre (never at rho = 0),
// angular nodes are uniform with a half-step offset, so nodes generically
// avoid coordinate zero sets; singular weights surface as divergence under
// refinement, never as silent clipping.

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "kdiv/koszul.hpp"
#include "kdiv/poly.hpp"

namespace kdiv {

struct DomainSpec {
    std::vector<std::complex<double>> center;
    std::vector<double> radii;

    int dim() const { return static_cast<int>(radii.size()); }
    static DomainSpec unit_polydisc(int n);
    void validate() const;
};

// Plurisubharmonic weight psi. Built-in families plus polynomials evaluated
// in the squared coordinate moduli.
struct PsiSpec {
    enum class Kind { zero, quad_norm, log_norm, poly_abs2 };
    Kind kind = Kind::zero;
    double c = 0.0;
    Poly poly = Poly::zero(1);  // poly_abs2 only, evaluated at (|z_1|^2, ..)

    static PsiSpec parse(const std::string& text, int n);
    double eval(const std::vector<std::complex<double>>& z) const;
    std::string to_string() const;
};

struct WeightSpec {
    PsiSpec psi;
    double epsilon = 1.0;
    int q = 0;

    static int default_q(int n, int r) { return std::min(n, r - 1); }
};

using WeightFn = std::function<double(const std::vector<std::complex<double>>&)>;

// Tensor-product grid; nodes are enumerated lazily by index to keep the
// footprint flat at high resolution.
class QuadratureGrid {
public:
    QuadratureGrid(const DomainSpec& dom, int n_rad, int n_ang);

    std::size_t size() const { return count_; }
    int n_rad() const { return n_rad_; }
    int n_ang() const { return n_ang_; }
    int dim() const { return static_cast<int>(coord_nodes_.size()); }

    void node_at(std::size_t idx, std::vector<std::complex<double>>& out) const;
    double weight_at(std::size_t idx) const;

    double total_weight() const;
    double volume() const;  // prod pi r_j^2

private:
    int n_rad_, n_ang_;
    std::size_t count_;
    std::vector<double> radii_;
    std::vector<std::vector<std::complex<double>>> coord_nodes_;
    std::vector<std::vector<double>> coord_weights_;
};

QuadratureGrid polydisc_grid(const DomainSpec& dom, int n_rad, int n_ang);

// Gauss-Legendre nodes/weights for integration over [0, 1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct NonFiniteWeight : std::runtime_error {
    explicit NonFiniteWeight(const std::string& what) : std::runtime_error(what) {}
};

// sum over nodes of weight * (sum_components |eval|^2) * w(node), accumulated
// over a fixed pairwise reduction tree.
double weighted_norm2(const std::vector<NumPoly>& components, const WeightFn& w,
                      const QuadratureGrid& grid);
double weighted_norm2(const std::vector<Poly>& components, const WeightFn& w,
                      const QuadratureGrid& grid);

// The two Skoda weights for a generator tuple:
//   numerator   |g|^{-2q(1+eps)} e^{-psi}
//   denominator |g|^{-2(q + q eps + 1)} e^{-psi}
struct SkodaWeights {
    WeightFn w_num;
    WeightFn w_den;
};
SkodaWeights skoda_weights(const KoszulSection& sec, const WeightSpec& ws);

// General power weight |g|^{-2 exponent} e^{-psi}; used by the adjugate-path
// integrability check where g is replaced by the minor tuple.
WeightFn power_weight(std::vector<NumPoly> gens, double exponent, PsiSpec psi);

struct RefineResult {
    double value;        // finest estimate
    double rel_change;   // relative change across the last doubling
    bool diverging;      // grew by > 10% across two consecutive refinements
    double values[3];    // half, base, doubled resolutions
};

// Evaluates at half, base, and doubled resolution. Divergence means the
// value grew by more than 10% at both refinement steps, the signature of a
// non-integrable weight for this data.
RefineResult refine_and_estimate(const std::vector<NumPoly>& components,
                                 const WeightFn& w, const DomainSpec& dom,
                                 int n_rad, int n_ang);

}  // namespace kdiv
