#pragma once

#include "hecketrace/afe.hpp"
#include "hecketrace/arith.hpp"
#include "hecketrace/numerics.hpp"

#include <string>
#include <vector>

namespace ht {

struct QuadratureSpec {
    int panel_count_base = 8;
    double oscillation_scaling = 0.25;  // panels grow by this times |xi| sqrt(n) / lf^2
    double abs_tol = 1e-9;
    int max_panels = 4096;
    bool estimate_error = true;         // panel halving; triples the cost
};

struct IntegralValue {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
    bool flagged = false;               // budget exceeded or error above abs_tol
};

// theta_inf integrals over [-1, 1] in the angle variable; weighted divides by sqrt(1 - x^2).
double theta_integral(int k, bool weighted);

// I_{l,f}(xi, n) for real n > 0, weight k.
IntegralValue I_integral(i64 l, i64 f, i64 xi, double n, int k = 12,
                         const QuadratureSpec& spec = QuadratureSpec{},
                         const AfeKernels& K = default_kernels());

// Smoothed indicator of [1/2, 1): G = 1_{[1/2,1)} * phi_s with s = Y^{delta - 1},
// phi a fixed unit-mass bump on (-1, 1).
class Mollifier {
public:
    Mollifier(double Y, double delta, double amplitude = 1.0);

    double Y() const { return Y_; }
    double delta() const { return delta_; }
    double width() const { return s_; }
    double amplitude() const { return amp_; }
    double support_lo() const { return 0.5 - s_; }
    double support_hi() const { return 1.0 + s_; }

    double G(double x) const;
    double derivative(double x, int j) const;
    // sum_{j <= M} || G^{(j)} ||_1
    double sobolev_norm(int M) const;

    static double bump(double x);
    static double bump_derivative(double x, int j);

private:
    static double bump_cdf(double t);
    double Y_, delta_, s_, amp_;
};

struct TailParams {
    double kappa = 1.0 / 32.0;
    double alpha = 1.0 / 48.0 - 1e-6;
    int N = 1;
    bool admissible() const { return 2.0 * kappa + alpha < 1.0 / 12.0; }
};

// J_{l,f}(xi, nu, X): y-integral of sqrt(y) G(y/X) I(xi, y) e(-y nu / 4lf^2).
struct JValue {
    cplx value;
    double error = 0.0;
    bool flagged = false;
};
JValue J_integral(i64 l, i64 f, i64 xi, i64 nu, double X, const Mollifier& G, int k = 12,
                  const QuadratureSpec& spec = QuadratureSpec{});

// For fixed (l, f, xi), J for many nu sharing one set of y-samples.
class JSeries {
public:
    JSeries(i64 l, i64 f, i64 xi, double X, const Mollifier& G, int k, const QuadratureSpec& spec,
            i64 nu_max, int refine = 1);
    i64 nu_max() const { return nu_max_; }
    cplx operator()(i64 nu) const;
    bool flagged() const { return flagged_; }

private:
    i64 q_, nu_max_;
    std::vector<double> y_, wg_;   // nodes and weight * sqrt(y) G(y/X) I(xi, y)
    bool flagged_ = false;
};

struct PoissonCuts {
    i64 lf2_cut = 64;
    i64 xi_cut = 32;
    PoissonCuts doubled() const { return {2 * lf2_cut, 2 * xi_cut}; }
};

struct PoissonResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_err = 0.0;
    double quad_error = 0.0;   // accumulated quadrature error estimate of the rhs
    bool flagged = false;
};

PoissonResult poisson_check(i64 n, int k, const PoissonCuts& cuts = PoissonCuts{},
                            const QuadratureSpec& spec = QuadratureSpec{});

struct TailCuts {
    i64 lf2_cut = 256;
    i64 xi_cut = 64;
};

// sum over lf^2 |xi| > n^{1/2 + kappa} (xi != 0) of Kl I / (l^2 f^3), inside the cuts.
double tail_S0(i64 n, double kappa, const TailCuts& cuts = TailCuts{}, int k = 12,
               const QuadratureSpec& spec = QuadratureSpec{});

struct CriticalCuts {
    i64 nu_max = 0;         // 0: chosen from the decay of J
    double nu_tol = 1e-12;  // stop once 4 consecutive |J(nu)| fall below nu_tol * max(|J(0)|, 1)
};

struct CriticalSumResult {
    double direct = 0.0;
    double rearranged = 0.0;
    double nu_zero = 0.0;        // |nu = 0 stratum|
    double rel_diff = 0.0;
    double scale = 0.0;          // sum of |terms|, for judging cancellation
    i64 triples = 0;             // (l, f, xi) in range
    i64 nu_used = 0;
    bool flagged = false;
};

struct CriticalRange {
    std::vector<std::pair<i64, i64>> lf;   // (l, f)
    double lf2_lo = 0.0, lf2_hi = 0.0, xi_hi = 0.0, lf2xi_hi = 0.0;
};
CriticalRange critical_range(double X, const TailParams& tp);

CriticalSumResult critical_sum(double X, const TailParams& tp, const Mollifier& G, int k = 12,
                               const CriticalCuts& cuts = CriticalCuts{},
                               const QuadratureSpec& spec = QuadratureSpec{});

}  // namespace ht
