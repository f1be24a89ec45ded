#pragma once

#include "hecketrace/arith.hpp"
#include "hecketrace/numerics.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ht {

struct AfeBudget {
    // Mellin transform: composite Gauss–Legendre in s = log x on [s_min, s_max].
    double s_min = -4.5;
    double s_max = 4.5;
    int mellin_panels = 360;
    // H contour Re(u) = 1, |Im u| <= t_max, trapezoid step t_step.
    double t_max = 40.0;
    double t_step = 0.05;
    // Table on log-spaced y in [y_min, y_max]; W = 0 beyond y_max.
    double y_min = 1e-4;
    double y_max = 64.0;
    int nodes_per_decade = 200;
    double h_tol = 1e-7;

    std::string describe() const;
    bool operator==(const AfeBudget&) const = default;
};

struct KernelValue {
    double value = 0.0;
    double error = 0.0;
};

class AfeKernels {
public:
    explicit AfeKernels(const AfeBudget& budget = AfeBudget{});

    const AfeBudget& budget() const { return budget_; }
    double normalizer() const { return normalizer_; }   // 2 K_0(2)

    // Direct evaluations.
    double F_direct(double x) const;
    double F_prime(double x) const;
    cplx mellin_F(cplx u) const;
    KernelValue H_direct(double y) const;            // error: truncation + step estimate
    KernelValue H_direct(double y, double t_max, double t_step) const;

    // Tabulated evaluations (cubic Hermite in log y).
    double F(double x) const;
    double H(double y) const;
    // W(y) = F(y) + y H(y): the combined AFE weight.
    double W(double y) const;

    void save_csv(const std::string& path) const;
    static AfeKernels load_csv(const std::string& path, const AfeBudget& expected);

private:
    struct Tag {};
    AfeKernels(Tag, const AfeBudget& b) : budget_(b) {}
    void build_mellin_nodes();
    void build_contour();
    void build_table();
    double H_prime_direct(double y) const;
    double interp(const std::vector<double>& v, const std::vector<double>& dv, double y) const;

    AfeBudget budget_;
    double normalizer_ = 0.0;
    // Mellin nodes: s, weight, F(e^s) - [s < 0]
    std::vector<double> ms_, mw_, mf_;
    // Contour samples c(t) = Gamma ratio * pi^{-u} * F~(u) at u = 1 + i t, t = j * step >= 0
    std::vector<cplx> contour_;
    // Table
    double log_y0_ = 0.0, du_ = 0.0;
    std::vector<double> tF_, tdF_, tH_, tdH_;   // derivatives with respect to log y
};

// Process-wide kernels at the default budget, built on first use.
const AfeKernels& default_kernels();

double F(double x);
cplx mellin_F(cplx u);
double H(double y);

// Truncated expansion of L(1, m^2 - 4n), f <= f_cut and l <= l_cut.
double afe_L1(i64 m, i64 n, i64 f_cut, i64 l_cut);
double afe_L1(i64 m, i64 n, i64 f_cut, i64 l_cut, const AfeKernels& K);

}  // namespace ht
