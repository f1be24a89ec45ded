#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ht {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Raised when a truncated expansion or quadrature cannot meet its tolerance.
class NonConvergence : public std::runtime_error {
public:
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

// e(x) = exp(2 pi i x)
cplx e2pi(double x);

// Neumaier compensated accumulator. Order of add() calls fixes the result.
class NeumaierSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }
    void reset() { sum_ = 0.0; comp_ = 0.0; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// log Gamma for complex arguments (principal branch, Lanczos g=7, n=9 with reflection).
cplx lgamma_complex(cplx z);

// Digamma through recurrence up to x >= 10 and the asymptotic series.
double digamma_asymptotic(double x);

// Asymptotic series alone (terms through B_12), no recurrence shift.
double digamma_series(double x);

// Error bound of digamma_series at x: first omitted term.
double digamma_asymptotic_bound(double x);

// Fixed-order Gauss–Legendre rule on [-1,1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_legendre(int order);

// Composite rule: the interval breaks are given explicitly, each panel gets `order` nodes.
struct QuadNodes {
    std::vector<double> x;
    std::vector<double> w;
};

QuadNodes composite_nodes(const std::vector<double>& breaks, int order);
QuadNodes composite_uniform(double a, double b, int panels, int order);

double integrate(const std::function<double(double)>& f, const QuadNodes& q);

// Adaptive Gauss–Kronrod on a finite interval; tolerance relative to the L1 norm.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double* err_out = nullptr);

}  // namespace ht
