#pragma once

#include "hecketrace/arith.hpp"
#include "hecketrace/numerics.hpp"
#include "hecketrace/trace.hpp"

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

namespace ht {

enum class TermSelector { elliptic, hyperbolic_unipotent, identity, total };
std::string to_string(TermSelector s);
TermSelector parse_selector(const std::string& s);

// Normalized trace-formula terms for 1 <= n <= nmax, computed once.
class TraceSeries {
public:
    TraceSeries(int k, i64 nmax);
    TraceSeries(int k, i64 nmax, std::shared_ptr<const ClassNumberTable> table);

    int k() const { return k_; }
    i64 nmax() const { return nmax_; }
    double term(i64 n, TermSelector s) const;
    const mpz_class& total_exact(i64 n) const { return exact_.at(n); }

private:
    int k_;
    i64 nmax_;
    std::vector<double> ell_, hyp_, id_, tot_;
    std::vector<mpz_class> exact_;
};

struct AverageSeries {
    int k = 12;
    TermSelector selector = TermSelector::total;
    std::vector<double> grid;
    std::vector<double> partial_sums;   // sum_{n < X}
    std::vector<double> averages;       // partial_sums / X
};

// Same layout; partial sums over primes p < X weighted by log p.
struct PrimeAverageSeries : AverageSeries {};

// Ascending n, compensated; a grid point X sums all n < X.
AverageSeries term_average(const TraceSeries& ts, const std::vector<double>& grid, TermSelector s);
AverageSeries term_average(int k, double X, TermSelector s);
PrimeAverageSeries prime_average(const TraceSeries& ts, const std::vector<double>& grid,
                                 TermSelector s);
PrimeAverageSeries prime_average(int k, double X, TermSelector s);

// Limit of the term average as X grows.
double limit_average(int k, TermSelector s);

struct MainTheoremRow {
    double X = 0.0;
    double abs_sum = 0.0;
    double ratio = 0.0;   // abs_sum / X^{31/32}
};
std::vector<MainTheoremRow> main_theorem_check(const TraceSeries& ts, const std::vector<double>& grid);
std::vector<MainTheoremRow> main_theorem_check(int k, const std::vector<double>& grid);

struct HyperbolicCheck {
    double X = 0.0;
    double lhs = 0.0;       // sum_{n < X} normalized hyperbolic + unipotent term
    double model = 0.0;     // X / (1 - k)
    double residual = 0.0;
    double fitted_C = 0.0;  // |residual| / sqrt(X)
};
HyperbolicCheck hyperbolic_asymptotic_check(int k, double X);

// sum_{n = N0}^{N1} tau(n) n^{-s}; empty when N1 < N0.
cplx lseries_partial_sums(cplx s, i64 N0, i64 N1);
cplx lseries_partial_sums(const TraceSeries& ts, cplx s, i64 N0, i64 N1);

// Identity-term partial sum bound (k-1)/12 (1 + ln X).
double identity_partial_bound(int k, double X);

}  // namespace ht
