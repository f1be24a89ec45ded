#pragma once

#include "hecketrace/arith.hpp"
#include "hecketrace/classnum.hpp"

#include <gmpxx.h>

#include <memory>

namespace ht {

struct TraceDecomposition {
    int k = 12;
    i64 n = 1;
    mpq_class elliptic;               // unnormalized
    mpq_class hyperbolic_unipotent;   // unnormalized
    mpq_class identity;               // unnormalized
    mpz_class total_unnormalized;
    double total_normalized = 0.0;

    // Each unnormalized term divided by n^{(k-1)/2}.
    double elliptic_normalized() const;
    double hyperbolic_normalized() const;
    double identity_normalized() const;
};

struct EllipticWeight {
    i64 m = 0;
    i64 n = 1;
    int degree = 0;
    mpz_class value;
};

// -sin((k-1) arccos x) / pi on |x| < 1, zero elsewhere.
double theta_inf(double x, int k);

// P_j(m,n): P_0 = 1, P_1 = m, P_j = m P_{j-1} - n P_{j-2}.
EllipticWeight elliptic_weight_full(i64 m, i64 n, int degree);
mpz_class elliptic_weight(i64 m, i64 n, int k);   // P_{k-2}(m,n)

mpq_class elliptic_term_exact(i64 n, int k);
double elliptic_term_analytic(i64 n, int k, double tol = 1e-9);
mpq_class hyperbolic_unipotent_term(i64 n, int k);
mpq_class identity_term(i64 n, int k);
TraceDecomposition trace_hecke(i64 n, int k);

// n^{(k-1)/2} as a double
double trace_normalizer(i64 n, int k);

// Batch evaluator over 1 <= n <= nmax sharing one class-number table.
class TraceEngine {
public:
    TraceEngine(i64 nmax, int k);
    TraceEngine(std::shared_ptr<const ClassNumberTable> table, i64 nmax, int k);

    i64 nmax() const { return nmax_; }
    int k() const { return k_; }
    const ClassNumberTable& table() const { return *table_; }

    TraceDecomposition decompose(i64 n) const;

    // 12 * elliptic term (unnormalized), an integer.
    mpz_class elliptic12(i64 n) const;

private:
    std::shared_ptr<const ClassNumberTable> table_;
    i64 nmax_;
    int k_;
};

}  // namespace ht
