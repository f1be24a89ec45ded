#include "hecketrace/trace.hpp"

#include "hecketrace/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ht {

namespace {

void check_weight(int k) {
    if (k < 3) throw std::invalid_argument("weight k must be at least 3");
}

mpz_class to_mpz(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                              : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

mpz_class pow_mpz(i64 b, unsigned e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), e);
    return r;
}

}  // namespace

double TraceDecomposition::elliptic_normalized() const {
    return elliptic.get_d() / trace_normalizer(n, k);
}
double TraceDecomposition::hyperbolic_normalized() const {
    return hyperbolic_unipotent.get_d() / trace_normalizer(n, k);
}
double TraceDecomposition::identity_normalized() const {
    return identity.get_d() / trace_normalizer(n, k);
}

double trace_normalizer(i64 n, int k) {
    return std::pow(static_cast<double>(n), 0.5 * (k - 1));
}

double theta_inf(double x, int k) {
    if (!(std::fabs(x) < 1.0)) return 0.0;
    return -std::sin((k - 1) * std::acos(x)) / kPi;
}

EllipticWeight elliptic_weight_full(i64 m, i64 n, int degree) {
    EllipticWeight w;
    w.m = m;
    w.n = n;
    w.degree = degree;
    mpz_class prev = 1, cur = m;
    if (degree == 0) {
        w.value = 1;
        return w;
    }
    for (int j = 2; j <= degree; ++j) {
        mpz_class next = mpz_class(m) * cur - mpz_class(n) * prev;
        prev = cur;
        cur = next;
    }
    w.value = cur;
    return w;
}

mpz_class elliptic_weight(i64 m, i64 n, int k) {
    check_weight(k);
    return elliptic_weight_full(m, n, k - 2).value;
}

mpq_class elliptic_term_exact(i64 n, int k) {
    check_weight(k);
    if (n < 1) throw std::invalid_argument("elliptic_term_exact: n must be positive");
    mpq_class s = 0;
    for (i64 m = 0; m * m < 4 * n; ++m) {
        mpq_class t = mpq_class(elliptic_weight(m, n, k)) * hurwitz_sum(m, n);
        if (m > 0) t += mpq_class(elliptic_weight(-m, n, k)) * hurwitz_sum(-m, n);
        s += t;
    }
    s /= -2;
    s.canonicalize();
    return s;
}

double elliptic_term_analytic(i64 n, int k, double tol) {
    check_weight(k);
    if (n < 1) throw std::invalid_argument("elliptic_term_analytic: n must be positive");
    NeumaierSum s;
    double rn = 2.0 * std::sqrt(static_cast<double>(n));
    for (i64 m = 0; m * m < 4 * n; ++m) {
        double l = weighted_L1_lvalues(m, n, tol);
        double w = theta_inf(m / rn, k) * l;
        s.add(m == 0 ? w : 2.0 * w);  // L(1, m^2-4n) is even in m; so is theta_inf
    }
    return s.value();
}

mpq_class hyperbolic_unipotent_term(i64 n, int k) {
    check_weight(k);
    mpz_class s = 0;
    for (i64 d : divisors(n)) s += pow_mpz(std::min(d, n / d), k - 1);
    mpq_class v(-s, 2);
    v.canonicalize();
    return v;
}

mpq_class identity_term(i64 n, int k) {
    check_weight(k);
    auto r = is_square(n);
    if (!r) return 0;
    mpq_class v(pow_mpz(*r, k - 2) * (k - 1), 12);
    v.canonicalize();
    return v;
}

TraceDecomposition trace_hecke(i64 n, int k) {
    check_weight(k);
    if (n < 1) throw std::invalid_argument("trace_hecke: n must be positive");
    TraceDecomposition t;
    t.k = k;
    t.n = n;
    if (k % 2 != 0) {
        t.elliptic = 0;
        t.hyperbolic_unipotent = 0;
        t.identity = 0;
        t.total_unnormalized = 0;
        return t;
    }
    t.elliptic = elliptic_term_exact(n, k);
    t.hyperbolic_unipotent = hyperbolic_unipotent_term(n, k);
    t.identity = identity_term(n, k);
    mpq_class tot = t.elliptic + t.hyperbolic_unipotent + t.identity;
    tot.canonicalize();
    if (tot.get_den() != 1) throw std::logic_error("trace_hecke: non-integral trace");
    t.total_unnormalized = tot.get_num();
    t.total_normalized = t.total_unnormalized.get_d() / trace_normalizer(n, k);
    return t;
}

TraceEngine::TraceEngine(i64 nmax, int k)
    : TraceEngine(std::make_shared<ClassNumberTable>(4 * nmax), nmax, k) {}

TraceEngine::TraceEngine(std::shared_ptr<const ClassNumberTable> table, i64 nmax, int k)
    : table_(std::move(table)), nmax_(nmax), k_(k) {
    check_weight(k);
    if (table_->nmax() < 4 * nmax) throw std::invalid_argument("TraceEngine: table too small");
}

mpz_class TraceEngine::elliptic12(i64 n) const {
    if (n < 1 || n > nmax_) throw std::out_of_range("TraceEngine: n outside range");
    if (k_ % 2) return 0;
    const int deg = k_ - 2;
    // |P_{k-2}| <= (k-1) n^{(k-2)/2}; use 128-bit arithmetic when the whole sum fits.
    double hmax = 0.0;
    for (i64 m = 0; m * m < 4 * n; ++m)
        hmax = std::max(hmax, static_cast<double>(table_->hurwitz6(4 * n - m * m)));
    double rn = std::sqrt(static_cast<double>(n));
    double bound = 3.0 * k_ * std::pow(rn, deg) * hmax * (4.0 * rn + 2.0) * 16.0;
    if (bound < 1e37) {
        __int128 s = 0;
        for (i64 m = 0; m * m < 4 * n; ++m) {
            __int128 prev = 1, cur = m;
            if (deg == 0) cur = 1;
            for (int j = 2; j <= deg; ++j) {
                __int128 next = static_cast<__int128>(m) * cur - static_cast<__int128>(n) * prev;
                prev = cur;
                cur = next;
            }
            __int128 t = cur * table_->hurwitz6(4 * n - m * m);
            s += (m == 0) ? t : 2 * t;
        }
        return to_mpz(-s);
    }
    mpz_class s = 0;
    for (i64 m = 0; m * m < 4 * n; ++m) {
        mpz_class t = elliptic_weight_full(m, n, deg).value * table_->hurwitz6(4 * n - m * m);
        s += (m == 0) ? t : mpz_class(2 * t);
    }
    return -s;
}

TraceDecomposition TraceEngine::decompose(i64 n) const {
    TraceDecomposition t;
    t.k = k_;
    t.n = n;
    if (k_ % 2) {
        t.elliptic = t.hyperbolic_unipotent = t.identity = 0;
        t.total_unnormalized = 0;
        return t;
    }
    t.elliptic = mpq_class(elliptic12(n), 12);
    t.elliptic.canonicalize();
    t.hyperbolic_unipotent = hyperbolic_unipotent_term(n, k_);
    t.identity = identity_term(n, k_);
    mpq_class tot = t.elliptic + t.hyperbolic_unipotent + t.identity;
    tot.canonicalize();
    if (tot.get_den() != 1) throw std::logic_error("TraceEngine: non-integral trace");
    t.total_unnormalized = tot.get_num();
    t.total_normalized = t.total_unnormalized.get_d() / trace_normalizer(n, k_);
    return t;
}

}  // namespace ht
