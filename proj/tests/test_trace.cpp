#include "hecketrace/trace.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>

using namespace ht;

TEST_CASE("theta_inf examples") {
    CHECK(theta_inf(0.0, 12) == doctest::Approx(1.0 / M_PI).epsilon(1e-14));
    CHECK(theta_inf(1.0, 12) == 0.0);
    CHECK(theta_inf(-1.0, 12) == 0.0);
    CHECK(theta_inf(1.3, 12) == 0.0);
    CHECK(theta_inf(0.5, 12) == doctest::Approx(std::sqrt(3.0) / (2 * M_PI)).epsilon(1e-13));
}

TEST_CASE("theta_inf against the complex closed form") {
    // (i / 2pi) ((x + sqrt(x^2-1))^{k-1} - (x - sqrt(x^2-1))^{k-1})
    for (int k : {4, 12, 20}) {
        for (double x = -0.99; x < 1.0; x += 0.0137) {
            std::complex<double> r = std::sqrt(std::complex<double>(x * x - 1, 0));
            std::complex<double> v = std::complex<double>(0, 1) / (2 * M_PI) *
                                     (std::pow(x + r, k - 1) - std::pow(x - r, k - 1));
            CHECK(std::fabs(v.imag()) < 1e-12);
            CHECK(theta_inf(x, k) == doctest::Approx(v.real()).epsilon(1e-10));
        }
    }
}

TEST_CASE("elliptic_weight examples") {
    CHECK(elliptic_weight(0, 1, 12) == -1);
    CHECK(elliptic_weight(1, 2, 12) == 23);
    CHECK(elliptic_weight(2, 2, 12) == 32);
    EllipticWeight w = elliptic_weight_full(1, 2, 10);
    CHECK(w.degree == 10);
    CHECK(w.value == 23);
    std::vector<long> seq{1, 1, -1, -3, -1, 5, 7, -3, -17, -11, 23};
    for (int j = 0; j <= 10; ++j) CHECK(elliptic_weight_full(1, 2, j).value == seq[j]);
}

TEST_CASE("elliptic_weight is even in m for even k") {
    for (int k : {4, 12, 18, 26})
        for (long n = 1; n <= 40; ++n)
            for (long m = 0; m * m < 4 * n; ++m) REQUIRE(elliptic_weight(-m, n, k) == elliptic_weight(m, n, k));
}

TEST_CASE("elliptic_weight against the root formula") {
    for (long n = 1; n <= 20; ++n)
        for (long m = 0; m * m < 4 * n; ++m) {
            std::complex<double> s = std::sqrt(std::complex<double>(m * m - 4.0 * n, 0));
            std::complex<double> r = (double(m) + s) / 2.0, rb = (double(m) - s) / 2.0;
            std::complex<double> v = (std::pow(r, 11) - std::pow(rb, 11)) / (r - rb);
            CHECK(elliptic_weight(m, n, 12).get_d() == doctest::Approx(v.real()).epsilon(1e-9));
        }
}

TEST_CASE("elliptic_term_exact examples") {
    CHECK(elliptic_term_exact(1, 12) == mpq_class(7, 12));
    CHECK(elliptic_term_exact(2, 12) == -23);
    for (long n = 1; n <= 60; ++n) {
        mpq_class e = elliptic_term_exact(n, 12);
        // denominator divides 12: the value at n = 1 is already 7/12
        mpq_class twelve = e * 12;
        twelve.canonicalize();
        CHECK(twelve.get_den() == 1);
    }
}

TEST_CASE("elliptic_term_analytic examples") {
    CHECK(elliptic_term_analytic(1, 12) == doctest::Approx(7.0 / 12.0).epsilon(1e-10));
    CHECK(elliptic_term_analytic(2, 12) == doctest::Approx(-23.0 / std::pow(2.0, 5.5)).epsilon(1e-10));
    CHECK(elliptic_term_analytic(3, 12) ==
          doctest::Approx(elliptic_term_exact(3, 12).get_d() / std::pow(3.0, 5.5)).epsilon(1e-10));
}

TEST_CASE("hyperbolic_unipotent_term") {
    CHECK(hyperbolic_unipotent_term(2, 12) == -1);
    CHECK(hyperbolic_unipotent_term(1, 12) == mpq_class(-1, 2));
    for (long p : {3L, 5L, 7L, 101L}) {
        double norm = hyperbolic_unipotent_term(p, 12).get_d() / trace_normalizer(p, 12);
        CHECK(norm == doctest::Approx(-std::pow(p, -5.5)).epsilon(1e-13));
    }
    for (long n = 1; n <= 300; ++n) {
        mpq_class h = hyperbolic_unipotent_term(n, 12);
        // the unpaired divisor sqrt(n) makes it a half-integer exactly when sqrt(n) is odd
        auto r = is_square(n);
        bool half = h.get_den() == 2;
        CHECK(half == (r.has_value() && *r % 2 == 1));
    }
}

TEST_CASE("identity_term") {
    CHECK(identity_term(1, 12) == mpq_class(11, 12));
    CHECK(identity_term(2, 12) == 0);
    CHECK(identity_term(4, 12) == mpq_class(2816, 3));
}

TEST_CASE("trace_hecke examples") {
    CHECK(trace_hecke(1, 12).total_unnormalized == 1);
    CHECK(trace_hecke(2, 12).total_unnormalized == -24);
    CHECK(trace_hecke(3, 12).total_unnormalized == 252);
    TraceDecomposition t = trace_hecke(3, 13);
    CHECK(t.total_unnormalized == 0);
    CHECK(t.total_normalized == 0.0);
    TraceDecomposition u = trace_hecke(7, 12);
    CHECK(u.total_normalized == doctest::Approx(u.total_unnormalized.get_d() / std::pow(7.0, 5.5)));
    CHECK(u.elliptic + u.hyperbolic_unipotent + u.identity == u.total_unnormalized);
}

TEST_CASE("integrality over several weights") {
    for (int k : {12, 16, 18, 20, 22, 26}) {
        TraceEngine eng(2000, k);
        for (long n = 1; n <= 2000; ++n) REQUIRE_NOTHROW(eng.decompose(n));
    }
}

TEST_CASE("engine agrees with the direct evaluator") {
    for (int k : {12, 24}) {
        TraceEngine eng(150, k);
        for (long n = 1; n <= 150; ++n) {
            TraceDecomposition a = eng.decompose(n), b = trace_hecke(n, k);
            REQUIRE(a.total_unnormalized == b.total_unnormalized);
            CHECK(a.elliptic == b.elliptic);
            CHECK(eng.elliptic12(n) == b.elliptic * 12);
        }
    }
}

TEST_CASE("tau multiplicativity") {
    TraceEngine eng(2500, 12);
    for (long m = 1; m <= 50; ++m)
        for (long n = 1; n <= 50; ++n) {
            if (std::gcd(m, n) != 1) continue;
            REQUIRE(eng.decompose(m * n).total_unnormalized ==
                    eng.decompose(m).total_unnormalized * eng.decompose(n).total_unnormalized);
        }
    // Hecke relation at prime powers: tau(p^2) = tau(p)^2 - p^11
    for (long p : {2L, 3L, 5L, 7L}) {
        mpz_class t = eng.decompose(p).total_unnormalized;
        mpz_class p11;
        mpz_ui_pow_ui(p11.get_mpz_t(), p, 11);
        CHECK(eng.decompose(p * p).total_unnormalized == t * t - p11);
    }
}

TEST_CASE("weight 24 traces against dimension two") {
    // S_24 is spanned by two conjugate eigenforms; the trace of T(1) is 2
    CHECK(trace_hecke(1, 24).total_unnormalized == 2);
    CHECK(trace_hecke(2, 24).total_unnormalized == 1080);
}

TEST_CASE("weight below 3 is rejected") {
    CHECK_THROWS_AS(trace_hecke(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(trace_hecke(0, 12), std::invalid_argument);
}
