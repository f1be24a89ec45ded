#include "hecketrace/classnum.hpp"
#include "hecketrace/numerics.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

using namespace ht;

TEST_CASE("class_number examples") {
    CHECK(class_number(-3) == 1);
    CHECK(class_number(-4) == 1);
    CHECK(class_number(-23) == 3);
    CHECK_THROWS_AS(class_number(-5), std::invalid_argument);
    CHECK_THROWS_AS(class_number(4), std::invalid_argument);
}

TEST_CASE("reduced forms of -23") {
    std::vector<ReducedForm> want{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}};
    CHECK(reduced_forms(-23) == want);
}

TEST_CASE("reduced forms satisfy the reduction conditions") {
    for (long N = 3; N <= 600; ++N) {
        if (!is_discriminant(-N)) continue;
        for (const auto& r : reduced_forms(-N)) {
            REQUIRE(r.b * r.b - 4 * r.a * r.c == -N);
            CHECK(std::labs(r.b) <= r.a);
            CHECK(r.a <= r.c);
            if (std::labs(r.b) == r.a || r.a == r.c) CHECK(r.b >= 0);
        }
    }
}

TEST_CASE("class numbers against the direct count") {
    for (long N = 3; N <= 3000; ++N) {
        if (!is_discriminant(-N)) continue;
        REQUIRE(class_number(-N) == oracle::class_number_count(-N));
    }
}

TEST_CASE("weighted class numbers") {
    CHECK(weighted_class_number(-3) == mpq_class(1, 3));
    CHECK(weighted_class_number(-4) == mpq_class(1, 2));
    CHECK(weighted_class_number(-23) == 3);
    auto w = weighted_class_data(-12);
    CHECK(w.h == 1);
    CHECK(w.h_w == 1);
}

TEST_CASE("hurwitz_sum examples") {
    CHECK(hurwitz_sum(1, 1) == mpq_class(1, 3));
    CHECK(hurwitz_sum(0, 1) == mpq_class(1, 2));
    CHECK(hurwitz_sum(0, 3) == mpq_class(4, 3));
    CHECK(hurwitz_sum(0, 4) == mpq_class(3, 2));
    CHECK_THROWS_AS(hurwitz_sum(2, 1), std::invalid_argument);
}

TEST_CASE("dirichlet_L1 examples") {
    CHECK(dirichlet_L1(-4) == doctest::Approx(M_PI / 4).epsilon(1e-12));
    CHECK(dirichlet_L1(-3) == doctest::Approx(M_PI / (3 * std::sqrt(3.0))).epsilon(1e-12));
    CHECK(dirichlet_L1(-8) == doctest::Approx(M_PI / (2 * std::sqrt(2.0))).epsilon(1e-12));
    // Leibniz series oracle at -4
    double s = 0.0;
    for (long j = 200000; j >= 0; --j) s += (j % 2 ? -1.0 : 1.0) / (2 * j + 1);
    CHECK(std::fabs(dirichlet_L1(-4) - s) < 1e-5);
}

TEST_CASE("class number formula for fundamental discriminants") {
    for (long N = 3; N <= 500; ++N) {
        if (!is_fundamental(-N)) continue;
        REQUIRE(std::fabs(dirichlet_L1(-N) - oracle::L1_class_formula(-N)) <= 1e-6);
    }
}

TEST_CASE("dirichlet_L1 signals a short truncation") {
    CHECK_THROWS_AS(dirichlet_L1(-9999, 1, 1e-15), NonConvergence);
}

TEST_CASE("weighted_L1 examples") {
    CHECK(weighted_L1(1, 1) == doctest::Approx(M_PI / (3 * std::sqrt(3.0))).epsilon(1e-14));
    CHECK(weighted_L1(0, 1) == doctest::Approx(M_PI / 4).epsilon(1e-14));
    CHECK(weighted_L1(0, 4) == doctest::Approx(3 * M_PI / 8).epsilon(1e-14));
}

TEST_CASE("weighted_L1: both routes agree") {
    double worst = 0.0;
    for (long n = 1; 4 * n <= 400; ++n)
        for (long m = 0; m * m < 4 * n; ++m) {
            double a = weighted_L1(m, n), b = weighted_L1_lvalues(m, n);
            worst = std::max(worst, std::fabs(a - b) / a);
        }
    CHECK(worst <= 1e-6);
}

TEST_CASE("conductor sum: product formula over the conductor") {
    // sum_{f | s} h_w(D s^2 / f^2) = h_w(D) sum_{f | s} f prod_{p | f} (1 - (D/p)/p)
    for (long D : {-3L, -4L, -7L, -8L, -15L, -20L, -23L, -24L}) {
        for (long s = 1; s <= 30; ++s) {
            mpq_class lhs = 0;
            for (i64 f : divisors(s)) lhs += weighted_class_number(D * (s / f) * (s / f));
            mpq_class rhs = 0;
            for (i64 f : divisors(s)) {
                mpq_class t = f;
                for (auto [p, e] : factorize(f)) t *= mpq_class(p - kronecker(D, p), p);
                rhs += t;
            }
            rhs *= weighted_class_number(D);
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("ClassNumberTable matches per-discriminant calls and the all-forms count") {
    ClassNumberTable t(2000);
    auto all = ClassNumberTable::hurwitz6_by_all_forms(2000);
    for (long N = 3; N <= 2000; ++N) {
        bool disc = is_discriminant(-N);
        REQUIRE(t.class_number(N) == (disc ? class_number(-N) : 0));
        REQUIRE(t.hurwitz6(N) == all[N]);
    }
    CHECK(t.hurwitz(3) == mpq_class(1, 3));
    CHECK(t.hurwitz(12) == mpq_class(4, 3));
}

TEST_CASE("ClassNumberTable csv round trip") {
    ClassNumberTable t(300);
    auto path = (std::filesystem::temp_directory_path() / "hecketrace_classnum.csv").string();
    t.save_csv(path);
    ClassNumberTable u = ClassNumberTable::load_csv(path);
    CHECK(u.nmax() == 300);
    for (long N = 3; N <= 300; ++N) CHECK(u.hurwitz6(N) == t.hurwitz6(N));
    std::remove(path.c_str());
}
