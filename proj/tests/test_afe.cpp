#include "hecketrace/afe.hpp"
#include "hecketrace/classnum.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>

using namespace ht;

namespace {

// F~(u) = K_u(2) / (u K_0(2)) for real u != 0, by parts from the defining integral.
double mellin_bessel(double u) {
    return boost::math::cyl_bessel_k(u, 2.0) / (u * boost::math::cyl_bessel_k(0, 2.0));
}

// F(x) by direct quadrature in t = log y.
double F_oracle(double x) {
    double num = oracle::gk_integral([](double t) { return std::exp(-std::exp(t) - std::exp(-t)); },
                                     std::log(x), 6.0);
    return num / (2.0 * oracle::bessel_K0(2.0));
}

}  // namespace

TEST_CASE("normalizer is 2 K0(2)") {
    CHECK(default_kernels().normalizer() == doctest::Approx(2.0 * oracle::bessel_K0(2.0)).epsilon(1e-13));
}

TEST_CASE("F examples") {
    CHECK(std::fabs(F(0.0) - 1.0) <= 1e-10);
    CHECK(F(20.0) <= 1e-8);
    double a = default_kernels().F_direct(1.0);
    CHECK(a > 0.0);
    CHECK(a < 1.0);
    CHECK(std::fabs(a - F_oracle(1.0)) <= 1e-10);
    AfeKernels again;
    CHECK(again.F_direct(1.0) == a);
}

TEST_CASE("F tabulated against quadrature") {
    for (double x = 1e-3; x < 30.0; x *= 1.37) {
        CHECK(std::fabs(default_kernels().F_direct(x) - F_oracle(x)) <= 1e-10);
        CHECK(std::fabs(F(x) - F_oracle(x)) <= 1e-9);
    }
}

TEST_CASE("F is non-increasing and decays fast") {
    double prev = 1.0;
    for (double x = 0.0; x < 40.0; x += 0.01) {
        double v = F(x);
        CHECK(v <= prev + 1e-14);
        CHECK(v >= -1e-14);
        prev = v;
    }
    // integrand below e^{-y} / x on [x, inf)
    double nz = default_kernels().normalizer();
    for (double x = 1.0; x < 40.0; x += 1.5) CHECK(F(x) <= std::exp(-x) / (x * nz) * (1 + 1e-9) + 1e-16);
}

TEST_CASE("mellin_F examples") {
    CHECK(std::abs(mellin_F(0.5) + mellin_F(-0.5)) <= 1e-6);
    CHECK(std::abs(1e-3 * mellin_F(1e-3) - 1.0) <= 1e-2);
    CHECK(std::abs(mellin_F(cplx(6.0, 40.0))) <= 1e-6);
    CHECK(std::abs(mellin_F(cplx(6.0, -40.0))) <= 1e-6);
    CHECK_THROWS_AS(mellin_F(cplx(1e-7, 0.0)), std::domain_error);
}

TEST_CASE("mellin_F against the Bessel closed form") {
    for (double u : {-3.0, -1.5, -0.5, -0.01, 0.01, 0.3, 1.0, 2.0, 4.0}) {
        cplx v = mellin_F(u);
        CHECK(std::fabs(v.real() - mellin_bessel(u)) <= 1e-9 * std::max(1.0, std::fabs(mellin_bessel(u))));
        CHECK(std::fabs(v.imag()) <= 1e-12);
    }
}

TEST_CASE("mellin_F is odd on a complex grid") {
    for (double s = -2.0; s <= 2.0; s += 0.5)
        for (double t = -10.0; t <= 10.0; t += 2.5) {
            cplx u(s, t);
            if (std::abs(u) < 0.1) continue;
            CHECK(std::abs(mellin_F(u) + mellin_F(-u)) <= 1e-9);
        }
}

TEST_CASE("mellin_F off the real axis against quadrature") {
    const double K0 = oracle::bessel_K0(2.0);
    for (cplx u : {cplx(1.0, 3.0), cplx(0.5, -7.0), cplx(2.0, 12.0)}) {
        // F~(u) = (1 / (2 K0(2) u)) int e^{-x-1/x} x^{u-1} dx, in t = log x
        auto part = [&](bool im) {
            return oracle::gk_integral(
                [&](double t) {
                    cplx z = std::exp(u * t) * std::exp(-std::exp(t) - std::exp(-t));
                    return im ? z.imag() : z.real();
                },
                -7.0, 7.0, 1e-14);
        };
        cplx want = cplx(part(false), part(true)) / (2.0 * K0 * u);
        CHECK(std::abs(mellin_F(u) - want) <= 1e-9);
    }
}

TEST_CASE("H decays and is stable in the truncation") {
    CHECK(std::fabs(H(50.0)) <= 1e-6);
    const AfeKernels& K = default_kernels();
    double tm = K.budget().t_max, ts = K.budget().t_step;
    for (double y = 0.05; y <= 10.0; y *= 1.25) {
        double a = K.H_direct(y, tm, ts).value, b = K.H_direct(y, 2 * tm, ts).value;
        CHECK(std::fabs(a - b) <= 1e-7);
    }
    CHECK(std::fabs(K.H_direct(1.0, tm, ts).value - K.H_direct(1.0, 2 * tm, ts).value) <= 1e-7);
}

TEST_CASE("H is insensitive to the contour step") {
    const AfeKernels& K = default_kernels();
    for (double y : {0.5, 1.0, 2.0}) {
        KernelValue a = K.H_direct(y), b = K.H_direct(y, K.budget().t_max, K.budget().t_step / 2);
        CHECK(std::fabs(a.value - b.value) <= 1e-10);
        CHECK(std::isfinite(a.value));
    }
}

TEST_CASE("tabulated H matches direct evaluation") {
    const AfeKernels& K = default_kernels();
    for (double y = 1e-3; y < 60.0; y *= 1.11) CHECK(std::fabs(K.H(y) - K.H_direct(y).value) <= 1e-8);
}

TEST_CASE("afe_L1 examples") {
    const long big = 1L << 30;
    CHECK(std::fabs(afe_L1(1, 1, big, big) - M_PI / (3 * std::sqrt(3.0))) <= 1e-4);
    CHECK(std::fabs(afe_L1(0, 1, big, big) - M_PI / 4) <= 1e-4);
    CHECK(std::fabs(afe_L1(5, 7, big, big) - weighted_L1(5, 7)) <= 1e-4);
    CHECK_THROWS_AS(afe_L1(2, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("afe_L1 agreement on a block") {
    double worst = 0.0;
    for (long n = 1; 4 * n <= 400; ++n)
        for (long m = 0; m * m < 4 * n; ++m) {
            long cut = static_cast<long>(std::ceil(50.0 * std::sqrt(4.0 * n - m * m)));
            double a = afe_L1(m, n, cut, cut), e = weighted_L1(m, n);
            worst = std::max(worst, std::fabs(a - e) / e);
        }
    CHECK(worst <= 1e-4);
}

TEST_CASE("kernel csv round trip") {
    auto path = (std::filesystem::temp_directory_path() / "hecketrace_kernels.csv").string();
    default_kernels().save_csv(path);
    AfeKernels K = AfeKernels::load_csv(path, AfeBudget{});
    for (double y : {0.01, 0.3, 1.0, 7.0}) {
        CHECK(K.F(y) == doctest::Approx(F(y)).epsilon(1e-14));
        CHECK(K.H(y) == doctest::Approx(H(y)).epsilon(1e-12));
    }
    AfeBudget other;
    other.t_max = 50.0;
    CHECK_THROWS(AfeKernels::load_csv(path, other));
    std::remove(path.c_str());
}
