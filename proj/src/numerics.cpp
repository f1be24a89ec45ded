#include "hecketrace/numerics.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <array>
#include <cmath>
#include <mutex>

namespace ht {

cplx e2pi(double x) {
    double r = x - std::floor(x);
    double a = 2.0 * kPi * r;
    return {std::cos(a), std::sin(a)};
}

void NeumaierSum::add(double x) {
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
}

namespace {

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Bernoulli numbers B_2 .. B_14
constexpr std::array<double, 7> kBern = {1.0 / 6.0,      -1.0 / 30.0, 1.0 / 42.0,
                                         -1.0 / 30.0,    5.0 / 66.0,  -691.0 / 2730.0,
                                         7.0 / 6.0};

template <int N>
GaussRule expand_rule() {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& a = G::abscissa();
    const auto& w = G::weights();
    GaussRule r;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] == 0.0) continue;
        r.nodes.push_back(-a[i]);
        r.weights.push_back(w[i]);
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        r.nodes.push_back(a[i]);
        r.weights.push_back(w[i]);
    }
    return r;
}

}  // namespace

cplx lgamma_complex(cplx z) {
    if (z.real() < 0.5) {
        return std::log(kPi) - std::log(std::sin(kPi * z)) - lgamma_complex(1.0 - z);
    }
    z -= 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
    cplx t = z + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double digamma_series(double x) {
    double inv2 = 1.0 / (x * x);
    double p = inv2;
    double s = std::log(x) - 0.5 / x;
    for (int r = 1; r <= 6; ++r) {
        s -= kBern[r - 1] / (2.0 * r) * p;
        p *= inv2;
    }
    return s;
}

double digamma_asymptotic(double x) {
    double shift = 0.0;
    while (x < 10.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    return digamma_series(x) + shift;
}

double digamma_asymptotic_bound(double x) {
    return std::fabs(kBern[6]) / (14.0 * std::pow(x, 14));
}

const GaussRule& gauss_legendre(int order) {
    static std::once_flag once;
    static GaussRule r10, r20, r30;
    std::call_once(once, [] {
        r10 = expand_rule<10>();
        r20 = expand_rule<20>();
        r30 = expand_rule<30>();
    });
    switch (order) {
        case 10: return r10;
        case 20: return r20;
        case 30: return r30;
        default: throw std::invalid_argument("gauss_legendre: order must be 10, 20 or 30");
    }
}

QuadNodes composite_nodes(const std::vector<double>& breaks, int order) {
    const GaussRule& g = gauss_legendre(order);
    QuadNodes q;
    if (breaks.size() < 2) return q;
    q.x.reserve((breaks.size() - 1) * g.nodes.size());
    q.w.reserve(q.x.capacity());
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        double a = breaks[i], b = breaks[i + 1];
        double h = 0.5 * (b - a), c = 0.5 * (a + b);
        for (std::size_t j = 0; j < g.nodes.size(); ++j) {
            q.x.push_back(c + h * g.nodes[j]);
            q.w.push_back(h * g.weights[j]);
        }
    }
    return q;
}

QuadNodes composite_uniform(double a, double b, int panels, int order) {
    std::vector<double> br(panels + 1);
    for (int i = 0; i <= panels; ++i) br[i] = a + (b - a) * double(i) / panels;
    br[panels] = b;
    return composite_nodes(br, order);
}

double integrate(const std::function<double(double)>& f, const QuadNodes& q) {
    double s = 0.0;
    for (std::size_t i = 0; i < q.x.size(); ++i) s += q.w[i] * f(q.x[i]);
    return s;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double* err_out) {
    double err = 0.0;
    double L1 = 0.0;
    double rel = rel_tol < 1e-15 ? 1e-15 : rel_tol;
    double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, rel,
                                                                           &err, &L1);
    if (err_out) *err_out = err;
    return v;
}

}  // namespace ht
