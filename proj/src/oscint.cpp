#include "hecketrace/oscint.hpp"

#include "hecketrace/charsum.hpp"
#include "hecketrace/classnum.hpp"
#include "hecketrace/trace.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace ht {

namespace {

constexpr int kOrder = 20;

double panels_sum(const std::vector<double>& br, const std::function<double(double)>& g) {
    const GaussRule& r = gauss_legendre(kOrder);
    NeumaierSum s;
    for (size_t i = 0; i + 1 < br.size(); ++i) {
        double h = 0.5 * (br[i + 1] - br[i]);
        double c = 0.5 * (br[i + 1] + br[i]);
        double p = 0.0;
        for (int j = 0; j < kOrder; ++j) p += r.weights[j] * g(c + h * r.nodes[j]);
        s.add(h * p);
    }
    return s.value();
}

std::vector<double> halve(const std::vector<double>& br) {
    std::vector<double> out;
    out.reserve(2 * br.size());
    for (size_t i = 0; i + 1 < br.size(); ++i) {
        out.push_back(br[i]);
        out.push_back(0.5 * (br[i] + br[i + 1]));
    }
    out.push_back(br.back());
    return out;
}

void merge_breaks(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v)
        if (out.empty() || x - out.back() > 1e-12 * (1.0 + std::fabs(x))) out.push_back(x);
    v.swap(out);
}

// Coefficients of P_j, lowest degree first.
const std::vector<double>& bump_poly(int j) {
    static std::vector<std::vector<double>> cache{{1.0}};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= j) {
        int jj = static_cast<int>(cache.size()) - 1;
        const auto& P = cache.back();
        // Q = P' (1 - x^2) + 4 j x P ; P_next = Q (1 - x^2) - 2 x P
        std::vector<double> d(P.size() > 1 ? P.size() - 1 : 1, 0.0);
        for (size_t i = 1; i < P.size(); ++i) d[i - 1] = i * P[i];
        std::vector<double> Q(P.size() + 2, 0.0);
        for (size_t i = 0; i < d.size(); ++i) {
            Q[i] += d[i];
            Q[i + 2] -= d[i];
        }
        for (size_t i = 0; i < P.size(); ++i) Q[i + 1] += 4.0 * jj * P[i];
        std::vector<double> N(Q.size() + 2, 0.0);
        for (size_t i = 0; i < Q.size(); ++i) {
            N[i] += Q[i];
            N[i + 2] -= Q[i];
        }
        for (size_t i = 0; i < P.size(); ++i) N[i + 1] -= 2.0 * P[i];
        cache.push_back(std::move(N));
    }
    return cache[j];
}

double bump_mass() {
    static const double m = [] {
        auto g = [](double x) { return std::exp(-1.0 / (1.0 - x * x)); };
        std::vector<double> br;
        for (int i = 0; i <= 64; ++i) br.push_back(-1.0 + i / 32.0);
        return panels_sum(br, g);
    }();
    return m;
}

}  // namespace

double theta_integral(int k, bool weighted) {
    std::vector<double> br;
    int P = 16 + k;
    for (int i = 0; i <= P; ++i) br.push_back(kPi * i / P);
    return panels_sum(br, [&](double t) {
        double th = -std::sin((k - 1) * t) / kPi;
        return weighted ? th : th * std::sin(t);
    });
}

IntegralValue I_integral(i64 l, i64 f, i64 xi, double n, int k, const QuadratureSpec& spec,
                         const AfeKernels& K) {
    if (!(n > 0.0)) throw std::invalid_argument("I_integral: n must be positive");
    if (l < 1 || f < 1) throw std::invalid_argument("I_integral: l, f must be positive");
    IntegralValue r;
    const double lf2 = static_cast<double>(l * f * f);
    const double rn = std::sqrt(n);
    const double a = lf2 / (2.0 * rn);          // W argument is a / sin(phi)
    const double s0 = a / K.budget().y_max;     // W vanishes for sin(phi) < s0
    if (s0 >= 1.0) return r;
    const double phi0 = std::asin(s0);
    const double om = kPi * static_cast<double>(xi) * rn / lf2;
    const double half = 0.5 * kPi;

    std::vector<double> br;
    for (double b = phi0; b < kPi / 16; b *= 2.0) br.push_back(b);
    double osc = 1.0 + spec.oscillation_scaling * std::fabs(static_cast<double>(xi)) * rn / lf2;
    double want = std::ceil(spec.panel_count_base * osc) + k / 4;
    int P = static_cast<int>(std::min<double>(want, spec.max_panels));
    if (want > spec.max_panels) r.flagged = true;
    for (int i = 0; i <= P; ++i) br.push_back(phi0 + (half - phi0) * i / P);
    merge_breaks(br);

    auto g = [&](double t) {
        double st = std::sin(t);
        return -std::sin((k - 1) * t) * K.W(a / st) * std::cos(om * std::cos(t)) * st;
    };
    double v1 = 2.0 / kPi * panels_sum(br, g);
    r.panels = static_cast<int>(br.size()) - 1;
    r.value = v1;
    if (spec.estimate_error) {
        double v2 = 2.0 / kPi * panels_sum(halve(br), g);
        r.error = std::fabs(v2 - v1);
        r.value = v2;
        if (r.error > spec.abs_tol) r.flagged = true;
    }
    return r;
}

Mollifier::Mollifier(double Y, double delta, double amplitude)
    : Y_(Y), delta_(delta), s_(std::pow(Y, delta - 1.0)), amp_(amplitude) {
    if (!(Y >= 1.0)) throw std::invalid_argument("Mollifier: Y must be at least 1");
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("Mollifier: delta in (0,1]");
    if (s_ > 0.25) throw std::invalid_argument("Mollifier: Y^{delta-1} must not exceed 1/4");
}

double Mollifier::bump(double x) {
    if (std::fabs(x) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - x * x)) / bump_mass();
}

double Mollifier::bump_derivative(double x, int j) {
    if (j < 0) throw std::invalid_argument("bump_derivative: negative order");
    if (std::fabs(x) >= 1.0) return 0.0;
    const auto& P = bump_poly(j);
    double p = 0.0;
    for (size_t i = P.size(); i-- > 0;) p = p * x + P[i];
    double u = 1.0 - x * x;
    return p * std::exp(-1.0 / u - 2.0 * j * std::log(u)) / bump_mass();
}

double Mollifier::bump_cdf(double t) {
    if (t <= -1.0) return 0.0;
    if (t >= 1.0) return 1.0;
    if (t > 0.0) return 1.0 - bump_cdf(-t);
    std::vector<double> br;
    for (int i = 0; i <= 12; ++i) br.push_back(-1.0 + (t + 1.0) * i / 12);
    return panels_sum(br, bump);
}

double Mollifier::G(double x) const {
    if (amp_ == 0.0) return 0.0;
    if (x <= support_lo() || x >= support_hi()) return 0.0;
    return amp_ * (bump_cdf((x - 0.5) / s_) - bump_cdf((x - 1.0) / s_));
}

double Mollifier::derivative(double x, int j) const {
    if (j == 0) return G(x);
    double sc = amp_ * std::pow(s_, -j);
    return sc * (bump_derivative((x - 0.5) / s_, j - 1) - bump_derivative((x - 1.0) / s_, j - 1));
}

double Mollifier::sobolev_norm(int M) const {
    NeumaierSum tot;
    for (int j = 0; j <= M; ++j) {
        std::vector<double> br;
        auto collar = [&](double c) {
            for (int i = 0; i <= 96; ++i) br.push_back(c - s_ + 2.0 * s_ * i / 96);
        };
        collar(0.5);
        collar(1.0);
        if (j == 0) br.push_back(0.75);   // plateau panels [1/2+s, 3/4], [3/4, 1-s]
        merge_breaks(br);
        tot.add(panels_sum(br, [&](double x) { return std::fabs(derivative(x, j)); }));
    }
    return tot.value();
}

JSeries::JSeries(i64 l, i64 f, i64 xi, double X, const Mollifier& G, int k,
                 const QuadratureSpec& spec, i64 nu_max, int refine)
    : q_(kl_modulus(l, f)), nu_max_(std::max<i64>(nu_max, 1)) {
    double s = G.width();
    double lo = X * G.support_lo(), hi = X * G.support_hi();
    double p1 = X * (0.5 + s), p2 = X * (1.0 - s);
    double cyc = static_cast<double>(nu_max_) / q_;   // cycles per unit y
    auto seg = [&](double a, double b, int base) {
        int P = (base + static_cast<int>(std::ceil(cyc * (b - a)))) * refine;
        if (P > spec.max_panels) {
            P = spec.max_panels;
            flagged_ = true;
        }
        std::vector<double> v;
        for (int i = 0; i <= P; ++i) v.push_back(a + (b - a) * i / P);
        return v;
    };
    std::vector<double> br;
    for (auto v : {seg(lo, p1, 12), seg(p1, p2, 4), seg(p2, hi, 12)}) br.insert(br.end(), v.begin(), v.end());
    merge_breaks(br);
    QuadNodes qn = composite_nodes(br, kOrder);
    QuadratureSpec is = spec;
    is.estimate_error = false;
    y_.reserve(qn.x.size());
    wg_.reserve(qn.x.size());
    for (size_t i = 0; i < qn.x.size(); ++i) {
        double y = qn.x[i];
        double g = G.G(y / X);
        if (g == 0.0) continue;
        IntegralValue I = I_integral(l, f, xi, y, k, is);
        if (I.flagged) flagged_ = true;
        y_.push_back(y);
        wg_.push_back(qn.w[i] * std::sqrt(y) * g * I.value);
    }
}

cplx JSeries::operator()(i64 nu) const {
    if (std::llabs(nu) > nu_max_) throw std::out_of_range("JSeries: nu beyond resolved range");
    double re = 0.0, im = 0.0;
    for (size_t i = 0; i < y_.size(); ++i) {
        // e(-y nu / q), with y nu reduced mod q before scaling
        double t = std::fmod(y_[i] * static_cast<double>(nu), static_cast<double>(q_)) / q_;
        cplx z = e2pi(-t);
        re += wg_[i] * z.real();
        im += wg_[i] * z.imag();
    }
    return {re, im};
}

JValue J_integral(i64 l, i64 f, i64 xi, i64 nu, double X, const Mollifier& G, int k,
                  const QuadratureSpec& spec) {
    i64 V = std::max<i64>(std::llabs(nu), 1);
    JSeries a(l, f, xi, X, G, k, spec, V, 1);
    JValue r;
    r.value = a(nu);
    r.flagged = a.flagged();
    if (spec.estimate_error) {
        JSeries b(l, f, xi, X, G, k, spec, V, 2);
        cplx v2 = b(nu);
        r.error = std::abs(v2 - r.value);
        r.value = v2;
        r.flagged = r.flagged || b.flagged();
    }
    return r;
}

PoissonResult poisson_check(i64 n, int k, const PoissonCuts& cuts, const QuadratureSpec& spec) {
    if (n < 1) throw std::invalid_argument("poisson_check: n must be positive");
    if (k < 3 || k % 2) throw std::invalid_argument("poisson_check: even k >= 4 required");
    PoissonResult r;
    const double rn = std::sqrt(static_cast<double>(n));
    NeumaierSum lhs;
    for (i64 m = 0; m * m < 4 * n; ++m) {
        double t = theta_inf(m / (2.0 * rn), k) * weighted_L1(m, n);
        lhs.add(m == 0 ? t : 2.0 * t);
    }
    r.lhs = lhs.value();

    NeumaierSum rhs;
    double qerr = 0.0;
    for (i64 f = 1; f * f <= cuts.lf2_cut; ++f) {
        for (i64 l = 1; l * f * f <= cuts.lf2_cut; ++l) {
            double pre = 1.0 / (static_cast<double>(l) * l * f * f * f);
            if (l * f * f >= 2.0 * rn * default_kernels().budget().y_max) continue;
            KlProfile kl(l, f, n);
            if (kl.identically_zero()) continue;
            for (i64 xi = 0; xi <= cuts.xi_cut; ++xi) {
                double kr = kl(xi).real();
                if (kr == 0.0 && xi > 0) continue;
                IntegralValue I = I_integral(l, f, xi, static_cast<double>(n), k, spec);
                double mult = xi == 0 ? 1.0 : 2.0;   // xi and -xi
                rhs.add(pre * mult * kr * I.value);
                qerr += pre * mult * std::fabs(kr) * I.error;
                r.flagged = r.flagged || I.flagged;
            }
        }
    }
    r.rhs = 0.5 * rn * rhs.value();
    r.quad_error = 0.5 * rn * qerr;
    r.rel_err = std::fabs(r.rhs - r.lhs) / std::max(std::fabs(r.lhs), 1e-300);
    return r;
}

double tail_S0(i64 n, double kappa, const TailCuts& cuts, int k, const QuadratureSpec& spec) {
    if (n < 1) throw std::invalid_argument("tail_S0: n must be positive");
    const double rn = std::sqrt(static_cast<double>(n));
    const double thr = std::pow(static_cast<double>(n), 0.5 + kappa);
    NeumaierSum s;
    for (i64 f = 1; f * f <= cuts.lf2_cut; ++f) {
        for (i64 l = 1; l * f * f <= cuts.lf2_cut; ++l) {
            i64 lf2 = l * f * f;
            if (lf2 >= 2.0 * rn * default_kernels().budget().y_max) continue;
            i64 xi0 = static_cast<i64>(std::floor(thr / lf2)) + 1;
            if (xi0 > cuts.xi_cut) continue;
            KlProfile kl(l, f, n);
            if (kl.identically_zero()) continue;
            double pre = 2.0 / (static_cast<double>(l) * l * f * f * f);
            for (i64 xi = xi0; xi <= cuts.xi_cut; ++xi) {
                double kr = kl(xi).real();
                if (kr == 0.0) continue;
                s.add(pre * kr * I_integral(l, f, xi, static_cast<double>(n), k, spec).value);
            }
        }
    }
    return s.value();
}

CriticalRange critical_range(double X, const TailParams& tp) {
    CriticalRange cr;
    cr.lf2_lo = std::pow(X, 0.25 - tp.kappa);
    cr.lf2_hi = std::pow(X, 0.5 + tp.kappa);
    cr.lf2xi_hi = cr.lf2_hi;
    cr.xi_hi = std::pow(X, 1.0 / 6.0 + tp.kappa + tp.alpha);
    for (i64 f = 1; static_cast<double>(f * f) <= cr.lf2_hi; ++f)
        for (i64 l = 1; static_cast<double>(l * f * f) <= cr.lf2_hi; ++l)
            if (static_cast<double>(l * f * f) >= cr.lf2_lo && l * f * f <= cr.lf2xi_hi)
                cr.lf.emplace_back(l, f);
    return cr;
}

CriticalSumResult critical_sum(double X, const TailParams& tp, const Mollifier& G, int k,
                               const CriticalCuts& cuts, const QuadratureSpec& spec) {
    if (!tp.admissible()) throw std::invalid_argument("critical_sum: requires 2 kappa + alpha < 1/12");
    CriticalSumResult res;
    CriticalRange cr = critical_range(X, tp);
    auto xi_max = [&](i64 lf2) {
        double m = std::min(cr.xi_hi, cr.lf2xi_hi / static_cast<double>(lf2));
        return static_cast<i64>(std::floor(m + 1e-12));
    };
    QuadratureSpec is = spec;
    is.estimate_error = false;

    const i64 n_lo = static_cast<i64>(std::ceil(X * G.support_lo()));
    const i64 n_hi = static_cast<i64>(std::floor(X * G.support_hi()));

    std::vector<double> gn(n_hi - n_lo + 1);
    for (i64 n = n_lo; n <= n_hi; ++n) gn[n - n_lo] = G.G(static_cast<double>(n) / X);

    NeumaierSum direct, rearr, scale;
    double nu0 = 0.0;
    i64 nu_used = 0;
    for (auto [l, f] : cr.lf) {
        const i64 lf2 = l * f * f;
        const i64 q = kl_modulus(l, f);
        const i64 xm = xi_max(lf2);
        if (xm < 1) continue;
        const double pre = 1.0 / (static_cast<double>(l) * l * f * f * f);

        // Kl(xi, b) for b mod q
        std::vector<std::vector<double>> klre(xm + 1, std::vector<double>(q));
        for (i64 b = 0; b < q; ++b) {
            KlProfile kp(l, f, b);
            for (i64 xi = 1; xi <= xm; ++xi) klre[xi][b] = kp(xi).real();
        }
        for (i64 xi = 1; xi <= xm; ++xi) {
            ++res.triples;
            // direct: xi and -xi together give 2 Re Kl * I
            for (i64 n = n_lo; n <= n_hi; ++n) {
                double g = gn[n - n_lo];
                if (g == 0.0) continue;
                double kr = klre[xi][n % q];
                if (kr == 0.0) continue;
                double I = I_integral(l, f, xi, static_cast<double>(n), k, is).value;
                double t = 2.0 * pre * g * std::sqrt(static_cast<double>(n)) * kr * I;
                direct.add(t);
                scale.add(std::fabs(t));
            }
            // rearranged: 2 Re sum_nu omega(xi, nu) J(nu) / q
            OmegaRow om(l, f, xi);
            i64 V = cuts.nu_max;
            if (V == 0) V = 8 + static_cast<i64>(std::ceil(16.0 * q / (G.width() * X)));
            JSeries J(l, f, xi, X, G, k, spec, V);
            res.flagged = res.flagged || J.flagged();
            cplx j0 = J(0);
            cplx w0 = om.omega(0);
            nu0 += std::abs(w0 * j0) / q;
            cplx acc = w0 * j0 / static_cast<double>(q);
            int quiet = 0;
            i64 nu = 1;
            const double jscale = std::max(std::abs(j0), 1.0);
            for (; nu <= V; ++nu) {
                cplx jp = J(nu), jm = std::conj(jp);
                cplx t = (om.omega(nu) * jp + om.omega(-nu) * jm) / static_cast<double>(q);
                acc += t;
                double sz = std::abs(jp);
                quiet = (sz < cuts.nu_tol * jscale) ? quiet + 1 : 0;
                if (cuts.nu_max == 0 && quiet >= 4) break;
            }
            if (cuts.nu_max == 0 && quiet < 4) res.flagged = true;
            nu_used = std::max(nu_used, nu);
            rearr.add(2.0 * pre * acc.real());
        }
    }
    res.direct = direct.value();
    res.rearranged = rearr.value();
    res.nu_zero = nu0;
    res.scale = scale.value();
    res.nu_used = nu_used;
    double d = std::max(std::fabs(res.direct), std::fabs(res.rearranged));
    res.rel_diff = d > 0.0 ? std::fabs(res.direct - res.rearranged) / d : 0.0;
    return res;
}

}  // namespace ht
