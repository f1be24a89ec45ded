#include "hecketrace/charsum.hpp"

#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ht {

namespace {

void check_lf(i64 l, i64 f) {
    if (l < 1 || f < 1) throw std::invalid_argument("l and f must be positive");
}

int legendre_pow(i64 d, i64 p, int k) {
    if (k == 0) return 1;
    int s = kronecker(d, p);
    return (k % 2 == 0) ? s * s : s;
}

std::vector<cplx> unit_roots(i64 q) {
    std::vector<cplx> u(q);
    for (i64 j = 0; j < q; ++j) u[j] = e2pi(static_cast<double>(j) / q);
    return u;
}

i64 gcd0(i64 a, i64 b) { return std::gcd(std::llabs(a), std::llabs(b)); }

// Local weight at p for a residue mod local_modulus(p, k1, k2).
int local_weight(i64 p, int k1, int k2, i64 delta, i64 qp) {
    delta = mod_pos(delta, qp);
    i64 sq = ipow(p, 2 * k2);
    if (delta % sq) return 0;
    i64 d = delta / sq;
    if (p != 2) return legendre_pow(d, p, k1);
    i64 r = d % 4;
    if (r != 0 && r != 1) return 0;
    return legendre_pow(d, 2, k1);
}

}  // namespace

std::string to_string(CharSumMethod m) {
    switch (m) {
        case CharSumMethod::brute_force: return "brute_force";
        case CharSumMethod::local_closed_form: return "local_closed_form";
        case CharSumMethod::crt_product: return "crt_product";
    }
    return "unknown";
}

GcdSplit gcd_split(i64 alpha, i64 beta) {
    if (alpha == 0 && beta == 0) throw std::invalid_argument("gcd_split: both arguments zero");
    GcdSplit g;
    g.alpha = alpha;
    g.beta = beta;
    g.delta = gcd0(alpha, beta);
    g.alpha0 = alpha / g.delta;
    g.beta0 = beta / g.delta;
    return g;
}

int kl_weight(i64 l, i64 f, i64 delta) {
    check_lf(l, f);
    i64 q = kl_modulus(l, f);
    delta = mod_pos(delta, q);
    i64 f2 = f * f;
    if (delta % f2) return 0;
    i64 d = delta / f2;
    i64 r = d % 4;
    if (r != 0 && r != 1) return 0;
    return kronecker(d, l);
}

std::vector<int> kl_weight_table(i64 l, i64 f) {
    i64 q = kl_modulus(l, f);
    std::vector<int> t(q, 0);
    i64 f2 = f * f;
    for (i64 d = 0; d * f2 < q; ++d) {
        i64 r = d % 4;
        if (r == 0 || r == 1) t[d * f2] = kronecker(d, l);
    }
    return t;
}

KlProfile::KlProfile(i64 l, i64 f, i64 n) : q_(kl_modulus(l, f)) {
    check_lf(l, f);
    auto t = kl_weight_table(l, f);
    i64 n4 = mod_pos(4 * n, q_);
    for (i64 m = 0; m < q_; ++m) {
        int w = t[mod_pos(m * m % q_ - n4, q_)];
        if (w) support_.emplace_back(m, w);
    }
}

cplx KlProfile::operator()(i64 xi) const {
    i64 x = mod_pos(xi, q_);
    double re = 0.0, im = 0.0;
    for (auto [m, w] : support_) {
        cplx z = e2pi(static_cast<double>((m * x) % q_) / q_);
        re += w * z.real();
        im += w * z.imag();
    }
    return {re, im};
}

std::vector<i64> kl_coords(i64 l, i64 f, i64 xi, i64 n) {
    check_lf(l, f);
    i64 q = kl_modulus(l, f);
    auto t = kl_weight_table(l, f);
    std::vector<i64> c(q, 0);
    i64 x = mod_pos(xi, q), n4 = mod_pos(4 * n, q);
    for (i64 m = 0; m < q; ++m) {
        int w = t[mod_pos(m * m % q - n4, q)];
        if (w) c[(m * x) % q] += w;
    }
    return c;
}

cplx coords_value(const std::vector<i64>& coords) {
    i64 q = static_cast<i64>(coords.size());
    NeumaierSum re, im;
    for (i64 j = 0; j < q; ++j) {
        if (!coords[j]) continue;
        cplx z = e2pi(static_cast<double>(j) / q);
        re.add(coords[j] * z.real());
        im.add(coords[j] * z.imag());
    }
    return {re.value(), im.value()};
}

cplx kl_sum(i64 l, i64 f, i64 xi, i64 n) { return coords_value(kl_coords(l, f, xi, n)); }

std::vector<i64> omega_coords(i64 l, i64 f, i64 xi, i64 nu) {
    check_lf(l, f);
    i64 q = kl_modulus(l, f);
    auto t = kl_weight_table(l, f);
    std::vector<i64> c(q, 0);
    i64 x = mod_pos(xi, q), v = mod_pos(nu, q);
    for (i64 m = 0; m < q; ++m) {
        i64 m2 = m * m % q, mx = m * x % q;
        for (i64 b = 0; b < q; ++b) {
            int w = t[mod_pos(m2 - 4 * b, q)];
            if (w) c[(mx + b * v) % q] += w;
        }
    }
    return c;
}

cplx omega_bruteforce(i64 l, i64 f, i64 xi, i64 nu) {
    return coords_value(omega_coords(l, f, xi, nu));
}

OmegaRow::OmegaRow(i64 l, i64 f, i64 xi) : q_(kl_modulus(l, f)) {
    check_lf(l, f);
    auto t = kl_weight_table(l, f);
    unit_ = unit_roots(q_);
    row_.assign(q_, cplx(0.0, 0.0));
    i64 x = mod_pos(xi, q_);
    // Group m by (m^2, m xi) residues is not worth it; q^2 flat loop over the support.
    std::vector<std::pair<i64, i64>> mm;   // (m^2 mod q, m xi mod q)
    mm.reserve(q_);
    for (i64 m = 0; m < q_; ++m) mm.emplace_back(m * m % q_, m * x % q_);
    for (i64 b = 0; b < q_; ++b) {
        i64 b4 = 4 * b % q_;
        double re = 0.0, im = 0.0;
        for (auto [m2, mx] : mm) {
            i64 d = m2 - b4;
            if (d < 0) d += q_;
            int w = t[d];
            if (w) {
                re += w * unit_[mx].real();
                im += w * unit_[mx].imag();
            }
        }
        row_[b] = {re, im};
    }
}

cplx OmegaRow::omega(i64 nu) const {
    i64 v = mod_pos(nu, q_);
    cplx s = 0.0;
    for (i64 b = 0; b < q_; ++b) s += row_[b] * unit_[(b * v) % q_];
    return s;
}

cplx eta(i64 n) {
    static const cplx ipow4[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    cplx v = (cplx(1, 0) + ipow4[mod_pos(n, 4)]) / cplx(1, 1);
    return std::conj(v);
}

cplx gauss_quadratic(i64 p, int m, i64 alpha, i64 beta) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("gauss_quadratic: odd prime required");
    if (m == 0) return 1.0;
    i64 pm = ipow(p, m);
    alpha = mod_pos(alpha, pm);
    beta = mod_pos(beta, pm);
    int va = alpha ? std::min(vp(alpha, p), m) : m;
    int vb = beta ? std::min(vp(beta, p), m) : m;
    int v = std::min(va, vb);
    if (v >= m) return static_cast<double>(pm);
    if (vb > v) return 0.0;
    int j = m - v;
    i64 pj = ipow(p, j), pv = ipow(p, v);
    i64 a0 = mod_pos(alpha / pv, pj), b0 = mod_pos(beta / pv, pj);
    i64 binv = inv_mod(b0, pj);
    i64 r = static_cast<i64>(static_cast<__int128>(a0) * binv % pj);
    i64 ph = static_cast<i64>(static_cast<__int128>(b0) * r % pj * r % pj);
    double mag = std::pow(static_cast<double>(p), 0.5 * (m + v));
    int chi = legendre_pow(b0, p, j);
    return mag * chi * eta(pj) * e2pi(-static_cast<double>(ph) / pj);
}

cplx gauss_quadratic_brute(i64 p, int m, i64 alpha, i64 beta) {
    i64 pm = ipow(p, m);
    alpha = mod_pos(alpha, pm);
    beta = mod_pos(beta, pm);
    cplx s = 0.0;
    for (i64 a = 0; a < pm; ++a) {
        i64 ph = (beta * (a * a % pm) + 2 * a * alpha) % pm;
        s += e2pi(static_cast<double>(ph) / pm);
    }
    return s;
}

cplx twisted_sum(i64 p, int m, i64 beta) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("twisted_sum: odd prime required");
    if (m == 0) return 1.0;
    i64 pm = ipow(p, m);
    beta = mod_pos(beta, pm);
    int v = beta ? vp(beta, p) : m;
    double pd = static_cast<double>(p);
    if (m % 2 == 0) {
        if (v >= m) return static_cast<double>(pm - pm / p);
        if (v == m - 1) return -static_cast<double>(pm / p);
        return 0.0;
    }
    if (v != m - 1) return 0.0;
    i64 b0 = beta / (pm / p);
    return static_cast<double>(kronecker(b0, p)) * eta(p) * std::pow(pd, m - 0.5);
}

cplx twisted_sum_brute(i64 p, int m, i64 beta) {
    i64 pm = ipow(p, m);
    beta = mod_pos(beta, pm);
    cplx s = 0.0;
    for (i64 d = 0; d < pm; ++d) {
        int c = legendre_pow(d, p, m);
        if (c) s += static_cast<double>(c) * e2pi(static_cast<double>(d * beta % pm) / pm);
    }
    return s;
}

i64 local_modulus(i64 p, int k1, int k2) {
    i64 q = ipow(p, k1 + 2 * k2);
    return p == 2 ? 4 * q : q;
}

cplx omega_local_brute(i64 p, int k1, int k2, i64 alpha, i64 beta) {
    i64 q = local_modulus(p, k1, k2);
    alpha = mod_pos(alpha, q);
    beta = mod_pos(beta, q);
    std::vector<int> t(q);
    for (i64 d = 0; d < q; ++d) t[d] = local_weight(p, k1, k2, d, q);
    auto u = unit_roots(q);
    std::vector<i64> c(q, 0);
    for (i64 m = 0; m < q; ++m) {
        i64 m2 = m * m % q, ma = m * alpha % q;
        for (i64 b = 0; b < q; ++b) {
            int w = t[mod_pos(m2 - 4 * b, q)];
            if (w) c[(ma + b * beta) % q] += w;
        }
    }
    return coords_value(c);
}

cplx kl_local_brute(i64 p, int k1, int k2, i64 alpha, i64 n) {
    i64 q = local_modulus(p, k1, k2);
    alpha = mod_pos(alpha, q);
    std::vector<i64> c(q, 0);
    for (i64 m = 0; m < q; ++m) {
        int w = local_weight(p, k1, k2, m * m - 4 * n, q);
        if (w) c[m * alpha % q] += w;
    }
    return coords_value(c);
}

cplx omega_local_odd(i64 p, int k1, int k2, i64 alpha, i64 beta) {
    if (p == 2) throw std::invalid_argument("omega_local_odd: p must be odd");
    int K = k1 + 2 * k2;
    cplx g = gauss_quadratic(p, K, alpha, beta);
    if (g == cplx(0.0, 0.0)) return g;
    if (k1 == 0) return g;
    i64 pk = ipow(p, k1);
    i64 inv4 = inv_mod(4, pk);
    i64 b = mod_pos(-static_cast<i64>(static_cast<__int128>(inv4) * mod_pos(beta, pk) % pk), pk);
    return g * twisted_sum(p, k1, b);
}

cplx omega_local_two(int k1, int k2, i64 alpha, i64 beta) {
    return omega_local_brute(2, k1, k2, alpha, beta);
}

std::vector<LocalPart> local_parts(i64 l, i64 f) {
    check_lf(l, f);
    i64 q = kl_modulus(l, f);
    std::vector<LocalPart> parts;
    for (auto [p, e] : factorize(q)) {
        LocalPart lp;
        lp.p = p;
        lp.k1 = vp(l, p) == 0 ? 0 : vp(l, p);
        lp.k2 = f % p == 0 ? vp(f, p) : 0;
        lp.qp = local_modulus(p, lp.k1, lp.k2);
        lp.twist = inv_mod(mod_pos((q / lp.qp), lp.qp), lp.qp);
        (void)e;
        parts.push_back(lp);
    }
    return parts;
}

const std::vector<cplx>& OmegaCrt::two_row(int k1, int k2, i64 alpha) {
    auto key = std::make_tuple(k1, k2, alpha);
    auto it = rows_.find(key);
    if (it != rows_.end()) return it->second;
    i64 q = local_modulus(2, k1, k2);
    std::vector<int> t(q);
    for (i64 d = 0; d < q; ++d) t[d] = local_weight(2, k1, k2, d, q);
    auto u = unit_roots(q);
    std::vector<cplx> row(q);
    for (i64 b = 0; b < q; ++b) {
        cplx s = 0.0;
        for (i64 m = 0; m < q; ++m) {
            int w = t[mod_pos(m * m - 4 * b, q)];
            if (w) s += static_cast<double>(w) * u[m * alpha % q];
        }
        row[b] = s;
    }
    return rows_.emplace(key, std::move(row)).first->second;
}

cplx OmegaCrt::omega(i64 l, i64 f, i64 xi, i64 nu) {
    cplx v = 1.0;
    for (const auto& lp : local_parts(l, f)) {
        i64 a = static_cast<i64>(static_cast<__int128>(lp.twist) * mod_pos(xi, lp.qp) % lp.qp);
        i64 b = static_cast<i64>(static_cast<__int128>(lp.twist) * mod_pos(nu, lp.qp) % lp.qp);
        if (lp.p != 2) {
            v *= omega_local_odd(lp.p, lp.k1, lp.k2, a, b);
        } else {
            const auto& row = two_row(lp.k1, lp.k2, a);
            cplx s = 0.0;
            for (i64 j = 0; j < lp.qp; ++j)
                s += row[j] * e2pi(static_cast<double>(j * b % lp.qp) / lp.qp);
            v *= s;
        }
        if (v == cplx(0.0, 0.0)) break;
    }
    return v;
}

cplx omega_crt(i64 l, i64 f, i64 xi, i64 nu) {
    OmegaCrt ev;
    return ev.omega(l, f, xi, nu);
}

cplx kl_crt(i64 l, i64 f, i64 xi, i64 n) {
    cplx v = 1.0;
    for (const auto& lp : local_parts(l, f)) {
        i64 a = static_cast<i64>(static_cast<__int128>(lp.twist) * mod_pos(xi, lp.qp) % lp.qp);
        v *= kl_local_brute(lp.p, lp.k1, lp.k2, a, n);
    }
    return v;
}

KlBound kl_bound_predicate(i64 l, i64 f, i64 xi, i64 n) {
    check_lf(l, f);
    KlBound k;
    i64 f2 = f * f;
    i64 g = gcd0(n, f2);
    if (g == 0) g = f2;
    k.square_mod = square_mod_indicator(n, f2);
    auto rg = is_square(g);
    k.gcd_square = rg.has_value();
    i64 r = l / radical(l);
    k.divisible = k.gcd_square && (xi % (r * *rg) == 0);
    k.vanishes = !(k.square_mod && k.gcd_square && k.divisible);
    if (!k.vanishes) {
        i64 x = xi / *rg;
        i64 gl = gcd0(x, l);
        if (gl == 0) gl = l;
        k.bound = (1.0 + std::log(static_cast<double>(l * f2))) *
                  std::sqrt(static_cast<double>(l * g)) * std::sqrt(static_cast<double>(gl));
    }
    return k;
}

OmegaBound omega_bound_predicate(i64 l, i64 f, i64 xi, i64 nu) {
    check_lf(l, f);
    OmegaBound o;
    i64 lf2 = l * f * f;
    i64 g1 = nu == 0 ? lf2 : gcd0(lf2, nu);
    i64 g2 = nu == 0 ? l : gcd0(l, nu);
    o.rad_divides = (nu % (l / radical(l))) == 0;
    o.gcd_divides = (xi % g1) == 0;
    o.vanishes = !(o.rad_divides && o.gcd_divides);
    o.bound = (1.0 + std::log(static_cast<double>(l * f))) * static_cast<double>(l * f) *
              std::sqrt(static_cast<double>(g1) * static_cast<double>(g2));
    return o;
}

double KlZeroSeries::local(i64 p, int k1, int k2, i64 n) {
    i64 q = local_modulus(p, k1, k2);
    auto key = std::make_tuple(p, k1, k2, mod_pos(n, q));
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    i64 c = 0;
    for (i64 m = 0; m < q; ++m) c += local_weight(p, k1, k2, m * m - 4 * n, q);
    double v = static_cast<double>(c);
    memo_.emplace(key, v);
    return v;
}

double KlZeroSeries::kl_zero(i64 l, i64 f, i64 n) {
    check_lf(l, f);
    double v = 1.0;
    for (auto [p, e] : factorize(kl_modulus(l, f))) {
        (void)e;
        int k1 = l % p == 0 ? vp(l, p) : 0;
        int k2 = f % p == 0 ? vp(f, p) : 0;
        v *= local(p, k1, k2, n);
        if (v == 0.0) break;
    }
    return v;
}

double KlZeroSeries::partial_sum(i64 n, double z, i64 lmax, i64 fmax) {
    NeumaierSum s;
    for (i64 f = 1; f <= fmax; ++f)
        for (i64 l = 1; l <= lmax; ++l) {
            double k = kl_zero(l, f, n);
            if (k == 0.0) continue;
            s.add(k * std::pow(static_cast<double>(l), -z - 1.0) *
                  std::pow(static_cast<double>(f), -2.0 * z - 1.0));
        }
    return s.value();
}

double kl_zero_closed_form(i64 n, double z) {
    if (n < 1) throw std::invalid_argument("kl_zero_closed_form: n must be positive");
    double v = 4.0 * boost::math::zeta(2.0 * z) / boost::math::zeta(z + 1.0);
    for (auto [p, e] : factorize(n)) {
        double pz = std::pow(static_cast<double>(p), -z);
        v *= (1.0 - std::pow(pz, e + 1)) / (1.0 - pz);
    }
    return v;
}

}  // namespace ht
