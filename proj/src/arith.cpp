#include "hecketrace/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ht {

namespace {

// (a/2) indexed by a mod 8
constexpr int kTab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};

i64 isqrt(i64 n) {
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

int kronecker(i64 a, i64 b) {
    if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a % 2 == 0) && (b % 2 == 0)) return 0;
    int k = 1;
    int v = 0;
    while (b % 2 == 0) {
        b /= 2;
        ++v;
    }
    if (v & 1) k = kTab2[mod_pos(a, 8)];
    if (b < 0) {
        b = -b;
        if (a < 0) k = -k;
    }
    // b odd positive: Jacobi symbol on a mod b
    a = mod_pos(a, b);
    while (a != 0) {
        v = 0;
        while (a % 2 == 0) {
            a /= 2;
            ++v;
        }
        if (v & 1) k *= kTab2[b & 7];
        if (a & b & 2) k = -k;
        i64 r = a;
        a = b % r;
        b = r;
    }
    return b == 1 ? k : 0;
}

i64 inv_mod(i64 a, i64 m) {
    if (m == 1) return 0;
    i64 g = m, x = 0, x1 = 1, r = mod_pos(a, m);
    while (r != 0) {
        i64 q = g / r;
        std::swap(g, r);
        r -= q * g;
        std::swap(x, x1);
        x1 -= q * x;
    }
    if (g != 1) throw std::domain_error("inv_mod: not invertible");
    return mod_pos(x, m);
}

i64 ipow(i64 b, unsigned e) {
    i64 r = 1;
    while (e--) r *= b;
    return r;
}

int vp(i64 a, i64 p) {
    if (a == 0) throw std::invalid_argument("vp: zero has infinite valuation");
    if (p < 2) throw std::invalid_argument("vp: p must be prime");
    int v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

PAdicSplit padic_split(i64 a, i64 p) {
    PAdicSplit s;
    s.base = a;
    s.prime = p;
    s.valuation = vp(a, p);
    s.p_part = ipow(p, s.valuation);
    s.coprime_part = a / s.p_part;
    return s;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be positive");
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

i64 radical(i64 a) {
    if (a < 1) throw std::invalid_argument("radical: a must be positive");
    i64 r = 1;
    for (auto [p, e] : factorize(a)) r *= p;
    return r;
}

std::vector<i64> divisors(i64 n) {
    if (n < 1) throw std::invalid_argument("divisors: n must be positive");
    std::vector<i64> small, large;
    for (i64 d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        small.push_back(d);
        if (d * d != n) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

std::vector<int> primes_below(int x) {
    std::vector<int> out;
    if (x <= 2) return out;
    std::vector<char> comp(x, 0);
    for (int i = 2; i < x; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (long long j = 1LL * i * i; j < x; j += i) comp[j] = 1;
    }
    return out;
}

std::optional<i64> is_square(i64 n) {
    if (n < 0) return std::nullopt;
    i64 r = isqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

bool square_mod_indicator(i64 n, i64 q) {
    if (q < 1) throw std::invalid_argument("square_mod_indicator: q must be positive");
    i64 t = mod_pos(n, q);
    for (i64 x = 0; x < q; ++x)
        if (static_cast<i64>((static_cast<__int128>(x) * x) % q) == t) return true;
    return false;
}

bool is_discriminant(i64 delta) {
    i64 r = mod_pos(delta, 4);
    return r == 0 || r == 1;
}

bool is_fundamental(i64 d) {
    auto squarefree = [](i64 m) {
        for (auto [p, e] : factorize(m < 0 ? -m : m))
            if (e > 1) return false;
        return true;
    };
    if (d == 0) return false;
    if (mod_pos(d, 4) == 1) return squarefree(d);
    if (mod_pos(d, 4) != 0) return false;
    i64 m = d / 4;
    i64 r = mod_pos(m, 4);
    return (r == 2 || r == 3) && squarefree(m);
}

DiscriminantFactorization factor_discriminant(i64 delta) {
    if (delta >= 0) throw std::invalid_argument("factor_discriminant: delta must be negative");
    if (!is_discriminant(delta))
        throw std::invalid_argument("factor_discriminant: delta must be 0 or 1 mod 4");
    i64 s0 = 1;
    for (auto [p, e] : factorize(-delta)) s0 *= ipow(p, e / 2);
    i64 d0 = delta / (s0 * s0);
    DiscriminantFactorization out;
    out.delta = delta;
    if (mod_pos(d0, 4) == 1) {
        out.fundamental = d0;
        out.conductor = s0;
    } else {
        out.fundamental = 4 * d0;
        out.conductor = s0 / 2;
    }
    return out;
}

std::vector<i64> conductor_divisors(i64 m, i64 n) {
    if (n < 1) throw std::invalid_argument("conductor_divisors: n must be positive");
    if (m * m >= 4 * n) throw std::invalid_argument("conductor_divisors: need m^2 < 4n");
    return divisors(factor_discriminant(m * m - 4 * n).conductor);
}

}  // namespace ht
