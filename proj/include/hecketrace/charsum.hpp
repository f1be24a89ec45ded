#pragma once

#include "hecketrace/arith.hpp"
#include "hecketrace/numerics.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace ht {

enum class CharSumMethod { brute_force, local_closed_form, crt_product };
std::string to_string(CharSumMethod m);

struct CharSumValue {
    cplx value;
    CharSumMethod method = CharSumMethod::brute_force;
    i64 l = 1, f = 1;
    i64 a = 0;   // xi or alpha
    i64 b = 0;   // n, nu or beta
};

struct GcdSplit {
    i64 alpha = 0, beta = 0;
    i64 delta = 0;
    i64 alpha0 = 0, beta0 = 0;
};
GcdSplit gcd_split(i64 alpha, i64 beta);

inline i64 kl_modulus(i64 l, i64 f) { return 4 * l * f * f; }

// Weight of a residue Delta mod 4lf^2: [f^2 | Delta, Delta/f^2 = 0,1 mod 4] * (Delta/f^2 | l).
int kl_weight(i64 l, i64 f, i64 delta);

std::vector<int> kl_weight_table(i64 l, i64 f);

// Fixed (l, f, n): weights w[m] = T(m^2 - 4n), then Kl(xi) for any xi in O(q).
class KlProfile {
public:
    KlProfile(i64 l, i64 f, i64 n);
    i64 modulus() const { return q_; }
    cplx operator()(i64 xi) const;
    bool identically_zero() const { return support_.empty(); }

private:
    i64 q_;
    std::vector<std::pair<i64, int>> support_;   // (m, weight), weight != 0
};

// Kl_{l,f}(xi, n) as integer coordinates on e(j / 4lf^2), j = 0..q-1.
std::vector<i64> kl_coords(i64 l, i64 f, i64 xi, i64 n);
cplx kl_sum(i64 l, i64 f, i64 xi, i64 n);

// omega_{l,f}(xi, nu) = sum_b Kl_{l,f}(xi, b) e(b nu / 4lf^2)
std::vector<i64> omega_coords(i64 l, i64 f, i64 xi, i64 nu);
cplx omega_bruteforce(i64 l, i64 f, i64 xi, i64 nu);
cplx coords_value(const std::vector<i64>& coords);

// All Kl(xi, b) for b mod q, then omega for any nu in O(q).
class OmegaRow {
public:
    OmegaRow(i64 l, i64 f, i64 xi);
    i64 modulus() const { return q_; }
    cplx kl(i64 b) const { return row_[mod_pos(b, q_)]; }
    cplx omega(i64 nu) const;

private:
    i64 q_;
    std::vector<cplx> row_;
    std::vector<cplx> unit_;
};

cplx eta(i64 n);
cplx gauss_quadratic(i64 p, int m, i64 alpha, i64 beta);
cplx gauss_quadratic_brute(i64 p, int m, i64 alpha, i64 beta);
cplx twisted_sum(i64 p, int m, i64 beta);
cplx twisted_sum_brute(i64 p, int m, i64 beta);

// Local factor at p with l = p^k1, f = p^k2; modulus p^{k1+2k2}, or 2^{k1+2k2+2} at p = 2.
i64 local_modulus(i64 p, int k1, int k2);
cplx omega_local_brute(i64 p, int k1, int k2, i64 alpha, i64 beta);
cplx kl_local_brute(i64 p, int k1, int k2, i64 alpha, i64 n);
cplx omega_local_odd(i64 p, int k1, int k2, i64 alpha, i64 beta);
cplx omega_local_two(int k1, int k2, i64 alpha, i64 beta);

// CRT twist: the unit c_p = (q / q_p)^{-1} mod q_p for q = 4lf^2.
struct LocalPart {
    i64 p;
    int k1, k2;
    i64 qp;
    i64 twist;
};
std::vector<LocalPart> local_parts(i64 l, i64 f);

// Product of local factors; odd primes through the closed form, p = 2 by brute force
// with cached Kl rows.
class OmegaCrt {
public:
    cplx omega(i64 l, i64 f, i64 xi, i64 nu);

private:
    const std::vector<cplx>& two_row(int k1, int k2, i64 alpha);
    std::map<std::tuple<int, int, i64>, std::vector<cplx>> rows_;
};

cplx omega_crt(i64 l, i64 f, i64 xi, i64 nu);

// Kl as a product of brute-force local factors.
cplx kl_crt(i64 l, i64 f, i64 xi, i64 n);

struct KlBound {
    bool square_mod = true;    // n is a square mod f^2
    bool gcd_square = true;    // gcd(n, f^2) is a perfect square
    bool divisible = true;     // (l / rad l) sqrt(gcd(n, f^2)) divides xi
    bool vanishes = false;     // any of the above fails
    double bound = 0.0;        // (1 + log lf^2) sqrt(l g) sqrt(gcd(xi / sqrt g, l))
};
KlBound kl_bound_predicate(i64 l, i64 f, i64 xi, i64 n);

struct OmegaBound {
    bool rad_divides = true;   // (l / rad l) | nu
    bool gcd_divides = true;   // gcd(lf^2, nu) | xi
    bool vanishes = false;
    double bound = 0.0;        // (1 + log lf) lf sqrt(gcd(lf^2, nu) gcd(l, nu))
};
OmegaBound omega_bound_predicate(i64 l, i64 f, i64 xi, i64 nu);

// sum_{l <= lmax, f <= fmax} (lf^2)^{-(z+1/2)} Kl_{l,f}(0,n) / sqrt(l), local factors memoized.
class KlZeroSeries {
public:
    double partial_sum(i64 n, double z, i64 lmax, i64 fmax);
    double kl_zero(i64 l, i64 f, i64 n);

private:
    double local(i64 p, int k1, int k2, i64 n);
    std::map<std::tuple<i64, int, int, i64>, double> memo_;
};

// 4 zeta(2z) / zeta(z+1) * prod_{p | n} (1 - p^{-z(v_p(n)+1)}) / (1 - p^{-z})
double kl_zero_closed_form(i64 n, double z);

}  // namespace ht
