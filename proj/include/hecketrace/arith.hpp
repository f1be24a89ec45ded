#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ht {

using i64 = long;  // 64-bit on LP64; matches the gmpxx overload set

struct DiscriminantFactorization {
    i64 delta = 0;
    i64 fundamental = 0;
    i64 conductor = 1;
};

struct PAdicSplit {
    i64 base = 0;
    i64 prime = 0;
    int valuation = 0;
    i64 p_part = 1;
    i64 coprime_part = 0;
};

// Kronecker symbol (d/n) for all integers, with (d/0) = [d = +-1] and (d/-1) = sign(d).
int kronecker(i64 d, i64 n);

// Non-negative residue.
inline i64 mod_pos(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 inv_mod(i64 a, i64 m);
i64 ipow(i64 b, unsigned e);

int vp(i64 a, i64 p);
PAdicSplit padic_split(i64 a, i64 p);
i64 radical(i64 a);

// Trial division, ascending primes with multiplicity.
std::vector<std::pair<i64, int>> factorize(i64 n);
std::vector<i64> divisors(i64 n);
bool is_prime(i64 n);
std::vector<int> primes_below(int x);

std::optional<i64> is_square(i64 n);
bool square_mod_indicator(i64 n, i64 q);

bool is_discriminant(i64 delta);
bool is_fundamental(i64 d);
DiscriminantFactorization factor_discriminant(i64 delta);
std::vector<i64> conductor_divisors(i64 m, i64 n);

}  // namespace ht
