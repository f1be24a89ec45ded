#pragma once

#include "hecketrace/arith.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ht {

struct ReducedForm {
    i64 a = 0, b = 0, c = 0;
    bool operator==(const ReducedForm&) const = default;
};

struct WeightedClassData {
    i64 delta = 0;
    i64 h = 0;
    mpq_class h_w;
};

// Primitive reduced forms of discriminant delta, sorted by (a, b).
std::vector<ReducedForm> reduced_forms(i64 delta);

i64 class_number(i64 delta);
mpq_class weighted_class_number(i64 delta);
WeightedClassData weighted_class_data(i64 delta);

// Sum of h_w over the orders containing Z[(m + sqrt(m^2-4n))/2].
mpq_class hurwitz_sum(i64 m, i64 n);

// L(1, chi_delta) for the order of discriminant delta. `truncation` is the number of
// explicit terms; the rest comes from a digamma tail whose error must stay below tol.
double dirichlet_L1(i64 delta, i64 truncation, double tol = 1e-9);

// Default truncation: 8 full periods of the fundamental character.
double dirichlet_L1(i64 delta);

// Sum over f | s of L(1, chi_{delta/f^2}) / f, for delta = m^2 - 4n.
double weighted_L1(i64 m, i64 n);               // class-number route
double weighted_L1_lvalues(i64 m, i64 n, double tol = 1e-9);  // L-value route

// Batch table of class numbers for all discriminants -N with 3 <= N <= nmax.
// H6[N] = 6 * hurwitz_sum for discriminant -N, an integer.
class ClassNumberTable {
public:
    explicit ClassNumberTable(i64 nmax);

    i64 nmax() const { return nmax_; }
    i64 class_number(i64 N) const;     // primitive h(-N), 0 if -N is not a discriminant
    i64 weighted6(i64 N) const;        // 6 h_w(-N)
    i64 hurwitz6(i64 N) const;         // 6 * sum_f h_w(-N/f^2)
    mpq_class hurwitz(i64 N) const {
        mpq_class v(hurwitz6(N), 6);
        v.canonicalize();
        return v;
    }

    // Independent weighted count of all (not only primitive) reduced forms, times 6.
    static std::vector<i64> hurwitz6_by_all_forms(i64 nmax);

    void save_csv(const std::string& path) const;
    static ClassNumberTable load_csv(const std::string& path);

private:
    ClassNumberTable() = default;
    void build_hurwitz();

    i64 nmax_ = 0;
    std::vector<i64> h_;
    std::vector<i64> H6_;
};

}  // namespace ht
