#include "hecketrace/classnum.hpp"

#include "hecketrace/numerics.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ht {

namespace {

void require_negative_discriminant(i64 delta, const char* who) {
    if (delta >= 0 || !is_discriminant(delta))
        throw std::invalid_argument(std::string(who) + ": delta must be a negative discriminant");
}

i64 gcd3(i64 a, i64 b, i64 c) { return std::gcd(std::gcd(a, b < 0 ? -b : b), c); }

}  // namespace

std::vector<ReducedForm> reduced_forms(i64 delta) {
    require_negative_discriminant(delta, "reduced_forms");
    std::vector<ReducedForm> out;
    i64 N = -delta;
    for (i64 a = 1; 3 * a * a <= N; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            if (mod_pos(b - delta, 2) != 0) continue;
            i64 num = b * b - delta;
            if (num % (4 * a)) continue;
            i64 c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (gcd3(a, b, c) != 1) continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

i64 class_number(i64 delta) { return static_cast<i64>(reduced_forms(delta).size()); }

mpq_class weighted_class_number(i64 delta) {
    i64 h = class_number(delta);
    if (delta == -3) return mpq_class(1, 3);
    if (delta == -4) return mpq_class(1, 2);
    return mpq_class(h);
}

WeightedClassData weighted_class_data(i64 delta) {
    WeightedClassData d;
    d.delta = delta;
    d.h = class_number(delta);
    d.h_w = weighted_class_number(delta);
    return d;
}

mpq_class hurwitz_sum(i64 m, i64 n) {
    if (n < 1 || m * m >= 4 * n) throw std::invalid_argument("hurwitz_sum: need m^2 < 4n");
    i64 delta = m * m - 4 * n;
    mpq_class s = 0;
    for (i64 f : conductor_divisors(m, n)) s += weighted_class_number(delta / (f * f));
    return s;
}

double dirichlet_L1(i64 delta, i64 truncation, double tol) {
    require_negative_discriminant(delta, "dirichlet_L1");
    DiscriminantFactorization fac = factor_discriminant(delta);
    const i64 D = fac.fundamental;
    const i64 q = -D;
    const i64 J = truncation / q;
    if (J < 1)
        throw NonConvergence("dirichlet_L1: truncation shorter than one period");
    double bound = digamma_asymptotic_bound(static_cast<double>(J));
    if (bound > tol)
        throw NonConvergence("dirichlet_L1: tail remainder bound " + std::to_string(bound) +
                             " above tolerance");
    std::vector<int> chi(q + 1);
    for (i64 a = 1; a <= q; ++a) chi[a] = kronecker(D, a);
    NeumaierSum s;
    for (i64 j = 0; j < J; ++j)
        for (i64 a = 1; a <= q; ++a)
            if (chi[a]) s.add(chi[a] / static_cast<double>(j * q + a));
    NeumaierSum tail;
    for (i64 a = 1; a <= q; ++a)
        if (chi[a]) tail.add(chi[a] * digamma_series(J + static_cast<double>(a) / q));
    double L = s.value() - tail.value() / static_cast<double>(q);
    for (auto [p, e] : factorize(fac.conductor)) L *= 1.0 - kronecker(D, p) / static_cast<double>(p);
    return L;
}

double dirichlet_L1(i64 delta) {
    require_negative_discriminant(delta, "dirichlet_L1");
    i64 q = -factor_discriminant(delta).fundamental;
    return dirichlet_L1(delta, 8 * q);
}

double weighted_L1(i64 m, i64 n) {
    mpq_class h = hurwitz_sum(m, n);
    return kPi * h.get_d() / std::sqrt(static_cast<double>(4 * n - m * m));
}

double weighted_L1_lvalues(i64 m, i64 n, double tol) {
    i64 delta = m * m - 4 * n;
    double s = 0.0;
    for (i64 f : conductor_divisors(m, n)) {
        i64 d = delta / (f * f);
        i64 q = -factor_discriminant(d).fundamental;
        s += dirichlet_L1(d, 8 * q, tol) / static_cast<double>(f);
    }
    return s;
}

ClassNumberTable::ClassNumberTable(i64 nmax) : nmax_(nmax), h_(nmax + 1, 0) {
    if (nmax < 4) throw std::invalid_argument("ClassNumberTable: nmax must be at least 4");
    for (i64 a = 1; 3 * a * a <= nmax; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            for (i64 c = a;; ++c) {
                i64 N = 4 * a * c - b * b;
                if (N > nmax) break;
                if (c == a && b < 0) continue;
                if (gcd3(a, b, c) == 1) ++h_[N];
            }
        }
    }
    build_hurwitz();
}

void ClassNumberTable::build_hurwitz() {
    H6_.assign(nmax_ + 1, 0);
    for (i64 M = 3; M <= nmax_; ++M) {
        if (h_[M] == 0) continue;
        i64 w = weighted6(M);
        for (i64 f = 1; M * f * f <= nmax_; ++f) H6_[M * f * f] += w;
    }
}

i64 ClassNumberTable::class_number(i64 N) const {
    if (N < 0 || N > nmax_) throw std::out_of_range("ClassNumberTable: N outside table");
    return h_[N];
}

i64 ClassNumberTable::weighted6(i64 N) const {
    if (N == 3) return 2;
    if (N == 4) return 3;
    return 6 * class_number(N);
}

i64 ClassNumberTable::hurwitz6(i64 N) const {
    if (N < 0 || N > nmax_) throw std::out_of_range("ClassNumberTable: N outside table");
    return H6_[N];
}

std::vector<i64> ClassNumberTable::hurwitz6_by_all_forms(i64 nmax) {
    std::vector<i64> H(nmax + 1, 0);
    for (i64 a = 1; 3 * a * a <= nmax; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            for (i64 c = a;; ++c) {
                i64 N = 4 * a * c - b * b;
                if (N > nmax) break;
                if (c == a && b < 0) continue;
                i64 w = 6;
                if (a == c && b == 0) w = 3;
                if (a == c && b == a) w = 2;
                H[N] += w;
            }
        }
    }
    return H;
}

void ClassNumberTable::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "delta,h\n";
    for (i64 N = 3; N <= nmax_; ++N)
        if (h_[N]) out << -N << ',' << h_[N] << '\n';
}

ClassNumberTable ClassNumberTable::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string line;
    std::getline(in, line);
    if (line != "delta,h") throw std::runtime_error(path + ": expected header delta,h");
    std::vector<std::pair<i64, i64>> rows;
    i64 nmax = 4;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        i64 d, h;
        char comma;
        if (!(ss >> d >> comma >> h) || comma != ',' || d >= 0)
            throw std::runtime_error(path + ": malformed row '" + line + "'");
        rows.emplace_back(-d, h);
        nmax = std::max(nmax, -d);
    }
    ClassNumberTable t;
    t.nmax_ = nmax;
    t.h_.assign(nmax + 1, 0);
    for (auto [N, h] : rows) t.h_[N] = h;
    t.build_hurwitz();
    return t;
}

}  // namespace ht
