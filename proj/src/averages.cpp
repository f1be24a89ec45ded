#include "hecketrace/averages.hpp"

#include <cmath>
#include <stdexcept>

namespace ht {

namespace {

i64 last_n_below(double X) {
    // largest integer n with n < X
    double c = std::ceil(X);
    return static_cast<i64>(c) - 1;
}

void check_grid(const std::vector<double>& grid, i64 nmax) {
    for (size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 1.0)) throw std::invalid_argument("average grid values must be >= 1");
        if (i && grid[i] < grid[i - 1]) throw std::invalid_argument("average grid must ascend");
        if (last_n_below(grid[i]) > nmax) throw std::out_of_range("average grid beyond series");
    }
}

}  // namespace

std::string to_string(TermSelector s) {
    switch (s) {
        case TermSelector::elliptic: return "elliptic";
        case TermSelector::hyperbolic_unipotent: return "hyperbolic_unipotent";
        case TermSelector::identity: return "identity";
        case TermSelector::total: return "total";
    }
    return "unknown";
}

TermSelector parse_selector(const std::string& s) {
    if (s == "elliptic") return TermSelector::elliptic;
    if (s == "hyperbolic_unipotent" || s == "hyperbolic") return TermSelector::hyperbolic_unipotent;
    if (s == "identity") return TermSelector::identity;
    if (s == "total") return TermSelector::total;
    throw std::invalid_argument("unknown term selector: " + s);
}

TraceSeries::TraceSeries(int k, i64 nmax)
    : TraceSeries(k, nmax, std::make_shared<ClassNumberTable>(4 * std::max<i64>(nmax, 1))) {}

TraceSeries::TraceSeries(int k, i64 nmax, std::shared_ptr<const ClassNumberTable> table)
    : k_(k), nmax_(nmax) {
    if (nmax < 1) throw std::invalid_argument("TraceSeries: nmax must be positive");
    TraceEngine eng(std::move(table), nmax, k);
    ell_.assign(nmax + 1, 0.0);
    hyp_.assign(nmax + 1, 0.0);
    id_.assign(nmax + 1, 0.0);
    tot_.assign(nmax + 1, 0.0);
    exact_.assign(nmax + 1, 0);
    for (i64 n = 1; n <= nmax; ++n) {
        TraceDecomposition t = eng.decompose(n);
        ell_[n] = t.elliptic_normalized();
        hyp_[n] = t.hyperbolic_normalized();
        id_[n] = t.identity_normalized();
        tot_[n] = t.total_normalized;
        exact_[n] = t.total_unnormalized;
    }
}

double TraceSeries::term(i64 n, TermSelector s) const {
    if (n < 1 || n > nmax_) throw std::out_of_range("TraceSeries: n outside range");
    switch (s) {
        case TermSelector::elliptic: return ell_[n];
        case TermSelector::hyperbolic_unipotent: return hyp_[n];
        case TermSelector::identity: return id_[n];
        case TermSelector::total: return tot_[n];
    }
    return 0.0;
}

AverageSeries term_average(const TraceSeries& ts, const std::vector<double>& grid, TermSelector s) {
    check_grid(grid, ts.nmax());
    AverageSeries a;
    a.k = ts.k();
    a.selector = s;
    a.grid = grid;
    NeumaierSum acc;
    i64 n = 1;
    for (double X : grid) {
        for (i64 top = last_n_below(X); n <= top; ++n) acc.add(ts.term(n, s));
        a.partial_sums.push_back(acc.value());
        a.averages.push_back(acc.value() / X);
    }
    return a;
}

AverageSeries term_average(int k, double X, TermSelector s) {
    TraceSeries ts(k, std::max<i64>(last_n_below(X), 1));
    return term_average(ts, {X}, s);
}

PrimeAverageSeries prime_average(const TraceSeries& ts, const std::vector<double>& grid,
                                 TermSelector s) {
    check_grid(grid, ts.nmax());
    PrimeAverageSeries a;
    a.k = ts.k();
    a.selector = s;
    a.grid = grid;
    i64 top_all = grid.empty() ? 1 : last_n_below(grid.back());
    std::vector<int> primes = primes_below(static_cast<int>(top_all + 1));
    NeumaierSum acc;
    size_t i = 0;
    for (double X : grid) {
        i64 top = last_n_below(X);
        for (; i < primes.size() && primes[i] <= top; ++i)
            acc.add(std::log(static_cast<double>(primes[i])) * ts.term(primes[i], s));
        a.partial_sums.push_back(acc.value());
        a.averages.push_back(acc.value() / X);
    }
    return a;
}

PrimeAverageSeries prime_average(int k, double X, TermSelector s) {
    TraceSeries ts(k, std::max<i64>(last_n_below(X), 1));
    return prime_average(ts, {X}, s);
}

double limit_average(int k, TermSelector s) {
    switch (s) {
        case TermSelector::elliptic: return 1.0 / (k - 1);
        case TermSelector::hyperbolic_unipotent: return 1.0 / (1 - k);
        default: return 0.0;
    }
}

std::vector<MainTheoremRow> main_theorem_check(const TraceSeries& ts, const std::vector<double>& grid) {
    AverageSeries a = term_average(ts, grid, TermSelector::total);
    std::vector<MainTheoremRow> rows;
    for (size_t i = 0; i < grid.size(); ++i) {
        MainTheoremRow r;
        r.X = grid[i];
        r.abs_sum = std::fabs(a.partial_sums[i]);
        r.ratio = r.abs_sum / std::pow(grid[i], 31.0 / 32.0);
        rows.push_back(r);
    }
    return rows;
}

std::vector<MainTheoremRow> main_theorem_check(int k, const std::vector<double>& grid) {
    double top = grid.empty() ? 2.0 : grid.back();
    TraceSeries ts(k, std::max<i64>(last_n_below(top), 1));
    return main_theorem_check(ts, grid);
}

HyperbolicCheck hyperbolic_asymptotic_check(int k, double X) {
    if (k < 3) throw std::invalid_argument("hyperbolic_asymptotic_check: k >= 3");
    HyperbolicCheck h;
    h.X = X;
    NeumaierSum acc;
    if (k % 2 == 0) {
        for (i64 n = 1; n < X; ++n)
            acc.add(hyperbolic_unipotent_term(n, k).get_d() / trace_normalizer(n, k));
    }
    h.lhs = acc.value();
    h.model = k % 2 == 0 ? X / (1.0 - k) : 0.0;
    h.residual = h.lhs - h.model;
    h.fitted_C = std::fabs(h.residual) / std::sqrt(X);
    return h;
}

cplx lseries_partial_sums(const TraceSeries& ts, cplx s, i64 N0, i64 N1) {
    if (N0 < 1) throw std::invalid_argument("lseries_partial_sums: N0 must be positive");
    if (ts.k() != 12) throw std::invalid_argument("lseries_partial_sums: weight 12 series required");
    if (N1 < N0) return 0.0;
    if (N1 > ts.nmax()) throw std::out_of_range("lseries_partial_sums: N1 beyond series");
    NeumaierSum re, im;
    for (i64 n = N0; n <= N1; ++n) {
        cplx t = ts.total_exact(n).get_d() * std::exp(-s * std::log(static_cast<double>(n)));
        re.add(t.real());
        im.add(t.imag());
    }
    return {re.value(), im.value()};
}

cplx lseries_partial_sums(cplx s, i64 N0, i64 N1) {
    if (N1 < N0) return 0.0;
    TraceSeries ts(12, N1);
    return lseries_partial_sums(ts, s, N0, N1);
}

double identity_partial_bound(int k, double X) {
    return (k - 1) / 12.0 * (1.0 + std::log(std::max(X, 1.0)));
}

}  // namespace ht
