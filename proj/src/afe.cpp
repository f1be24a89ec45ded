#include "hecketrace/afe.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace ht {

namespace {

constexpr double kSEdge = 8.0;   // exp(-2 cosh 8) underflows

double edge_integrand(double s) { return std::exp(-2.0 * std::cosh(s)); }

// int_a^b exp(-2 cosh s) ds with 20-point panels no wider than 1/4
double edge_integral(double a, double b) {
    if (b <= a) return 0.0;
    int panels = static_cast<int>(std::ceil((b - a) / 0.25));
    const GaussRule& g = gauss_legendre(20);
    double h = (b - a) / panels, sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        double c = a + (p + 0.5) * h;
        for (std::size_t j = 0; j < g.nodes.size(); ++j)
            sum += g.weights[j] * edge_integrand(c + 0.5 * h * g.nodes[j]);
    }
    return 0.5 * h * sum;
}

double hermite(double y0, double y1, double d0, double d1, double h, double t) {
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * y1 +
           (t3 - t2) * h * d1;
}

}  // namespace

std::string AfeBudget::describe() const {
    std::ostringstream ss;
    ss << std::setprecision(10) << "s=[" << s_min << "," << s_max << "] panels=" << mellin_panels
       << " gl=20 t_max=" << t_max << " t_step=" << t_step << " y=[" << y_min << "," << y_max
       << "] npd=" << nodes_per_decade;
    return ss.str();
}

AfeKernels::AfeKernels(const AfeBudget& b) : budget_(b) {
    build_mellin_nodes();
    build_contour();
    build_table();
}

void AfeKernels::build_mellin_nodes() {
    // 2 K_0(2) = int_0^inf e^{-y-1/y} dy/y = int_R exp(-2 cosh s) ds
    normalizer_ = 2.0 * edge_integral(0.0, kSEdge);
    int half = budget_.mellin_panels / 2;
    QuadNodes left = composite_uniform(budget_.s_min, 0.0, half, 20);
    QuadNodes right = composite_uniform(0.0, budget_.s_max, half, 20);
    // Cumulative integration between consecutive nodes, outward from the edges.
    std::vector<double> lf(left.x.size()), rf(right.x.size());
    double acc = 0.0, prev = -kSEdge;
    for (std::size_t i = 0; i < left.x.size(); ++i) {
        acc += edge_integral(prev, left.x[i]);
        prev = left.x[i];
        lf[i] = -acc / normalizer_;
    }
    acc = 0.0;
    prev = kSEdge;
    for (std::size_t i = right.x.size(); i-- > 0;) {
        acc += edge_integral(right.x[i], prev);
        prev = right.x[i];
        rf[i] = acc / normalizer_;
    }
    ms_ = left.x;
    ms_.insert(ms_.end(), right.x.begin(), right.x.end());
    mw_ = left.w;
    mw_.insert(mw_.end(), right.w.begin(), right.w.end());
    mf_ = lf;
    mf_.insert(mf_.end(), rf.begin(), rf.end());
}

double AfeKernels::F_direct(double x) const {
    if (x < 0) throw std::invalid_argument("F: x must be non-negative");
    if (x == 0) return 1.0;
    double s = std::log(x);
    if (s <= -kSEdge) return 1.0;
    if (s >= kSEdge) return 0.0;
    if (s < 0) return 1.0 - edge_integral(-kSEdge, s) / normalizer_;
    return edge_integral(s, kSEdge) / normalizer_;
}

double AfeKernels::F_prime(double x) const {
    if (x <= 0) return 0.0;
    return -std::exp(-x - 1.0 / x) / (x * normalizer_);
}

cplx AfeKernels::mellin_F(cplx u) const {
    if (std::abs(u) < 1e-6) throw std::domain_error("mellin_F: too close to the pole at u = 0");
    cplx s = 1.0 / u;
    for (std::size_t i = 0; i < ms_.size(); ++i) s += mw_[i] * mf_[i] * std::exp(u * ms_[i]);
    return s;
}

namespace {

cplx contour_sample(const AfeKernels& K, double t) {
    cplx u(1.0, t);
    cplx g = std::exp(lgamma_complex(cplx(1.0, 0.5 * t)) - lgamma_complex(cplx(0.5, -0.5 * t)));
    return g * std::exp(-u * std::log(kPi)) * K.mellin_F(u);
}

// Trapezoid on the symmetric contour from samples at t_j = j h, j = 0..J, using stride.
double contour_sum(const std::vector<cplx>& c, double h, int J, int stride, double y) {
    double ly = std::log(y);
    double s = 0.0;
    for (int j = 0; j <= J; j += stride) {
        double t = j * h;
        cplx z = c[j] * std::polar(1.0 / y, -t * ly);
        double w = (j == 0) ? 1.0 : (j == J ? 1.0 : 2.0);
        s += w * z.real();
    }
    return std::sqrt(kPi) / (2.0 * kPi) * h * stride * s;
}

}  // namespace

void AfeKernels::build_contour() {
    int J = static_cast<int>(std::lround(budget_.t_max / budget_.t_step));
    contour_.resize(J + 1);
    for (int j = 0; j <= J; ++j) contour_[j] = contour_sample(*this, j * budget_.t_step);
}

KernelValue AfeKernels::H_direct(double y) const {
    if (!(y > 0)) throw std::invalid_argument("H: y must be positive");
    int J = static_cast<int>(contour_.size()) - 1;
    double h = budget_.t_step;
    double full = contour_sum(contour_, h, J, 1, y);
    double coarse = (J % 2 == 0) ? contour_sum(contour_, h, J, 2, y) : full;
    double half = contour_sum(contour_, h, J / 2, 1, y);
    KernelValue kv;
    kv.value = full;
    kv.error = std::fabs(full - coarse) + std::fabs(full - half);
    return kv;
}

KernelValue AfeKernels::H_direct(double y, double t_max, double t_step) const {
    if (!(y > 0)) throw std::invalid_argument("H: y must be positive");
    int J = static_cast<int>(std::lround(t_max / t_step));
    std::vector<cplx> c(J + 1);
    for (int j = 0; j <= J; ++j) c[j] = contour_sample(*this, j * t_step);
    double full = contour_sum(c, t_step, J, 1, y);
    double coarse = (J % 2 == 0) ? contour_sum(c, t_step, J, 2, y) : full;
    double half = contour_sum(c, t_step, J / 2, 1, y);
    KernelValue kv;
    kv.value = full;
    kv.error = std::fabs(full - coarse) + std::fabs(full - half);
    return kv;
}

double AfeKernels::H_prime_direct(double y) const {
    int J = static_cast<int>(contour_.size()) - 1;
    double h = budget_.t_step, ly = std::log(y);
    double s = 0.0;
    for (int j = 0; j <= J; ++j) {
        double t = j * h;
        cplx z = contour_[j] * cplx(-1.0, -t) * std::polar(1.0 / (y * y), -t * ly);
        s += ((j == 0 || j == J) ? 1.0 : 2.0) * z.real();
    }
    return std::sqrt(kPi) / (2.0 * kPi) * h * s;
}

void AfeKernels::build_table() {
    log_y0_ = std::log(budget_.y_min);
    du_ = std::log(10.0) / budget_.nodes_per_decade;
    int n = static_cast<int>(std::ceil((std::log(budget_.y_max) - log_y0_) / du_)) + 2;
    tF_.resize(n);
    tdF_.resize(n);
    tH_.resize(n);
    tdH_.resize(n);
    for (int i = 0; i < n; ++i) {
        double y = std::exp(log_y0_ + i * du_);
        tF_[i] = F_direct(y);
        tdF_[i] = y * F_prime(y);
        KernelValue hv = H_direct(y);
        if (hv.error > budget_.h_tol)
            throw NonConvergence("H table: estimated error " + std::to_string(hv.error) +
                                 " at y=" + std::to_string(y));
        tH_[i] = hv.value;
        tdH_[i] = y * H_prime_direct(y);
    }
}

double AfeKernels::interp(const std::vector<double>& v, const std::vector<double>& dv,
                          double y) const {
    double u = (std::log(y) - log_y0_) / du_;
    int i = static_cast<int>(std::floor(u));
    if (i < 0) i = 0;
    if (i > static_cast<int>(v.size()) - 2) i = static_cast<int>(v.size()) - 2;
    double t = u - i;
    return hermite(v[i], v[i + 1], dv[i], dv[i + 1], du_, t);
}

double AfeKernels::F(double x) const {
    if (x < 0) throw std::invalid_argument("F: x must be non-negative");
    if (x <= budget_.y_min) return 1.0;
    if (x >= budget_.y_max) return 0.0;
    return interp(tF_, tdF_, x);
}

double AfeKernels::H(double y) const {
    if (!(y > 0)) throw std::invalid_argument("H: y must be positive");
    if (y < budget_.y_min) return H_direct(y).value;
    if (y >= budget_.y_max) return 0.0;
    return interp(tH_, tdH_, y);
}

double AfeKernels::W(double y) const {
    if (y >= budget_.y_max) return 0.0;
    return F(y) + y * H(y);
}

void AfeKernels::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "# kernel table\n# budget: " << budget_.describe() << "\n";
    out << "log_y,F,dF_dlogy,H,dH_dlogy\n" << std::setprecision(17);
    for (std::size_t i = 0; i < tF_.size(); ++i)
        out << log_y0_ + i * du_ << ',' << tF_[i] << ',' << tdF_[i] << ',' << tH_[i] << ','
            << tdH_[i] << '\n';
}

AfeKernels AfeKernels::load_csv(const std::string& path, const AfeBudget& expected) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    if (line != "# budget: " + expected.describe())
        throw std::runtime_error(path + ": budget mismatch (" + line + ")");
    std::getline(in, line);
    AfeKernels K(Tag{}, expected);
    K.build_mellin_nodes();
    K.build_contour();
    K.log_y0_ = std::log(expected.y_min);
    K.du_ = std::log(10.0) / expected.nodes_per_decade;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        double v[5];
        char c;
        ss >> v[0];
        for (int i = 1; i < 5; ++i) ss >> c >> v[i];
        if (!ss) throw std::runtime_error(path + ": malformed row");
        K.tF_.push_back(v[1]);
        K.tdF_.push_back(v[2]);
        K.tH_.push_back(v[3]);
        K.tdH_.push_back(v[4]);
    }
    if (K.tF_.size() < 2) throw std::runtime_error(path + ": empty table");
    return K;
}

const AfeKernels& default_kernels() {
    static const AfeKernels K;
    return K;
}

double F(double x) { return default_kernels().F(x); }
cplx mellin_F(cplx u) { return default_kernels().mellin_F(u); }
double H(double y) { return default_kernels().H(y); }

double afe_L1(i64 m, i64 n, i64 f_cut, i64 l_cut) {
    return afe_L1(m, n, f_cut, l_cut, default_kernels());
}

double afe_L1(i64 m, i64 n, i64 f_cut, i64 l_cut, const AfeKernels& K) {
    if (n < 1 || m * m >= 4 * n) throw std::invalid_argument("afe_L1: need m^2 < 4n");
    const i64 delta = m * m - 4 * n;
    const double rA = std::sqrt(static_cast<double>(-delta));
    const double ymax = K.budget().y_max;
    NeumaierSum s;
    for (i64 f : conductor_divisors(m, n)) {
        if (f > f_cut) break;
        const i64 d = delta / (f * f);
        const double f2 = static_cast<double>(f * f);
        for (i64 l = 1; l <= l_cut; ++l) {
            double y = l * f2 / rA;
            if (y >= ymax) break;
            int chi = kronecker(d, l);
            if (chi == 0) continue;
            s.add(chi * K.W(y) / (static_cast<double>(l) * f));
        }
    }
    return s.value();
}

}  // namespace ht
