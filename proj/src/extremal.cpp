#include "luinv/extremal.hpp"

#include "luinv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <utility>

namespace luinv {

namespace {

using std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

constexpr double kClampTol = 1e-12;
constexpr double kSmallK = 1e-12;
constexpr double kRootCheckTol = 1e-10;

// 1 - p^6 without cancellation near p = 1.
double one_minus_p6(double p) {
    const double p2 = p * p;
    return (1.0 - p) * (1.0 + p) * (1.0 + p2 + p2 * p2);
}

// phi1 with cos(phi1) = 54K - 1, written through half angles so that both
// 1 + cos(phi1) = 54K and pi - phi1 stay accurate for small K.
double phi1_of(double K) { return 2.0 * std::atan2(std::sqrt(2.0 - 54.0 * K), std::sqrt(54.0 * K)); }
double pi_minus_phi1_of(double K) {
    return 2.0 * std::atan2(std::sqrt(54.0 * K), std::sqrt(2.0 - 54.0 * K));
}

// 1 + cos((phi1 - 2pi)/3) and 1 + cos((phi1 + 2pi)/3); the second equals
// 2 sin^2((pi - phi1)/6), which avoids cancellation near K = 0.
double c_plus(double K) { return 1.0 + std::cos((phi1_of(K) - 2.0 * pi) / 3.0); }
double c_minus(double K) {
    const double s = std::sin(pi_minus_phi1_of(K) / 6.0);
    return 2.0 * s * s;
}

// (I_1 - 1)/2 = (4/9)c^2 - (2/3)c - 3K/(2c), with t = 2c/3.
double I1_from_c(double c, double K) {
    return 1.0 + 2.0 * ((4.0 / 9.0) * c * c - (2.0 / 3.0) * c - 3.0 * K / (2.0 * c));
}

// phi2 = arccos(p1^3)
double phi2_of(double p1) {
    const double p3 = p1 * p1 * p1;
    return std::atan2(std::sqrt(one_minus_p6(p1)), p3);
}

double stationarity_cubic(double p1, double p3) {
    return p3 * p3 * p3 - kSqrt3 * p1 * p3 * p3 + (p1 * p1 - 1.0) * p3 +
           p1 * (1.0 - p1 * p1) / kSqrt3;
}

void fill_schmidt_side(ExtremalBounds& b) {
    const double K = b.K;
    b.phi1 = phi1_of(K);
    const double cp = c_plus(K);
    const double cm = c_minus(K);
    b.t_plus = 2.0 * cp / 3.0;
    b.t_minus = 2.0 * cm / 3.0;
    b.I1_max = I1_from_c(cp, K);
    b.I1_min = K <= kSmallK ? 0.5 : I1_from_c(cm, K);
}

void fill_p_side(ExtremalBounds& b) {
    const double p1 = b.p1;
    const double p1cube = p1 * p1 * p1;
    b.phi2 = phi2_of(p1);
    b.phi3 = pi - b.phi2;
    const double x = std::cos((b.phi2 - 2.0 * pi) / 3.0);
    const double y = std::cos(b.phi3 / 3.0);
    const double x2 = x * x, y2 = y * y;
    b.I1_min = 0.5 + (8.0 / 9.0) * p1cube * x + (4.0 / 3.0) * x2 - (8.0 / 9.0) * x2 * x2;
    b.I1_max = 0.5 - (8.0 / 9.0) * p1cube * y + (4.0 / 3.0) * y2 - (8.0 / 9.0) * y2 * y2;
}

// Golden-section minimization of f on [a, b] to bracket width tol.
std::pair<double, double> golden_min(const std::function<double(double)>& f, double a, double b,
                                     double tol = 1e-12) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

// Scan [lo, hi] and polish the best grid point for the minimum of f.
std::pair<double, double> scan_min(const std::function<double(double)>& f, double lo, double hi,
                                   int resolution) {
    int best = 0;
    double best_val = f(lo);
    for (int i = 1; i < resolution; ++i) {
        const double t = lo + (hi - lo) * i / (resolution - 1);
        const double v = f(t);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    const double step = (hi - lo) / (resolution - 1);
    const double a = std::max(lo, lo + step * (best - 1));
    const double b = std::min(hi, lo + step * (best + 1));
    const double grid_x = lo + step * best;
    if (b <= a) return {grid_x, best_val};
    auto [x, v] = golden_min(f, a, b);
    if (v < best_val) return {x, v};
    return {grid_x, best_val};
}

}  // namespace

double clamp_k(double K) {
    if (!(K >= -kClampTol && K <= kKMax + kClampTol)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "K = %.17g outside [0, 1/27]", K);
        throw Error(ErrorKind::OutOfRange, buf);
    }
    return std::clamp(K, 0.0, kKMax);
}

double schmidt_I1(double lambda, double K) {
    const double ratio = (K == 0.0) ? 0.0 : K / lambda;
    return 2.0 * (-lambda + lambda * lambda - ratio) + 1.0;
}

double p_form_I1(double p1, double p3, double cos_theta) {
    const double r2 = 1.0 - p1 * p1;
    const double p2sq = r2 - p3 * p3;
    return 1.0 - (2.0 / 3.0) * p1 * p1 - 0.5 * p2sq * p2sq +
           (2.0 / kSqrt3) * cos_theta * p1 * p3 * p2sq;
}

double p_form_I1_slope(double p1, double p3, double cos_theta) {
    const double r2 = 1.0 - p1 * p1;
    return 2.0 * p3 * (r2 - p3 * p3) + (2.0 / kSqrt3) * cos_theta * p1 * (r2 - 3.0 * p3 * p3);
}

double p_form_min_argument(double p1) {
    return (p1 + 2.0 * std::cos((phi2_of(p1) - 2.0 * pi) / 3.0)) / kSqrt3;
}

double p_form_max_argument(double p1) {
    const double y = std::cos((pi - phi2_of(p1)) / 3.0);
    return (2.0 * y - p1) / kSqrt3;
}

ExtremalBounds schmidt_bounds_for_K(double K) {
    ExtremalBounds b;
    b.K = clamp_k(K);
    b.p1 = std::pow(27.0 * b.K, 1.0 / 6.0);
    b.phi2 = phi2_of(b.p1);
    b.phi3 = pi - b.phi2;
    fill_schmidt_side(b);
    return b;
}

ExtremalBounds p_form_bounds_for_p1(double p1) {
    if (!(p1 >= -kClampTol && p1 <= 1.0 + kClampTol)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "p1 = %.17g outside [0, 1]", p1);
        throw Error(ErrorKind::OutOfRange, buf);
    }
    ExtremalBounds b;
    b.p1 = std::clamp(p1, 0.0, 1.0);
    const double p1sq = b.p1 * b.p1;
    b.K = std::min(kKMax, p1sq * p1sq * p1sq / 27.0);
    b.phi1 = phi1_of(b.K);
    b.t_plus = 2.0 * c_plus(b.K) / 3.0;
    b.t_minus = 2.0 * c_minus(b.K) / 3.0;
    fill_p_side(b);

    const double p3_star = p_form_min_argument(b.p1);
    const double r = std::sqrt(1.0 - p1sq);
    if (p3_star < -kRootCheckTol || p3_star > r + kRootCheckTol ||
        std::abs(stationarity_cubic(b.p1, p3_star)) > kRootCheckTol) {
        throw Error(ErrorKind::NumericalFailure, "stationary p3 failed its root/interval check");
    }
    return b;
}

RangeEqualityReport verify_range_equality(int grid_size) {
    if (grid_size < 2) throw Error(ErrorKind::BadParams, "grid_size must be >= 2");
    RangeEqualityReport rep;
    for (int i = 0; i < grid_size; ++i) {
        const double p1 = static_cast<double>(i) / (grid_size - 1);
        const ExtremalBounds pb = p_form_bounds_for_p1(p1);
        const ExtremalBounds kb = schmidt_bounds_for_K(pb.K);
        rep.max_dev_min = std::max(rep.max_dev_min, std::abs(kb.I1_min - pb.I1_min));
        rep.max_dev_max = std::max(rep.max_dev_max, std::abs(kb.I1_max - pb.I1_max));

        const double p1cube = p1 * p1 * p1;
        const double x = std::cos((pb.phi2 - 2.0 * pi) / 3.0);
        const double y = std::cos(pb.phi3 / 3.0);
        const double tx = 4.0 * x * x * x - 3.0 * x;
        const double ty = 4.0 * y * y * y - 3.0 * y;
        const double residuals[] = {
            std::abs(p1cube - tx),
            std::abs(pb.K - tx * tx / 27.0),
            std::abs(std::cos((kb.phi1 + 2.0 * pi) / 3.0) - (2.0 * x * x - 1.0)),
            std::abs(p1cube + ty),
            std::abs(pb.phi3 - (pi - kb.phi1 / 2.0)),
        };
        for (double r : residuals) rep.max_identity_residual = std::max(rep.max_identity_residual, r);
        ++rep.points;
    }
    return rep;
}

BruteForceRange brute_force_I1_range(double K, int resolution) {
    if (resolution < 10) throw Error(ErrorKind::BadParams, "resolution must be >= 10");
    K = clamp_k(K);
    BruteForceRange out;
    if (K == 0.0) {
        out.lo = 0.0;
        out.hi = 1.0;
    } else {
        // lambda (1 - lambda)^2 - 4K is negative at 0 and 1 and maximal (4/27 - 4K) at 1/3.
        auto g = [K](double t) { return t * (1.0 - t) * (1.0 - t) - 4.0 * K; };
        const double third = 1.0 / 3.0;
        if (g(third) <= 0.0) {
            out.lo = out.hi = third;
        } else {
            double a = 0.0, b = third;
            for (int it = 0; it < 200 && b - a > 0.0; ++it) {
                const double m = 0.5 * (a + b);
                if (m == a || m == b) break;
                (g(m) < 0.0 ? a : b) = m;
            }
            out.lo = b;
            a = third;
            b = 1.0;
            for (int it = 0; it < 200 && b - a > 0.0; ++it) {
                const double m = 0.5 * (a + b);
                if (m == a || m == b) break;
                (g(m) < 0.0 ? b : a) = m;
            }
            out.hi = a;
        }
    }
    auto f = [K](double t) { return schmidt_I1(t, K); };
    auto nf = [K](double t) { return -schmidt_I1(t, K); };
    if (out.hi <= out.lo) {
        out.min = out.max = f(out.lo);
        out.argmin = out.argmax = out.lo;
        return out;
    }
    std::tie(out.argmin, out.min) = scan_min(f, out.lo, out.hi, resolution);
    double negmax = 0.0;
    std::tie(out.argmax, negmax) = scan_min(nf, out.lo, out.hi, resolution);
    out.max = -negmax;
    return out;
}

BruteForceRange brute_force_I1_range_p(double p1, int resolution) {
    if (resolution < 10) throw Error(ErrorKind::BadParams, "resolution must be >= 10");
    if (!(p1 >= 0.0 && p1 <= 1.0)) throw Error(ErrorKind::OutOfRange, "p1 outside [0, 1]");
    BruteForceRange out;
    out.lo = 0.0;
    out.hi = std::sqrt(1.0 - p1 * p1);
    auto fmin = [p1](double p3) { return p_form_I1(p1, p3, -1.0); };
    auto fmax = [p1](double p3) { return -p_form_I1(p1, p3, 1.0); };
    if (out.hi <= 0.0) {
        out.min = out.max = fmin(0.0);
        return out;
    }
    std::tie(out.argmin, out.min) = scan_min(fmin, out.lo, out.hi, resolution);
    double negmax = 0.0;
    std::tie(out.argmax, negmax) = scan_min(fmax, out.lo, out.hi, resolution);
    out.max = -negmax;
    return out;
}

}  // namespace luinv
