// extremal.hpp: range of the qutrit invariant I_1 at fixed K (Schmidt side) or
// fixed p1 (canonical side), closed forms and brute-force oracles.
//
// Schmidt side: with lambda = kappa_1^2 and K = kappa_1^2 kappa_2^2 kappa_3^2,
//   I_1(lambda) = 2(-lambda + lambda^2 - K / lambda) + 1,
// feasible for lambda in [t_-, t_+], the outer roots of t^3 - 2t^2 + t - 4K.
// Canonical side: with r^2 = 1 - p1^2 and p2^2 = r^2 - p3^2,
//   I_1(p3, c) = 1 - (2/3)p1^2 - (1/2)(r^2 - p3^2)^2 + (2/sqrt3) c p1 p3 (r^2 - p3^2),
// where c = cos(theta) in [-1, 1].

#pragma once

namespace luinv {

struct ExtremalBounds {
    double K = 0.0;
    double p1 = 0.0;
    double phi1 = 0.0;  // cos(phi1) = 54K - 1
    double phi2 = 0.0;  // cos(phi2) = p1^3
    double phi3 = 0.0;  // cos(phi3) = -p1^3
    double t_minus = 0.0;
    double t_plus = 0.0;
    double I1_min = 0.0;
    double I1_max = 0.0;
};

inline constexpr double kKMax = 1.0 / 27.0;

// Clamps K into [0, 1/27] when it is outside by at most 1e-12; throws
// OutOfRange otherwise.
double clamp_k(double K);

// I_1 as a function of lambda = kappa_1^2 at fixed K. lambda = 0 is allowed
// only for K = 0 and evaluates the K / lambda term as 0.
double schmidt_I1(double lambda, double K);

// I_1 of the canonical qutrit form with p2 eliminated; cos_theta in [-1, 1].
double p_form_I1(double p1, double p3, double cos_theta);

// d/dp3 of p_form_I1.
double p_form_I1_slope(double p1, double p3, double cos_theta);

/// Closed-form I_1 range at fixed K. Also fills p1 = (27K)^{1/6} and the
/// canonical-side angles, so the result is comparable with the p1 bounds.
/// For K <= 1e-12 the minimum takes its K -> 0 limit 1/2 (configuration
/// kappa^2 = (0, 1/2, 1/2)); the closed form is 0/0 there.
ExtremalBounds schmidt_bounds_for_K(double K);

/// Closed-form I_1 range at fixed p1 in [0, 1]. Verifies that the stationary
/// point p3* lies in [0, sqrt(1 - p1^2)] and solves the stationarity cubic
/// within 1e-10 (NumericalFailure otherwise).
ExtremalBounds p_form_bounds_for_p1(double p1);

// The p3 minimizing p_form_I1 at cos(theta) = -1 (closed form).
double p_form_min_argument(double p1);
// The p3 maximizing p_form_I1 at cos(theta) = +1 (closed form).
double p_form_max_argument(double p1);

struct RangeEqualityReport {
    int points = 0;
    double max_dev_min = 0.0;
    double max_dev_max = 0.0;
    // Largest violation among the bridging identities:
    //   p1^3 = 4x^3 - 3x, K = (4x^3 - 3x)^2 / 27, cos((phi1 + 2pi)/3) = 2x^2 - 1,
    //   p1^3 = -4y^3 + 3y, phi3 = pi - phi1 / 2,
    // with x = cos((phi2 - 2pi)/3) and y = cos(phi3 / 3).
    double max_identity_residual = 0.0;
};

/// Evaluates both closed-form bound pairs on p1 = i / (grid_size - 1) with
/// K = p1^6 / 27. Throws BadParams for grid_size < 2.
RangeEqualityReport verify_range_equality(int grid_size);

struct BruteForceRange {
    double min = 0.0;
    double max = 0.0;
    double argmin = 0.0;  // lambda (Schmidt mode) or p3 (canonical mode)
    double argmax = 0.0;
    double lo = 0.0;  // scanned interval
    double hi = 0.0;
};

/// Oracle for the Schmidt-side range: the feasible lambda interval is located
/// by bisection on lambda (1 - lambda)^2 = 4K, scanned at `resolution` points
/// and the best grid points are polished by golden-section search to 1e-12.
/// Uses none of the trigonometric closed forms.
BruteForceRange brute_force_I1_range(double K, int resolution);

/// Oracle for the canonical-side range: scans p3 in [0, sqrt(1 - p1^2)] at
/// cos(theta) = -1 (minimum) and +1 (maximum), with the same polish.
BruteForceRange brute_force_I1_range_p(double p1, int resolution);

}  // namespace luinv
