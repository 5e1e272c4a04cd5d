// optimize.hpp: small dense optimizers used by the d = 4 coverage search.

#pragma once

#include <Eigen/Dense>

#include <functional>

namespace luinv {

struct NelderMeadOptions {
    int max_evaluations = 10000;
    double initial_step = 0.2;
    double f_target = 0.0;  // stop as soon as f <= f_target
    double x_tol = 1e-12;   // simplex diameter
};

struct MinimizeResult {
    Eigen::VectorXd x;
    double f = 0.0;
    int evaluations = 0;
};

/// Adaptive Nelder-Mead (dimension-dependent coefficients). Restarts the
/// simplex around the incumbent when it collapses before the budget is spent.
MinimizeResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& x0, const NelderMeadOptions& opts = {});

struct LevenbergMarquardtOptions {
    int max_iterations = 200;
    double fd_step = 1e-7;       // central differences
    double residual_tol = 1e-14;  // stop when max |r_i| <= residual_tol
};

/// Levenberg-Marquardt on r(x) with a central-difference Jacobian. Works for
/// underdetermined systems (fewer residuals than parameters) through the
/// minimum-norm damped step J^T (J J^T + mu I)^{-1} r. Never returns a point
/// worse than x0.
MinimizeResult levenberg_marquardt(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& r,
                                   const Eigen::VectorXd& x0,
                                   const LevenbergMarquardtOptions& opts = {});

}  // namespace luinv
