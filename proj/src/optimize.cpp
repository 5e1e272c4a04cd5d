#include "luinv/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace luinv {

MinimizeResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& x0, const NelderMeadOptions& opts) {
    const Eigen::Index n = x0.size();
    const double dn = static_cast<double>(n);
    // Gao & Han adaptive coefficients.
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / dn;
    const double gamma = 0.75 - 1.0 / (2.0 * dn);
    const double delta = 1.0 - 1.0 / dn;

    MinimizeResult best{x0, f(x0), 1};
    std::vector<Eigen::VectorXd> simplex(static_cast<std::size_t>(n + 1));
    std::vector<double> values(static_cast<std::size_t>(n + 1));
    std::vector<std::size_t> order(static_cast<std::size_t>(n + 1));
    double step = opts.initial_step;

    // Past the budget every trial point counts as infinitely bad; the loops
    // below then exit on their budget checks.
    auto eval = [&](const Eigen::VectorXd& x) {
        if (best.evaluations >= opts.max_evaluations) return std::numeric_limits<double>::infinity();
        const double v = f(x);
        ++best.evaluations;
        if (v < best.f) {
            best.f = v;
            best.x = x;
        }
        return v;
    };

    while (best.evaluations < opts.max_evaluations && best.f > opts.f_target) {
        simplex[0] = best.x;
        values[0] = best.f;
        for (Eigen::Index i = 0; i < n; ++i) {
            Eigen::VectorXd x = best.x;
            x(i) += step;
            simplex[static_cast<std::size_t>(i + 1)] = x;
            values[static_cast<std::size_t>(i + 1)] = eval(x);
        }
        const double restart_f = best.f;

        while (best.evaluations < opts.max_evaluations && best.f > opts.f_target) {
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return values[a] < values[b];
            });
            const std::size_t lo = order.front();
            const std::size_t hi = order.back();
            const std::size_t second = order[order.size() - 2];

            double diameter = 0.0;
            for (std::size_t k = 0; k < simplex.size(); ++k) {
                diameter = std::max(diameter, (simplex[k] - simplex[lo]).cwiseAbs().maxCoeff());
            }
            if (diameter <= opts.x_tol) break;

            Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
            for (std::size_t k = 0; k < simplex.size(); ++k) {
                if (k != hi) centroid += simplex[k];
            }
            centroid /= dn;

            const Eigen::VectorXd xr = centroid + alpha * (centroid - simplex[hi]);
            const double fr = eval(xr);
            if (fr < values[lo]) {
                const Eigen::VectorXd xe = centroid + beta * (xr - centroid);
                const double fe = eval(xe);
                if (fe < fr) {
                    simplex[hi] = xe;
                    values[hi] = fe;
                } else {
                    simplex[hi] = xr;
                    values[hi] = fr;
                }
                continue;
            }
            if (fr < values[second]) {
                simplex[hi] = xr;
                values[hi] = fr;
                continue;
            }
            const bool outside = fr < values[hi];
            const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + gamma * (xr - centroid))
                                               : Eigen::VectorXd(centroid - gamma * (centroid - simplex[hi]));
            const double fc = eval(xc);
            if (fc < std::min(fr, values[hi])) {
                simplex[hi] = xc;
                values[hi] = fc;
                continue;
            }
            for (std::size_t k = 0; k < simplex.size(); ++k) {
                if (k == lo) continue;
                simplex[k] = simplex[lo] + delta * (simplex[k] - simplex[lo]);
                values[k] = eval(simplex[k]);
            }
        }
        // Collapsed without progress since the last restart: nothing left to gain.
        if (best.f >= restart_f && step < opts.x_tol * 10.0) break;
        step = std::max(step * 0.1, opts.x_tol * 10.0);
    }
    return best;
}

MinimizeResult levenberg_marquardt(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& r,
                                   const Eigen::VectorXd& x0, const LevenbergMarquardtOptions& opts) {
    const Eigen::Index n = x0.size();
    Eigen::VectorXd x = x0;
    Eigen::VectorXd res = r(x);
    double cost = res.squaredNorm();
    int evaluations = 1;
    double mu = 1e-3;

    for (int it = 0; it < opts.max_iterations; ++it) {
        if (res.cwiseAbs().maxCoeff() <= opts.residual_tol) break;
        Eigen::MatrixXd jac(res.size(), n);
        for (Eigen::Index k = 0; k < n; ++k) {
            Eigen::VectorXd xp = x, xm = x;
            xp(k) += opts.fd_step;
            xm(k) -= opts.fd_step;
            jac.col(k) = (r(xp) - r(xm)) / (2.0 * opts.fd_step);
            evaluations += 2;
        }
        const Eigen::MatrixXd jjt = jac * jac.transpose();
        const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(jjt.rows(), jjt.cols());
        bool improved = false;
        while (mu <= 1e10) {
            const Eigen::VectorXd step = jac.transpose() * (jjt + mu * id).ldlt().solve(res);
            const Eigen::VectorXd xn = x - step;
            const Eigen::VectorXd rn = r(xn);
            ++evaluations;
            const double cn = rn.squaredNorm();
            if (std::isfinite(cn) && cn < cost) {
                x = xn;
                res = rn;
                cost = cn;
                mu = std::max(mu * 0.1, 1e-15);
                improved = true;
                break;
            }
            mu *= 10.0;
        }
        if (!improved) break;
    }
    return MinimizeResult{x, cost, evaluations};
}

}  // namespace luinv
