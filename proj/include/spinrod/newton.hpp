#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinrod/linear_solve.hpp"

namespace spinrod {

struct NewtonOptions {
    double tol_residual = 1e-10;  ///< convergence bound on the residual max norm
    int max_iterations = 25;
    /// forward-difference step factor; per component h = factor * max(1, |x|)
    double jacobian_perturbation = std::sqrt(std::numeric_limits<double>::epsilon());
    std::vector<double> damping = {1.0, 0.5, 0.25, 0.125};

    void validate() const {
        if (!(tol_residual > 0)) throw std::domain_error("newton: tol_residual must be > 0");
        if (max_iterations < 1) throw std::domain_error("newton: max_iterations must be >= 1");
    }
};

struct NewtonResult {
    bool converged = false;
    int iterations = 0;
    double residual_norm = std::numeric_limits<double>::infinity();
    std::vector<double> x;
    std::vector<double> residual_history;  ///< max norm per iteration, entry 0 at x0

    std::string trace() const {
        std::string t;
        for (std::size_t i = 0; i < residual_history.size(); ++i) {
            t += "  iter " + std::to_string(i) + ": |F| = " +
                 std::to_string(residual_history[i]) + "\n";
        }
        return t;
    }
};

inline double max_norm(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) {
        if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
        m = std::max(m, std::abs(x));
    }
    return m;
}

namespace detail {

/// Damped Newton loop shared by the dense and banded paths. `linear_step`
/// returns the undamped update solving J dx = -F at the current point; domain
/// violations raised while probing a damped candidate reject that candidate.
template <class Residual, class LinearStep>
NewtonResult newton_core(const Residual& fres, const LinearStep& linear_step,
                         std::vector<double> x, const NewtonOptions& opts) {
    opts.validate();
    NewtonResult res;
    std::vector<double> f = fres(x);
    double fnorm = max_norm(f);
    res.residual_history.push_back(fnorm);
    res.x = x;
    res.residual_norm = fnorm;

    for (int it = 0; it < opts.max_iterations; ++it) {
        if (fnorm <= opts.tol_residual) {
            res.converged = true;
            return res;
        }
        std::vector<double> dx = linear_step(x, f);
        bool accepted = false;
        for (double lambda : opts.damping) {
            std::vector<double> xc(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) xc[i] = x[i] + lambda * dx[i];
            std::vector<double> fc;
            try {
                fc = fres(xc);
            } catch (const std::domain_error&) {
                continue;  // candidate left the admissible region
            }
            const double fcn = max_norm(fc);
            // full steps near the solution are accepted unconditionally so
            // quadratic convergence is not throttled by the monotonicity test
            if (fcn < fnorm || (lambda == opts.damping.front() && fcn <= opts.tol_residual)) {
                x = std::move(xc);
                f = std::move(fc);
                fnorm = fcn;
                accepted = true;
                break;
            }
        }
        res.iterations = it + 1;
        if (!accepted) break;  // line search failed
        res.residual_history.push_back(fnorm);
        res.x = x;
        res.residual_norm = fnorm;
    }
    res.converged = fnorm <= opts.tol_residual;
    return res;
}

}  // namespace detail

/// Damped Newton iteration with a dense forward-difference Jacobian,
/// recomputed every iteration.
template <class Residual>
NewtonResult newton_solve(const Residual& fres, std::vector<double> x0,
                          const NewtonOptions& opts = {}) {
    const int n = static_cast<int>(x0.size());
    auto linear_step = [&](const std::vector<double>& x, const std::vector<double>& f) {
        std::vector<double> jac(static_cast<std::size_t>(n) * n);
        std::vector<double> xp = x;
        for (int j = 0; j < n; ++j) {
            const double h = opts.jacobian_perturbation * std::max(1.0, std::abs(x[j]));
            xp[j] = x[j] + h;
            const std::vector<double> fp = fres(xp);
            xp[j] = x[j];
            for (int i = 0; i < n; ++i)
                jac[static_cast<std::size_t>(i) * n + j] = (fp[i] - f[i]) / h;
        }
        DenseLU lu(std::move(jac), n);
        std::vector<double> rhs(n);
        for (int i = 0; i < n; ++i) rhs[i] = -f[i];
        return lu.solve(std::move(rhs));
    };
    return detail::newton_core(fres, linear_step, std::move(x0), opts);
}

}  // namespace spinrod
