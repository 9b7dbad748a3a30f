#pragma once

#include <cmath>
#include <utility>

namespace gfmswing {

struct RootResult
{
    double root = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Safeguarded Newton iteration on a bracketed scalar residual.
///
/// `residual(x)` returns {f(x), f'(x)}. The caller guarantees f(lo) <= 0 <= f(hi)
/// or the reverse. Newton updates that leave the bracket or fail to halve the
/// bracket-relative step fall back to bisection, so the bracket always shrinks.
/// Converged when |f| <= tol or the step falls below tol.
template<class F>
RootResult find_root_bracketed(F&& residual, double lo, double hi, double tol, int max_iterations)
{
    auto [f_lo, df_lo] = residual(lo);
    if (f_lo == 0.0) {
        return {lo, 0.0, 0, true};
    }
    auto [f_hi, df_hi] = residual(hi);
    if (f_hi == 0.0) {
        return {hi, 0.0, 0, true};
    }
    // orient so that f(lo) < 0 < f(hi)
    if (f_lo > 0.0) {
        std::swap(lo, hi);
    }

    double x = 0.5 * (lo + hi);
    double step_before_last = std::abs(hi - lo);
    double last_step = step_before_last;
    auto [f, df] = residual(x);

    RootResult out;
    for (int it = 1; it <= max_iterations; ++it) {
        out.iterations = it;
        const bool newton_leaves_bracket = ((x - hi) * df - f) * ((x - lo) * df - f) > 0.0;
        const bool newton_too_slow = std::abs(2.0 * f) > std::abs(step_before_last * df);
        step_before_last = last_step;
        if (newton_leaves_bracket || newton_too_slow || df == 0.0) {
            last_step = 0.5 * (hi - lo);
            x = lo + last_step;
        } else {
            last_step = f / df;
            x -= last_step;
        }
        std::tie(f, df) = residual(x);
        if (std::abs(f) <= tol || std::abs(last_step) <= tol) {
            out.root = x;
            out.residual = f;
            out.converged = true;
            return out;
        }
        if (f < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
    }
    out.root = x;
    out.residual = f;
    out.converged = false;
    return out;
}

} // namespace gfmswing
