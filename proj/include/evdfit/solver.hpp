#ifndef EVDFIT_SOLVER_HPP
#define EVDFIT_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "evdfit/errors.hpp"
#include "evdfit/maps.hpp"

namespace evdfit {

enum class Termination { converged, fallback_bisection, max_iterations_exceeded };

inline const char* to_string(Termination t) {
    switch (t) {
        case Termination::converged: return "converged";
        case Termination::fallback_bisection: return "fallback_bisection";
        case Termination::max_iterations_exceeded: return "max_iterations_exceeded";
    }
    return "?";
}

struct SolverConfig {
    // seed for the iteration; when absent the fit drivers supply a
    // method-of-moments seed and the raw solver uses the bracket midpoint
    std::optional<double> initial{};
    double tolerance = 5e-5;
    int max_iterations = 500;
    bool aitken = false;            // delta-squared acceleration, off by default
    bool use_fallback = true;       // bisection on stagnation / exhaustion
    bool relative_stopping = false; // |x_{k+1}-x_k| < tol*max(1,|x_{k+1}|) instead of absolute
};

struct SolverResult {
    double estimate = 0.0;
    int iterations = 0;                 // map evaluations in the plain-iteration phase
    std::vector<double> residual_trace; // |x_{k+1} - x_k| per evaluation
    Termination termination = Termination::converged;
};

namespace detail {

inline void validate(const SolverConfig& cfg) {
    if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
    if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (cfg.initial && !(*cfg.initial > 0.0))
        throw std::invalid_argument("initial value must be > 0");
}

inline bool stop(double residual, double next, const SolverConfig& cfg) {
    const double tol = cfg.relative_stopping
                           ? cfg.tolerance * std::max(1.0, std::abs(next))
                           : cfg.tolerance;
    return residual < tol;
}

}  // namespace detail

// Bisection on h over a sign-change interval: h(lo) < 0 <= h(hi). Returns a
// point with |h| < tol or once the interval is narrower than tol. The
// monotone-decreasing map argument makes h strictly increasing, so the root
// is unique and bisection cannot stall.
inline double bisection_fallback(const std::function<double(double)>& h, Interval bracket,
                                 double tol, int max_iterations = 200) {
    double lo = bracket.lo;
    double hi = bracket.hi;
    const double fhi = h(hi);
    if (fhi == 0.0) return hi;
    const double flo = h(lo);
    if (!(flo < 0.0) || !(fhi > 0.0))
        throw convergence_error("bisection: no sign change across the bracket");
    for (int k = 0; k < max_iterations; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double fm = h(mid);
        if (std::isnan(fm)) throw convergence_error("bisection: non-finite evaluation");
        if (std::abs(fm) < tol || (hi - lo) < tol) return mid;
        (fm < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Plain fixed-point iteration x_{k+1} = g(x_k) with the absolute stopping
// rule |x_{k+1} - x_k| < tolerance. Iterates are clamped into the bracket;
// residuals that fail to decrease for 10 consecutive evaluations, or an
// exhausted iteration budget, hand over to bisection when the fallback is
// enabled. Deterministic: identical config and data give an identical trace.
inline SolverResult fixed_point_solve(const IterationMap& map, const SolverConfig& cfg = {}) {
    detail::validate(cfg);
    const Interval br = map.bracket();
    double x = std::clamp(cfg.initial.value_or(0.5 * (br.lo + br.hi)), br.lo, br.hi);

    SolverResult out;
    out.residual_trace.reserve(static_cast<std::size_t>(std::min(cfg.max_iterations, 1024)));

    auto h = [&map](double t) { return t - map(t); };

    int stagnant = 0;
    double prev_residual = std::numeric_limits<double>::infinity();
    // Aitken state: window of the two previous iterates of the current cycle
    bool have_base = false;
    double base = 0.0;

    for (int k = 1; k <= cfg.max_iterations; ++k) {
        const double gx = map(x);
        if (!std::isfinite(gx))
            throw convergence_error("fixed-point iteration produced a non-finite value",
                                    out.residual_trace);
        const double residual = std::abs(gx - x);
        out.residual_trace.push_back(residual);
        out.iterations = k;
        if (detail::stop(residual, gx, cfg)) {
            out.estimate = gx;
            out.termination = Termination::converged;
            return out;
        }

        stagnant = residual >= prev_residual ? stagnant + 1 : 0;
        prev_residual = residual;
        if (stagnant >= 10 && cfg.use_fallback) {
            out.estimate = bisection_fallback(h, br, cfg.tolerance);
            out.termination = Termination::fallback_bisection;
            return out;
        }

        double next = gx;
        if (cfg.aitken) {
            if (!have_base) {
                base = x;
                have_base = true;
            } else {
                // base, x = g(base), gx = g(x): accelerate and restart the cycle
                const double denom = gx - 2.0 * x + base;
                if (std::abs(denom) > std::numeric_limits<double>::min()) {
                    const double accelerated = base - (x - base) * (x - base) / denom;
                    if (std::isfinite(accelerated)) next = accelerated;
                }
                have_base = false;
            }
        }
        x = std::clamp(next, br.lo, br.hi);
    }

    if (cfg.use_fallback) {
        out.estimate = bisection_fallback(h, br, cfg.tolerance);
        out.termination = Termination::fallback_bisection;
        return out;
    }
    out.estimate = x;
    out.termination = Termination::max_iterations_exceeded;
    return out;
}

// Newton-Raphson on a score function h with a central-difference derivative,
// for iteration-count comparison against the fixed point. Stops when
// |h(x)| < tolerance (the same defect the fixed-point rule bounds at its
// final iterate). A derivative below 1e-12 in magnitude is treated as a
// singular step and handed to bisection.
inline SolverResult newton_raphson_solve(const std::function<double(double)>& score,
                                         Interval bracket, const SolverConfig& cfg = {}) {
    detail::validate(cfg);
    double x = std::clamp(cfg.initial.value_or(0.5 * (bracket.lo + bracket.hi)), bracket.lo,
                          bracket.hi);
    SolverResult out;

    double fx = score(x);
    if (!std::isfinite(fx))
        throw convergence_error("Newton iteration: non-finite score at the initial value");
    const double diff_scale = std::cbrt(std::numeric_limits<double>::epsilon());

    for (int k = 1; k <= cfg.max_iterations; ++k) {
        double step = diff_scale * std::max(std::abs(x), 1e-3);
        step = std::min(step, 0.5 * x);  // keep x - step positive
        const double derivative = (score(x + step) - score(x - step)) / (2.0 * step);
        if (!std::isfinite(derivative))
            throw convergence_error("Newton iteration: non-finite derivative",
                                    out.residual_trace);
        if (std::abs(derivative) < 1e-12) {
            out.estimate = bisection_fallback(score, bracket, cfg.tolerance);
            out.termination = Termination::fallback_bisection;
            return out;
        }
        const double xn = std::clamp(x - fx / derivative, bracket.lo, bracket.hi);
        out.residual_trace.push_back(std::abs(xn - x));
        out.iterations = k;
        fx = score(xn);
        x = xn;
        if (!std::isfinite(fx))
            throw convergence_error("Newton iteration produced a non-finite value",
                                    out.residual_trace);
        if (detail::stop(std::abs(fx), x, cfg)) {
            out.estimate = x;
            out.termination = Termination::converged;
            return out;
        }
    }

    if (cfg.use_fallback) {
        out.estimate = bisection_fallback(score, bracket, cfg.tolerance);
        out.termination = Termination::fallback_bisection;
        return out;
    }
    out.estimate = x;
    out.termination = Termination::max_iterations_exceeded;
    return out;
}

inline SolverResult newton_raphson_solve(const IterationMap& map, const SolverConfig& cfg = {}) {
    auto score = [&map](double t) { return t - map(t); };
    return newton_raphson_solve(score, map.bracket(), cfg);
}

}  // namespace evdfit

#endif  // EVDFIT_SOLVER_HPP
