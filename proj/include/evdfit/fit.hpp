#ifndef EVDFIT_FIT_HPP
#define EVDFIT_FIT_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "evdfit/data.hpp"
#include "evdfit/likelihood.hpp"
#include "evdfit/maps.hpp"
#include "evdfit/params.hpp"
#include "evdfit/solver.hpp"

namespace evdfit {

enum class Method { fixed_point, newton };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::fixed_point: return "fixed-point";
        case Method::newton: return "newton";
    }
    return "?";
}

// Full estimation output: the fixed-point parameter (sigma or beta), the
// closed-form back-substitution (mu or theta), solver diagnostics, and the
// log-likelihood at the estimate.
struct FitReport {
    Family family;
    Regime regime;
    double primary;
    double secondary;
    SolverResult solver;
    double log_likelihood;
};

namespace detail {

// Moment seed for the scale families: sample stddev * sqrt(6)/pi. The Weibull
// shape seeds at 1. Seeds only start the iteration; the solver clamps them
// into the bracket.
inline double moment_sigma_seed(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    return sd * std::numbers::sqrt3 * std::numbers::sqrt2 / std::numbers::pi;
}

}  // namespace detail

// The seed used when SolverConfig.initial is absent.
template <typename Data>
double default_initial(const Data& data, Family family) {
    if (family == Family::weibull) return 1.0;
    if constexpr (std::is_same_v<Data, Sample>)
        return detail::moment_sigma_seed(data.values());
    else
        return detail::moment_sigma_seed(data.observed());
}

namespace detail {

template <typename Data>
SolverResult solve_map(const IterationMap& map, SolverConfig cfg, Method method,
                       const Data& data) {
    if (!cfg.initial) cfg.initial = default_initial(data, map.family());
    return method == Method::newton ? newton_raphson_solve(map, cfg)
                                    : fixed_point_solve(map, cfg);
}

}  // namespace detail

inline FitReport fit(const Sample& s, Family family, SolverConfig cfg = {},
                     Method method = Method::fixed_point) {
    const IterationMap map = make_iteration_map(s, family);
    const SolverResult solved = detail::solve_map(map, cfg, method, s);
    FitReport report{family, Regime::complete, solved.estimate, 0.0, solved, 0.0};
    switch (family) {
        case Family::gumbel:
            report.secondary = gumbel_mu(report.primary, s);
            report.log_likelihood = loglik(s, GumbelParams(report.secondary, report.primary));
            break;
        case Family::lev:
            report.secondary = lev_mu(report.primary, s);
            report.log_likelihood = loglik(s, LevParams(report.secondary, report.primary));
            break;
        case Family::weibull:
            report.secondary = weibull_theta(report.primary, s);
            report.log_likelihood = loglik(s, WeibullParams(report.secondary, report.primary));
            break;
    }
    return report;
}

inline FitReport fit(const CensoredSample& c, Family family, SolverConfig cfg = {},
                     Method method = Method::fixed_point) {
    const IterationMap map = make_iteration_map(c, family);
    const SolverResult solved = detail::solve_map(map, cfg, method, c);
    FitReport report{family, map.regime(), solved.estimate, 0.0, solved, 0.0};
    if (family == Family::lev) {
        report.secondary = lev_mu(report.primary, c);
        report.log_likelihood = loglik(c, LevParams(report.secondary, report.primary));
    } else {
        report.secondary = weibull_theta(report.primary, c);
        report.log_likelihood = loglik(c, WeibullParams(report.secondary, report.primary));
    }
    return report;
}

inline FitReport fit(const ProgressiveSample& p, Family family, SolverConfig cfg = {},
                     Method method = Method::fixed_point) {
    const IterationMap map = make_iteration_map(p, family);
    const SolverResult solved = detail::solve_map(map, cfg, method, p);
    FitReport report{family, Regime::progressive, solved.estimate, 0.0, solved, 0.0};
    if (family == Family::lev) {
        report.secondary = lev_mu(report.primary, p);
        report.log_likelihood = loglik(p, LevParams(report.secondary, report.primary));
    } else {
        report.secondary = weibull_theta(report.primary, p);
        report.log_likelihood = loglik(p, WeibullParams(report.secondary, report.primary));
    }
    return report;
}

}  // namespace evdfit

#endif  // EVDFIT_FIT_HPP
