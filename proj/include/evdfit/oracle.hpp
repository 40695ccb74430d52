#ifndef EVDFIT_ORACLE_HPP
#define EVDFIT_ORACLE_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "evdfit/data.hpp"
#include "evdfit/errors.hpp"
#include "evdfit/fit.hpp"
#include "evdfit/likelihood.hpp"
#include "evdfit/maps.hpp"

// Brute-force maximizer of the exact profile log-likelihood, used to validate
// the fixed-point estimates. The secondary parameter is concentrated out
// through its closed form, the remaining one-dimensional profile is scanned
// on a log-spaced grid and refined by golden-section search. Deliberately
// shares no root-finding machinery with the solvers.

namespace evdfit {

struct GridPoint {
    double param;
    double log_likelihood;
};

struct GridScan {
    std::vector<GridPoint> points;
    // single interior rise-then-fall shape; false flags a second local maximum
    bool unimodal;
};

inline GridScan grid_scan(const std::function<double(double)>& profile, double lo, double hi,
                          int points = 64) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("grid_scan requires 0 < lo < hi");
    if (points < 8) throw std::invalid_argument("grid_scan requires at least 8 points");

    GridScan scan;
    scan.points.reserve(static_cast<std::size_t>(points));
    const double step = (std::log(hi) - std::log(lo)) / (points - 1);
    int finite_count = 0;
    for (int i = 0; i < points; ++i) {
        const double t = std::exp(std::log(lo) + step * i);
        double value;
        try {
            value = profile(t);
        } catch (const std::exception&) {
            value = std::numeric_limits<double>::quiet_NaN();
        }
        if (std::isfinite(value)) ++finite_count;
        scan.points.push_back({t, value});
    }
    if (finite_count == 0)
        throw std::domain_error("profile log-likelihood is non-finite across the whole grid");

    // once the finite part of the profile starts to fall it must not rise again
    bool falling = false;
    scan.unimodal = true;
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (const auto& p : scan.points) {
        if (!std::isfinite(p.log_likelihood)) continue;
        if (std::isfinite(prev)) {
            if (p.log_likelihood < prev) {
                falling = true;
            } else if (p.log_likelihood > prev && falling) {
                scan.unimodal = false;
            }
        }
        prev = p.log_likelihood;
    }
    return scan;
}

struct OracleResult {
    double primary;
    double secondary;
    double log_likelihood;
    int grid_evaluations;
    int refine_evaluations;
    Interval refined;  // final golden-section interval
    bool unimodal_scan;
};

namespace detail {

// Golden-section maximization to interval width `width`; returns the best
// probed point, so the reported value dominates every evaluation made.
struct GoldenOutcome {
    double arg;
    double value;
    int evaluations;
    Interval window;
};

inline GoldenOutcome golden_section_max(const std::function<double(double)>& f, double a,
                                        double b, double width) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int evals = 2;
    double best_arg = fc >= fd ? c : d;
    double best_val = fc >= fd ? fc : fd;
    while ((b - a) > width) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
            ++evals;
            if (fc > best_val) { best_val = fc; best_arg = c; }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
            ++evals;
            if (fd > best_val) { best_val = fd; best_arg = d; }
        }
    }
    return {best_arg, best_val, evals, {a, b}};
}

}  // namespace detail

// Maximize a profile log-likelihood over [lo, hi]: 64-point log-spaced scan,
// then golden-section refinement to interval width 1e-8 around the grid
// argmax. A maximum sitting on the scan boundary widens the interval (up to
// three doublings each way) before giving up.
inline OracleResult profile_maximize(const std::function<double(double)>& profile,
                                     const std::function<double(double)>& secondary,
                                     double lo, double hi) {
    int grid_evals = 0;
    for (int attempt = 0; attempt <= 3; ++attempt) {
        const GridScan scan = grid_scan(profile, lo, hi);
        grid_evals += static_cast<int>(scan.points.size());

        int best = -1;
        for (int i = 0; i < static_cast<int>(scan.points.size()); ++i) {
            const auto& p = scan.points[static_cast<std::size_t>(i)];
            if (!std::isfinite(p.log_likelihood)) continue;
            if (best < 0 ||
                p.log_likelihood > scan.points[static_cast<std::size_t>(best)].log_likelihood)
                best = i;
        }
        const int last = static_cast<int>(scan.points.size()) - 1;
        if (best == 0) {
            lo /= 2.0;
            continue;
        }
        if (best == last) {
            hi *= 2.0;
            continue;
        }

        const double a = scan.points[static_cast<std::size_t>(best - 1)].param;
        const double b = scan.points[static_cast<std::size_t>(best + 1)].param;
        const auto refined = detail::golden_section_max(profile, a, b, 1e-8);
        return {refined.arg,           secondary(refined.arg), refined.value,
                grid_evals,            refined.evaluations,    refined.window,
                scan.unimodal};
    }
    throw convergence_error(
        "profile maximum stayed on the search boundary after three widenings");
}

namespace detail {

inline double beta_scan_seed(const std::vector<double>& observed) {
    std::vector<double> logs(observed.size());
    for (std::size_t i = 0; i < observed.size(); ++i) logs[i] = std::log(observed[i]);
    const double sigma_seed = moment_sigma_seed(logs);
    return sigma_seed > 0.0 ? 1.0 / sigma_seed : 1.0;
}

}  // namespace detail

// Profile-likelihood oracle fits. Validation mirrors the estimators: at least
// two observed values, non-degenerate, positive data for Weibull, Gumbel on
// complete samples only. The initial search interval spans a factor of 64
// either side of a moment seed.

inline OracleResult oracle_fit(const Sample& s, Family family) {
    detail::require_fittable(s.size(), s.degenerate());
    switch (family) {
        case Family::gumbel: {
            auto profile = [s](double sigma) {
                return loglik(s, GumbelParams(gumbel_mu(sigma, s), sigma));
            };
            auto secondary = [s](double sigma) { return gumbel_mu(sigma, s); };
            const double seed = detail::moment_sigma_seed(s.values());
            return profile_maximize(profile, secondary, seed / 64.0, seed * 64.0);
        }
        case Family::lev: {
            auto profile = [s](double sigma) {
                return loglik(s, LevParams(lev_mu(sigma, s), sigma));
            };
            auto secondary = [s](double sigma) { return lev_mu(sigma, s); };
            const double seed = detail::moment_sigma_seed(s.values());
            return profile_maximize(profile, secondary, seed / 64.0, seed * 64.0);
        }
        case Family::weibull: {
            detail::require_weibull_data(s.min());
            auto profile = [s](double beta) {
                return loglik(s, WeibullParams(weibull_theta(beta, s), beta));
            };
            auto secondary = [s](double beta) { return weibull_theta(beta, s); };
            const double seed = detail::beta_scan_seed(s.values());
            return profile_maximize(profile, secondary, seed / 64.0, seed * 64.0);
        }
    }
    throw std::invalid_argument("unknown family");
}

inline OracleResult oracle_fit(const CensoredSample& c, Family family) {
    detail::require_fittable(c.observed().size(), c.degenerate());
    if (family == Family::lev) {
        auto profile = [c](double sigma) {
            return loglik(c, LevParams(lev_mu(sigma, c), sigma));
        };
        auto secondary = [c](double sigma) { return lev_mu(sigma, c); };
        const double seed = detail::moment_sigma_seed(c.observed());
        return profile_maximize(profile, secondary, seed / 64.0, seed * 64.0);
    }
    if (family == Family::weibull) {
        detail::require_weibull_data(c.observed().front());
        auto profile = [c](double beta) {
            return loglik(c, WeibullParams(weibull_theta(beta, c), beta));
        };
        auto secondary = [c](double beta) { return weibull_theta(beta, c); };
        const double seed = detail::beta_scan_seed(c.observed());
        return profile_maximize(profile, secondary, seed / 64.0, seed * 64.0);
    }
    throw std::invalid_argument("Gumbel oracle supports complete samples only");
}

inline OracleResult oracle_fit(const ProgressiveSample& p, Family family) {
    detail::require_fittable(p.observed().size(), p.degenerate());
    if (family == Family::lev) {
        auto profile = [p](double sigma) {
            return loglik(p, LevParams(lev_mu(sigma, p), sigma));
        };
        auto secondary = [p](double sigma) { return lev_mu(sigma, p); };
        const double seed = detail::moment_sigma_seed(p.observed());
        return profile_maximize(profile, secondary, seed / 64.0, seed * 64.0);
    }
    if (family == Family::weibull) {
        detail::require_weibull_data(p.observed().front());
        auto profile = [p](double beta) {
            return loglik(p, WeibullParams(weibull_theta(beta, p), beta));
        };
        auto secondary = [p](double beta) { return weibull_theta(beta, p); };
        const double seed = detail::beta_scan_seed(p.observed());
        return profile_maximize(profile, secondary, seed / 64.0, seed * 64.0);
    }
    throw std::invalid_argument("Gumbel oracle supports complete samples only");
}

}  // namespace evdfit

#endif  // EVDFIT_ORACLE_HPP
