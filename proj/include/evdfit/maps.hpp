#ifndef EVDFIT_MAPS_HPP
#define EVDFIT_MAPS_HPP

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "evdfit/data.hpp"
#include "evdfit/errors.hpp"

// The score equation of each regime, rearranged as a scalar fixed-point map
// g in the scale (sigma) or shape (beta) parameter, plus the closed-form
// back-substitution for the second parameter. Every map constructed here is
// monotone non-increasing wherever it is positive, so h(t) = t - g(t) has a
// unique interior root.
//
// Numerical policy: exponential weights are evaluated after shifting by the
// largest exponent (weights end up in (0, 1]), power weights after dividing
// by the largest data value, so no intermediate overflows for any positive
// argument.

namespace evdfit {

enum class Family { gumbel, lev, weibull };
enum class Regime { complete, type1, type2, progressive };

inline const char* to_string(Family f) {
    switch (f) {
        case Family::gumbel: return "gumbel";
        case Family::lev: return "lev";
        case Family::weibull: return "weibull";
    }
    return "?";
}

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::complete: return "complete";
        case Regime::type1: return "type1";
        case Regime::type2: return "type2";
        case Regime::progressive: return "progressive";
    }
    return "?";
}

namespace detail {

inline void require_positive_argument(double t, const char* name) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::invalid_argument(std::string(name) + " must be finite and > 0");
}

// One term of a censored-likelihood sum: an observed failure with weight 1,
// a failure carrying progressive removals with weight R+1, or the censoring
// mass (n - r) sitting at the censor value.
struct WeightedPoint {
    double value;
    double weight;
};

// Term lists are kept in ascending value order with the censoring mass merged
// into the last observed point whenever the censor value coincides with it.
// The merge makes the Type-II list, the Type-I list with T = x(r), and the
// progressive list with R = (0,...,0,n-r) identical element by element, so
// the corresponding maps agree bitwise, not just analytically.

inline std::vector<WeightedPoint> term_list(const Sample& s) {
    std::vector<WeightedPoint> pts(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) pts[i] = {s.values()[i], 1.0};
    return pts;
}

inline std::vector<WeightedPoint> term_list(const CensoredSample& c) {
    std::vector<WeightedPoint> pts;
    pts.reserve(c.observed().size() + 1);
    for (double x : c.observed()) pts.push_back({x, 1.0});
    const int mass = c.total_n() - c.num_observed();
    if (mass > 0) {
        const double cv = c.censor_value();
        if (cv == pts.back().value)
            pts.back().weight += static_cast<double>(mass);
        else
            pts.push_back({cv, static_cast<double>(mass)});
    }
    return pts;
}

inline std::vector<WeightedPoint> term_list(const ProgressiveSample& p) {
    std::vector<WeightedPoint> pts(p.observed().size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        pts[i] = {p.observed()[i], static_cast<double>(p.removals()[i] + 1)};
    return pts;
}

// Weighted mean of the values under weights w_i e^{v_i / sigma}; the largest
// value is the shift, so every exponential is <= 1.
inline double exp_weighted_mean(double sigma, std::span<const WeightedPoint> pts) {
    const double shift = pts.back().value;
    double s0 = 0.0;
    double s1 = 0.0;
    for (const auto& p : pts) {
        const double w = p.weight * std::exp((p.value - shift) / sigma);
        s0 += w;
        s1 += w * p.value;
    }
    return s1 / s0;
}

inline double lev_mu_value(double sigma, std::span<const WeightedPoint> pts, double r) {
    const double shift = pts.back().value;
    double s0 = 0.0;
    for (const auto& p : pts) s0 += p.weight * std::exp((p.value - shift) / sigma);
    return shift + sigma * std::log(s0 / r);
}

// [weighted mean of ln v under weights w_i v_i^beta] - [plain mean of the
// observed ln x]; the reciprocal is the beta map. Powers are normalized by
// the largest value.
inline double weibull_inner(double beta, std::span<const WeightedPoint> pts,
                            double mean_log_observed) {
    const double vmax = pts.back().value;
    double p0 = 0.0;
    double p1 = 0.0;
    for (const auto& p : pts) {
        const double w = p.weight * std::pow(p.value / vmax, beta);
        p0 += w;
        p1 += w * std::log(p.value);
    }
    return p1 / p0 - mean_log_observed;
}

inline double weibull_theta_value(double beta, std::span<const WeightedPoint> pts, double r) {
    const double vmax = pts.back().value;
    double p0 = 0.0;
    for (const auto& p : pts) p0 += p.weight * std::pow(p.value / vmax, beta);
    return vmax * std::pow(p0 / r, 1.0 / beta);
}

inline void require_weibull_data(double smallest) {
    if (!(smallest > 0.0))
        throw std::domain_error("Weibull fitting requires strictly positive data");
}

inline void require_nondegenerate_for_beta_map(bool degenerate) {
    // all values equal makes the inner bracket vanish; the reciprocal map is undefined
    if (degenerate)
        throw std::domain_error("degenerate sample: the shape map has no positive fixed point");
}

}  // namespace detail

// ---- complete-data Gumbel ----
// g(sigma) = mean(x) - sum(x_i e^{-x_i/sigma}) / sum(e^{-x_i/sigma});
// value lies in [0, mean(x) - min(x)] for every sigma > 0.
inline double gumbel_sigma_map(double sigma, const Sample& s) {
    detail::require_positive_argument(sigma, "sigma");
    const double shift = s.min();  // largest exponent of e^{-x/sigma}
    double s0 = 0.0;
    double s1 = 0.0;
    for (double x : s.values()) {
        const double w = std::exp(-(x - shift) / sigma);
        s0 += w;
        s1 += w * x;
    }
    return s.mean() - s1 / s0;
}

// mu = sigma ln[n / sum(e^{-x_i/sigma})]
inline double gumbel_mu(double sigma, const Sample& s) {
    detail::require_positive_argument(sigma, "sigma");
    const double shift = s.min();
    double s0 = 0.0;
    for (double x : s.values()) s0 += std::exp(-(x - shift) / sigma);
    return shift + sigma * std::log(static_cast<double>(s.size()) / s0);
}

// ---- least-extreme-value scale maps ----
// g(sigma) = [weighted mean of values under w_i e^{v_i/sigma}] - mean of the
// observed values, with the censoring mass weighted (n - r) at the censor
// value (singly censored) or R_i + 1 at each failure (progressive).

inline double lev_sigma_map(double sigma, const Sample& s) {
    detail::require_positive_argument(sigma, "sigma");
    const auto pts = detail::term_list(s);
    return detail::exp_weighted_mean(sigma, pts) - s.mean();
}

inline double lev_sigma_map(double sigma, const CensoredSample& c) {
    detail::require_positive_argument(sigma, "sigma");
    const auto pts = detail::term_list(c);
    return detail::exp_weighted_mean(sigma, pts) - c.observed_mean();
}

inline double lev_sigma_map(double sigma, const ProgressiveSample& p) {
    detail::require_positive_argument(sigma, "sigma");
    const auto pts = detail::term_list(p);
    return detail::exp_weighted_mean(sigma, pts) - p.observed_mean();
}

// mu = sigma ln[(1/r) sum w_i e^{v_i/sigma}]

inline double lev_mu(double sigma, const Sample& s) {
    detail::require_positive_argument(sigma, "sigma");
    const auto pts = detail::term_list(s);
    return detail::lev_mu_value(sigma, pts, static_cast<double>(s.size()));
}

inline double lev_mu(double sigma, const CensoredSample& c) {
    detail::require_positive_argument(sigma, "sigma");
    const auto pts = detail::term_list(c);
    return detail::lev_mu_value(sigma, pts, static_cast<double>(c.num_observed()));
}

inline double lev_mu(double sigma, const ProgressiveSample& p) {
    detail::require_positive_argument(sigma, "sigma");
    const auto pts = detail::term_list(p);
    return detail::lev_mu_value(sigma, pts, static_cast<double>(p.num_observed()));
}

// ---- Weibull shape maps ----
// g(beta) = [weighted mean of ln v under w_i v_i^beta - mean of observed ln x]^{-1}

inline double weibull_beta_map(double beta, const Sample& s) {
    detail::require_positive_argument(beta, "beta");
    detail::require_weibull_data(s.min());
    detail::require_nondegenerate_for_beta_map(s.degenerate());
    const auto pts = detail::term_list(s);
    double mean_log = 0.0;
    for (double x : s.values()) mean_log += std::log(x);
    mean_log /= static_cast<double>(s.size());
    return 1.0 / detail::weibull_inner(beta, pts, mean_log);
}

inline double weibull_beta_map(double beta, const CensoredSample& c) {
    detail::require_positive_argument(beta, "beta");
    detail::require_weibull_data(c.observed().front());
    // all term-list points coincide when the observed values are equal and the
    // censoring mass (if any) sits at that same value
    detail::require_nondegenerate_for_beta_map(
        c.degenerate() && (c.total_n() == c.num_observed() ||
                           c.censor_value() == c.observed().back()));
    const auto pts = detail::term_list(c);
    double mean_log = 0.0;
    for (double x : c.observed()) mean_log += std::log(x);
    mean_log /= static_cast<double>(c.num_observed());
    return 1.0 / detail::weibull_inner(beta, pts, mean_log);
}

inline double weibull_beta_map(double beta, const ProgressiveSample& p) {
    detail::require_positive_argument(beta, "beta");
    detail::require_weibull_data(p.observed().front());
    detail::require_nondegenerate_for_beta_map(p.degenerate());
    const auto pts = detail::term_list(p);
    double mean_log = 0.0;
    for (double x : p.observed()) mean_log += std::log(x);
    mean_log /= static_cast<double>(p.num_observed());
    return 1.0 / detail::weibull_inner(beta, pts, mean_log);
}

// theta = [(1/r) sum w_i v_i^beta]^{1/beta}

inline double weibull_theta(double beta, const Sample& s) {
    detail::require_positive_argument(beta, "beta");
    detail::require_weibull_data(s.min());
    const auto pts = detail::term_list(s);
    return detail::weibull_theta_value(beta, pts, static_cast<double>(s.size()));
}

inline double weibull_theta(double beta, const CensoredSample& c) {
    detail::require_positive_argument(beta, "beta");
    detail::require_weibull_data(c.observed().front());
    const auto pts = detail::term_list(c);
    return detail::weibull_theta_value(beta, pts, static_cast<double>(c.num_observed()));
}

inline double weibull_theta(double beta, const ProgressiveSample& p) {
    detail::require_positive_argument(beta, "beta");
    detail::require_weibull_data(p.observed().front());
    const auto pts = detail::term_list(p);
    return detail::weibull_theta_value(beta, pts, static_cast<double>(p.num_observed()));
}

// A regime's fixed-point map bound to its data, together with a bracket
// known to contain any fixed point. Immutable and safe to share across
// threads.
struct Interval {
    double lo;
    double hi;
};

class IterationMap {
public:
    IterationMap(std::function<double(double)> eval, Interval bracket, Family family,
                 Regime regime)
        : eval_(std::move(eval)), bracket_(bracket), family_(family), regime_(regime) {}

    double operator()(double t) const { return eval_(t); }
    const std::function<double(double)>& eval() const noexcept { return eval_; }
    const Interval& bracket() const noexcept { return bracket_; }
    Family family() const noexcept { return family_; }
    Regime regime() const noexcept { return regime_; }
    std::string tag() const { return std::string(to_string(family_)) + "/" + to_string(regime_); }

private:
    std::function<double(double)> eval_;
    Interval bracket_;
    Family family_;
    Regime regime_;
};

// Locate an interval (lo, hi] with h(lo) < 0 <= h(hi) for h(t) = t - g(t).
// Expands hi by doubling from the hint; walks lo downward by halving. Where a
// Weibull map turns non-positive (left of its pole) the candidate is moved
// back up instead, bisecting between the known-bad point and the current hi.
inline Interval fixed_point_bracket(const std::function<double(double)>& g, double hint) {
    detail::require_positive_argument(hint, "bracket hint");

    double hi = hint;
    double ghi = g(hi);
    for (int guard = 0; !(std::isfinite(ghi) && ghi > 0.0 && hi >= ghi); ++guard) {
        if (guard > 240)
            throw convergence_error("no interior fixed point: upper bracket search failed");
        hi *= 2.0;
        ghi = g(hi);
    }

    double bad = 0.0;  // highest argument known to sit at or left of a pole
    double lo = 0.5 * hi;
    for (int k = 0; k < 2000; ++k) {
        const double gl = g(lo);
        if (std::isfinite(gl) && gl > 0.0) {
            if (lo < gl) return {lo, hi};
            hi = lo;  // h(lo) >= 0: lo is still at or above the fixed point
            lo = bad > 0.0 ? 0.5 * (bad + hi) : 0.5 * lo;
        } else {
            bad = lo;
            lo = 0.5 * (bad + hi);
        }
    }
    throw convergence_error("no interior fixed point: lower bracket search failed");
}

inline Interval fixed_point_bracket(const IterationMap& map) { return map.bracket(); }

namespace detail {

inline void require_fittable(std::size_t observed, bool degenerate) {
    if (observed < 2)
        throw std::invalid_argument("fitting requires at least two observed values");
    if (degenerate)
        throw std::domain_error("degenerate sample: all observed values are equal");
}

}  // namespace detail

// Bind a regime/family map to its data and bracket it. The bracket hint is
// the sigma -> 0+ limit of the map for the location-scale families (the
// complete-Gumbel case recovers the mean(x) - min(x) bound) and 1 for the
// Weibull shape.
inline IterationMap make_iteration_map(const Sample& s, Family family) {
    detail::require_fittable(s.size(), s.degenerate());
    switch (family) {
        case Family::gumbel: {
            auto eval = [s](double t) { return gumbel_sigma_map(t, s); };
            return {eval, fixed_point_bracket(eval, s.mean() - s.min()), family,
                    Regime::complete};
        }
        case Family::lev: {
            auto eval = [s](double t) { return lev_sigma_map(t, s); };
            return {eval, fixed_point_bracket(eval, s.max() - s.mean()), family,
                    Regime::complete};
        }
        case Family::weibull: {
            detail::require_weibull_data(s.min());
            auto eval = [s](double t) { return weibull_beta_map(t, s); };
            return {eval, fixed_point_bracket(eval, 1.0), family, Regime::complete};
        }
    }
    throw std::invalid_argument("unknown family");
}

inline IterationMap make_iteration_map(const CensoredSample& c, Family family) {
    detail::require_fittable(c.observed().size(), c.degenerate());
    const Regime regime = c.mode() == CensoringMode::type1 ? Regime::type1 : Regime::type2;
    switch (family) {
        case Family::lev: {
            auto eval = [c](double t) { return lev_sigma_map(t, c); };
            const double hint = c.censor_value() - c.observed_mean();
            return {eval, fixed_point_bracket(eval, hint), family, regime};
        }
        case Family::weibull: {
            detail::require_weibull_data(c.observed().front());
            auto eval = [c](double t) { return weibull_beta_map(t, c); };
            return {eval, fixed_point_bracket(eval, 1.0), family, regime};
        }
        case Family::gumbel:
            break;
    }
    throw std::invalid_argument(
        "censored fitting runs in the least-extreme parameterization; Gumbel supports "
        "complete samples only");
}

inline IterationMap make_iteration_map(const ProgressiveSample& p, Family family) {
    detail::require_fittable(p.observed().size(), p.degenerate());
    switch (family) {
        case Family::lev: {
            auto eval = [p](double t) { return lev_sigma_map(t, p); };
            const double hint = p.observed().back() - p.observed_mean();
            return {eval, fixed_point_bracket(eval, hint), family, Regime::progressive};
        }
        case Family::weibull: {
            detail::require_weibull_data(p.observed().front());
            auto eval = [p](double t) { return weibull_beta_map(t, p); };
            return {eval, fixed_point_bracket(eval, 1.0), family, Regime::progressive};
        }
        case Family::gumbel:
            break;
    }
    throw std::invalid_argument(
        "censored fitting runs in the least-extreme parameterization; Gumbel supports "
        "complete samples only");
}

}  // namespace evdfit

#endif  // EVDFIT_MAPS_HPP
