#ifndef EVDFIT_DISTRIBUTIONS_HPP
#define EVDFIT_DISTRIBUTIONS_HPP

#include <cmath>
#include <stdexcept>

#include "evdfit/params.hpp"

namespace evdfit {

// ---- Type I greatest extreme value (Gumbel) ----
// F(x) = exp(-exp(-z)), z = (x - mu)/sigma

inline double gumbel_logpdf(double x, const GumbelParams& p) {
    const double z = (x - p.mu()) / p.sigma();
    return -std::log(p.sigma()) - z - std::exp(-z);
}

inline double gumbel_cdf(double x, const GumbelParams& p) {
    const double z = (x - p.mu()) / p.sigma();
    return std::exp(-std::exp(-z));
}

inline double gumbel_quantile(double u, const GumbelParams& p) {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("quantile requires u in (0, 1)");
    return p.mu() - p.sigma() * std::log(-std::log(u));
}

// ---- Type I least extreme value ----
// F(x) = 1 - exp(-exp(z)), z = (x - mu)/sigma

inline double lev_logpdf(double x, const LevParams& p) {
    const double z = (x - p.mu()) / p.sigma();
    return -std::log(p.sigma()) + z - std::exp(z);
}

inline double lev_cdf(double x, const LevParams& p) {
    const double z = (x - p.mu()) / p.sigma();
    return -std::expm1(-std::exp(z));
}

// ln(1 - F) without cancellation: exactly -e^{z}.
inline double lev_log_survival(double x, const LevParams& p) {
    const double z = (x - p.mu()) / p.sigma();
    return -std::exp(z);
}

inline double lev_quantile(double u, const LevParams& p) {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("quantile requires u in (0, 1)");
    return p.mu() + p.sigma() * std::log(-std::log1p(-u));
}

// ---- Two-parameter Weibull ----
// F(x) = 1 - exp(-(x/theta)^beta), x > 0

inline double weibull_logpdf(double x, const WeibullParams& p) {
    if (!(x > 0.0)) throw std::domain_error("Weibull density requires x > 0");
    const double lt = std::log(p.theta());
    return std::log(p.beta()) - p.beta() * lt + (p.beta() - 1.0) * std::log(x) -
           std::pow(x / p.theta(), p.beta());
}

inline double weibull_cdf(double x, const WeibullParams& p) {
    if (x <= 0.0) return 0.0;
    return -std::expm1(-std::pow(x / p.theta(), p.beta()));
}

// ln(1 - F) = -(x/theta)^beta.
inline double weibull_log_survival(double x, const WeibullParams& p) {
    if (!(x > 0.0)) throw std::domain_error("Weibull survival requires x > 0");
    return -std::pow(x / p.theta(), p.beta());
}

inline double weibull_quantile(double u, const WeibullParams& p) {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("quantile requires u in (0, 1)");
    return p.theta() * std::pow(-std::log1p(-u), 1.0 / p.beta());
}

}  // namespace evdfit

#endif  // EVDFIT_DISTRIBUTIONS_HPP
