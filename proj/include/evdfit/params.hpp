#ifndef EVDFIT_PARAMS_HPP
#define EVDFIT_PARAMS_HPP

#include <cmath>
#include <stdexcept>

namespace evdfit {

namespace detail {

inline void require_finite_location(double mu) {
    if (!std::isfinite(mu))
        throw std::invalid_argument("location parameter must be finite");
}

inline void require_positive_scale(double s, const char* name) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument(std::string(name) + " must be finite and > 0");
}

}  // namespace detail

// Type I greatest extreme value (Gumbel) parameters: location mu, scale sigma > 0.
class GumbelParams {
public:
    GumbelParams(double mu, double sigma) : mu_(mu), sigma_(sigma) {
        detail::require_finite_location(mu);
        detail::require_positive_scale(sigma, "sigma");
    }
    double mu() const noexcept { return mu_; }
    double sigma() const noexcept { return sigma_; }

private:
    double mu_;
    double sigma_;
};

// Type I least extreme value parameters: location mu, scale sigma > 0.
class LevParams {
public:
    LevParams(double mu, double sigma) : mu_(mu), sigma_(sigma) {
        detail::require_finite_location(mu);
        detail::require_positive_scale(sigma, "sigma");
    }
    double mu() const noexcept { return mu_; }
    double sigma() const noexcept { return sigma_; }

private:
    double mu_;
    double sigma_;
};

// Two-parameter Weibull: scale theta > 0 (data units), shape beta > 0.
class WeibullParams {
public:
    WeibullParams(double theta, double beta) : theta_(theta), beta_(beta) {
        detail::require_positive_scale(theta, "theta");
        detail::require_positive_scale(beta, "beta");
    }
    double theta() const noexcept { return theta_; }
    double beta() const noexcept { return beta_; }

private:
    double theta_;
    double beta_;
};

// If X is greatest-extreme with (mu, sigma), -X is least-extreme with (-mu, sigma),
// and vice versa.
inline LevParams negated(const GumbelParams& p) { return LevParams(-p.mu(), p.sigma()); }
inline GumbelParams negated(const LevParams& p) { return GumbelParams(-p.mu(), p.sigma()); }

// ln of a Weibull(theta, beta) variate is least-extreme with mu = ln theta,
// sigma = 1/beta; these two maps are inverses of each other.
inline WeibullParams weibull_from_lev(const LevParams& p) {
    return WeibullParams(std::exp(p.mu()), 1.0 / p.sigma());
}

inline LevParams lev_from_weibull(const WeibullParams& p) {
    return LevParams(std::log(p.theta()), 1.0 / p.beta());
}

}  // namespace evdfit

#endif  // EVDFIT_PARAMS_HPP
