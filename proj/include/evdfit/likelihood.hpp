#ifndef EVDFIT_LIKELIHOOD_HPP
#define EVDFIT_LIKELIHOOD_HPP

#include "evdfit/data.hpp"
#include "evdfit/distributions.hpp"
#include "evdfit/params.hpp"

// Exact log-likelihoods for every supported regime/family pair. Censored
// items contribute log-survival mass at the censor value and progressive
// removals contribute removals[i] * log-survival at the i-th failure, always
// through the stable closed forms in distributions.hpp. The overload set is
// the regime matrix: Gumbel is complete-data only (censored fitting runs in
// the least-extreme parameterization).

namespace evdfit {

inline double loglik(const Sample& s, const GumbelParams& p) {
    double ll = 0.0;
    for (double x : s.values()) ll += gumbel_logpdf(x, p);
    return ll;
}

inline double loglik(const Sample& s, const LevParams& p) {
    double ll = 0.0;
    for (double x : s.values()) ll += lev_logpdf(x, p);
    return ll;
}

inline double loglik(const Sample& s, const WeibullParams& p) {
    double ll = 0.0;
    for (double x : s.values()) ll += weibull_logpdf(x, p);
    return ll;
}

inline double loglik(const CensoredSample& c, const LevParams& p) {
    double ll = 0.0;
    for (double x : c.observed()) ll += lev_logpdf(x, p);
    const int censored = c.total_n() - c.num_observed();
    if (censored > 0) ll += censored * lev_log_survival(c.censor_value(), p);
    return ll;
}

inline double loglik(const CensoredSample& c, const WeibullParams& p) {
    double ll = 0.0;
    for (double x : c.observed()) ll += weibull_logpdf(x, p);
    const int censored = c.total_n() - c.num_observed();
    if (censored > 0) ll += censored * weibull_log_survival(c.censor_value(), p);
    return ll;
}

inline double loglik(const ProgressiveSample& s, const LevParams& p) {
    double ll = 0.0;
    for (int i = 0; i < s.num_observed(); ++i) {
        const double x = s.observed()[static_cast<std::size_t>(i)];
        ll += lev_logpdf(x, p);
        const int ri = s.removals()[static_cast<std::size_t>(i)];
        if (ri > 0) ll += ri * lev_log_survival(x, p);
    }
    return ll;
}

inline double loglik(const ProgressiveSample& s, const WeibullParams& p) {
    double ll = 0.0;
    for (int i = 0; i < s.num_observed(); ++i) {
        const double x = s.observed()[static_cast<std::size_t>(i)];
        ll += weibull_logpdf(x, p);
        const int ri = s.removals()[static_cast<std::size_t>(i)];
        if (ri > 0) ll += ri * weibull_log_survival(x, p);
    }
    return ll;
}

}  // namespace evdfit

#endif  // EVDFIT_LIKELIHOOD_HPP
