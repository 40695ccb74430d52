#ifndef EVDFIT_DATA_HPP
#define EVDFIT_DATA_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace evdfit {

namespace detail {

inline void require_all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) throw std::invalid_argument("sample values must be finite");
}

}  // namespace detail

// A complete sample. Values are sorted ascending at ingestion and immutable
// afterwards; all formulas downstream are written over order statistics.
// Construction accepts a singleton (needed for likelihood evaluation);
// fitting rejects anything below two distinct values.
class Sample {
public:
    explicit Sample(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty()) throw std::invalid_argument("sample must not be empty");
        detail::require_all_finite(values_);
        std::sort(values_.begin(), values_.end());
    }

    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double min() const noexcept { return values_.front(); }
    double max() const noexcept { return values_.back(); }
    double mean() const noexcept {
        return std::accumulate(values_.begin(), values_.end(), 0.0) /
               static_cast<double>(values_.size());
    }
    // All values identical; no interior fixed point exists for such data.
    bool degenerate() const noexcept { return values_.front() == values_.back(); }

private:
    std::vector<double> values_;
};

enum class CensoringMode { type1, type2 };

// A singly right-censored sample: the r smallest lifetimes out of n items on
// test were observed. Type II stops at the r-th failure; Type I stops at a
// pre-specified time T >= every observed value. r = n is permitted: the
// censoring terms carry weight n - r = 0 and every formula degrades to the
// complete-data one.
class CensoredSample {
public:
    static CensoredSample type2(std::vector<double> observed, int total_n) {
        return CensoredSample(std::move(observed), total_n, CensoringMode::type2, 0.0);
    }

    static CensoredSample type1(std::vector<double> observed, int total_n, double censor_time) {
        if (!std::isfinite(censor_time))
            throw std::invalid_argument("censor time must be finite");
        CensoredSample c(std::move(observed), total_n, CensoringMode::type1, censor_time);
        if (censor_time < c.observed_.back())
            throw std::invalid_argument("censor time must not precede the largest observed value");
        return c;
    }

    const std::vector<double>& observed() const noexcept { return observed_; }
    int num_observed() const noexcept { return static_cast<int>(observed_.size()); }
    int total_n() const noexcept { return total_n_; }
    CensoringMode mode() const noexcept { return mode_; }
    double censor_time() const noexcept { return censor_time_; }

    // The value at which the n - r unfailed items are censored: the largest
    // observed failure under Type II, the test cutoff T under Type I.
    double censor_value() const noexcept {
        return mode_ == CensoringMode::type1 ? censor_time_ : observed_.back();
    }

    double observed_mean() const noexcept {
        return std::accumulate(observed_.begin(), observed_.end(), 0.0) /
               static_cast<double>(observed_.size());
    }
    bool degenerate() const noexcept { return observed_.front() == observed_.back(); }

private:
    CensoredSample(std::vector<double> observed, int total_n, CensoringMode mode, double time)
        : observed_(std::move(observed)), total_n_(total_n), mode_(mode), censor_time_(time) {
        if (observed_.empty()) throw std::invalid_argument("no observed values");
        detail::require_all_finite(observed_);
        std::sort(observed_.begin(), observed_.end());
        const int r = static_cast<int>(observed_.size());
        if (r < 2) throw std::invalid_argument("need at least two observed lifetimes (r > 1)");
        if (total_n_ < r) throw std::invalid_argument("total n must be at least the observed count");
    }

    std::vector<double> observed_;
    int total_n_;
    CensoringMode mode_;
    double censor_time_;  // meaningful for type1 only
};

// A progressively Type-II censored sample: at the i-th observed failure,
// removals[i] surviving items were withdrawn from test. n = r + sum(removals).
class ProgressiveSample {
public:
    ProgressiveSample(std::vector<double> observed, std::vector<int> removals)
        : observed_(std::move(observed)), removals_(std::move(removals)) {
        if (observed_.empty()) throw std::invalid_argument("no observed values");
        if (observed_.size() != removals_.size())
            throw std::invalid_argument("observed values and removal counts must pair up");
        detail::require_all_finite(observed_);
        for (int ri : removals_)
            if (ri < 0) throw std::invalid_argument("removal counts must be non-negative");
        // keep (value, removal) pairs together while sorting by value
        std::vector<std::size_t> order(observed_.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return observed_[a] < observed_[b]; });
        std::vector<double> x(observed_.size());
        std::vector<int> rm(removals_.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            x[i] = observed_[order[i]];
            rm[i] = removals_[order[i]];
        }
        observed_ = std::move(x);
        removals_ = std::move(rm);
    }

    const std::vector<double>& observed() const noexcept { return observed_; }
    const std::vector<int>& removals() const noexcept { return removals_; }
    int num_observed() const noexcept { return static_cast<int>(observed_.size()); }
    int total_n() const noexcept {
        return num_observed() + std::accumulate(removals_.begin(), removals_.end(), 0);
    }
    double observed_mean() const noexcept {
        return std::accumulate(observed_.begin(), observed_.end(), 0.0) /
               static_cast<double>(observed_.size());
    }
    bool degenerate() const noexcept { return observed_.front() == observed_.back(); }

private:
    std::vector<double> observed_;
    std::vector<int> removals_;
};

// Negation sends a greatest-extreme sample to a least-extreme one and back;
// parameters map (mu, sigma) -> (-mu, sigma) (see params.hpp). Only complete
// samples are negated here: negating right-censored data produces
// left-censored data, which has no representation in this library.
inline Sample negated(const Sample& s) {
    std::vector<double> v(s.values().size());
    std::transform(s.values().begin(), s.values().end(), v.begin(),
                   [](double x) { return -x; });
    return Sample(std::move(v));
}

namespace detail {

inline std::vector<double> log_all(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0))
            throw std::domain_error("log transform requires strictly positive data");
        out[i] = std::log(v[i]);
    }
    return out;
}

}  // namespace detail

// Elementwise ln, preserving the censoring structure. Connects Weibull data
// to the least-extreme family: fitting lev to log_values(y) and mapping the
// parameters through weibull_from_lev reproduces the Weibull fit of y.
inline Sample log_values(const Sample& s) { return Sample(detail::log_all(s.values())); }

inline CensoredSample log_values(const CensoredSample& c) {
    auto obs = detail::log_all(c.observed());
    if (c.mode() == CensoringMode::type1) {
        if (!(c.censor_time() > 0.0))
            throw std::domain_error("log transform requires a positive censor time");
        return CensoredSample::type1(std::move(obs), c.total_n(), std::log(c.censor_time()));
    }
    return CensoredSample::type2(std::move(obs), c.total_n());
}

inline ProgressiveSample log_values(const ProgressiveSample& p) {
    return ProgressiveSample(detail::log_all(p.observed()), p.removals());
}

}  // namespace evdfit

#endif  // EVDFIT_DATA_HPP
