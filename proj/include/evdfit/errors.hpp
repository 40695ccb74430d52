#ifndef EVDFIT_ERRORS_HPP
#define EVDFIT_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace evdfit {

// Solver could not locate or confirm a fixed point (no sign change in the
// bracket, non-finite map output, singular Newton step with fallback
// disabled). Carries the residual trace accumulated before the failure.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what,
                               std::vector<double> trace = {})
        : std::runtime_error(what), residual_trace_(std::move(trace)) {}

    const std::vector<double>& residual_trace() const noexcept { return residual_trace_; }

private:
    std::vector<double> residual_trace_;
};

}  // namespace evdfit

#endif  // EVDFIT_ERRORS_HPP
