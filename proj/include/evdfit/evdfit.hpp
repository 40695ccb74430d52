#ifndef EVDFIT_EVDFIT_HPP
#define EVDFIT_EVDFIT_HPP

// Maximum likelihood estimation for extreme value distributions (Gumbel,
// Type I least extreme value, two-parameter Weibull) via fixed-point
// iteration, for complete, singly censored, and progressively Type-II
// censored samples.

#include "evdfit/data.hpp"
#include "evdfit/distributions.hpp"
#include "evdfit/errors.hpp"
#include "evdfit/fit.hpp"
#include "evdfit/io.hpp"
#include "evdfit/likelihood.hpp"
#include "evdfit/maps.hpp"
#include "evdfit/oracle.hpp"
#include "evdfit/params.hpp"
#include "evdfit/simulate.hpp"
#include "evdfit/solver.hpp"

#endif  // EVDFIT_EVDFIT_HPP
