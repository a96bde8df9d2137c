#pragma once

#include <cstdint>

namespace skyshare {

enum class EstimateMethod { analytic, monte_carlo };

// A probability with provenance: quadrature result (stderr 0) or binomial
// Monte Carlo estimate with its normal-approximation standard error.
struct CoverageEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
    EstimateMethod method = EstimateMethod::analytic;
};

}  // namespace skyshare
