#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nsbox {

/// Shannon binary entropy in bits, with 0*log(0) = 0. Domain [0, 1].
double binary_entropy(double p);

/// One evaluation of the information sum for a depth-n concatenated code on
/// bias-E boxes: per_term_bits = 1 - h((1+E^n)/2) and sum = 2^n * per_term_bits.
/// log_sum2 = log2(sum) is the authoritative value; `sum` saturates to 0/inf
/// when 2^n leaves double range. The transmitted message carries `bound` = 1
/// bit, and violated <=> sum > bound <=> log_sum2 > 0.
struct IcEvaluation {
    int64_t depth = 1;
    double bias = 0.0;
    double per_term_bits = 0.0;
    double sum = 0.0;
    double log_sum2 = 0.0;
    double bound = 1.0;
    bool violated = false;
};

/// Requires depth >= 1 and bias in [0, 1]. Small E^n switches to a series
/// evaluation in log space, so the result stays meaningful far below double
/// underflow (needed when scanning depths up to 10^6).
IcEvaluation ic_sum(int64_t depth, double bias);

/// Smallest bias whose information sum exceeds one bit at some depth
/// <= n_max, located by bisection to absolute tolerance `tol`. Monotonically
/// nonincreasing in n_max; converges to 1/sqrt(2) as n_max grows.
double tsirelson_threshold(int64_t n_max, double tol = 1e-7);

struct QuadraticBound {
    double value = 0.0;
    bool satisfied = true;
};

/// Sum of squared biases against the bound 1 (compensated summation; boundary
/// tolerance 1e-12). Each bias must lie in [-1, 1].
QuadraticBound quadratic_bound(const std::vector<double>& biases);

/// Same check for `count` repeated biases without materializing the list.
QuadraticBound quadratic_bound_repeated(double bias, uint64_t count);

std::string ic_evaluation_to_json(const IcEvaluation& eval);

} // namespace nsbox
