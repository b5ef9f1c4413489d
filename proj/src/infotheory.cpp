#include "infotheory.hpp"

#include "error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace nsbox {

namespace {

const double kLn2 = std::log(2.0);
const double kLog2TwoLn2 = std::log2(2.0 * std::log(2.0));

/// 1 - h((1+t)/2) for t in [0, 1], evaluated without the cancellation that
/// plagues the naive h() route for small t.
double one_minus_h_centered(double t) {
    if (t >= 1.0) return 1.0;
    if (t <= 0.0) return 0.0;
    return ((1.0 + t) * std::log1p(t) + (1.0 - t) * std::log1p(-t)) / (2.0 * kLn2);
}

} // namespace

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        raise(ErrorCode::invalid_argument, "binary entropy argument outside [0,1]");
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

IcEvaluation ic_sum(int64_t depth, double bias) {
    if (depth < 1) raise(ErrorCode::invalid_argument, "ic_sum depth must be >= 1");
    if (!(bias >= 0.0 && bias <= 1.0))
        raise(ErrorCode::invalid_argument, "ic_sum bias must lie in [0,1]");

    IcEvaluation eval;
    eval.depth = depth;
    eval.bias = bias;

    const double nd = static_cast<double>(depth);
    if (bias == 0.0) {
        eval.per_term_bits = 0.0;
        eval.sum = 0.0;
        eval.log_sum2 = -HUGE_VAL;
        eval.violated = false;
        return eval;
    }

    const double log2_bias = std::log2(bias);
    const double log2_t = nd * log2_bias; // log2(E^n)
    const double t = std::exp2(log2_t);

    if (t >= 1e-3) {
        eval.per_term_bits = one_minus_h_centered(t);
        eval.log_sum2 = nd + std::log2(eval.per_term_bits);
    } else {
        // Series 1 - h((1+t)/2) = (t^2 / 2ln2) (1 + t^2/6 + t^4/15 + t^6/28 + ...)
        // evaluated in log space so depths far beyond double underflow work.
        const double t2 = std::exp2(2.0 * log2_t); // 0 when E^n underflows
        const double corr = 1.0 + t2 / 6.0 + t2 * t2 / 15.0 + t2 * t2 * t2 / 28.0;
        eval.log_sum2 = nd * (1.0 + 2.0 * log2_bias) - kLog2TwoLn2 + std::log2(corr);
        eval.per_term_bits = std::exp2(eval.log_sum2 - nd);
    }
    eval.sum = std::exp2(eval.log_sum2);
    eval.violated = eval.log_sum2 > 0.0;
    return eval;
}

double tsirelson_threshold(int64_t n_max, double tol) {
    if (n_max < 1) raise(ErrorCode::invalid_argument, "threshold depth cap must be >= 1");
    if (!(tol > 0)) raise(ErrorCode::invalid_argument, "threshold tolerance must be positive");

    // The sum decomposes as n*log2(2E^2) plus a nonnegative correction that
    // decays in n and is numerically zero beyond depth ~100, so scanning the
    // low depths plus n_max covers the maximum over all depths.
    const int64_t scan_to = std::min<int64_t>(n_max, 128);
    auto violated_at = [&](double bias) {
        if (bias >= 1.0) return true;
        for (int64_t n = 1; n <= scan_to; ++n)
            if (ic_sum(n, bias).log_sum2 > 0.0) return true;
        return n_max > scan_to && ic_sum(n_max, bias).log_sum2 > 0.0;
    };

    double lo = 0.5, hi = 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (violated_at(mid))
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

QuadraticBound quadratic_bound(const std::vector<double>& biases) {
    double sum = 0.0, comp = 0.0;
    for (double e : biases) {
        if (!(e >= -1.0 && e <= 1.0))
            raise(ErrorCode::invalid_argument, "quadratic bound bias outside [-1,1]");
        const double term = e * e - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return QuadraticBound{sum, sum <= 1.0 + 1e-12};
}

QuadraticBound quadratic_bound_repeated(double bias, uint64_t count) {
    if (!(bias >= -1.0 && bias <= 1.0))
        raise(ErrorCode::invalid_argument, "quadratic bound bias outside [-1,1]");
    const double value = static_cast<double>(count) * bias * bias;
    return QuadraticBound{value, value <= 1.0 + 1e-12};
}

std::string ic_evaluation_to_json(const IcEvaluation& eval) {
    nlohmann::json j;
    j["n"] = eval.depth;
    j["E"] = eval.bias;
    j["perTermInfo"] = eval.per_term_bits;
    j["sum"] = eval.sum;
    j["logSum2"] = eval.log_sum2;
    j["bound"] = eval.bound;
    j["violated"] = eval.violated;
    return j.dump();
}

} // namespace nsbox
