#include "dail/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dail {

namespace {
constexpr double kTermTolerance = 1e-12;
}

void AnalyticalParams::validate() const {
    if (Q < 0) throw std::invalid_argument("Q must be >= 0");
    if (M < 1) throw std::invalid_argument("M must be >= 1");
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    if (omega < 0.0 || omega > 1.0)
        throw std::invalid_argument("omega must lie in [0,1]");
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (Z() - 1 < Q)
        throw std::invalid_argument(
            "Z-1 = " + std::to_string(Z() - 1) + " < Q = " + std::to_string(Q) +
            ": not enough distinct symbol patterns for the neighborhood");
}

std::pair<int, int> collision_bounds(int Q, int K) {
    if (Q < 0) throw std::invalid_argument("Q must be >= 0");
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    return {std::max(Q - K + 1, 0), Q};
}

double log_binomial(long long n, long long k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

double pr_active(int x, const AnalyticalParams& p, LambdaVariant variant) {
    p.validate();
    if (x < 0 || x > p.Q)
        throw std::invalid_argument("x must lie in [0, Q]");

    int mk = std::min(p.M, p.K);

    if (variant == LambdaVariant::kNormalized) {
        double s = p.omega * mk / p.K;  // per-neighbor transmit probability
        double lp = log_binomial(p.Q, x);
        if (x > 0) {
            if (s == 0.0) return 0.0;
            lp += x * std::log(s);
        }
        if (p.Q - x > 0) {
            if (s == 1.0) return 0.0;
            lp += (p.Q - x) * std::log1p(-s);
        }
        return std::exp(lp);
    }

    long long top = (variant == LambdaVariant::kStrict) ? p.Q + 1 : p.Q;
    double lp = log_binomial(top, x);
    if (x > 0) {
        if (p.omega == 0.0) return 0.0;
        lp += x * std::log(p.omega) +
              x * std::log(static_cast<double>(mk) / p.K);
    }
    if (p.Q - x > 0) {
        if (p.omega == 1.0) return 0.0;
        lp += (p.Q - x) * std::log1p(-p.omega);
    }
    double v = std::exp(lp);
    if (variant == LambdaVariant::kConsistent && v > 1.0 + kTermTolerance)
        throw std::domain_error("pr_active exceeded 1: model inconsistency");
    return v;
}

double pr_same_rectangle(int y, int x, const AnalyticalParams& p,
                         LambdaVariant variant) {
    p.validate();
    if (y < 0 || x < 0 || y > x)
        throw std::invalid_argument("require 0 <= y <= x");
    if (x > p.Q) throw std::invalid_argument("x must not exceed Q");
    long long Z = p.Z();
    if (x > Z - 1)
        throw std::invalid_argument("x exceeds the Z-1 available patterns");
    if (x == 0) return 1.0;

    long long same = (variant == LambdaVariant::kStrict) ? p.K + 1 : p.K - 1;
    double lp = log_binomial(same, y) + log_binomial(Z - p.K, x - y) -
                log_binomial(Z - 1, x);
    double v = std::exp(lp);
    if (variant != LambdaVariant::kStrict && v > 1.0 + kTermTolerance)
        throw std::domain_error(
            "pr_same_rectangle exceeded 1: model inconsistency");
    return v;
}

double pr_collision_given(int x, int y, const AnalyticalParams& p) {
    p.validate();
    if (y < 0 || x < 0 || y > x)
        throw std::invalid_argument("require 0 <= y <= x");
    int mk = std::min(p.M, p.K);
    if (mk == 0) throw std::invalid_argument("min(M,K) must be positive");
    return 1.0 - std::pow(static_cast<double>(mk - 1) / mk, x - y);
}

LambdaResult success_probability(const AnalyticalParams& p,
                                 LambdaVariant variant) {
    p.validate();
    LambdaResult result;
    double sum = 0.0;
    for (int x = 0; x <= p.Q; ++x) {
        double pa = pr_active(x, p, variant);
        if (pa < -kTermTolerance || pa > 1.0 + kTermTolerance)
            result.model_inconsistent = true;
        if (pa == 0.0) continue;
        for (int y = 0; y <= x; ++y) {
            double ps = pr_same_rectangle(y, x, p, variant);
            if (ps < -kTermTolerance || ps > 1.0 + kTermTolerance)
                result.model_inconsistent = true;
            if (ps == 0.0) continue;
            sum += pa * ps * (1.0 - pr_collision_given(x, y, p));
        }
    }
    result.raw = sum;
    result.lambda = std::clamp(sum, 0.0, 1.0);
    result.clamped = sum < 0.0 || sum > 1.0 + kTermTolerance;
    return result;
}

}  // namespace dail
