#pragma once

#include <utility>

namespace dail {

// Inputs to the closed-form collision model.
//   Q     max interfering neighbor sensors
//   M     channel count
//   K     slots per superframe
//   omega use factor (fraction of schedulable slots actually used)
//   m     orthogonal family size
// Z = K*m is the total number of symbol patterns across the family.
struct AnalyticalParams {
    int Q = 0;
    int M = 1;
    int K = 1;
    double omega = 1.0;
    int m = 1;

    long long Z() const { return static_cast<long long>(K) * m; }
    void validate() const;  // throws std::invalid_argument on violation
};

// Which coefficient reading of the published formulas to evaluate.
//   kConsistent    the expanded-sum coefficients: C(Q,x) and C(K-1,y)
//   kStrict        the standalone-equation coefficients: C(Q+1,x), C(K+1,y)
//   kNormalized    proper binomial activity with per-neighbor success
//                  probability omega*min(M,K)/K
enum class LambdaVariant { kConsistent, kStrict, kNormalized };

struct LambdaResult {
    double lambda = 0.0;
    bool clamped = false;             // raw sum fell outside [0,1]
    bool model_inconsistent = false;  // some term fell outside [0,1]
    double raw = 0.0;                 // unclamped sum
};

// (min collisions, max collisions) per superframe for a sensor with Q
// interfering neighbors: (max(Q-K+1, 0), Q).
std::pair<int, int> collision_bounds(int Q, int K);

// Probability weight that exactly x of the Q neighbors transmit in the
// tagged sensor's slot: C(Q,x) * omega^x * (1-omega)^(Q-x) * (min(M,K)/K)^x.
double pr_active(int x, const AnalyticalParams& p,
                 LambdaVariant variant = LambdaVariant::kConsistent);

// Hypergeometric probability that y of the x active neighbors drew their
// symbol pattern from the tagged sensor's rectangle:
// C(K-1,y) * C(Z-K,x-y) / C(Z-1,x).
double pr_same_rectangle(int y, int x, const AnalyticalParams& p,
                         LambdaVariant variant = LambdaVariant::kConsistent);

// Conditional collision probability given x active neighbors of which y
// share the rectangle: 1 - ((min(M,K)-1)/min(M,K))^(x-y).
double pr_collision_given(int x, int y, const AnalyticalParams& p);

// Success probability lambda, the double sum over (x, y) of
// pr_active * pr_same_rectangle * (1 - pr_collision_given).
LambdaResult success_probability(const AnalyticalParams& p,
                                 LambdaVariant variant = LambdaVariant::kConsistent);

// log C(n, k); returns -inf for k < 0 or k > n.
double log_binomial(long long n, long long k);

}  // namespace dail
