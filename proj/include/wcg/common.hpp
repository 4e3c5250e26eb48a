#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace wcg {

// Invalid construction parameters (bad bias, bad board size, violated
// strategy preconditions). The message names the violated constraint.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An offer or pick that breaks the game rules.
class RuleViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An enumeration or exact computation refused because it exceeds a size cap.
// `count` carries the closed-form size when known.
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(const std::string& what, double count = -1.0)
        : std::runtime_error(what), count(count) {}
    double count;
};

// A constructive strategy could not honor its own playbook (e.g. ran out of
// eligible edges). Must not happen when preconditions hold; tests assert that.
class StrategyFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ splitmix64(b));
}

// Compensated (Kahan) accumulator for the potential sums.
class KahanSum {
public:
    void add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double log_factorial(double n) { return std::lgamma(n + 1.0); }

inline double log_binomial(double n, double k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

// log of the falling factorial n (n-1) ... (n-k+1)
inline double log_falling(double n, double k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace wcg
