#pragma once

#include <cmath>
#include <limits>

namespace skewifs {

// Streaming log(sum(exp(x_i))) accumulator: tracks the running maximum and
// the sum rescaled to it, so words of wildly different weight can be folded
// in any association without overflow.  merge() is associative, which is
// what makes per-worker accumulators combinable in a fixed chunk order.
class LogSumExp {
public:
    void add(double x) {
        if (std::isinf(x) && x < 0) return;
        if (n_ == 0 || x > max_) {
            if (n_ > 0) sum_ *= std::exp(max_ - x);
            max_ = x;
            sum_ += 1.0;
        } else {
            sum_ += std::exp(x - max_);
        }
        ++n_;
    }

    void merge(const LogSumExp& o) {
        if (o.n_ == 0) return;
        if (n_ == 0) { *this = o; return; }
        if (o.max_ > max_) {
            sum_ = sum_ * std::exp(max_ - o.max_) + o.sum_;
            max_ = o.max_;
        } else {
            sum_ += o.sum_ * std::exp(o.max_ - max_);
        }
        n_ += o.n_;
    }

    double value() const {
        if (n_ == 0) return -std::numeric_limits<double>::infinity();
        return max_ + std::log(sum_);
    }

    long long count() const { return n_; }

private:
    double max_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
    long long n_ = 0;
};

// log(e^a + e^b)
inline double log_add_exp(double a, double b) {
    if (a < b) { const double t = a; a = b; b = t; }
    if (std::isinf(a) && a < 0) return a;
    return a + std::log1p(std::exp(b - a));
}

} // namespace skewifs
