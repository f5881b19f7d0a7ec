#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>

namespace asymbell {

// Neumaier compensated accumulator; summation order still matters, so all
// reductions over index ranges fix x-outer / y-middle / a-inner order.
class NeumaierSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }

    double total() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// eta^w (1-eta)^(n-w) by repeated multiplication; 0^0 = 1 so eta = 0 gives a
// point mass at the zero word.
inline double noise_weight(double eta, int ones, int n) {
    double p = 1.0;
    for (int i = 0; i < ones; ++i) p *= eta;
    for (int i = ones; i < n; ++i) p *= 1.0 - eta;
    return p;
}

// Shortest round-trip decimal form.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace asymbell
