#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace rbmlmc {

/// Neumaier compensated sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(const CompensatedSum& other) {
        add(other.sum_);
        add(other.comp_);
        return *this;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct SampleStats {
    double mean = 0.0;
    double variance = 0.0; // unbiased, 0 for fewer than two samples
    std::size_t count = 0;
};

/// Mean and variance, accumulated in index order after shifting by the first
/// sample. A constant sample therefore yields its value exactly and variance 0.
SampleStats sample_stats(std::span<const double> xs);

/// Least-squares slope of y against x.
double fitted_slope(std::span<const double> x, std::span<const double> y);

/// Upper tail probability of a chi-square variable with `dof` degrees of freedom.
double chi_square_sf(double statistic, double dof);

/// Pearson statistic of observed counts against a uniform expectation.
double chi_square_uniform(std::span<const std::size_t> counts);

} // namespace rbmlmc
