#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pscat {

// Sorted sample with ECDF and quantile queries.  NaN is rejected.
class EmpiricalDistribution {
public:
    EmpiricalDistribution() = default;
    explicit EmpiricalDistribution(std::vector<double> samples);

    std::size_t size() const { return xs_.size(); }
    const std::vector<double>& sorted() const { return xs_; }

    // Right-continuous: fraction of samples <= x.
    double ecdf(double x) const;
    // Type-7 linear interpolation between order statistics.
    double quantile(double prob) const;
    double median() const { return quantile(0.5); }
    double iqr() const { return quantile(0.75) - quantile(0.25); }

private:
    std::vector<double> xs_;
};

double ks_one_sample(const EmpiricalDistribution& emp, const std::function<double(double)>& cdf);
double ks_two_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

// Asymptotic Kolmogorov critical value c(level)*sqrt((n+m)/(n*m)); pass
// m = 0 for the one-sample case.  level is the upper tail probability.
double ks_critical_value(double level, std::size_t n, std::size_t m = 0);

double normal_cdf(double x);

// Pairwise (cascade) summation: fixed association order for a given length.
double pairwise_sum(std::span<const double> xs);

struct SampleSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;     // unbiased
    double se_mean = 0.0;
    double se_variance = 0.0;  // from the fourth central moment
};

SampleSummary summarize(std::span<const double> xs);

}  // namespace pscat
