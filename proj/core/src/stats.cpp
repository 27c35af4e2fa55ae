#include "pscat/stats.hpp"

#include <algorithm>
#include <cmath>

#include "pscat/error.hpp"

namespace pscat {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples) : xs_(std::move(samples)) {
    for (double x : xs_)
        if (std::isnan(x)) throw ValidationError("EmpiricalDistribution: NaN sample");
    std::sort(xs_.begin(), xs_.end());
}

double EmpiricalDistribution::ecdf(double x) const {
    if (xs_.empty()) return 0.0;
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    return static_cast<double>(it - xs_.begin()) / static_cast<double>(xs_.size());
}

double EmpiricalDistribution::quantile(double prob) const {
    if (xs_.empty()) throw ValidationError("quantile of empty sample");
    if (!(prob >= 0.0 && prob <= 1.0)) throw ValidationError("quantile level outside [0,1]");
    double h = prob * static_cast<double>(xs_.size() - 1);
    auto lo = static_cast<std::size_t>(std::floor(h));
    std::size_t hi = std::min(lo + 1, xs_.size() - 1);
    return xs_[lo] + (h - static_cast<double>(lo)) * (xs_[hi] - xs_[lo]);
}

double ks_one_sample(const EmpiricalDistribution& emp, const std::function<double(double)>& cdf) {
    const auto& xs = emp.sorted();
    if (xs.empty()) throw ValidationError("ks_one_sample: empty sample");
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double f = cdf(xs[i]);
        d = std::max({d, std::abs((i + 1) / n - f), std::abs(i / n - f)});
    }
    return std::min(d, 1.0);
}

double ks_two_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    const auto& x = a.sorted();
    const auto& y = b.sorted();
    if (x.empty() || y.empty()) throw ValidationError("ks_two_sample: empty sample");
    const double n = static_cast<double>(x.size()), m = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) ++i;
        while (j < y.size() && y[j] <= v) ++j;
        d = std::max(d, std::abs(i / n - j / m));
    }
    return d;
}

double ks_critical_value(double level, std::size_t n, std::size_t m) {
    double c = std::sqrt(-0.5 * std::log(level / 2.0));
    double ne = m == 0 ? static_cast<double>(n)
                       : static_cast<double>(n) * m / static_cast<double>(n + m);
    return c / std::sqrt(ne);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

SampleSummary summarize(std::span<const double> xs) {
    SampleSummary s;
    s.n = xs.size();
    if (s.n == 0) return s;
    const double n = static_cast<double>(s.n);
    s.mean = pairwise_sum(xs) / n;
    if (s.n < 2) return s;
    std::vector<double> d2(xs.size()), d4(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double d = xs[i] - s.mean;
        d2[i] = d * d;
        d4[i] = d2[i] * d2[i];
    }
    double m2 = pairwise_sum(d2) / n;
    double m4 = pairwise_sum(d4) / n;
    s.variance = m2 * n / (n - 1.0);
    s.se_mean = std::sqrt(s.variance / n);
    double v = (m4 - m2 * m2 * (n - 3.0) / (n - 1.0)) / n;
    s.se_variance = std::sqrt(std::max(v, 0.0));
    return s;
}

}  // namespace pscat
