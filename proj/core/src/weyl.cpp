#include "pscat/weyl.hpp"

#include <algorithm>
#include <cmath>

#include "pscat/error.hpp"
#include "pscat/parallel.hpp"
#include "pscat/stats.hpp"

namespace pscat {

double counting_function(const PoissonSpectrum& spec, double lambda) {
    if (spec.window.lo != 0.0) throw ValidationError("counting_function: spectrum must start at 0");
    if (lambda > spec.window.hi) throw ValidationError("counting_function: lambda beyond the sampled window");
    double n = 1.0;
    for (std::size_t k = 0; k < spec.points.size() && spec.points[k] <= lambda; ++k) n += 4.0 * spec.mults[k];
    return n;
}

WeylMoments weyl_moments(const MultiplicityFunction& m, double lambda) {
    if (!(lambda >= 0.0)) throw ValidationError("weyl_moments: lambda must be >= 0");
    return {1.0 + lambda / (4.0 * M_PI), m.integral(lambda) / M_PI};
}

CountingRecord sample_counts(const MultiplicityFunction& m, const std::vector<double>& lambda_grid,
                             std::size_t replicas, std::uint64_t seed, unsigned threads) {
    if (lambda_grid.empty()) throw ValidationError("sample_counts: empty lambda grid");
    CountingRecord rec;
    rec.lambda_grid = lambda_grid;
    const double top = *std::max_element(lambda_grid.begin(), lambda_grid.end());
    if (!(top > 0.0)) throw ValidationError("sample_counts: lambdas must be positive");
    rec.counts.resize(replicas);
    parallel_for(replicas, threads, [&](std::size_t r) {
        RngStream rng(seed, r);
        PoissonSpectrum spec = sample_spectrum(m, {0.0, top}, rng);
        std::vector<double> row;
        for (double l : lambda_grid) row.push_back(counting_function(spec, l));
        rec.counts[r] = std::move(row);
    });
    return rec;
}

std::vector<LlnRow> lln_experiment(const MultiplicityFunction& m, const std::vector<double>& lambdas,
                                   std::size_t replicas, std::uint64_t seed, unsigned threads) {
    if (replicas == 0) throw ValidationError("lln_experiment: need at least one replica");
    CountingRecord rec = sample_counts(m, lambdas, replicas, seed, threads);
    std::vector<LlnRow> rows;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        LlnRow row;
        row.lambda = lambdas[i];
        std::vector<double> ratio, sq;
        for (const auto& c : rec.counts) {
            double rel = c[i] / lambdas[i] * 4.0 * M_PI - 1.0;
            ratio.push_back(c[i] / lambdas[i]);
            sq.push_back(rel * rel);
            row.max_rel_dev = std::max(row.max_rel_dev, std::abs(rel));
        }
        row.mean_ratio = pairwise_sum(ratio) / static_cast<double>(replicas);
        row.mean_rel_dev = std::abs(row.mean_ratio * 4.0 * M_PI - 1.0);
        row.rms_rel_dev = std::sqrt(pairwise_sum(sq) / static_cast<double>(replicas));
        rows.push_back(row);
    }
    return rows;
}

CltResult clt_experiment(const MultiplicityFunction& m, double lambda, std::size_t replicas, std::uint64_t seed,
                         double threshold, unsigned threads) {
    if (replicas == 0) throw ValidationError("clt_experiment: need at least one replica");
    CountingRecord rec = sample_counts(m, {lambda}, replicas, seed, threads);
    const WeylMoments w = weyl_moments(m, lambda);
    std::vector<double> z;
    for (const auto& c : rec.counts) z.push_back((c[0] - w.mean) / std::sqrt(w.variance));
    CltResult res;
    res.n = replicas;
    res.ks_distance = ks_one_sample(EmpiricalDistribution(std::move(z)), normal_cdf);
    res.pass = res.ks_distance < threshold;
    return res;
}

}  // namespace pscat
