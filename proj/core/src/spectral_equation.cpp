#include <cmath>
#include <limits>

#include "pscat/error.hpp"
#include "pscat/torus.hpp"

namespace pscat {

NewEigenvalues solve_new_eigenvalues(const TorusLattice& lat, double phi, int k_lo, int k_hi,
                                     int reg_terms) {
    if (!(phi > -M_PI && phi < M_PI)) throw ValidationError("phi must lie in (-pi, pi)");
    if (k_lo < 0 || k_hi < k_lo || reg_terms < 0) throw ValidationError("bad k range");
    const int K = k_hi + reg_terms;
    // One extra level is needed to report the first omitted term.
    if (K + 1 >= static_cast<int>(lat.levels.size()))
        throw ValidationError("lattice has too few levels for the requested range");

    const double t = std::tan(phi / 2.0);
    double rhs_sum = 0.0;
    for (int k = 0; k <= K; ++k) {
        double l = lat.levels[k].lambda;
        rhs_sum += lat.levels[k].multiplicity() / (l * l + 1.0);
    }
    const double rhs = t * rhs_sum;

    auto F = [&](double tau) {
        long double s = 0.0L;
        for (int k = 0; k <= K; ++k) {
            long double l = lat.levels[k].lambda;
            s += lat.levels[k].multiplicity() * (1.0L / (l - tau) - l / (l * l + 1.0L));
        }
        return static_cast<double>(s) - rhs;
    };

    NewEigenvalues out;
    for (int k = k_lo; k <= k_hi; ++k) {
        double hi = lat.levels[k].lambda;
        double lo;
        if (k == 0) {
            double step = 1.0;
            lo = -step;
            while (F(lo) > 0.0) {
                step *= 2.0;
                lo = -step;
                if (step > 1e300) throw AccuracyError("no bracket for tau_0", step);
            }
        } else {
            lo = lat.levels[k - 1].lambda;
        }
        // Bisection on the open interval, pole to pole.
        double a = lo, b = hi;
        for (int it = 0; it < 400; ++it) {
            double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (b - a <= 1e-13 * std::max(1.0, std::abs(mid))) break;
            double f = F(mid);
            if (f < 0.0)
                a = mid;
            else
                b = mid;
        }
        double root = 0.5 * (a + b);
        if (!(root > lo && root < hi)) throw AccuracyError("bracket failure in spectral equation", root);
        out.k.push_back(k);
        out.tau.push_back(root);
    }
    const auto& next = lat.levels[K + 1];
    const double ln = next.lambda;
    double worst = 0.0;
    for (double tau : out.tau)
        worst = std::max(worst, std::abs(next.multiplicity() * (1.0 / (ln - tau) - ln / (ln * ln + 1.0))));
    out.lhs_truncation_bias = worst;
    out.rhs_truncation_bias = std::abs(t) * next.multiplicity() / (ln * ln + 1.0);
    return out;
}

}  // namespace pscat
