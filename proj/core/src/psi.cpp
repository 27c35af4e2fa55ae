#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <complex>
#include <vector>

#include "pscat/error.hpp"
#include "pscat/limit_laws.hpp"

namespace pscat {

namespace {

using cplx = std::complex<double>;

// Full 20-point Gauss-Legendre rule on [-1, 1].
struct Rule {
    std::array<double, 20> x, w;
    Rule() {
        using G = boost::math::quadrature::gauss<double, 20>;
        const auto& a = G::abscissa();
        const auto& wt = G::weights();
        for (std::size_t i = 0; i < a.size(); ++i) {
            x[2 * i] = a[i];
            w[2 * i] = wt[i];
            x[2 * i + 1] = -a[i];
            w[2 * i + 1] = wt[i];
        }
    }
};

const Rule& rule() {
    static const Rule r;
    return r;
}

// Q(v) = sum_q x_q v^{2q} and its derivative.
struct Phase {
    std::vector<double> x;
    double operator()(double v) const {
        const double y = v * v;
        double s = 0.0;
        for (std::size_t q = x.size(); q-- > 0;) s = s * y + x[q];
        return s * y;
    }
    double deriv(double v) const {
        const double y = v * v;
        double s = 0.0;
        for (std::size_t q = x.size(); q-- > 0;) s = s * y + 2.0 * (q + 1) * x[q];
        return s * v;
    }
    double abs_bound(double v) const {
        const double y = v * v;
        double s = 0.0, yq = 1.0;
        for (double c : x) {
            yq *= y;
            s += std::abs(c) * yq;
        }
        return s;
    }
};

// Fujiwara bound on the positive roots (in y = v^2) of Q'(v) / (2v).
double critical_v(const Phase& Q) {
    const std::size_t d = Q.x.size();
    if (d <= 1) return 0.0;
    std::vector<double> c(d);  // c[j] coefficient of y^j: (j+1) x_{j+1}
    for (std::size_t j = 0; j < d; ++j) c[j] = (j + 1) * Q.x[j];
    const std::size_t n = d - 1;
    const double lead = std::abs(c[n]);
    double B = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        double ratio = std::abs(c[n - k]) / lead;
        if (k == n) ratio /= 2.0;
        B = std::max(B, std::pow(ratio, 1.0 / static_cast<double>(k)));
    }
    return std::sqrt(2.0 * B);
}

// Weniger's one-row epsilon algorithm for complex partial sums.
class Wynn {
public:
    cplx push(cplx s) {
        const std::size_t n = e_.size();
        e_.push_back(s);
        if (n == 0) return s;
        cplx aux2 = 0.0;
        for (std::size_t j = n; j >= 1; --j) {
            cplx aux1 = aux2;
            aux2 = e_[j - 1];
            cplx diff = e_[j] - aux2;
            e_[j - 1] = std::abs(diff) < 1e-300 ? cplx(1e300, 0.0) : aux1 + 1.0 / diff;
        }
        return n % 2 == 0 ? e_[0] : e_[1];
    }

private:
    std::vector<cplx> e_;
};

// P(w) = sum_q x_q w^q, the phase in w = v^2, with its first three
// derivatives.  Real and complex arguments.
struct WPhase {
    std::vector<double> x;
    template <class T>
    std::array<T, 4> eval(T w) const {
        // Horner on value and derivatives together
        std::array<T, 4> d{T(0), T(0), T(0), T(0)};
        for (std::size_t q = x.size(); q-- > 0;) {
            d[3] = d[3] * w + 3.0 * d[2];
            d[2] = d[2] * w + 2.0 * d[1];
            d[1] = d[1] * w + d[0];
            d[0] = d[0] * w + x[q];
        }
        // multiply by w: P = w * S(w)
        return {d[0] * w, d[1] * w + d[0], d[2] * w + 2.0 * d[1], d[3] * w + 3.0 * d[2]};
    }
};

// One pass along w(r) = r + i eta(r), eta = kappa P'(r) / sqrt(P''(r)^2 + (P'(r)/r)^2).
// To first order Im P(w) = eta P'(r) >= 0, and near a stationary point the
// path leaves the axis at 45 degrees when kappa = 1.  Returns false when the
// path climbs over a ridge (Im P very negative) so the caller can flatten it.
bool contour_pass(const WPhase& P, double kappa, double r_crit, cplx& I, int& panels) {
    const Rule& R = rule();
    auto path = [&](double r, cplx& w, cplx& dw) {
        const auto d = P.eval(r);
        const double a = d[1], b = d[2], c = d[3];
        const double D = std::sqrt(b * b + (a / r) * (a / r));
        if (D == 0.0) {
            w = r;
            dw = 1.0;
            return;
        }
        const double Dp = (b * c + (a / r) * (b / r - a / (r * r))) / D;
        const double eta = kappa * a / D;
        const double etap = kappa * (b / D - a * Dp / (D * D));
        w = cplx(r, eta);
        dw = cplx(1.0, etap);
    };
    bool ok = true;
    auto integrand = [&](double r) {
        cplx w, dw;
        path(r, w, dw);
        const cplx ph = P.eval(w)[0];
        if (ph.imag() < -5.0) ok = false;
        // 1 - e^{iP} without cancellation for small P
        const cplx one_minus = -2.0 * cplx(0.0, 1.0) * std::sin(0.5 * ph) * std::exp(cplx(0.0, 0.5) * ph);
        return one_minus * std::pow(w, -1.5) * dw;
    };
    auto rate = [&](double r, double& imP) {
        cplx w, dw;
        path(r, w, dw);
        const auto d = P.eval(w);
        imP = d[0].imag();
        return std::abs(d[1] * dw);
    };

    // First panel in r = u^2, where the integrand behaves like r^{-1/2}.
    double r = INFINITY;
    for (double c : P.x)
        if (c != 0.0) r = std::min(r, 0.25 / std::abs(c));
    r = std::min(r, 1.0) / 64.0;
    for (std::size_t q = 1; q < P.x.size(); ++q)
        if (P.x[q] != 0.0) r = std::min(r, std::pow(0.25 / std::abs(P.x[q]), 1.0 / (q + 1.0)));
    {
        const double U = std::sqrt(r);
        cplx acc = 0.0;
        for (int j = 0; j < 20; ++j) {
            const double u = 0.5 * U * (1.0 + R.x[j]);
            acc += R.w[j] * integrand(u * u) * 2.0 * u;
        }
        I = 0.5 * U * acc;
        panels = 1;
    }
    const double damped = 60.0;
    for (int step = 0; step < 2000000; ++step) {
        if (!ok) return false;
        double imP;
        const double g = std::max(rate(r, imP), 1e-300);
        if (imP > damped) {
            if (r > r_crit) {
                double im2;
                rate(2.0 * r, im2);
                if (im2 > imP) {
                    cplx w, dw;
                    path(r, w, dw);
                    I += 2.0 / std::sqrt(w);
                    return ok;
                }
            }
            // e^{iP} is below e^-40 here; only 1/w^{3/2} contributes.
            double h = std::min(r, 0.5 * (imP - 40.0) / g);
            for (;;) {
                double i1, i2;
                rate(r + 0.5 * h, i1);
                rate(r + h, i2);
                if (std::min(i1, i2) > 45.0 || h < 1e-12 * r) break;
                h *= 0.5;
            }
            cplx wa, wb, dw;
            path(r, wa, dw);
            path(r + h, wb, dw);
            I += 2.0 / std::sqrt(wa) - 2.0 / std::sqrt(wb);
            r += h;
        } else {
            // The rate can grow fast across a panel near a stationary point.
            double h = std::min(0.5 * r, 0.25 * M_PI / g);
            for (int it = 0; it < 100; ++it) {
                double im1, im2;
                const double g1 = std::max(rate(r + 0.5 * h, im1), rate(r + h, im2));
                if (g1 * h <= 0.25 * M_PI) break;
                h = std::max(0.25 * M_PI / g1, 0.25 * h);
            }
            // The path itself can bend quickly where P' and P'' are both
            // small, so each panel is checked against its two halves.
            auto gl = [&](double a, double b) {
                cplx acc = 0.0;
                for (int j = 0; j < 20; ++j) acc += R.w[j] * integrand(a + 0.5 * (b - a) * (1.0 + R.x[j]));
                return 0.5 * (b - a) * acc;
            };
            cplx whole = gl(r, r + h), halves = 0.0;
            for (int it = 0; it < 60; ++it) {
                halves = gl(r, r + 0.5 * h) + gl(r + 0.5 * h, r + h);
                if (std::abs(whole - halves) <= 1e-13 + 1e-12 * std::abs(halves)) break;
                h *= 0.5;
                whole = gl(r, r + h);
            }
            if (!(r + h > r)) throw AccuracyError("psi: contour step below double resolution", r);
            I += halves;
            r += h;
            ++panels;
        }
    }
    throw AccuracyError("psi: contour march did not terminate", INFINITY);
}

}  // namespace

PsiResult psi_eval_contour(int p, const std::vector<double>& xin, double quad_tol) {
    if (p < 1 || static_cast<int>(xin.size()) != p) throw ValidationError("psi: dimension mismatch");
    if (!(quad_tol > 0.0)) throw ValidationError("psi: quad_tol must be positive");
    for (double v : xin)
        if (!std::isfinite(v)) throw ValidationError("psi: non-finite argument");
    PsiResult res;
    int d = p;
    while (d > 0 && xin[d - 1] == 0.0) --d;
    if (d == 0) {
        res.value = 1.0;
        return res;
    }
    WPhase P{std::vector<double>(xin.begin(), xin.begin() + d)};
    const double cv = critical_v(Phase{P.x});
    const double r_crit = 2.0 * cv * cv + 1e-300;
    // Two different paths give the same integral; their gap is the error.
    cplx I[2];
    int used = 0, panels = 0;
    for (double kappa = 1.0; used < 2 && kappa > 1e-3; kappa *= 0.5) {
        int np = 0;
        if (contour_pass(P, kappa, r_crit, I[used], np)) {
            ++used;
            panels += np;
        }
    }
    if (used < 2) throw AccuracyError("psi: no admissible contour", INFINITY);
    res.value = std::exp(-I[0] / (16.0 * M_PI));
    res.error_estimate = std::abs(I[0] - I[1]) / (16.0 * M_PI);
    res.panels = panels;
    if (res.error_estimate > quad_tol)
        throw AccuracyError("psi: contour paths disagree", res.error_estimate);
    return res;
}

PsiResult psi_eval(int p, const std::vector<double>& xin, double quad_tol) {
    if (p < 1 || static_cast<int>(xin.size()) != p) throw ValidationError("psi: dimension mismatch");
    if (!(quad_tol > 0.0)) throw ValidationError("psi: quad_tol must be positive");
    PsiResult res;
    int d = p;
    while (d > 0 && xin[d - 1] == 0.0) --d;
    if (d == 0) {
        res.value = 1.0;
        return res;
    }
    for (double v : xin)
        if (!std::isfinite(v)) throw ValidationError("psi: non-finite argument");

    Phase Q{std::vector<double>(xin.begin(), xin.begin() + d)};
    const double sgn = Q.x[d - 1] > 0.0 ? 1.0 : -1.0;
    const Rule& R = rule();
    // Tolerance on I; psi = exp(-I / 16 pi) and |psi| <= 1.
    const double tolI = 16.0 * M_PI * quad_tol * 0.25;

    // Split point: past every critical point of Q and far enough that the
    // phase has made a couple of turns.
    double lo = 0.0, hi = 1.0;
    while (Q.abs_bound(hi) < 4.0 * M_PI) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (Q.abs_bound(mid) < 4.0 * M_PI ? lo : hi) = mid;
    }
    const double V = std::max(hi, 1.0001 * critical_v(Q));

    // Head: 2 int_0^V (1 - e^{iQ}) / v^2 dv with phase change <= pi/4 per panel.
    const double total_phase = Q.abs_bound(V);
    const double n_head = std::ceil(4.0 * total_phase / M_PI) + 1.0;
    // Too many oscillations before the last stationary point: go complex.
    if (n_head > 2e5) return psi_eval_contour(p, xin, quad_tol);
    const int nh = static_cast<int>(n_head);
    cplx head = 0.0;
    const double h = V / nh;
    for (int i = 0; i < nh; ++i) {
        const double a = i * h, mid = a + 0.5 * h;
        cplx acc = 0.0;
        for (int j = 0; j < 20; ++j) {
            const double v = mid + 0.5 * h * R.x[j];
            const double q = Q(v);
            const double sh = std::sin(0.5 * q);
            acc += R.w[j] * cplx(2.0 * sh * sh, -std::sin(q)) / (v * v);
        }
        head += 0.5 * h * acc;
    }
    res.panels = nh;

    // Tail: int_V^inf e^{iQ} / v^2 over half-period pieces, extrapolated.
    auto piece = [&](double a, double b) {
        const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
        cplx acc = 0.0;
        for (int j = 0; j < 20; ++j) {
            const double v = mid + hw * R.x[j];
            acc += R.w[j] * std::polar(1.0, Q(v)) / (v * v);
        }
        return hw * acc;
    };
    auto next_break = [&](double a, double target) {
        auto g = [&](double v) { return sgn * (Q(v) - target); };
        double lo = a;
        double step = M_PI / std::max(std::abs(Q.deriv(a)), 1e-300);
        double hi = a + step;
        while (g(hi) < 0.0) {
            lo = hi;
            step *= 2.0;
            hi = a + step;
        }
        double v = hi;
        for (int it = 0; it < 100; ++it) {
            double gv = g(v);
            if (gv == 0.0) return v;
            (gv < 0.0 ? lo : hi) = v;
            double dv = sgn * Q.deriv(v);
            double nv = dv > 0.0 ? v - gv / dv : 0.5 * (lo + hi);
            if (!(nv > lo && nv < hi)) nv = 0.5 * (lo + hi);
            if (std::abs(nv - v) <= 1e-15 * v || hi - lo <= 1e-15 * hi) return nv;
            v = nv;
        }
        return v;
    };

    Wynn wynn;
    cplx partial = 0.0, est = 0.0, prev = 0.0, prev2 = 0.0;
    double a = V;
    const double q0 = Q(V);
    bool converged = false;
    double err = INFINITY;
    for (int k = 1; k <= 120; ++k) {
        const double b = next_break(a, q0 + sgn * k * M_PI);
        partial += piece(a, b);
        a = b;
        prev2 = prev;
        prev = est;
        est = wynn.push(partial);
        ++res.panels;
        if (k >= 6) {
            err = std::max(std::abs(est - prev), std::abs(prev - prev2));
            if (err <= tolI / 2.0) {
                converged = true;
                break;
            }
        }
    }
    const cplx I = 2.0 * head + 2.0 / V - 2.0 * est;
    res.value = std::exp(-I / (16.0 * M_PI));
    res.error_estimate = 2.0 * err / (16.0 * M_PI);
    if (!converged) throw AccuracyError("psi: tail extrapolation did not converge", res.error_estimate);
    return res;
}

std::complex<double> psi(int p, const std::vector<double>& x, double quad_tol) {
    return psi_eval(p, x, quad_tol).value;
}

StableMarginal stable_params(int q) {
    if (q < 1) throw ValidationError("stable_params: q must be >= 1");
    StableMarginal s;
    s.q = q;
    s.alpha = 1.0 / (2.0 * q);
    s.skew = 1.0;
    const double base = std::cos(M_PI / (4.0 * q)) * std::tgamma(1.0 - 1.0 / (2.0 * q)) / (8.0 * M_PI);
    s.c = std::pow(base, 2.0 * q);
    return s;
}

std::complex<double> stable_cf(int q, double x) {
    if (x == 0.0) return 1.0;
    const double c = stable_params(q).c;
    const double r = std::pow(std::abs(c * x), 1.0 / (2.0 * q));
    const double sg = x > 0.0 ? 1.0 : -1.0;
    return std::exp(-r * cplx(1.0, -sg * std::tan(M_PI / (4.0 * q))));
}

double levy_density(double t) {
    if (!(t > 0.0)) return 0.0;
    return std::pow(t, -1.5) * std::exp(-1.0 / (256.0 * M_PI * t)) / (16.0 * M_PI);
}

double levy_cdf(double t) {
    if (!(t > 0.0)) return 0.0;
    return std::erfc(1.0 / std::sqrt(256.0 * M_PI * t));
}

InversionResult invert_density(int p, const std::vector<std::vector<double>>& points, double quad_tol,
                               std::size_t node_budget) {
    if (p != 1 && p != 2) throw ValidationError("invert_density: only p = 1 and p = 2 are supported");
    for (const auto& t : points)
        if (static_cast<int>(t.size()) != p) throw ValidationError("invert_density: point dimension mismatch");
    const Rule& R = rule();
    InversionResult out;

    // Substituting x = +-u^2 removes the |x|^{1/2q} cusp of psi at the origin.
    auto panel_edges = [](double U, double tmax) {
        std::vector<double> e{0.0};
        while (e.back() < U) {
            double u = e.back();
            double du = std::min(1.0, M_PI / (2.0 * (u + 1.0) * std::max(tmax, 1e-12)));
            e.push_back(std::min(U, u + du));
        }
        return e;
    };

    if (p == 1) {
        const double a = std::sqrt(stable_params(1).c);
        // |psi(x)| = exp(-a sqrt(x)); truncate where that is negligible.
        double U = 1.0 / a;
        auto tail = [&](double u) { return 2.0 * std::exp(-a * u) * (u / a + 1.0 / (a * a)) / M_PI; };
        while (tail(U) > 0.01 * quad_tol) U *= 1.1;
        double tmax = 1e-3;
        for (const auto& t : points) tmax = std::max(tmax, std::abs(t[0]));
        auto edges = panel_edges(U, tmax);
        const std::size_t nodes = (edges.size() - 1) * 20;
        if (nodes > node_budget) throw AccuracyError("invert_density: node budget exceeded", static_cast<double>(nodes));

        std::vector<double> us, ws;
        std::vector<cplx> ps;
        us.reserve(nodes);
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            const double mid = 0.5 * (edges[i] + edges[i + 1]), hw = 0.5 * (edges[i + 1] - edges[i]);
            for (int j = 0; j < 20; ++j) {
                const double u = mid + hw * R.x[j];
                us.push_back(u);
                ws.push_back(hw * R.w[j] * 2.0 * u);
                ps.push_back(psi(1, {u * u}, 1e-10));
            }
        }
        out.psi_evaluations = us.size();
        for (const auto& t : points) {
            double acc = 0.0;
            for (std::size_t i = 0; i < us.size(); ++i)
                acc += ws[i] * (std::polar(1.0, -us[i] * us[i] * t[0]) * ps[i]).real();
            out.values.push_back(acc / M_PI);
        }
        out.truncation_estimate = tail(U);
        if (out.truncation_estimate > quad_tol)
            throw AccuracyError("invert_density: truncation above tolerance", out.truncation_estimate);
        return out;
    }

    // p = 2: tensor grid over x_1 >= 0 (conjugate symmetry) and x_2 in R.
    // |psi| along the axes is exp(-(c_1 x)^{1/2}) and exp(-(c_2 x)^{1/4}).
    double U1 = 25.0 / std::sqrt(stable_params(1).c);
    double U2 = std::sqrt(std::pow(12.0, 4.0) / stable_params(2).c);
    double tmax1 = 1e-3, tmax2 = 1e-3;
    for (const auto& t : points) {
        tmax1 = std::max(tmax1, std::abs(t[0]));
        tmax2 = std::max(tmax2, std::abs(t[1]));
    }
    auto e1 = panel_edges(U1, tmax1), e2 = panel_edges(U2, tmax2);
    std::size_t n1 = (e1.size() - 1) * 20, n2 = (e2.size() - 1) * 20;
    while (n1 * 2 * n2 > node_budget) {
        // Best effort: shrink the box until the budget fits.
        U1 *= 0.8;
        U2 *= 0.8;
        e1 = panel_edges(U1, tmax1);
        e2 = panel_edges(U2, tmax2);
        n1 = (e1.size() - 1) * 20;
        n2 = (e2.size() - 1) * 20;
    }
    auto nodes_of = [&](const std::vector<double>& e, std::vector<double>& u, std::vector<double>& w) {
        for (std::size_t i = 0; i + 1 < e.size(); ++i) {
            const double mid = 0.5 * (e[i] + e[i + 1]), hw = 0.5 * (e[i + 1] - e[i]);
            for (int j = 0; j < 20; ++j) {
                const double v = mid + hw * R.x[j];
                u.push_back(v);
                w.push_back(hw * R.w[j] * 2.0 * v);
            }
        }
    };
    std::vector<double> u1, w1, u2, w2;
    nodes_of(e1, u1, w1);
    nodes_of(e2, u2, w2);
    std::vector<double> acc(points.size(), 0.0);
    for (std::size_t i = 0; i < u1.size(); ++i)
        for (std::size_t j = 0; j < u2.size(); ++j)
            for (double s2 : {1.0, -1.0}) {
                const double x1 = u1[i] * u1[i], x2 = s2 * u2[j] * u2[j];
                const cplx ps = psi(2, {x1, x2}, 1e-8);
                ++out.psi_evaluations;
                for (std::size_t k = 0; k < points.size(); ++k)
                    acc[k] += w1[i] * w2[j] *
                              (std::polar(1.0, -(x1 * points[k][0] + x2 * points[k][1])) * ps).real();
            }
    for (double v : acc) out.values.push_back(2.0 * v / (4.0 * M_PI * M_PI));
    out.truncation_estimate = std::max({std::abs(psi(2, {U1 * U1, 0.0})), std::abs(psi(2, {0.0, U2 * U2})),
                                        std::abs(psi(2, {0.0, -U2 * U2}))});
    return out;
}

double fit_decay_constant(int p, int q, const std::vector<double>& xs) {
    if (q < 1 || q > p) throw ValidationError("fit_decay_constant: axis outside 1..p");
    double C = INFINITY;
    for (double x : xs) {
        std::vector<double> v(p, 0.0);
        v[q - 1] = x;
        const double lg = std::log(std::abs(psi(p, v)));
        C = std::min(C, -lg / std::pow(std::abs(x), 1.0 / (2.0 * p)));
    }
    return C;
}

}  // namespace pscat
