"""Reference values for the test suite, computed independently of the C++ code.

Run with: python3 tests/oracles/oracle.py
Needs sympy and mpmath.
"""
import itertools
import math

import mpmath as mp
import sympy as sp

mp.mp.dps = 30


def partitions_bruteforce(p):
    ranges = [range(p // q + 1) for q in range(1, p + 1)]
    return [a for a in itertools.product(*ranges) if sum((q + 1) * a[q] for q in range(p)) == p]


def bessel_log_coeffs(pmax):
    x = sp.symbols("x")
    ser = sp.series(sp.log(sp.besseli(0, 2 * x)), x, 0, 2 * pmax + 2).removeO()
    return [sp.nsimplify(ser.coeff(x, 2 * j)) for j in range(pmax + 1)]


def psi_contour(xs):
    """psi via rotating v -> r e^{i theta} into the decay sector of exp(iQ)."""
    d = max(i for i, c in enumerate(xs) if c != 0) + 1
    sign = 1 if xs[d - 1] > 0 else -1
    theta = sign * mp.pi / (4 * d)
    w = mp.expj(theta)

    def g(r):
        v = r * w
        Q = sum(mp.mpf(c) * v ** (2 * (q + 1)) for q, c in enumerate(xs))
        return (1 - mp.exp(1j * Q)) / v**2 * w

    I = 2 * mp.quad(g, [0, 1, 10, 100, mp.inf])
    return mp.exp(-I / (16 * mp.pi))


def na_bruteforce(thetas_per_level, radii, a):
    vecs = []
    for th_list, rho in zip(thetas_per_level, radii):
        level = []
        for th in th_list:
            c, s = rho * math.cos(th), rho * math.sin(th)
            for v in [(c, s), (-c, s)]:
                level += [v, (-v[0], -v[1])]
        vecs.append(level)
    slots = [vecs[k] for k, ak in enumerate(a) for _ in range(ak)]
    n = 0
    for tup in itertools.product(*slots):
        if math.hypot(sum(v[0] for v in tup), sum(v[1] for v in tup)) < 1e-9:
            n += 1
    return n


def torus_moment(R, tau, p):
    pts = [(a, b) for a in range(-20, 21) for b in range(-20, 21) if 0 < a * a + b * b <= R]
    amp = {v: 1 / (4 * math.pi**2 * (v[0] ** 2 + v[1] ** 2) - tau) for v in pts}
    h1 = (p + 1) // 2
    h2 = p // 2

    def sums(h):
        acc = {(0, 0): 1.0}
        for _ in range(h):
            nxt = {}
            for (a, b), w in acc.items():
                for v in pts:
                    k = (a + v[0], b + v[1])
                    nxt[k] = nxt.get(k, 0.0) + w * amp[v]
            acc = nxt
        return acc

    L, Rr = sums(h1), sums(h2)
    return sum(w * L.get((-a, -b), 0.0) for (a, b), w in Rr.items())


def main():
    print("partitions(4) =", len(partitions_bruteforce(4)))
    coeffs = bessel_log_coeffs(12)
    A = [(-1) ** (j - 1) * coeffs[j] for j in range(1, 13)]
    print("A_p =", [str(a) for a in A])

    print("c_1 =", mp.nstr(1 / (128 * mp.pi), 20))
    for q in (2, 3):
        c = (mp.cos(mp.pi / (4 * q)) * mp.gamma(1 - mp.mpf(1) / (2 * q)) / (8 * mp.pi)) ** (2 * q)
        print(f"c_{q} =", mp.nstr(c, 20))

    for t in (0.002, 0.005, 0.01, 0.05):
        t = mp.mpf(t)
        dens = t ** mp.mpf(-1.5) * mp.exp(-1 / (256 * mp.pi * t)) / (16 * mp.pi)
        print(f"levy_density({t}) =", mp.nstr(dens, 17), " cdf =", mp.nstr(mp.erfc(1 / mp.sqrt(256 * mp.pi * t)), 17))

    for xs in ([1.0, 0.5], [-3.0, 2.0], [0.5, -2.0], [1.0, -1.0, 1.0], [0.0, 0.0, 5.0], [2.0]):
        v = psi_contour(xs)
        print("psi", xs, "=", mp.nstr(v.real, 17), mp.nstr(v.imag, 17))

    print("N_a(4 on one level, m=1) =", na_bruteforce([[0.3]], [1.0], [4]))
    print("N_a(2 on one level, m=3) =", na_bruteforce([[0.3, 0.7, 1.1]], [1.0], [2]))
    print("N_a((2,2), m=(1,2)) =", na_bruteforce([[0.3], [0.5, 1.2]], [1.0, 1.7], [2, 2]))

    print("M2 square torus R=2 tau=1:", repr(4 / (4 * math.pi**2 - 1) ** 2 + 4 / (8 * math.pi**2 - 1) ** 2))
    for p in (2, 3, 4):
        print(f"torus moment R=90 tau=17 p={p}:", repr(torus_moment(90, 17.0, p)))


if __name__ == "__main__":
    main()
