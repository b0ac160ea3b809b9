"""Probe the validated regions of the Mittag-Leffler and Wright M series.

Usage: python3 specfun_region.py PROBE

PROBE is an executable reading lines "kind alpha beta re im" on stdin and
printing "re im" per line (the specfun_probe test helper does this). kind is one of
ml (raw Mittag-Leffler series), ms (Wright M series), mi (Wright M integral).
References are computed with mpmath at 50 digits.
"""
import subprocess
import sys

import mpmath as mp

mp.mp.dps = 50


def ml_ref(a, b, z):
    a, b, z = mp.mpf(a), mp.mpf(b), mp.mpc(z)
    s, k = mp.mpc(0), 0
    while True:
        t = z**k * mp.rgamma(a * k + b)
        s += t
        if k > 20 and abs(t) < mp.mpf(10) ** -45 * max(abs(s), mp.mpf(10) ** -40):
            return s
        k += 1


def m_series_ref(a, x):
    a, x = mp.mpf(a), mp.mpf(x)
    s, k, small = mp.mpf(0), 0, 0
    while True:
        # Terms vanish at the poles of the gamma function, so require a run of small ones.
        t = (-x) ** k / mp.factorial(k) * mp.rgamma(-a * k + 1 - a)
        s += t
        bound = (x ** k / mp.factorial(k)) * mp.gamma(a * (k + 1)) if k > 20 else mp.inf
        small = small + 1 if bound < mp.mpf(10) ** -45 * max(abs(s), mp.mpf(10) ** -60) else 0
        if small >= 3:
            return s
        k += 1


def m_ref(a, x):
    # The alternating series cancels heavily for large x; raise the precision until it settles.
    dps = 50
    while True:
        with mp.workdps(dps):
            lo = m_series_ref(a, x)
        with mp.workdps(2 * dps):
            hi = m_series_ref(a, x)
        if hi == 0 or abs(lo - hi) < mp.mpf(10) ** -30 * abs(hi):
            return hi
        dps *= 2


def run(probe, lines):
    out = subprocess.run([probe], input="\n".join(lines) + "\n", capture_output=True, text=True,
                         check=True).stdout.split("\n")
    res = []
    for ln in out[: len(lines)]:
        re_, im_ = ln.split()
        res.append(complex(float(re_), float(im_)))
    return res


def relerr(got, ref):
    if got != got:
        return float("inf")
    if ref == 0:
        return 0.0 if got == 0 else float("inf")
    ref = complex(ref)
    return abs(got - ref) / max(abs(ref), 1e-300)


def ml_region(probe, tol=1e-10):
    print("# alpha  zmax(beta in {1, 2, alpha})")
    for a in [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0]:
        radii = [0.1 * i for i in range(1, 301)]
        angles = [mp.pi * j / 8 for j in range(9)]
        betas = sorted({1.0, 2.0, a})
        pts = [(b, r * mp.expj(th)) for r in radii for th in angles for b in betas]
        lines = [f"ml {a} {b} {mp.nstr(z.real, 17)} {mp.nstr(z.imag, 17)}" for b, z in pts]
        got = run(probe, lines)
        zmax = 0.0
        per = len(angles) * len(betas)
        for i, r in enumerate(radii):
            blk = range(i * per, (i + 1) * per)
            if any(relerr(got[j], ml_ref(a, pts[j][0], pts[j][1])) > tol for j in blk):
                break
            zmax = r
        print(f"{a:.1f} {zmax:.1f}")


def m_region(probe, tol=1e-11):
    # The reference series peaks near k ~ x^(1/(1-alpha)); keep x where that stays affordable.
    print("# alpha  xcap  series_xmax  integral_max_relerr_on[0.5,xcap]")
    for a in [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95]:
        xcap = min(12.0, 1500.0 ** (1.0 - a))
        xs = [0.05 * i for i in range(0, int(xcap / 0.05) + 1)]
        got = run(probe, [f"ms {a} 0 {x} 0" for x in xs])
        xmax = 0.0
        for x, g in zip(xs, got):
            ref = m_ref(a, x)
            if relerr(g, ref) > tol and (g != g or abs(g - complex(ref)) > 1e-250):
                break
            xmax = x
        xi = [0.5 + 0.25 * i for i in range(int((xcap - 0.5) / 0.25) + 1)]
        gi = run(probe, [f"mi {a} 0 {x} 0" for x in xi])
        worst = 0.0
        for x, g in zip(xi, gi):
            ref = m_ref(a, x)
            if abs(ref) > 1e-280:
                worst = max(worst, relerr(g, ref))
        print(f"{a:.2f} {xcap:.2f} {xmax:.2f} {worst:.2e}")


if __name__ == "__main__":
    if "--m-only" not in sys.argv:
        ml_region(sys.argv[1])
    m_region(sys.argv[1])
