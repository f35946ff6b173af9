"""Random parameter draws for the verification suites.

All draws come from documented boxes: parameter entries live in
[0.1, 2.5], and wherever an identity needs parameters distinct modulo
integers the pairwise differences keep a distance of at least 0.05 from
the nearest integer.  Draws are rejection-sampled against each identity's
nondegeneracy margins, so randomized suites respect the preconditions by
construction.
"""

from __future__ import annotations

import numpy as np

from .special import poch

ENTRY_LO = 0.1
ENTRY_HI = 2.5
MOD1_MARGIN = 0.05
MAX_RESAMPLE = 5000


def dist_mod1(d) -> float:
    d = complex(d)
    return abs(d - round(d.real))


def _separated(values, margin=MOD1_MARGIN) -> bool:
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if dist_mod1(values[i] - values[j]) < margin:
                return False
    return True


def _entries(rng, k):
    return rng.uniform(ENTRY_LO, ENTRY_HI, k)


def _resample(draw, accept):
    for _ in range(MAX_RESAMPLE):
        cand = draw()
        if accept(cand):
            return cand
    raise RuntimeError("rejection sampling failed; margins too tight")


def draw_sine_vectors(rng, max_m=4):
    """(a, b, z) for the sine identity: complex entries, separated a-row."""
    m = int(rng.integers(1, max_m + 1))

    def draw():
        a = _entries(rng, m) + 1j * rng.uniform(-0.5, 0.5, m)
        b = _entries(rng, m) + 1j * rng.uniform(-0.5, 0.5, m)
        z = complex(rng.uniform(-1.0, 2.0), rng.uniform(-1.0, 1.0))
        return tuple(a), tuple(b), z

    def accept(cand):
        a, b, z = cand
        if not _separated(a):
            return False
        return all(dist_mod1(z - aj) >= MOD1_MARGIN for aj in a)

    return _resample(draw, accept)


def draw_gparams(rng, p, m=None, n=None, require_m_positive=True):
    """Real balanced rows with separated pole lattices.

    Separation is enforced within the left parameters (bottom[:m]), within
    the whole top row (the continuation formulas expand over it), and on
    the pinch differences top[:n] - bottom[:m].
    """
    if m is None:
        lo = 1 if require_m_positive else 0
        m = int(rng.integers(lo, p + 1))
        n = p - m
    assert m + n == p

    def draw():
        return _entries(rng, p), _entries(rng, p)

    def accept(cand):
        top, bottom = cand
        if not _separated(top):
            return False
        if not _separated(bottom[:m]):
            return False
        for i in range(m):
            for j in range(n):
                if dist_mod1(top[j] - bottom[i]) < MOD1_MARGIN:
                    return False
        return True

    top, bottom = _resample(draw, accept)
    return m, n, tuple(top), tuple(bottom)


def draw_outside_point(rng, rho_lo=1.2, rho_hi=4.0):
    """z with |z| in (rho_lo, rho_hi), bounded away from both cuts."""
    rho = rng.uniform(rho_lo, rho_hi)
    theta = rng.uniform(0.15, np.pi - 0.15) * (1 if rng.uniform() < 0.5 else -1)
    return rho * np.exp(1j * theta)


def draw_inside_point(rng, r_lo=0.15, r_hi=0.85):
    rho = rng.uniform(r_lo, r_hi)
    theta = rng.uniform(0.1, np.pi - 0.1) * (1 if rng.uniform() < 0.5 else -1)
    return rho * np.exp(1j * theta)


def draw_euler_pfaff(rng):
    """p = 2 rows for the Norlund continuation vs the closed-form route.

    Keeps psi away from integers and the transformed argument 1 - 1/z
    inside the series disk.
    """

    def draw():
        top = _entries(rng, 2)
        bottom = _entries(rng, 2)
        rho = rng.uniform(1.2, 2.5)
        theta = rng.uniform(0.2, 1.0) * (1 if rng.uniform() < 0.5 else -1)
        return top, bottom, rho * np.exp(1j * theta)

    def accept(cand):
        top, bottom, z = cand
        psi = sum(top) - sum(bottom)
        if dist_mod1(psi) < MOD1_MARGIN:
            return False
        if not (_separated(top) and _separated(bottom)):
            return False
        return abs(1.0 - 1.0 / z) <= 0.85

    top, bottom, z = _resample(draw, accept)
    return tuple(top), tuple(bottom), complex(z)


def draw_ipd(rng, r, m_max, need_second=False):
    """(a, b, c, f, m_vec) for the series transformations, margins enforced."""

    def draw():
        m_vec = tuple(int(v) for v in rng.integers(1, m_max + 1, r))
        m = sum(m_vec)
        a, b = rng.uniform(0.2, 1.2, 2)
        c = rng.uniform(2.2, 4.5) + m
        f = _entries(rng, r) + 0.5
        return a, b, c, tuple(f), m_vec

    def accept(cand):
        a, b, c, f, m_vec = cand
        m = sum(m_vec)
        if abs(poch(c - b - m, m)) < 0.05:
            return False
        if any(abs(b - fj) < 0.05 for fj in f):
            return False
        if any(dist_mod1(fi - fj) < MOD1_MARGIN for i, fi in enumerate(f) for fj in f[i + 1 :]):
            return False
        if need_second:
            if abs(poch(c - a - m, m)) < 0.05:
                return False
            if abs(poch(1 + a + b - c, m)) < 0.05:
                return False
        return True

    return _resample(draw, accept)


def draw_ipd_with_d(rng, r, m_total):
    """IPD spec plus the d parameter for the Meijer-Norlund transformation."""

    def draw():
        a, b, c, f, m_vec = draw_ipd(rng, r, m_total, need_second=True)
        d = rng.uniform(0.4, 1.8)
        return a, b, c, f, m_vec, d

    def accept(cand):
        a, b, c, f, m_vec, d = cand
        if sum(m_vec) != m_total:
            return False
        m = sum(m_vec)
        # Left lattice of the Norlund LHS must stay separated: bottom row
        # (a, b, f+m) pairwise distinct modulo 1.
        bot = [a, b] + [f[i] + m_vec[i] for i in range(r)]
        if any(
            dist_mod1(bot[i] - bot[j]) < MOD1_MARGIN
            for i in range(len(bot))
            for j in range(i + 1, len(bot))
        ):
            return False
        # alpha, beta phases away from integer degenerations (the shifted
        # polynomials reuse the unshifted Pochhammer margins: the d-shift
        # cancels in c - a - m and c - b - m).
        alpha = c + d - a - b - m - 1
        beta = d - a - 1
        if dist_mod1(alpha) < MOD1_MARGIN or dist_mod1(beta) < MOD1_MARGIN:
            return False
        return True

    return _resample(draw, accept)


def draw_sum_integral(rng, p, q, need_mn=False, m_max=3):
    """Admissible gamma-ratio sum/integral spec with comfortable margins."""

    def draw():
        a = _entries(rng, p) * 0.6 + 0.2
        b = rng.uniform(1.2, 3.0, q) + (1.2 if p > q else 0.0)
        mu, nu = rng.uniform(0.05, 0.8, 2)
        alpha, beta = rng.uniform(0.3, 1.5, 2)
        m = int(rng.integers(0, m_max + 1)) if need_mn else 0
        lam = rng.uniform(0.1, 1.2)
        return a, b, mu, nu, alpha, beta, m, lam

    def accept(cand):
        a, b, mu, nu, alpha, beta, m, lam = cand
        excess = sum(b) - sum(a)
        if excess < 0.75:
            return False
        if (p - q) % 2 == 0 and excess + (p - q) * (1 - mu - nu) / 2.0 < 0.4:
            return False
        # digamma-series condition with margin
        if excess - ((p - q) * (lam + m - 1) + 1) / 2.0 < 0.3:
            return False
        if not _separated(list(a)):
            return False
        # left row of the integrand G: (a + mu + nu, 1 - b) separated
        row = list(a + mu + nu) + [1 - x for x in b]
        if not _separated(row):
            return False
        return True

    a, b, mu, nu, alpha, beta, m, lam = _resample(draw, accept)
    return (
        tuple(a),
        tuple(b),
        float(mu),
        float(nu),
        float(alpha),
        float(beta),
        int(m),
        float(lam),
    )
