"""Characteristic polynomials and integer-parameter-difference transformations.

The two Euler-type transformations of (r+2)F(r+1) functions whose last r
numerator parameters exceed the matching denominator parameters by positive
integers are governed by degree-m characteristic polynomials (m the sum of
the integer differences).  Their roots supply the auxiliary parameter pairs
(root+1 over root) of the transformed (m+2)F(m+1).  The same polynomials,
evaluated at d-shifted arguments, transform the Meijer-Norlund function
IG^{p,0}_{p,p} with the analogous parameter structure.

Polynomial coefficients are assembled by exact convolution of the expanded
Pochhammer factors (t)_k and (C - t)_{m-k}; roots come from companion-matrix
eigenvalues with one Newton polish.  The terminating hypergeometric values
at unit argument are summed directly over their k+1 terms.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateParameterError
from .gfun import GParams, left_series
from .hyper import HyperSpec, pfq
from .oracle import residue_series_g
from .special import ParamVec, gamma_prod_ratio, param_vec, poch
from .types import IdentityReport

__all__ = [
    "IpdSpec",
    "CharacteristicPolynomial",
    "qm_poly",
    "qhat_poly",
    "transform_check",
    "g_ipd_transform",
]

DEGEN_TOL = 1e-10
ROOT_RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class IpdSpec:
    """Parameters of an integer-parameter-difference transformation.

    ``f`` has length r and ``m_vec`` the matching positive integer
    differences; ``d`` is only needed for the Meijer-Norlund transformation
    and may be None for the plain series transformations.
    """

    a: complex
    b: complex
    c: complex
    f: ParamVec
    m_vec: tuple[int, ...]
    d: complex | None = None

    def __init__(self, a, b, c, f, m_vec, d=None):
        object.__setattr__(self, "a", complex(a))
        object.__setattr__(self, "b", complex(b))
        object.__setattr__(self, "c", complex(c))
        object.__setattr__(self, "f", param_vec(f))
        object.__setattr__(self, "m_vec", tuple(int(v) for v in m_vec))
        object.__setattr__(self, "d", None if d is None else complex(d))
        if len(self.m_vec) != len(self.f):
            raise ValueError("f and m_vec must have equal length")
        if any(v < 1 for v in self.m_vec):
            raise ValueError("integer differences must be >= 1")

    @property
    def m(self) -> int:
        return sum(self.m_vec)

    @property
    def r(self) -> int:
        return len(self.f)


@dataclass(frozen=True)
class CharacteristicPolynomial:
    """Coefficients (ascending powers), roots, and conditioning metadata."""

    coefficients: tuple[complex, ...]
    roots: tuple[complex, ...]
    kind: str
    condition_estimate: float

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, t: complex) -> complex:
        acc = 0.0 + 0.0j
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc


def _hyper_unit(k: int, num_extra, den_extra) -> complex:
    """Terminating sum over j of (-k)_j prod(num)_j / (prod(den)_j j!) at 1."""
    total = 1.0 + 0.0j
    t = 1.0 + 0.0j
    for j in range(k):
        r = (-k + j) / (j + 1.0)
        for x in num_extra:
            r *= x + j
        for y in den_extra:
            r /= y + j
        t *= r
        total += t
    return total


def _poch_poly_t(k: int):
    """(t)_k as ascending coefficients."""
    co = np.array([1.0 + 0.0j])
    for i in range(k):
        co = np.convolve(co, np.array([i, 1.0], dtype=complex))
    return co


def _poch_poly_shift_minus_t(cst: complex, k: int):
    """(cst - t)_k as ascending coefficients."""
    co = np.array([1.0 + 0.0j])
    for i in range(k):
        co = np.convolve(co, np.array([cst + i, -1.0], dtype=complex))
    return co


def _roots_with_polish(coeffs: np.ndarray):
    """Companion-matrix eigenvalues with one Newton step per root."""
    m = len(coeffs) - 1
    monic = coeffs / coeffs[-1]
    comp = np.zeros((m, m), dtype=complex)
    if m > 1:
        comp[1:, :-1] = np.eye(m - 1)
    comp[:, -1] = -monic[:-1]
    roots = np.linalg.eigvals(comp)
    deriv = np.polynomial.polynomial.polyder(coeffs)
    pv = np.polynomial.polynomial.polyval(roots, coeffs)
    dv = np.polynomial.polynomial.polyval(roots, deriv)
    safe = np.abs(dv) > 1e-300
    roots = roots - np.where(safe, pv / np.where(safe, dv, 1.0), 0.0)
    return roots


def _finish_polynomial(coeffs: np.ndarray, kind: str) -> CharacteristicPolynomial:
    m = len(coeffs) - 1
    scale = float(np.max(np.abs(coeffs)))
    if m == 0 or abs(coeffs[-1]) <= 1e-13 * scale:
        raise DegenerateParameterError(
            f"characteristic polynomial degenerates: leading coefficient ~ 0 (degree {m})"
        )
    roots = _roots_with_polish(coeffs)
    deriv = np.polynomial.polynomial.polyder(coeffs)
    resid = np.abs(np.polynomial.polynomial.polyval(roots, coeffs))
    if np.any(resid >= ROOT_RESIDUAL_TOL * scale):
        raise DegenerateParameterError(
            f"root polishing failed: residual {resid.max():.2e} vs scale {scale:.2e}"
        )
    dv = np.abs(np.polynomial.polynomial.polyval(roots, deriv))
    cond = float(np.max(scale / np.maximum(dv, 1e-300)))
    return CharacteristicPolynomial(
        tuple(complex(x) for x in coeffs),
        tuple(complex(x) for x in roots),
        kind,
        cond,
    )


def qm_poly(b, c, f, m_vec) -> CharacteristicPolynomial:
    """First characteristic polynomial Q_m(t), normalized so Q_m(0) = 1.

    Q_m(t) = (c-b-m)_m^{-1} sum_k (b)_k (t)_k (c-b-m-t)_{m-k} (-1)^k / k!
             * F(-k, f+m; f; 1).
    """
    b = complex(b)
    c = complex(c)
    f = param_vec(f)
    m_vec = tuple(int(v) for v in m_vec)
    m = sum(m_vec)
    norm = poch(c - b - m, m)
    if abs(norm) <= DEGEN_TOL * max(1.0, abs(c - b - m) ** m):
        raise DegenerateParameterError(
            f"(c-b-m)_m = {norm} vanishes; the first transformation fails"
        )
    fm = [f[i] + m_vec[i] for i in range(len(f))]
    coeffs = np.zeros(m + 1, dtype=complex)
    kfac = 1.0
    for k in range(m + 1):
        if k:
            kfac *= k
        pref = poch(b, k) * (-1.0) ** k / kfac * _hyper_unit(k, fm, f)
        piece = np.convolve(_poch_poly_t(k), _poch_poly_shift_minus_t(c - b - m, m - k))
        coeffs[: len(piece)] += pref * piece
    coeffs /= norm
    return _finish_polynomial(coeffs, "first")


def qhat_poly(a, b, c, f, m_vec) -> CharacteristicPolynomial:
    """Second characteristic polynomial, normalized so it equals 1 at t = 0.

    hatQ_m(t) = sum_k (-1)^k (a)_k (-b-m)_k (t)_k (c-a-m-t)_{m-k}
                / ((c-a-m)_m (c-b-m)_k k!) * F(-k, b, f+m; b+m-k+1, f; 1).
    """
    a = complex(a)
    b = complex(b)
    c = complex(c)
    f = param_vec(f)
    m_vec = tuple(int(v) for v in m_vec)
    m = sum(m_vec)
    norm = poch(c - a - m, m)
    if abs(norm) <= DEGEN_TOL * max(1.0, abs(c - a - m) ** m):
        raise DegenerateParameterError(
            f"(c-a-m)_m = {norm} vanishes; the second transformation fails"
        )
    fm = [f[i] + m_vec[i] for i in range(len(f))]
    coeffs = np.zeros(m + 1, dtype=complex)
    kfac = 1.0
    for k in range(m + 1):
        if k:
            kfac *= k
        den_k = poch(c - b - m, k)
        if abs(den_k) <= DEGEN_TOL:
            raise DegenerateParameterError(
                f"(c-b-m)_{k} = {den_k} vanishes; the second transformation fails"
            )
        pref = (
            (-1.0) ** k
            * poch(a, k)
            * poch(-b - m, k)
            / (den_k * kfac)
            * _hyper_unit(k, [b] + fm, [b + m - k + 1] + list(f))
        )
        piece = np.convolve(_poch_poly_t(k), _poch_poly_shift_minus_t(c - a - m, m - k))
        coeffs[: len(piece)] += pref * piece
    coeffs /= norm
    return _finish_polynomial(coeffs, "second")


def transform_check(spec: IpdSpec, x, kind: str, tolerance: float = 1e-10) -> IdentityReport:
    """Residual of the first or second Euler-type transformation at x.

    LHS is the (r+2)F(r+1) with parameter pairs f+m over f; RHS is the
    transformed (m+2)F(m+1) built from the characteristic-polynomial roots.
    """
    x = complex(x)
    if x.imag == 0 and x.real >= 1.0:
        raise DegenerateParameterError("x on [1, oo) is outside the transformation domain")
    a, b, c, f, m_vec, m = spec.a, spec.b, spec.c, spec.f, spec.m_vec, spec.m
    fm = [f[i] + m_vec[i] for i in range(len(f))]
    lhs = pfq(HyperSpec([a, b] + fm, [c] + list(f), x)).value

    if kind == "first":
        for fj in f:
            if abs(b - fj) <= DEGEN_TOL:
                raise DegenerateParameterError(f"b = f_j = {b} degenerates the first kind")
        zeta = qm_poly(b, c, f, m_vec).roots
        w = x / (x - 1.0)
        val = pfq(
            HyperSpec([a, c - b - m] + [t + 1 for t in zeta], [c] + list(zeta), w)
        ).value
        rhs = (1.0 - x) ** (-a) * val
    elif kind == "second":
        if abs(poch(1.0 + a + b - c, m)) <= DEGEN_TOL:
            raise DegenerateParameterError("(1+a+b-c)_m vanishes; second kind degenerates")
        eta = qhat_poly(a, b, c, f, m_vec).roots
        val = pfq(
            HyperSpec([c - a - m, c - b - m] + [t + 1 for t in eta], [c] + list(eta), x)
        ).value
        rhs = (1.0 - x) ** (c - a - b - m) * val
    else:
        raise ValueError(f"kind must be 'first' or 'second', got {kind!r}")
    return IdentityReport.from_sides(lhs, rhs, tolerance, identity=f"euler-ipd-{kind}")


def g_ipd_transform(spec: IpdSpec, z, kind: str, tolerance: float = 1e-6) -> IdentityReport:
    """Residual of the Meijer-Norlund IPD transformation at z in (0, 1).

    LHS = IG^{p,0}_{p,p}(z | c,d,f; a,b,f+m) with p = r+2, evaluated both by
    the left expansion and by the residue oracle (the oracle residual is
    reported in ``details``).  RHS builds the degree-m characteristic
    polynomial at d-shifted arguments and combines the two augmented G
    values with the cos/sin weights of the stated identity.
    """
    if spec.d is None:
        raise ValueError("g_ipd_transform needs the d parameter")
    z = complex(z)
    if not (0.0 < z.real < 1.0 and z.imag == 0.0):
        raise DegenerateParameterError("direct evaluation needs z in (0, 1)")
    a, b, c, d, f, m_vec, m = spec.a, spec.b, spec.c, spec.d, spec.f, spec.m_vec, spec.m
    fm = [f[i] + m_vec[i] for i in range(len(f))]
    p = spec.r + 2
    avec = [a, b] + fm
    bvec = [c] + list(f)
    top = (c, d) + tuple(f)

    lhs = left_series(p, 0, top, tuple(avec), z)
    oracle = residue_series_g(GParams(p, 0, top, tuple(avec)), z, "left")

    if kind == "first":
        alpha = c + d - a - b - m - 1.0
        lam = qhat_poly(a - d + 1, b - d + 1, c - d + 1, [t - d + 1 for t in f], m_vec).roots
        ahat = [c - a - m, c - b - m] + [t + 1 for t in lam]
        bhat = [c - d + 1] + list(lam)
        weight_0, weight_1 = cmath.cos(cmath.pi * alpha), cmath.sin(cmath.pi * alpha)
        arg = z
        expo = alpha
    elif kind == "second":
        beta = d - a - 1.0
        gam = qm_poly(b - d + 1, c - d + 1, [t - d + 1 for t in f], m_vec).roots
        ahat = [a - d + 1, c - b - m] + [t + 1 for t in gam]
        bhat = [c - d + 1] + list(gam)
        weight_0, weight_1 = -cmath.cos(cmath.pi * beta), cmath.sin(cmath.pi * beta)
        arg = 1.0 - z
        expo = beta
    else:
        raise ValueError(f"kind must be 'first' or 'second', got {kind!r}")

    pref = (
        _principal_pow(z, d - expo - 1.0)
        * _principal_pow(1.0 - z, expo)
        * gamma_prod_ratio([t - d + 1 for t in avec] + bhat, ahat + [t - d + 1 for t in bvec])
    )
    g_main = left_series(m + 2, 0, (1.0,) + tuple(bhat), tuple(ahat), arg)
    g_aux = left_series(m + 2, 1, (1.0, 1.5) + tuple(bhat), tuple(ahat) + (1.5,), arg)
    rhs = pref * (weight_0 * g_main.value + weight_1 * g_aux.value)

    report = IdentityReport.from_sides(lhs.value, rhs, tolerance, identity=f"norlund-ipd-{kind}")
    scale = max(abs(lhs.value), abs(rhs), 1e-300)
    report.details["oracle_lhs"] = oracle.value
    report.details["oracle_rel_residual"] = abs(oracle.value - complex(rhs)) / scale
    report.passed = report.passed and report.details["oracle_rel_residual"] < tolerance
    return report


def _principal_pow(base: complex, expo: complex) -> complex:
    return cmath.exp(expo * cmath.log(base))
