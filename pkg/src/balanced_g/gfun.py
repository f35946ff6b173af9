"""Balanced Meijer G evaluation and its closed-form analytic continuations.

Conventions follow the source convention for the symbol
``G(z | top; bottom)``: the TOP row is the b-parameter vector, the BOTTOM
row is the a-parameter vector, and the first ``m`` bottom entries generate
the left pole lattice of the Mellin-Barnes integrand
``Gamma(a1+s) Gamma(1-b1-s) / (Gamma(b2+s) Gamma(1-a2-s))``.  This is the
reverse of the more common row order; :func:`from_common_convention` adapts.

The internal branch ("IG") is the left residue series for |z| < 1 continued
outward; the external branch ("EG") is the right residue series for |z| > 1
continued inward.  Inside the disk the internal branch is a finite sum of
power-weighted pF(p-1) series; outside it is reassembled from two internal
evaluations at 1/z with a phase exp(-+ i pi psi_m) picked by the sign of
Im(z).  Bank operations return boundary values on the three cut segments.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import (
    BranchCutError,
    DegenerateParameterError,
    DomainError,
    UnitCircleError,
)
from .hyper import HyperSpec, pfq, pfq_continue
from .special import ParamVec, gamma_prod_ratio, param_vec, sin_prod
from .types import ComplexEval

__all__ = [
    "GParams",
    "PsiShift",
    "from_common_convention",
    "to_common_convention",
    "expansion_terms",
    "left_series",
    "sine_identity",
    "eval_internal",
    "eval_internal_connection",
    "eval_external",
    "eval_standard",
    "continue_norlund",
    "banks_inner",
    "banks_outer",
    "banks_cut1",
    "BankValues",
]

PINCH_TOL = 1e-10
DEGEN_DETECT = 1e-7
DEGEN_EPS = 1e-6
UNIT_TOL = 1e-12
REAL_TOL = 1e-12


@dataclass(frozen=True)
class PsiShift:
    """The three parameter-difference sums controlling continuation phases."""

    psi_m: complex
    psi_n: complex
    psi_p: complex


@dataclass(frozen=True)
class GParams:
    """Balanced G specification: orders (m, n, p) with m + n = p.

    ``top`` is the b-row, ``bottom`` the a-row (source convention; left
    poles come from the first m bottom entries).
    """

    m: int
    n: int
    top: ParamVec
    bottom: ParamVec
    psi: PsiShift = field(init=False, compare=False)

    def __init__(self, m: int, n: int, top, bottom):
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "top", param_vec(top))
        object.__setattr__(self, "bottom", param_vec(bottom))
        self._validate()
        psi_m = sum(self.top[self.n + j] - self.bottom[j] for j in range(self.m))
        psi_n = sum(self.top[j] - self.bottom[self.m + j] for j in range(self.n))
        psi_p = sum(self.top) - sum(self.bottom)
        if abs(psi_p - psi_m - psi_n) > 1e-10 * max(1.0, abs(psi_p)):
            raise AssertionError("psi bookkeeping identity violated")
        object.__setattr__(self, "psi", PsiShift(psi_m, psi_n, psi_p))

    def _validate(self):
        p = len(self.top)
        if len(self.bottom) != p or p < 1:
            raise ValueError("top and bottom rows must have equal positive length")
        if self.m < 0 or self.n < 0 or self.m + self.n != p:
            raise ValueError(
                f"balanced case requires m + n = p, got m={self.m}, n={self.n}, p={p}"
            )
        # Pole separation: the contour is pinched when a right-pole point
        # 1 - b_j + k meets a left-pole point -a_i - l, i.e. when
        # top_j - bottom_i is a positive integer (i < m, j < n).
        for i in range(self.m):
            for j in range(self.n):
                d = self.top[j] - self.bottom[i]
                r = round(d.real)
                if r >= 1 and abs(d.real - r) <= PINCH_TOL and abs(d.imag) <= PINCH_TOL:
                    raise DegenerateParameterError(
                        f"pole separation fails: top[{j}] - bottom[{i}] = {d} is a positive integer"
                    )

    @property
    def p(self) -> int:
        return len(self.top)

    @property
    def a1(self) -> ParamVec:
        return self.bottom[: self.m]

    @property
    def a2(self) -> ParamVec:
        return self.bottom[self.m :]

    @property
    def b1(self) -> ParamVec:
        return self.top[: self.n]

    @property
    def b2(self) -> ParamVec:
        return self.top[self.n :]

    def reflected(self) -> "GParams":
        """Parameters of the reflected function at 1/z: orders swap to (n, m)."""
        return GParams(
            self.n,
            self.m,
            tuple(1 - x for x in self.bottom),
            tuple(1 - x for x in self.top),
        )

    def is_real(self) -> bool:
        return all(abs(x.imag) <= REAL_TOL for x in self.top + self.bottom)


def from_common_convention(m, n, upper, lower) -> GParams:
    """Build GParams from rows written in the common convention.

    Both conventions place the small-|z| pole lattice in the LOWER row of
    the symbol with multiplicity m, so the rows map across unchanged:
    upper -> top, lower -> bottom.  What differs is lettering only: the
    common convention calls the upper row "a" and the lower row "b",
    whereas here (following the source) the upper row is the b-vector and
    the lower row is the a-vector.  Keeping parameters in a structure with
    explicit ``top``/``bottom`` rows and paper-lettered accessors
    (``a1``/``a2``/``b1``/``b2``) avoids transcription slips.
    """
    return GParams(m, n, top=upper, bottom=lower)


def to_common_convention(g: GParams):
    """Return (m, n, upper_row, lower_row) as the common convention writes them."""
    return g.m, g.n, g.top, g.bottom


class BankValues(NamedTuple):
    """Boundary values on a cut: common real part and Im at the upper bank."""

    re: float
    im_plus: float
    est_error: float


def _principal_power(z: complex, a: complex) -> complex:
    return cmath.exp(a * cmath.log(z))


def _collision_groups(entries, tol):
    """Group indices of entries congruent modulo 1 within tol."""
    groups = []
    used = set()
    for i, x in enumerate(entries):
        if i in used:
            continue
        grp = [i]
        for j in range(i + 1, len(entries)):
            if j in used:
                continue
            d = x - entries[j]
            if abs(d.real - round(d.real)) < tol and abs(d.imag) < tol:
                grp.append(j)
                used.add(j)
        if len(grp) > 1:
            groups.append(grp)
            used.update(grp)
    return groups


def expansion_terms(m, n, top, bottom):
    """Precompute the left-expansion term data for G^{m,n} with |p-m-n| <= 1.

    Returns ``(terms, sign)`` where each term is ``(a_k, coef, num, den)``:
    the power exponent, the gamma-product coefficient, and the pF(p-1)
    parameter rows whose series argument is ``sign * z``.  Terms whose
    coefficient is exactly zero (a denominator gamma pole) are dropped.
    """
    p = len(top)
    sign = -1.0 if (p - m - n) % 2 else 1.0
    terms = []
    for k in range(m):
        ak = bottom[k]
        coef = gamma_prod_ratio(
            [bottom[i] - ak for i in range(m) if i != k]
            + [1 - b + ak for b in top[:n]],
            [1 - a + ak for a in bottom[m:]] + [b - ak for b in top[n:]],
            0.0,
        )
        if coef == 0:
            continue
        num = [1 - b + ak for b in top]
        den = [1 - bottom[i] + ak for i in range(p) if i != k]
        terms.append((complex(ak), coef, num, den))
    return terms, sign


def _left_series_raw(m, n, top, bottom, z) -> ComplexEval:
    """Sum of left-pole hypergeometric terms, no degeneracy policy."""
    terms, sign = expansion_terms(m, n, top, bottom)
    total = 0.0 + 0.0j
    err = 0.0
    for ak, coef, num, den in terms:
        fk = pfq(HyperSpec(num, den, sign * z))
        w = _principal_power(z, ak) * coef
        total += w * fk.value
        err += abs(w) * (fk.est_error + abs(fk.value) * 2e-15)
    return ComplexEval(total, err, "left-series")


def left_series(m, n, top, bottom, z, degenerate_policy: bool = True) -> ComplexEval:
    """Inside-the-disk evaluation by the left-pole hypergeometric expansion.

    Valid for row length p with |p - m - n| <= 1 and |z| < 1; the series
    argument carries the sign (-1)^(p-m-n).  Logarithmic cases (left
    parameters colliding modulo integers) are handled by the epsilon
    perturbation + Richardson extrapolation policy.
    """
    top = param_vec(top)
    bottom = param_vec(bottom)
    p = len(top)
    if abs(p - m - n) > 1:
        raise DomainError(f"left expansion needs |p - m - n| <= 1, got p={p}, m={m}, n={n}")
    if abs(z) >= 1.0:
        raise DomainError(f"left expansion needs |z| < 1, got |z| = {abs(z):.6g}")
    if m == 0:
        return ComplexEval(0.0 + 0.0j, 0.0, "left-series-empty")

    groups = _collision_groups(bottom[:m], DEGEN_DETECT)
    if not groups or not degenerate_policy:
        return _left_series_raw(m, n, top, bottom, z)

    def perturbed(eps):
        bot = list(bottom)
        for grp in groups:
            for rank, idx in enumerate(grp[1:], start=1):
                bot[idx] = bot[idx] + rank * eps
        return _left_series_raw(m, n, top, tuple(bot), z)

    v1 = perturbed(DEGEN_EPS)
    v2 = perturbed(2 * DEGEN_EPS)
    value = 2.0 * v1.value - v2.value
    err = abs(v1.value - v2.value) + 2 * v1.est_error + v2.est_error
    return ComplexEval(value, err, "left-series-perturbed")


def sine_identity(a, b, z, sign: str = "plus"):
    """Both sides of the m-term sine identity, for residual testing.

    lhs = sum_k sin(pi(b - a_k))/sin(pi(a_[k] - a_k)) e^{s i pi (z-a_k)} / sin(pi (z-a_k)),
    rhs = e^{s i pi psi_m} - sin(pi(z-b))/sin(pi(z-a)),  s = +-1,
    psi_m = sum(b_j - a_j).
    """
    a = param_vec(a)
    b = param_vec(b)
    if len(a) != len(b) or len(a) < 1:
        raise ValueError("vectors must have equal size m >= 1")
    s = 1.0 if sign == "plus" else -1.0
    if sign not in ("plus", "minus"):
        raise ValueError(f"sign must be 'plus' or 'minus', got {sign!r}")
    z = complex(z)
    for i, ai in enumerate(a):
        d = z - ai
        if abs(d.real - round(d.real)) < 1e-12 and abs(d.imag) < 1e-12:
            raise DegenerateParameterError(f"z - a[{i}] is an integer; sine denominator vanishes")
        for j in range(i + 1, len(a)):
            d = ai - a[j]
            if abs(d.real - round(d.real)) < 1e-10 and abs(d.imag) < 1e-10:
                raise DegenerateParameterError(
                    f"a[{i}] - a[{j}] = {d} is an integer; identity degenerates"
                )
    m = len(a)
    psi_m = sum(bj - aj for aj, bj in zip(a, b))
    lhs = 0.0 + 0.0j
    for k in range(m):
        num = sin_prod([cmath.pi * (bj - a[k]) for bj in b])
        den = sin_prod([cmath.pi * (a[i] - a[k]) for i in range(m) if i != k])
        lhs += (
            num
            / den
            * cmath.exp(s * 1j * cmath.pi * (z - a[k]))
            / cmath.sin(cmath.pi * (z - a[k]))
        )
    rhs = cmath.exp(s * 1j * cmath.pi * psi_m) - sin_prod(
        [cmath.pi * (z - bj) for bj in b]
    ) / sin_prod([cmath.pi * (z - aj) for aj in a])
    return lhs, rhs


def _check_off_cuts(z: complex):
    if abs(z.imag) == 0.0 and (z.real <= 0.0 or z.real >= 1.0):
        raise BranchCutError(
            f"z = {z} lies on a branch cut; use the bank operations instead"
        )


def _warn_complex_continuation(g: GParams):
    if not g.is_real():
        warnings.warn(
            "outside-the-disk continuation is stated for real parameter vectors; "
            "complex parameters are untested territory",
            RuntimeWarning,
            stacklevel=3,
        )


def eval_internal(g: GParams, z) -> ComplexEval:
    """The internal branch IG^{m,n}_{p,p}(z) on the doubly cut plane.

    Left expansion for |z| < 1; the two-term continuation via 1/z for
    |z| > 1 with the phase sign picked by Im(z).
    """
    z = complex(z)
    _check_off_cuts(z)
    if abs(abs(z) - 1.0) <= UNIT_TOL:
        raise UnitCircleError(f"|z| = 1 within {UNIT_TOL}; no series representation applies")
    if g.m == 0:
        # No left poles: the internal function is identically zero.
        return ComplexEval(0.0 + 0.0j, 0.0, "zero-internal")
    if abs(z) < 1.0:
        return left_series(g.m, g.n, g.top, g.bottom, z)

    _warn_complex_continuation(g)
    w = 1.0 / z
    rtop = tuple(1 - x for x in g.bottom)
    rbot = tuple(1 - x for x in g.top)
    t1 = left_series(g.p, 0, rtop, rbot, w)
    t2 = left_series(g.n, g.m, rtop, rbot, w)
    s = -1.0 if z.imag > 0 else 1.0
    phase = cmath.exp(s * 1j * cmath.pi * g.psi.psi_m)
    value = -phase * t1.value + t2.value
    err = t1.est_error + t2.est_error + abs(value) * 1e-15
    return ComplexEval(value, err, "theorem-2.2")


def eval_internal_connection(g: GParams, z) -> ComplexEval:
    """Internal branch for |z| > 1 via the pFq connection formula per term.

    Cross-validation route for the 1/z continuation: the left expansion is
    kept at argument z and each pF(p-1) factor is continued individually.
    """
    z = complex(z)
    _check_off_cuts(z)
    if abs(z) <= 1.0:
        raise DomainError("connection route requires |z| > 1")
    if g.m == 0:
        return ComplexEval(0.0 + 0.0j, 0.0, "zero-internal")
    sign = "upper" if z.imag > 0 else "lower"
    total = 0.0 + 0.0j
    err = 0.0
    for k in range(g.m):
        ak = g.bottom[k]
        coef = gamma_prod_ratio(
            [g.bottom[i] - ak for i in range(g.m) if i != k]
            + [1 - b + ak for b in g.b1],
            [1 - a + ak for a in g.a2] + [b - ak for b in g.b2],
            0.0,
        )
        if coef == 0:
            continue
        fk = pfq_continue(
            HyperSpec(
                [1 - b + ak for b in g.top],
                [1 - g.bottom[i] + ak for i in range(g.p) if i != k],
                z,
            ),
            sign,
        )
        w = _principal_power(z, ak) * coef
        total += w * fk.value
        err += abs(w) * (fk.est_error + abs(fk.value) * 2e-15)
    return ComplexEval(total, err, "connection-formula")


def eval_external(g: GParams, z) -> ComplexEval:
    """The external branch EG^{m,n}_{p,p}(z).

    Reflection through 1/z for |z| > 1; the two-term inward continuation
    for |z| < 1 with the phase sign "+" for Im(z) >= 0.  For real z in
    (0, 1) the upper-bank value is returned (the segment is a cut of the
    external branch unless psi_n is an integer).
    """
    z = complex(z)
    _check_off_cuts(z)
    if abs(abs(z) - 1.0) <= UNIT_TOL:
        raise UnitCircleError(f"|z| = 1 within {UNIT_TOL}; no series representation applies")
    if g.n == 0:
        return ComplexEval(0.0 + 0.0j, 0.0, "zero-external")
    if abs(z) > 1.0:
        inner = eval_internal(g.reflected(), 1.0 / z)
        return ComplexEval(inner.value, inner.est_error, "reflection")

    _warn_complex_continuation(g)
    t1 = left_series(g.p, 0, g.top, g.bottom, z)
    t2 = left_series(g.m, g.n, g.top, g.bottom, z)
    s = 1.0 if z.imag >= 0 else -1.0
    phase = cmath.exp(s * 1j * cmath.pi * g.psi.psi_n)
    value = -phase * t1.value + t2.value
    err = t1.est_error + t2.est_error + abs(value) * 1e-15
    return ComplexEval(value, err, "corollary-2.3")


def eval_standard(g: GParams, z) -> ComplexEval:
    """The standard G function: internal inside |z| < 1, external outside."""
    z = complex(z)
    if abs(abs(z) - 1.0) <= UNIT_TOL:
        raise UnitCircleError(f"|z| = 1 within {UNIT_TOL}: standard G is undefined there")
    return eval_internal(g, z) if abs(z) < 1.0 else eval_external(g, z)


def continue_norlund(g: GParams, z) -> ComplexEval:
    """Continuation of the Meijer-Norlund function IG^{p,0}_{p,p} to |z| > 1.

    One-term form: -exp(-+ i pi psi_p) IG^{p,0}(1/z | 1-a; 1-b), the "-"
    sign in the exponent for Im(z) > 0.
    """
    z = complex(z)
    if g.n != 0 or g.m != g.p:
        raise DomainError("continue_norlund requires orders (m, n) = (p, 0)")
    _check_off_cuts(z)
    if abs(z) <= 1.0:
        raise DomainError("continue_norlund requires |z| > 1; use eval_internal inside")
    _warn_complex_continuation(g)
    w = 1.0 / z
    t1 = left_series(g.p, 0, tuple(1 - x for x in g.bottom), tuple(1 - x for x in g.top), w)
    s = -1.0 if z.imag > 0 else 1.0
    phase = cmath.exp(s * 1j * cmath.pi * g.psi.psi_p)
    return ComplexEval(-phase * t1.value, t1.est_error, "corollary-2.4")


def _require_real(g: GParams, where: str):
    if not g.is_real():
        raise DomainError(f"{where} requires real parameter vectors")


def banks_inner(g: GParams, x: float) -> BankValues:
    """Bank values of the internal branch on the cut segment (-1, 0).

    At z = x e^{+- i pi}, 0 < x < 1: the common real part and the upper-bank
    imaginary part, each a pi-weighted augmented G at x (the lower bank has
    the opposite imaginary part).
    """
    x = float(x)
    if not 0.0 < x < 1.0:
        raise DomainError(f"banks_inner needs 0 < x < 1, got {x}")
    _require_real(g, "banks_inner")
    re_g = left_series(g.m, g.n, g.top + (1.5,), g.bottom + (1.5,), x)
    im_g = left_series(g.m, g.n, g.top + (1.0,), g.bottom + (1.0,), x)
    return BankValues(
        -math.pi * re_g.value.real,
        math.pi * im_g.value.real,
        math.pi * (re_g.est_error + im_g.est_error),
    )


def banks_outer(g: GParams, x: float) -> BankValues:
    """Bank values of the internal branch on the cut segment (-oo, -1).

    At z = x e^{+- i pi}, x > 1, expressed through four augmented reflected
    G functions at 1/x; the extra parameter pair carries the psi_m phase.
    """
    x = float(x)
    if x <= 1.0:
        raise DomainError(f"banks_outer needs x > 1, got {x}")
    _require_real(g, "banks_outer")
    psi_m = g.psi.psi_m.real
    w = 1.0 / x
    rtop = tuple(1 - t for t in g.bottom)
    rbot = tuple(1 - t for t in g.top)
    g_re1 = left_series(g.p, 0, rtop + (0.5 - psi_m,), rbot + (0.5 - psi_m,), w)
    g_re2 = left_series(g.n, g.m, rtop + (1.5,), rbot + (1.5,), w)
    g_im1 = left_series(g.p, 0, rtop + (1.0 - psi_m,), rbot + (1.0 - psi_m,), w)
    g_im2 = left_series(g.n, g.m, rtop + (1.0,), rbot + (1.0,), w)
    re = -math.pi * (g_re1.value.real + g_re2.value.real)
    im_plus = math.pi * (g_im1.value.real - g_im2.value.real)
    err = math.pi * (
        g_re1.est_error + g_re2.est_error + g_im1.est_error + g_im2.est_error
    )
    return BankValues(re, im_plus, err)


def banks_cut1(g: GParams, x: float) -> BankValues:
    """Bank values of the internal branch on the cut [1, oo).

    At z = x e^{+- i0}, x > 1: real part shared by both banks; the
    imaginary part at the upper bank is sin(pi psi_m) times the reflected
    Norlund value at 1/x.
    """
    x = float(x)
    if x <= 1.0:
        raise DomainError(f"banks_cut1 needs x > 1, got {x}")
    _require_real(g, "banks_cut1")
    psi_m = g.psi.psi_m.real
    w = 1.0 / x
    rtop = tuple(1 - t for t in g.bottom)
    rbot = tuple(1 - t for t in g.top)
    g1 = left_series(g.p, 0, rtop, rbot, w)
    g2 = left_series(g.n, g.m, rtop, rbot, w)
    re = -math.cos(math.pi * psi_m) * g1.value.real + g2.value.real
    im_plus = math.sin(math.pi * psi_m) * g1.value.real
    return BankValues(re, im_plus, g1.est_error + g2.est_error)
