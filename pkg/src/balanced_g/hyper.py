"""Generalized hypergeometric series pFq and its continuation beyond |z| = 1.

``pfq`` sums the defining series where it converges (p <= q anywhere,
p = q+1 inside the unit disk, terminating series anywhere), switching to
Levin acceleration for p = q+1 with 0.9 <= |z| < 1.  ``pfq_continue``
evaluates the principal-branch analytic continuation of pF(p-1) for |z| > 1
by the connection formula at infinity, as a finite sum of pF(p-1) values at
1/z with exact phase factors z^(-a_j) e^(+-i pi a_j); the branch flag picks
the half-plane (or bank of the cut [1, oo)).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .acceleration import levin_sum
from .errors import (
    CoincidentParameterError,
    DegenerateParameterError,
    GammaPoleError,
    NonConvergenceError,
)
from .special import ParamVec, gamma_prod_ratio, is_nonpositive_integer, param_vec
from .types import ComplexEval

__all__ = ["HyperSpec", "pfq", "pfq_continue"]

MAX_TERMS = 100_000
LEVIN_THRESHOLD = 0.9
DISTINCT_TOL = 1e-8


@dataclass(frozen=True)
class HyperSpec:
    """pFq parameter block: numerator row, denominator row, argument."""

    numerator: ParamVec
    denominator: ParamVec
    argument: complex

    def __init__(self, numerator, denominator, argument):
        object.__setattr__(self, "numerator", param_vec(numerator))
        object.__setattr__(self, "denominator", param_vec(denominator))
        object.__setattr__(self, "argument", complex(argument))


def _cancel_equal(num: list, den: list):
    """Drop numerator/denominator parameter pairs that are exactly equal."""
    den = list(den)
    out = []
    for a in num:
        try:
            den.remove(a)
        except ValueError:
            out.append(a)
    return out, den


def _termination_index(num) -> int | None:
    """Smallest k such that some numerator entry equals -k (else None)."""
    ks = []
    for a in num:
        n = is_nonpositive_integer(a, tol=1e-13)
        if n is not None:
            ks.append(-n)
    return min(ks) if ks else None


def _term_ratios(num, den, z, kmax):
    """Generator of series terms via the ratio recurrence."""
    t = 1.0 + 0.0j
    k = 0
    while k <= kmax:
        yield t
        r = z / (k + 1)
        for a in num:
            r *= a + k
        for b in den:
            r /= b + k
        t *= r
        k += 1


def pfq(spec: HyperSpec, tol: float = 1e-15) -> ComplexEval:
    """Sum pFq(numerator; denominator; z) where the series converges.

    Truncates when three consecutive terms fall below ``tol`` times the
    partial sum.  Raises :class:`NonConvergenceError` outside the region of
    convergence and :class:`GammaPoleError` on an unshielded denominator
    pole.
    """
    num, den = _cancel_equal(list(spec.numerator), list(spec.denominator))
    z = spec.argument
    kterm = _termination_index(num)

    for b in den:
        nb = is_nonpositive_integer(b, tol=1e-13)
        if nb is not None and (kterm is None or kterm > -nb):
            raise GammaPoleError(f"denominator parameter {b!r} is a nonpositive integer")

    if z == 0:
        return ComplexEval(1.0 + 0.0j, 0.0, "pfq-series")

    p, q = len(num), len(den)
    if kterm is not None:
        s = 0.0 + 0.0j
        for t in _term_ratios(num, den, z, kterm):
            s += t
        return ComplexEval(s, abs(s) * 1e-15 * math.sqrt(kterm + 1), "pfq-terminating")

    if p > q + 1:
        raise NonConvergenceError(f"{p}F{q} diverges for z != 0")
    if p == q + 1 and abs(z) >= 1.0:
        raise NonConvergenceError(f"{p}F{q} series diverges at |z| = {abs(z):.3f} >= 1")

    s = 0.0 + 0.0j
    small = 0
    last = 1.0
    for k, t in enumerate(_term_ratios(num, den, z, MAX_TERMS)):
        s += t
        last = abs(t)
        if last <= tol * max(abs(s), 1e-300):
            small += 1
            if small >= 3:
                return ComplexEval(
                    s, max(last, abs(s) * 1e-15 * math.sqrt(k + 1.0)), "pfq-series"
                )
        else:
            small = 0

    if p == q + 1 and abs(z) >= LEVIN_THRESHOLD:
        # Direct summation exhausted its budget this close to |z| = 1; fall
        # back to Levin acceleration.  The transform under-reports its error
        # in double precision this close to the singularity, hence the wide
        # safety factor on the estimate.
        value, err, n = levin_sum(
            _term_ratios(num, den, z, 600),
            tol=max(tol, 1e-15),
            max_terms=600,
            fail_rel=3e-3,
        )
        return ComplexEval(value, max(err * 100.0, abs(value) * 1e-14), "pfq-levin")
    raise NonConvergenceError(
        f"pfq did not converge within {MAX_TERMS} terms", partial=s, bound=last
    )


def pfq_continue(spec: HyperSpec, sign: str) -> ComplexEval:
    """Analytic continuation of pF(p-1) to |z| > 1, principal branch.

    ``sign`` is ``"upper"`` (Im z > 0 or the upper bank of [1, oo)) or
    ``"lower"``.  Requires the numerator entries pairwise distinct modulo
    integers (tolerance 1e-8); coincident parameters raise, and the caller
    owns any perturbation policy.
    """
    if sign not in ("upper", "lower"):
        raise ValueError(f"sign must be 'upper' or 'lower', got {sign!r}")
    alpha = list(spec.numerator)
    beta = list(spec.denominator)
    z = spec.argument
    p = len(alpha)
    if p != len(beta) + 1:
        raise DegenerateParameterError("pfq_continue requires p = q + 1")
    if abs(z) <= 1.0:
        raise NonConvergenceError("pfq_continue requires |z| > 1")
    for i in range(p):
        for j in range(i + 1, p):
            d = alpha[i] - alpha[j]
            if abs(d.real - round(d.real)) < DISTINCT_TOL and abs(d.imag) < DISTINCT_TOL:
                raise CoincidentParameterError(
                    f"numerator entries {alpha[i]!r}, {alpha[j]!r} coincide modulo integers"
                )
    for a in alpha:
        if is_nonpositive_integer(a, tol=1e-12) is not None:
            raise DegenerateParameterError(
                f"terminating numerator entry {a!r}: use pfq directly"
            )

    s = 1.0 if sign == "upper" else -1.0
    w = 1.0 / z
    total = 0.0 + 0.0j
    err = 0.0
    for j, aj in enumerate(alpha):
        others = [alpha[i] for i in range(p) if i != j]
        coef = gamma_prod_ratio(
            beta + [aj] + [ai - aj for ai in others],
            alpha + [bi - aj for bi in beta],
            0.0,
        )
        if coef == 0:
            continue
        inner = HyperSpec(
            [aj] + [1.0 + aj - bi for bi in beta],
            [1.0 + aj - ai for ai in others],
            w,
        )
        fj = pfq(inner)
        phase = cmath.exp(-aj * cmath.log(z) + s * 1j * cmath.pi * aj)
        total += coef * phase * fj.value
        err += abs(coef * phase) * (fj.est_error + abs(fj.value) * 1e-14)
    return ComplexEval(total, err, "pfq-connection")
