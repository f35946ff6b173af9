"""Complex log-gamma, digamma, Pochhammer and parameter-vector products.

``lngamma`` is a Lanczos approximation (g = 607/128, 15 terms) carrying the
principal branch, with the reflection formula for Re(z) < 1/2.  Measured
relative accuracy is ~1e-14 for |z| <= 50 away from poles, comfortably inside
the 1e-13 contract.  All vector products (``gamma_prod_ratio``) are summed in
log space and exponentiated once, so parameter vectors up to length 8 with
shifts up to |shift| = 100 cannot overflow intermediate factors.
"""

from __future__ import annotations

import cmath
import math
from typing import Iterable, Sequence

import numpy as np

from .errors import GammaPoleError

__all__ = [
    "ParamVec",
    "param_vec",
    "lngamma",
    "digamma",
    "gamma_prod_ratio",
    "sin_prod",
    "poch",
    "is_nonpositive_integer",
]

ParamVec = tuple[complex, ...]

POLE_TOL = 1e-14

# Lanczos coefficients, g = 607/128 (Godfrey's set).
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = np.array(
    [
        0.99999999999999709182,
        57.156235665862923517,
        -59.597960355475491248,
        14.136097974741747174,
        -0.49191381609762019978,
        0.33994649984811888699e-4,
        0.46523628927048575665e-4,
        -0.98374475304879564677e-4,
        0.15808870322491248884e-3,
        -0.21026444172410488319e-3,
        0.21743961811521264320e-3,
        -0.16431810653676389022e-3,
        0.84418223983852743293e-4,
        -0.26190838401581408670e-4,
        0.36899182659531622704e-5,
    ]
)
_LOG_SQRT_2PI = 0.91893853320467274178

# Bernoulli numbers B_2..B_16 for the digamma asymptotic series.
_BERNOULLI = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
]


def param_vec(entries: Iterable[complex]) -> ParamVec:
    """Validate and freeze a parameter vector; empty vectors are allowed."""
    out = tuple(complex(x) for x in entries)
    for x in out:
        if not (math.isfinite(x.real) and math.isfinite(x.imag)):
            raise ValueError(f"non-finite parameter entry {x!r}")
    return out


def is_nonpositive_integer(z: complex, tol: float = POLE_TOL):
    """Return the nonpositive integer that z sits on (within tol), else None."""
    z = complex(z)
    if abs(z.imag) > tol:
        return None
    n = round(z.real)
    if n <= 0 and abs(z.real - n) <= tol:
        return int(n)
    return None


def _lanczos_lngamma(z):
    """Principal log-gamma for Re(z) >= 0.5 (array valued)."""
    zm1 = z - 1.0
    s = np.full_like(z, _LANCZOS_C[0])
    for k in range(1, 15):
        s = s + _LANCZOS_C[k] / (zm1 + k)
    t = zm1 + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (zm1 + 0.5) * np.log(t) - t + np.log(s)


def _lngamma_upper(z):
    """Principal log-gamma for Im(z) >= 0 (array valued)."""
    refl = np.real(z) < 0.5
    zr = np.where(refl, 1.0 - z, z)
    base = _lanczos_lngamma(zr)
    if not np.any(refl):
        return base
    # log sin(pi z) analytic in the closed upper half-plane:
    #   sin(pi z) = exp(-i pi z + i pi/2 - log 2) * (1 - exp(2 i pi z))
    zc = np.where(refl, z, 0.25)  # dummy safe value where not reflected
    logsin = (
        -1j * np.pi * zc
        + 1j * np.pi / 2
        - math.log(2.0)
        + np.log1p(-np.exp(2j * np.pi * zc))
    )
    return np.where(refl, math.log(math.pi) - logsin - base, base)


def lngamma(z):
    """Principal branch of log Gamma(z); accepts scalars or numpy arrays.

    Raises :class:`GammaPoleError` for scalar arguments on a pole.  Array
    arguments are not pole-checked (callers screen them first).
    """
    scalar = np.isscalar(z) or getattr(z, "ndim", 0) == 0
    if scalar:
        if is_nonpositive_integer(z) is not None:
            raise GammaPoleError(f"log-gamma pole at z={z!r}")
        zz = np.asarray(complex(z), dtype=np.complex128).reshape(1)
    else:
        zz = np.asarray(z, dtype=np.complex128)
    lower = np.imag(zz) < 0.0
    out = np.where(
        lower,
        np.conj(_lngamma_upper(np.conj(zz))),
        _lngamma_upper(zz),
    )
    if scalar:
        return complex(out[0])
    return out


def digamma(z):
    """Digamma psi(z) = Gamma'(z)/Gamma(z); scalars or numpy arrays."""
    scalar = np.isscalar(z) or getattr(z, "ndim", 0) == 0
    if scalar:
        if is_nonpositive_integer(z) is not None:
            raise GammaPoleError(f"digamma pole at z={z!r}")
        zz = np.asarray(complex(z), dtype=np.complex128).reshape(1)
    else:
        zz = np.asarray(z, dtype=np.complex128)

    # Reflect into Re(z) >= 0.5:  psi(z) = psi(1-z) - pi cot(pi z).
    refl = np.real(zz) < 0.5
    zr = np.where(refl, 1.0 - zz, zz)
    corr = np.zeros_like(zz)
    if np.any(refl):
        zc = np.where(refl, zz, 0.25)
        corr = np.where(refl, -np.pi / np.tan(np.pi * zc), 0.0)

    # Recurrence up to Re >= 10, then the asymptotic series.
    acc = np.zeros_like(zz)
    shift_max = int(max(0.0, np.max(10.0 - np.real(zr))))
    w = zr
    for _ in range(shift_max):
        need = np.real(w) < 10.0
        acc = acc - np.where(need, 1.0 / w, 0.0)
        w = np.where(need, w + 1.0, w)
    inv2 = 1.0 / (w * w)
    s = np.zeros_like(zz)
    p = inv2
    for k, b in enumerate(_BERNOULLI, start=1):
        s = s + b / (2 * k) * p
        p = p * inv2
    val = np.log(w) - 0.5 / w - s + acc + corr
    if scalar:
        return complex(val[0])
    return val


def poch(x: complex, k: int) -> complex:
    """Rising factorial (x)_k for integer k >= 0, by direct product."""
    r = 1.0 + 0.0j
    for i in range(k):
        r *= x + i
    return r


def sin_prod(v: Sequence[complex]) -> complex:
    """Product of sines of the entries; empty product is 1.

    Entries are used as-is: callers supply already-scaled arguments such
    as pi*(b - a_k).
    """
    r = 1.0 + 0.0j
    for x in v:
        r *= cmath.sin(complex(x))
    return r


def _match_congruent(num: list, den: list, tol: float):
    """Greedily pair numerator/denominator entries congruent modulo 1.

    Returns (pairs, rest_num, rest_den) where each pair (u, v, d) satisfies
    u ~= v + d with integer d.
    """
    pairs = []
    used = [False] * len(den)
    rest_num = []
    for u in num:
        hit = None
        for j, v in enumerate(den):
            if used[j]:
                continue
            d = u - v
            dr = round(d.real)
            if abs(d.real - dr) <= tol and abs(d.imag) <= tol:
                hit = (j, int(dr))
                break
        if hit is None:
            rest_num.append(u)
        else:
            used[hit[0]] = True
            pairs.append((u, den[hit[0]], hit[1]))
    rest_den = [v for j, v in enumerate(den) if not used[j]]
    return pairs, rest_num, rest_den


def gamma_prod_ratio(
    num: Sequence[complex],
    den: Sequence[complex],
    shift: complex = 0.0,
    cancel_tol: float = 1e-10,
) -> complex:
    """Gamma(num + shift) / Gamma(den + shift), products over the vectors.

    Computed from summed ``lngamma`` values with a single exponential at the
    end.  Numerator/denominator entries congruent modulo the pole lattice
    (within ``cancel_tol``) are cancelled analytically first, replacing the
    pair Gamma(v+d)/Gamma(v) by the Pochhammer product (v)_d, which is the
    reflection-formula limit and stays finite at poles.  After cancellation,
    a remaining numerator entry on a pole raises :class:`GammaPoleError`; a
    remaining denominator entry on a pole makes the result exactly 0.
    """
    nv = [complex(x) + complex(shift) for x in num]
    dv = [complex(x) + complex(shift) for x in den]
    pairs, nv, dv = _match_congruent(nv, dv, cancel_tol)

    # Classify hard zeros/poles before accumulating logs.
    zero = False
    log_acc = 0.0 + 0.0j
    pair_logs = []
    for u, v, d in pairs:
        # Gamma(u)/Gamma(v) with u = v + d: equals (v)_d (or 1/(u)_{-d}).
        base, k = (v, d) if d >= 0 else (u, -d)
        prod = poch(base, k)
        if prod == 0:
            if d >= 0:
                zero = True
                continue
            raise GammaPoleError(
                f"gamma pole from cancelled pair Gamma({u!r})/Gamma({v!r})"
            )
        pair_logs.append(cmath.log(prod) if d >= 0 else -cmath.log(prod))
    for u in nv:
        if is_nonpositive_integer(u, cancel_tol) is not None:
            raise GammaPoleError(f"uncancelled numerator gamma pole at {u!r}")
    for v in dv:
        if is_nonpositive_integer(v, cancel_tol) is not None:
            zero = True
    if zero:
        return 0.0 + 0.0j

    log_acc += sum(pair_logs)
    for u in nv:
        log_acc += lngamma(u)
    for v in dv:
        log_acc -= lngamma(v)
    return cmath.exp(log_acc)
