"""Levin-type nonlinear sequence acceleration.

Implements the Levin u-transformation via the standard numerator/denominator
recurrences, consuming terms one at a time.  Used for p = q+1 hypergeometric
series with argument modulus in [0.9, 1) and for the slowly convergent or
alternating tails in the digamma-series summation.
"""

from __future__ import annotations

import math

from .errors import NonConvergenceError

__all__ = ["LevinU", "levin_sum"]

_TINY = 1e-280


class LevinU:
    """Incremental Levin u-transform of a series from its terms."""

    def __init__(self, beta: float = 1.0):
        self.beta = beta
        self.n = 0
        self.numer: list[complex] = []
        self.denom: list[complex] = []
        self.partial = 0.0 + 0.0j
        self.value = 0.0 + 0.0j
        self.eps = math.inf

    def add_term(self, a: complex) -> complex:
        """Feed the next term; returns the current accelerated estimate."""
        self.partial += a
        beta, n = self.beta, self.n
        omega = (beta + n) * a
        if abs(omega) < _TINY:
            omega = _TINY
        term = 1.0 / (beta + n)
        self.numer.append(self.partial * term / omega)
        self.denom.append(term / omega)
        if n > 0:
            ratio = (beta + n - 1) * term
            for j in range(1, n + 1):
                fact = (n - j + beta) * term
                self.numer[n - j] = self.numer[n - j + 1] - fact * self.numer[n - j]
                self.denom[n - j] = self.denom[n - j + 1] - fact * self.denom[n - j]
                term = term * ratio
        self.n += 1
        if abs(self.denom[0]) > _TINY:
            val = self.numer[0] / self.denom[0]
            self.eps = abs(val - self.value)
            self.value = val
        return self.value


def levin_sum(
    terms,
    tol: float = 1e-14,
    max_terms: int = 1000,
    beta: float = 1.0,
    fail_rel: float = 1e-7,
):
    """Sum an iterable of terms with the Levin u-transform.

    Returns ``(value, err_estimate, n_used)`` for the best-stabilised
    estimate.  Stops early once consecutive estimates agree to ``tol``
    relative, or once the estimate change hits its rounding floor and stops
    improving.  Raises :class:`NonConvergenceError` if the best relative
    agreement achieved is worse than ``fail_rel``.
    """
    acc = LevinU(beta=beta)
    hits = 0
    zeros = 0
    stale = 0
    n = 0
    best_val = 0.0 + 0.0j
    best_eps = math.inf
    for a in terms:
        n += 1
        val = acc.add_term(a)
        if a == 0:
            zeros += 1
            if zeros >= 3:
                return acc.partial, 0.0, n
            continue
        zeros = 0
        if n >= 4 and acc.eps < best_eps:
            best_eps = acc.eps
            best_val = val
            stale = 0
        elif n >= 4 and acc.eps > 4.0 * best_eps:
            stale += 1
        scale = max(abs(val), 1e-300)
        if n >= 6 and acc.eps <= tol * scale:
            hits += 1
            if hits >= 2:
                return val, max(acc.eps, scale * 1e-16), n
        else:
            hits = 0
        if stale >= 25 and n >= 45:
            break  # rounding floor reached
        if n >= max_terms:
            break
    scale = max(abs(best_val), 1e-300)
    if best_eps <= fail_rel * scale:
        return best_val, best_eps, n
    raise NonConvergenceError(
        f"Levin acceleration did not stabilise after {n} terms",
        partial=best_val,
        bound=best_eps,
    )
