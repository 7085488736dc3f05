"""Bracketing root finder used by the pole search.

Deliberately self-contained (the numerical oracles use an independent library
solver, so production and oracle never share a root-finding code path).
Strategy: bisection until the bracket is tight, then a few secant steps for
polish, everything capped at ``MAX_ITER`` function evaluations.
"""

from __future__ import annotations

from typing import Callable

from .errors import DomainError, NonConvergenceError

MAX_ITER = 200


def bracket_sign_changes(f: Callable[[float], float], xs) -> list[tuple[float, float]]:
    """Scan f over the sorted grid ``xs`` and return all sign-change brackets.

    Exact zeros at grid points are returned as degenerate brackets (x, x).
    """
    brackets: list[tuple[float, float]] = []
    xs = list(xs)
    fprev = f(xs[0])
    if fprev == 0.0:
        brackets.append((xs[0], xs[0]))
    for a, b in zip(xs, xs[1:]):
        fb = f(b)
        if fb == 0.0:
            brackets.append((b, b))
        elif fprev != 0.0 and (fprev < 0.0) != (fb < 0.0):
            brackets.append((a, b))
        fprev = fb
    return brackets


def refine_root(
    f: Callable[[float], float],
    a: float,
    b: float,
    xtol: float,
    max_iter: int = MAX_ITER,
) -> float:
    """Refine a sign-change bracket [a, b] to width <= xtol, then secant-polish.

    Raises :class:`NonConvergenceError` after ``max_iter`` evaluations (for
    instance when xtol is below the floating-point spacing of the bracket).
    """
    if not (xtol > 0.0):
        raise DomainError("xtol must be positive", xtol=xtol)
    if a == b:
        return a
    if a > b:
        a, b = b, a
    fa = f(a)
    fb = f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa < 0.0) == (fb < 0.0):
        raise DomainError("bracket does not change sign", a=a, b=b)
    used = 2
    while (b - a) > xtol:
        used += 1
        if used > max_iter:
            raise NonConvergenceError(
                "root not localized within the iteration budget",
                a=a,
                b=b,
                xtol=xtol,
                iterations=max_iter,
            )
        m = 0.5 * (a + b)
        if m <= a or m >= b:  # bracket at floating-point resolution
            break
        fm = f(m)
        if fm == 0.0:
            return m
        if (fm < 0.0) == (fa < 0.0):
            a, fa = m, fm
        else:
            b, fb = m, fm
    # secant polish inside the final bracket
    x0, f0 = a, fa
    x1, f1 = b, fb
    best_x, best_f = (x0, abs(f0)) if abs(f0) < abs(f1) else (x1, abs(f1))
    for _ in range(6):
        if used >= max_iter or f1 == f0:
            break
        used += 1
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if not (a <= x2 <= b):
            break
        f2 = f(x2)
        if abs(f2) < best_f:
            best_x, best_f = x2, abs(f2)
        if f2 == 0.0:
            return x2
        x0, f0, x1, f1 = x1, f1, x2, f2
    return best_x
