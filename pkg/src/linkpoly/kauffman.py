"""Framed Kauffman polynomial F(a, q) by switching/smoothing recursion.

This is the Dubrovnik recursion in ``a' = a^2 q^-1`` and ``z = q - q^-1``.
For a crossing ``c`` whose slots 0, 2 pass over, with the turnback smoothing
joining slots (0,3),(1,2) and the parallel smoothing joining (0,1),(2,3):

    F(c) - F(switch c) = z (F(turnback) - F(parallel))
    F(curl of writhe -1) = a^-2 q F,   F(curl of writhe +1) = a^2 q^-1 F
    F(circle) = (a^2 q^-1 - a^-2 q) / (q - q^-1) + 1

With an upward orientation on both strands ``c`` is a negative crossing.
"""

from __future__ import annotations

from typing import MutableMapping

from . import _pd
from .diagram import LinkDiagram
from .laurent import RationalFunction, Z, monomial, parse_laurent

__all__ = ["LOOP_VALUE", "CURL_FACTOR", "evaluate_kauffman", "specialize_kauffman"]

LOOP_VALUE = RationalFunction(parse_laurent("a^2*q^-1 - a^-2*q"), parse_laurent("q - q^-1")) + 1
# factor for a curl of writhe -1
CURL_FACTOR = monomial(-2, 1)


def _curl_power(w: int) -> RationalFunction:
    return monomial(2 * w, -w)


def _evaluate(crossings: tuple, memo: MutableMapping) -> RationalFunction:
    if not crossings:
        return RationalFunction(1)
    key = _pd.gauss_code(crossings, 0, oriented=False)
    hit = memo.get(key)
    if hit is not None:
        return hit
    x, w, k = _pd.unoriented_descent(crossings)
    if x is None:
        value = _curl_power(w) * LOOP_VALUE ** k
    else:
        c = crossings[x]
        rest = crossings[:x] + crossings[x + 1:]
        switched = crossings[:x] + ((c[:4]) + (1 - c[4],),) + crossings[x + 1:]
        pairs_a, pairs_b = _pd.unoriented_smoothings(c)
        da, la = _pd.merge(rest, pairs_a, 0)
        db, lb = _pd.merge(rest, pairs_b, 0)
        value = _evaluate(switched, memo) + Z * (
            _evaluate(da, memo) * LOOP_VALUE ** la - _evaluate(db, memo) * LOOP_VALUE ** lb)
    memo[key] = value
    return value


def evaluate_kauffman(d: LinkDiagram, memo: MutableMapping | None = None) -> RationalFunction:
    """F(d) for a closed unoriented diagram."""
    if memo is None:
        memo = {}
    return _evaluate(d.unoriented_tuples(), memo) * LOOP_VALUE ** d.free_loops


def specialize_kauffman(d: LinkDiagram, n: int, memo: MutableMapping | None = None) -> RationalFunction:
    """F(d) at ``a = q^n`` (the so_2n polynomial)."""
    return evaluate_kauffman(d, memo).substitute_a(n)
