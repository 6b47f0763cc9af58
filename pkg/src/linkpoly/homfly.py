"""Framed HOMFLY-PT polynomial by descending-diagram skein recursion.

Normalization (regular isotopy):

    P(X+) - P(X-) = (q - q^-1) P(smoothing)
    P(positive curl) = a P,  P(negative curl) = a^-1 P
    P(circle) = (a - a^-1) / (q - q^-1)

A descending diagram is a framed unlink and evaluates to
``a^writhe * circle^components``.
"""

from __future__ import annotations

from typing import MutableMapping

from . import _pd
from .diagram import OrientedLinkDiagram, writhe
from .laurent import RationalFunction, Z, monomial, parse_laurent

__all__ = ["LOOP_VALUE", "evaluate_homfly", "specialize_homfly", "HomflyMemo", "unframed_homfly"]

LOOP_VALUE = RationalFunction(parse_laurent("a - a^-1"), parse_laurent("q - q^-1"))

HomflyMemo = MutableMapping[object, RationalFunction]


def _loop_power(k: int) -> RationalFunction:
    return LOOP_VALUE ** k


def _evaluate(crossings: tuple, memo: HomflyMemo) -> RationalFunction:
    if not crossings:
        return RationalFunction(1)
    key = _pd.gauss_code(crossings, 0, oriented=True)
    hit = memo.get(key)
    if hit is not None:
        return hit
    x = _pd.first_ascending_oriented(crossings)
    if x is None:
        w = sum(c[4] for c in crossings)
        value = monomial(w, 0) * _loop_power(_pd.oriented_component_count(crossings))
    else:
        c = crossings[x]
        switched = crossings[:x] + (_pd.oriented_switch(c),) + crossings[x + 1:]
        smoothed, loops = _pd.merge(crossings[:x] + crossings[x + 1:], _pd.oriented_smoothing_pairs(c), 0)
        smooth_value = _evaluate(smoothed, memo) * _loop_power(loops) * Z
        # P(X+) = P(X-) + z P(0);  P(X-) = P(X+) - z P(0)
        value = _evaluate(switched, memo) + (smooth_value if c[4] > 0 else -smooth_value)
    memo[key] = value
    return value


def evaluate_homfly(d: OrientedLinkDiagram, memo: HomflyMemo | None = None) -> RationalFunction:
    """P(d) for a coherently oriented diagram.

    ``memo`` may be shared across calls; entries are keyed by the oriented
    canonical code and never overwritten with a different value.
    """
    if memo is None:
        memo = {}
    return _evaluate(d.oriented_tuples(), memo) * _loop_power(d.free_loops)


def specialize_homfly(d: OrientedLinkDiagram, n: int, memo: HomflyMemo | None = None) -> RationalFunction:
    """P(d) at ``a = q^n`` (the framed sl_n polynomial)."""
    return evaluate_homfly(d, memo).substitute_a(n)


def unframed_homfly(d: OrientedLinkDiagram, memo: HomflyMemo | None = None) -> RationalFunction:
    """``a^-writhe P(d)``, the ambient isotopy normalization."""
    return evaluate_homfly(d, memo) * monomial(-writhe(d), 0)
