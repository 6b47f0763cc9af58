"""Local surgery on diagrams, written independently of the engines."""

from __future__ import annotations

from linkpoly.diagram import Crossing, LinkDiagram, OrientedLinkDiagram
from linkpoly.laurent import RationalFunction

# joins of slot pairs: parallel to slots 0-1, and the other one
JOIN_01 = ((0, 1), (2, 3))
JOIN_03 = ((0, 3), (1, 2))


def _merge(d: LinkDiagram, x: int, pairs) -> tuple[list[Crossing], int, dict[int, int]]:
    parent: dict[int, int] = {}

    def find(a: int) -> int:
        while parent.get(a, a) != a:
            a = parent[a]
        return a

    slots = d.crossings[x].slots
    for s, t in pairs:
        ra, rb = find(slots[s]), find(slots[t])
        if ra != rb:
            parent[ra] = rb
    rest = [Crossing(tuple(find(lab) for lab in c.slots), c.over)
            for y, c in enumerate(d.crossings) if y != x]
    used = {lab for c in rest for lab in c.slots}
    closed = {find(lab) for lab in slots} - used
    return rest, len(closed), {lab: find(lab) for lab in slots}


def smooth(d: LinkDiagram, x: int, pairs) -> LinkDiagram:
    """Replace crossing ``x`` by arcs joining the given slot pairs."""
    rest, loops, _ = _merge(d, x, pairs)
    return LinkDiagram(tuple(rest), d.free_loops + loops)


def switch(d: LinkDiagram, x: int) -> LinkDiagram:
    cs = list(d.crossings)
    cs[x] = cs[x].switched()
    return LinkDiagram(tuple(cs), d.free_loops)


def oriented_switch(o: OrientedLinkDiagram, x: int) -> OrientedLinkDiagram:
    return OrientedLinkDiagram(switch(o.underlying, x), o.inward, o.loop_orientation)


def oriented_smooth(o: OrientedLinkDiagram, x: int) -> OrientedLinkDiagram:
    """The orientation-respecting smoothing at crossing ``x``."""
    row = o.inward[x]
    ins = [s for s in range(4) if row[s]]
    pairs = [(s, (s + 1) % 4 if not row[(s + 1) % 4] else (s - 1) % 4) for s in ins]
    d = o.underlying
    rest, loops, _ = _merge(d, x, pairs)
    inward = tuple(r for y, r in enumerate(o.inward) if y != x)
    return OrientedLinkDiagram(LinkDiagram(tuple(rest), d.free_loops + loops), inward,
                               o.loop_orientation + (1,) * loops)


def turnback_and_parallel(d: LinkDiagram, x: int) -> tuple[LinkDiagram, LinkDiagram]:
    """The two unoriented smoothings of ``x`` named relative to its over strand:
    with slots 0 and 2 on top the turnback joins (0,3),(1,2)."""
    if d.crossings[x].over == 0:
        return smooth(d, x, JOIN_03), smooth(d, x, JOIN_01)
    return smooth(d, x, JOIN_01), smooth(d, x, JOIN_03)


def rf(text: str) -> RationalFunction:
    from linkpoly.laurent import parse_rational

    return parse_rational(text)
