"""Combinatorial link diagrams.

A crossing is four edge labels read counterclockwise.  In PD input
``X[a,b,c,d]`` the first slot is the incoming under-strand, so slots 0 and 2
form the under strand and slots 1 and 3 pass over.  Mirroring flips which
diagonal is over and keeps everything else.

The planar embedding is carried by the counterclockwise slot order.  Corner
``(x, i)`` is the angular sector of crossing ``x`` between slots ``i`` and
``i + 1``; faces are classes of corners.  Which face is unbounded matters only
for rotation numbers, and is recorded per connected piece in ``outer``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from . import _pd

__all__ = [
    "Crossing",
    "LinkDiagram",
    "OrientedLinkDiagram",
    "DiagramError",
    "PDParseError",
    "ClosednessError",
    "parse_pd",
    "format_pd",
    "parse_braid",
    "from_braid_word",
    "enumerate_orientations",
    "default_orientation",
    "rotation_number",
    "writhe",
    "mirror",
    "canonical_code",
    "disjoint_union",
]

End = tuple[int, int]
Corner = tuple[int, int]


class DiagramError(ValueError):
    pass


class PDParseError(DiagramError):
    pass


class ClosednessError(DiagramError):
    pass


@dataclass(frozen=True)
class Crossing:
    """Four edge labels counterclockwise; ``over`` names the diagonal on top.

    ``over == 1``: slots 1 and 3 pass over (the PD convention).
    ``over == 0``: slots 0 and 2 pass over.
    """

    slots: tuple[int, int, int, int]
    over: int = 1

    def __post_init__(self):
        if len(self.slots) != 4:
            raise DiagramError(f"a crossing needs four slots, got {self.slots}")
        if self.over not in (0, 1):
            raise DiagramError("over must name diagonal 0 (slots 0,2) or 1 (slots 1,3)")

    def switched(self) -> Crossing:
        return Crossing(self.slots, 1 - self.over)

    def is_over_slot(self, slot: int) -> bool:
        return slot % 2 == self.over


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[Crossing, ...] = ()
    free_loops: int = 0
    outer: tuple[Corner, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        if self.free_loops < 0:
            raise DiagramError("negative free loop count")
        counts: dict[int, int] = {}
        for c in self.crossings:
            for lab in c.slots:
                counts[lab] = counts.get(lab, 0) + 1
        bad = sorted(lab for lab, n in counts.items() if n != 2)
        if bad:
            raise ClosednessError(f"edge labels not used exactly twice: {bad}")
        if self.outer is not None:
            object.__setattr__(self, "outer", tuple(tuple(c) for c in self.outer))
            if len(self.outer) != len(self.pieces):
                raise DiagramError("outer needs one corner per connected piece")
            for piece in self.pieces:
                hits = [c for c in self.outer if c[0] in piece]
                if len(hits) != 1 or not 0 <= hits[0][1] < 4:
                    raise DiagramError("outer needs exactly one corner per connected piece")

    # structure ------------------------------------------------------------

    @cached_property
    def edges(self) -> frozenset[int]:
        return frozenset(lab for c in self.crossings for lab in c.slots)

    @cached_property
    def ends(self) -> dict[int, tuple[End, End]]:
        acc: dict[int, list[End]] = {}
        for x, c in enumerate(self.crossings):
            for s, lab in enumerate(c.slots):
                acc.setdefault(lab, []).append((x, s))
        return {lab: (e[0], e[1]) for lab, e in acc.items()}

    def other_end(self, x: int, s: int) -> End:
        e0, e1 = self.ends[self.crossings[x].slots[s]]
        return e1 if e0 == (x, s) else e0

    @cached_property
    def strands(self) -> tuple[tuple[End, ...], ...]:
        """Crossing-carrying components as cyclic lists of entry ends.

        Each component is walked from its smallest label, entering the smaller
        of that edge's two ends.
        """
        seen: set[End] = set()
        comps = []
        for lab in sorted(self.ends):
            start = min(self.ends[lab])
            if start in seen:
                continue
            walk = []
            x, s = start
            while True:
                walk.append((x, s))
                seen.add((x, s))
                seen.add((x, (s + 2) % 4))
                x, s = self.other_end(x, (s + 2) % 4)
                if (x, s) == start:
                    break
            comps.append(tuple(walk))
        return tuple(comps)

    @property
    def component_count(self) -> int:
        return len(self.strands) + self.free_loops

    @cached_property
    def pieces(self) -> tuple[frozenset[int], ...]:
        """Connected pieces of the crossing graph, as sets of crossing indices."""
        n = len(self.crossings)
        seen = [False] * n
        out = []
        for root in range(n):
            if seen[root]:
                continue
            seen[root] = True
            stack, piece = [root], set()
            while stack:
                x = stack.pop()
                piece.add(x)
                for s in range(4):
                    y, _ = self.other_end(x, s)
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            out.append(frozenset(piece))
        return tuple(out)

    def corner_link(self, x: int, i: int) -> Corner:
        """The corner reached by following the face boundary along slot ``i + 1``."""
        return self.other_end(x, (i + 1) % 4)

    @cached_property
    def faces(self) -> tuple[tuple[Corner, ...], ...]:
        seen: set[Corner] = set()
        out = []
        for x in range(len(self.crossings)):
            for i in range(4):
                if (x, i) in seen:
                    continue
                face = []
                cur = (x, i)
                while cur not in seen:
                    seen.add(cur)
                    face.append(cur)
                    cur = self.corner_link(*cur)
                out.append(tuple(face))
        return tuple(out)

    def euler_characteristic(self) -> int:
        """``V - E + F`` summed over pieces; equals ``2 * len(pieces)`` when planar."""
        return len(self.crossings) - len(self.edges) + len(self.faces)

    @cached_property
    def outer_corners(self) -> dict[int, Corner]:
        """Per piece (keyed by smallest crossing index) a corner of the unbounded face."""
        result = {}
        if self.outer is not None:
            for piece in self.pieces:
                corner = next(c for c in self.outer if c[0] in piece)
                result[min(piece)] = corner
            return result
        for piece in self.pieces:
            faces = [f for f in self.faces if f[0][0] in piece]
            best = max(faces, key=lambda f: (len(f), [-a for a in min(f)]))
            result[min(piece)] = min(best)
        return result

    def with_outer(self, outer: Iterable[Corner] | None) -> LinkDiagram:
        return LinkDiagram(self.crossings, self.free_loops, None if outer is None else tuple(outer))

    def is_empty(self) -> bool:
        return not self.crossings and not self.free_loops

    def unoriented_tuples(self) -> tuple[tuple[int, int, int, int, int], ...]:
        return tuple(c.slots + (c.over,) for c in self.crossings)

    def __str__(self) -> str:
        return format_pd(self)


@dataclass(frozen=True)
class OrientedLinkDiagram:
    """A link diagram with a direction on every edge and free loop.

    ``inward[x][s]`` is True when the edge at slot ``s`` of crossing ``x``
    points into the crossing.  ``loop_orientation`` holds +1 (counterclockwise)
    or -1 (clockwise) per free loop.
    """

    underlying: LinkDiagram
    inward: tuple[tuple[bool, bool, bool, bool], ...]
    loop_orientation: tuple[int, ...] = ()

    def __post_init__(self):
        d = self.underlying
        object.__setattr__(self, "inward", tuple(tuple(bool(f) for f in row) for row in self.inward))
        object.__setattr__(self, "loop_orientation", tuple(self.loop_orientation))
        if len(self.inward) != len(d.crossings):
            raise DiagramError("one orientation row per crossing required")
        if len(self.loop_orientation) != d.free_loops:
            raise DiagramError("one orientation per free loop required")
        if any(o not in (1, -1) for o in self.loop_orientation):
            raise DiagramError("loop orientations are +1 or -1")
        for x, row in enumerate(self.inward):
            if row[0] == row[2] or row[1] == row[3]:
                raise DiagramError(f"crossing {x} is not coherently oriented")
        for lab, (e0, e1) in d.ends.items():
            if self.inward[e0[0]][e0[1]] == self.inward[e1[0]][e1[1]]:
                raise DiagramError(f"edge {lab} is not coherently oriented")

    @property
    def crossings(self) -> tuple[Crossing, ...]:
        return self.underlying.crossings

    @property
    def free_loops(self) -> int:
        return self.underlying.free_loops

    @property
    def edge_orientation(self) -> dict[int, tuple[End, End]]:
        """Edge label -> ``(tail end, head end)``."""
        out = {}
        for lab, (e0, e1) in self.underlying.ends.items():
            out[lab] = (e1, e0) if self.inward[e0[0]][e0[1]] else (e0, e1)
        return out

    def crossing_sign(self, x: int) -> int:
        c = self.underlying.crossings[x]
        row = self.inward[x]
        u = next(s for s in range(4) if not c.is_over_slot(s) and row[s])
        v = next(s for s in range(4) if c.is_over_slot(s) and row[s])
        return _pd.crossing_sign(u, v)

    def oriented_tuples(self) -> tuple[tuple[int, int, int, int, int], ...]:
        """Crossings as ``(i, j, k, l, sign)`` with ``i`` the incoming under-edge."""
        out = []
        for x, c in enumerate(self.underlying.crossings):
            row = self.inward[x]
            u = next(s for s in range(4) if not c.is_over_slot(s) and row[s])
            sl = c.slots
            out.append((sl[u], sl[(u + 1) % 4], sl[(u + 2) % 4], sl[(u + 3) % 4], self.crossing_sign(x)))
        return tuple(out)

    def reversed(self) -> OrientedLinkDiagram:
        return OrientedLinkDiagram(
            self.underlying,
            tuple(tuple(not f for f in row) for row in self.inward),
            tuple(-o for o in self.loop_orientation),
        )

    def seifert_chords(self) -> list[list[tuple[int, int]]]:
        """Directed chords ``(in_slot, out_slot)`` of the oriented smoothing."""
        chords = []
        for row in self.inward:
            pairs = []
            for s in range(4):
                if row[s]:
                    t = (s + 1) % 4 if not row[(s + 1) % 4] else (s - 1) % 4
                    pairs.append((s, t))
            chords.append(pairs)
        return chords


# ---------------------------------------------------------------------------
# curves drawn on a diagram's planar graph


def trace_curves(d: LinkDiagram, chords: Sequence[Sequence[tuple[int, int]]]) -> list[list[tuple[int, int, int]]]:
    """Follow directed chords ``(in, out)`` at each vertex into closed curves.

    Returns curves as lists of ``(vertex, in_slot, out_slot)``.
    """
    by_in: dict[End, int] = {}
    for x, pairs in enumerate(chords):
        for s, t in pairs:
            by_in[(x, s)] = t
    used: set[End] = set()
    curves = []
    for start in sorted(by_in):
        if start in used:
            continue
        curve = []
        x, s = start
        while (x, s) not in used:
            used.add((x, s))
            t = by_in[(x, s)]
            curve.append((x, s, t))
            x, s = d.other_end(x, t)
        curves.append(curve)
    return curves


def _separated(c1: int, c2: int, chord: tuple[int, int]) -> bool:
    u, v = chord
    span = (v - u) % 4
    return ((c1 - u) % 4 < span) != ((c2 - u) % 4 < span)


def _region_finder(d: LinkDiagram, piece: frozenset[int], barriers: dict[int, list[tuple[int, int]]]):
    """Union-find over corners of ``piece`` with chords in ``barriers`` as walls."""
    parent: dict[Corner, Corner] = {}

    def find(c: Corner) -> Corner:
        root = c
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(c, c) != root:
            parent[c], c = root, parent[c]
        return root

    def union(p: Corner, q: Corner) -> None:
        rp, rq = find(p), find(q)
        if rp != rq:
            parent[rp] = rq

    for x in piece:
        walls = barriers.get(x, ())
        for i in range(4):
            union((x, i), d.corner_link(x, i))
            for j in range(i + 1, 4):
                if not any(_separated(i, j, w) for w in walls):
                    union((x, i), (x, j))
    return find


def curve_turning(d: LinkDiagram, curve: Sequence[tuple[int, int, int]], outer: Corner) -> int:
    """+1 if the simple closed ``curve`` runs counterclockwise, else -1.

    The curve is counterclockwise exactly when the region on its left does not
    contain the unbounded face.
    """
    piece = next(p for p in d.pieces if curve[0][0] in p)
    walls: dict[int, list[tuple[int, int]]] = {}
    for x, s, t in curve:
        walls.setdefault(x, []).append((s, t))
    find = _region_finder(d, piece, walls)
    x, _, t = curve[0]
    return -1 if find((x, t)) == find(outer) else 1


def _outer_for(d: LinkDiagram, x: int) -> Corner:
    piece = next(p for p in d.pieces if x in p)
    return d.outer_corners[min(piece)]


def curves_rotation(d: LinkDiagram, chords: Sequence[Sequence[tuple[int, int]]]) -> int:
    """Sum of turnings of the simple closed curves traced by ``chords``."""
    total = 0
    for curve in trace_curves(d, chords):
        total += curve_turning(d, curve, _outer_for(d, curve[0][0]))
    return total


# ---------------------------------------------------------------------------
# operations


def rotation_number(d: OrientedLinkDiagram) -> int:
    """Whitney rotation number: signed count of Seifert circles (+1 ccw, -1 cw)."""
    return curves_rotation(d.underlying, d.seifert_chords()) + sum(d.loop_orientation)


def writhe(d: OrientedLinkDiagram) -> int:
    return sum(d.crossing_sign(x) for x in range(len(d.crossings)))


def mirror(d: LinkDiagram | OrientedLinkDiagram):
    """Swap over and under at every crossing."""
    if isinstance(d, OrientedLinkDiagram):
        return OrientedLinkDiagram(mirror(d.underlying), d.inward, d.loop_orientation)
    return LinkDiagram(tuple(c.switched() for c in d.crossings), d.free_loops, d.outer)


def disjoint_union(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    """Place ``d2`` beside ``d1``, relabeling its edges apart."""
    shift = max(d1.edges, default=0)
    n = len(d1.crossings)
    crossings = d1.crossings + tuple(
        Crossing(tuple(lab + shift for lab in c.slots), c.over) for c in d2.crossings)
    outer = list(d1.outer_corners.values()) + [(x + n, i) for x, i in d2.outer_corners.values()]
    return LinkDiagram(crossings, d1.free_loops + d2.free_loops, tuple(outer) if crossings else None)


def _component_walks(d: LinkDiagram) -> list[list[End]]:
    return [list(w) for w in d.strands]


def _orient_from_walks(d: LinkDiagram, walks: Sequence[Sequence[End]], flips: Sequence[bool],
                       loop_orientation: Sequence[int]) -> OrientedLinkDiagram:
    inward = [[False] * 4 for _ in d.crossings]
    for walk, flip in zip(walks, flips):
        for x, s in walk:
            if flip:
                inward[x][(s + 2) % 4] = True
            else:
                inward[x][s] = True
    return OrientedLinkDiagram(d, tuple(tuple(r) for r in inward), tuple(loop_orientation))


def _pd_walk_direction(d: LinkDiagram, walk: Sequence[End]) -> bool:
    """Whether ``walk`` runs against the orientation the PD labels suggest."""
    for x, s in walk:
        if s in (0, 2):
            return s == 2
    # strand only uses slots 1 and 3: successive labels run l -> j
    x, s = walk[0]
    sl = d.crossings[x].slots
    j, l = sl[1], sl[3]
    l_to_j = j - l == 1 or l - j > 1
    entering = 3 if l_to_j else 1
    return s != entering


def default_orientation(d: LinkDiagram) -> OrientedLinkDiagram:
    """The orientation the PD code implies: slot 0 incoming wherever a
    component passes slots 0-2, otherwise successive labels increase.
    Free loops are counterclockwise."""
    walks = _component_walks(d)
    flips = [_pd_walk_direction(d, w) for w in walks]
    return _orient_from_walks(d, walks, flips, [1] * d.free_loops)


def enumerate_orientations(d: LinkDiagram) -> list[OrientedLinkDiagram]:
    """All ``2^components`` coherent orientations, starting from the PD one."""
    walks = _component_walks(d)
    base = [_pd_walk_direction(d, w) for w in walks]
    out = []
    for bits in itertools.product((False, True), repeat=len(walks) + d.free_loops):
        flips = [b != f for b, f in zip(base, bits[:len(walks)])]
        loops = [-1 if b else 1 for b in bits[len(walks):]]
        out.append(_orient_from_walks(d, walks, flips, loops))
    return out


def canonical_code(d: LinkDiagram | OrientedLinkDiagram) -> str:
    """Relabeling-invariant Gauss-style code; oriented diagrams keep orientation."""
    if isinstance(d, OrientedLinkDiagram):
        code = _pd.gauss_code(d.oriented_tuples(), d.free_loops, oriented=True)
    else:
        code = _pd.gauss_code(d.unoriented_tuples(), d.free_loops, oriented=False)
    return _pd.code_to_string(code)


# ---------------------------------------------------------------------------
# text formats

_TOKEN = re.compile(r"^X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]$")
_LOOP = re.compile(r"^Loop\[\s*\d*\s*\]$")


def parse_pd(text: str) -> LinkDiagram:
    """Parse whitespace-separated ``X[a,b,c,d]`` tokens; ``Loop[k]`` adds a free loop."""
    crossings = []
    loops = 0
    for token in text.split():
        m = _TOKEN.match(token)
        if m:
            labels = tuple(int(g) for g in m.groups())
            if any(lab <= 0 for lab in labels):
                raise PDParseError(f"edge labels must be positive: {token}")
            crossings.append(Crossing(labels, 1))
        elif _LOOP.match(token):
            loops += 1
        else:
            raise PDParseError(f"malformed PD token {token!r}")
    return LinkDiagram(tuple(crossings), loops)


def format_pd(d: LinkDiagram) -> str:
    """PD text; crossings with slots 0-2 on top are rotated into PD form."""
    tokens = []
    for c in d.crossings:
        s = c.slots if c.over == 1 else c.slots[1:] + c.slots[:1]
        tokens.append("X[{},{},{},{}]".format(*s))
    tokens += ["Loop[1]"] * d.free_loops
    return " ".join(tokens)


_BRAID = re.compile(r"^\s*BR\s+(\d+)\s*:\s*(.*)$")


def parse_braid(text: str) -> LinkDiagram:
    """Parse ``BR strands : i1 i2 -i1 ...``."""
    m = _BRAID.match(text)
    if not m:
        raise PDParseError(f"malformed braid {text!r}")
    try:
        word = [int(t) for t in m.group(2).split()]
    except ValueError as exc:
        raise PDParseError(f"malformed braid word {text!r}") from exc
    return from_braid_word(word, int(m.group(1)))


def from_braid_word(word: Sequence[int], strands: int) -> LinkDiagram:
    """Right closure of a braid drawn upward; ``i`` is a positive crossing of
    strands ``i, i+1`` and ``-i`` its inverse."""
    if strands < 1:
        raise DiagramError("a braid needs at least one strand")
    for g in word:
        if g == 0 or not 1 <= abs(g) < strands:
            raise DiagramError(f"generator {g} out of range for {strands} strands")
    bottom = list(range(1, strands + 1))
    cur = list(bottom)
    nxt = strands + 1
    raw = []
    for g in word:
        i = abs(g) - 1
        e_l, e_r = cur[i], cur[i + 1]
        f_l, f_r = nxt, nxt + 1
        nxt += 2
        # slots counterclockwise from the lower right: lr, ur, ul, ll
        raw.append(([e_r, f_r, f_l, e_l], 1 if g > 0 else 0))
        cur[i], cur[i + 1] = f_l, f_r
    rename = {cur[p]: bottom[p] for p in range(strands) if cur[p] != bottom[p]}
    loops = sum(1 for p in range(strands) if cur[p] == bottom[p])
    crossings = tuple(Crossing(tuple(rename.get(lab, lab) for lab in sl), over) for sl, over in raw)
    d = LinkDiagram(crossings, loops)
    if not crossings:
        return d
    outer = []
    for piece in d.pieces:
        x = min(piece, key=lambda k: (abs(word[k]), k))
        outer.append((x, 2))  # the sector facing left, away from the closure
    return LinkDiagram(crossings, loops, tuple(outer))
