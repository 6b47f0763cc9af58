"""Vertex-weighted HOMFLY-PT state expansion of the Kauffman polynomial.

Each crossing of an unoriented diagram is replaced by one of the local
pictures of a rule table; crossing-free loops get an orientation (or are
erased).  A choice is a state when the induced orientations agree along every
edge.  A state contributes

    weight * base^rot(resolved) * P(resolved)

with ``base = a^-1 q`` for the D_n table and ``a^-1`` for the B_n table.

Local pictures are written in a frame whose slots are, counterclockwise,
lower-right (0), upper-right (1), upper-left (2), lower-left (3) -- the same
order as the slots of a diagram crossing.  A crossing whose slots 1, 3 pass
over looks like the positive crossing in that frame; one whose slots 0, 2 pass
over looks like the negative crossing.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, MutableMapping, Sequence

from .diagram import (Crossing, LinkDiagram, OrientedLinkDiagram, _region_finder, curve_turning,
                      trace_curves)
from .homfly import evaluate_homfly
from .kauffman import evaluate_kauffman
from .laurent import ONE, RationalFunction, Z, ZERO, monomial, parse_rational

__all__ = [
    "LocalPicture",
    "quarter_turn",
    "RuleTable",
    "ExpansionState",
    "default_rule_table",
    "enumerate_states",
    "enumerate_states_brute_force",
    "evaluate_state",
    "expand",
    "verify_identity",
    "state_values",
    "validate_table",
    "IdentityReport",
    "TableReport",
    "table_to_json",
    "table_from_json",
]

IN, OUT, ERASED = "in", "out", "erased"
_COMPATIBLE = {(IN, OUT), (OUT, IN), (ERASED, ERASED)}
_THROUGH = ((0, 2), (1, 3))


@dataclass(frozen=True)
class LocalPicture:
    """One local resolution of a crossing.

    ``connectivity`` pairs the four legs; ``None`` keeps the crossing, i.e. legs
    0-2 and 1-3 run through.  A kept crossing with one strand erased is a
    single strand passing straight through.
    """

    name: str
    kind: str  # crossing | smoothing | turnback | erased
    variant: str
    legs: tuple[str, str, str, str]
    connectivity: tuple[tuple[int, int], tuple[int, int]] | None = None

    def __post_init__(self):
        if self.kind not in ("crossing", "smoothing", "turnback", "erased"):
            raise ValueError(f"unknown picture kind {self.kind!r}")
        if any(leg not in (IN, OUT, ERASED) for leg in self.legs):
            raise ValueError(f"bad leg orientation in {self.name}")
        for s, t in self.pairs:
            if {self.legs[s], self.legs[t]} not in ({IN, OUT}, {ERASED}):
                raise ValueError(f"{self.name}: legs {s},{t} are not one in and one out")

    @property
    def pairs(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return self.connectivity if self.connectivity is not None else _THROUGH

    @property
    def retains_crossing(self) -> bool:
        return self.connectivity is None and ERASED not in self.legs

    def chords(self) -> list[tuple[int, int]]:
        """Directed ``(in, out)`` chords of the strands that are not erased."""
        out = []
        for s, t in self.pairs:
            if self.legs[s] == IN:
                out.append((s, t))
            elif self.legs[t] == IN:
                out.append((t, s))
        return out

    def to_json(self) -> dict:
        return {"name": self.name, "kind": self.kind, "variant": self.variant, "legs": list(self.legs),
                "connectivity": None if self.connectivity is None else [list(p) for p in self.connectivity]}

    @classmethod
    def from_json(cls, obj: dict) -> LocalPicture:
        conn = obj.get("connectivity")
        return cls(obj["name"], obj["kind"], obj.get("variant", ""), tuple(obj["legs"]),
                   None if conn is None else tuple(tuple(p) for p in conn))


def _legs(code: str) -> tuple[str, str, str, str]:
    table = {"i": IN, "o": OUT, "x": ERASED}
    return tuple(table[ch] for ch in code)


# Legs listed as slots 0..3 (lr, ur, ul, ll); i = in, o = out, x = erased.
CROSSING_N = LocalPicture("Xing-u", "crossing", "N", _legs("iooi"))
CROSSING_E = LocalPicture("Xing-r", "crossing", "E", _legs("ooii"))
CROSSING_S = LocalPicture("Xing-d", "crossing", "S", _legs("oiio"))
CROSSING_W = LocalPicture("Xing-l", "crossing", "W", _legs("iioo"))
# vertical smoothing: left arc down, right arc up
DOWNUP = LocalPicture("downup", "smoothing", "", _legs("ioio"), ((0, 1), (2, 3)))
# horizontal smoothing: lower arc runs right to left, upper arc left to right
CUPCAP = LocalPicture("cupcap-lr", "turnback", "", _legs("ioio"), ((0, 3), (1, 2)))
# one arc of the two above erased
DOWNUP_L = LocalPicture("downup-l", "smoothing", "l", _legs("ioxx"), ((0, 1), (2, 3)))
DOWNUP_R = LocalPicture("downup-r", "smoothing", "r", _legs("xxio"), ((0, 1), (2, 3)))
CUPCAP_D = LocalPicture("cupcap-lr-d", "turnback", "d", _legs("xoix"), ((0, 3), (1, 2)))
CUPCAP_U = LocalPicture("cupcap-lr-u", "turnback", "u", _legs("ixxo"), ((0, 3), (1, 2)))
# kept crossing with both strands, or one strand, erased
CROSS_DASHED = LocalPicture("cross-dashed", "erased", "both", _legs("xxxx"))
CROSSU_L = LocalPicture("crossu-l", "erased", "u-l", _legs("xoxi"))
CROSSU_R = LocalPicture("crossu-r", "erased", "u-r", _legs("ixox"))
CROSSD_L = LocalPicture("crossd-l", "erased", "d-l", _legs("xixo"))
CROSSD_R = LocalPicture("crossd-r", "erased", "d-r", _legs("oxix"))

# quarter-turned versions of the smoothings, used at crossings whose slots 0, 2
# pass over
UPDOWN = LocalPicture("updown", "smoothing", "", _legs("oioi"), ((0, 1), (2, 3)))
CAPCUP = LocalPicture("cupcap-rl", "turnback", "", _legs("oioi"), ((0, 3), (1, 2)))
UPDOWN_L = LocalPicture("updown-l", "smoothing", "l", _legs("oixx"), ((0, 1), (2, 3)))
UPDOWN_R = LocalPicture("updown-r", "smoothing", "r", _legs("xxoi"), ((0, 1), (2, 3)))
CAPCUP_D = LocalPicture("cupcap-rl-d", "turnback", "d", _legs("xiox"), ((0, 3), (1, 2)))
CAPCUP_U = LocalPicture("cupcap-rl-u", "turnback", "u", _legs("oxxi"), ((0, 3), (1, 2)))

_CATALOG = {(p.legs, p.pairs): p for p in (
    CROSSING_N, CROSSING_E, CROSSING_S, CROSSING_W, DOWNUP, CUPCAP, DOWNUP_L, DOWNUP_R, CUPCAP_D,
    CUPCAP_U, CROSS_DASHED, CROSSU_L, CROSSU_R, CROSSD_L, CROSSD_R, UPDOWN, CAPCUP, UPDOWN_L,
    UPDOWN_R, CAPCUP_D, CAPCUP_U)}


def _normal_pairs(pairs) -> tuple[tuple[int, int], tuple[int, int]]:
    return tuple(sorted(tuple(sorted(p)) for p in pairs))


def quarter_turn(pic: LocalPicture) -> LocalPicture:
    """The picture turned a quarter turn counterclockwise (slot s moves to s+1).

    Turning a crossing whose slots 1, 3 pass over gives one whose slots 0, 2
    pass over, so a negative rule is the quarter turn of a positive one.
    """
    legs = tuple(pic.legs[(s - 1) % 4] for s in range(4))
    conn = None
    if pic.connectivity is not None:
        conn = _normal_pairs(((a + 1) % 4, (b + 1) % 4) for a, b in pic.connectivity)
    pairs = conn if conn is not None else _THROUGH
    known = _CATALOG.get((legs, pairs))
    if known is not None:
        return known
    kind = {"smoothing": "turnback", "turnback": "smoothing"}.get(pic.kind, pic.kind)
    return LocalPicture(pic.name + "'", kind, pic.variant, legs, conn)


@dataclass(frozen=True)
class RuleTable:
    """Local pictures and weights per crossing sign, plus the loop rule.

    ``crossing_rules[+1]`` applies to crossings whose slots 1, 3 pass over,
    ``crossing_rules[-1]`` to the others.  Loop entries are ``(orientation,
    weight)`` with orientation +1 (ccw), -1 (cw) or 0 (erased).
    """

    family: str
    crossing_rules: dict[int, tuple[tuple[LocalPicture, RationalFunction], ...]]
    loop_rule: tuple[tuple[int, RationalFunction], ...]
    bracket_base: tuple[int, int]  # exponents (e_a, e_q) of the rotation base
    experimental: bool = False

    def bracket(self, rot: int) -> RationalFunction:
        ea, eq = self.bracket_base
        return monomial(ea * rot, eq * rot)

    def with_weight(self, sign: int, name: str, weight: RationalFunction) -> RuleTable:
        """Copy of the table with one entry's weight replaced."""
        rules = dict(self.crossing_rules)
        rules[sign] = tuple((p, weight if p.name == name else w) for p, w in rules[sign])
        return RuleTable(self.family, rules, self.loop_rule, self.bracket_base, self.experimental)


def default_rule_table(family: str = "dn") -> RuleTable:
    """The shipped table for ``dn`` or ``bn``.

    Only the positive rule is written out; the negative rule is its quarter
    turn with the same weights, which puts weight ``-z`` on the smoothing and
    ``+z`` on the turnback.
    """
    family = family.lower()
    z = Z
    crossings = tuple((p, ONE) for p in (CROSSING_N, CROSSING_E, CROSSING_S, CROSSING_W))
    if family == "dn":
        pos = crossings + ((DOWNUP, z), (CUPCAP, -z))
        loops = ((1, ONE), (-1, ONE))
        base, experimental = (-1, 1), False
    elif family == "bn":
        pos = (tuple((p, z) for p in (DOWNUP, DOWNUP_L, DOWNUP_R))
               + tuple((p, -z) for p in (CUPCAP, CUPCAP_D, CUPCAP_U))
               + ((CROSS_DASHED, ONE),) + crossings
               + tuple((p, -ONE) for p in (CROSSU_L, CROSSU_R, CROSSD_L, CROSSD_R)))
        loops = ((1, ONE), (-1, ONE), (0, ONE))
        base, experimental = (-1, 0), True
    else:
        raise ValueError(f"unknown family {family!r}; expected 'dn' or 'bn'")
    neg = tuple((quarter_turn(p), w) for p, w in pos)
    return RuleTable(family, {1: pos, -1: neg}, loops, base, experimental)


@dataclass(frozen=True)
class ExpansionState:
    choice: tuple[LocalPicture, ...]
    loop_choices: tuple[int, ...]
    weight: RationalFunction = field(compare=False)
    resolved: OrientedLinkDiagram = field(compare=False)
    rotation: int = 0

    def key(self) -> tuple:
        return tuple(p.name for p in self.choice), self.loop_choices


# ---------------------------------------------------------------------------
# enumeration


def _rule_for(t: RuleTable, c: Crossing):
    return t.crossing_rules[1 if c.over == 1 else -1]


def _search_order(d: LinkDiagram) -> list[int]:
    """Crossings in breadth-first order so constraints propagate early."""
    order: list[int] = []
    seen: set[int] = set()
    for root in range(len(d.crossings)):
        if root in seen:
            continue
        queue = [root]
        seen.add(root)
        while queue:
            x = queue.pop(0)
            order.append(x)
            for s in range(4):
                y, _ = d.other_end(x, s)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return order


def _coherent_with(d: LinkDiagram, x: int, pic: LocalPicture, chosen: dict[int, LocalPicture]) -> bool:
    for s in range(4):
        y, t = d.other_end(x, s)
        if y == x:
            if (pic.legs[s], pic.legs[t]) not in _COMPATIBLE:
                return False
        elif y in chosen and (pic.legs[s], chosen[y].legs[t]) not in _COMPATIBLE:
            return False
    return True


def _crossing_choices(d: LinkDiagram, t: RuleTable) -> Iterator[tuple[tuple[LocalPicture, ...], RationalFunction]]:
    n = len(d.crossings)
    order = _search_order(d)
    rules = [_rule_for(t, c) for c in d.crossings]
    chosen: dict[int, LocalPicture] = {}

    def rec(depth: int, weight: RationalFunction):
        if depth == n:
            yield tuple(chosen[x] for x in range(n)), weight
            return
        x = order[depth]
        for pic, w in rules[x]:
            if _coherent_with(d, x, pic, chosen):
                chosen[x] = pic
                yield from rec(depth + 1, weight * w)
                del chosen[x]

    yield from rec(0, ONE)


def _loop_choices(d: LinkDiagram, t: RuleTable):
    def rec(k: int):
        if k == 0:
            yield (), ONE
            return
        for rest, w in rec(k - 1):
            for orient, lw in t.loop_rule:
                yield rest + (orient,), w * lw

    yield from rec(d.free_loops)


def enumerate_states(d: LinkDiagram, t: RuleTable) -> Iterator[ExpansionState]:
    """Coherent states in a deterministic order, found by backtracking with
    edge-orientation propagation."""
    loop_options = list(_loop_choices(d, t))
    for choice, cw in _crossing_choices(d, t):
        core = _resolve(d, choice)
        for loops, lw in loop_options:
            yield _finish(core, choice, loops, cw * lw)


def enumerate_states_brute_force(d: LinkDiagram, t: RuleTable) -> Iterator[ExpansionState]:
    """Every combination of pictures, filtered for coherence afterwards."""
    import itertools

    rules = [_rule_for(t, c) for c in d.crossings]
    loop_options = list(_loop_choices(d, t))
    for combo in itertools.product(*rules):
        choice = tuple(p for p, _ in combo)
        ok = all((choice[x].legs[s], choice[d.other_end(x, s)[0]].legs[d.other_end(x, s)[1]]) in _COMPATIBLE
                 for x in range(len(choice)) for s in range(4))
        if not ok:
            continue
        weight = ONE
        for _, w in combo:
            weight = weight * w
        core = _resolve(d, choice)
        for loops, lw in loop_options:
            yield _finish(core, choice, loops, weight * lw)


# ---------------------------------------------------------------------------
# resolving a choice into an oriented diagram


@dataclass
class _Resolved:
    diagram: LinkDiagram
    inward: tuple
    loop_turns: tuple[int, ...]
    rotation: int


def _resolve(d: LinkDiagram, choice: Sequence[LocalPicture]) -> _Resolved:
    n = len(d.crossings)
    kept = [x for x in range(n) if choice[x].retains_crossing]
    kept_set = set(kept)

    # curves of the fully smoothed state give the rotation number
    chords = []
    for x, pic in enumerate(choice):
        if pic.retains_crossing:
            legs = pic.legs
            pairs = []
            for s in range(4):
                if legs[s] == IN:
                    t = (s + 1) % 4 if legs[(s + 1) % 4] == OUT else (s - 1) % 4
                    pairs.append((s, t))
            chords.append(pairs)
        else:
            chords.append(pic.chords())
    curves = trace_curves(d, chords) if n else []
    rotation = 0
    loop_turns = []
    outers = d.outer_corners
    piece_of = {}
    for piece in d.pieces:
        for x in piece:
            piece_of[x] = piece
    for curve in curves:
        turn = curve_turning(d, curve, outers[min(piece_of[curve[0][0]])])
        rotation += turn
        if not any(x in kept_set for x, _, _ in curve):
            loop_turns.append(turn)

    # join edges through vertices that are not kept crossings
    parent: dict[int, int] = {}

    def find(a: int) -> int:
        while parent.get(a, a) != a:
            a = parent[a]
        return a

    for x, pic in enumerate(choice):
        if x in kept_set:
            continue
        sl = d.crossings[x].slots
        for s, t in pic.chords():
            ra, rb = find(sl[s]), find(sl[t])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    new_index = {x: i for i, x in enumerate(kept)}
    crossings = []
    inward = []
    for x in kept:
        c = d.crossings[x]
        crossings.append(Crossing(tuple(find(lab) for lab in c.slots), c.over))
        inward.append(tuple(leg == IN for leg in choice[x].legs))
    resolved = LinkDiagram(tuple(crossings), len(loop_turns))
    outer = None
    if crossings:
        outer = []
        for rpiece in resolved.pieces:
            members = [kept[i] for i in rpiece]
            labels = {lab for i in rpiece for lab in resolved.crossings[i].slots}
            walls: dict[int, list[tuple[int, int]]] = {x: list(_THROUGH) for x in members}
            for x, pic in enumerate(choice):
                if x in kept_set:
                    continue
                sl = d.crossings[x].slots
                for s, t in pic.chords():
                    if find(sl[s]) in labels:
                        walls.setdefault(x, []).append((s, t))
            opiece = piece_of[members[0]]
            finder = _region_finder(d, opiece, walls)
            infinity = finder(outers[min(opiece)])
            corner = min((new_index[x], i) for x in members for i in range(4) if finder((x, i)) == infinity)
            outer.append(corner)
        resolved = resolved.with_outer(outer)
    return _Resolved(resolved, tuple(inward), tuple(loop_turns), rotation)


def _finish(core: _Resolved, choice, loops: tuple[int, ...], weight: RationalFunction) -> ExpansionState:
    kept_loops = tuple(o for o in loops if o != 0)
    diagram = LinkDiagram(core.diagram.crossings, core.diagram.free_loops + len(kept_loops), core.diagram.outer)
    resolved = OrientedLinkDiagram(diagram, core.inward, core.loop_turns + kept_loops)
    return ExpansionState(tuple(choice), loops, weight, resolved, core.rotation + sum(kept_loops))


# ---------------------------------------------------------------------------
# evaluation


def evaluate_state(s: ExpansionState, t: RuleTable, memo: MutableMapping | None = None) -> RationalFunction:
    """``weight * base^rot * P(resolved)``."""
    return s.weight * t.bracket(s.rotation) * evaluate_homfly(s.resolved, memo)


def _evaluate_chunk(args) -> list[RationalFunction]:
    states, t = args
    memo: dict = {}
    return [evaluate_state(s, t, memo) for s in states]


def state_values(d: LinkDiagram, t: RuleTable, memo: MutableMapping | None = None, jobs: int = 1
                 ) -> list[tuple[ExpansionState, RationalFunction]]:
    """Every state with its value, in enumeration order.  With ``jobs > 1`` the
    values are computed in worker processes (each with its own memo)."""
    states = list(enumerate_states(d, t))
    if jobs > 1 and len(states) > 1:
        from concurrent.futures import ProcessPoolExecutor

        size = -(-len(states) // jobs)
        chunks = [(states[k:k + size], t) for k in range(0, len(states), size)]
        with ProcessPoolExecutor(jobs) as pool:
            values = [v for part in pool.map(_evaluate_chunk, chunks) for v in part]
    else:
        memo = {} if memo is None else memo
        values = [evaluate_state(s, t, memo) for s in states]
    return list(zip(states, values))


def expand(d: LinkDiagram, t: RuleTable | None = None, memo: MutableMapping | None = None,
           jobs: int = 1) -> RationalFunction:
    """The state sum of ``d`` under table ``t`` (D_n by default)."""
    t = t or default_rule_table("dn")
    total = ZERO
    for _, v in state_values(d, t, memo, jobs):
        total = total + v
    return total


@dataclass
class IdentityReport:
    """``expansion`` against its target: F itself for D_n; for B_n the
    conjectured two-variable target F with ``a^2 -> a^2 q``, plus the
    specialized comparisons at ``a = q^n`` in ``specialized``."""

    family: str
    expansion: RationalFunction
    kauffman: RationalFunction
    equal: bool
    states: int
    seconds: float
    specialized: dict[int, bool] = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"family": self.family, "expansion": str(self.expansion), "kauffman": str(self.kauffman),
               "equal": self.equal, "states": self.states, "seconds": round(self.seconds, 4)}
        if self.specialized:
            out["specialized"] = {str(n): ok for n, ok in self.specialized.items()}
        return out


def verify_identity(d: LinkDiagram, t: RuleTable | None = None, memo: MutableMapping | None = None,
                    jobs: int = 1) -> IdentityReport:
    """Compare the state sum with the Kauffman polynomial."""
    t = t or default_rule_table("dn")
    start = time.perf_counter()
    rows = state_values(d, t, memo, jobs)
    total = ZERO
    for _, v in rows:
        total = total + v
    target = evaluate_kauffman(d)
    specialized = {}
    if t.family == "bn":
        target = target.substitute_a2()
        # at a = q^n the target is F with a^2 = q^(2n+1)
        specialized = {n: total.substitute_a(n) == target.substitute_a(n) for n in (1, 2, 3)}
    return IdentityReport(t.family, total, target, total == target, len(rows), time.perf_counter() - start,
                          specialized)


@dataclass
class TableReport:
    rows: list[tuple[str, RationalFunction, RationalFunction, bool]]

    @property
    def passed(self) -> bool:
        return all(ok for *_, ok in self.rows)


def validate_table(t: RuleTable, pairs: Iterable[tuple[str, LinkDiagram, LinkDiagram]]) -> TableReport:
    """Check that ``t`` gives equal state sums on diagram pairs that are
    regular-isotopic."""
    rows = []
    memo: dict = {}
    for name, d1, d2 in pairs:
        v1, v2 = expand(d1, t, memo), expand(d2, t, memo)
        rows.append((name, v1, v2, v1 == v2))
    return TableReport(rows)


# ---------------------------------------------------------------------------
# JSON


def table_to_json(t: RuleTable) -> str:
    obj = {
        "family": t.family,
        "experimental": t.experimental,
        "bracket_base": list(t.bracket_base),
        "crossing_rules": {
            "positive" if sign > 0 else "negative": [
                dict(p.to_json(), weight=str(w)) for p, w in entries]
            for sign, entries in sorted(t.crossing_rules.items(), reverse=True)
        },
        "loop_rule": [{"orientation": o, "weight": str(w)} for o, w in t.loop_rule],
    }
    return json.dumps(obj, indent=2)


def table_from_json(text: str) -> RuleTable:
    obj = json.loads(text)
    rules = {}
    for key, sign in (("positive", 1), ("negative", -1)):
        rules[sign] = tuple((LocalPicture.from_json(e), parse_rational(e["weight"]))
                            for e in obj["crossing_rules"][key])
    loops = tuple((int(e["orientation"]), parse_rational(e["weight"])) for e in obj["loop_rule"])
    return RuleTable(obj["family"], rules, loops, tuple(obj["bracket_base"]), bool(obj.get("experimental")))
