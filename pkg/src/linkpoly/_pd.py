"""Tuple-level link diagram operations shared by the skein engines.

Two working forms are used:

* oriented crossings ``(i, j, k, l, sign)``: edge labels counterclockwise,
  ``i`` is the incoming under-edge; for ``sign == +1`` the over strand runs
  ``l -> j``, for ``sign == -1`` it runs ``j -> l``.
* unoriented crossings ``(s0, s1, s2, s3, over)``: ``over == 1`` when slots 1, 3
  pass over, ``over == 0`` when slots 0, 2 do.

A diagram is a tuple of crossings plus a count of crossing-free loops.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Crossing5 = tuple[int, int, int, int, int]


def crossing_sign(under_in: int, over_in: int) -> int:
    """Sign of a crossing from the slots where the under and over strands enter."""
    return 1 if over_in == (under_in + 3) % 4 else -1


def merge(crossings: Sequence[Crossing5], pairs: Iterable[tuple[int, int]], loops: int
          ) -> tuple[tuple[Crossing5, ...], int]:
    """Join edge labels pairwise after a vertex has been removed.

    Chains with no end left on a crossing close up into free loops.
    """
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for p, q in pairs:
        rp, rq = find(p), find(q)
        if rp != rq:
            if rq < rp:
                rp, rq = rq, rp
            parent[rq] = rp
    labels = set(parent) | set(parent.values())
    for p, q in pairs:
        labels.add(p)
        labels.add(q)
    used = {lab for c in crossings for lab in c[:4] if lab in labels}
    classes: dict[int, list[int]] = {}
    for lab in labels:
        classes.setdefault(find(lab), []).append(lab)
    rename: dict[int, int] = {}
    for members in classes.values():
        live = [m for m in members if m in used]
        if not live:
            loops += 1
        else:
            rep = min(live)
            for m in members:
                rename[m] = rep
    if not rename:
        return tuple(crossings), loops
    out = tuple(tuple(rename.get(lab, lab) for lab in c[:4]) + (c[4],) for c in crossings)
    return out, loops


# ---------------------------------------------------------------------------
# oriented form


def oriented_in_slots(c: Crossing5) -> tuple[int, int]:
    return (0, 3) if c[4] > 0 else (0, 1)


def oriented_switch(c: Crossing5) -> Crossing5:
    i, j, k, l, s = c
    if s > 0:
        return (l, i, j, k, -1)
    return (j, k, l, i, 1)


def oriented_smoothing_pairs(c: Crossing5) -> tuple[tuple[int, int], tuple[int, int]]:
    i, j, k, l, s = c
    if s > 0:
        return (i, j), (l, k)
    return (i, l), (j, k)


def oriented_heads(crossings: Sequence[Crossing5]) -> dict[int, tuple[int, int]]:
    """Map each edge label to the ``(crossing, slot)`` it flows into."""
    heads = {}
    for x, c in enumerate(crossings):
        for slot in oriented_in_slots(c):
            heads[c[slot]] = (x, slot)
    return heads


def oriented_traversal(crossings: Sequence[Crossing5]):
    """Walk components in order of their smallest label, each from that label.

    Yields ``(crossing, entry_slot)`` per passage and ``None`` between
    components.
    """
    heads = oriented_heads(crossings)
    seen: set[int] = set()
    for start in sorted(heads):
        if start in seen:
            continue
        lab = start
        while True:
            seen.add(lab)
            x, p = heads[lab]
            yield x, p
            lab = crossings[x][(p + 2) % 4]
            if lab == start:
                break
        yield None


def first_ascending_oriented(crossings: Sequence[Crossing5]) -> int | None:
    """Index of the first crossing met on its under-strand first, else ``None``."""
    met: set[int] = set()
    for step in oriented_traversal(crossings):
        if step is None:
            continue
        x, p = step
        if x in met:
            continue
        met.add(x)
        if p % 2 == 0:
            return x
    return None


def oriented_component_count(crossings: Sequence[Crossing5]) -> int:
    return sum(1 for step in oriented_traversal(crossings) if step is None)


# ---------------------------------------------------------------------------
# unoriented form


def unoriented_ends(crossings: Sequence[Crossing5]) -> dict[int, list[tuple[int, int]]]:
    ends: dict[int, list[tuple[int, int]]] = {}
    for x, c in enumerate(crossings):
        for s in range(4):
            ends.setdefault(c[s], []).append((x, s))
    return ends


def unoriented_traversal(crossings: Sequence[Crossing5]):
    """Walk each component from its smallest label, entering at the smaller end.

    The walk depends only on labels and slot positions, so it is unchanged by
    switching crossings.  Yields ``(crossing, entry_slot)`` and ``None``
    between components.
    """
    ends = unoriented_ends(crossings)
    seen: set[int] = set()
    for start in sorted(ends):
        if start in seen:
            continue
        x, p = min(ends[start])
        first = (x, p)
        while True:
            yield x, p
            out = (p + 2) % 4
            lab = crossings[x][out]
            seen.add(crossings[x][p])
            seen.add(lab)
            e0, e1 = ends[lab]
            x, p = e1 if e0 == (x, out) else e0
            if (x, p) == first:
                break
        yield None


def unoriented_descent(crossings: Sequence[Crossing5]) -> tuple[int | None, int, int]:
    """``(first ascending crossing or None, writhe, components)`` for the walk."""
    met: dict[int, int] = {}
    entries: dict[int, list[int]] = {}
    components = 0
    bad = None
    for step in unoriented_traversal(crossings):
        if step is None:
            components += 1
            continue
        x, p = step
        entries.setdefault(x, []).append(p)
        if x not in met:
            met[x] = p
            under = p % 2 != crossings[x][4]
            if under and bad is None:
                bad = x
    writhe = 0
    for x, ps in entries.items():
        over = crossings[x][4]
        u = next(p for p in ps if p % 2 != over)
        v = next(p for p in ps if p % 2 == over)
        writhe += crossing_sign(u, v)
    return bad, writhe, components


def unoriented_smoothings(c: Crossing5) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Label pairs of the two smoothings ``(A, B)``.

    With the over strand on slots 1, 3, ``A`` joins slots (0,1),(2,3) and ``B``
    joins (0,3),(1,2).  The skein relation reads
    ``F(c) - F(switch c) = z (F(A) - F(B))``.
    """
    s0, s1, s2, s3, over = c
    if over:
        return [(s0, s1), (s2, s3)], [(s0, s3), (s1, s2)]
    return [(s0, s3), (s1, s2)], [(s0, s1), (s2, s3)]


# ---------------------------------------------------------------------------
# canonical Gauss-style codes


def _pieces(crossings: Sequence[Crossing5], ends) -> list[list[int]]:
    n = len(crossings)
    seen = [False] * n
    pieces = []
    for root in range(n):
        if seen[root]:
            continue
        stack, piece = [root], []
        seen[root] = True
        while stack:
            x = stack.pop()
            piece.append(x)
            for lab in crossings[x][:4]:
                for y, _ in ends[lab]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
        pieces.append(sorted(piece))
    return pieces


def _code_from(crossings, ends, start: tuple[int, int], oriented: bool):
    ids: dict[int, int] = {}
    entries: dict[int, list[tuple[int, int]]] = {}
    seq: list[tuple[int, int]] = []
    order: list[int] = []
    x, p = start
    while True:
        first = (x, p)
        while True:
            if x not in ids:
                ids[x] = len(ids)
                order.append(x)
            entries.setdefault(x, []).append(p)
            seq.append((x, p))
            out = (p + 2) % 4
            lab = crossings[x][out]
            e0, e1 = ends[lab]
            x, p = e1 if e0 == (x, out) else e0
            if (x, p) == first:
                break
        seq.append((-1, -1))
        nxt = None
        for y in order:
            if len(entries[y]) == 1:
                q = entries[y][0]
                if oriented:
                    c = crossings[y]
                    ins = oriented_in_slots(c)
                    q_in = ins[1] if q == ins[0] else ins[0]
                    nxt = (y, q_in)
                else:
                    nxt = (y, (q + 3) % 4)
                break
        if nxt is None:
            break
        x, p = nxt
    signs = {}
    for y, ps in entries.items():
        over = crossings[y][4] if not oriented else 1
        u = next(q for q in ps if q % 2 != over)
        v = next(q for q in ps if q % 2 == over)
        signs[y] = crossing_sign(u, v)
    code = []
    for y, q in seq:
        if y < 0:
            code.append((-1, 0, 0))
        else:
            over = crossings[y][4] if not oriented else 1
            code.append((ids[y], 1 if q % 2 == over else 0, signs[y]))
    return tuple(code)


def gauss_code(crossings: Sequence[Crossing5], loops: int, oriented: bool):
    """Relabeling-invariant code: per connected piece, the smallest code over
    all starting darts; pieces sorted; free loops counted."""
    ends = unoriented_ends(crossings)
    piece_codes = []
    for piece in _pieces(crossings, ends):
        best = None
        for x in piece:
            if oriented:
                starts = [(x, s) for s in oriented_in_slots(crossings[x])]
            else:
                starts = [(x, s) for s in range(4)]
            for start in starts:
                code = _code_from(crossings, ends, start, oriented)
                if best is None or code < best:
                    best = code
        piece_codes.append(best)
    piece_codes.sort()
    return tuple(piece_codes), loops


def code_to_string(code) -> str:
    pieces, loops = code
    if not pieces and not loops:
        return "empty"
    parts = []
    for piece in pieces:
        comps, cur = [], []
        for ident, over, sign in piece:
            if ident < 0:
                comps.append(" ".join(cur))
                cur = []
            else:
                cur.append(f"{ident}{'O' if over else 'U'}{'+' if sign > 0 else '-'}")
        parts.append("|".join(comps))
    text = " / ".join(parts)
    if loops:
        text = (text + " ; " if text else "") + f"O*{loops}"
    return text
