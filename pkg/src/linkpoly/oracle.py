"""Slow reference evaluators used to freeze the corpus values.

These deliberately share no recursion code with the main engines: there is no
memo, crossings are held in their own dictionary form, traversal starts from
the largest edge label, and the crossing rewritten at each step is the last
ascending one found rather than the first.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from .diagram import LinkDiagram, OrientedLinkDiagram, default_orientation
from .laurent import RationalFunction, parse_laurent

_Z = RationalFunction(parse_laurent("q - q^-1"))
_A = RationalFunction(parse_laurent("a"))
_A_INV = RationalFunction(parse_laurent("a^-1"))
_DELTA_P = RationalFunction(parse_laurent("a - a^-1"), parse_laurent("q - q^-1"))
_DELTA_F = RationalFunction(parse_laurent("a^2*q^-1 - a^-2*q + q - q^-1"), parse_laurent("q - q^-1"))
_CURL_F = {1: RationalFunction(parse_laurent("a^2*q^-1")), -1: RationalFunction(parse_laurent("a^-2*q"))}


def _power(x: RationalFunction, k: int) -> RationalFunction:
    out = RationalFunction(1)
    for _ in range(k):
        out = out * x
    return out


# ---------------------------------------------------------------------------
# oriented: each crossing is {"ui", "uo", "oi", "oo", "sign"} (under/over in/out)


def _oriented_form(d: OrientedLinkDiagram) -> list[dict]:
    out = []
    for x, c in enumerate(d.crossings):
        row = d.inward[x]
        rec = {}
        for s in range(4):
            role = "o" if c.is_over_slot(s) else "u"
            rec[role + ("i" if row[s] else "o")] = c.slots[s]
        # positive when the over strand comes in a quarter turn clockwise of
        # the incoming under strand
        u = next(s for s in range(4) if not c.is_over_slot(s) and row[s])
        v = next(s for s in range(4) if c.is_over_slot(s) and row[s])
        rec["sign"] = 1 if (u - v) % 4 == 1 else -1
        out.append(rec)
    return out


def _relabel(crossings: list[dict], old: int, new: int) -> list[dict]:
    return [{k: (new if k != "sign" and v == old else v) for k, v in c.items()} for c in crossings]


def _oriented_walk(crossings: list[dict]):
    """Passages ``(index, 'u' | 'o')`` component by component, largest label first."""
    by_in = {}
    for i, c in enumerate(crossings):
        by_in[c["ui"]] = (i, "u")
        by_in[c["oi"]] = (i, "o")
    done: set[int] = set()
    walks = []
    for start in sorted(by_in, reverse=True):
        if start in done:
            continue
        walk = []
        lab = start
        while lab not in done:
            done.add(lab)
            i, role = by_in[lab]
            walk.append((i, role))
            lab = crossings[i][role + "o"]
        walks.append(walk)
    return walks


def oracle_homfly(d: OrientedLinkDiagram) -> RationalFunction:
    return _homfly(_oriented_form(d), d.free_loops)


def _homfly(crossings: list[dict], loops: int) -> RationalFunction:
    walks = _oriented_walk(crossings)
    seen: set[int] = set()
    ascending = None
    for walk in walks:
        for i, role in walk:
            if i not in seen:
                seen.add(i)
                if role == "u":
                    ascending = i
    if ascending is None:
        w = sum(c["sign"] for c in crossings)
        mono = _power(_A if w > 0 else _A_INV, abs(w))
        return mono * _power(_DELTA_P, len(walks) + loops)
    c = crossings[ascending]
    rest = crossings[:ascending] + crossings[ascending + 1:]
    switched = dict(ui=c["oi"], uo=c["oo"], oi=c["ui"], oo=c["uo"], sign=-c["sign"])
    sw = _homfly(crossings[:ascending] + [switched] + crossings[ascending + 1:], loops)
    # oriented smoothing: each incoming edge continues along the other strand's outgoing edge
    smooth, extra = rest, 0
    pairs = [(c["ui"], c["oo"]), (c["oi"], c["uo"])]
    for k in range(2):
        a, b = pairs[k]
        if a == b:
            extra += 1
            continue
        smooth = _relabel(smooth, b, a)
        pairs = [(a if p == b else p, a if q == b else q) for p, q in pairs]
    sm = _homfly(smooth, loops + extra)
    # P(+) - P(-) = z P(0)
    return sw + _Z * sm if c["sign"] > 0 else sw - _Z * sm


# ---------------------------------------------------------------------------
# unoriented: each crossing is a list [s0, s1, s2, s3, over]


def _ends(crossings: list[list[int]]) -> dict[int, list[tuple[int, int]]]:
    ends: dict[int, list[tuple[int, int]]] = {}
    for i, c in enumerate(crossings):
        for s in range(4):
            ends.setdefault(c[s], []).append((i, s))
    return ends


def _unoriented_walk(crossings: list[list[int]]):
    ends = _ends(crossings)
    used: set[tuple[int, int]] = set()
    walks = []
    for lab in sorted(ends, reverse=True):
        start = max(ends[lab])
        if start in used:
            continue
        walk = []
        i, s = start
        while (i, s) not in used:
            used.add((i, s))
            used.add((i, (s + 2) % 4))
            walk.append((i, s))
            out_lab = crossings[i][(s + 2) % 4]
            e0, e1 = ends[out_lab]
            i, s = e1 if e0 == (i, (s + 2) % 4) else e0
        walks.append(walk)
    return walks


def _join(crossings: list[list[int]], pairs) -> tuple[list[list[int]], int]:
    loops = 0
    pairs = list(pairs)
    for k in range(len(pairs)):
        a, b = pairs[k]
        if a == b:
            loops += 1
            continue
        crossings = [[a if v == b and k < 4 else v for k, v in enumerate(c)] for c in crossings]
        pairs = [(a if p == b else p, a if q == b else q) for p, q in pairs]
    return crossings, loops


def oracle_kauffman(d: LinkDiagram) -> RationalFunction:
    return _kauffman([list(c.slots) + [c.over] for c in d.crossings], d.free_loops)


def _kauffman(crossings: list[list[int]], loops: int) -> RationalFunction:
    walks = _unoriented_walk(crossings)
    seen: set[int] = set()
    ascending = None
    entry: dict[int, list[int]] = {}
    for walk in walks:
        for i, s in walk:
            entry.setdefault(i, []).append(s)
            if i not in seen:
                seen.add(i)
                if s % 2 != crossings[i][4]:
                    ascending = i
    if ascending is None:
        value = _power(_DELTA_F, len(walks) + loops)
        for i, ss in entry.items():
            over = crossings[i][4]
            u = next(s for s in ss if s % 2 != over)
            v = next(s for s in ss if s % 2 == over)
            value = value * _CURL_F[1 if (u - v) % 4 == 1 else -1]
        return value
    c = crossings[ascending]
    rest = crossings[:ascending] + crossings[ascending + 1:]
    sw = _kauffman(crossings[:ascending] + [c[:4] + [1 - c[4]]] + crossings[ascending + 1:], loops)
    vertical = [(c[0], c[1]), (c[2], c[3])]
    horizontal = [(c[0], c[3]), (c[1], c[2])]
    # with slots 1, 3 over: F(c) - F(switch c) = z (F(vertical) - F(horizontal))
    plus, minus = (vertical, horizontal) if c[4] == 1 else (horizontal, vertical)
    dp, lp = _join([list(x) for x in rest], plus)
    dm, lm = _join([list(x) for x in rest], minus)
    return sw + _Z * (_kauffman(dp, loops + lp) - _kauffman(dm, loops + lm))


# ---------------------------------------------------------------------------
# regeneration


def regenerate(path: Path) -> str:
    """Recompute every oracle line of a corpus file in place."""
    from .corpus import format_corpus, load_corpus

    entries = []
    for e in load_corpus(path):
        d = e.diagram()
        entries.append(e.with_oracles(oracle_homfly(default_orientation(d)), oracle_kauffman(d)))
    text = format_corpus(entries)
    Path(path).write_text(text)
    return text


def main(argv=None) -> int:
    from .corpus import BUNDLED_PATH

    parser = argparse.ArgumentParser(description="Recompute frozen corpus oracle values.")
    parser.add_argument("path", nargs="?", default=str(BUNDLED_PATH))
    args = parser.parse_args(argv)
    regenerate(Path(args.path))
    print(f"wrote {args.path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
