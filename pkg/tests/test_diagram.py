from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings

from conftest import braid_diagrams, small_diagrams
from linkpoly.diagram import (
    ClosednessError,
    Crossing,
    DiagramError,
    LinkDiagram,
    OrientedLinkDiagram,
    PDParseError,
    canonical_code,
    default_orientation,
    disjoint_union,
    enumerate_orientations,
    format_pd,
    from_braid_word,
    mirror,
    parse_braid,
    parse_pd,
    rotation_number,
    writhe,
)

LEFT_TREFOIL = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"
RIGHT_TREFOIL = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]"
FIGURE_EIGHT = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"


def trace_components(d: LinkDiagram) -> int:
    """Component count by following labels through crossings, independent of
    the diagram's own walker."""
    pos = {}
    for x, c in enumerate(d.crossings):
        for s, lab in enumerate(c.slots):
            pos.setdefault(lab, []).append((x, s))
    seen: set[int] = set()
    count = 0
    for lab in pos:
        if lab in seen:
            continue
        count += 1
        stack = [lab]
        while stack:
            e = stack.pop()
            if e in seen:
                continue
            seen.add(e)
            for x, s in pos[e]:
                stack.append(d.crossings[x].slots[(s + 2) % 4])
    return count + d.free_loops


def relabeled(d: LinkDiagram, perm: dict[int, int], order: list[int]) -> LinkDiagram:
    return LinkDiagram(tuple(Crossing(tuple(perm[lab] for lab in d.crossings[x].slots), d.crossings[x].over)
                             for x in order), d.free_loops)


class TestParsing:
    def test_trefoil(self):
        d = parse_pd(LEFT_TREFOIL)
        assert len(d.crossings) == 3
        assert len(d.edges) == 6
        assert d.component_count == 1 == trace_components(d)

    def test_empty(self):
        d = parse_pd("")
        assert d.crossings == () and d.edges == frozenset() and d.free_loops == 0
        assert d.is_empty()

    def test_curl(self):
        d = parse_pd("X[1,1,2,2]")
        assert len(d.crossings) == 1 and len(d.edges) == 2
        assert trace_components(d) == 1

    def test_loops(self):
        assert parse_pd("Loop[1] Loop[2]").free_loops == 2

    @pytest.mark.parametrize("text", ["X[1,2,3]", "X[1,2,3,a]", "Y[1,2,3,4]", "X[0,1,1,0]"])
    def test_malformed(self, text):
        with pytest.raises(PDParseError):
            parse_pd(text)

    def test_not_closed(self):
        with pytest.raises(ClosednessError):
            parse_pd("X[1,2,3,4]")
        with pytest.raises(ClosednessError):
            parse_pd("X[1,1,1,2] X[2,3,3,2]")

    def test_error_hierarchy(self):
        assert issubclass(PDParseError, DiagramError) and issubclass(ClosednessError, DiagramError)

    def test_format_round_trip(self):
        for text in (LEFT_TREFOIL, FIGURE_EIGHT, "X[1,1,2,2] Loop[1]"):
            assert parse_pd(format_pd(parse_pd(text))) == parse_pd(text)

    def test_format_mirror_is_parseable(self):
        d = mirror(parse_pd(LEFT_TREFOIL))
        assert canonical_code(parse_pd(format_pd(d))) == canonical_code(d)


class TestBraids:
    def test_trefoil(self):
        d = from_braid_word((1, 1, 1), 2)
        assert len(d.crossings) == 3 and trace_components(d) == 1 == d.component_count

    def test_empty_word(self):
        d = from_braid_word((), 1)
        assert d.crossings == () and d.free_loops == 1

    def test_generator_and_inverse(self):
        # the closure of s1 s1^-1 is a two-component unlink diagram
        d = from_braid_word((1, -1), 2)
        assert len(d.crossings) == 2
        assert trace_components(d) == 2 == d.component_count

    def test_out_of_range(self):
        with pytest.raises(DiagramError):
            from_braid_word((2,), 2)
        with pytest.raises(DiagramError):
            from_braid_word((0,), 3)

    def test_parse_braid(self):
        assert parse_braid("BR 3 : 1 -2 1 -2") == from_braid_word((1, -2, 1, -2), 3)
        with pytest.raises(PDParseError):
            parse_braid("BR x : 1")
        with pytest.raises(PDParseError):
            parse_braid("BR 2 : 1 a")

    @settings(max_examples=80, deadline=None)
    @given(braid_diagrams())
    def test_every_edge_twice(self, d):
        counts = {}
        for c in d.crossings:
            for lab in c.slots:
                counts[lab] = counts.get(lab, 0) + 1
        assert all(n == 2 for n in counts.values())
        assert d.component_count == trace_components(d)
        assert d.euler_characteristic() == 2 * len(d.pieces)


class TestOrientations:
    def test_counts(self):
        assert len(enumerate_orientations(LinkDiagram((), 1))) == 2
        assert len(enumerate_orientations(parse_pd(LEFT_TREFOIL))) == 2
        assert len(enumerate_orientations(parse_pd("X[4,1,3,2] X[2,3,1,4]"))) == 4

    @settings(max_examples=40, deadline=None)
    @given(braid_diagrams(max_length=5))
    def test_count_is_power_of_two_and_distinct(self, d):
        os = enumerate_orientations(d)
        assert len(os) == 2 ** d.component_count
        assert len({(o.inward, o.loop_orientation) for o in os}) == len(os)

    def test_incoherent_rejected(self):
        d = parse_pd("X[1,1,2,2]")
        with pytest.raises(DiagramError):
            OrientedLinkDiagram(d, ((True, True, False, False),))

    def test_pd_orientation_enters_slot_zero(self):
        o = default_orientation(parse_pd(LEFT_TREFOIL))
        assert all(row[0] for row in o.inward)


class TestRotationAndWrithe:
    def test_circles(self):
        ccw = OrientedLinkDiagram(LinkDiagram((), 1), (), (1,))
        cw = OrientedLinkDiagram(LinkDiagram((), 1), (), (-1,))
        both = OrientedLinkDiagram(LinkDiagram((), 2), (), (1, -1))
        assert rotation_number(ccw) == 1
        assert rotation_number(cw) == -1
        assert rotation_number(both) == 0

    def test_trefoil_closure(self):
        d = from_braid_word((1, 1, 1), 2)
        rots = sorted(rotation_number(o) for o in enumerate_orientations(d))
        assert rots == [-2, 2]
        # drawn upward with the closure on the right the Seifert circles run
        # clockwise; the reverse orientation has both counterclockwise
        up = default_orientation(d)
        assert rotation_number(up.reversed()) == 2

    def test_figure_eight_curve(self):
        assert abs(rotation_number(default_orientation(parse_pd("X[1,1,2,2]")))) == 0

    def test_writhe_examples(self):
        assert writhe(default_orientation(from_braid_word((1, 1, 1), 2))) == 3
        assert writhe(default_orientation(parse_pd(RIGHT_TREFOIL))) == 3
        assert writhe(default_orientation(parse_pd(FIGURE_EIGHT))) == 0
        assert writhe(default_orientation(parse_pd("X[1,1,2,2]"))) == 1
        assert writhe(default_orientation(parse_pd("X[1,2,2,1]"))) == -1

    @settings(max_examples=60, deadline=None)
    @given(braid_diagrams())
    def test_reversal_negates_rotation(self, d):
        for o in enumerate_orientations(d)[:4]:
            assert rotation_number(o.reversed()) == -rotation_number(o)
            assert writhe(o.reversed()) == writhe(o)

    @settings(max_examples=30, deadline=None)
    @given(braid_diagrams(max_length=4), braid_diagrams(max_length=4))
    def test_rotation_additive(self, d1, d2):
        u = disjoint_union(d1, d2)
        o1, o2 = default_orientation(d1), default_orientation(d2)
        assert rotation_number(default_orientation(u)) == rotation_number(o1) + rotation_number(o2)

    def test_braid_rotation_is_minus_strand_count_upward(self):
        # every Seifert circle of an upward braid closure is a clockwise loop
        for word, strands in (((1, -2, 1, -2), 3), ((1, 1, 2), 3), ((), 4)):
            o = default_orientation(from_braid_word(word, strands))
            up = o if rotation_number(o) < 0 else o.reversed()
            assert rotation_number(up) == -strands


class TestMirror:
    def test_involution(self):
        d = parse_pd(FIGURE_EIGHT)
        assert mirror(mirror(d)) == d

    def test_empty(self):
        assert mirror(LinkDiagram()) == LinkDiagram()

    def test_trefoils(self):
        d = mirror(parse_pd(RIGHT_TREFOIL))
        assert writhe(default_orientation(d)) == -3
        assert canonical_code(d) == canonical_code(parse_pd(LEFT_TREFOIL))

    @settings(max_examples=40, deadline=None)
    @given(braid_diagrams())
    def test_writhe_negates(self, d):
        o = default_orientation(d)
        assert writhe(mirror(o)) == -writhe(o)


class TestCanonicalCode:
    def test_exhaustive_relabeling(self):
        for text in ("X[1,1,2,2]", "X[1,2,2,1]", LEFT_TREFOIL, RIGHT_TREFOIL, "X[4,1,3,2] X[2,3,1,4]"):
            d = parse_pd(text)
            labels = sorted(d.edges)
            ref = canonical_code(d)
            for perm in itertools.permutations(labels):
                for order in itertools.permutations(range(len(d.crossings))):
                    assert canonical_code(relabeled(d, dict(zip(labels, perm)), list(order))) == ref

    def test_random_relabeling_small_diagrams(self):
        rng = random.Random(7)
        for _, d in small_diagrams():
            labels = sorted(d.edges)
            ref = canonical_code(d)
            for _ in range(5):
                perm = labels[:]
                rng.shuffle(perm)
                order = list(range(len(d.crossings)))
                rng.shuffle(order)
                assert canonical_code(relabeled(d, dict(zip(labels, perm)), order)) == ref

    def test_empty_sentinel(self):
        assert canonical_code(LinkDiagram()) == "empty"

    def test_distinguishes(self):
        assert canonical_code(parse_pd(LEFT_TREFOIL)) != canonical_code(parse_pd(FIGURE_EIGHT))
        assert canonical_code(parse_pd(LEFT_TREFOIL)) != canonical_code(parse_pd(RIGHT_TREFOIL))
        assert canonical_code(LinkDiagram((), 1)) != canonical_code(LinkDiagram((), 2))
