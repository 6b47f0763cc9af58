"""Framed Kauffman and HOMFLY-PT polynomials of link diagrams, and the
vertex-weighted HOMFLY-PT state expansion of the Kauffman polynomial."""

from .diagram import (
    ClosednessError,
    Crossing,
    DiagramError,
    LinkDiagram,
    OrientedLinkDiagram,
    PDParseError,
    canonical_code,
    default_orientation,
    enumerate_orientations,
    from_braid_word,
    mirror,
    parse_braid,
    parse_pd,
    rotation_number,
    writhe,
)
from .expansion import default_rule_table, enumerate_states, evaluate_state, expand, verify_identity
from .homfly import evaluate_homfly, specialize_homfly
from .kauffman import evaluate_kauffman, specialize_kauffman
from .laurent import BivariateLaurent, RationalFunction, parse_laurent, parse_rational

__all__ = [
    "BivariateLaurent",
    "RationalFunction",
    "parse_laurent",
    "parse_rational",
    "Crossing",
    "LinkDiagram",
    "OrientedLinkDiagram",
    "DiagramError",
    "PDParseError",
    "ClosednessError",
    "parse_pd",
    "parse_braid",
    "from_braid_word",
    "default_orientation",
    "enumerate_orientations",
    "rotation_number",
    "writhe",
    "mirror",
    "canonical_code",
    "evaluate_homfly",
    "specialize_homfly",
    "evaluate_kauffman",
    "specialize_kauffman",
    "default_rule_table",
    "enumerate_states",
    "evaluate_state",
    "expand",
    "verify_identity",
]
