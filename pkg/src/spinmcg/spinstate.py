"""Marked tesselations with doe and the moves alpha, beta, t.

A :class:`TessState` stores only the triangles of its tesselation that are not
Farey triangles (the *patch*); everything else is read off the Farey
tesselation.  Because flips only ever touch the two triangles at the doe, the
patch stays finite and an unmarked state is the base state exactly when the
patch is empty and the doe is ``0->oo``.

Quadrilateral positions around the doe ``a->b`` (left vertex ``c``, right
vertex ``d``; cyclic order a, c, b, d) are named ``ac``, ``cb``, ``bd``, ``da``
for the four sides and ``cd`` for the diagonal created by the flip.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .farey import (
    BASE_DOE,
    OrientedEdge,
    edge_key,
    edge_str,
    farey_left,
    in_open_arc,
    is_farey_triangle,
    triangle,
)
from .marking import EMPTY, is_trivial
from . import marking as _marking

POSITIONS = ("ac", "cb", "bd", "da", "cd")


@dataclass(frozen=True)
class SpinRule:
    """Marking effect of the flip alpha.

    ``unmarked`` / ``marked``: positions toggled when the doe carries no mark /
    an odd mark (the doe's own mark leaves with the removed edge).
    ``orientation``: the new doe runs ``c->d`` ("cd") or ``d->c`` ("dc").
    """

    unmarked: frozenset = frozenset()
    marked: frozenset = frozenset()
    orientation: str = "cd"

    def __post_init__(self):
        if self.orientation not in ("cd", "dc"):
            raise ValueError(f"bad orientation {self.orientation!r}")
        for pos in self.unmarked | self.marked:
            if pos not in POSITIONS:
                raise ValueError(f"bad position {pos!r}")

    def __str__(self) -> str:
        def fmt(s):
            return "{" + ",".join(p for p in POSITIONS if p in s) + "}"

        return f"alpha[{self.orientation}] unmarked:{fmt(self.unmarked)} marked:{fmt(self.marked)}"

    def to_dict(self) -> dict:
        return {
            "orientation": self.orientation,
            "unmarked": [p for p in POSITIONS if p in self.unmarked],
            "marked": [p for p in POSITIONS if p in self.marked],
        }


# Unmarked model: flips never add marks.  Used for PPSL(2,Z) computations.
UNMARKED = SpinRule()


class TessState:
    """Tesselation (as a finite non-Farey patch) with doe and marking.  Immutable."""

    __slots__ = ("patch", "doe", "marking", "_index", "_hash")

    def __init__(self, patch=frozenset(), doe: OrientedEdge = BASE_DOE, marking=EMPTY):
        self.patch = frozenset(patch)
        self.doe = OrientedEdge(*doe)
        self.marking = frozenset(marking)
        self._index = None
        self._hash = None

    @classmethod
    def base(cls) -> "TessState":
        return _BASE

    def __eq__(self, other):
        if not isinstance(other, TessState):
            return NotImplemented
        return self.doe == other.doe and self.patch == other.patch and self.marking == other.marking

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.patch, self.doe, self.marking))
        return self._hash

    def __repr__(self):
        return f"TessState(patch={len(self.patch)} triangles, doe={self.doe}, marking={_marking.serialize(self.marking)})"

    def _edge_index(self) -> dict:
        if self._index is None:
            idx: dict = {}
            for tri in self.patch:
                a, b, c = tri
                for x, y, z in ((a, b, c), (b, c, a), (a, c, b)):
                    idx.setdefault(edge_key(x, y), []).append(z)
            self._index = idx
        return self._index

    def left(self, a, b):
        """Third vertex of the triangle to the left of ``a->b`` (which must be an edge)."""
        for z in self._edge_index().get(edge_key(a, b), ()):
            if in_open_arc(z, a, b):
                return z
        return farey_left(a, b)

    def neighbors(self, a, b):
        return self.left(a, b), self.left(b, a)

    def quadrilateral(self) -> dict:
        """Edge keys of the five positions around the doe."""
        a, b = self.doe
        c, d = self.neighbors(a, b)
        return {
            "ac": edge_key(a, c),
            "cb": edge_key(c, b),
            "bd": edge_key(b, d),
            "da": edge_key(d, a),
            "cd": edge_key(c, d),
        }

    def is_base_tesselation(self) -> bool:
        return not self.patch

    def edges_near(self) -> set:
        """Edges of the patch triangles and of the doe's two triangles."""
        out = set()
        for tri in self.patch:
            a, b, c = tri
            out |= {edge_key(a, b), edge_key(b, c), edge_key(a, c)}
        a, b = self.doe
        c, d = self.neighbors(a, b)
        out |= {edge_key(a, b), edge_key(a, c), edge_key(c, b), edge_key(b, d), edge_key(d, a)}
        return out

    def report(self) -> dict:
        return {
            "flipped_patch": sorted(
                ["{" + ",".join(str(v) for v in tri) + "}" for tri in self.patch]
            ),
            "doe": str(self.doe),
            "odd_edges": _marking.serialize(self.marking),
        }

    def unmarked(self) -> "TessState":
        return TessState(self.patch, self.doe, EMPTY)

    def with_marking(self, m) -> "TessState":
        return TessState(self.patch, self.doe, m)


_BASE = TessState()


def apply_beta(s: TessState) -> TessState:
    """Move the doe to the next edge of its left triangle: ``a->b`` (left ``c``) becomes ``c->a``."""
    a, b = s.doe
    c = s.left(a, b)
    return TessState(s.patch, OrientedEdge(c, a), s.marking)


def apply_t(s: TessState) -> TessState:
    return TessState(s.patch, s.doe, s.marking.symmetric_difference((s.doe.key(),)))


def apply_alpha(s: TessState, rule: SpinRule = UNMARKED) -> TessState:
    """Flip the doe; the new doe is the other diagonal, oriented per ``rule``."""
    a, b = s.doe
    c, d = s.neighbors(a, b)
    old_l, old_r = triangle(a, b, c), triangle(a, b, d)
    new_l, new_r = triangle(a, c, d), triangle(b, c, d)
    patch = set(s.patch)
    patch.discard(old_l)
    patch.discard(old_r)
    for tri in (new_l, new_r):
        if not is_farey_triangle(tri):
            patch.add(tri)
    doe_key = edge_key(a, b)
    marked = doe_key in s.marking
    m = set(s.marking)
    m.discard(doe_key)
    pos = {
        "ac": edge_key(a, c),
        "cb": edge_key(c, b),
        "bd": edge_key(b, d),
        "da": edge_key(d, a),
        "cd": edge_key(c, d),
    }
    for p in rule.marked if marked else rule.unmarked:
        m ^= {pos[p]}
    new_doe = OrientedEdge(c, d) if rule.orientation == "cd" else OrientedEdge(d, c)
    return TessState(patch, new_doe, m)


def apply_letter(s: TessState, ch: str, rule: SpinRule = UNMARKED) -> TessState:
    if ch == "a":
        return apply_alpha(s, rule)
    if ch == "b":
        return apply_beta(s)
    if ch == "t":
        return apply_t(s)
    raise ValueError(f"unknown letter {ch!r}")


def apply_word(s: TessState, w: str, rule: SpinRule = UNMARKED) -> TessState:
    """Apply ``w`` right to left."""
    for ch in reversed(w):
        s = apply_letter(s, ch, rule)
    return s


def is_identity(s: TessState) -> bool:
    return not s.patch and s.doe == BASE_DOE and is_trivial(s.marking, s)


def same_class(s1: TessState, s2: TessState) -> bool:
    """Same tesselation and doe, equivalent markings."""
    return (
        s1.patch == s2.patch
        and s1.doe == s2.doe
        and _marking.equivalent(s1.marking, s2.marking, s1)
    )


def evaluate(w: str, rule: SpinRule = UNMARKED, start: TessState | None = None) -> TessState:
    return apply_word(start or _BASE, w, rule)


def is_relator(w: str, rule: SpinRule = UNMARKED) -> bool:
    return is_identity(evaluate(w, rule))


# -- compiled evaluation ----------------------------------------------------
#
# The letters t never change the tesselation or the doe, so along a fixed
# template of alpha/beta letters with optional t-slots the unmarked trajectory
# is the same for every choice of slot exponents.  A compiled template records
# that trajectory once; each evaluation then only replays the marking, held as
# a bitmask over the edges the trajectory touches.

_T_FIXED, _T_SLOT, _ALPHA = 0, 1, 2


class CompiledTemplate:
    """Template of letters and t-slots, pre-run in the unmarked model.

    ``tokens`` is in written order: each item is ``"a"``, ``"b"``, ``"t"`` or an
    int naming a slot variable (``t`` to the power of that variable).
    """

    def __init__(self, tokens, orientation: str = "cd", start: TessState | None = None):
        self.tokens = tuple(tokens)
        self.orientation = orientation
        s = (start or _BASE).unmarked()
        self.edge_ids: dict = {}
        ops = []
        rule = SpinRule(orientation=orientation)
        for tok in reversed(self.tokens):
            if tok == "b":
                s = apply_beta(s)
            elif tok == "t":
                ops.append((_T_FIXED, self._bit(s.doe.key()), None))
            elif tok == "a":
                quad = s.quadrilateral()
                ops.append((_ALPHA, self._bit(s.doe.key()), tuple(self._bit(quad[p]) for p in POSITIONS)))
                s = apply_alpha(s, rule)
            elif isinstance(tok, int):
                ops.append((_T_SLOT, self._bit(s.doe.key()), tok))
            else:
                raise ValueError(f"bad template token {tok!r}")
        self.ops = ops
        self.final = s
        self.closes = not s.patch and s.doe == BASE_DOE
        self.keys = sorted(self.edge_ids, key=self.edge_ids.get)
        self._trivial_cache: dict = {}

    def _bit(self, key) -> int:
        if key not in self.edge_ids:
            self.edge_ids[key] = len(self.edge_ids)
        return 1 << self.edge_ids[key]

    def bind(self, rule: SpinRule) -> list:
        if rule.orientation != self.orientation:
            raise ValueError("rule orientation differs from the compiled trajectory")
        bound = []
        for kind, bit, extra in self.ops:
            if kind == _ALPHA:
                m0 = m1 = 0
                for p, pb in zip(POSITIONS, extra):
                    if p in rule.unmarked:
                        m0 ^= pb
                    if p in rule.marked:
                        m1 ^= pb
                bound.append((kind, bit, (m0, m1)))
            else:
                bound.append((kind, bit, extra))
        return bound

    @staticmethod
    def run(bound: list, eps: int) -> int:
        """Final marking bitmask for slot exponents ``eps`` (bit i = variable i)."""
        m = 0
        for kind, bit, extra in bound:
            if kind == _ALPHA:
                if m & bit:
                    m = (m & ~bit) ^ extra[1]
                else:
                    m ^= extra[0]
            elif kind == _T_FIXED:
                m ^= bit
            elif eps >> extra & 1:
                m ^= bit
        return m

    def marking(self, mask: int) -> frozenset:
        return frozenset(k for i, k in enumerate(self.keys) if mask >> i & 1)

    def trivial(self, mask: int) -> bool:
        hit = self._trivial_cache.get(mask)
        if hit is None:
            hit = is_trivial(self.marking(mask), self.final)
            self._trivial_cache[mask] = hit
        return hit

    def is_identity(self, bound: list, eps: int) -> bool:
        return self.closes and self.trivial(self.run(bound, eps))

    def state(self, bound: list, eps: int) -> TessState:
        return self.final.with_marking(self.marking(self.run(bound, eps)))


def synthesize_alpha_rule(skip=(), rules=None):
    """Search the rule space against the relation constraints (see :mod:`spinmcg.relations`)."""
    from .relations import synthesize_alpha_rule as _search

    return _search(skip=skip, rules=rules)
