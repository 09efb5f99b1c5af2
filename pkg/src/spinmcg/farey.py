"""Exact combinatorics of the Farey tesselation.

Vertices are reduced fractions ``p/q`` with ``q >= 0``; the point at infinity
is ``1/0``.  The circle is identified with R u {oo} and traversed in the
direction of increasing real value (wrapping through ``1/0``).

Conventions used throughout the package:

* the base distinguished oriented edge (doe) runs from ``0/1`` to ``1/0``;
* the triangle to the *left* of an oriented edge ``a->b`` is the one whose
  third vertex lies in the open arc from ``a`` to ``b`` in increasing order.
  So the base doe has ``{0, 1, oo}`` on its left and ``{-1, 0, oo}`` on its
  right.
"""

from __future__ import annotations

from math import gcd
from typing import NamedTuple

INT_LIMIT = 2**63 - 1


class FareyError(ValueError):
    """Raised for malformed input or for edges outside the Farey tesselation."""


class Rational(NamedTuple):
    p: int
    q: int

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

    @property
    def is_infinite(self) -> bool:
        return self.q == 0


def rat(p: int, q: int = 1) -> Rational:
    """Reduced, sign-normalized rational; ``rat(k, 0)`` is infinity for any k != 0."""
    if q == 0:
        if p == 0:
            raise FareyError("0/0 is not a point of the circle")
        return INFINITY
    if q < 0:
        p, q = -p, -q
    g = gcd(p, q)
    if g != 1:
        p //= g
        q //= g
    if abs(p) > INT_LIMIT or q > INT_LIMIT:
        raise OverflowError(f"rational {p}/{q} exceeds 64-bit range")
    return Rational(p, q)


INFINITY = Rational(1, 0)
ZERO = Rational(0, 1)
ONE = Rational(1, 1)
MINUS_ONE = Rational(-1, 1)


def parse_rational(text: str) -> Rational:
    text = text.strip()
    if text in ("oo", "inf", "∞"):
        return INFINITY
    try:
        if "/" in text:
            p, q = text.split("/")
            return rat(int(p), int(q))
        return rat(int(text), 1)
    except ValueError as exc:
        raise FareyError(f"cannot parse rational {text!r}") from exc


# -- real / cyclic order --------------------------------------------------

def less(x: Rational, y: Rational) -> bool:
    """Real order on R u {oo} with infinity as the largest element."""
    if y.q == 0:
        return x.q != 0
    if x.q == 0:
        return False
    return x.p * y.q < y.p * x.q


def sort_key(x: Rational):
    """Key for sorting by real value (infinity last).  Exact via Fraction."""
    from fractions import Fraction

    if x.q == 0:
        return (1, Fraction(0))
    return (0, Fraction(x.p, x.q))


def in_open_arc(x: Rational, a: Rational, b: Rational) -> bool:
    """True iff ``x`` lies strictly inside the arc running from ``a`` up to ``b``."""
    if x == a or x == b:
        return False
    if less(a, b):
        return less(a, x) and less(x, b)
    return less(a, x) or less(x, b)


def in_closed_arc(x: Rational, a: Rational, b: Rational) -> bool:
    return x == a or x == b or in_open_arc(x, a, b)


def cyclically_increasing(points) -> bool:
    """True iff the sequence is strictly increasing around the circle, going at most once round."""
    pts = list(points)
    n = len(pts)
    if len(set(pts)) != n:
        return False
    if n <= 2:
        return True
    descents = sum(1 for i in range(n) if not less(pts[i], pts[(i + 1) % n]))
    return descents == 1


# -- edges and triangles ---------------------------------------------------

class OrientedEdge(NamedTuple):
    tail: Rational
    head: Rational

    def reversed(self) -> "OrientedEdge":
        return OrientedEdge(self.head, self.tail)

    def key(self) -> tuple:
        return edge_key(self.tail, self.head)

    def __str__(self) -> str:
        return f"{self.tail}->{self.head}"


BASE_DOE = OrientedEdge(ZERO, INFINITY)


def edge_key(a: Rational, b: Rational) -> tuple:
    """Unordered edge as a canonically ordered pair."""
    if a == b:
        raise FareyError(f"degenerate edge {a}-{b}")
    return (a, b) if a < b else (b, a)


def edge_str(e: tuple) -> str:
    """Unordered edge as ``"p/q|r/s"`` with the endpoints in increasing real order."""
    a, b = sorted(e, key=sort_key)
    return f"{a}|{b}"


def parse_edge(text: str) -> tuple:
    try:
        a, b = text.split("|")
    except ValueError as exc:
        raise FareyError(f"cannot parse edge {text!r}") from exc
    return edge_key(parse_rational(a), parse_rational(b))


def parse_oriented_edge(text: str) -> OrientedEdge:
    try:
        a, b = text.split("->")
    except ValueError as exc:
        raise FareyError(f"cannot parse oriented edge {text!r}") from exc
    return OrientedEdge(parse_rational(a), parse_rational(b))


def triangle(a: Rational, b: Rational, c: Rational) -> tuple:
    """Canonical (sorted) vertex triple."""
    if len({a, b, c}) != 3:
        raise FareyError("triangle vertices must be distinct")
    return tuple(sorted((a, b, c)))


def triangle_sides(tri: tuple) -> tuple:
    a, b, c = tri
    return (edge_key(a, b), edge_key(b, c), edge_key(a, c))


def determinant(a: Rational, b: Rational) -> int:
    return a.p * b.q - a.q * b.p


def is_farey_edge(a: Rational, b: Rational) -> bool:
    return abs(determinant(a, b)) == 1


def is_farey_triangle(tri: tuple) -> bool:
    a, b, c = tri
    return is_farey_edge(a, b) and is_farey_edge(b, c) and is_farey_edge(a, c)


def farey_neighbors(a: Rational, b: Rational) -> tuple[Rational, Rational]:
    """Third vertices of the two Farey triangles on the edge ``{a, b}``: (mediant, anti-mediant)."""
    if a == b or not is_farey_edge(a, b):
        raise FareyError(f"{a}-{b} is not a Farey edge")
    return rat(a.p + b.p, a.q + b.q), rat(a.p - b.p, a.q - b.q)


def farey_left(a: Rational, b: Rational) -> Rational:
    """Third vertex of the Farey triangle to the left of ``a->b``."""
    m, n = farey_neighbors(a, b)
    return m if in_open_arc(m, a, b) else n


def farey_right(a: Rational, b: Rational) -> Rational:
    return farey_left(b, a)


def frame_matrix(a: Rational, b: Rational) -> tuple:
    """The PSL(2,Z) matrix taking ``0->oo`` (left vertex 1) to the Farey edge ``a->b`` (left vertex)."""
    if not is_farey_edge(a, b):
        raise FareyError(f"{a}-{b} is not a Farey edge")
    # columns: image of oo is b, image of 0 is a
    if b.p * a.q - a.p * b.q == 1:
        return (b.p, a.p, b.q, a.q)
    return (b.p, -a.p, b.q, -a.q)


# -- addressing oriented edges by words in alpha^2 and beta ----------------

# Matrices of the doe moves on the base doe.  alpha^2 reverses the doe and
# beta rotates it inside its left triangle {0, 1, oo}.
A2_MATRIX = (0, -1, 1, 0)
B_MATRIX = (0, 1, -1, 1)  # z -> 1/(1-z): 0 -> 1 -> oo -> 0


def mat_mul(m: tuple, n: tuple) -> tuple:
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def mobius(m: tuple, x: Rational) -> Rational:
    a, b, c, d = m
    return rat(a * x.p + b * x.q, c * x.p + d * x.q)


class EdgeWord(NamedTuple):
    """Reduced word ``[a2] b^e_n a2 ... a2 b^e_1`` addressing an oriented Farey edge.

    ``exponents`` lists ``(e_n, ..., e_1)`` with ``e_j in {1, 2}`` for ``j > 1`` and
    ``e_1 in {0, 1, 2}``; the empty tuple is the doe itself.  ``lead_a2`` adds
    a leftmost ``a2`` (needed to reach the reversal of an edge).
    """

    exponents: tuple = ()
    lead_a2: bool = False

    def validate(self) -> None:
        ex = self.exponents
        if any(e not in (1, 2) for e in ex[:-1]) or (ex and ex[-1] not in (0, 1, 2)):
            raise FareyError(f"malformed edge word exponents {ex}")
        if len(ex) == 1 and ex[0] == 0:
            raise FareyError("use the empty word for the doe")

    @property
    def n(self) -> int:
        return len(self.exponents)

    def letters(self) -> str:
        """The word over {a, b}, leftmost letter applied last."""
        parts = ["aa"] if self.lead_a2 else []
        for i, e in enumerate(self.exponents):
            if i:
                parts.append("aa")
            parts.append("b" * e)
        return "".join(parts)

    def __str__(self) -> str:
        toks = ["A2"] if self.lead_a2 else []
        for i, e in enumerate(self.exponents):
            if i:
                toks.append("A2")
            if e:
                toks.append("B" * e)
        return " ".join(toks)


def parse_edge_word(text: str) -> EdgeWord:
    toks = text.split()
    lead = False
    if toks and toks[0] == "A2":
        lead = True
        toks = toks[1:]
    exps: list[int] = []
    expect_b = True
    for tok in toks:
        if tok == "A2":
            if expect_b:
                exps.append(0)
            expect_b = True
            continue
        if tok not in ("B", "BB") or not expect_b:
            raise FareyError(f"malformed edge word {text!r}")
        exps.append(len(tok))
        expect_b = False
    if toks and toks[-1] == "A2":
        exps.append(0)
    w = EdgeWord(tuple(exps), lead)
    # a bare "A2" is the reversed doe
    if not exps and lead:
        return w
    w.validate()
    if any(e == 0 for e in exps[:-1]):
        raise FareyError(f"malformed edge word {text!r}")
    return w


def edge_word_matrix(w: EdgeWord) -> tuple:
    """Matrix M with ``M(base doe)`` = the doe after applying the word as doe moves.

    Letters act right to left, so the matrix product runs in reverse letter order.
    """
    m = (1, 0, 0, 1)
    for tok in reversed(str(w).split()):
        if tok == "A2":
            m = mat_mul(m, A2_MATRIX)
        else:
            for _ in tok:
                m = mat_mul(m, B_MATRIX)
    return m


def edge_from_word(w: EdgeWord) -> OrientedEdge:
    """The oriented Farey edge reached from the base doe by the doe moves of ``w``."""
    w.validate()
    m = edge_word_matrix(w)
    return OrientedEdge(mobius(m, BASE_DOE.tail), mobius(m, BASE_DOE.head))


def _base_on_left(e: OrientedEdge) -> bool:
    a, b = e
    return in_closed_arc(ZERO, a, b) and in_closed_arc(INFINITY, a, b)


def word_from_edge(e: OrientedEdge) -> EdgeWord:
    """Inverse of :func:`edge_from_word`, by descent in the dual tree."""
    a, b = e
    if a == b or not is_farey_edge(a, b):
        raise FareyError(f"{e} is not an oriented Farey edge")
    base_key = BASE_DOE.key()
    letters: list[str] = []  # leftmost (last applied) first
    cur = OrientedEdge(a, b)
    while cur != BASE_DOE:
        if cur.key() == base_key or not _base_on_left(cur):
            letters.append("aa")
            cur = cur.reversed()
            continue
        # the last beta-block rotated the doe inside the left triangle of cur
        x, y = cur
        z = farey_left(x, y)
        if in_closed_arc(ZERO, x, z) and in_closed_arc(INFINITY, x, z):
            letters.append("bb")
            cur = OrientedEdge(z, x)
        else:
            letters.append("b")
            cur = OrientedEdge(y, z)
    return _word_to_edge_word("".join(letters))


def _word_to_edge_word(word: str) -> EdgeWord:
    lead = word.startswith("aa")
    body = word[2:] if lead else word
    exps: list[int] = []
    for i, block in enumerate(body.split("aa")):
        if i and not block and i != len(body.split("aa")) - 1:
            raise FareyError(f"unreduced address {word}")
        exps.append(len(block))
    if exps == [0]:
        exps = []
    return EdgeWord(tuple(exps), lead)
