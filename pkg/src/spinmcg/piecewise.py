"""Piecewise PSL(2,Z) and SL(2,Z) maps of the circle with rational breakpoints.

The circle is R u {oo} with the increasing cyclic order.  A map is stored as a
cyclically ordered list of pieces ``(start, matrix)``: piece i acts on the arc
from its start to the next piece's start.  A map with no breakpoints is a
single global matrix and is stored with ``start = None``.

``compose(f, g)`` is f after g.  For signed (SL(2,Z)) maps the matrix of the
composite on an arc is ``M_f(g(x)) M_g(x)``, which is the usual cocycle rule.

The characteristic map of a state sends the Farey tesselation with its base
doe to the state's tesselation and doe.  Moves act on the doe intrinsically,
so ``char(u v) = char(v) o char(u)``: words map to compositions in reverse.
:func:`verify_theorem_A_piecewise` checks this on sample words rather than
assuming it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product

from .farey import (
    BASE_DOE,
    FareyError,
    INFINITY,
    Rational,
    ZERO,
    cyclically_increasing,
    farey_left,
    frame_matrix,
    in_closed_arc,
    in_open_arc,
    mat_mul,
    mobius,
    parse_rational,
    rat,
    sort_key,
)
from .spinstate import TessState, apply_word

IDENTITY = (1, 0, 0, 1)
MINUS_IDENTITY = (-1, 0, 0, -1)


def det(m: tuple) -> int:
    a, b, c, d = m
    return a * d - b * c


def mat_inv(m: tuple) -> tuple:
    a, b, c, d = m
    return (d, -b, -c, a)


def normalize_sign(m: tuple) -> tuple:
    """Representative of +-m with first nonzero entry positive."""
    for x in m:
        if x:
            return m if x > 0 else tuple(-y for y in m)
    raise ValueError("zero matrix")


class MoebiusMatrix(tuple):
    """2x2 integer matrix ``(a, b, c, d)`` of determinant 1."""

    def __new__(cls, a, b, c, d, projective: bool = True):
        m = (a, b, c, d)
        if det(m) != 1:
            raise ValueError(f"determinant of {m} is {det(m)}, not 1")
        if projective:
            m = normalize_sign(m)
        return super().__new__(cls, m)


def _interior(p, q) -> Rational:
    """A rational strictly inside the arc from p up to q (whole circle minus p if p == q)."""
    if p is None:
        return ZERO
    if p == q:
        return ZERO if p == INFINITY else INFINITY
    if p == INFINITY:
        return rat(q.p - q.q, q.q)
    if q == INFINITY:
        return rat(p.p + p.q, p.q)
    if sort_key(p) < sort_key(q):
        return rat(p.p * q.q + q.p * p.q, 2 * p.q * q.q)
    return INFINITY


class _PiecewiseBase:
    projective = True

    def __init__(self, pieces):
        """``pieces``: iterable of ``(start, matrix)``; starts distinct, any order."""
        items = []
        for start, m in pieces:
            m = tuple(int(x) for x in m)
            if det(m) != 1:
                raise ValueError(f"determinant of {m} is not 1")
            if self.projective:
                m = normalize_sign(m)
            items.append((start, m))
        if not items:
            raise ValueError("a map needs at least one piece")
        if any(s is None for s, _ in items):
            if len(items) != 1:
                raise ValueError("a global piece cannot have siblings")
            self.pieces = tuple(items)
        else:
            items.sort(key=lambda it: sort_key(it[0]))
            starts = [s for s, _ in items]
            if len(set(starts)) != len(starts):
                raise ValueError("repeated breakpoint")
            self.pieces = tuple(items)

    # -- structure --

    @classmethod
    def constant(cls, m) -> "_PiecewiseBase":
        return cls([(None, m)])

    @classmethod
    def identity(cls):
        return cls.constant(IDENTITY)

    @property
    def breakpoints(self) -> list:
        return [s for s, _ in self.pieces if s is not None]

    def arcs(self):
        """Yield ``(start, end, matrix)``; end is the next start cyclically."""
        n = len(self.pieces)
        for i, (s, m) in enumerate(self.pieces):
            yield s, self.pieces[(i + 1) % n][0], m

    def piece_at(self, x: Rational) -> tuple:
        """Matrix of the piece whose half-open arc [start, next) contains x."""
        if self.pieces[0][0] is None:
            return self.pieces[0][1]
        key = sort_key(x)
        chosen = self.pieces[-1][1]
        for s, m in self.pieces:
            if sort_key(s) <= key:
                chosen = m
            else:
                break
        return chosen

    def __call__(self, x: Rational) -> Rational:
        return mobius(self.piece_at(x), x)

    # -- validity --

    def violations(self) -> list[str]:
        out = []
        if self.pieces[0][0] is None:
            return out
        arcs = list(self.arcs())
        for i, (s, e, m) in enumerate(arcs):
            nxt = arcs[(i + 1) % len(arcs)][2]
            if mobius(m, e) != mobius(nxt, e):
                out.append(f"discontinuous at {e}")
        images = [mobius(m, s) for s, _, m in arcs]
        if len(set(images)) != len(images):
            out.append("not injective on breakpoints")
        elif len(images) >= 3 and not cyclically_increasing(images):
            out.append("breakpoint images out of cyclic order")
        return out

    def validate(self) -> bool:
        return not self.violations()

    # -- algebra --

    def compose(self, g: "_PiecewiseBase") -> "_PiecewiseBase":
        """self after g."""
        cls = type(self)
        points = set(g.breakpoints)
        ginv = g.inverse()
        for b in self.breakpoints:
            points.add(ginv(b))
        if not points:
            return cls.constant(mat_mul(self.piece_at(ZERO), g.piece_at(ZERO))).canonical()
        pts = sorted(points, key=sort_key)
        pieces = []
        for i, s in enumerate(pts):
            e = pts[(i + 1) % len(pts)]
            x = _interior(s, e)
            mg = g.piece_at(x)
            mf = self.piece_at(mobius(mg, x))
            pieces.append((s, mat_mul(mf, mg)))
        return cls(pieces).canonical()

    def __matmul__(self, other):
        return self.compose(other)

    def inverse(self) -> "_PiecewiseBase":
        cls = type(self)
        if self.pieces[0][0] is None:
            return cls.constant(mat_inv(self.pieces[0][1]))
        return cls([(mobius(m, s), mat_inv(m)) for s, _, m in self.arcs()]).canonical()

    def canonical(self) -> "_PiecewiseBase":
        """Merge neighbouring pieces with equal matrices."""
        cls = type(self)
        if self.pieces[0][0] is None:
            return self
        arcs = list(self.arcs())
        keep = [s for i, (s, _, m) in enumerate(arcs) if m != arcs[i - 1][2]]
        if not keep:
            return cls.constant(arcs[0][2])
        return cls([(s, self.piece_at(s)) for s in keep])

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.canonical().pieces == other.canonical().pieces

    def __hash__(self):
        return hash(self.canonical().pieces)

    def is_identity(self) -> bool:
        return self == type(self).identity()

    def power(self, k: int):
        out = type(self).identity()
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = base.compose(out)
        return out

    def __len__(self):
        return len(self.pieces)

    # -- serialization --

    def to_list(self) -> list:
        out = []
        for s, e, m in self.arcs():
            arc = None if s is None else [str(s), str(e)]
            out.append({"arc": arc, "matrix": [[m[0], m[1]], [m[2], m[3]]]})
        return out

    def to_json(self) -> str:
        return json.dumps(self.canonical().to_list())

    @classmethod
    def from_list(cls, items: list):
        pieces = []
        for it in items:
            (a, b), (c, d) = it["matrix"]
            start = None if it["arc"] is None else parse_rational(it["arc"][0])
            pieces.append((start, (a, b, c, d)))
        return cls(pieces)

    @classmethod
    def from_json(cls, text: str):
        return cls.from_list(json.loads(text))

    def __repr__(self):
        parts = []
        for s, e, m in self.arcs():
            arc = "circle" if s is None else f"[{s},{e}]"
            parts.append(f"{arc}:{m}")
        return f"{type(self).__name__}(" + ", ".join(parts) + ")"


class PiecewiseMoebiusMap(_PiecewiseBase):
    projective = True


class PiecewiseSL2Map(_PiecewiseBase):
    projective = False

    def projectivize(self) -> PiecewiseMoebiusMap:
        return PiecewiseMoebiusMap(self.pieces).canonical()

    def violations(self) -> list[str]:
        return self.projectivize().violations()


def compose(f, g):
    return f.compose(g)


# -- characteristic maps --------------------------------------------------------

def _far_side_clear(s: TessState, u, v) -> bool:
    """No patch triangle lies on the left of ``u->v``."""
    for tri in s.patch:
        if all(in_closed_arc(x, u, v) for x in tri):
            return False
    return True


def char_map(s: TessState) -> PiecewiseMoebiusMap:
    """The piecewise PSL(2,Z) map taking (Farey, base doe) to (s, s.doe); markings ignored."""
    pieces = []
    stack = [(BASE_DOE, s.doe), (BASE_DOE.reversed(), s.doe.reversed())]
    budget = 4 * len(s.patch) + 8
    while stack:
        (a, b), (u, v) = stack.pop()
        if _far_side_clear(s, u, v):
            try:
                m = mat_mul(frame_matrix(u, v), mat_inv(frame_matrix(a, b)))
            except FareyError as exc:
                raise FareyError(f"state is not reachable by flips: {exc}") from None
            pieces.append((a, m))
            continue
        budget -= 1
        if budget < 0:
            raise FareyError("patch does not close up; state is malformed")
        c = farey_left(a, b)
        w = s.left(u, v)
        stack.append(((a, c), (u, w)))
        stack.append(((c, b), (w, v)))
    f = PiecewiseMoebiusMap(pieces).canonical()
    bad = f.violations()
    if bad:
        raise FareyError(f"characteristic map is not a homeomorphism: {bad}")
    return f


def char_map_of_word(w: str) -> PiecewiseMoebiusMap:
    return char_map(apply_word(TessState.base(), w))


GENERATOR_MAPS: dict = {}


def generator_map(ch: str) -> PiecewiseMoebiusMap:
    if ch not in GENERATOR_MAPS:
        if ch not in "ab":
            raise ValueError(f"no piecewise map for letter {ch!r}")
        GENERATOR_MAPS[ch] = char_map_of_word(ch)
    return GENERATOR_MAPS[ch]


def word_map(w: str, maps=None) -> _PiecewiseBase:
    """Composite of generator maps for ``w``: char(w1 ... wn) = char(wn) o ... o char(w1)."""
    maps = maps or {ch: generator_map(ch) for ch in set(w)}
    out = None
    for ch in w:
        f = maps[ch]
        out = f if out is None else f.compose(out)
    if out is None:
        cls = type(next(iter(maps.values()))) if maps else PiecewiseMoebiusMap
        return cls.identity()
    return out


@dataclass
class PiecewiseReport:
    checks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": self.checks, "details": self.details}


SAMPLE_WORDS = ("ab", "ba", "aab", "bab", "abba", "aabab", "babaa", "abbab", "baabba")


def verify_theorem_A_piecewise() -> PiecewiseReport:
    from .ppslz import THEOREM_A_RELATORS

    rep = PiecewiseReport()
    direction = all(word_map(w) == char_map_of_word(w) for w in SAMPLE_WORDS)
    rep.checks["char(uv) = char(v) o char(u) on samples"] = direction
    rep.checks["generators valid"] = generator_map("a").validate() and generator_map("b").validate()
    for name, w in THEOREM_A_RELATORS.items():
        rep.checks[name] = word_map(w).is_identity()
    rep.details["alpha"] = generator_map("a").to_list()
    rep.details["beta"] = generator_map("b").to_list()
    return rep


# -- exploratory spin lift -------------------------------------------------------

def _signed_variants(f: PiecewiseMoebiusMap) -> list[PiecewiseSL2Map]:
    out = []
    for signs in product((1, -1), repeat=len(f.pieces)):
        out.append(PiecewiseSL2Map([(s, tuple(sg * x for x in m)) for (s, m), sg in zip(f.pieces, signs)]))
    return out


def t_candidates() -> dict:
    """-1 on one of the two arcs cut out by the doe's endpoints, +1 on the other."""
    return {
        "-I on [0,oo]": PiecewiseSL2Map([(ZERO, MINUS_IDENTITY), (INFINITY, IDENTITY)]),
        "-I on [oo,0]": PiecewiseSL2Map([(ZERO, IDENTITY), (INFINITY, MINUS_IDENTITY)]),
    }


def spin_probe_relators() -> dict:
    from .relations import DEGENERACY_IDENTITIES, PENTAGON_WORDS, POWER_LAWS

    return {**POWER_LAWS, **DEGENERACY_IDENTITIES, **PENTAGON_WORDS}


def spin_lift_probe() -> PiecewiseReport:
    """Score signed lifts of a, b with each candidate t against the relators.

    Relators are compared with the identity map exactly (signs included).
    """
    rep = PiecewiseReport()
    a_lifts = _signed_variants(generator_map("a"))
    b_lifts = _signed_variants(generator_map("b"))
    minus = PiecewiseSL2Map.constant(MINUS_IDENTITY)
    rep.checks["-I central"] = all(
        minus.compose(f) == f.compose(minus) for f in a_lifts[:2] + b_lifts[:1]
    )
    rep.checks["candidate t squares to 1"] = all(
        t.compose(t).is_identity() for t in t_candidates().values()
    )
    rep.checks["lifts project to the generators"] = all(
        f.projectivize() == generator_map("a") for f in a_lifts
    )
    best = None
    for (tname, t), ai, bi in product(t_candidates().items(), range(len(a_lifts)), range(len(b_lifts))):
        maps = {"a": a_lifts[ai], "b": b_lifts[bi], "t": t}
        score = {name: word_map(w, maps).is_identity() for name, w in spin_probe_relators().items()}
        n = sum(score.values())
        if best is None or n > best[0]:
            best = (n, tname, maps, score)
    n, tname, maps, score = best
    rep.details["best"] = {
        "t": tname,
        "alpha": maps["a"].to_list(),
        "beta": maps["b"].to_list(),
        "holds": n,
        "of": len(score),
        "scorecard": score,
    }
    return rep
