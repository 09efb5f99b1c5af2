"""Relation families with t-insertion slots, and their GF(2) solution systems.

A family is a word in ``a``/``b`` with slots ``t^x`` for binary variables x,
written as a template such as ``"{t4}a{t3}a{t2}a{t1}a"``.  Its solution set
under a spin rule is the set of exponent vectors whose instantiated word acts
as the identity.  Exponent vectors are ints with bit i holding variable i of
``family.variables``.

Enumeration compiles the template once (see
:class:`spinmcg.spinstate.CompiledTemplate`), so the 2**19 instantiations of
the largest family take a few seconds per worker.
"""

from __future__ import annotations

import json
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product

from . import gf2
from .spinstate import (
    POSITIONS,
    CompiledTemplate,
    SpinRule,
    TessState,
    apply_alpha,
    evaluate,
    is_relator,
    same_class,
)
from .marking import apply_triangle_move, edge_triangles
from .words import ORDERS, commutator, parse_word

# The synthesized rule (with the pentagon family left out of the search; see
# the README).  Other rules in its class act identically on marking classes.
DEFAULT_RULE = SpinRule(frozenset({"ac"}), frozenset({"cb"}), "cd")


# -- linear systems -----------------------------------------------------------

class LinearSystemGF2:
    """Homogeneous system over GF(2); each row is a bitset over ``variables``."""

    def __init__(self, variables, rows=()):
        self.variables = tuple(variables)
        self.rows = [int(r) for r in rows]
        if any(r >> len(self.variables) for r in self.rows):
            raise ValueError("row mentions a variable outside the system")

    @classmethod
    def from_equations(cls, variables, equations) -> "LinearSystemGF2":
        """Parse equations like ``"r1+r2 = s1+s2"`` (``0`` allowed on either side)."""
        variables = tuple(variables)
        index = {v: i for i, v in enumerate(variables)}
        rows = []
        for eq in equations:
            row = 0
            for side in eq.split("="):
                for term in side.split("+"):
                    term = term.strip()
                    if term in ("", "0"):
                        continue
                    if term not in index:
                        raise ValueError(f"unknown variable {term!r} in {eq!r}")
                    row ^= 1 << index[term]
            rows.append(row)
        return cls(variables, rows)

    @property
    def rank(self) -> int:
        return gf2.rank(self.rows)

    def satisfied_by(self, x: int) -> bool:
        return all(bin(r & x).count("1") % 2 == 0 for r in self.rows)

    def kernel(self) -> "SolutionSet":
        return SolutionSet(self.variables, gf2.kernel(self.rows, len(self.variables)))

    def equations(self) -> list[str]:
        out = []
        for r in self.rows:
            names = [v for i, v in enumerate(self.variables) if r >> i & 1]
            out.append(" + ".join(names) + " = 0")
        return out


def kernel(sys: LinearSystemGF2) -> "SolutionSet":
    return sys.kernel()


@dataclass(frozen=True)
class SolutionSet:
    variables: tuple
    vectors: frozenset

    def __init__(self, variables, vectors):
        object.__setattr__(self, "variables", tuple(variables))
        object.__setattr__(self, "vectors", frozenset(vectors))

    def __len__(self):
        return len(self.vectors)

    def __contains__(self, x):
        return x in self.vectors

    def __iter__(self):
        return iter(self.sorted())

    def sorted(self) -> list[int]:
        """Vectors in lexicographic order of their exponent tuples."""
        return sorted(self.vectors, key=self.as_tuple)

    def as_tuple(self, x: int) -> tuple:
        return tuple(x >> i & 1 for i in range(len(self.variables)))

    def as_dict(self, x: int) -> dict:
        return {v: x >> i & 1 for i, v in enumerate(self.variables)}

    def is_subspace(self) -> bool:
        if 0 not in self.vectors:
            return False
        basis = [r for _, r in gf2.echelon(list(self.vectors))]
        return len(self.vectors) == 2 ** len(basis)

    def rank(self) -> int:
        """Number of independent equations cutting out the span of the set."""
        return len(self.variables) - gf2.rank(list(self.vectors))


# -- families -----------------------------------------------------------------

_TOKEN = re.compile(r"\{(\w+)\}|([abt])")


@dataclass(frozen=True)
class RelationFamily:
    name: str
    template: str
    variables: tuple
    equations: tuple = ()
    description: str = ""

    def __post_init__(self):
        used = [m.group(1) for m in _TOKEN.finditer(self.template) if m.group(1)]
        if sorted(used) != sorted(self.variables):
            raise ValueError(f"{self.name}: slots {used} do not match variables {self.variables}")

    @property
    def expected(self) -> LinearSystemGF2:
        return LinearSystemGF2.from_equations(self.variables, self.equations)

    @property
    def base_word(self) -> str:
        return "".join(m.group(2) for m in _TOKEN.finditer(self.template) if m.group(2))

    def tokens(self) -> list:
        index = {v: i for i, v in enumerate(self.variables)}
        out = []
        for m in _TOKEN.finditer(self.template.replace(" ", "")):
            out.append(index[m.group(1)] if m.group(1) else m.group(2))
        return out

    def instantiate(self, x: int) -> str:
        out = []
        for tok in self.tokens():
            if isinstance(tok, int):
                out.append("t" * (x >> tok & 1))
            else:
                out.append(tok)
        return "".join(out)


def _vars(*groups):
    out = []
    for prefix, idx in groups:
        out.extend(f"{prefix}{i}" for i in idx)
    return tuple(out)


ALPHA_FAMILY = RelationFamily(
    "alpha",
    "{t4}a{t3}a{t2}a{t1}a",
    _vars(("t", range(1, 5))),
    ("t1 = t3", "t2 = t4"),
    "t-insertions in a^4",
)

PENTAGON_FAMILY = RelationFamily(
    "pentagon",
    "bab{t4}ab{t3}ab{t2}ab{t1}a{t0}",
    _vars(("t", range(0, 5))),
    ("t1 = t2", "t2 = t3", "t4 = t0 + t3"),
    "reduced t-insertions in (ba)^5",
)

DEGENERACY_FAMILY = RelationFamily(
    "degeneracy",
    "{t5}b{s5}a{t4}b{s4}b{t3}b{s3}a{t2}a{s2}a{t1}b{s1}b",
    _vars(("s", range(1, 6)), ("t", range(1, 6))),
    ("t1 + t2 = s1 + s5", "t3 + t4 = s2 + s3", "t3 + t5 = s1 + s4"),
    "t-insertions in (bab)(bbaaabb)",
)

FIRST_COMMUTATOR_FAMILY = RelationFamily(
    "first-commutator",
    "{r0}bab a{r4}a bab a{r3}a b{s4}b{s3}aaa{s2}b{s1}b a{r2}a b{t4}b{t3}aaa{t2}b{t1}b a{r1}a",
    _vars(("r", range(0, 5)), ("s", range(1, 5)), ("t", range(1, 5))),
    (
        "r0 + r1 + r2 + r3 + r4 = s1 + s3 + t1 + t3",
        "r1 + r2 = s1 + s2",
        "r2 + r3 = t3 + t4",
        "r3 + r4 = s3 + s4",
        "r1 + r4 = t1 + t2",
    ),
    "reduced t-insertions in [bab, aababaa]",
)

SECOND_COMMUTATOR_FAMILY = RelationFamily(
    "second-commutator",
    "{r0}bab a{r8}a b{s5}b a{r7}a bab a{r6}a b a{r5}a b{s4}b{s3}aaa{s2}b{s1}b a{r4}a"
    " b{t5}b a{r3}a b{t4}b{t3}aaa{t2}b{t1}b a{r2}a b a{r1}a",
    _vars(("r", range(0, 9)), ("s", range(1, 6)), ("t", range(1, 6))),
    (
        "r0 = s1 + s3 + s5 + t1 + t2 + t3 + t4 + t5",
        "r1 + r4 = s1 + s2",
        "r2 + r7 = t1 + t2",
        "r5 + r8 = s3 + s4",
        "r3 + r6 = t3 + t4",
        "r1 + r2 + r3 + r4 + r5 + r6 + r7 + r8 = s5 + t1 + t3 + t5",
    ),
    "reduced t-insertions in [bab, aabbaababaabaa]",
)

FAMILIES = {
    f.name: f
    for f in (
        ALPHA_FAMILY,
        PENTAGON_FAMILY,
        DEGENERACY_FAMILY,
        FIRST_COMMUTATOR_FAMILY,
        SECOND_COMMUTATOR_FAMILY,
    )
}

# The families checked by check-relations; the alpha family only constrains
# the rule search.
MAIN_FAMILIES = ("pentagon", "degeneracy", "first-commutator", "second-commutator")


def get_family(name: str) -> RelationFamily:
    try:
        return FAMILIES[name]
    except KeyError:
        raise KeyError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}") from None


def enumerate_insertions(f: RelationFamily):
    """All ``(eps, word)`` pairs in lexicographic order of the exponent tuple."""
    k = len(f.variables)
    for eps in product((0, 1), repeat=k):
        x = sum(e << i for i, e in enumerate(eps))
        yield eps, f.instantiate(x)


# -- solution sets ------------------------------------------------------------

@lru_cache(maxsize=None)
def _compiled(name: str, orientation: str) -> CompiledTemplate:
    return CompiledTemplate(get_family(name).tokens(), orientation)


def _scan(args) -> list[int]:
    name, rule, lo, hi = args
    ct = _compiled(name, rule.orientation)
    if not ct.closes:
        return []
    bound = ct.bind(rule)
    return [x for x in range(lo, hi) if ct.is_identity(bound, x)]


def solution_set(f: RelationFamily, rule: SpinRule = DEFAULT_RULE, workers: int = 1) -> SolutionSet:
    """Exponent vectors whose instantiation is the identity under ``rule``."""
    total = 1 << len(f.variables)
    if f.name not in FAMILIES or FAMILIES[f.name] is not f:
        ct = CompiledTemplate(f.tokens(), rule.orientation)
        bound = ct.bind(rule)
        found = [x for x in range(total) if ct.is_identity(bound, x)] if ct.closes else []
        return SolutionSet(f.variables, found)
    if workers <= 1 or total < 4096:
        return SolutionSet(f.variables, _scan((f.name, rule, 0, total)))
    chunks = max(workers * 4, 1)
    step = -(-total // chunks)
    jobs = [(f.name, rule, lo, min(lo + step, total)) for lo in range(0, total, step)]
    found: list[int] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_scan, jobs):
            found.extend(part)
    return SolutionSet(f.variables, found)


@dataclass
class FamilyReport:
    family: str
    rule: str
    variables: int
    rank: int
    expected: int
    found: int
    missing: list = field(default_factory=list)  # in the kernel, not relators
    extra: list = field(default_factory=list)  # relators outside the kernel
    found_rank: int | None = None

    @property
    def ok(self) -> bool:
        return not self.missing and not self.extra

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "rule": self.rule,
            "variables": self.variables,
            "expected_rank": self.rank,
            "expected_solutions": self.expected,
            "found_solutions": self.found,
            "found_rank": self.found_rank,
            "ok": self.ok,
            "missing": self.missing,
            "extra": self.extra,
        }


def verify_family(f: RelationFamily, rule: SpinRule = DEFAULT_RULE, workers: int = 1,
                  max_listed: int = 20) -> FamilyReport:
    """Compare the enumerated solution set with the kernel of the expected system."""
    sys = f.expected
    want = sys.kernel()
    got = solution_set(f, rule, workers)
    fmt = lambda xs: [got.as_dict(x) for x in sorted(xs, key=got.as_tuple)[:max_listed]]
    return FamilyReport(
        family=f.name,
        rule=str(rule),
        variables=len(f.variables),
        rank=sys.rank,
        expected=len(want),
        found=len(got),
        missing=fmt(want.vectors - got.vectors),
        extra=fmt(got.vectors - want.vectors),
        found_rank=got.rank() if got.is_subspace() else None,
    )


# -- degeneracy catalog -------------------------------------------------------

def _T(x, y, z) -> bool:
    return (x and y) or (y and z) or (z and x)


def _catalog_predicates():
    """Predicates selecting the nonzero solutions with K <= 5 nonzero variables, by K."""
    return {
        2: [
            ("s4&t5", lambda v: v["s4"] and v["t5"]),
            ("T(s2,s3,t4)", lambda v: _T(v["s2"], v["s3"], v["t4"])),
            ("T(t1,t2,s5)", lambda v: _T(v["t1"], v["t2"], v["s5"])),
        ],
        3: [
            ("(i) s1&(s4|t5)&(t1|t2|s5)",
             lambda v: v["s1"] and (v["s4"] or v["t5"]) and (v["t1"] or v["t2"] or v["s5"])),
            ("t3&(s4|t5)&(s2|s3|t4)",
             lambda v: v["t3"] and (v["s4"] or v["t5"]) and (v["s2"] or v["s3"] or v["t4"])),
        ],
        4: [
            ("T(s2,s3,t4)&T(t1,t2,s5)",
             lambda v: _T(v["s2"], v["s3"], v["t4"]) and _T(v["t1"], v["t2"], v["s5"])),
            ("(ii) s4&t5&[T(t1,t2,s5)|T(s2,s3,t4)]",
             lambda v: v["s4"] and v["t5"] and (_T(v["t1"], v["t2"], v["s5"]) or _T(v["s2"], v["s3"], v["t4"]))),
            ("(iii) s1&t3&(s2|s3|t4)&(t1|t2|s5)",
             lambda v: v["s1"] and v["t3"] and (v["s2"] or v["s3"] or v["t4"]) and (v["t1"] or v["t2"] or v["s5"])),
        ],
        5: [
            ("s1&(s4|t5)&(t1&t2&s5)",
             lambda v: v["s1"] and (v["s4"] or v["t5"]) and (v["t1"] and v["t2"] and v["s5"])),
            ("t3&(s4|t5)&(s2&s3&t4)",
             lambda v: v["t3"] and (v["s4"] or v["t5"]) and (v["s2"] and v["s3"] and v["t4"])),
            ("s1&(s4|t5)&(t1|t2|s5)&T(s2,s3,t4)",
             lambda v: v["s1"] and (v["s4"] or v["t5"]) and (v["t1"] or v["t2"] or v["s5"]) and _T(v["s2"], v["s3"], v["t4"])),
            ("t3&(s4|t5)&(s2|s3|t4)&T(t1,t2,s5)",
             lambda v: v["t3"] and (v["s4"] or v["t5"]) and (v["s2"] or v["s3"] or v["t4"]) and _T(v["t1"], v["t2"], v["s5"])),
        ],
    }


def degeneracy_catalog() -> dict:
    """The Boolean catalog: ``{predicate label: set of vectors}`` plus the full set under ``"all"``.

    Each predicate is applied to vectors with exactly K nonzero variables; the
    union is closed off with complements and the zero vector.
    """
    f = DEGENERACY_FAMILY
    names = f.variables
    n = len(names)
    full = (1 << n) - 1
    by_label: dict = {}
    small: set = set()
    for k, preds in _catalog_predicates().items():
        for idx in combinations(range(n), k):
            x = sum(1 << i for i in idx)
            v = {name: bool(x >> i & 1) for i, name in enumerate(names)}
            for label, pred in preds:
                if pred(v):
                    by_label.setdefault(f"K={k} {label}", set()).add(x)
                    small.add(x)
    everything = {0, full} | small | {full ^ x for x in small}
    by_label["all"] = everything
    return by_label


@dataclass
class CatalogReport:
    catalog_size: int
    solution_count: int
    kernel_count: int
    closed_under_complement: bool
    only_in_catalog: list
    only_in_solutions: list

    @property
    def ok(self) -> bool:
        return not self.only_in_catalog and not self.only_in_solutions and self.catalog_size == self.kernel_count

    def to_dict(self) -> dict:
        return {**self.__dict__, "ok": self.ok}


def degeneracy_catalog_check(rule: SpinRule = DEFAULT_RULE) -> CatalogReport:
    f = DEGENERACY_FAMILY
    cat = degeneracy_catalog()["all"]
    sols = solution_set(f, rule).vectors
    ker = f.expected.kernel().vectors
    full = (1 << len(f.variables)) - 1
    show = lambda xs: [SolutionSet(f.variables, ()).as_dict(x) for x in sorted(xs)]
    return CatalogReport(
        catalog_size=len(cat),
        solution_count=len(sols),
        kernel_count=len(ker),
        closed_under_complement=all(full ^ x in cat for x in cat),
        only_in_catalog=show(cat - sols),
        only_in_solutions=show(sols - cat),
    )


# -- explicit relators --------------------------------------------------------

def _w(text: str) -> str:
    return parse_word(text)


POWER_LAWS = {
    "t^2": _w("t^2"),
    "b^3": _w("b^3"),
    "a^4": _w("a^4"),
    "(tb)^3": _w("(tb)^3"),
    "(ta)^4": _w("(ta)^4"),
    "[t,a^2]": _w("[t,a^2]"),
    "[t,ata]": _w("[t,ata]"),
}

PENTAGON_WORDS = {
    "(ba)^5": _w("(ba)^5"),
    "(btat)^5": _w("(btat)^5"),
}

# t = [x, y] written as the relator t^-1 [x, y]
DEGENERACY_IDENTITIES = {
    "t=[a,btb^2]": _w("t[a,btb^2]"),
    "t=[at,btb^2]": _w("t[at,btb^2]"),
    "t=[a,tb^2tb]": _w("t[a,tb^2tb]"),
    "t=[at,tb^2tb]": _w("t[at,tb^2tb]"),
}

# The four words singled out from the degeneracy catalog, as printed.  The
# case-(ii) word has alpha/beta content reducing to b (not 1); see
# DEGENERACY_WORD_II_CORRECTED.
DEGENERACY_WORDS = {
    "(iii) tab^2tbta^3btb^2": _w("tab^2tbta^3btb^2"),
    "(iii) atb^2tba^3btb^2t": _w("atb^2tba^3btb^2t"),
    "(i) abtb^2a^3tbtb^2": _w("abtb^2a^3tbtb^2"),
    "(ii) tbatbtb^2ta^3": _w("tbatbtb^2ta^3"),
}
DEGENERACY_WORD_II_CORRECTED = _w("tbatbtb^2ta^3b^2")


def insertion_base_words() -> dict:
    """The words w of the Insertion family, labelled by (mu, nu), as printed."""
    out = {"bab": "bab"}
    for mu in (0, 1):
        out[f"mu={mu}"] = "bb" * mu + "aa" + "bab" + "aa" + "b" * mu
        for nu in (0, 1):
            out[f"mu={mu},nu={nu}"] = (
                "bb" * nu + "aa" + "bb" * mu + "aa" + "bab" + "aa" + "b" * mu + "aa" + "b" * nu
            )
    return out


def insertion_template(w: str) -> list:
    """Tokens of ``[t, w^]`` with one slot variable between each pair of letters of ``w``."""
    body: list = []
    for i, ch in enumerate(w):
        if i:
            body.append(i - 1)
        body.append(ch)
    inv: list = []
    for tok in reversed(body):
        inv.extend([tok] * (ORDERS[tok] - 1) if isinstance(tok, str) else [tok])
    return ["t"] + body + ["t"] + inv


def insertion_word(w: str, x: int) -> str:
    hat = w[0] + "".join("t" * (x >> i & 1) + ch for i, ch in enumerate(w[1:]))
    return commutator("t", hat)


@dataclass
class RelatorReport:
    name: str
    group: str
    total: int
    failures: int
    examples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {**self.__dict__, "ok": self.ok}


def check_insertion_family(rule: SpinRule = DEFAULT_RULE) -> list[RelatorReport]:
    out = []
    for label, w in insertion_base_words().items():
        ct = CompiledTemplate(insertion_template(w), rule.orientation)
        bound = ct.bind(rule)
        k = len(w) - 1
        bad = [x for x in range(1 << k) if not ct.is_identity(bound, x)]
        out.append(RelatorReport(
            f"[t, {w}^] ({label})", "insertion", 1 << k, len(bad),
            [insertion_word(w, x) for x in bad[:3]],
        ))
    return out


def check_main_relators(rule: SpinRule = DEFAULT_RULE, include_insertion: bool = True) -> list[RelatorReport]:
    """Power laws, pentagon words, degeneracy identities and (optionally) the insertion family."""
    out = []
    for group, table in (("power", POWER_LAWS), ("pentagon", PENTAGON_WORDS), ("degeneracy", DEGENERACY_IDENTITIES)):
        for name, w in table.items():
            ok = is_relator(w, rule)
            out.append(RelatorReport(name, group, 1, 0 if ok else 1, [] if ok else [w]))
    if include_insertion:
        out.extend(check_insertion_family(rule))
    return out


def pentagon_relators(rule: SpinRule = DEFAULT_RULE) -> dict:
    """Words obtained from the nonzero pentagon solutions, with their verdicts."""
    out = {}
    for x in PENTAGON_FAMILY.expected.kernel():
        if x:
            w = PENTAGON_FAMILY.instantiate(x)
            out[w] = is_relator(w, rule)
    return out


# -- synthesis of the alpha rule ---------------------------------------------

def all_rules() -> list[SpinRule]:
    subsets = [frozenset(c) for k in range(6) for c in combinations(POSITIONS, k)]
    return [SpinRule(u, m, o) for o in ("cd", "dc") for u in subsets for m in subsets]


def _alpha4_outcome(rule: SpinRule) -> bool:
    """a^4 from the base gives back the base with the four frontier edges marked."""
    from .farey import INFINITY, MINUS_ONE, ONE, ZERO, edge_key

    s = evaluate("aaaa", rule)
    frontier = {edge_key(ZERO, ONE), edge_key(ONE, INFINITY), edge_key(MINUS_ONE, INFINITY), edge_key(MINUS_ONE, ZERO)}
    return not s.patch and s.doe == TessState.base().doe and set(s.marking) == frontier


def _probe_states(rule: SpinRule) -> list[TessState]:
    return [evaluate(w, rule) for w in ("", "t", "bta", "ab", "tabta", "babtaa")]


def is_well_defined(rule: SpinRule) -> bool:
    """alpha commutes with triangle moves at the doe up to marking equivalence.

    Moves away from the doe's two triangles commute with alpha outright, so
    only those two need checking; they are checked on a few probe states.
    """
    for s in _probe_states(rule):
        image = apply_alpha(s, rule)
        for tri in edge_triangles(s, s.doe.key()):
            moved = s.with_marking(apply_triangle_move(s.marking, tri))
            if not same_class(apply_alpha(moved, rule), image):
                return False
    return True


def _family_matches(name: str):
    f = FAMILIES[name]
    want = f.expected.kernel().vectors

    def check(rule):
        return solution_set(f, rule).vectors == want

    return check


SYNTHESIS_CONSTRAINTS = {
    "alpha4-outcome": _alpha4_outcome,
    "alpha-family": _family_matches("alpha"),
    "power-commutators": lambda r: is_relator(POWER_LAWS["[t,a^2]"], r) and is_relator(POWER_LAWS["[t,ata]"], r),
    "pentagon": _family_matches("pentagon"),
    "degeneracy": _family_matches("degeneracy"),
    "well-defined": is_well_defined,
}


@dataclass
class SynthesisResult:
    rules: list
    failures: dict  # rule -> name of the first failed constraint
    constraints: tuple
    counts: dict = field(default_factory=dict)  # constraint -> number of rules it eliminated

    @property
    def ok(self) -> bool:
        return bool(self.rules)

    def near_misses(self) -> list:
        """Rules that fail only at the last constraint reached by any rule."""
        if not self.failures:
            return []
        order = {c: i for i, c in enumerate(self.constraints)}
        worst = max(order[c] for c in self.failures.values())
        return [r for r, c in self.failures.items() if order[c] == worst]

    def summary(self) -> str:
        if self.rules:
            return f"{len(self.rules)} rule(s) pass: " + "; ".join(str(r) for r in self.rules)
        lines = ["no consistent rule"]
        for c in self.constraints:
            lines.append(f"  {c}: eliminates {self.counts.get(c, 0)}")
        near = self.near_misses()
        if near:
            lines.append(f"  {len(near)} rule(s) pass everything before '{self.failures[near[0]]}', e.g. {near[0]}")
        return "\n".join(lines)


def synthesize_alpha_rule(skip=(), rules=None) -> SynthesisResult:
    """Exhaustive search for alpha marking rules meeting every constraint.

    ``skip`` names constraints (keys of SYNTHESIS_CONSTRAINTS) to leave out.
    Constraints run cheapest first; each rule records the first one it fails.
    """
    names = tuple(c for c in SYNTHESIS_CONSTRAINTS if c not in set(skip))
    passed = []
    failures: dict = {}
    counts = {c: 0 for c in names}
    for rule in rules if rules is not None else all_rules():
        for c in names:
            if not SYNTHESIS_CONSTRAINTS[c](rule):
                failures[rule] = c
                counts[c] += 1
                break
        else:
            passed.append(rule)
    return SynthesisResult(passed, failures, names, counts)


def rule_class_key(rule: SpinRule) -> tuple:
    """Canonical label of the rules acting identically on marking classes.

    Adding the sides of either new triangle to a toggle set does not change
    the resulting class, so each toggle set is taken modulo that span.
    """
    tri1 = frozenset({"ac", "cd", "da"})
    tri2 = frozenset({"cb", "bd", "cd"})
    shifts = [frozenset(), tri1, tri2, tri1 ^ tri2]

    def canon(s):
        return min(tuple(p for p in POSITIONS if p in s ^ d) for d in shifts)

    return (rule.orientation, canon(rule.unmarked), canon(rule.marked))


# -- presentation export ------------------------------------------------------

@dataclass
class Presentation:
    generators: list
    relators: list  # (group, word) pairs

    def to_text(self) -> str:
        lines = ["generators: " + " ".join(self.generators)]
        for group, w in self.relators:
            lines.append(f"{group}: {w}")
        return "\n".join(lines) + "\n"

    def to_structured(self) -> str:
        return json.dumps({
            "generators": self.generators,
            "relators": [{"group": g, "word": w} for g, w in self.relators],
        })

    @classmethod
    def from_structured(cls, text: str) -> "Presentation":
        doc = json.loads(text)
        return cls(list(doc["generators"]), [(r["group"], r["word"]) for r in doc["relators"]])

    @classmethod
    def from_text(cls, text: str) -> "Presentation":
        lines = text.strip().splitlines()
        head = lines[0]
        if not head.startswith("generators:"):
            raise ValueError("missing generators line")
        gens = head.split(":", 1)[1].split()
        rels = []
        for line in lines[1:]:
            group, w = line.split(":", 1)
            rels.append((group.strip(), w.strip()))
        return cls(gens, rels)


PPSL_RELATORS = {
    "a^4": "aaaa",
    "b^3": "bbb",
    "(ab)^5": "ab" * 5,
    "w1": commutator("bab", "aababaa"),
    "w2": commutator("bab", "aabbaababaabaa"),
}


def presentation(model: str = "spin", expand_insertions: bool = True) -> Presentation:
    """Generators and relators.  ``model`` is ``"spin"`` or ``"ppsl"``."""
    if model == "ppsl":
        return Presentation(["a", "b"], [("ppsl", w) for w in PPSL_RELATORS.values()])
    if model != "spin":
        raise ValueError(f"unknown model {model!r}")
    rels = []
    rels += [("power", w) for w in POWER_LAWS.values()]
    rels += [("pentagon", w) for w in PENTAGON_WORDS.values()]
    rels += [("degeneracy", w) for w in DEGENERACY_IDENTITIES.values()]
    for w in insertion_base_words().values():
        if expand_insertions:
            rels += [("insertion", insertion_word(w, x)) for x in range(1 << (len(w) - 1))]
        else:
            rels.append(("insertion", commutator("t", w)))
    for name in ("first-commutator", "second-commutator"):
        f = FAMILIES[name]
        rels += [(name, f.instantiate(x)) for x in f.expected.kernel()]
    return Presentation(["a", "b", "t"], rels)


def export_presentation(fmt: str = "text", model: str = "spin", expand_insertions: bool = True) -> str:
    p = presentation(model, expand_insertions)
    if fmt == "text":
        return p.to_text()
    if fmt == "structured":
        return p.to_structured()
    raise ValueError(f"unknown format {fmt!r}")
