import json

import pytest

from spinmcg.farey import BASE_DOE
from spinmcg.relations import (
    ALPHA_FAMILY,
    DEFAULT_RULE,
    DEGENERACY_FAMILY,
    DEGENERACY_IDENTITIES,
    DEGENERACY_WORD_II_CORRECTED,
    DEGENERACY_WORDS,
    FIRST_COMMUTATOR_FAMILY,
    PENTAGON_FAMILY,
    PENTAGON_WORDS,
    LinearSystemGF2,
    Presentation,
    RelationFamily,
    all_rules,
    check_insertion_family,
    degeneracy_catalog,
    degeneracy_catalog_check,
    enumerate_insertions,
    export_presentation,
    get_family,
    insertion_base_words,
    presentation,
    rule_class_key,
    solution_set,
    synthesize_alpha_rule,
    verify_family,
)
from spinmcg.spinstate import evaluate, is_relator
from spinmcg.words import reduce_word


@pytest.mark.parametrize("family,count", [(ALPHA_FAMILY, 16), (DEGENERACY_FAMILY, 1024), (PENTAGON_FAMILY, 32)])
def test_insertion_counts(family, count):
    words = list(enumerate_insertions(family))
    assert len(words) == count
    assert len({w for _, w in words}) == count
    assert words[0][1] == family.base_word


def test_family_template_must_match_variables():
    with pytest.raises(ValueError):
        RelationFamily("bad", "{x}a{y}", ("x",))
    with pytest.raises(KeyError):
        get_family("nope")


def test_alpha_family_solutions():
    sols = solution_set(ALPHA_FAMILY)
    assert len(sols) == 4
    assert all(d["t1"] == d["t3"] and d["t2"] == d["t4"] for d in map(sols.as_dict, sols))


def test_pentagon_model_forces_t3_zero():
    # The model's pentagon solutions are a proper subspace of the stated system:
    # t1 = t2 = t3 = 0 and t4 = t0.
    sols = solution_set(PENTAGON_FAMILY)
    assert [sols.as_tuple(x) for x in sols] == [(0, 0, 0, 0, 0), (1, 0, 0, 0, 1)]
    assert sols.vectors < PENTAGON_FAMILY.expected.kernel().vectors


def test_pentagon_words_hold():
    for w in PENTAGON_WORDS.values():
        assert is_relator(w, DEFAULT_RULE)


def test_degeneracy_family_and_catalog():
    rep = verify_family(DEGENERACY_FAMILY)
    assert rep.ok and rep.found == 128 and rep.rank == 3
    cat = degeneracy_catalog_check()
    assert cat.ok and cat.catalog_size == 128 and cat.closed_under_complement


def test_case_ii_predicate_has_s4_and_t5():
    cat = degeneracy_catalog()
    names = DEGENERACY_FAMILY.variables
    (label,) = [k for k in cat if "(ii)" in k]
    for x in cat[label]:
        v = {n: x >> i & 1 for i, n in enumerate(names)}
        assert v["s4"] and v["t5"]


def test_first_commutator_matches():
    rep = verify_family(FIRST_COMMUTATOR_FAMILY)
    assert rep.ok
    assert rep.rank == 5
    assert rep.found == 2 ** (13 - rep.rank)


def test_parallel_enumeration_is_deterministic():
    serial = solution_set(FIRST_COMMUTATOR_FAMILY, workers=1)
    parallel = solution_set(FIRST_COMMUTATOR_FAMILY, workers=2)
    assert serial == parallel
    assert list(serial) == list(parallel)


def test_linear_system_basics():
    empty = LinearSystemGF2(("x", "y", "z"))
    assert len(empty.kernel()) == 8
    sys = LinearSystemGF2.from_equations(("x", "y"), ["x = y"])
    assert sys.rank == 1 and len(sys.kernel()) == 2
    assert sys.equations() == ["x + y = 0"]
    with pytest.raises(ValueError):
        LinearSystemGF2.from_equations(("x",), ["x = w"])


def test_degeneracy_identities_hold():
    for w in DEGENERACY_IDENTITIES.values():
        assert is_relator(w, DEFAULT_RULE)


def test_degeneracy_words():
    for name, w in DEGENERACY_WORDS.items():
        if name.startswith("(ii)"):
            # its alpha/beta content reduces to b, so it moves the doe
            assert reduce_word(w.replace("t", "")) == "b"
            assert not is_relator(w, DEFAULT_RULE)
        else:
            assert is_relator(w, DEFAULT_RULE)
    assert is_relator(DEGENERACY_WORD_II_CORRECTED, DEFAULT_RULE)


def test_insertion_family():
    reports = {r.name: r for r in check_insertion_family()}
    assert len(reports) == 7
    bad = [name for name, r in reports.items() if not r.ok]
    assert bad == ["[t, bbaaaababaaaab^] (mu=0,nu=1)"]
    # that member's word reduces to a b^2, which moves the doe, so no t can commute with it
    w = insertion_base_words()["mu=0,nu=1"]
    assert reduce_word(w) == "abb"
    assert evaluate(w).doe != BASE_DOE


def test_rule_classes_have_sixteen_members():
    keys = [rule_class_key(r) for r in all_rules()]
    assert len(keys) == 2048
    assert len(set(keys)) == 128


def test_synthesis_with_pentagon_is_empty():
    res = synthesize_alpha_rule()
    assert not res.ok
    assert "no consistent rule" in res.summary()
    assert DEFAULT_RULE in res.near_misses()


def test_synthesis_without_pentagon_passes_held_out_commutators():
    res = synthesize_alpha_rule(skip=("pentagon",))
    assert len(res.rules) == 48
    reps = {}
    for r in res.rules:
        reps.setdefault(rule_class_key(r), r)
    assert len(reps) == 4
    for r in reps.values():
        assert verify_family(FIRST_COMMUTATOR_FAMILY, r).ok


def test_export_ppsl():
    p = presentation("ppsl")
    assert p.generators == ["a", "b"]
    assert len(p.relators) == 5
    assert ("ppsl", "aaaa") in p.relators


def test_export_spin_contains_pentagon_pair():
    p = presentation("spin", expand_insertions=False)
    words = [w for _, w in p.relators]
    assert PENTAGON_WORDS["(btat)^5"] in words
    assert PENTAGON_WORDS["(ba)^5"] in words


def test_export_round_trips():
    text = export_presentation("text", "spin", False)
    assert Presentation.from_text(text) == presentation("spin", False)
    doc = export_presentation("structured", "spin", True)
    assert Presentation.from_structured(doc) == presentation("spin", True)
    assert json.loads(doc)["generators"] == ["a", "b", "t"]
    with pytest.raises(ValueError):
        export_presentation("yaml")
