"""Suite orchestration: row generation against direct checker calls, the
filter language against a reference evaluator, document determinism, bound
skips, exit codes and independent certificate re-verification."""

import copy
import json
import re

import pytest
from hypothesis import given, settings, strategies as st

from tigroups.coact import coprime_identity_suite, make_pair
from tigroups.corpus import catalog_entry
from tigroups.errors import InvalidInput
from tigroups.grouplat import Section, subgroups_up_to_conjugacy
from tigroups.permcore import Bounds, Permutation, PermutationGroup
from tigroups.thmcheck import (
    REPORT_FORMAT,
    STATEMENTS,
    RunReport,
    SuiteConfig,
    _jsonable,
    compile_filter,
    run_suite,
    verify_certificate,
)
from tigroups.tiprops import frobenius_kernel


# ---------------------------------------------------------------------------
# filter language


def test_empty_filter_matches_everything():
    f = compile_filter("")
    assert f(frozenset())
    assert f(frozenset({"frobenius", "stretch"}))


def test_filter_single_tag():
    f = compile_filter("frobenius")
    assert f({"frobenius"})
    assert f({"frobenius", "example"})
    assert not f({"example"})
    assert not f(set())


def test_filter_not():
    f = compile_filter("not stretch")
    assert f({"example"})
    assert not f({"stretch", "example"})


def test_filter_and_binds_tighter_than_or():
    f = compile_filter("pair or frobenius and example")
    assert f({"pair"})
    assert f({"frobenius", "example"})
    assert not f({"frobenius"})
    assert not f({"example"})


def test_filter_parens_override():
    f = compile_filter("(pair or frobenius) and example")
    assert not f({"pair"})
    assert f({"pair", "example"})
    assert f({"frobenius", "example"})


@pytest.mark.parametrize("expr", [
    "and", "a and", "not", "(a", "a)", "a b", "a or or b", "()", "A",
])
def test_filter_syntax_errors(expr):
    with pytest.raises(InvalidInput):
        compile_filter(expr)


_TAG_NAMES = ("frobenius", "pair", "example", "stretch")


@st.composite
def _filter_trees(draw, depth=0):
    choices = ["tag"] if depth >= 3 else ["tag", "tag", "not", "and", "or"]
    kind = draw(st.sampled_from(choices))
    if kind == "tag":
        return ("tag", draw(st.sampled_from(_TAG_NAMES)))
    if kind == "not":
        return ("not", draw(_filter_trees(depth + 1)))
    return (kind, draw(_filter_trees(depth + 1)), draw(_filter_trees(depth + 1)))


def _render(tree):
    if tree[0] == "tag":
        return tree[1]
    if tree[0] == "not":
        return "not (%s)" % _render(tree[1])
    return "(%s) %s (%s)" % (_render(tree[1]), tree[0], _render(tree[2]))


def _evaluate(tree, tags):
    if tree[0] == "tag":
        return tree[1] in tags
    if tree[0] == "not":
        return not _evaluate(tree[1], tags)
    if tree[0] == "and":
        return _evaluate(tree[1], tags) and _evaluate(tree[2], tags)
    return _evaluate(tree[1], tags) or _evaluate(tree[2], tags)


@settings(max_examples=200, deadline=None)
@given(tree=_filter_trees(), tags=st.sets(st.sampled_from(_TAG_NAMES)))
def test_filter_matches_reference_evaluator(tree, tags):
    assert compile_filter(_render(tree))(tags) == _evaluate(tree, tags)


# ---------------------------------------------------------------------------
# certificate serialization


def test_jsonable_flattens_group_values():
    G = PermutationGroup([Permutation([1, 2, 0])])
    out = _jsonable({
        "perm": Permutation([1, 0, 2]),
        "group": G,
        "section": Section(G, G.subgroup([])),
        "pi": frozenset({5, 2}),
        "orders": {2: 4, 3: 9},
        "pair": (Permutation([0, 1, 2]), None),
    })
    assert out["perm"] == "(0 1)"
    assert out["group"] == {"degree": 3, "order": 3, "generators": ["(0 1 2)"]}
    assert out["section"]["order"] == 3
    assert out["section"]["bottom"]["order"] == 1
    assert out["pi"] == [2, 5]
    assert out["orders"] == {"2": 4, "3": 9}
    assert out["pair"] == ["()", None]


def test_jsonable_rejects_unknown_types():
    with pytest.raises(TypeError):
        _jsonable({"bad": object()})


# ---------------------------------------------------------------------------
# suite selection and config echo


def test_unknown_suite_rejected():
    with pytest.raises(InvalidInput):
        run_suite(SuiteConfig(suites=("no_such",)))


def test_suites_normalize_to_registry_order():
    rep = run_suite(SuiteConfig(suites=("thm_1_5", "cor_6_2"), filter="pair"))
    assert rep.config["suites"] == ["cor_6_2", "thm_1_5"]


def test_all_expands_to_every_statement():
    rep = run_suite(SuiteConfig(suites=("all",), filter="pair"))
    assert rep.config["suites"] == list(STATEMENTS)


def test_empty_suite_list_gives_empty_report():
    rep = run_suite(SuiteConfig(suites=()))
    assert rep.rows == ()
    assert rep.summary == {
        "rows": 0, "HOLDS": 0, "FAILS": 0, "NOT_APPLICABLE": 0, "SKIPPED": 0,
    }
    assert rep.exit_code() == 0


def test_stretch_entries_excluded_by_default():
    rep = run_suite(SuiteConfig(suites=("cor_6_2",), filter="stretch"))
    assert rep.rows == ()
    assert rep.summary["rows"] == 0


def test_include_stretch_echoed_without_matching_entries():
    rep = run_suite(SuiteConfig(suites=("cor_6_2",), filter="stretch and pair",
                                include_stretch=True))
    assert rep.rows == ()
    assert rep.config["include_stretch"] is True


# ---------------------------------------------------------------------------
# rows against direct checker calls


def test_cor_6_2_rows_match_direct_calls_on_f20():
    rep = run_suite(SuiteConfig(suites=("cor_6_2",), filter="frobenius"))
    rows = [r for r in rep.rows if r["group"] == "f20"]
    entry = catalog_entry("f20")
    G = entry.group()
    expected = [("H", entry.subgroup("H", parent=G)),
                ("N", entry.subgroup("N", parent=G))]
    for i, S in enumerate(subgroups_up_to_conjugacy(G)):
        if 1 < S.order() < G.order():
            expected.append(("class%d[%d]" % (i, S.order()), S))
    assert [r["subgroup"] for r in rows] == [label for label, _ in expected]
    for row, (label, H) in zip(rows, expected):
        direct = frobenius_kernel(G, H)
        assert row["verdict"] == direct.verdict
        assert row["certificate"] == _jsonable(direct.certificate)
        assert row["statement"] == "cor_6_2"
        assert row["suite"] == "cor_6_2"


def test_frobenius_kernel_summary_over_tagged_entries():
    rep = run_suite(SuiteConfig(suites=("cor_6_2",), filter="frobenius"))
    assert rep.summary == {
        "rows": 134, "HOLDS": 48, "FAILS": 0,
        "NOT_APPLICABLE": 86, "SKIPPED": 0,
    }
    assert len({r["group"] for r in rep.rows}) == 24
    assert any(re.fullmatch(r"class\d+\[\d+\]", r["subgroup"])
               and r["verdict"] == "HOLDS" for r in rep.rows)
    assert rep.exit_code() == 0


def test_pair_rows_and_derived_pairs_on_c15_c2():
    rep = run_suite(SuiteConfig(suites=("coprime_2_1", "prop_1_6"), filter="pair"))
    labels = [r["subgroup"] for r in rep.rows if r["suite"] == "coprime_2_1"]
    assert labels == ["G,A", "pi=3", "pi=5", "pi=2,3", "pi=3,5"]
    facts = {r["subgroup"]: (r["certificate"]["fixed_order"],
                             r["certificate"]["commutator_order"])
             for r in rep.rows if r["suite"] == "coprime_2_1"}
    assert facts == {
        "G,A": (5, 3), "pi=3": (1, 3), "pi=5": (5, 1),
        "pi=2,3": (6, 1), "pi=3,5": (5, 3),
    }
    assert all(r["verdict"] == "HOLDS" for r in rep.rows)

    entry = catalog_entry("c15_c2")
    G = entry.group()
    pair = make_pair(G, entry.subgroup("G", parent=G), entry.subgroup("A", parent=G))
    direct = coprime_identity_suite(pair)
    named = next(r for r in rep.rows
                 if r["suite"] == "coprime_2_1" and r["subgroup"] == "G,A")
    assert named["certificate"] == _jsonable(direct.certificate)


def test_lemma_rows_on_s3():
    rep = run_suite(SuiteConfig(suites=("lemmas_4_x",), filter="frobenius"))
    rows = [(r["subgroup"], r["statement"], r["verdict"])
            for r in rep.rows if r["group"] == "s3"]
    assert rows == [
        ("H", "lemma_4_1", "HOLDS"),
        ("N", "lemma_4_1", "HOLDS"),
        ("class1[2]", "lemma_4_1", "HOLDS"),
        ("class2[3]", "lemma_4_1", "HOLDS"),
        ("N,H", "lemma_4_3", "HOLDS"),
        ("N,H", "lemma_4_4", "HOLDS"),
        ("N,H,p=3", "lemma_4_2", "HOLDS"),
    ]
    assert all(r["suite"] == "lemmas_4_x" for r in rep.rows)


def test_transfer_rows_cover_every_prime():
    rep = run_suite(SuiteConfig(suites=("transfer_2_3",), filter="pair"))
    assert [r["subgroup"] for r in rep.rows] == ["p=2", "p=3", "p=5"]
    assert all(r["verdict"] == "HOLDS" for r in rep.rows)


# ---------------------------------------------------------------------------
# bound handling and exit codes


def test_bound_exceeded_becomes_skipped_row():
    rep = run_suite(SuiteConfig(suites=("coprime_2_1",), filter="pair",
                                bounds=Bounds(enum=10)))
    assert rep.summary == {
        "rows": 1, "HOLDS": 0, "FAILS": 0, "NOT_APPLICABLE": 0, "SKIPPED": 1,
    }
    row = rep.rows[0]
    assert row["subgroup"] == "sweep"
    assert row["verdict"] == "SKIPPED"
    assert row["certificate"]["bound"] == 10
    assert row["certificate"]["needed"] == 30
    assert rep.exit_code() == 3


def test_exit_code_prefers_fails_over_skips():
    base = {"rows": 2, "HOLDS": 0, "NOT_APPLICABLE": 0}
    failing = RunReport(config={}, rows=(), summary=dict(base, FAILS=1, SKIPPED=1))
    assert failing.exit_code() == 1
    skipping = RunReport(config={}, rows=(), summary=dict(base, FAILS=0, SKIPPED=2))
    assert skipping.exit_code() == 3
    clean = RunReport(config={}, rows=(), summary=dict(base, FAILS=0, SKIPPED=0))
    assert clean.exit_code() == 0


# ---------------------------------------------------------------------------
# the document


def test_document_schema_and_round_trip():
    rep = run_suite(SuiteConfig(suites=("prop_1_6",), filter="pair"))
    doc = json.loads(rep.document())
    assert doc["format"] == REPORT_FORMAT
    assert set(doc) == {"format", "config", "rows", "summary"}
    assert set(doc["config"]) == {
        "suites", "filter", "bounds", "seed", "include_stretch",
    }
    assert doc["config"]["bounds"] == {
        "enum": 10 ** 6, "subgroups": 2000, "iso": 1000,
    }
    assert doc["rows"] == list(rep.rows)
    assert doc["summary"]["rows"] == len(rep.rows)


def test_documents_are_byte_identical_across_runs():
    config = SuiteConfig(suites=("cor_6_2", "thm_1_5"), filter="pair or frobenius")
    assert run_suite(config).document() == run_suite(config).document()


def test_timings_attach_only_on_request():
    config = SuiteConfig(suites=("prop_1_6",), filter="pair")
    assert run_suite(config).timings is None
    timed = run_suite(SuiteConfig(suites=("prop_1_6",), filter="pair", timings=True))
    assert timed.timings is not None
    assert len(timed.timings) == len(timed.rows)
    doc = json.loads(timed.document())
    assert len(doc["timings"]) == len(doc["rows"])


# ---------------------------------------------------------------------------
# independent certificate re-verification


@pytest.fixture(scope="module")
def witness_rows():
    rep = run_suite(SuiteConfig(
        suites=("cor_6_2", "prop_1_4", "thm_1_5", "thm_1_7"),
        filter="frobenius"))
    return rep.rows


def test_real_certificates_survive_reverification(witness_rows):
    verified = {}
    for row in witness_rows:
        ok, detail = verify_certificate(row)
        assert ok is not False, (row["group"], row["statement"], detail)
        if ok:
            verified[row["statement"]] = verified.get(row["statement"], 0) + 1
    assert verified["cor_6_2"] == 48
    assert verified["prop_1_4"] > 0
    assert verified["thm_1_5"] > 0
    assert verified["thm_1_7"] > 0


def test_swept_class_labels_are_reverifiable(witness_rows):
    row = next(r for r in witness_rows
               if r["verdict"] == "HOLDS"
               and re.fullmatch(r"class\d+\[\d+\]", r["subgroup"]))
    ok, detail = verify_certificate(row)
    assert ok is True, detail


def test_forged_kernel_certificates_are_caught(witness_rows):
    genuine = next(r for r in witness_rows
                   if r["statement"] == "cor_6_2" and r["verdict"] == "HOLDS")
    forged = copy.deepcopy(genuine)
    forged["certificate"]["kernel"]["generators"] = ["()"]
    forged["certificate"]["kernel_order"] = 1
    ok, _ = verify_certificate(forged)
    assert ok is False
    forged = copy.deepcopy(genuine)
    forged["certificate"]["kernel_order"] += 1
    ok, _ = verify_certificate(forged)
    assert ok is False


def test_false_nonembedding_claim_is_caught():
    # claims no conjugate of the class of (0 1 2) lands in H = <(0 1 2)>;
    # the class contains H itself, so the orbit walk must find it
    row = {
        "group": "s4", "subgroup": "H", "suite": "prop_1_4",
        "statement": "prop_1_4", "verdict": "FAILS",
        "certificate": {
            "pi": [3], "unembedded_class_order": 3,
            "class_generators": ["(0 1 2)"],
        },
    }
    ok, detail = verify_certificate(row)
    assert ok is False
    assert "embeds" in detail


def test_unverifiable_rows_return_none():
    rep = run_suite(SuiteConfig(suites=("coprime_2_1",), filter="pair"))
    ok, _ = verify_certificate(rep.rows[0])
    assert ok is None
    ok, detail = verify_certificate({
        "group": "no_such_group", "subgroup": "H", "suite": "cor_6_2",
        "statement": "cor_6_2", "verdict": "HOLDS", "certificate": {},
    })
    assert ok is None
    assert "catalog" in detail
