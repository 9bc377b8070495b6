"""Catalog-wide statement suites.

run_suite drives the registered statement checkers over the catalog and
flattens the results into rows of (group, subgroup label, suite, statement,
verdict, certificate). Row order is canonical: catalog order, then registry
order, then the per-statement emission order, so two runs with the same
config serialize to identical bytes. Wall-clock timings stay out of the
document body unless asked for.

Each entry offers its distinguished subgroups to every checker, plus all
subgroup-class representatives when the group is within the subgroup
bound. Checkers that sweep subgroup classes internally (prop_1_4, thm_2_4)
only get rows for groups within that bound; everything else runs on every
selected entry, with BoundExceeded converted to a SKIPPED row.
"""

import json
import re
import time
from dataclasses import dataclass, replace
from functools import partial
from itertools import combinations

from .arith import is_pi_number, pi_part, prime_set
from .coact import (
    brauer_suzuki_check,
    coprime_identity_suite,
    make_pair,
    prop_1_6_check,
    transfer_property_suite,
)
from .corpus import catalog, catalog_entry
from .errors import BoundExceeded, InvalidInput
from .grouplat import Section, subgroups_up_to_conjugacy
from .permcore import (
    DEFAULT_BOUNDS,
    Permutation,
    PermutationGroup,
    conjugate,
    format_cycles,
    parse_permutation,
)
from .tiprops import (
    FAILS,
    HOLDS,
    NOT_APPLICABLE,
    SKIPPED,
    TheoremReport,
    analyze_theorem_1_2,
    frobenius_kernel,
    lemma_4_1_check,
    lemma_4_2_check,
    lemma_4_3_check,
    lemma_4_4_check,
    pi_core,
    prop_1_4_check,
    theorem_1_5_check,
    theorem_1_7_check,
    theorem_5_1_check,
)

REPORT_FORMAT = "run-report/1"

# registry order; rows are always emitted in this order
STATEMENTS = (
    "cor_6_2",
    "prop_1_4",
    "thm_1_2",
    "thm_1_5",
    "thm_1_7",
    "thm_5_1",
    "lemmas_4_x",
    "coprime_2_1",
    "prop_1_6",
    "transfer_2_3",
    "thm_2_4",
)

# entries tagged "stretch" run with at least this enumeration budget
STRETCH_ENUM = 2 * 10 ** 7


@dataclass(frozen=True)
class SuiteConfig:
    suites: tuple = STATEMENTS
    filter: str = ""
    bounds: object = DEFAULT_BOUNDS
    seed: int = 0
    include_stretch: bool = False
    timings: bool = False


# ---------------------------------------------------------------------------
# tag filter expressions: tag names combined with and / or / not / parens


_TOKEN = re.compile(r"\s*([a-z0-9_-]+|\(|\))")


def _tokenize(expr):
    out = []
    pos = 0
    while pos < len(expr):
        m = _TOKEN.match(expr, pos)
        if m is None:
            if expr[pos:].strip():
                raise InvalidInput("bad filter syntax at %r" % expr[pos:].strip())
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _FilterParser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek() == "or":
            self.take()
            rhs = self.term()
            node = ("or", node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek() == "and":
            self.take()
            rhs = self.factor()
            node = ("and", node, rhs)
        return node

    def factor(self):
        tok = self.take()
        if tok is None:
            raise InvalidInput("filter ended where a tag was expected")
        if tok == "not":
            return ("not", self.factor())
        if tok == "(":
            node = self.expr()
            if self.take() != ")":
                raise InvalidInput("unbalanced parenthesis in filter")
            return node
        if tok in (")", "and", "or"):
            raise InvalidInput("misplaced %r in filter" % tok)
        return ("tag", tok)


def _eval_filter(node, tags):
    op = node[0]
    if op == "tag":
        return node[1] in tags
    if op == "not":
        return not _eval_filter(node[1], tags)
    if op == "and":
        return _eval_filter(node[1], tags) and _eval_filter(node[2], tags)
    return _eval_filter(node[1], tags) or _eval_filter(node[2], tags)


def compile_filter(expr):
    """Parse a tag expression into a predicate on a tag set. The empty
    expression matches everything."""
    tokens = _tokenize(expr)
    if not tokens:
        return lambda tags: True
    parser = _FilterParser(tokens)
    tree = parser.expr()
    if parser.peek() is not None:
        raise InvalidInput("trailing %r in filter" % parser.peek())
    return lambda tags: _eval_filter(tree, frozenset(tags))


# ---------------------------------------------------------------------------
# certificate serialization


def _jsonable(value):
    """Certificates hold groups, permutations, sections and prime sets;
    flatten them into plain JSON values. Unknown types are a bug."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, Permutation):
        return format_cycles(value)
    if isinstance(value, PermutationGroup):
        return {
            "degree": value.degree,
            "order": value.order(),
            "generators": [format_cycles(g) for g in value.generators],
        }
    if isinstance(value, Section):
        return {
            "top": _jsonable(value.top),
            "bottom": _jsonable(value.bottom),
            "order": value.order(),
        }
    if isinstance(value, (frozenset, set)):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    raise TypeError("cannot serialize %r in a certificate" % type(value).__name__)


# ---------------------------------------------------------------------------
# per-entry row generation


_CLASS_LABEL = re.compile(r"class(\d+)\[(\d+)\]")


class _EntryContext:
    """Lazily built shared state for one catalog entry: the group itself,
    the (label, subgroup) rows and the (label, coprime pair) rows."""

    def __init__(self, entry, bounds):
        self.entry = entry
        self.bounds = bounds
        self.group = entry.group()
        self._subgroup_rows = None
        self._pair_rows = None

    def sweepable(self):
        return self.group.order() <= self.bounds.subgroups

    def subgroup_rows(self):
        if self._subgroup_rows is not None:
            return self._subgroup_rows
        rows = []
        for name in self.entry.distinguished_subgroups:
            rows.append((name, self.entry.subgroup(name, parent=self.group)))
        if self.sweepable():
            reps = subgroups_up_to_conjugacy(self.group, self.bounds)
            n = self.group.order()
            for i, S in enumerate(reps):
                if 1 < S.order() < n:
                    rows.append(("class%d[%d]" % (i, S.order()), S))
        self._subgroup_rows = rows
        return rows

    def pair_rows(self):
        if self._pair_rows is not None:
            return self._pair_rows
        rows = []
        ds = self.entry.distinguished_subgroups
        named = None
        if "G" in ds and "A" in ds:
            named = ("G,A", "G", "A")
        elif "N" in ds and "H" in ds:
            named = ("N,H", "N", "H")
        elif "O" in ds and "H" in ds:
            named = ("O,H", "O", "H")
        if named is not None:
            label, gname, aname = named
            gp = self.entry.subgroup(gname, parent=self.group)
            ap = self.entry.subgroup(aname, parent=self.group)
            try:
                rows.append((label, make_pair(self.group, gp, ap, self.bounds)))
            except InvalidInput:
                pass
        rows.extend(self._derived_pairs())
        self._pair_rows = rows
        return rows

    def _derived_pairs(self):
        # normal Hall pi-core plus a complement found among the class reps;
        # coprimality makes any rep of the right order a complement
        if not self.sweepable():
            return []
        G = self.group
        n = G.order()
        primes = sorted(prime_set(n))
        if len(primes) < 2:
            return []
        reps = subgroups_up_to_conjugacy(G, self.bounds)
        rows = []
        for size in range(1, len(primes)):
            for combo in combinations(primes, size):
                pi = frozenset(combo)
                N = pi_core(G, pi, self.bounds)
                if N.order() != pi_part(n, pi) or not 1 < N.order() < n:
                    continue
                target = n // N.order()
                comp = next((S for S in reps if S.order() == target), None)
                if comp is None:
                    continue
                label = "pi=" + ",".join(str(p) for p in combo)
                rows.append((label, make_pair(G, N, comp, self.bounds)))
        return rows


def _analysis_report_row(rep):
    qc = rep.q_complement
    cert = {
        "pi": rep.pi,
        "hypotheses": rep.hypotheses,
        "o_pi_prime_order": rep.o_pi_prime.order(),
        "normalizer_order": rep.n_g_h.order(),
        "l_order": rep.l_subgroup.order(),
        "q_complement_order": None if qc is None else qc.order(),
        "pi_length": rep.pi_length,
        "frobenius_section": rep.frobenius_section,
        "chief_frobenius_factor": rep.chief_frobenius_factor,
        "solvability": rep.solvability_verdicts,
        "conclusions": rep.conclusions,
    }
    return TheoremReport("thm_1_2", rep.verdict, cert)


def _rows_cor_6_2(ctx):
    for label, H in ctx.subgroup_rows():
        yield label, partial(frobenius_kernel, ctx.group, H, ctx.bounds)


def _rows_prop_1_4(ctx):
    if not ctx.sweepable():
        return
    for label, H in ctx.subgroup_rows():
        pi = prime_set(H.order())
        yield label, partial(prop_1_4_check, ctx.group, H, pi, ctx.bounds)


def _rows_thm_1_2(ctx):
    for label, H in ctx.subgroup_rows():
        yield label, lambda H=H: _analysis_report_row(
            analyze_theorem_1_2(ctx.group, H, ctx.bounds))


def _rows_thm_1_5(ctx):
    for label, H in ctx.subgroup_rows():
        yield label, partial(theorem_1_5_check, ctx.group, H, ctx.bounds)


def _rows_thm_1_7(ctx):
    for label, H in ctx.subgroup_rows():
        yield label, partial(theorem_1_7_check, ctx.group, H, ctx.bounds)


def _rows_thm_5_1(ctx):
    for label, H in ctx.subgroup_rows():
        yield label, partial(theorem_5_1_check, ctx.group, H, ctx.bounds)


def _rows_lemmas_4_x(ctx):
    for label, H in ctx.subgroup_rows():
        yield label, partial(lemma_4_1_check, ctx.group, H, ctx.bounds)
    ds = ctx.entry.distinguished_subgroups
    nname = "N" if "N" in ds else ("O" if "O" in ds else None)
    if nname is None or "H" not in ds:
        return
    N = ctx.entry.subgroup(nname, parent=ctx.group)
    H = ctx.entry.subgroup("H", parent=ctx.group)
    pair = "%s,H" % nname
    yield pair, partial(lemma_4_3_check, ctx.group, N, H, ctx.bounds)
    yield pair, partial(lemma_4_4_check, ctx.group, N, H, ctx.bounds)
    for p in sorted(prime_set(N.order())):
        yield "%s,p=%d" % (pair, p), partial(
            lemma_4_2_check, ctx.group, N, H, p, ctx.bounds)


def _rows_coprime_2_1(ctx):
    for label, pair in ctx.pair_rows():
        yield label, partial(coprime_identity_suite, pair, ctx.bounds)


def _rows_prop_1_6(ctx):
    for label, pair in ctx.pair_rows():
        yield label, partial(prop_1_6_check, pair, ctx.bounds)


def _rows_transfer_2_3(ctx):
    for p in sorted(prime_set(ctx.group.order())):
        yield "p=%d" % p, partial(transfer_property_suite, ctx.group, p, ctx.bounds)


def _rows_thm_2_4(ctx):
    if not ctx.sweepable():
        return
    for label, H in ctx.subgroup_rows():
        yield label, partial(brauer_suzuki_check, ctx.group, H, ctx.bounds)


_ADAPTERS = {
    "cor_6_2": _rows_cor_6_2,
    "prop_1_4": _rows_prop_1_4,
    "thm_1_2": _rows_thm_1_2,
    "thm_1_5": _rows_thm_1_5,
    "thm_1_7": _rows_thm_1_7,
    "thm_5_1": _rows_thm_5_1,
    "lemmas_4_x": _rows_lemmas_4_x,
    "coprime_2_1": _rows_coprime_2_1,
    "prop_1_6": _rows_prop_1_6,
    "transfer_2_3": _rows_transfer_2_3,
    "thm_2_4": _rows_thm_2_4,
}


def _skip_report(sid, exc):
    return TheoremReport(sid, SKIPPED, {
        "reason": str(exc), "bound": exc.bound, "needed": exc.needed,
    })


# ---------------------------------------------------------------------------
# the run itself


@dataclass(frozen=True)
class RunReport:
    config: dict
    rows: tuple
    summary: dict
    timings: tuple = None

    def exit_code(self):
        """0 all good, 1 someone FAILS, 3 only bound skips in the way."""
        if self.summary.get(FAILS, 0):
            return 1
        if self.summary.get(SKIPPED, 0):
            return 3
        return 0

    def document(self):
        doc = {
            "format": REPORT_FORMAT,
            "config": self.config,
            "rows": list(self.rows),
            "summary": self.summary,
        }
        if self.timings is not None:
            doc["timings"] = list(self.timings)
        return json.dumps(doc, indent=2) + "\n"


def _normalize_suites(suites):
    if isinstance(suites, str):
        suites = (suites,)
    requested = set()
    for sid in suites:
        if sid == "all":
            requested.update(STATEMENTS)
            continue
        if sid not in _ADAPTERS:
            raise InvalidInput("unknown suite %r" % (sid,))
        requested.add(sid)
    return tuple(s for s in STATEMENTS if s in requested)


def run_suite(config=None):
    """Run the configured statement suites over the catalog and return a
    RunReport. Deterministic for a fixed config."""
    if config is None:
        config = SuiteConfig()
    ordered = _normalize_suites(config.suites)
    match = compile_filter(config.filter)

    rows = []
    timings = [] if config.timings else None
    counts = {HOLDS: 0, FAILS: 0, NOT_APPLICABLE: 0, SKIPPED: 0}

    for entry in catalog():
        if "stretch" in entry.tags and not config.include_stretch:
            continue
        if not match(entry.tags):
            continue
        if not ordered:
            continue
        ebounds = config.bounds
        if "stretch" in entry.tags and ebounds.enum < STRETCH_ENUM:
            ebounds = replace(ebounds, enum=STRETCH_ENUM)
        ctx = _EntryContext(entry, ebounds)
        for sid in ordered:
            produced = []
            try:
                for label, thunk in _ADAPTERS[sid](ctx):
                    start = time.monotonic()
                    try:
                        report = thunk()
                    except BoundExceeded as exc:
                        report = _skip_report(sid, exc)
                    produced.append((label, report, time.monotonic() - start))
            except BoundExceeded as exc:
                # the row generation itself hit a bound; keep what we have
                produced.append(("sweep", _skip_report(sid, exc), 0.0))
            for label, report, elapsed in produced:
                counts[report.verdict] += 1
                rows.append({
                    "group": entry.name,
                    "subgroup": label,
                    "suite": sid,
                    "statement": report.statement,
                    "verdict": report.verdict,
                    "certificate": _jsonable(report.certificate),
                })
                if timings is not None:
                    timings.append(round(elapsed, 6))

    summary = {"rows": len(rows)}
    summary.update(counts)
    cfg = {
        "suites": list(ordered),
        "filter": config.filter,
        "bounds": {
            "enum": config.bounds.enum,
            "subgroups": config.bounds.subgroups,
            "iso": config.bounds.iso,
        },
        "seed": config.seed,
        "include_stretch": config.include_stretch,
    }
    return RunReport(
        config=cfg,
        rows=tuple(rows),
        summary=summary,
        timings=None if timings is None else tuple(timings),
    )


# ---------------------------------------------------------------------------
# independent certificate re-verification
#
# Witness-bearing rows are re-checked from raw permutation arithmetic:
# groups are rebuilt from their generator strings and all membership,
# conjugation and order facts come from fresh stabilizer chains. The only
# non-permcore step is input resolution (looking up the catalog entry and,
# for swept rows, replaying the deterministic class sweep to recover H).


def _group_from_json(obj):
    degree = obj["degree"]
    gens = [parse_permutation(s, degree) for s in obj["generators"]]
    return PermutationGroup(gens, degree=degree)


def _resolve_subgroup(entry, G, label, bounds):
    if label in entry.distinguished_subgroups:
        return entry.subgroup(label, parent=G)
    m = _CLASS_LABEL.fullmatch(label)
    if m is None:
        return None
    if G.order() > bounds.subgroups:
        return None
    reps = subgroups_up_to_conjugacy(G, bounds)
    idx = int(m.group(1))
    if idx >= len(reps) or reps[idx].order() != int(m.group(2)):
        return None
    return reps[idx]


def _verify_normal_complement(G, H, comp_json, stated_order):
    K = _group_from_json(comp_json)
    if K.degree != G.degree:
        return False, "witness degree does not match the group"
    if K.order() != stated_order:
        return False, "witness order differs from the stated order"
    if not all(G.contains(k) for k in K.generators):
        return False, "witness generators fall outside the group"
    for k in K.generators:
        for g in G.generators:
            if not K.contains(conjugate(k, g)):
                return False, "witness is not normal"
    if K.order() * H.order() != G.order():
        return False, "witness order times subgroup order misses the group order"
    if H.order() <= 10 ** 4:
        meet = sum(1 for key in H.iter_element_keys() if K.contains_key(key))
        if meet != 1:
            return False, "witness meets the subgroup beyond the identity"
    return True, "complement re-verified"


def _verify_frobenius_witness(wit_json, stated_order):
    W = _group_from_json(wit_json)
    if W.order() != stated_order:
        return False, "witness order differs from the stated order"
    orbit = W.chain.orbits[0] if W.chain.base else ()
    if len(orbit) != W.degree:
        return False, "witness is not transitive"
    for key in W.iter_element_keys():
        fixed = sum(1 for p in range(W.degree) if key[p] == p)
        if fixed == W.degree:
            continue
        if fixed >= 2:
            return False, "a nonidentity witness element fixes two points"
    return True, "Frobenius witness re-verified"


def _verify_prop_1_4(G, H, cert, bounds):
    pi = frozenset(cert["pi"])
    hkeys = frozenset(H.element_key_set(bounds.enum))
    if cert.get("class_generators") is not None:
        # FAILS row: the cert names a class no conjugate of which embeds;
        # walk the whole conjugation orbit and look for an embedding
        degree = G.degree
        gens = [parse_permutation(s, degree) for s in cert["class_generators"]]
        S = PermutationGroup(gens, degree=degree)
        start = frozenset(S.element_key_set(bounds.enum))
        seen = {start}
        queue = [start]
        while queue:
            node = queue.pop()
            if node <= hkeys:
                return False, "claimed unembeddable class embeds after all"
            for g in G.generators:
                image = frozenset(
                    conjugate(Permutation._from_key(k, degree), g).key
                    for k in node)
                if image not in seen:
                    seen.add(image)
                    queue.append(image)
        return True, "non-embedding re-verified by full orbit walk"
    reps = [S for S in subgroups_up_to_conjugacy(G, bounds)
            if S.order() > 1 and is_pi_number(S.order(), pi)]
    embeddings = cert["embeddings"]
    if len(reps) != len(embeddings):
        return False, "embedding list does not match the class sweep"
    for S, (so, conj_str) in zip(reps, embeddings):
        if S.order() != so:
            return False, "embedding order does not match its class"
        g = parse_permutation(conj_str, G.degree)
        if not G.contains(g):
            return False, "conjugator falls outside the group"
        for s in S.generators:
            if conjugate(s, g).key not in hkeys:
                return False, "conjugated class lands outside the subgroup"
    return True, "all conjugator witnesses re-verified"


def verify_certificate(row, bounds=DEFAULT_BOUNDS):
    """Independently re-check a witness-bearing row from a run document.

    Returns (True, detail) when the certificate survives a raw permutation
    arithmetic re-check, (False, detail) when it contradicts one, and
    (None, detail) when the row carries nothing independently checkable.
    """
    try:
        entry = catalog_entry(row["group"])
    except InvalidInput:
        return None, "row group is not a catalog entry"
    statement = row["statement"]
    verdict = row["verdict"]
    cert = row["certificate"]
    G = entry.group()
    H = _resolve_subgroup(entry, G, row["subgroup"], bounds)

    if statement == "cor_6_2" and verdict == HOLDS:
        if H is None:
            return None, "row subgroup not reconstructible"
        return _verify_normal_complement(G, H, cert["kernel"], cert["kernel_order"])
    if statement == "thm_1_5" and verdict == HOLDS:
        if H is None:
            return None, "row subgroup not reconstructible"
        return _verify_normal_complement(
            G, H, cert["complement"], cert["complement_order"])
    if statement == "thm_2_4" and verdict == HOLDS:
        if H is None:
            return None, "row subgroup not reconstructible"
        return _verify_normal_complement(
            G, H, cert["complement"], cert["complement_order"])
    if statement == "thm_1_7" and verdict == HOLDS and cert.get("witness"):
        return _verify_frobenius_witness(cert["witness"], cert["witness_order"])
    if statement == "prop_1_4" and verdict in (HOLDS, FAILS):
        if H is None:
            return None, "row subgroup not reconstructible"
        return _verify_prop_1_4(G, H, cert, bounds)
    return None, "no independent recheck for %s" % statement
