"""Bounded census of parameter tuples up to structured isomorphism over F_q."""
from __future__ import annotations

import itertools
from collections import defaultdict

import numpy as np

from . import kernels as K
from .field import FieldCtx, field_of_order
from .group import BetaKind, GroupParams, ParamsError, params_validate
from .iso import NotApplicable, case_descriptor, search_iso_detailed
from .report import Report, check
from .tables import E1, E2, E3, H2, H3, all_elements, all_points, law_tables, power_row


def _powers(p: int, bound: int) -> list[int]:
    out, v = [], 1
    while v <= bound:
        out.append(v)
        v *= p
    return out


def _logs(p: int, bound: int) -> list[int]:
    return list(range(len(_powers(p, bound))))


def catalogue(ctx: FieldCtx, bound: int) -> list[GroupParams]:
    """Every validated tuple whose e2, e3, h2, h3 lie in 1..bound.

    Characteristic 2 also admits monomial(r, r) through the relaxation flag.
    """
    p = ctx.p
    pw, lg = _powers(p, bound), _logs(p, bound)
    kinds: list[BetaKind] = [BetaKind.zero()]
    kinds += [BetaKind.witt(r) for r in lg]
    kinds += [BetaKind.monomial(r, s) for r in lg for s in lg if r < s or (p == 2 and r == s)]
    if p > 2:
        for l2, m, n in itertools.product(lg, lg, lg):
            if m < n:
                if l2 + m in lg:
                    kinds.append(BetaKind.ncm(l2, l2 + m, m, n))
                if l2 + n in lg:
                    kinds.append(BetaKind.ncn(l2, l2 + n, m, n))
    out: list[GroupParams] = []
    seen = set()
    for beta in kinds:
        for e3, h2, h3 in itertools.product(pw, pw, pw):
            e2s = range(1, bound + 1) if beta.tag == "zero" else [None]
            for e2 in e2s:
                raw = dict(field=ctx, e3=e3, h2=h2, h3=h3, beta=beta, allow_equal_exponents=True)
                if beta.is_nc:
                    raw.pop("h2"), raw.pop("h3")
                if e2 is not None:
                    raw["e2"] = e2
                try:
                    par = params_validate(raw)
                except ParamsError:
                    continue
                if not 1 <= par.e2 <= bound or max(par.h2, par.h3) > bound:
                    continue
                key = (par.invariants, par.beta)
                if key not in seen:
                    seen.add(key)
                    out.append(par)
    return out


def law_fingerprint(params: GroupParams) -> bytes:
    """Bytes that determine the group law over F_q completely: the torus
    power maps and the products (0,0,x3)(0,y2,y3), which carry psi1, psi2."""
    law = law_tables(params)
    q = law.q
    r = np.arange(q)
    x3, y2, y3 = (g.ravel() for g in np.meshgrid(r, r, r, indexing="ij"))
    z = np.zeros_like(x3)
    prod = K.unip_mul(law, np.stack([z, z, x3], 1), np.stack([z, y2, y3], 1))
    return law.pw[[E1, E2, E3]].tobytes() + prod[:, :2].tobytes()


def exponent_shadow(params: GroupParams) -> bytes:
    """The maps x -> x^e for e in (e1, e2, e3, h2, h3) over F_q."""
    return law_tables(params).pw[[E1, E2, E3, H2, H3]].tobytes()


def fixed_point_profile(params: GroupParams) -> tuple:
    """Histogram of (a, #fixed points) over G; preserved by every map that
    fixes the torus coordinate and intertwines the actions."""
    law = law_tables(params)
    q = law.q
    G = all_elements(q)
    counts = K.fixed_point_counts(law, G, all_points(q))
    keys, n = np.unique(np.stack([G[:, 3], counts], 1), axis=0, return_counts=True)
    return tuple(map(tuple, np.concatenate([keys, n[:, None]], 1).tolist()))


def _search_key(params: GroupParams) -> bytes:
    """What the structured search reads from its target besides the law."""
    t = law_tables(params)
    ctx = params.field
    parts = [params.e3.to_bytes(4, "little")]
    for e in (params.e1, params.e2):
        E = e // params.e3 if e % params.e3 == 0 and e // params.e3 > 0 else None
        parts.append(b"-" if E is None else power_row(ctx, E).tobytes())
    parts.append(t.pw[[H2, H3]].tobytes())
    return b"|".join(parts)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        a, b = self.find(i), self.find(j)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def _expected_merges(tuples: list[GroupParams]) -> list[tuple[int, int, str]]:
    """(zero index, monomial index, case) for pairs that one of the three
    case shapes relates.  Shapes whose f2 would need the non-polynomial
    power T^(e2/e3) (e3 not dividing e2) are left out."""
    by_inv = defaultdict(list)
    for i, t in enumerate(tuples):
        by_inv[t.invariants].append(i)
    out = []
    for i, t in enumerate(tuples):
        if t.beta.tag != "monomial" or t.e2 % t.e3:
            continue
        for j in by_inv[t.invariants]:
            if tuples[j].beta.tag != "zero":
                continue
            for case in ("14.1", "14.2", "14.3"):
                try:
                    desc = case_descriptor(case, t.field, t.beta.r, t.beta.s, 1, 1, t.e2, t.e3)
                except (NotApplicable, ParamsError):
                    continue
                if desc.target.invariants == t.invariants and desc.target.beta == t.beta:
                    out.append((j, i, case))
                    break
    return out


def classify(ctx: FieldCtx, bound: int) -> Report:
    q = ctx.order
    tuples = catalogue(ctx, bound)
    labels = [t.label() for t in tuples]
    uf = _UnionFind(len(tuples))
    merge_kind: dict[tuple[int, int], str] = {}

    groups = defaultdict(list)
    for i, t in enumerate(tuples):
        groups[law_fingerprint(t)].append(i)
    reps = []
    for members in groups.values():
        reps.append(members[0])
        for j in members[1:]:
            uf.union(members[0], j)
            merge_kind[(members[0], j)] = "identical_law"

    # the search space depends on the target's integer exponents, which
    # differ between members of one identical-law group
    targets = {}
    for members in groups.values():
        seen: dict[bytes, int] = {}
        for j in members:
            seen.setdefault(_search_key(tuples[j]), j)
        targets[members[0]] = list(seen.values())

    buckets = defaultdict(list)
    for i in reps:
        buckets[fixed_point_profile(tuples[i])].append(i)
    searches = 0
    for members in buckets.values():
        for i, j in itertools.combinations(members, 2):
            if uf.find(i) == uf.find(j):
                continue
            for src, dst in [(i, t) for t in targets[j]] + [(j, t) for t in targets[i]]:
                searches += 1
                if search_iso_detailed(tuples[src], tuples[dst]).found:
                    uf.union(i, j)
                    merge_kind[(src, dst)] = "structured_isomorphism"
                    break

    classes = defaultdict(list)
    for i in range(len(tuples)):
        classes[uf.find(i)].append(i)
    table = []
    for root in sorted(classes):
        members = classes[root]
        table.append({"representative": labels[root], "size": len(members),
                      "members": [labels[i] for i in members],
                      "invariants": sorted({tuple(tuples[i].invariants) for i in members})})

    report = Report("classify", {"char": ctx.p, "ext": ctx.k, "bound": bound, "q": q}, ctx.describe())
    report.extra["classes"] = table
    report.extra["merges"] = [{"a": labels[i], "b": labels[j], "via": v} for (i, j), v in sorted(merge_kind.items())]
    report.extra["evidence"] = "heuristic: separations over F_q do not prove non-isomorphism over the closure"

    # tuples with different (e2,e3,h2,h3) may only share a class when their
    # exponent maps coincide on F_q
    bad = []
    aliased = 0
    for members in classes.values():
        invs = {tuples[i].invariants for i in members}
        if len(invs) > 1:
            if len({exponent_shadow(tuples[i]) for i in members}) == 1:
                aliased += 1
            else:
                bad.append([labels[i] for i in members])
    report.checks.append(check("classify.distinct_tuples_never_merge", not bad,
                               {"tuples": len(tuples), "classes": len(classes),
                                "classes_merged_by_field_aliasing": aliased, "searches": searches},
                               bad[:1]))
    missing = [(labels[i], labels[j], c) for i, j, c in _expected_merges(tuples) if uf.find(i) != uf.find(j)]
    report.checks.append(check("classify.case_shapes_merge", not missing,
                               {"expected_merges": len(_expected_merges(tuples)), "missing": len(missing)},
                               missing[:1]))
    return report


def classify_q(p: int, bound: int, q: int) -> Report:
    ctx = field_of_order(q)
    if ctx.p != p:
        raise ValueError(f"q = {q} is not a power of {p}")
    return classify(ctx, bound)

