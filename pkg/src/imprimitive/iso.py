"""Structured isomorphisms between groups of the family.

A descriptor fixes the torus coordinate and acts on G_u by

    (u1, u2, u3) -> (b1 u1 + d1 u3^E1, b2 u2 + d2 u3^E2, b3 u3),

E_j = e_j / e3 of the target and b1 = b2^h2 b3^h3.  The induced plane map
sends the coset of (x, 0, y) to the coset of its image, which works out to
(b1 x + c1 y^E1, b3 y) with c1 = d1 + (-d2)^h2 b3^h3.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

import numpy as np

from . import kernels as K
from .field import FieldCtx, FieldElem, field_of_order, is_power_of
from .group import BetaKind, GroupElement, GroupParams, params_validate
from .report import CheckResult, Report, check
from .tables import all_elements, all_points, all_unipotent, law_tables, point_index, power_row, unip_index
from .verify import generators

CASES = ("14.1", "14.2", "14.3", "custom")
EXHAUSTIVE_MAX_Q = 5


class NotApplicable(ValueError):
    code = "NotApplicable"


def _elem(ctx: FieldCtx, v) -> FieldElem:
    """FieldElem as given, or the element with that index."""
    return v if isinstance(v, FieldElem) else ctx.at(int(v))


def _ratio(a: int, b: int) -> int | None:
    """a / b when it is a positive integer."""
    if b == 0 or a % b or a // b <= 0:
        return None
    return a // b


@dataclass(frozen=True)
class IsoDescriptor:
    case: str
    b2: FieldElem
    b3: FieldElem
    d1: FieldElem
    d2: FieldElem
    source: GroupParams
    target: GroupParams

    @property
    def field(self) -> FieldCtx:
        return self.target.field

    @property
    def E1(self) -> int | None:
        return _ratio(self.target.e1, self.target.e3)

    @property
    def E2(self) -> int | None:
        return _ratio(self.target.e2, self.target.e3)

    @property
    def b1(self) -> FieldElem:
        return self.b2**self.target.h2 * self.b3**self.target.h3

    @property
    def c1(self) -> FieldElem:
        """y-coefficient of the induced plane map."""
        return self.d1 + (-self.d2) ** self.target.h2 * self.b3**self.target.h3

    def to_dict(self) -> dict:
        return {"case": self.case, "b1": str(self.b1), "b2": str(self.b2), "b3": str(self.b3),
                "d1": str(self.d1), "d2": str(self.d2), "c1": str(self.c1),
                "source": self.source.to_dict(), "target": self.target.to_dict()}

    def raw(self) -> tuple[int, int, int, int, int]:
        return self.b1.val, self.b2.val, self.b3.val, self.d1.val, self.d2.val


def validate_descriptor(desc: IsoDescriptor) -> None:
    """Raise NotApplicable unless the descriptor's shape constraints hold."""
    S, T = desc.source, desc.target
    if S.field != T.field:
        raise NotApplicable("source and target live over different fields")
    if not desc.b2 or not desc.b3:
        raise NotApplicable("b2 and b3 must be nonzero")
    if desc.d1 and desc.E1 is None:
        raise NotApplicable(f"d1 != 0 needs e3 | e1 with e1/e3 > 0 (e1={T.e1}, e3={T.e3})")
    if desc.d2 and desc.E2 is None:
        raise NotApplicable(f"d2 != 0 needs e3 | e2 with e2/e3 > 0 (e2={T.e2}, e3={T.e3})")
    if desc.case == "custom":
        return
    if desc.case not in CASES:
        raise NotApplicable(f"unknown case {desc.case!r}")
    if S.invariants != T.invariants:
        raise NotApplicable(f"case {desc.case} keeps (e2,e3,h2,h3): {S.invariants} vs {T.invariants}")
    if S.beta.tag != "zero" or T.beta.tag != "monomial":
        raise NotApplicable(f"case {desc.case} maps beta = 0 to a monomial beta")
    p, r, s = T.p, T.beta.r, T.beta.s
    want = {"14.1": (p**r, p**s), "14.2": (p**s, p**r), "14.3": (p**r, p**r)}[desc.case]
    if desc.case == "14.3" and (p != 2 or r != s):
        raise NotApplicable("case 14.3 is the characteristic 2 shape with r = s")
    if desc.case != "14.3" and r >= s:
        raise NotApplicable(f"case {desc.case} needs r < s")
    if T.e2 * T.h2 != T.e3 * want[0] or T.h3 != want[1]:
        raise NotApplicable(f"case {desc.case} needs (e2 h2, h3) = (e3 {want[0]}, {want[1]}), "
                            f"got ({T.e2 * T.h2}, {T.h3})")
    e = desc.E2
    b3e = desc.b3**e if e else desc.field.zero
    if desc.case == "14.1":
        ok = desc.d2 == b3e and desc.d1 == desc.b3 ** (p**r + p**s)
    elif desc.case == "14.2":
        ok = desc.d1 == 0 and desc.d2 == -b3e
    else:
        ok = desc.d2 == b3e
    if not ok:
        raise NotApplicable(f"d1, d2 do not have the case {desc.case} values")


def iso_map(desc: IsoDescriptor, g: GroupElement) -> GroupElement:
    validate_descriptor(desc)
    ctx = desc.field
    u1, u2, u3 = g.u1, g.u2, g.u3
    w1 = desc.b1 * u1 + (desc.d1 * u3**desc.E1 if desc.d1 else ctx.zero)
    w2 = desc.b2 * u2 + (desc.d2 * u3**desc.E2 if desc.d2 else ctx.zero)
    return GroupElement(w1, w2, desc.b3 * u3, g.a)


def plane_map(desc: IsoDescriptor, x: FieldElem, y: FieldElem) -> tuple[FieldElem, FieldElem]:
    term = desc.c1 * y**desc.E1 if desc.E1 else desc.field.zero
    return desc.b1 * x + term, desc.b3 * y


# -- descriptor constructors -------------------------------------------------------

def case_params(case: str, ctx: FieldCtx, r: int, s: int, e2: int = 1, e3: int = 1) -> tuple[GroupParams, GroupParams]:
    """(source, target) parameter pair in the shape of the given case."""
    p = ctx.p
    if case == "14.3" and p != 2:
        raise NotApplicable("case 14.3 is the characteristic 2 shape with r = s")
    if case != "14.3" and r >= s:
        raise NotApplicable(f"case {case} needs r < s")
    lead = {"14.1": p**r, "14.2": p**s, "14.3": p**r}[case]
    h3 = {"14.1": p**s, "14.2": p**r, "14.3": p**r}[case]
    if (e3 * lead) % e2 or not is_power_of((e3 * lead) // e2, p):
        raise NotApplicable(f"h2 = (e3/e2) {lead} is not a power of {p}")
    h2 = (e3 * lead) // e2
    common = dict(field=ctx, e2=e2, e3=e3, h2=h2, h3=h3)
    src = params_validate(common, beta="zero")
    if case == "14.3":
        dst = params_validate(common, beta=BetaKind.monomial(r, r), allow_equal_exponents=True)
    else:
        dst = params_validate(common, beta=BetaKind.monomial(r, s))
    return src, dst


def case_descriptor(case: str, ctx: FieldCtx, r: int, s: int, b2, b3, e2: int = 1, e3: int = 1, d1=0) -> IsoDescriptor:
    src, dst = case_params(case, ctx, r, s, e2, e3)
    b2, b3, d1 = _elem(ctx, b2), _elem(ctx, b3), _elem(ctx, d1)
    E2 = _ratio(dst.e2, dst.e3)
    b3e = b3**E2 if E2 else ctx.zero
    p = ctx.p
    if case == "14.1":
        D1, D2 = b3 ** (p**r + p**s), b3e
    elif case == "14.2":
        D1, D2 = ctx.zero, -b3e
    else:
        D1, D2 = d1, b3e
    desc = IsoDescriptor(case, b2, b3, D1, D2, src, dst)
    validate_descriptor(desc)
    return desc


def identity_descriptor(params: GroupParams) -> IsoDescriptor:
    ctx = params.field
    return IsoDescriptor("custom", ctx.one, ctx.one, ctx.zero, ctx.zero, params, params)


def inverse_descriptor(desc: IsoDescriptor) -> IsoDescriptor:
    """Descriptor of the inverse map, target -> source."""
    b2i, b3i = desc.b2.inverse(), desc.b3.inverse()
    E1, E2 = desc.E1, desc.E2
    d1 = -desc.d1 * desc.b1.inverse() * b3i**E1 if desc.d1 else desc.d1
    d2 = -desc.d2 * b2i * b3i**E2 if desc.d2 else desc.d2
    out = IsoDescriptor("custom", b2i, b3i, d1, d2, desc.target, desc.source)
    if out.b1 != desc.b1.inverse():
        raise NotApplicable("source and target h exponents differ; the inverse has no descriptor")
    return out


def corrupted(desc: IsoDescriptor, **changes) -> IsoDescriptor:
    """Copy with some fields replaced and the case relabelled custom."""
    ctx = desc.field
    return replace(desc, case="custom", **{k: _elem(ctx, v) for k, v in changes.items()})


# -- vectorised maps ------------------------------------------------------------------

class _Maps:
    """Field-table versions of the unipotent and plane maps, vectorised over
    rows of descriptor values (b1, b2, b3, d1, d2, c1)."""

    def __init__(self, target: GroupParams):
        ctx = target.field
        self.ft = law_tables(target).field
        E1, E2 = _ratio(target.e1, target.e3), _ratio(target.e2, target.e3)
        zeros = np.zeros(ctx.order, dtype=np.int64)
        self.pE1 = power_row(ctx, E1) if E1 else zeros
        self.pE2 = power_row(ctx, E2) if E2 else zeros

    def unip(self, C: np.ndarray, U: np.ndarray) -> np.ndarray:
        add, mul = self.ft.add, self.ft.mul
        b1, b2, b3, d1, d2 = (C[..., i] for i in range(5))
        u1, u2, u3 = U[..., 0], U[..., 1], U[..., 2]
        return np.stack([add[mul[b1, u1], mul[d1, self.pE1[u3]]],
                         add[mul[b2, u2], mul[d2, self.pE2[u3]]],
                         mul[b3, u3]], axis=-1)

    def group(self, C: np.ndarray, G: np.ndarray) -> np.ndarray:
        return np.concatenate([self.unip(C, G[..., :3]), G[..., 3:]], axis=-1)

    def plane(self, c1, b1, b3, P: np.ndarray) -> np.ndarray:
        add, mul = self.ft.add, self.ft.mul
        x, y = P[..., 0], P[..., 1]
        return np.stack([add[mul[b1, x], mul[c1, self.pE1[y]]], mul[b3, y]], axis=-1)


def _desc_row(desc: IsoDescriptor) -> np.ndarray:
    return np.array(desc.raw(), dtype=np.int64)


def check_iso(desc: IsoDescriptor, q: int | None = None, exhaustive: bool | None = None) -> CheckResult:
    """Verify that the descriptor is an isomorphism of permutation groups.

    Sub-checks (counted in the entry): bijectivity of the G_u map and of the
    plane map, the homomorphism law on G_u, compatibility with the torus,
    the plane-map shape, blocks to blocks and the intertwining law.  With
    ``exhaustive`` the homomorphism and intertwining laws are checked on
    every pair; otherwise on every element against a generating set, which
    is equivalent once the map is known to fix the identity.
    """
    S, T = desc.source, desc.target
    if q is not None:
        ctx = field_of_order(q)
        if ctx != T.field:
            raise NotApplicable(f"descriptor lives over {T.field}, not F_{q}")
    q = T.field.order
    if exhaustive is None:
        exhaustive = q <= EXHAUSTIVE_MAX_Q
    Ls, Lt = law_tables(S), law_tables(T)
    maps = _Maps(T)
    row = _desc_row(desc)
    b1, b2, b3, d1, d2 = (int(v) for v in row)
    c1 = desc.c1.val
    counts: dict[str, int] = {"q": q, "exhaustive": int(exhaustive)}
    witness: dict | None = None

    def fail(name: str, n: int, w):
        nonlocal witness
        counts[f"{name}_violations"] = n
        if n and witness is None:
            witness = {"subcheck": name, **w}

    U = all_unipotent(q)
    phiU = maps.unip(row, U)
    fail("identity", int(np.any(phiU[0] != 0)), {"image": phiU[0]})
    n = len(U) - np.unique(unip_index(phiU, q)).size
    fail("unipotent_bijective", n, {"images_collide": n})

    if exhaustive:
        Ua, Vb = np.repeat(U, len(U), axis=0), np.tile(U, (len(U), 1))
    else:
        gu = generators(q, T.field.k)[:-1, :3]
        Ua, Vb = np.repeat(U, len(gu), axis=0), np.tile(gu, (len(U), 1))
    counts["homomorphism_pairs"] = len(Ua)
    lhs = maps.unip(row, K.unip_mul(Ls, Ua, Vb))
    rhs = K.unip_mul(Lt, maps.unip(row, Ua), maps.unip(row, Vb))
    bad = np.flatnonzero(np.any(lhs != rhs, axis=1))
    fail("homomorphism", bad.size, bad.size and {"u": Ua[bad[0]], "v": Vb[bad[0]],
                                                  "phi_uv": lhs[bad[0]], "phi_u_phi_v": rhs[bad[0]]})

    A = np.repeat(np.arange(1, q), len(U))
    UU = np.tile(U, (q - 1, 1))
    lhs = maps.unip(row, K.torus(Ls, A, UU))
    rhs = K.torus(Lt, A, maps.unip(row, UU))
    bad = np.flatnonzero(np.any(lhs != rhs, axis=1))
    fail("torus_compatible", bad.size, bad.size and {"a": A[bad[0]], "u": UU[bad[0]]})

    P = all_points(q)
    lifted = np.stack([P[:, 0], np.zeros(len(P), dtype=np.int64), P[:, 1]], axis=1)
    phiP = K.canonical(Lt, maps.unip(row, lifted))
    shaped = maps.plane(c1, b1, b3, P)
    bad = np.flatnonzero(np.any(phiP != shaped, axis=1))
    fail("plane_map_shape", bad.size, bad.size and {"P": P[bad[0]], "coset_image": phiP[bad[0]],
                                                     "shaped_image": shaped[bad[0]]})
    n = len(P) - np.unique(point_index(phiP, q)).size
    fail("plane_bijective", n, {"images_collide": n})
    blocks_ok = all(np.unique(phiP[P[:, 1] == y][:, 1]).size == 1 for y in range(q))
    fail("blocks_to_blocks", int(not blocks_ok), {})

    G = all_elements(q) if exhaustive else generators(q, T.field.k)
    counts["intertwining_elements"] = len(G)
    gP = K.act_all_pairs(Ls, G, P)                                   # g(P)
    left = phiP[point_index(gP, q)]                                   # Phi2(g(P))
    right = K.act_all_pairs(Lt, maps.group(row, G), phiP)            # Phi1(g)(Phi2(P))
    bad = np.any(left != right, axis=2)
    w = {}
    if bad.any():
        gi, pi = np.argwhere(bad)[0]
        w = {"g": G[gi], "P": P[pi], "phi2_gP": left[gi, pi], "phi1g_phi2P": right[gi, pi]}
    fail("intertwining", int(bad.sum()), w)

    # the printed plane map uses d1 in place of c1; recorded, not asserted
    printed = maps.plane(d1, b1, b3, P)
    right_p = K.act_all_pairs(Lt, maps.group(row, G), printed)
    left_p = printed[point_index(gP, q)]
    counts["printed_plane_map_mismatches"] = int(np.any(left_p != right_p, axis=2).sum())

    ok = all(v == 0 for k, v in counts.items() if k.endswith("_violations"))
    name = f"iso.{desc.case}" if desc.case != "custom" else "iso.custom"
    return check(name, ok, counts, witness)


# -- search ---------------------------------------------------------------------------

def _candidates(src: GroupParams, dst: GroupParams) -> np.ndarray:
    """Rows (b1, b2, b3, d1, d2) in search order b2, b3, d1, d2."""
    ctx = dst.field
    q = ctx.order
    E1, E2 = _ratio(dst.e1, dst.e3), _ratio(dst.e2, dst.e3)
    d1s = np.arange(q) if E1 else np.zeros(1, dtype=np.int64)
    d2s = np.arange(q) if E2 else np.zeros(1, dtype=np.int64)
    nz = np.arange(1, q)
    b2, b3, d1, d2 = (g.ravel() for g in np.meshgrid(nz, nz, d1s, d2s, indexing="ij"))
    mul = law_tables(dst).field.mul
    b1 = mul[power_row(ctx, dst.h2)[b2], power_row(ctx, dst.h3)[b3]]
    return np.stack([b1, b2, b3, d1, d2], axis=1).astype(np.int64)


def _prefilter(src: GroupParams, dst: GroupParams, C: np.ndarray, probes: int = 48) -> np.ndarray:
    """Candidates that survive the homomorphism and torus laws on a fixed
    deterministic sample."""
    q = dst.field.order
    Ls, Lt = law_tables(src), law_tables(dst)
    maps = _Maps(dst)
    rng = np.random.default_rng(q)
    U = all_unipotent(q)
    a = U[rng.integers(0, len(U), probes)]
    b = U[rng.integers(0, len(U), probes)]
    gen = dst.field.generator().val
    alive = np.ones(len(C), dtype=bool)
    for i in range(probes):
        idx = np.flatnonzero(alive)
        if not idx.size:
            break
        c = C[idx]
        ua, ub = np.tile(a[i], (len(c), 1)), np.tile(b[i], (len(c), 1))
        lhs = maps.unip(c, K.unip_mul(Ls, ua, ub))
        rhs = K.unip_mul(Lt, maps.unip(c, ua), maps.unip(c, ub))
        ok = np.all(lhs == rhs, axis=1)
        ga = np.full(len(c), gen)
        ok &= np.all(maps.unip(c, K.torus(Ls, ga, ua)) == K.torus(Lt, ga, maps.unip(c, ua)), axis=1)
        alive[idx[~ok]] = False
    return np.flatnonzero(alive)


@dataclass
class SearchResult:
    descriptor: IsoDescriptor | None
    candidates: int
    survivors: int
    checked: int

    @property
    def found(self) -> bool:
        return self.descriptor is not None

    def to_dict(self) -> dict:
        return {"found": self.found, "candidates": self.candidates, "prefilter_survivors": self.survivors,
                "fully_checked": self.checked, "evidence": "definitive" if self.found else "heuristic",
                "descriptor": self.descriptor.to_dict() if self.found else None}


def search_iso_detailed(src: GroupParams, dst: GroupParams, q: int | None = None) -> SearchResult:
    if q is not None:
        ctx = field_of_order(q)
        src, dst = src.with_field(ctx), dst.with_field(ctx)
    if src.field != dst.field:
        raise NotApplicable("source and target must share a field")
    if src.e3 != dst.e3:
        return SearchResult(None, 0, 0, 0)
    ctx = dst.field
    C = _candidates(src, dst)
    alive = _prefilter(src, dst, C)
    checked = 0
    for i in alive:
        _, b2, b3, d1, d2 = (int(v) for v in C[i])
        desc = IsoDescriptor("custom", ctx.at(b2), ctx.at(b3), ctx.at(d1), ctx.at(d2), src, dst)
        checked += 1
        if check_iso(desc).ok:
            return SearchResult(desc, len(C), len(alive), checked)
    return SearchResult(None, len(C), len(alive), checked)


def search_iso(src: GroupParams, dst: GroupParams, q: int | None = None) -> IsoDescriptor | None:
    return search_iso_detailed(src, dst, q).descriptor


def run_iso(desc: IsoDescriptor, q: int | None = None) -> Report:
    report = Report("iso", {"source": desc.source.to_dict(), "target": desc.target.to_dict()},
                    desc.field.describe())
    report.extra["descriptor"] = desc.to_dict()
    report.checks.append(check_iso(desc, q))
    return report
