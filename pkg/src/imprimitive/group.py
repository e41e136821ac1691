"""Parameters and group law of the (2,2)-imprimitive groups.

The unipotent radical lives on k^3 with product

    (x1,x2,x3)(y1,y2,y3) = (x1+y1+psi1(x3,y2,y3), x2+y2+psi2(x3,y3), x3+y3)

and the torus k* acts diagonally with exponents (e1, e2, e3).  The full group
is the semidirect product on k^3 x k*.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .field import FieldCtx, FieldElem, FieldError, field_make, is_power_of
from .poly import MultiPoly, witt_coefficient

BETA_KINDS = ("zero", "witt", "monomial", "ncm", "ncn")
NC_KINDS = ("ncm", "ncn")

PSI1_VARS = ("x3", "y2", "y3")
BETA_VARS = ("x3", "y3")
UNIP_VARS = ("u1", "u2", "u3", "v1", "v2", "v3", "w1", "w2", "w3")


class ParamsError(ValueError):
    """A violated parameter constraint; ``code`` names it."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


class NotATorusElement(ValueError):
    code = "NotATorusElement"


@dataclass(frozen=True)
class BetaKind:
    tag: str = "zero"
    r: int = 0
    s: int = 0
    l2: int = 0
    l3: int = 0
    m: int = 0
    n: int = 0

    @classmethod
    def zero(cls):
        return cls("zero")

    @classmethod
    def witt(cls, r: int):
        return cls("witt", r=r)

    @classmethod
    def monomial(cls, r: int, s: int):
        return cls("monomial", r=r, s=s)

    @classmethod
    def ncm(cls, l2: int, l3: int, m: int, n: int):
        return cls("ncm", l2=l2, l3=l3, m=m, n=n)

    @classmethod
    def ncn(cls, l2: int, l3: int, m: int, n: int):
        return cls("ncn", l2=l2, l3=l3, m=m, n=n)

    @property
    def is_nc(self) -> bool:
        return self.tag in NC_KINDS

    def exponents(self) -> dict[str, int]:
        if self.tag == "witt":
            return {"r": self.r}
        if self.tag == "monomial":
            return {"r": self.r, "s": self.s}
        if self.is_nc:
            return {"l2": self.l2, "l3": self.l3, "m": self.m, "n": self.n}
        return {}

    def to_dict(self) -> dict:
        return {"kind": self.tag, **self.exponents()}

    def __str__(self):
        ex = ",".join(f"{k}={v}" for k, v in self.exponents().items())
        return f"{self.tag}({ex})" if ex else self.tag


@dataclass(frozen=True)
class GroupParams:
    field: FieldCtx
    e2: int
    e3: int
    h2: int
    h3: int
    beta: BetaKind
    e1: int
    allow_equal_exponents: bool = False

    @property
    def p(self) -> int:
        return self.field.characteristic

    @property
    def invariants(self) -> tuple[int, int, int, int]:
        return (self.e2, self.e3, self.h2, self.h3)

    def to_dict(self) -> dict:
        return {
            "char": self.field.characteristic,
            "ext": self.field.extension_degree,
            "e1": self.e1,
            "e2": self.e2,
            "e3": self.e3,
            "h2": self.h2,
            "h3": self.h3,
            "beta": self.beta.to_dict(),
        }

    def with_field(self, ctx: FieldCtx) -> GroupParams:
        """Same parameters over another field of the same characteristic."""
        if ctx.characteristic != self.field.characteristic:
            raise ParamsError("BadField", f"{ctx} has characteristic {ctx.characteristic}, "
                                          f"expected {self.field.characteristic}")
        return replace(self, field=ctx)

    def label(self) -> str:
        return f"G[e2={self.e2},e3={self.e3},h2={self.h2},h3={self.h3};{self.beta}]"


def _beta_kind_from(raw: Mapping) -> BetaKind:
    beta = raw.get("beta", "zero")
    if isinstance(beta, BetaKind):
        return beta
    tag = str(beta).lower()
    if tag not in BETA_KINDS:
        raise ParamsError("BadBetaKind", f"unknown beta kind {beta!r}")
    ints = {k: int(raw.get(k) or 0) for k in ("r", "s", "l2", "l3", "m", "n")}
    return BetaKind(tag, **ints)


def _int_or(raw: Mapping, key: str, default: int) -> int:
    v = raw.get(key)
    return default if v is None else int(v)


def _deg_beta(p: int, b: BetaKind) -> int:
    if b.tag == "witt":
        return p ** (b.r + 1)
    if b.tag == "monomial":
        return p**b.r + p**b.s
    if b.is_nc:
        return p**b.l3 + p ** (b.l2 + b.m) + p ** (b.l2 + b.n)
    return 0


def params_validate(raw: Mapping | None = None, **kw) -> GroupParams:
    """Check a raw parameter record and derive e1 (and e2 / h2 / h3 where
    they are forced).  Raises :class:`ParamsError` naming the constraint.

    Recognised keys: char, ext, e2, e3, h2, h3, beta, r, s, l2, l3, m, n,
    allow_equal_exponents.  ``beta`` may be a :class:`BetaKind`.
    """
    raw = {**(raw or {}), **kw}
    p = int(raw.get("char", raw.get("p", 0)) or 0)
    k = int(raw.get("ext", raw.get("k", 1)) or 1)
    try:
        ctx = raw["field"] if isinstance(raw.get("field"), FieldCtx) else field_make(p, k)
    except FieldError as exc:
        raise ParamsError(exc.code, str(exc)) from None
    p = ctx.characteristic
    beta = _beta_kind_from(raw)
    allow_eq = bool(raw.get("allow_equal_exponents", False))

    for name, v in beta.exponents().items():
        if v < 0:
            raise ParamsError("BadExponentOrder", f"{name}={v} must be nonnegative")
    if beta.tag != "zero" and p == 0:
        raise ParamsError("BadCharForBeta", f"beta kind {beta.tag} needs positive characteristic")
    if beta.is_nc and p == 2:
        raise ParamsError("BadCharForBeta", "non-commutative kinds need characteristic p > 2")
    if beta.tag == "monomial":
        if beta.r == beta.s:
            if not (allow_eq and p == 2):
                raise ParamsError("BadExponentOrder",
                                  f"monomial needs r < s (r = s only in characteristic 2 "
                                  f"with allow_equal_exponents), got r={beta.r}, s={beta.s}")
        elif beta.r > beta.s:
            raise ParamsError("BadExponentOrder", f"monomial needs r < s, got r={beta.r}, s={beta.s}")
    if beta.is_nc:
        if not beta.m < beta.n:
            raise ParamsError("BadExponentOrder", f"need m < n, got m={beta.m}, n={beta.n}")
        want = beta.m if beta.tag == "ncm" else beta.n
        if beta.l3 - beta.l2 != want:
            raise ParamsError("BadExponentOrder",
                              f"{beta.tag} needs l3 - l2 = {'m' if beta.tag == 'ncm' else 'n'} "
                              f"({want}), got l3 - l2 = {beta.l3 - beta.l2}")

    def is_ok_power(v: int) -> bool:
        return v == 1 if p == 0 else is_power_of(v, p)

    e3 = _int_or(raw, "e3", 1)
    if not is_ok_power(e3):
        raise ParamsError("BadE3", f"e3={e3} must be {'1' if p == 0 else f'a power of {p}'}")

    h2_raw, h3_raw = raw.get("h2"), raw.get("h3")
    if beta.is_nc:
        h2, h3 = p**beta.l2, p**beta.l3
        for name, given, want in (("h2", h2_raw, h2), ("h3", h3_raw, h3)):
            if given is not None and int(given) != want:
                raise ParamsError("BadH", f"{name}={given} but {beta.tag} forces {name}={want}")
    else:
        h2, h3 = _int_or(raw, "h2", 1), _int_or(raw, "h3", 1)
    for name, v in (("h2", h2), ("h3", h3)):
        if not is_ok_power(v):
            raise ParamsError("BadH", f"{name}={v} must be {'1' if p == 0 else f'a power of {p}'}")

    deg = _deg_beta(p, beta)
    e2_raw = raw.get("e2")
    e2_given = None if e2_raw is None else int(e2_raw)
    if beta.is_nc:
        want = e3 * (p**beta.m + p**beta.n)
        if e2_given is not None and e2_given != want:
            raise ParamsError("BadE2NC", f"e2={e2_given} but e3*(p^m+p^n) = {want}")
        e2 = want
    elif beta.tag == "zero":
        if e2_given is None:
            raise ParamsError("BadE2", "e2 is required when beta is zero")
        e2 = e2_given
    else:
        num = e3 * (deg - h3)
        if e2_given is None:
            if num % h2:
                raise ParamsError("BadE1Consistency",
                                  f"e2*h2 = e3*(deg beta - h3) = {num} is not divisible by h2={h2}")
            e2 = num // h2
        else:
            e2 = e2_given
            if e2 * h2 != num:
                raise ParamsError("BadE1Consistency",
                                  f"e2*h2 = {e2 * h2} but e3*(deg beta - h3) = {num}")
    if e2 == 0:
        raise ParamsError("BadE2", "e2 must be nonzero")

    e1 = e2 * h2 + e3 * h3
    if beta.tag != "zero" and e1 != e3 * deg:
        raise ParamsError("BadE1Consistency", f"e1={e1} but e3*deg(beta) = {e3 * deg}")

    return GroupParams(ctx, e2, e3, h2, h3, beta, e1, allow_eq)


# -- polynomial data ------------------------------------------------------------

@lru_cache(maxsize=256)
def beta_poly(params: GroupParams) -> MultiPoly:
    """beta(x3, y3) for the parameter's kind."""
    ctx, b, p = params.field, params.beta, params.p
    if b.tag == "zero":
        return MultiPoly.zero(ctx, BETA_VARS)
    if b.tag == "witt":
        q = p**b.r
        return MultiPoly(ctx, BETA_VARS, {
            (i * q, (p - i) * q): witt_coefficient(p, i).val for i in range(1, p)
        })
    if b.tag == "monomial":
        return MultiPoly(ctx, BETA_VARS, {(p**b.r, p**b.s): 1})
    half = Fraction(1, 2)
    A, B, C = p**b.l3, p ** (b.l2 + b.m), p ** (b.l2 + b.n)
    if b.tag == "ncm":
        return MultiPoly(ctx, BETA_VARS, {(2 * A, C): half})
    return MultiPoly(ctx, BETA_VARS, {(A + B, A): 1, (B, 2 * A): half})


@lru_cache(maxsize=256)
def psi_polys(params: GroupParams) -> tuple[MultiPoly, MultiPoly]:
    """(psi1 in x3,y2,y3 ; psi2 in x3,y3)."""
    ctx = params.field
    psi1 = MultiPoly(ctx, PSI1_VARS, {(params.h3, params.h2, 0): 1}) + beta_poly(params).embed(PSI1_VARS)
    if params.beta.is_nc:
        p, b = params.p, params.beta
        psi2 = MultiPoly(ctx, BETA_VARS, {(p**b.m, p**b.n): 1})
    else:
        psi2 = MultiPoly.zero(ctx, BETA_VARS)
    return psi1, psi2


def target_monomial_exponents(params: GroupParams) -> tuple[int, int, int]:
    """(p^l3, p^(l2+m), p^(l2+n)) for the non-commutative kinds."""
    b, p = params.beta, params.p
    return p**b.l3, p ** (b.l2 + b.m), p ** (b.l2 + b.n)


# -- group elements -------------------------------------------------------------

Unip = tuple[FieldElem, FieldElem, FieldElem]


@dataclass(frozen=True)
class GroupElement:
    u1: FieldElem
    u2: FieldElem
    u3: FieldElem
    a: FieldElem

    def __post_init__(self):
        if self.a == 0:
            raise NotATorusElement("torus coordinate must be nonzero")

    @property
    def u(self) -> Unip:
        return (self.u1, self.u2, self.u3)

    @classmethod
    def make(cls, ctx: FieldCtx, u1, u2, u3, a=1) -> GroupElement:
        return cls(ctx(u1), ctx(u2), ctx(u3), ctx(a))

    @classmethod
    def identity(cls, ctx: FieldCtx) -> GroupElement:
        return cls(ctx.zero, ctx.zero, ctx.zero, ctx.one)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.u1.index, self.u2.index, self.u3.index, self.a.index)

    def __str__(self):
        return f"({self.u1},{self.u2},{self.u3};{self.a})"


def _as_unip(params: GroupParams, u: Sequence) -> Unip:
    ctx = params.field
    return tuple(ctx(x) for x in u)  # type: ignore[return-value]


def unip_mul(params: GroupParams, u: Sequence, v: Sequence) -> Unip:
    u1, u2, u3 = _as_unip(params, u)
    v1, v2, v3 = _as_unip(params, v)
    psi1, psi2 = psi_polys(params)
    return (
        u1 + v1 + psi1((u3, v2, v3)),
        u2 + v2 + psi2((u3, v3)),
        u3 + v3,
    )


def unip_inv(params: GroupParams, u: Sequence) -> Unip:
    u1, u2, u3 = _as_unip(params, u)
    psi1, psi2 = psi_polys(params)
    v3 = -u3
    v2 = -u2 - psi2((u3, v3))
    v1 = -u1 - psi1((u3, v2, v3))
    return (v1, v2, v3)


def torus_apply(params: GroupParams, a, u: Sequence) -> Unip:
    ctx = params.field
    a = ctx(a)
    if a == 0:
        raise NotATorusElement("torus coordinate must be nonzero")
    u1, u2, u3 = _as_unip(params, u)
    return (a**params.e1 * u1, a**params.e2 * u2, a**params.e3 * u3)


def group_mul(params: GroupParams, g: GroupElement, h: GroupElement) -> GroupElement:
    w = unip_mul(params, g.u, torus_apply(params, g.a, h.u))
    return GroupElement(*w, g.a * h.a)


def group_inv(params: GroupParams, g: GroupElement) -> GroupElement:
    ainv = g.a.inverse()
    return GroupElement(*torus_apply(params, ainv, unip_inv(params, g.u)), ainv)


# -- symbolic associator ---------------------------------------------------------

def unip_mul_symbolic(params: GroupParams, U: Sequence[MultiPoly], V: Sequence[MultiPoly]):
    psi1, psi2 = psi_polys(params)
    nv = U[0].vars
    return (
        U[0] + V[0] + psi1.subs({"x3": U[2], "y2": V[1], "y3": V[2]}, nv),
        U[1] + V[1] + psi2.subs({"x3": U[2], "y3": V[2]}, nv),
        U[2] + V[2],
    )


def assoc_witness(params: GroupParams) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """Coordinates of (u v) w - u (v w) as polynomials in u1..w3."""
    g = MultiPoly.gens(params.field, UNIP_VARS)
    u, v, w = g[0:3], g[3:6], g[6:9]
    left = unip_mul_symbolic(params, unip_mul_symbolic(params, u, v), w)
    right = unip_mul_symbolic(params, u, unip_mul_symbolic(params, v, w))
    return tuple(a - b for a, b in zip(left, right))  # type: ignore[return-value]


def is_associative(params: GroupParams) -> bool:
    return all(c.is_zero() for c in assoc_witness(params))
