"""Lookup tables that let the enumeration kernels run on integer codes.

A finite-field element is its index in ``range(q)`` (see
:mod:`imprimitive.field`); group elements are int64 rows ``(u1, u2, u3, a)``
and points are rows ``(x, y)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .field import FieldCtx
from .group import GroupParams, beta_poly, psi_polys

# rows of LawTables.pw: x -> x^e for each exponent the law needs; beta
# term i uses rows BETA0 + 2i (x3) and BETA0 + 2i + 1 (y3)
E1, E2, E3, H2, H3, PM, PN, BETA0 = range(8)


@dataclass(frozen=True, eq=False)
class FieldTables:
    ctx: FieldCtx
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray
    log: np.ndarray
    exp: np.ndarray

    @property
    def q(self) -> int:
        return self.ctx.order


@lru_cache(maxsize=32)
def field_tables(ctx: FieldCtx) -> FieldTables:
    q = ctx.order
    add = np.empty((q, q), dtype=np.int64)
    mul = np.empty((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(a, q):
            add[a, b] = add[b, a] = ctx.add(a, b)
            mul[a, b] = mul[b, a] = ctx.mul(a, b)
    neg = np.array([ctx.neg(a) for a in range(q)], dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    inv[1:] = [ctx.inv(a) for a in range(1, q)]
    g = ctx.generator().val
    exp = np.empty(q - 1, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    x = 1
    for i in range(q - 1):
        exp[i] = x
        log[x] = i
        x = ctx.mul(x, g)
    for arr in (add, mul, neg, inv, log, exp):
        arr.setflags(write=False)
    return FieldTables(ctx, add, mul, neg, inv, log, exp)


@dataclass(frozen=True, eq=False)
class LawTables:
    """A validated parameter set compiled for one finite field."""

    params: GroupParams
    field: FieldTables
    pw: np.ndarray
    beta_c: np.ndarray
    has_psi2: bool

    @property
    def q(self) -> int:
        return self.field.q

    def as_tuple(self):
        f = self.field
        return (f.add, f.mul, f.neg, f.inv, self.pw, self.beta_c, self.has_psi2)


def power_row(ctx: FieldCtx, e: int) -> np.ndarray:
    """x -> x^e on F_q; 0 -> 0 for negative e (never used on zero)."""
    row = np.empty(ctx.order, dtype=np.int64)
    row[0] = 1 if e == 0 else 0
    for x in range(1, ctx.order):
        row[x] = ctx.pow(x, e)
    return row


@lru_cache(maxsize=64)
def law_tables(params: GroupParams) -> LawTables:
    ctx = params.field
    if not ctx.is_finite:
        raise ValueError("law tables need a finite field")
    ft = field_tables(ctx)
    psi2 = psi_polys(params)[1]
    pm = pn = 1
    if not psi2.is_zero():
        (pm, pn), = psi2.terms
    beta = beta_poly(params)
    exps = beta.sorted_exponents()
    rows = [params.e1, params.e2, params.e3, params.h2, params.h3, pm, pn]
    for e in exps:
        rows.extend(e)
    pw = np.stack([power_row(ctx, e) for e in rows])
    if psi2.is_zero():
        # zero rows make psi2 = pw[PM, x] * pw[PN, y] vanish without a branch
        pw[[PM, PN]] = 0
    beta_c = np.array([int(beta.terms[e]) for e in exps], dtype=np.int64)
    for arr in (pw, beta_c):
        arr.setflags(write=False)
    return LawTables(params, ft, pw, beta_c, not psi2.is_zero())


def all_elements(q: int) -> np.ndarray:
    """Every (u1, u2, u3, a), lexicographic, a in 1..q-1."""
    r = np.arange(q, dtype=np.int64)
    a = np.arange(1, q, dtype=np.int64)
    grid = np.stack(np.meshgrid(r, r, r, a, indexing="ij"), axis=-1)
    return grid.reshape(-1, 4)


def all_unipotent(q: int) -> np.ndarray:
    r = np.arange(q, dtype=np.int64)
    return np.stack(np.meshgrid(r, r, r, indexing="ij"), axis=-1).reshape(-1, 3)


def all_points(q: int) -> np.ndarray:
    r = np.arange(q, dtype=np.int64)
    return np.stack(np.meshgrid(r, r, indexing="ij"), axis=-1).reshape(-1, 2)


def element_index(G: np.ndarray, q: int) -> np.ndarray:
    """Position of each row in :func:`all_elements` order."""
    G = np.asarray(G, dtype=np.int64)
    return ((G[..., 0] * q + G[..., 1]) * q + G[..., 2]) * (q - 1) + (G[..., 3] - 1)


def unip_index(U: np.ndarray, q: int) -> np.ndarray:
    U = np.asarray(U, dtype=np.int64)
    return (U[..., 0] * q + U[..., 1]) * q + U[..., 2]


def point_index(P: np.ndarray, q: int) -> np.ndarray:
    P = np.asarray(P, dtype=np.int64)
    return P[..., 0] * q + P[..., 1]


def identity_row() -> np.ndarray:
    return np.array([0, 0, 0, 1], dtype=np.int64)
