"""Polynomial 2-cocycles: admissible targets, the delta2 solver and the
coboundary test.

delta2 is linear in the coefficients of beta and preserves total degree, so
``delta2(beta) = z1^A z2^B z3^C`` only involves the degree A+B+C slice of
beta.  The solver sets up that slice as a matrix over F_p and row-reduces it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .field import FieldCtx, field_make
from .group import GroupParams, beta_poly, target_monomial_exponents
from .poly import MultiPoly, alternating_sum, delta1, delta2

Z_VARS = ("z1", "z2", "z3")
XY = ("x", "y")


@dataclass(frozen=True)
class TargetMonomial:
    A: int
    B: int
    C: int
    p: int

    @classmethod
    def from_exponents(cls, p: int, l2: int, l3: int, m: int, n: int) -> TargetMonomial:
        return cls(p**l3, p ** (l2 + m), p ** (l2 + n), p)

    @classmethod
    def of(cls, params: GroupParams) -> TargetMonomial:
        return cls(*target_monomial_exponents(params), params.p)

    @property
    def degree(self) -> int:
        return self.A + self.B + self.C

    def poly(self) -> MultiPoly:
        return MultiPoly(field_make(self.p), Z_VARS, {(self.A, self.B, self.C): 1})

    def to_dict(self) -> dict:
        return {"A": self.A, "B": self.B, "C": self.C, "p": self.p}


def admissible_target(t: TargetMonomial) -> bool:
    """True iff the signed S3-orbit sum of z1^A z2^B z3^C vanishes over F_p."""
    return alternating_sum(t.poly()).is_zero()


# -- linear algebra over F_p ------------------------------------------------------

def rref_mod_p(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of an integer matrix over F_p."""
    M = np.array(M, dtype=np.int64) % p
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        M[r] = (M[r] * pow(int(M[r, c]), -1, p)) % p
        col = M[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            M[hit] = (M[hit] - np.outer(col[hit], M[r])) % p
        pivots.append(c)
        r += 1
    return M, pivots


def delta2_matrix(d: int, p: int) -> tuple[np.ndarray, list[tuple[int, int, int]], list[tuple[int, int]]]:
    """Matrix of delta2 on span{x^i y^(d-i) : 0 < i < d} over F_p.

    Columns follow i = 1..d-1; rows are the output monomials that occur.
    """
    unknowns = [(i, d - i) for i in range(1, d)]
    cols: list[dict[tuple[int, int, int], int]] = []
    for i, j in unknowns:
        col: dict[tuple[int, int, int], int] = {}

        def put(e, c):
            col[e] = (col.get(e, 0) + c) % p

        put((i, j, 0), 1)                        # b(z1, z2)
        for k in range(i + 1):                  # b(z1 + z2, z3)
            put((k, i - k, j), comb(i, k))
        put((0, i, j), -1)                       # -b(z2, z3)
        for k in range(j + 1):                  # -b(z1, z2 + z3)
            put((i, k, j - k), -comb(j, k))
        cols.append({e: c for e, c in col.items() if c})
    monos = sorted({e for col in cols for e in col}, reverse=True)
    row_of = {e: r for r, e in enumerate(monos)}
    M = np.zeros((len(monos), len(unknowns)), dtype=np.int64)
    for c, col in enumerate(cols):
        for e, v in col.items():
            M[row_of[e], c] = v
    return M, monos, unknowns


@dataclass
class Delta2Solution:
    target: TargetMonomial
    degree: int
    unknowns: int
    equations: int
    rank: int
    augmented_rank: int
    solution: MultiPoly | None

    @property
    def consistent(self) -> bool:
        return self.solution is not None

    @property
    def kernel_dimension(self) -> int:
        return self.unknowns - self.rank

    def to_dict(self) -> dict:
        return {
            "target": self.target.to_dict(),
            "degree": self.degree,
            "unknowns": self.unknowns,
            "equations": self.equations,
            "rank": self.rank,
            "augmented_rank": self.augmented_rank,
            "kernel_dimension": self.kernel_dimension,
            "consistent": self.consistent,
            "solution": None if self.solution is None else self.solution.to_json(),
        }


def solve_delta2_detailed(t: TargetMonomial, degree_bound: int | None = None) -> Delta2Solution:
    """Row-reduce delta2(beta) = z1^A z2^B z3^C on the homogeneous slice.

    beta ranges over x^i y^j with i, j >= 1 (so beta vanishes on the axes).
    Free unknowns are set to 0.
    """
    p, d = t.p, t.degree
    ctx = field_make(p)
    if degree_bound is not None and degree_bound < d:
        return Delta2Solution(t, d, 0, 1, 0, 1, None)
    M, monos, unknowns = delta2_matrix(d, p)
    rhs = np.zeros((len(monos) + 1, 1), dtype=np.int64)
    target = (t.A, t.B, t.C)
    if target in monos:
        rhs[monos.index(target), 0] = 1
        aug = np.hstack([M, rhs[:-1]])
    else:
        # target row absent from the image: one extra equation 0 = 1
        aug = np.vstack([np.hstack([M, rhs[:-1]]), np.zeros((1, M.shape[1] + 1), dtype=np.int64)])
        aug[-1, -1] = 1
        M = np.vstack([M, np.zeros((1, M.shape[1]), dtype=np.int64)])
    R, piv = rref_mod_p(aug, p)
    rank = sum(1 for c in piv if c < M.shape[1])
    aug_rank = len(piv)
    if aug_rank > rank:
        return Delta2Solution(t, d, len(unknowns), M.shape[0], rank, aug_rank, None)
    terms = {}
    for r, c in enumerate(piv):
        if R[r, -1]:
            terms[unknowns[c]] = int(R[r, -1])
    return Delta2Solution(t, d, len(unknowns), M.shape[0], rank, aug_rank, MultiPoly(ctx, XY, terms))


def solve_delta2(t: TargetMonomial, degree_bound: int | None = None) -> MultiPoly | None:
    return solve_delta2_detailed(t, degree_bound).solution


# -- coboundaries -------------------------------------------------------------------

def _solve_exact(ctx: FieldCtx, rows: list[dict[int, object]], rhs: list, ncols: int):
    """Gauss-Jordan over ``ctx`` raw values; returns a solution list or None."""
    zero = ctx.zero_raw
    A = [[r.get(c, zero) for c in range(ncols)] + [b] for r, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(ncols):
        i = next((i for i in range(r, len(A)) if A[i][c] != zero), None)
        if i is None:
            continue
        A[r], A[i] = A[i], A[r]
        inv = ctx.inv(A[r][c])
        A[r] = [ctx.mul(v, inv) for v in A[r]]
        for k in range(len(A)):
            if k != r and A[k][c] != zero:
                f = A[k][c]
                A[k] = [ctx.sub(v, ctx.mul(f, w)) for v, w in zip(A[k], A[r])]
        piv_cols.append(c)
        r += 1
    if any(row[-1] != zero for row in A[r:]):
        return None
    x = [zero] * ncols
    for i, c in enumerate(piv_cols):
        x[c] = A[i][-1]
    return x


def is_coboundary(kappa: MultiPoly, degree_bound: int | None = None) -> MultiPoly | None:
    """g(T) with g(0) = 0 and delta1(g) = kappa, or None."""
    ctx = kappa.ctx
    if len(kappa.vars) != 2:
        raise ValueError("kappa must be bivariate")
    D = kappa.total_degree() if degree_bound is None else degree_bound
    if kappa.is_zero():
        return MultiPoly.zero(ctx, ("T",))
    if D < 1:
        return None
    images = [delta1(MultiPoly(ctx, ("T",), {(i,): 1}), kappa.vars) for i in range(1, D + 1)]
    monos = sorted({e for im in images for e in im.terms} | set(kappa.terms))
    rows = [{c: im.terms[e] for c, im in enumerate(images) if e in im.terms} for e in monos]
    rhs = [kappa.terms.get(e, ctx.zero_raw) for e in monos]
    x = _solve_exact(ctx, rows, rhs, D)
    if x is None:
        return None
    return MultiPoly(ctx, ("T",), {(i + 1,): v for i, v in enumerate(x)})


def verify_beta_identity(params: GroupParams) -> bool:
    """delta2(beta) equals the target monomial (non-commutative kinds) or 0."""
    d = delta2(beta_poly(params), Z_VARS)
    if params.beta.is_nc:
        A, B, C = target_monomial_exponents(params)
        return d == MultiPoly(params.field, Z_VARS, {(A, B, C): 1})
    return d.is_zero()


def closed_form_solution(t: TargetMonomial) -> MultiPoly | None:
    """The known closed-form beta for an admissible target, or None.

    With A = p^l3, B = p^(l2+m), C = p^(l2+n) and m < n:
    A == B gives 1/2 x^(2A) y^C, and A == C gives
    x^(A+B) y^A + 1/2 x^B y^(2A).
    """
    p = t.p
    if p == 2:
        return None
    half = Fraction(1, 2)
    ctx = field_make(p)
    if t.A == t.B:
        return MultiPoly(ctx, XY, {(2 * t.A, t.C): half})
    if t.A == t.C:
        return MultiPoly(ctx, XY, {(t.A + t.B, t.A): 1, (t.B, 2 * t.A): half})
    return None
