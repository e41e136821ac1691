"""Point action on the affine plane with horizontal blocks.

A point (x, y) is the coset of (x, 0, y) modulo the stabiliser
H = {(0, w, 0)} of the origin in the unipotent radical.  The image of a point
under g = (u, a) is the coset of u * torus_a(x, 0, y), brought back to the
representative whose middle coordinate is 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .field import FieldElem
from .group import GroupElement, GroupParams, psi_polys, torus_apply, unip_mul


@dataclass(frozen=True)
class Point:
    x: FieldElem
    y: FieldElem

    def block(self) -> Block:
        return Block(self.y)

    def as_tuple(self) -> tuple[int, int]:
        return (self.x.index, self.y.index)

    def __str__(self):
        return f"({self.x},{self.y})"


@dataclass(frozen=True)
class Block:
    """The horizontal line y = const."""

    y: FieldElem


def block_of(P: Point) -> Block:
    return Block(P.y)


def canonical_point(params: GroupParams, z: Sequence) -> Point:
    """Representative of z*H with middle coordinate 0."""
    ctx = params.field
    z1, z2, z3 = (ctx(c) for c in z)
    return Point(z1 + (-z2) ** params.h2 * z3**params.h3, z3)


def lift(params: GroupParams, P: Point):
    ctx = params.field
    return (P.x, ctx.zero, P.y)


def act(params: GroupParams, g: GroupElement, P: Point) -> Point:
    z = unip_mul(params, g.u, torus_apply(params, g.a, lift(params, P)))
    return canonical_point(params, z)


def act_on_block(params: GroupParams, g: GroupElement, b: Block) -> Block:
    return Block(g.u3 + g.a**params.e3 * b.y)


def printed_formula(params: GroupParams, g: GroupElement, P: Point) -> Point:
    """(u1 + a^(e2 h2 + e3 h3) x + psi1(u3, 0, a^e3 y), u3 + a^e3 y).

    Kept for diagnostics only: it drops the normalisation term and so
    ignores u2 entirely.
    """
    psi1, _ = psi_polys(params)
    ay = g.a**params.e3 * P.y
    zero = params.field.zero
    x = g.u1 + g.a ** (params.e2 * params.h2 + params.e3 * params.h3) * P.x + psi1((g.u3, zero, ay))
    return Point(x, g.u3 + ay)
