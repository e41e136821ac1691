"""Sparse exact multivariate polynomials and the difference operators.

A :class:`MultiPoly` is a map from exponent tuples to nonzero raw field
values (see :mod:`imprimitive.field`).  All arithmetic is exact.
"""
from __future__ import annotations

import itertools
from math import comb
from typing import Iterable, Mapping, Sequence

from .field import FieldCtx, FieldElem, field_make


class PolyError(ValueError):
    pass


class InvalidIndex(PolyError):
    code = "InvalidIndex"


Exps = tuple[int, ...]


class MultiPoly:
    __slots__ = ("ctx", "vars", "terms")

    def __init__(self, ctx: FieldCtx, vars: Sequence[str], terms: Mapping[Exps, object] | None = None):
        self.ctx = ctx
        self.vars = tuple(vars)
        n = len(self.vars)
        clean: dict[Exps, object] = {}
        zero = ctx.zero_raw
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise PolyError(f"exponent {e} does not match variables {self.vars}")
            c = ctx.coerce(c)
            if c != zero:
                clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ctx, vars, terms):
        # terms already reduced and zero-free
        obj = cls.__new__(cls)
        obj.ctx, obj.vars, obj.terms = ctx, tuple(vars), terms
        return obj

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, ctx: FieldCtx, vars: Sequence[str]) -> MultiPoly:
        return cls._raw(ctx, vars, {})

    @classmethod
    def const(cls, ctx: FieldCtx, vars: Sequence[str], c=1) -> MultiPoly:
        return cls(ctx, vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, ctx: FieldCtx, vars: Sequence[str], name: str) -> MultiPoly:
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(ctx, vars, {tuple(e): 1})

    @classmethod
    def monomial(cls, ctx: FieldCtx, vars: Sequence[str], exps: Sequence[int], c=1) -> MultiPoly:
        return cls(ctx, vars, {tuple(exps): c})

    @classmethod
    def gens(cls, ctx: FieldCtx, vars: Sequence[str]) -> tuple[MultiPoly, ...]:
        return tuple(cls.var(ctx, vars, v) for v in vars)

    # -- basic protocol -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ctx == other.ctx and self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, FieldElem)):
            return self == MultiPoly.const(self.ctx, self.vars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def items(self):
        for e in self.sorted_exponents():
            yield e, FieldElem(self.ctx, self.terms[e])

    def coefficient(self, exps: Sequence[int]) -> FieldElem:
        return FieldElem(self.ctx, self.terms.get(tuple(exps), self.ctx.zero_raw))

    def sorted_exponents(self) -> list[Exps]:
        """Canonical order: total degree descending, then lex descending."""
        return sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_component(self, d: int) -> MultiPoly:
        return MultiPoly._raw(self.ctx, self.vars, {e: c for e, c in self.terms.items() if sum(e) == d})

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other: MultiPoly):
        if self.ctx != other.ctx:
            raise PolyError(f"field mismatch: {self.ctx} vs {other.ctx}")
        if self.vars != other.vars:
            raise PolyError(f"variable mismatch: {self.vars} vs {other.vars}")

    def _lift(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.const(self.ctx, self.vars, other)

    def __add__(self, other):
        other = self._lift(other)
        ctx = self.ctx
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = ctx.add(out[e], c)
                if s == 0:
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return MultiPoly._raw(ctx, self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        ctx = self.ctx
        return MultiPoly._raw(ctx, self.vars, {e: ctx.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> MultiPoly:
        ctx = self.ctx
        c = ctx.coerce(c)
        if c == 0:
            return MultiPoly.zero(ctx, self.vars)
        return MultiPoly._raw(ctx, self.vars, {e: ctx.mul(v, c) for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        ctx = self.ctx
        out: dict[Exps, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = ctx.mul(c1, c2)
                if e in out:
                    c = ctx.add(out[e], c)
                    if c == 0:
                        del out[e]
                        continue
                out[e] = c
        return MultiPoly._raw(ctx, self.vars, out)

    def __rmul__(self, other):
        return self.scale(other)

    def frobenius(self, times: int = 1) -> MultiPoly:
        """The p^times-th power, computed termwise (characteristic p only)."""
        ctx = self.ctx
        if not ctx.is_finite:
            raise PolyError("Frobenius needs positive characteristic")
        f = ctx.p**times
        return MultiPoly._raw(
            ctx, self.vars,
            {tuple(a * f for a in e): ctx.frobenius(c, times) for e, c in self.terms.items()},
        )

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise PolyError("negative polynomial power")
        if n == 0:
            return MultiPoly.const(self.ctx, self.vars, 1)
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            return MultiPoly._raw(
                self.ctx, self.vars, {tuple(a * n for a in e): self.ctx.pow(c, n)})
        if self.ctx.is_finite:
            # (sum c m)^(p^i) = sum c^(p^i) m^(p^i): expand digit by digit
            p = self.ctx.p
            result = MultiPoly.const(self.ctx, self.vars, 1)
            i = 0
            while n:
                d = n % p
                if d:
                    part = self._small_pow(d)
                    result = result * (part.frobenius(i) if i else part)
                n //= p
                i += 1
            return result
        return self._small_pow(n)

    def _small_pow(self, n: int) -> MultiPoly:
        result = MultiPoly.const(self.ctx, self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- substitution & evaluation ---------------------------------------------
    def subs(self, mapping: Mapping[str, MultiPoly], new_vars: Sequence[str] | None = None) -> MultiPoly:
        """Compose: replace each variable by a polynomial in ``new_vars``.

        Variables absent from ``mapping`` are sent to the variable of the
        same name in ``new_vars``.
        """
        ctx = self.ctx
        if new_vars is None:
            new_vars = next(iter(mapping.values())).vars if mapping else self.vars
        new_vars = tuple(new_vars)
        images = []
        for v in self.vars:
            img = mapping.get(v)
            if img is None:
                img = MultiPoly.var(ctx, new_vars, v)
            elif img.vars != new_vars:
                raise PolyError(f"substitute for {v} lives in {img.vars}, expected {new_vars}")
            images.append(img)
        powers: dict[tuple[int, int], MultiPoly] = {}

        def power(i, n):
            key = (i, n)
            if key not in powers:
                powers[key] = images[i] ** n
            return powers[key]

        out = MultiPoly.zero(ctx, new_vars)
        for e, c in self.terms.items():
            term = MultiPoly.const(ctx, new_vars, FieldElem(ctx, c))
            for i, a in enumerate(e):
                if a:
                    term = term * power(i, a)
            out = out + term
        return out

    def rename(self, names: Sequence[str]) -> MultiPoly:
        if len(names) != len(self.vars):
            raise PolyError("rename needs one name per variable")
        return MultiPoly._raw(self.ctx, names, dict(self.terms))

    def embed(self, new_vars: Sequence[str]) -> MultiPoly:
        """Same polynomial regarded in a superset of variables."""
        new_vars = tuple(new_vars)
        pos = [new_vars.index(v) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for i, a in zip(pos, e):
                ne[i] = a
            out[tuple(ne)] = c
        return MultiPoly._raw(self.ctx, new_vars, out)

    def evaluate(self, values) -> FieldElem:
        """Evaluate at a point given as a sequence (variable order) or a
        mapping from variable names.  ``0**0 == 1``."""
        ctx = self.ctx
        if isinstance(values, Mapping):
            values = [values[v] for v in self.vars]
        raw = [ctx.coerce(v) for v in values]
        acc = ctx.zero_raw
        for e, c in self.terms.items():
            t = c
            for x, a in zip(raw, e):
                if a:
                    t = ctx.mul(t, ctx.pow(x, a))
            acc = ctx.add(acc, t)
        return FieldElem(ctx, acc)

    __call__ = evaluate

    # -- display ---------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(v if a == 1 else f"{v}^{a}" for v, a in zip(self.vars, e) if a)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}" if "+" in cs else f"{cs}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly[{self.ctx}; {','.join(self.vars)}]({self})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [[list(e), str(c)] for e, c in self.items()],
            "text": str(self),
        }


# -- difference operators ------------------------------------------------------

def delta1(f: MultiPoly, vars: tuple[str, str] = ("x", "y")) -> MultiPoly:
    """f(x) + f(y) - f(x+y) for univariate f."""
    if len(f.vars) != 1:
        raise PolyError("delta1 expects a univariate polynomial")
    ctx = f.ctx
    x, y = MultiPoly.gens(ctx, vars)
    t = f.vars[0]
    return f.subs({t: x}, vars) + f.subs({t: y}, vars) - f.subs({t: x + y}, vars)


def delta2(b: MultiPoly, vars: tuple[str, str, str] = ("z1", "z2", "z3")) -> MultiPoly:
    """b(z1,z2) + b(z1+z2,z3) - b(z2,z3) - b(z1,z2+z3) for bivariate b."""
    if len(b.vars) != 2:
        raise PolyError("delta2 expects a bivariate polynomial")
    ctx = b.ctx
    z1, z2, z3 = MultiPoly.gens(ctx, vars)
    s, t = b.vars

    def at(u, v):
        return b.subs({s: u, t: v}, vars)

    return at(z1, z2) + at(z1 + z2, z3) - at(z2, z3) - at(z1, z2 + z3)


def alternating_sum(f: MultiPoly) -> MultiPoly:
    """sum over permutations pi of sign(pi) * f(z_pi(1), z_pi(2), z_pi(3))."""
    ctx = f.ctx
    gens = MultiPoly.gens(ctx, f.vars)
    out = MultiPoly.zero(ctx, f.vars)
    for perm in itertools.permutations(range(len(f.vars))):
        inversions = sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])
        g = f.subs({v: gens[perm[i]] for i, v in enumerate(f.vars)}, f.vars)
        out = out - g if inversions % 2 else out + g
    return out


def witt_coefficient(p: int, i: int) -> FieldElem:
    """C(p, i) / p reduced mod p, via exact integer division."""
    if not 1 <= i <= p - 1:
        raise InvalidIndex(f"index {i} outside 1..{p - 1}")
    return field_make(p)(comb(p, i) // p)


def symmetric_swap(f: MultiPoly) -> MultiPoly:
    """f(y, x) for bivariate f."""
    a, b = f.vars
    x, y = MultiPoly.gens(f.ctx, f.vars)
    return f.subs({a: y, b: x}, f.vars)


def monomials_up_to(nvars: int, degree: int) -> Iterable[Exps]:
    for d in range(degree + 1):
        for e in itertools.product(range(d + 1), repeat=nvars):
            if sum(e) == d:
                yield e
