"""Sparse differential polynomials over Q.

A polynomial is a finite map from monomials to nonzero rational
coefficients; a monomial is a sorted tuple of (derivative, exponent)
pairs with positive exponents.  All operations return new, fully
normalized values; nothing is mutated in place.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable

from .context import Context, Derivative, RittkitError, format_derivative

Mono = tuple  # tuple[tuple[Derivative, int], ...], sorted by struct_key

ONE_MONO: Mono = ()


def _mono(pairs: Iterable[tuple[Derivative, int]]) -> Mono:
    return tuple(sorted(((d, e) for d, e in pairs if e != 0), key=lambda p: p[0].struct_key()))


def mono_mul(a: Mono, b: Mono) -> Mono:
    acc: dict[Derivative, int] = dict(a)
    for d, e in b:
        acc[d] = acc.get(d, 0) + e
    return _mono(acc.items())


def mono_key(mono: Mono) -> tuple:
    """Structural comparison key: bigger key prints first and acts as the
    leading monomial for sign normalization."""
    return tuple(sorted(((d.struct_key(), e) for d, e in mono), reverse=True))


class DiffPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: dict[Mono, Fraction] | None = None, _normalized: bool = False):
        if terms is None:
            self.terms: dict[Mono, Fraction] = {}
        elif _normalized:
            self.terms = terms
        else:
            clean = {}
            for mono, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    clean[mono] = coeff
            self.terms = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "DiffPoly":
        return DiffPoly({}, _normalized=True)

    @staticmethod
    def constant(value) -> "DiffPoly":
        value = Fraction(value)
        if not value:
            return DiffPoly.zero()
        return DiffPoly({ONE_MONO: value}, _normalized=True)

    @staticmethod
    def one() -> "DiffPoly":
        return DiffPoly.constant(1)

    @staticmethod
    def variable(d: Derivative) -> "DiffPoly":
        return DiffPoly({_mono([(d, 1)]): Fraction(1)}, _normalized=True)

    # -- predicates and views -----------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONO in self.terms)

    def as_constant(self) -> Fraction:
        if not self.is_constant():
            raise RittkitError("polynomial is not constant")
        return self.terms.get(ONE_MONO, Fraction(0))

    def derivatives(self) -> set[Derivative]:
        out: set[Derivative] = set()
        for mono in self.terms:
            for d, _ in mono:
                out.add(d)
        return out

    def degree_in(self, d: Derivative) -> int:
        deg = 0
        for mono in self.terms:
            for dd, e in mono:
                if dd == d:
                    deg = max(deg, e)
        return deg

    def total_degree(self) -> int:
        return max((sum(e for _, e in mono) for mono in self.terms), default=0)

    def max_order(self) -> int:
        return max((d.order() for d in self.derivatives()), default=0)

    def coeff_of_power(self, d: Derivative, k: int) -> "DiffPoly":
        """Coefficient of d**k, viewing self as a polynomial in d."""
        out: dict[Mono, Fraction] = {}
        for mono, c in self.terms.items():
            e = dict(mono).get(d, 0)
            if e == k:
                rest = _mono((dd, ee) for dd, ee in mono if dd != d)
                out[rest] = out.get(rest, Fraction(0)) + c
        return DiffPoly(out)

    def leading(self) -> tuple[Mono, Fraction]:
        """Leading term under the structural monomial order."""
        if not self.terms:
            raise RittkitError("zero polynomial has no leading term")
        mono = max(self.terms, key=mono_key)
        return mono, self.terms[mono]

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "DiffPoly") -> "DiffPoly":
        res = dict(self.terms)
        for mono, c in other.terms.items():
            s = res.get(mono, Fraction(0)) + c
            if s:
                res[mono] = s
            else:
                res.pop(mono, None)
        return DiffPoly(res, _normalized=True)

    def __sub__(self, other: "DiffPoly") -> "DiffPoly":
        return self + (-other)

    def __neg__(self) -> "DiffPoly":
        return DiffPoly({m: -c for m, c in self.terms.items()}, _normalized=True)

    def __mul__(self, other) -> "DiffPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(other))
        res: dict[Mono, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = res.get(m, Fraction(0)) + c1 * c2
                if s:
                    res[m] = s
                else:
                    del res[m]
        return DiffPoly(res, _normalized=True)

    __rmul__ = __mul__

    def scale(self, c: Fraction) -> "DiffPoly":
        if not c:
            return DiffPoly.zero()
        return DiffPoly({m: cc * c for m, cc in self.terms.items()}, _normalized=True)

    def __pow__(self, k: int) -> "DiffPoly":
        if k < 0:
            raise RittkitError("negative exponent")
        out = DiffPoly.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, DiffPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for mono in sorted(self.terms, key=mono_key, reverse=True):
            c = self.terms[mono]
            vars_ = "*".join(
                f"D({d.indet};{','.join(map(str, d.op))})" + (f"^{e}" if e > 1 else "")
                for d, e in mono
            )
            bits.append(f"{c}" + (f"*{vars_}" if vars_ else ""))
        return " + ".join(bits)

    # -- differential structure ---------------------------------------

    def differentiate(self, k: int) -> "DiffPoly":
        """Apply the k-th derivation (Leibniz rule over all monomials)."""
        res = DiffPoly.zero()
        acc: dict[Mono, Fraction] = {}
        for mono, c in self.terms.items():
            for i, (d, e) in enumerate(mono):
                rest = list(mono)
                if e == 1:
                    del rest[i]
                else:
                    rest[i] = (d, e - 1)
                new = mono_mul(_mono(rest), _mono([(d.differentiate(k), 1)]))
                s = acc.get(new, Fraction(0)) + c * e
                if s:
                    acc[new] = s
                else:
                    del acc[new]
        res = DiffPoly(acc, _normalized=True)
        return res

    def partial(self, d: Derivative) -> "DiffPoly":
        """Formal partial derivative with respect to one derivative symbol."""
        acc: dict[Mono, Fraction] = {}
        for mono, c in self.terms.items():
            e = dict(mono).get(d, 0)
            if e == 0:
                continue
            rest = _mono([(dd, ee) for dd, ee in mono if dd != d] + [(d, e - 1)])
            s = acc.get(rest, Fraction(0)) + c * e
            if s:
                acc[rest] = s
            else:
                del acc[rest]
        return DiffPoly(acc, _normalized=True)

    def struct_str(self) -> str:
        return repr(self)


def differentiate(f: DiffPoly, k: int, ctx: Context) -> DiffPoly:
    if not 0 <= k < ctx.m:
        raise RittkitError(f"derivation index {k} out of range")
    return f.differentiate(k)


def apply_theta(f: DiffPoly, e: tuple[int, ...]) -> DiffPoly:
    """Apply the operator with multi-index e (iterated differentiation)."""
    out = f
    for k, times in enumerate(e):
        for _ in range(times):
            out = out.differentiate(k)
    return out


def operators_up_to(order: int, m: int) -> list[tuple[int, ...]]:
    """All operator multi-indices of total order <= order, sorted."""
    out = []
    for total in range(order + 1):
        for combo in itertools.combinations_with_replacement(range(m), total):
            e = [0] * m
            for k in combo:
                e[k] += 1
            out.append(tuple(e))
    return sorted(set(out))


def prolong(polys: Iterable[DiffPoly], order: int, m: int) -> list[DiffPoly]:
    """The prolongation {theta(f) : ord(theta) <= order, f in polys}."""
    if order < 0:
        raise RittkitError("prolongation order must be nonnegative")
    seen: set[DiffPoly] = set()
    out: list[DiffPoly] = []
    for f in polys:
        for e in operators_up_to(order, m):
            g = apply_theta(f, e)
            if g not in seen:
                seen.add(g)
                out.append(g)
    return out


def content(f: DiffPoly) -> Fraction:
    """Signed content: f / content(f) is primitive with positive lead."""
    if f.is_zero():
        raise RittkitError("zero polynomial has no content")
    num = 0
    den = 1
    for c in f.terms.values():
        num = gcd(num, abs(c.numerator))
        den = lcm(den, c.denominator)
    cont = Fraction(num, den)
    _, lead = f.leading()
    if lead < 0:
        cont = -cont
    return cont


def primitive_part(f: DiffPoly) -> tuple[Fraction, DiffPoly]:
    """Split f = content * primitive with coprime integer coefficients."""
    c = content(f)
    return c, f.scale(1 / c)


def format_poly(f: DiffPoly, ctx: Context) -> str:
    """Canonical human-readable form, deterministic across runs."""
    if f.is_zero():
        return "0"
    pieces = []
    for i, mono in enumerate(sorted(f.terms, key=mono_key, reverse=True)):
        c = f.terms[mono]
        factors = []
        for d, e in sorted(mono, key=lambda p: p[0].struct_key(), reverse=True):
            s = format_derivative(d, ctx)
            factors.append(s + (f"^{e}" if e > 1 else ""))
        body = "*".join(factors)
        mag = abs(c)
        if not body:
            chunk = str(mag)
        elif mag == 1:
            chunk = body
        else:
            chunk = f"{mag}*{body}"
        if i == 0:
            pieces.append(chunk if c > 0 else f"-{chunk}")
        else:
            pieces.append(f"+ {chunk}" if c > 0 else f"- {chunk}")
    return " ".join(pieces)


def poly_sort_key(f: DiffPoly) -> str:
    """Deterministic context-free ordering key for polynomial lists."""
    return repr(f)


def try_divide(f: DiffPoly, g: DiffPoly) -> DiffPoly | None:
    """Exact quotient f / g, or None when g does not divide f."""
    if g.is_zero():
        raise RittkitError("division by zero polynomial")
    if f.is_zero():
        return DiffPoly.zero()
    q_terms: dict[Mono, Fraction] = {}
    gm, gc = g.leading()
    gvars = dict(gm)
    r = f
    while not r.is_zero():
        rm, rc = r.leading()
        rvars = dict(rm)
        quot = {}
        for d, e in gvars.items():
            have = rvars.get(d, 0)
            if have < e:
                return None
        for d, e in rvars.items():
            left = e - gvars.get(d, 0)
            if left:
                quot[d] = left
        qm = _mono(quot.items())
        qc = rc / gc
        q_terms[qm] = qc
        r = r - DiffPoly({qm: qc}) * g
    return DiffPoly(q_terms)
