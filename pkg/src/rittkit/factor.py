"""Polynomial factorization over Q at desk scale.

Multivariate polynomials are packed into one variable by Kronecker
substitution; the univariate image is factored by rational-root
extraction plus an exhaustive divisor search (interpolation through
small integer points), and factors of the input are recovered from
sub-multisets of the image factors.  Correct and simple for the small
degrees this library works with; speed is a non-goal.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, isqrt

from .context import Derivative, RittkitError
from .diffpoly import DiffPoly, Mono, _mono, mono_key, primitive_part, try_divide

# -- dense univariate helpers (int or Fraction coefficient lists) ------


def _utrim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _udeg(p: list) -> int:
    return len(p) - 1


def _umul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _utrim(out)


def _udivmod(a: list, b: list) -> tuple[list, list]:
    r = [Fraction(c) for c in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    db, lb = _udeg(b), Fraction(b[-1])
    while _utrim(r) and _udeg(r) >= db:
        shift = _udeg(r) - db
        c = r[-1] / lb
        q[shift] = c
        for i, bc in enumerate(b):
            r[shift + i] -= c * bc
        r = _utrim(r)
    return _utrim(q), r


def _udivides(b: list, a: list) -> list | None:
    q, r = _udivmod(a, b)
    if r:
        return None
    if any(c.denominator != 1 for c in q):
        # a, b primitive over Z: an integral quotient exists when b | a
        return None
    return [int(c) for c in q]


def _ueval(p: list, x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _uprimitive(p: list) -> list:
    g = 0
    for c in p:
        g = gcd(g, abs(c))
    if g == 0:
        return []
    sign = 1 if p[-1] > 0 else -1
    return [c // (g * sign) for c in p]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            large.append(n // d)
    if small and small[-1] == large[-1]:
        large.pop()
    return small + large[::-1]


def _rational_roots(p: list) -> list[tuple[int, int]]:
    """Roots num/den of a primitive integer polynomial, constant term != 0."""
    roots = []
    for num in _divisors(p[0]):
        for den in _divisors(p[-1]):
            if gcd(num, den) != 1:
                continue
            for s in (1, -1):
                val = sum(c * (s * num) ** i * den ** (_udeg(p) - i) for i, c in enumerate(p))
                if val == 0:
                    roots.append((s * num, den))
    return sorted(set(roots))


_POINTS = [0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6]


def _find_divisor(p: list) -> list | None:
    """A nontrivial divisor of a primitive integer polynomial with no
    rational roots and nonzero constant term, or None if irreducible."""
    deg = _udeg(p)
    for d in range(2, deg // 2 + 1):
        pts = _POINTS[: d + 1]
        vals = [_ueval(p, x) for x in pts]
        cand_lists = []
        for i, v in enumerate(vals):
            divs = _divisors(v)
            opts = divs if i == 0 else [s * t for t in divs for s in (1, -1)]
            cand_lists.append(opts)
        for choice in itertools.product(*cand_lists):
            g = _interpolate(pts, choice)
            if g is None or _udeg(g) < 1:
                continue
            q = _udivides(g, p)
            if q is not None:
                return _uprimitive(g)
    return None


def _interpolate(xs: list[int], ys) -> list | None:
    """Integer polynomial through the points, or None if non-integral."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = 1
        for j in range(n):
            if j == i:
                continue
            basis = _umul(basis, [Fraction(-xs[j]), Fraction(1)])
            denom *= xs[i] - xs[j]
        scale = Fraction(ys[i], denom)
        for k, b in enumerate(basis):
            coeffs[k] += scale * b
    coeffs = _utrim(coeffs)
    if any(c.denominator != 1 for c in coeffs):
        return None
    return [int(c) for c in coeffs]


def _u_factor(p: list) -> list[tuple[list, int]]:
    """Factor a primitive integer polynomial with positive lead into
    primitive irreducible integer polynomials with multiplicities."""
    factors: dict[tuple, int] = {}
    # powers of t
    k = 0
    while p and p[0] == 0:
        p = p[1:]
        k += 1
    if k:
        factors[(0, 1)] = k
    p = list(p)
    # linear factors from rational roots
    while _udeg(p) >= 1:
        roots = _rational_roots(p)
        if not roots:
            break
        num, den = roots[0]
        lin = _uprimitive([-num, den])
        while True:
            q = _udivides(lin, p)
            if q is None:
                break
            factors[tuple(lin)] = factors.get(tuple(lin), 0) + 1
            p = q
    # exhaustive divisor search for the rest
    stack = [p] if _udeg(p) >= 1 else []
    while stack:
        f = stack.pop()
        g = _find_divisor(f)
        if g is None:
            g = _uprimitive(f)
            factors[tuple(g)] = factors.get(tuple(g), 0) + 1
            continue
        q = _udivides(g, f)
        stack.append(g)
        stack.append(q)
    return sorted(((list(f), m) for f, m in factors.items()))


# -- multivariate layer ---------------------------------------------


def _pack(f: DiffPoly, frame: list[Derivative], radices: list[int]) -> list[int]:
    weights = []
    w = 1
    for r in radices:
        weights.append(w)
        w *= r
    dense = [0] * w
    for mono, c in f.terms.items():
        exp = 0
        ed = dict(mono)
        for v, wt, r in zip(frame, weights, radices):
            exp += ed.get(v, 0) * wt
        if c.denominator != 1:
            raise RittkitError("pack expects integer coefficients")
        dense[exp] += c.numerator
    return _utrim(dense)


def _unpack(p: list[int], frame: list[Derivative], radices: list[int]) -> DiffPoly:
    terms: dict[Mono, Fraction] = {}
    for exp, c in enumerate(p):
        if not c:
            continue
        rest = exp
        pairs = []
        for v, r in zip(frame[:-1], radices[:-1]):
            rest, e = divmod(rest, r)
            if e:
                pairs.append((v, e))
        if rest:
            pairs.append((frame[-1], rest))
        mono = _mono(pairs)
        terms[mono] = terms.get(mono, Fraction(0)) + c
    return DiffPoly(terms)


def factor(f: DiffPoly) -> list[tuple[DiffPoly, int]]:
    """Irreducible factorization over Q, constants dropped.

    The product of factor**multiplicity equals the input up to a rational
    constant; each factor is primitive over Z with positive lead; the
    list is deterministically ordered.
    """
    if f.is_zero():
        raise RittkitError("cannot factor the zero polynomial")
    if f.is_constant():
        raise RittkitError("cannot factor a constant")
    _, fp = primitive_part(f)
    out: list[tuple[DiffPoly, int]] = []

    # per-variable monomial content
    for v in sorted(fp.derivatives(), key=lambda d: d.struct_key()):
        k = min(dict(mono).get(v, 0) for mono in fp.terms)
        if k:
            out.append((DiffPoly.variable(v), k))
            stripped = {}
            for mono, c in fp.terms.items():
                ed = dict(mono)
                ed[v] -= k
                stripped[_mono(ed.items())] = c
            fp = DiffPoly(stripped)
    if fp.is_constant():
        return sorted(out, key=_factor_key)

    out.extend(_factor_primitive(fp))
    return sorted(out, key=_factor_key)


def _factor_key(pair: tuple[DiffPoly, int]) -> tuple:
    g, _ = pair
    return (mono_key(g.leading()[0]), repr(g))


def _factor_primitive(fp: DiffPoly) -> list[tuple[DiffPoly, int]]:
    frame = sorted(fp.derivatives(), key=lambda d: d.struct_key())
    radices = [fp.degree_in(v) + 1 for v in frame]
    image = _pack(fp, frame, radices)
    ufactors = _u_factor(image)
    flat: list[list[int]] = []
    for g, m in ufactors:
        flat.extend([g] * m)
    if len(flat) == 1:
        return [(fp, 1)]
    # smallest sub-multiset whose decoded product divides fp
    for r in range(1, len(flat)):
        seen: set[tuple] = set()
        for combo in itertools.combinations(range(len(flat)), r):
            key = tuple(sorted(tuple(flat[i]) for i in combo))
            if key in seen:
                continue
            seen.add(key)
            prod = [1]
            for i in combo:
                prod = _umul(prod, flat[i])
            cand = _unpack(prod, frame, radices)
            if cand.is_constant():
                continue
            _, cand = primitive_part(cand)
            if try_divide(fp, cand) is None:
                continue
            mult = 0
            rest = fp
            while True:
                q = try_divide(rest, cand)
                if q is None:
                    break
                rest = q
                mult += 1
            found = [(cand, mult)]
            if not rest.is_constant():
                found.extend(_factor_primitive(_strip(rest)))
            return found
    return [(fp, 1)]


def _strip(f: DiffPoly) -> DiffPoly:
    return primitive_part(f)[1]


def is_irreducible(f: DiffPoly) -> bool:
    """True iff f is irreducible over Q (up to a rational constant)."""
    fs = factor(f)
    return len(fs) == 1 and fs[0][1] == 1
