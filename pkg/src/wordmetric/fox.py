"""Fox calculus over Z[F2], abelianized derivatives, and SU_n certificates.

The derivative is the derivation with d(x)/dx = 1, d(y)/dx = 0 and product
rule d(uv) = du + u dv.  Abelianizing to Z[X^{±1}, Y^{±1}] (with the
exponent-negating involution applied) and specializing along a direction
Z^2 -> Z yields a one-variable polynomial p_w whose common roots with
X^n - 1 control surjectivity of the word map on SU_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Tuple

import sympy

from .words import Word


class GroupRingElem:
    """Element of Z[F2]: finite map from reduced words to nonzero ints."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Word, int]] = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c != 0}

    @staticmethod
    def zero() -> "GroupRingElem":
        return GroupRingElem()

    @staticmethod
    def one() -> "GroupRingElem":
        return GroupRingElem({Word(()): 1})

    @staticmethod
    def of(w: Word, c: int = 1) -> "GroupRingElem":
        return GroupRingElem({w: c})

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupRingElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElem(out)

    def __neg__(self) -> "GroupRingElem":
        return GroupRingElem({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "GroupRingElem") -> "GroupRingElem":
        return self + (-other)

    def __mul__(self, other: "GroupRingElem") -> "GroupRingElem":
        out: Dict[Word, int] = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                key = wa * wb
                out[key] = out.get(key, 0) + ca * cb
        return GroupRingElem(out)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [f"{c}*({w})" for w, c in sorted(self.terms.items(), key=str)]
        return " + ".join(parts)


def fox_derivative(w: Word, var: str) -> GroupRingElem:
    """d(w)/d(var), computed letterwise by the product rule."""
    if var not in ("x", "y"):
        raise ValueError("variable must be x or y")
    result = GroupRingElem.zero()
    prefix = Word(())
    for gen, step in w.unit_letters():
        if gen == var:
            if step == 1:
                result = result + GroupRingElem.of(prefix)
            else:
                result = result - GroupRingElem.of(prefix * Word(((gen, -1),)))
        prefix = prefix * Word(((gen, step),))
    return result


def fox_identity_holds(w: Word) -> bool:
    """w - 1 = (dw/dx)(x - 1) + (dw/dy)(y - 1) in Z[F2]."""
    x = GroupRingElem.of(Word((("x", 1),)))
    y = GroupRingElem.of(Word((("y", 1),)))
    one = GroupRingElem.one()
    lhs = GroupRingElem.of(w) - one
    rhs = fox_derivative(w, "x") * (x - one) + fox_derivative(w, "y") * (y - one)
    return lhs == rhs


class LaurentPoly2:
    """Z[X^{±1}, Y^{±1}] with sparse exponent dictionaries."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Tuple[int, int], int]] = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly2) and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly2(out)

    def __mul__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        out: Dict[Tuple[int, int], int] = {}
        for (i, j), c in self.terms.items():
            for (k, l), d in other.terms.items():
                e = (i + k, j + l)
                out[e] = out.get(e, 0) + c * d
        return LaurentPoly2(out)

    def support(self):
        return set(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"{c}*X^{i}*Y^{j}" for (i, j), c in sorted(self.terms.items())
        )


class LaurentPoly1:
    """Z[X^{±1}] with a sparse exponent dictionary."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[int, int]] = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly1) and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LaurentPoly1") -> "LaurentPoly1":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly1(out)

    def __mul__(self, other: "LaurentPoly1") -> "LaurentPoly1":
        out: Dict[int, int] = {}
        for i, c in self.terms.items():
            for j, d in other.terms.items():
                out[i + j] = out.get(i + j, 0) + c * d
        return LaurentPoly1(out)

    def normalized(self) -> Tuple[int, ...]:
        """Coefficient tuple shifted to start at degree 0, sign-normalized."""
        if not self.terms:
            return ()
        lo = min(self.terms)
        hi = max(self.terms)
        coeffs = [self.terms.get(e, 0) for e in range(lo, hi + 1)]
        lead = next(c for c in coeffs if c != 0)
        if lead < 0:
            coeffs = [-c for c in coeffs]
        return tuple(coeffs)

    def equals_up_to_units(self, other: "LaurentPoly1") -> bool:
        """Equality modulo multiplication by ±X^k."""
        return self.normalized() == other.normalized()

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*X^{e}" for e, c in sorted(self.terms.items()))


def abelianized_derivatives(w: Word) -> Tuple[LaurentPoly2, LaurentPoly2]:
    """Both Fox derivatives pushed to Z[Z^2], exponent-negating involution
    applied."""
    out = []
    for var in ("x", "y"):
        der = fox_derivative(w, var)
        terms: Dict[Tuple[int, int], int] = {}
        for word, c in der.terms.items():
            ax, ay = word.abelianization()
            key = (-ax, -ay)
            terms[key] = terms.get(key, 0) + c
        out.append(LaurentPoly2(terms))
    return out[0], out[1]


NOT_IN_F2PRIME = "not_in_F2prime"
IN_F2PRIME_NOT_F2SECOND = "in_F2prime_not_F2second"
IN_F2SECOND = "in_F2second"


def derived_membership(w: Word) -> str:
    """Locate w in the chain F2 > F2' > F2''."""
    if w.cyclic_reduce().is_trivial():
        raise ValueError("membership is only defined for nontrivial words")
    if w.abelianization() != (0, 0):
        return NOT_IN_F2PRIME
    dx, dy = abelianized_derivatives(w)
    if dx.is_zero() and dy.is_zero():
        return IN_F2SECOND
    return IN_F2PRIME_NOT_F2SECOND


def _spiral_directions() -> Iterator[Tuple[int, int]]:
    """Coprime direction pairs in a fixed enumeration of growing radius."""
    radius = 1
    while True:
        for alpha in range(-radius, radius + 1):
            for beta in range(-radius, radius + 1):
                if max(abs(alpha), abs(beta)) != radius:
                    continue
                if math.gcd(alpha, beta) == 1:
                    yield (alpha, beta)
        radius += 1


def _specialize(z: LaurentPoly2, direction: Tuple[int, int]) -> LaurentPoly1:
    alpha, beta = direction
    terms: Dict[int, int] = {}
    for (i, j), c in z.terms.items():
        e = alpha * i + beta * j
        terms[e] = terms.get(e, 0) + c
    return LaurentPoly1(terms)


def _choose_direction(z: LaurentPoly2) -> Tuple[Tuple[int, int], LaurentPoly1]:
    """Collapse along an axis when that stays nonzero; otherwise take the
    first coprime direction injective on the support of z."""
    for direction in ((1, 0), (0, 1)):
        p = _specialize(z, direction)
        if not p.is_zero():
            return direction, p
    support = z.support()
    for direction in _spiral_directions():
        alpha, beta = direction
        values = {alpha * i + beta * j for (i, j) in support}
        if len(values) == len(support):
            return direction, _specialize(z, direction)
    raise AssertionError("unreachable: injective directions are dense")


@dataclass(frozen=True)
class Specialization:
    z: LaurentPoly2
    direction: Tuple[int, int]
    p: LaurentPoly1
    used_y_derivative: bool


def specialize_details(w: Word) -> Specialization:
    if derived_membership(w) != IN_F2PRIME_NOT_F2SECOND:
        raise ValueError("word must lie in F2' but not F2''")
    dx, dy = abelianized_derivatives(w)
    used_y = not dy.is_zero()
    z = dy if used_y else dx
    direction, p = _choose_direction(z)
    if p.is_zero():
        raise AssertionError("specialization of a nonzero z must be nonzero")
    return Specialization(z=z, direction=direction, p=p, used_y_derivative=used_y)


def specialize_pw(w: Word) -> LaurentPoly1:
    """The one-variable polynomial p_w(X) used for root-of-unity counting."""
    return specialize_details(w).p


def count_Wn(p: LaurentPoly1, n: int) -> int:
    """Number of distinct nth roots of unity annihilating p, exactly over Q."""
    if p.is_zero():
        raise ValueError("zero polynomial annihilates everything")
    if n < 1:
        raise ValueError("n must be positive")
    X = sympy.Symbol("X")
    lo = min(p.terms)
    poly = sum(c * X ** (e - lo) for e, c in p.terms.items())
    g = sympy.gcd(sympy.Poly(poly, X), sympy.Poly(X ** n - 1, X))
    return sympy.Poly(g, X).degree()


@dataclass(frozen=True)
class SUCertificate:
    word: Word
    n: int
    membership: str
    verdict: str
    p: Optional[LaurentPoly1] = None
    wn: Optional[int] = None
    direction: Optional[Tuple[int, int]] = None

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "word": str(self.word),
            "n": self.n,
            "membership": self.membership,
            "verdict": self.verdict,
            "p_w": None if self.p is None else {str(e): c for e, c in sorted(self.p.terms.items())},
            "wn": self.wn,
            "direction": None if self.direction is None else list(self.direction),
        }


SURJECTIVE = "surjective"
SURJECTIVE_TRIVIALLY = "surjective_trivially"
UNKNOWN = "unknown"


def su_certificate(w: Word, n: int) -> SUCertificate:
    """One-sided surjectivity certificate for the word map on SU_n.

    A word outside F2' hits a generator power, hence is surjective for
    trivial reasons.  Inside F2' \\ F2'', a single common root of p_w and
    X^n - 1 certifies surjectivity; anything else is honestly unknown.
    """
    membership = derived_membership(w)
    if membership == NOT_IN_F2PRIME:
        return SUCertificate(word=w, n=n, membership=membership, verdict=SURJECTIVE_TRIVIALLY)
    if membership == IN_F2SECOND:
        return SUCertificate(word=w, n=n, membership=membership, verdict=UNKNOWN)
    spec = specialize_details(w)
    wn = count_Wn(spec.p, n)
    verdict = SURJECTIVE if wn == 1 else UNKNOWN
    return SUCertificate(
        word=w,
        n=n,
        membership=membership,
        verdict=verdict,
        p=spec.p,
        wn=wn,
        direction=spec.direction,
    )
