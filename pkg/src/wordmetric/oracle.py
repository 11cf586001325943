"""Ground-truth word images and exact distances on tiny groups.

Everything here is brute force and is only meant to validate the
constructive modules: word images are conjugation-invariant, so it
suffices to run one generator over conjugacy-class representatives and
the other over the whole group, then record class labels (cycle types in
S_n, invariant-factor coefficient lists for matrix groups).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Iterator, List, Optional, Tuple

from .ffield import Field
from .glapprox import MatrixFq, evaluate_word_matrix
from .perms import Permutation, evaluate_word, hamming_distance
from .words import Word

SYM_IMAGE_MAX_N = 8
SYM_DISTANCE_MAX_N = 7
MATRIX_GROUP_LIMIT = 10**6
MATRIX_EXHAUSTIVE_LIMIT = 10**8

CycleType = Tuple[Tuple[int, int], ...]
MatrixClass = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class ImageReport:
    """Set of conjugacy-class labels attained by a word map."""

    group: str
    classes: FrozenSet
    exhaustive: bool
    seed: Optional[int] = None

    def __contains__(self, label) -> bool:
        return label in self.classes

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "group": self.group,
            "classes": sorted(str(c) for c in self.classes),
            "exhaustive": self.exhaustive,
            "seed": self.seed,
        }


def _partitions(n: int, largest: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Partitions of n as non-increasing tuples."""
    if n == 0:
        yield ()
        return
    largest = n if largest is None else largest
    for part in range(min(n, largest), 0, -1):
        for rest in _partitions(n - part, part):
            yield (part,) + rest


def _partition_representative(n: int, partition: Tuple[int, ...]) -> Permutation:
    cycles: List[List[int]] = []
    point = 0
    for length in partition:
        cycles.append(list(range(point, point + length)))
        point += length
    return Permutation.from_cycles(n, cycles)


def _all_permutations(n: int) -> Iterator[Permutation]:
    for images in itertools.permutations(range(n)):
        yield Permutation(images)


def word_image_sym(w: Word, n: int) -> ImageReport:
    """Exact set of cycle types attained by w on S_n, for n <= 8.

    w(aga^-1, aha^-1) = a w(g,h) a^-1, so running g over one
    representative per cycle type and h over all of S_n sees every
    attained cycle type.
    """
    if n < 1 or n > SYM_IMAGE_MAX_N:
        raise ValueError(f"n must be in 1..{SYM_IMAGE_MAX_N}")
    classes = set()
    for partition in _partitions(n):
        g = _partition_representative(n, partition)
        for h in _all_permutations(n):
            classes.add(evaluate_word(w, g, h).cycle_type())
    return ImageReport(group=f"S_{n}", classes=frozenset(classes), exhaustive=True)


def exact_distance_sym(w: Word, sigma: Permutation, n: Optional[int] = None) -> Fraction:
    """min d_H(sigma, tau) over the full image of w on S_n, for n <= 7."""
    if n is None:
        n = sigma.degree
    if n != sigma.degree:
        raise ValueError("n does not match the degree of sigma")
    if n > SYM_DISTANCE_MAX_N:
        raise ValueError(f"n must be at most {SYM_DISTANCE_MAX_N}")
    attained = word_image_sym(w, n).classes
    best = Fraction(1)
    for tau in _all_permutations(n):
        if tau.cycle_type() not in attained:
            continue
        best = min(best, hamming_distance(sigma, tau))
        if best == 0:
            break
    return best


def _gl_order(d: int, q: int) -> int:
    order = 1
    for i in range(d):
        order *= q**d - q**i
    return order


def _all_gl_elements(field: Field, d: int) -> List[MatrixFq]:
    out = []
    for entries in itertools.product(range(field.q), repeat=d * d):
        m = MatrixFq(field, [entries[i * d : (i + 1) * d] for i in range(d)])
        if m.is_invertible():
            out.append(m)
    return out


def _matrix_class(m: MatrixFq) -> MatrixClass:
    return tuple(tuple(f.coeffs) for f in m.invariant_factors())


def word_image_matrix(
    w: Word,
    d: int,
    field: Field,
    budget: int = 200_000,
    seed: int = 0,
) -> ImageReport:
    """Attained invariant-factor lists of w on GL_d(q), |GL_d(q)| <= 10^6.

    Exhaustive over all generator pairs when |G|^2 evaluations fit in the
    global budget; otherwise a seeded random sample of `budget` pairs.
    """
    order = _gl_order(d, field.q)
    if order > MATRIX_GROUP_LIMIT:
        raise ValueError(f"|GL_{d}({field.q})| = {order} exceeds {MATRIX_GROUP_LIMIT}")
    elements = _all_gl_elements(field, d)
    group = f"GL_{d}({field.q})"
    classes = set()
    if order * order <= MATRIX_EXHAUSTIVE_LIMIT:
        for g in elements:
            for h in elements:
                classes.add(_matrix_class(evaluate_word_matrix(w, g, h)))
        return ImageReport(group=group, classes=frozenset(classes), exhaustive=True)
    rng = random.Random(seed)
    for _ in range(budget):
        g = rng.choice(elements)
        h = rng.choice(elements)
        classes.add(_matrix_class(evaluate_word_matrix(w, g, h)))
    return ImageReport(group=group, classes=frozenset(classes), exhaustive=False, seed=seed)


def exact_distance_matrix(
    w: Word, target: MatrixFq, report: Optional[ImageReport] = None
) -> Fraction:
    """min d_rk(target, value) over the enumerated image.

    Pass a precomputed report when ranging over many targets; the image
    enumeration dominates the cost otherwise.
    """
    from .glapprox import rank_distance

    d = target.n
    field = target.field
    if report is None:
        report = word_image_matrix(w, d, field)
    best = Fraction(1)
    for m in _all_gl_elements(field, d):
        if _matrix_class(m) not in report.classes:
            continue
        best = min(best, rank_distance(target, m))
        if best == 0:
            break
    return best
