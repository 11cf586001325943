"""Approximating invertible matrices over finite fields by word values.

A target is split by its rational canonical form into isotypic summands
F(chi)^{+c}.  Each summand is approximated either by replacing F(chi) with
the permutation block of a cycle and reusing the symmetric-group witness
machinery (the generic path, error at most one rank unit per block), or --
when a small unit-group system happens to be fully solvable -- by monomial
matrices over the ring F_q[X]/(chi(X^c)) realizing the summand exactly.
Achieved rank distances are always measured exactly on the full matrices.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .cayley import FiniteQuotient, build_d2, smith_normal_form
from .ffield import Field, FqPoly, make_field
from .perms import Permutation
from .symmetric import Witness, approx
from .words import Word, classify
from . import symmetric as _symmetric


class MatrixFq:
    """Square or rectangular matrix over a Field; rows of encoded elements."""

    __slots__ = ("field", "rows", "_invariant_factors")

    def __init__(self, field: Field, rows: Sequence[Sequence[int]]):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        if any(len(r) != len(self.rows[0]) for r in self.rows):
            raise ValueError("ragged rows")
        self._invariant_factors = None

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @staticmethod
    def identity(field: Field, n: int) -> "MatrixFq":
        return MatrixFq(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(field: Field, n: int, m: Optional[int] = None) -> "MatrixFq":
        m = n if m is None else m
        return MatrixFq(field, [[0] * m for _ in range(n)])

    @staticmethod
    def permutation(field: Field, perm: Permutation) -> "MatrixFq":
        """0/1 matrix with row v supported at perm(v) (right action)."""
        n = perm.degree
        rows = [[0] * n for _ in range(n)]
        for v in range(n):
            rows[v][perm(v)] = 1
        return MatrixFq(field, rows)

    @staticmethod
    def block_diag(field: Field, blocks: Sequence["MatrixFq"]) -> "MatrixFq":
        n = sum(b.n for b in blocks)
        rows = [[0] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i in range(b.n):
                for j in range(b.n):
                    rows[off + i][off + j] = b.rows[i][j]
            off += b.n
        return MatrixFq(field, rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixFq)
            and self.field is other.field
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((id(self.field), self.rows))

    def __add__(self, other: "MatrixFq") -> "MatrixFq":
        F = self.field
        return MatrixFq(
            F,
            [
                [F.add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other: "MatrixFq") -> "MatrixFq":
        F = self.field
        return MatrixFq(
            F,
            [
                [F.sub(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __mul__(self, other: "MatrixFq") -> "MatrixFq":
        F = self.field
        if self.ncols != other.n:
            raise ValueError("shape mismatch")
        bt = list(zip(*other.rows))
        out = []
        for row in self.rows:
            new = []
            for col in bt:
                acc = 0
                for a, b in zip(row, col):
                    if a and b:
                        acc = F.add(acc, F.mul(a, b))
                new.append(acc)
            out.append(new)
        return MatrixFq(F, out)

    def __pow__(self, e: int) -> "MatrixFq":
        if e < 0:
            return self.inverse() ** (-e)
        result = MatrixFq.identity(self.field, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def rank(self) -> int:
        F = self.field
        mat = [list(r) for r in self.rows]
        rank = 0
        col = 0
        nrows, ncols = len(mat), self.ncols
        while rank < nrows and col < ncols:
            pivot = next((i for i in range(rank, nrows) if mat[i][col]), None)
            if pivot is None:
                col += 1
                continue
            mat[rank], mat[pivot] = mat[pivot], mat[rank]
            inv = F.inv(mat[rank][col])
            mat[rank] = [F.mul(inv, e) for e in mat[rank]]
            for i in range(nrows):
                if i != rank and mat[i][col]:
                    f = mat[i][col]
                    mat[i] = [
                        F.sub(a, F.mul(f, b)) for a, b in zip(mat[i], mat[rank])
                    ]
            rank += 1
            col += 1
        return rank

    def inverse(self) -> "MatrixFq":
        F = self.field
        n = self.n
        mat = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            pivot = next((i for i in range(col, n) if mat[i][col]), None)
            if pivot is None:
                raise ValueError("matrix is singular")
            mat[col], mat[pivot] = mat[pivot], mat[col]
            inv = F.inv(mat[col][col])
            mat[col] = [F.mul(inv, e) for e in mat[col]]
            for i in range(n):
                if i != col and mat[i][col]:
                    f = mat[i][col]
                    mat[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(mat[i], mat[col])]
        return MatrixFq(F, [row[n:] for row in mat])

    def is_invertible(self) -> bool:
        return self.n == self.ncols and self.rank() == self.n

    def char_matrix(self) -> List[List[FqPoly]]:
        """X*I - A as a polynomial matrix."""
        F = self.field
        out = []
        for i in range(self.n):
            row = []
            for j in range(self.n):
                coeffs = [F.neg(self.rows[i][j])]
                if i == j:
                    coeffs.append(1)
                row.append(FqPoly(F, coeffs))
            out.append(row)
        return out

    def invariant_factors(self) -> Tuple[FqPoly, ...]:
        """Nonconstant diagonal entries of the Smith form of X*I - A."""
        if self._invariant_factors is None:
            diag = _poly_smith_diagonal(self.char_matrix())
            factors = tuple(d for d in diag if d.degree >= 1)
            if sum(f.degree for f in factors) != self.n:
                raise AssertionError("invariant factor degrees do not sum to n")
            self._invariant_factors = factors
        return self._invariant_factors

    def __repr__(self):
        return f"MatrixFq({self.n}x{self.ncols} over GF({self.field.q}))"


def evaluate_word_matrix(w: Word, g: MatrixFq, h: MatrixFq) -> MatrixFq:
    value = MatrixFq.identity(g.field, g.n)
    for gen, exp in w.letters:
        base = g if gen == "x" else h
        value = value * (base ** exp)
    return value


def rational_canonical_form(a: MatrixFq) -> Tuple[FqPoly, ...]:
    """Invariant factors of a; a is similar to the sum of their Frobenius
    blocks."""
    return a.invariant_factors()


def rank_distance(a: MatrixFq, b: MatrixFq) -> Fraction:
    if a.field is not b.field or a.n != b.n or a.ncols != b.ncols:
        raise ValueError("matrices live in different spaces")
    return Fraction((a - b).rank(), a.n)


def store_matrix(m: MatrixFq) -> str:
    """Plain-text form: `p e` on the first line, then one row per line with
    entries as comma-joined coefficient tuples."""
    F = m.field
    lines = [f"{F.p} {F.e}"]
    for row in m.rows:
        lines.append(" ".join(",".join(map(str, F.coeffs(a))) for a in row))
    return "\n".join(lines) + "\n"


def load_matrix(text: str) -> MatrixFq:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    try:
        p, e = map(int, lines[0].split())
    except ValueError as exc:
        raise ValueError("first line must be the field descriptor 'p e'") from exc
    field = make_field(p, e)
    rows = []
    for line in lines[1:]:
        row = []
        for entry in line.split():
            coeffs = [int(c) for c in entry.split(",")]
            if len(coeffs) != e:
                raise ValueError(f"entry {entry!r} needs {e} coefficients")
            row.append(field.encode(coeffs))
        rows.append(row)
    return MatrixFq(field, rows)


# -- polynomial-matrix Smith form --------------------------------------------


def _poly_smith_diagonal(mat: List[List[FqPoly]]) -> List[FqPoly]:
    """Diagonal of the Smith normal form over F_q[X], monic-normalized."""
    m = len(mat)
    ncols = len(mat[0]) if m else 0
    t = 0
    while t < min(m, ncols):
        pivot = None
        for i in range(t, m):
            for j in range(t, ncols):
                e = mat[i][j]
                if not e.is_zero() and (
                    pivot is None or e.degree < mat[pivot[0]][pivot[1]].degree
                ):
                    pivot = (i, j)
        if pivot is None:
            break
        mat[t], mat[pivot[0]] = mat[pivot[0]], mat[t]
        if pivot[1] != t:
            for row in mat:
                row[t], row[pivot[1]] = row[pivot[1]], row[t]
        while True:
            dirty = False
            for i in range(t + 1, m):
                if not mat[i][t].is_zero():
                    q, _ = mat[i][t].divmod(mat[t][t])
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[t])]
                    if not mat[i][t].is_zero():
                        mat[t], mat[i] = mat[i], mat[t]
                        dirty = True
            for j in range(t + 1, ncols):
                if not mat[t][j].is_zero():
                    q, _ = mat[t][j].divmod(mat[t][t])
                    for row in mat:
                        row[j] = row[j] - q * row[t]
                    if not mat[t][j].is_zero():
                        for row in mat:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, ncols):
                    _, r = mat[i][j].divmod(mat[t][t])
                    if not r.is_zero():
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            mat[t] = [a + b for a, b in zip(mat[t], mat[offender])]
        t += 1
    return [mat[i][i].monic() for i in range(min(m, ncols)) if not mat[i][i].is_zero()]


# -- Frobenius blocks --------------------------------------------------------


def frobenius_block(chi: FqPoly) -> MatrixFq:
    """Companion matrix of monic chi with the coefficient row last.

    Acting on row vectors from the right this is multiplication by X on the
    monomial basis of F_q[X]/(chi).
    """
    F = chi.field
    chi = chi.monic()
    k = chi.degree
    if k < 1:
        raise ValueError("chi must be nonconstant")
    rows = [[0] * k for _ in range(k)]
    for i in range(k - 1):
        rows[i][i + 1] = 1
    for j in range(k):
        rows[k - 1][j] = F.neg(chi.coeffs[j] if j < len(chi.coeffs) else 0)
    return MatrixFq(F, rows)


def compose_with_power(chi: FqPoly, c: int) -> FqPoly:
    """chi(X^c)."""
    F = chi.field
    coeffs = [0] * (chi.degree * c + 1)
    for i, e in enumerate(chi.coeffs):
        coeffs[i * c] = e
    return FqPoly(F, coeffs)


@dataclass(frozen=True)
class PowerBlockCertificate:
    chi: FqPoly
    c: int
    power_factors: Tuple[FqPoly, ...]
    sum_factors: Tuple[FqPoly, ...]

    @property
    def holds(self) -> bool:
        return [f.coeffs for f in self.power_factors] == [
            f.coeffs for f in self.sum_factors
        ]


def power_block_split(chi: FqPoly, c: int) -> PowerBlockCertificate:
    """Certificate that F(chi(X^c))^c is similar to c copies of F(chi)."""
    chi = chi.monic()
    if chi.degree < 1 or c < 1:
        raise ValueError("need nonconstant chi and c >= 1")
    if chi.evaluate(0) == 0:
        raise ValueError("chi must have nonzero constant term")
    F = chi.field
    lhs = frobenius_block(compose_with_power(chi, c)) ** c
    rhs = MatrixFq.block_diag(F, [frobenius_block(chi)] * c)
    cert = PowerBlockCertificate(
        chi=chi,
        c=c,
        power_factors=lhs.invariant_factors(),
        sum_factors=rhs.invariant_factors(),
    )
    if not cert.holds:
        raise AssertionError("power block similarity certificate failed")
    return cert


# -- similarity transform ----------------------------------------------------


def _nullspace_mod_field(field: Field, rows: List[List[int]]) -> List[List[int]]:
    """Basis of the right nullspace of a matrix over the field."""
    F = field
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    mat = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, m) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = F.inv(mat[rank][col])
        mat[rank] = [F.mul(inv, e) for e in mat[rank]]
        for i in range(m):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = F.neg(mat[r][fc])
        basis.append(vec)
    return basis


def similarity_transform(a: MatrixFq, b: MatrixFq, seed: int = 0) -> MatrixFq:
    """Invertible S with S*A = B*S, i.e. S A S^{-1} = B."""
    if a == b:
        return MatrixFq.identity(a.field, a.n)
    F = a.field
    n = a.n
    # linear system on the n^2 entries of S: (S A - B S)[i][j] = 0
    rows = []
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n)
            for k in range(n):
                # S[i][k] * A[k][j]
                row[i * n + k] = F.add(row[i * n + k], a.rows[k][j])
                # - B[i][k] * S[k][j]
                row[k * n + j] = F.sub(row[k * n + j], b.rows[i][k])
            rows.append(row)
    basis = _nullspace_mod_field(F, rows)
    if not basis:
        raise ValueError("matrices are not similar")

    def to_matrix(vec: List[int]) -> MatrixFq:
        return MatrixFq(F, [vec[i * n:(i + 1) * n] for i in range(n)])

    for vec in basis:
        s = to_matrix(vec)
        if s.is_invertible():
            return s
    rng = random.Random(seed)
    for _ in range(500):
        vec = [0] * (n * n)
        for bvec in basis:
            coef = rng.randrange(F.q)
            if coef:
                vec = [F.add(v, F.mul(coef, e)) for v, e in zip(vec, bvec)]
        s = to_matrix(vec)
        if s.rows != MatrixFq.zeros(F, n).rows and s.is_invertible():
            return s
    raise ValueError("matrices are not similar (no invertible intertwiner found)")


# -- the main GL approximation -----------------------------------------------


@dataclass(frozen=True)
class GLWitness:
    word: Word
    g: MatrixFq
    h: MatrixFq
    value: MatrixFq
    target: MatrixFq
    achieved_distance: Fraction
    trace: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.value != evaluate_word_matrix(self.word, self.g, self.h):
            raise ValueError("value is not the word evaluated at (g, h)")
        if self.achieved_distance != rank_distance(self.target, self.value):
            raise ValueError("achieved distance is not the exact rank distance")

    @property
    def n(self) -> int:
        return self.target.n


def _mult_matrix(field: Field, modulus: FqPoly, elem: FqPoly) -> MatrixFq:
    """Matrix of multiplication by elem on F_q[X]/(modulus), row action."""
    d = modulus.degree
    rows = []
    for i in range(d):
        prod = (elem.shift(i)) % modulus
        row = [prod.coeffs[j] if j < len(prod.coeffs) else 0 for j in range(d)]
        rows.append(row)
    return MatrixFq(field, rows)


def _ring_units(field: Field, modulus: FqPoly) -> List[FqPoly]:
    """All units of F_q[X]/(modulus), by enumeration (small rings only)."""
    d = modulus.degree
    units = []
    for digits in itertools.product(range(field.q), repeat=d):
        f = FqPoly(field, list(digits))
        if f.gcd(modulus).degree == 0 and not f.gcd(modulus).is_zero():
            units.append(f)
    return units


@dataclass
class _WreathPlan:
    chi: FqPoly
    count: int
    c: int
    r: int
    s: int
    modulus: FqPoly
    edge_values: List[FqPoly]
    quotient: FiniteQuotient


_WREATH_RING_LIMIT = 1025
_WREATH_R_LIMIT = 16


def _try_wreath_plan(w: Word, chi: FqPoly, count: int) -> Optional[_WreathPlan]:
    """Exact realization of F(chi)-isotypic blocks through monomial matrices
    over R = F_q[X]/(chi(X^c)), when the unit-group system fully solves."""
    field = chi.field
    if w.abelianization() != (0, 0):
        return None
    k = chi.degree
    for c in (1, 2):
        r, s = divmod(count, c)
        if r < 1 or r > _WREATH_R_LIMIT:
            continue
        if field.q ** (k * c) > _WREATH_RING_LIMIT:
            continue
        modulus = compose_with_power(chi, c).monic()
        if modulus.evaluate(0) == 0:
            continue
        units = _ring_units(field, modulus)
        quotient = FiniteQuotient.cyclic(r)
        mat = build_d2(w, quotient)
        x_target = FqPoly(field, [0] * c + [1]) % modulus
        solution = _solve_units(
            [list(row) for row in mat.rows], [x_target] * r, units, modulus
        )
        if solution is None:
            continue
        return _WreathPlan(
            chi=chi,
            count=count,
            c=c,
            r=r,
            s=s,
            modulus=modulus,
            edge_values=solution,
            quotient=quotient,
        )
    return None


def _solve_units(
    m: List[List[int]],
    target: List[FqPoly],
    units: List[FqPoly],
    modulus: FqPoly,
) -> Optional[List[FqPoly]]:
    """Solve M xi = target multiplicatively over the unit group of the ring.

    Uses the integer Smith form of M; each diagonal equation eta^d = rhs is
    solved by scanning the (small) unit group.
    """
    u, d, v = smith_normal_form(m)
    rows = len(m)
    cols = len(m[0]) if rows else 0

    def unit_power(f: FqPoly, e: int) -> FqPoly:
        if e < 0:
            f = _unit_inverse(f, modulus, units)
            e = -e
        result = FqPoly(modulus.field, [1])
        base = f
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    ut = []
    for i in range(rows):
        acc = FqPoly(modulus.field, [1])
        for j in range(rows):
            if u[i][j]:
                acc = (acc * unit_power(target[j], u[i][j])) % modulus
        ut.append(acc)
    one = FqPoly(modulus.field, [1])
    eta = [one] * cols
    for i in range(rows):
        dii = d[i][i] if i < min(rows, cols) else 0
        rhs = ut[i]
        if dii == 0:
            if rhs.coeffs != one.coeffs:
                return None
            continue
        root = next(
            (cand for cand in units if unit_power(cand, dii).coeffs == rhs.coeffs),
            None,
        )
        if root is None:
            return None
        eta[i] = root
    xi = []
    for i in range(cols):
        acc = one
        for j in range(cols):
            if v[i][j] and eta[j].coeffs != one.coeffs:
                acc = (acc * unit_power(eta[j], v[i][j])) % modulus
        xi.append(acc)
    # verify M xi = target multiplicatively
    for i in range(rows):
        acc = one
        for j in range(cols):
            if m[i][j]:
                acc = (acc * unit_power(xi[j], m[i][j])) % modulus
        if acc.coeffs != target[i].coeffs:
            raise AssertionError("unit-group solve verification failed")
    return xi


def _unit_inverse(f: FqPoly, modulus: FqPoly, units: List[FqPoly]) -> FqPoly:
    one = FqPoly(modulus.field, [1])
    for cand in units:
        if ((f * cand) % modulus).coeffs == one.coeffs:
            return cand
    raise ValueError("element is not a unit")


def _wreath_matrices(plan: _WreathPlan) -> Tuple[MatrixFq, MatrixFq, MatrixFq]:
    """(G, H, value) over F_q for the r-fold wreath construction."""
    field = plan.chi.field
    r = plan.r
    block = plan.modulus.degree
    q = plan.quotient
    xi = plan.edge_values

    def monomial(perm: Permutation, values: List[FqPoly]) -> MatrixFq:
        n = r * block
        rows = [[0] * n for _ in range(n)]
        for v in range(r):
            b = _mult_matrix(field, plan.modulus, values[v])
            tv = perm(v)
            for i in range(block):
                for j in range(block):
                    rows[v * block + i][tv * block + j] = b.rows[i][j]
        return MatrixFq(field, rows)

    g = monomial(q.g, xi[:r])
    h = monomial(q.h, xi[r:])
    return g, h


def _group_invariant_factors(
    factors: Sequence[FqPoly],
) -> List[Tuple[FqPoly, int]]:
    groups: List[Tuple[FqPoly, int]] = []
    for f in factors:
        if groups and groups[-1][0].coeffs == f.coeffs:
            groups[-1] = (groups[-1][0], groups[-1][1] + 1)
        else:
            groups.append((f, 1))
    return groups


def approx_gl(w: Word, a: MatrixFq) -> GLWitness:
    """Witness (g, h) in GL_n(q) x GL_n(q) with w(g, h) close to a in rank."""
    form = classify(w)
    if form.kind == "trivial":
        raise ValueError("the trivial word only attains the identity")
    if not a.is_invertible():
        raise ValueError("target must be invertible")
    field = a.field
    n = a.n
    factors = a.invariant_factors()
    summands = _group_invariant_factors(factors)

    if form.kind == "power":
        return _approx_gl_power(w, form, a, summands)

    blocks: List[MatrixFq] = []
    g_blocks: List[MatrixFq] = []
    h_blocks: List[MatrixFq] = []
    trace_parts = []
    perm_chis: List[FqPoly] = []  # one entry per pending permutation block

    for chi, count in summands:
        plan = _try_wreath_plan(w, chi, count)
        if plan is not None:
            gw, hw = _wreath_matrices(plan)
            power_block = frobenius_block(plan.modulus) ** plan.c
            blocks.extend([power_block] * plan.r)
            g_blocks.append(gw)
            h_blocks.append(hw)
            perm_chis.extend([chi] * plan.s)
            trace_parts.append(
                {
                    "path": "unit-wreath",
                    "chi": list(chi.coeffs),
                    "count": count,
                    "c": plan.c,
                    "r": plan.r,
                    "leftover": plan.s,
                }
            )
        else:
            perm_chis.extend([chi] * count)
            trace_parts.append(
                {
                    "path": "cycle-blocks",
                    "chi": list(chi.coeffs),
                    "count": count,
                }
            )

    sym_witness: Optional[Witness] = None
    if perm_chis:
        perm_n = sum(chi.degree for chi in perm_chis)
        cycles = []
        off = 0
        for chi in perm_chis:
            cycles.append(list(range(off, off + chi.degree)))
            off += chi.degree
        sigma = Permutation.from_cycles(perm_n, cycles)
        sym_witness = approx(w, sigma)
        blocks.extend(frobenius_block(chi) for chi in perm_chis)
        g_blocks.append(MatrixFq.permutation(field, sym_witness.g))
        h_blocks.append(MatrixFq.permutation(field, sym_witness.h))

    c_mat = MatrixFq.block_diag(field, blocks)
    if [f.coeffs for f in c_mat.invariant_factors()] != [f.coeffs for f in factors]:
        raise AssertionError("assembled normal form is not similar to the target")
    g = MatrixFq.block_diag(field, g_blocks)
    h = MatrixFq.block_diag(field, h_blocks)
    s = similarity_transform(a, c_mat)
    s_inv = s.inverse()
    g, h = s_inv * g * s, s_inv * h * s
    value = evaluate_word_matrix(w, g, h)
    achieved = rank_distance(a, value)
    trace = {"path": "blockwise", "summands": trace_parts}
    if sym_witness is not None:
        trace["symmetric_distance"] = str(sym_witness.achieved_distance)
    return GLWitness(
        word=w, g=g, h=h, value=value, target=a, achieved_distance=achieved, trace=trace
    )


def _approx_gl_power(
    w: Word, form, a: MatrixFq, summands
) -> GLWitness:
    """Power words: approximate the cycle structure of the normal form."""
    field = a.field
    blocks = []
    cycles = []
    off = 0
    for chi, count in summands:
        for _ in range(count):
            blocks.append(frobenius_block(chi))
            cycles.append(list(range(off, off + chi.degree)))
            off += chi.degree
    sigma = Permutation.from_cycles(off, cycles)
    wit = _symmetric._power_witness(w, form, sigma)
    c_mat = MatrixFq.block_diag(field, blocks)
    s = similarity_transform(a, c_mat)
    s_inv = s.inverse()
    g = s_inv * MatrixFq.permutation(field, wit.g) * s
    h = s_inv * MatrixFq.permutation(field, wit.h) * s
    value = evaluate_word_matrix(w, g, h)
    achieved = rank_distance(a, value)
    return GLWitness(
        word=w,
        g=g,
        h=h,
        value=value,
        target=a,
        achieved_distance=achieved,
        trace={"path": "power", "symmetric_distance": str(wit.achieved_distance)},
    )
