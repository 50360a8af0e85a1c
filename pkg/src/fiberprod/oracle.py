"""Brute-force ground truth over monomial quotient algebras.

Graded minimal free resolutions of cyclic modules A/J over A = P/I (P a
polynomial ring over GF(p), I and J monomial ideals) by exact row reduction,
degree by degree.  Output: graded Betti tables, truncated Poincare series,
Krull dimension and depth of monomial quotients, and the same-ambient fiber
product presentation P/(I intersect J).

Monomials are exponent tuples.  The monomial order everywhere is graded
lexicographic (within a degree: descending lex on exponent tuples), fixed so
that outputs are deterministic.
"""

from __future__ import annotations

import itertools
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BudgetExceeded, TrivialFiberProduct, ValidationError
from .series import TruncatedSeries

DEFAULT_CHAR = 32003

Monomial = Tuple[int, ...]
# An element of A = P/I: {standard monomial: coefficient mod p}.
Element = Dict[Monomial, int]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, int(n ** 0.5) + 1):
        if n % q == 0:
            return False
    return True


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _minimalize(gens: Sequence[Monomial]) -> frozenset:
    gens = set(gens)
    out = set()
    for g in gens:
        if not any(h != g and divides(h, g) for h in gens):
            out.add(g)
    return frozenset(out)


@dataclass(frozen=True)
class MonomialIdeal:
    """Minimal generating set of a monomial ideal; the zero ideal is empty."""

    num_vars: int
    generators: frozenset

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValidationError("need at least one variable")
        gens = frozenset(tuple(int(e) for e in g) for g in self.generators)
        for g in gens:
            if len(g) != self.num_vars:
                raise ValidationError(f"exponent vector {g} has wrong length")
            if any(e < 0 for e in g):
                raise ValidationError(f"negative exponent in {g}")
            if sum(g) == 0:
                raise ValidationError("the unit ideal is not allowed")
        object.__setattr__(self, "generators", _minimalize(gens))

    @classmethod
    def of(cls, num_vars: int, gens: Sequence[Sequence[int]]) -> "MonomialIdeal":
        return cls(num_vars, frozenset(tuple(g) for g in gens))

    @classmethod
    def zero(cls, num_vars: int) -> "MonomialIdeal":
        return cls(num_vars, frozenset())

    def is_zero(self) -> bool:
        return not self.generators

    def contains_monomial(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.generators)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(self.contains_monomial(g) for g in other.generators)

    def sorted_generators(self) -> List[Monomial]:
        return sorted(self.generators, key=lambda g: (sum(g), tuple(-e for e in g)))

    def max_degree(self) -> int:
        return max((sum(g) for g in self.generators), default=0)


def monomials_of_degree(num_vars: int, degree: int) -> List[Monomial]:
    """All exponent vectors of the given total degree, descending lex."""
    if num_vars == 1:
        return [(degree,)]
    out = []
    for e in range(degree, -1, -1):
        for rest in monomials_of_degree(num_vars - 1, degree - e):
            out.append((e,) + rest)
    return out


def kbasis(ideal: MonomialIdeal, degree: int) -> List[Monomial]:
    """Standard monomials (a k-basis of the degree-d piece of P/I)."""
    if degree < 0:
        raise ValidationError("degree must be nonnegative")
    return [
        m
        for m in monomials_of_degree(ideal.num_vars, degree)
        if not ideal.contains_monomial(m)
    ]


# ---------------------------------------------------------------------------
# Monomial string parsing ("x^2*y" style) for the JSON interfaces.

_FACTOR_RE = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?$")


def parse_monomial(text: str, variables: Sequence[str]) -> Monomial:
    index = {v: i for i, v in enumerate(variables)}
    exps = [0] * len(variables)
    for factor in text.replace(" ", "").split("*"):
        m = _FACTOR_RE.match(factor)
        if not m:
            raise ValidationError(f"cannot parse monomial factor {factor!r}")
        name, power = m.group(1), int(m.group(2) or 1)
        if name not in index:
            raise ValidationError(f"unknown variable {name!r} in {text!r}")
        exps[index[name]] += power
    return tuple(exps)


def format_monomial(m: Monomial, variables: Sequence[str]) -> str:
    parts = []
    for e, v in zip(m, variables):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


def ideal_from_json(
    gens: Sequence, variables: Sequence[str]
) -> MonomialIdeal:
    """Generators given either as monomial strings or exponent arrays."""
    parsed = []
    for g in gens:
        if isinstance(g, str):
            parsed.append(parse_monomial(g, variables))
        else:
            parsed.append(tuple(int(e) for e in g))
    return MonomialIdeal.of(len(variables), parsed)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientPresentation:
    """A = P/ideal over GF(char), with the cyclic module A/module_ideal."""

    num_vars: int
    char: int
    ideal: MonomialIdeal
    module_ideal: MonomialIdeal

    def __post_init__(self):
        if not _is_prime(self.char):
            raise ValidationError(f"characteristic {self.char} is not prime")
        if self.ideal.num_vars != self.num_vars or self.module_ideal.num_vars != self.num_vars:
            raise ValidationError("ideal and module must live in the same ring")
        if not self.module_ideal.is_zero() and not self.module_ideal.contains_ideal(self.ideal):
            raise ValidationError(
                "module ideal must contain the ring ideal so that A/J is well defined"
            )

    @classmethod
    def residue_field(
        cls, ideal: MonomialIdeal, char: int = DEFAULT_CHAR
    ) -> "QuotientPresentation":
        n = ideal.num_vars
        variables = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        return cls(n, char, ideal, MonomialIdeal.of(n, variables))


@dataclass
class GradedBettiTable:
    """beta_{i,j} entries plus a completeness flag per homological degree."""

    entries: Dict[Tuple[int, int], int]
    max_hom: int
    max_internal: int
    complete: List[bool]

    def total(self, i: int) -> int:
        return sum(v for (h, _), v in self.entries.items() if h == i)

    def totals(self) -> List[int]:
        return [self.total(i) for i in range(self.max_hom + 1)]

    def is_complete_through(self, max_hom: Optional[int] = None) -> bool:
        hi = self.max_hom if max_hom is None else max_hom
        return all(self.complete[: hi + 1])

    def to_json(self) -> dict:
        betti = sorted((i, j, v) for (i, j), v in self.entries.items() if v)
        return {
            "betti": [[i, j, str(v)] for i, j, v in betti],
            "total": [str(t) for t in self.totals()],
            "complete": list(self.complete),
        }

    def to_text(self) -> str:
        lines = ["  i    j    beta"]
        for (i, j), v in sorted(self.entries.items()):
            if v:
                lines.append(f"{i:3d}  {j:3d}  {v:6d}")
        flags = " ".join("ok" if c else "??" for c in self.complete)
        lines.append(f"totals: {self.totals()}")
        lines.append(f"complete: {flags}")
        return "\n".join(lines)


# --- exact linear algebra over GF(p) ---------------------------------------


def _nullspace(rows: List[List[int]], ncols: int, p: int) -> List[List[int]]:
    """Basis of the kernel of the matrix (rows x ncols) over GF(p).

    Deterministic: RREF with leftmost pivots, one basis vector per free
    column in ascending column order.
    """
    mat = [row[:] for row in rows if any(row)]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(mat)):
            if mat[i][c] % p:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] % p:
                f = mat[i][c]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    pivot_set = set(pivots)
    basis = []
    for c in range(ncols):
        if c in pivot_set:
            continue
        vec = [0] * ncols
        vec[c] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = (-mat[i][c]) % p
        basis.append(vec)
    return basis


class _Span:
    """Incremental row-echelon span over GF(p) for membership tests."""

    def __init__(self, p: int):
        self.p = p
        self.rows: List[List[int]] = []
        self.pivots: List[int] = []

    def reduce(self, vec: List[int]) -> List[int]:
        v = [x % self.p for x in vec]
        for row, piv in zip(self.rows, self.pivots):
            if v[piv]:
                f = v[piv]
                v = [(x - f * y) % self.p for x, y in zip(v, row)]
        return v

    def add(self, vec: List[int]) -> bool:
        """Insert if independent; returns True when the rank grew."""
        v = self.reduce(vec)
        for piv, x in enumerate(v):
            if x:
                inv = pow(x, self.p - 2, self.p)
                v = [(y * inv) % self.p for y in v]
                self.rows.append(v)
                self.pivots.append(piv)
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.rows)


# --- resolution machinery ---------------------------------------------------


def _mul_element(mon: Monomial, elem: Element, ideal: MonomialIdeal, p: int) -> Element:
    out: Element = {}
    for m, c in elem.items():
        prod = tuple(a + b for a, b in zip(mon, m))
        if not ideal.contains_monomial(prod):
            out[prod] = (out.get(prod, 0) + c) % p
    return {m: c for m, c in out.items() if c}


@dataclass
class _FreeModule:
    """Graded free module with a differential into the previous one.

    columns[g] is the image of generator g: a vector of A-elements indexed by
    the generators of the previous module.  For the 0-th module (rank one,
    generator degree 0) there is no differential."""

    gen_degrees: List[int]
    columns: List[List[Element]]


def _degree_basis(
    ideal: MonomialIdeal, gen_degrees: Sequence[int], degree: int
) -> List[Tuple[Monomial, int]]:
    """Basis of the degree-d piece of the free module: (monomial, generator)."""
    basis = []
    for j, gd in enumerate(gen_degrees):
        if degree >= gd:
            for m in kbasis(ideal, degree - gd):
                basis.append((m, j))
    return basis


def _vector_coords(
    vec: List[Element],
    basis_index: Dict[Tuple[Monomial, int], int],
    p: int,
) -> List[int]:
    out = [0] * len(basis_index)
    for j, elem in enumerate(vec):
        for m, c in elem.items():
            out[basis_index[(m, j)]] = c % p
    return out


def _coords_vector(
    coords: List[int], basis: List[Tuple[Monomial, int]], rank: int
) -> List[Element]:
    vec: List[Element] = [dict() for _ in range(rank)]
    for c, (m, j) in zip(coords, basis):
        if c:
            vec[j][m] = c
    return vec


def _kernel_at_degree(
    pres: QuotientPresentation,
    prev: Optional[_FreeModule],
    current: _FreeModule,
    degree: int,
) -> Tuple[List[Tuple[Monomial, int]], List[List[int]]]:
    """Kernel of the differential of `current` restricted to one degree.

    For the 0-th module the differential is the projection onto the cyclic
    module, whose kernel is spanned by the standard monomials lying in the
    module ideal.
    """
    p = pres.char
    basis = _degree_basis(pres.ideal, current.gen_degrees, degree)
    if not basis:
        return basis, []
    if prev is None:
        kernel = []
        for idx, (m, _) in enumerate(basis):
            if pres.module_ideal.contains_monomial(m):
                vec = [0] * len(basis)
                vec[idx] = 1
                kernel.append(vec)
        return basis, kernel
    prev_basis = _degree_basis(pres.ideal, prev.gen_degrees, degree)
    prev_index = {key: i for i, key in enumerate(prev_basis)}
    # rows of the matrix: one per element of the target basis
    rows = [[0] * len(basis) for _ in range(len(prev_basis))]
    for col, (m, j) in enumerate(basis):
        image = [
            _mul_element(m, elem, pres.ideal, p) for elem in current.columns[j]
        ]
        for tgt, elem in enumerate(image):
            for mon, c in elem.items():
                rows[prev_index[(mon, tgt)]][col] = c
    kernel = _nullspace(rows, len(basis), p)
    # rank-nullity audit: row rank + dim ker = number of columns
    span = _Span(p)
    rank = sum(1 for row in rows if span.add(row))
    if rank + len(kernel) != len(basis):
        raise RuntimeError(
            f"rank-nullity audit failed at degree {degree}: "
            f"{rank} + {len(kernel)} != {len(basis)}"
        )
    return basis, kernel


def _internal_cutoff(pres: QuotientPresentation, hom_degree: int) -> int:
    """Heuristic regularity slack: max generator degree times (i + 1), plus 1."""
    d = max(pres.ideal.max_degree(), pres.module_ideal.max_degree(), 1)
    return d * (hom_degree + 1) + 1


def resolve(
    pres: QuotientPresentation,
    max_hom: int,
    max_internal: Optional[int] = None,
    threads: int = 1,
) -> GradedBettiTable:
    """Graded Betti numbers of the cyclic module, by iterated syzygy steps.

    Homological degrees whose internal-degree scan was cut short by
    ``max_internal`` are flagged incomplete in the returned table; no
    exception is raised here.
    """
    if max_hom < 0:
        raise ValidationError("max_hom must be nonnegative")
    if max_internal is None:
        max_internal = _internal_cutoff(pres, max_hom)
    if max_internal < max_hom:
        raise ValidationError("max_internal must be at least max_hom")
    p = pres.char

    entries: Dict[Tuple[int, int], int] = {(0, 0): 1}
    complete = [True]
    current = _FreeModule([0], [])
    prev: Optional[_FreeModule] = None

    for i in range(max_hom):
        # generators of F_{i+1} = minimal generators of ker(d_i)
        cutoff = min(max_internal, _internal_cutoff(pres, i + 1))
        budget_hit = cutoff < _internal_cutoff(pres, i + 1)
        min_degree = min(current.gen_degrees) + 1 if current.gen_degrees else 0
        degrees = list(range(min_degree, cutoff + 1))

        if not current.gen_degrees:
            complete.append(True)
            prev, current = current, _FreeModule([], [])
            continue

        if threads > 1 and prev is not None:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                kernels = dict(
                    zip(
                        degrees,
                        pool.map(
                            lambda d: _kernel_at_degree(pres, prev, current, d),
                            degrees,
                        ),
                    )
                )
        else:
            kernels = {
                d: _kernel_at_degree(pres, prev, current, d) for d in degrees
            }

        new_gen_degrees: List[int] = []
        new_columns: List[List[Element]] = []
        degree_complete = True
        for d in degrees:
            basis, kernel = kernels[d]
            if not basis:
                continue
            basis_index = {key: idx for idx, key in enumerate(basis)}
            span = _Span(p)
            # multiples of generators already found in lower degrees
            for gd, gvec in zip(new_gen_degrees, new_columns):
                for m in kbasis(pres.ideal, d - gd):
                    multiple = [
                        _mul_element(m, elem, pres.ideal, p) for elem in gvec
                    ]
                    span.add(_vector_coords(multiple, basis_index, p))
            fresh = 0
            for vec in kernel:
                if span.add(vec):
                    new_gen_degrees.append(d)
                    new_columns.append(
                        _coords_vector(vec, basis, len(current.gen_degrees))
                    )
                    fresh += 1
            if fresh:
                entries[(i + 1, d)] = fresh
            if d == degrees[-1]:
                # every kernel vector at the cutoff degree must already lie in
                # the span of lower-degree generator multiples
                degree_complete = fresh == 0
        if budget_hit:
            degree_complete = False
        complete.append(degree_complete and complete[i])
        prev, current = current, _FreeModule(new_gen_degrees, new_columns)

    return GradedBettiTable(entries, max_hom, max_internal, complete)


def poincare_truncation(
    pres: QuotientPresentation,
    max_hom: int,
    max_internal: Optional[int] = None,
    threads: int = 1,
) -> TruncatedSeries:
    """Column sums of the graded Betti table as a truncated series.

    Refuses to emit coefficients for homological degrees whose scan was
    incomplete.
    """
    table = resolve(pres, max_hom, max_internal, threads=threads)
    if not table.is_complete_through():
        raise BudgetExceeded(
            "internal-degree budget exhausted before the table was complete",
            partial=table,
        )
    return TruncatedSeries(tuple(table.totals()))


def dim_monomial(ideal: MonomialIdeal) -> int:
    """Krull dimension of P/I: num_vars minus the minimum number of variables
    meeting the support of every generator (exhaustive search)."""
    n = ideal.num_vars
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in ideal.generators]
    if not supports:
        return n
    for size in range(n + 1):
        for cover in itertools.combinations(range(n), size):
            cs = set(cover)
            if all(s & cs for s in supports):
                return n - size
    raise RuntimeError("unreachable: the full variable set covers everything")


def depth_monomial(ideal: MonomialIdeal, char: int = DEFAULT_CHAR) -> int:
    """Depth of P/I via projective dimension over the ambient polynomial
    ring (depth = num_vars - pd; pd <= num_vars so the scan terminates)."""
    n = ideal.num_vars
    if ideal.is_zero():
        return n
    pres = QuotientPresentation(n, char, MonomialIdeal.zero(n), ideal)
    series = poincare_truncation(pres, n)
    pd = max(i for i in range(n + 1) if series[i])
    return n - pd


def fiber_presentation(
    I: MonomialIdeal, J: MonomialIdeal
) -> Tuple[MonomialIdeal, MonomialIdeal]:
    """Same-ambient fiber product data: P/(I cap J) presents the product of
    P/I and P/J over P/(I + J); returns (intersection, sum)."""
    if I.num_vars != J.num_vars:
        raise ValidationError("ideals must live in the same polynomial ring")
    if I.is_zero() or J.is_zero():
        raise TrivialFiberProduct("both ideals must be nonzero")
    if I.contains_ideal(J) or J.contains_ideal(I):
        raise TrivialFiberProduct(
            "containment between the ideals collapses the fiber product"
        )
    intersection = MonomialIdeal.of(
        I.num_vars,
        [lcm(g, h) for g in I.generators for h in J.generators],
    )
    total = MonomialIdeal(I.num_vars, I.generators | J.generators)
    return intersection, total
