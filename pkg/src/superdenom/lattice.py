"""Root data and weight space for gl(n|n) and D(n+1|n).

Weights live in the space spanned by eps_1..eps_m, del_1..del_n and the
imaginary root.  The form is -(eps_i, eps_j) = (del_i, del_j) = [i == j]
and the imaginary root is orthogonal to everything.  Finite coordinates are
stored doubled so that rho = -str/2 is exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

import sympy

GL = "gl"
D = "d"
FAMILIES = (GL, D)


@dataclass(frozen=True, order=True)
class Weight:
    """An affine weight of level zero.

    ``eps2`` and ``del2`` hold twice the eps/del coefficients; ``imag`` is the
    coefficient of the imaginary root (so ``q**k`` is ``imag == -k``).
    """

    eps2: tuple[int, ...]
    del2: tuple[int, ...]
    imag: int = 0

    @classmethod
    def make(cls, eps: Sequence = (), dels: Sequence = (), imag: int = 0) -> "Weight":
        def dbl(x):
            x = Fraction(x) * 2
            if x.denominator != 1:
                raise ValueError(f"coordinate {x / 2} is not a half-integer")
            return int(x)

        return cls(tuple(dbl(x) for x in eps), tuple(dbl(x) for x in dels), int(imag))

    @classmethod
    def zero(cls, m: int, n: int) -> "Weight":
        return cls((0,) * m, (0,) * n, 0)

    @property
    def eps(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, 2) for x in self.eps2)

    @property
    def dels(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, 2) for x in self.del2)

    @property
    def finite(self) -> "Weight":
        return Weight(self.eps2, self.del2, 0)

    def is_integral(self) -> bool:
        return all(x % 2 == 0 for x in self.eps2) and all(x % 2 == 0 for x in self.del2)

    def _check(self, other: "Weight") -> None:
        if len(self.eps2) != len(other.eps2) or len(self.del2) != len(other.del2):
            raise ValueError("weights belong to different spaces")

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(
            tuple(a + b for a, b in zip(self.eps2, other.eps2)),
            tuple(a + b for a, b in zip(self.del2, other.del2)),
            self.imag + other.imag,
        )

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.eps2), tuple(-a for a in self.del2), -self.imag)

    def __mul__(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.eps2), tuple(k * a for a in self.del2), k * self.imag)

    __rmul__ = __mul__

    def shift_imag(self, k: int) -> "Weight":
        return Weight(self.eps2, self.del2, self.imag + k)

    def is_zero(self) -> bool:
        return self.imag == 0 and not any(self.eps2) and not any(self.del2)

    def to_json(self) -> dict:
        # eps/del in doubled-integer encoding, imag as is
        return {"eps": list(self.eps2), "del": list(self.del2), "imag": self.imag}

    @classmethod
    def from_json(cls, obj: dict) -> "Weight":
        return cls(tuple(obj["eps"]), tuple(obj["del"]), int(obj["imag"]))

    def __str__(self) -> str:
        parts = []
        for name, coords in (("e", self.eps), ("d", self.dels)):
            for i, c in enumerate(coords, 1):
                if c:
                    parts.append(f"{c}*{name}{i}")
        if self.imag:
            parts.append(f"{self.imag}*delta")
        return " + ".join(parts) if parts else "0"


def form4(a: Weight, b: Weight) -> int:
    """Four times the bilinear form, as an exact integer."""
    s = 0
    for x, y in zip(a.eps2, b.eps2):
        s -= x * y
    for x, y in zip(a.del2, b.del2):
        s += x * y
    return s


def bilinear(rs: "RootSystem", a: Weight, b: Weight) -> Fraction:
    """The invariant form; the imaginary coordinate pairs to zero with everything."""
    for w in (a, b):
        if len(w.eps2) != rs.m or len(w.del2) != rs.n:
            raise ValueError(f"weight {w} does not belong to {rs.name}")
    return Fraction(form4(a, b), 4)


class _LatticeSolver:
    """Exact coordinates over a set of linearly independent integral vectors."""

    def __init__(self, basis: Sequence[Weight]):
        self.basis = tuple(basis)
        cols = [list(b.eps2) + list(b.del2) + [2 * b.imag] for b in basis]
        A = sympy.Matrix(cols).T
        if A.rank() != len(cols):
            raise ValueError("basis vectors are linearly dependent")
        L = (A.T * A).inv() * A.T
        den = sympy.ilcm(*[sympy.fraction(x)[1] for x in L]) if L else 1
        self._den = int(den)
        self._rows = [[int(x * den) for x in L.row(i)] for i in range(L.rows)]
        self._cols = cols

    def solve(self, w: Weight) -> Optional[tuple[int, ...]]:
        vec = list(w.eps2) + list(w.del2) + [2 * w.imag]
        out = []
        for row in self._rows:
            s = sum(r * v for r, v in zip(row, vec))
            if s % self._den:
                return None
            out.append(s // self._den)
        # left inverse only certifies membership if the recombination is exact
        for k, v in enumerate(vec):
            if sum(c * col[k] for c, col in zip(out, self._cols)) != v:
                return None
        return tuple(out)


def _unit(m: int, n: int, kind: str, i: int, coeff: int = 1) -> Weight:
    eps = [0] * m
    dels = [0] * n
    (eps if kind == "e" else dels)[i] = 2 * coeff
    return Weight(tuple(eps), tuple(dels), 0)


@dataclass(frozen=True, eq=False)
class RootSystem:
    family: str
    n: int
    m: int
    simple_roots: tuple[Weight, ...]
    pos_even_prime: tuple[Weight, ...]
    pos_even_doubleprime: tuple[Weight, ...]
    pos_odd: tuple[Weight, ...]
    rho: Weight
    str_: Optional[Weight]
    iso_set: tuple[Weight, ...]
    theta: Weight
    affine_simple: tuple[Weight, ...]
    marks: tuple[int, ...]
    _solver: _LatticeSolver = field(repr=False)

    @property
    def name(self) -> str:
        return f"gl({self.n}|{self.n})" if self.family == GL else f"D({self.n + 1}|{self.n})"

    @property
    def pos_even(self) -> tuple[Weight, ...]:
        return self.pos_even_doubleprime + self.pos_even_prime

    @property
    def rank(self) -> int:
        """Dimension of the Cartan subalgebra."""
        return self.m + self.n

    @property
    def delta(self) -> Weight:
        return Weight.zero(self.m, self.n).shift_imag(1)

    @cached_property
    def delta_height(self) -> int:
        return sum(self.marks)

    def zero(self) -> Weight:
        return Weight.zero(self.m, self.n)

    def eps(self, i: int, coeff: int = 1) -> Weight:
        """coeff * eps_i, 1-based."""
        return _unit(self.m, self.n, "e", i - 1, coeff)

    def del_(self, i: int, coeff: int = 1) -> Weight:
        return _unit(self.m, self.n, "d", i - 1, coeff)

    def form(self, a: Weight, b: Weight) -> Fraction:
        return bilinear(self, a, b)

    def coords(self, w: Weight) -> Optional[tuple[int, ...]]:
        return to_affine_simple_coords(self, w)

    def from_coords(self, c: Iterable[int]) -> Weight:
        out = self.zero()
        for k, a in zip(c, self.affine_simple):
            if k:
                out = out + a * k
        return out

    def height(self, w: Weight) -> int:
        return height(self, w)

    def __reduce__(self):
        return (build_root_system, (self.family, self.n))


def _positive_roots(family: str, n: int, m: int):
    e = lambda i, c=1: _unit(m, n, "e", i - 1, c)
    d = lambda i, c=1: _unit(m, n, "d", i - 1, c)
    even_pp: list[Weight] = []
    even_p: list[Weight] = []
    odd: list[Weight] = []
    if family == GL:
        even_pp = [e(i) - e(j) for i, j in combinations(range(1, n + 1), 2)]
        even_p = [d(i) - d(j) for i, j in combinations(range(1, n + 1), 2)]
        odd = [e(i) - d(j) for i in range(1, n + 1) for j in range(i, n + 1)]
        odd += [d(i) - e(j) for i, j in combinations(range(1, n + 1), 2)]
    else:
        for i, j in combinations(range(1, n + 2), 2):
            even_pp += [e(i) - e(j), e(i) + e(j)]
        for s, t in combinations(range(1, n + 1), 2):
            even_p += [d(s) - d(t), d(s) + d(t)]
        even_p += [d(s, 2) for s in range(1, n + 1)]
        odd = [e(i) - d(s) for i in range(1, n + 1) for s in range(i, n + 1)]
        odd += [d(s) - e(j) for s in range(1, n + 1) for j in range(s + 1, n + 2)]
        odd += [d(i) + e(j) for i in range(1, n + 1) for j in range(1, n + 2)]
    return tuple(even_p), tuple(even_pp), tuple(odd)


def build_root_system(family: str, n: int) -> RootSystem:
    """Root datum for gl(n|n) (``family='gl'``) or D(n+1|n) (``family='d'``)."""
    return _build_root_system(family, int(n))


_CACHE: dict = {}


def _build_root_system(family: str, n: int) -> RootSystem:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if n < 1:
        raise ValueError("n must be at least 1")
    key = (family, n)
    if key in _CACHE:
        return _CACHE[key]
    m = n if family == GL else n + 1
    e = lambda i, c=1: _unit(m, n, "e", i - 1, c)
    d = lambda i, c=1: _unit(m, n, "d", i - 1, c)

    simple: list[Weight] = []
    for i in range(1, n + 1):
        simple.append(e(i) - d(i))
        if i < n:
            simple.append(d(i) - e(i + 1))
    if family == D:
        simple += [d(n) - e(n + 1), d(n) + e(n + 1)]

    even_p, even_pp, odd = _positive_roots(family, n, m)
    zero = Weight.zero(m, n)
    total = zero
    for a in even_p + even_pp:
        total = total + a
    for b in odd:
        total = total - b
    rho = Weight(tuple(x // 2 for x in total.eps2), tuple(x // 2 for x in total.del2), 0)

    str_ = None
    if family == GL:
        str_ = zero
        for i in range(1, n + 1):
            str_ = str_ + e(i) - d(i)

    # highest root: the unique maximum of the positive roots in dominance order
    finite = _LatticeSolver(simple)
    pos = even_p + even_pp + odd
    fc = {a: finite.solve(a) for a in pos}
    for a, c in fc.items():
        if c is None or min(c) < 0:
            raise AssertionError(f"positive root {a} is not in Q+")
    maximal = [a for a in pos if all(all(x >= y for x, y in zip(fc[a], fc[b])) for b in pos)]
    if len(maximal) != 1:
        raise AssertionError("positive roots have no unique maximum")
    theta = maximal[0]

    alpha0 = zero.shift_imag(1) - theta
    affine = (alpha0,) + tuple(simple)
    marks = (1,) + fc[theta]
    rs = RootSystem(
        family=family,
        n=n,
        m=m,
        simple_roots=tuple(simple),
        pos_even_prime=even_p,
        pos_even_doubleprime=even_pp,
        pos_odd=odd,
        rho=rho,
        str_=str_,
        iso_set=tuple(e(i) - d(i) for i in range(1, n + 1)),
        theta=theta,
        affine_simple=affine,
        marks=marks,
        _solver=_LatticeSolver(affine),
    )
    _CACHE[key] = rs
    return rs


def to_affine_simple_coords(rs: RootSystem, w: Weight) -> Optional[tuple[int, ...]]:
    """Coordinates of ``w`` over the affine simple roots, or None if w is not in the root lattice."""
    if not w.is_integral():
        return None
    return rs._solver.solve(w)


def height(rs: RootSystem, w: Weight) -> int:
    c = to_affine_simple_coords(rs, w)
    if c is None:
        raise ValueError(f"{w} is not in the affine root lattice of {rs.name}")
    return sum(c)
