"""Closed-form products ``sign * e^prefix * prod (1 + a e^-gamma)^r``.

Group elements act on these exactly (factor by factor); expansion into a
``SparseSeries`` happens only at the end.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import TYPE_CHECKING, Iterable, Optional

from .lattice import RootSystem, Weight, to_affine_simple_coords
from .series import SparseSeries

if TYPE_CHECKING:
    from .weyl import GroupElement


class DegenerateFactor(ValueError):
    """A factor whose exponent weight is zero or not of constant sign."""


@dataclass(frozen=True)
class Factor:
    """``(1 + a * e^(-gamma)) ** r`` with ``a`` in {1, -1}."""

    a: int
    gamma: Weight
    r: int

    def __post_init__(self):
        if self.a not in (1, -1):
            raise ValueError("only +-1 factor coefficients are supported")
        if self.r == 0:
            raise ValueError("zero exponent")


@dataclass(frozen=True)
class ProductExpr:
    sign: int
    prefix: Weight
    factors: tuple[Factor, ...] = ()

    def times(self, other: "ProductExpr") -> "ProductExpr":
        return ProductExpr(self.sign * other.sign, self.prefix + other.prefix, self.factors + other.factors)

    def shifted(self, w: Weight) -> "ProductExpr":
        """Multiply by the monomial e^w."""
        return replace(self, prefix=self.prefix + w)

    def __len__(self) -> int:
        return len(self.factors)


def normalize_factor(rs: RootSystem, f: Factor) -> tuple[tuple[int, Weight], Factor]:
    """Rewrite ``f`` so that its exponent weight lies in Q+ \\ {0}.

    Returns ``((sign, weight), factor)`` with ``f == sign * e^weight * factor``.
    Uses (1 + a e^-g)^r = (a e^-g)^r (1 + a e^g)^r.
    """
    c = to_affine_simple_coords(rs, f.gamma)
    if c is None:
        raise DegenerateFactor(f"{f.gamma} is not in the affine root lattice")
    if not any(c):
        raise DegenerateFactor("factor with zero exponent weight")
    if min(c) >= 0:
        return (1, rs.zero()), f
    if max(c) <= 0:
        sign = f.a ** (f.r % 2)
        return (sign, f.gamma * (-f.r)), Factor(f.a, -f.gamma, f.r)
    raise DegenerateFactor(f"{f.gamma} has coordinates of both signs")


def normalize(rs: RootSystem, p: ProductExpr) -> ProductExpr:
    sign, prefix = p.sign, p.prefix
    factors = []
    for f in p.factors:
        (s, w), g = normalize_factor(rs, f)
        sign *= s
        prefix = prefix + w
        factors.append(g)
    return ProductExpr(sign, prefix, tuple(factors))


def act(rs: RootSystem, g: "GroupElement", p: ProductExpr) -> ProductExpr:
    from .weyl import act_weight

    moved = ProductExpr(
        p.sign,
        act_weight(rs, g, p.prefix),
        tuple(Factor(f.a, act_weight(rs, g, f.gamma), f.r) for f in p.factors),
    )
    return normalize(rs, moved)


def factor_coords(rs: RootSystem, p: ProductExpr) -> list[tuple[int, tuple[int, ...], int]]:
    out = []
    for f in p.factors:
        c = to_affine_simple_coords(rs, f.gamma)
        if c is None or min(c) < 0 or not any(c):
            raise DegenerateFactor(f"factor {f} is not normalized")
        out.append((f.a, c, f.r))
    return out


def expand(rs: RootSystem, p: ProductExpr, order: int) -> SparseSeries:
    """Expand ``p`` to height ``order`` below its prefix.

    Positive exponents multiply by (1 + a x) repeatedly; negative ones divide,
    i.e. c_h = s_h - a c_{h - h(gamma)} in increasing height.  Exponent
    vectors are packed into integers with radix order + 1, which is exact
    because no coordinate of a retained vector exceeds its height.
    """
    r = len(rs.affine_simple)
    if order < 0:
        return SparseSeries(rs, p.prefix, 0, {})
    radix = order + 1
    weights = [radix ** i for i in range(r)]
    buckets: list[dict] = [dict() for _ in range(order + 1)]
    buckets[0][0] = p.sign
    for a, c, e in sorted(factor_coords(rs, p)):
        h = sum(c)
        if h > order:
            continue
        key = sum(x * w for x, w in zip(c, weights))
        if e > 0:
            for _ in range(e):
                for lvl in range(order, h - 1, -1):
                    src, dst = buckets[lvl - h], buckets[lvl]
                    for k, v in src.items():
                        k2 = k + key
                        dst[k2] = dst.get(k2, 0) + a * v
        else:
            for _ in range(-e):
                for lvl in range(h, order + 1):
                    src, dst = buckets[lvl - h], buckets[lvl]
                    for k, v in src.items():
                        k2 = k + key
                        dst[k2] = dst.get(k2, 0) - a * v
        for b in buckets:
            for k in [k for k, v in b.items() if not v]:
                del b[k]
    terms = {}
    for b in buckets:
        for k, v in b.items():
            eta = []
            for _ in range(r):
                k, d = divmod(k, radix)
                eta.append(d)
            terms[tuple(eta)] = v
    return SparseSeries(rs, p.prefix, order, terms)


def leading_q_degree(p: ProductExpr, reference: Weight) -> int:
    """q-degree of the maximal support weight of a normalized product, relative to ``reference``."""
    return reference.imag - p.prefix.imag


def monomial(rs: RootSystem, w: Optional[Weight] = None, sign: int = 1) -> ProductExpr:
    return ProductExpr(sign, rs.zero() if w is None else w, ())


def _even(rs: RootSystem, roots: Iterable[Weight]) -> tuple[Factor, ...]:
    return tuple(Factor(-1, a, 1) for a in roots)


def _odd(rs: RootSystem, roots: Iterable[Weight], r: int = -1) -> tuple[Factor, ...]:
    return tuple(Factor(1, b, r) for b in roots)


def build_R(rs: RootSystem) -> ProductExpr:
    """prod_{even+} (1 - e^-a) / prod_{odd+} (1 + e^-b)."""
    return ProductExpr(1, rs.zero(), _even(rs, rs.pos_even) + _odd(rs, rs.pos_odd))


def affine_horizon(rs: RootSystem, order: int) -> int:
    return order // rs.delta_height + 1


def build_Rhat(rs: RootSystem, order: int, rank: Optional[int] = None) -> ProductExpr:
    """Affine denominator with the q-products cut where every further factor has height > order."""
    rank = rs.rank if rank is None else rank
    factors = list(build_R(rs).factors)
    even_all = [a for a in rs.pos_even] + [-a for a in rs.pos_even]
    odd_all = [b for b in rs.pos_odd] + [-b for b in rs.pos_odd]
    for k in range(1, affine_horizon(rs, order) + 1):
        if rank:
            factors.append(Factor(-1, rs.delta * k, rank))
        factors += [Factor(-1, a.shift_imag(k), 1) for a in even_all]
        factors += [Factor(1, b.shift_imag(k), -1) for b in odd_all]
    return ProductExpr(1, rs.zero(), tuple(factors))


def build_R0pp(rs: RootSystem) -> ProductExpr:
    return ProductExpr(1, rs.zero(), _even(rs, rs.pos_even_doubleprime))


def build_R0p(rs: RootSystem) -> ProductExpr:
    return ProductExpr(1, rs.zero(), _even(rs, rs.pos_even_prime))


def build_R1(rs: RootSystem) -> ProductExpr:
    """prod_{odd+} (1 + e^-b), the odd part as a numerator."""
    return ProductExpr(1, rs.zero(), _odd(rs, rs.pos_odd, 1))


def inverse(p: ProductExpr) -> ProductExpr:
    if p.sign not in (1, -1):
        raise ValueError("sign must be +-1")
    return ProductExpr(p.sign, -p.prefix, tuple(Factor(f.a, f.gamma, -f.r) for f in p.factors))
