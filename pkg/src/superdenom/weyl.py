"""Finite Weyl groups of the even subsystems, translations, and v(mu)."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Optional, Sequence

from .lattice import GL, RootSystem, Weight, form4
from .products import ProductExpr, act, expand
from .series import SparseSeries, add, rebase

MAX_GROUP_ORDER = 50_000


def _perm_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _apply_signed(signed: tuple[int, ...], coords: tuple[int, ...]) -> tuple[int, ...]:
    # signed[i] = +-(j+1): basis vector i goes to +-basis vector j
    out = [0] * len(coords)
    for i, s in enumerate(signed):
        j = abs(s) - 1
        out[j] = coords[i] if s > 0 else -coords[i]
    return tuple(out)


def _compose_signed(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Signed permutation a o b."""
    out = []
    for s in b:
        t = a[abs(s) - 1]
        out.append(t if s > 0 else -t)
    return tuple(out)


def _signed_det(signed: tuple[int, ...]) -> int:
    flips = sum(1 for s in signed if s < 0)
    return _perm_sign([abs(s) - 1 for s in signed]) * (-1) ** flips


@dataclass(frozen=True)
class GroupElement:
    """``t_mu o y`` with y a signed permutation of the eps and del coordinates.

    ``translation`` is the finite weight mu; the element acts on level-zero
    weights by w -> y(w) - (y(w), mu) delta.
    """

    perm_eps: tuple[int, ...]
    perm_del: tuple[int, ...]
    translation: Weight

    @property
    def sign(self) -> int:
        return _signed_det(self.perm_eps) * _signed_det(self.perm_del)

    @property
    def is_translation(self) -> bool:
        return self.perm_eps == tuple(range(1, len(self.perm_eps) + 1)) and self.perm_del == tuple(
            range(1, len(self.perm_del) + 1)
        )


def identity(rs: RootSystem) -> GroupElement:
    return GroupElement(tuple(range(1, rs.m + 1)), tuple(range(1, rs.n + 1)), rs.zero())


def translation(rs: RootSystem, mu) -> GroupElement:
    """t_mu for a finite weight, or for an integer vector over the del basis."""
    if not isinstance(mu, Weight):
        mu = Weight.make((0,) * rs.m, tuple(mu))
    if mu.imag:
        raise ValueError("translation vector must be finite")
    return GroupElement(tuple(range(1, rs.m + 1)), tuple(range(1, rs.n + 1)), mu)


def finite_part(g: GroupElement, w: Weight) -> Weight:
    return Weight(_apply_signed(g.perm_eps, w.eps2), _apply_signed(g.perm_del, w.del2), w.imag)


def act_weight(rs: RootSystem, g: GroupElement, w: Weight) -> Weight:
    y = finite_part(g, w)
    p4 = form4(y, g.translation)
    if p4 % 4:
        raise ValueError(f"({y}, {g.translation}) is not an integer")
    return y.shift_imag(-(p4 // 4))


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """g o h; t_mu y t_nu z = t_(mu + y nu) (y z)."""
    ynu = finite_part(g, h.translation)
    return GroupElement(
        _compose_signed(g.perm_eps, h.perm_eps),
        _compose_signed(g.perm_del, h.perm_del),
        g.translation + ynu,
    )


def inverse(g: GroupElement) -> GroupElement:
    def inv(signed):
        out = [0] * len(signed)
        for i, s in enumerate(signed):
            out[abs(s) - 1] = (i + 1) if s > 0 else -(i + 1)
        return tuple(out)

    y = GroupElement(inv(g.perm_eps), inv(g.perm_del), g.translation * 0)
    return GroupElement(y.perm_eps, y.perm_del, -finite_part(y, g.translation))


def compute_v(rs: RootSystem, mu: Weight) -> Weight:
    """Sum of even positive roots pairing positively with mu minus the same for odd ones."""
    v = rs.zero()
    for b in rs.pos_even:
        if form4(b, mu) > 0:
            v = v + b
    for b in rs.pos_odd:
        if form4(b, mu) > 0:
            v = v - b
    return v


def v_pairing(rs: RootSystem, mu: Weight) -> int:
    p4 = form4(compute_v(rs, mu), mu)
    assert p4 % 4 == 0
    return p4 // 4


def _shell(n: int, radius: int, zero_sum: bool) -> Iterable[tuple[int, ...]]:
    """Integer vectors with sum |k_i| <= radius (and sum k_i = 0 if requested)."""

    def rec(i, left, acc, total):
        if i == n:
            if not zero_sum or total == 0:
                yield tuple(acc)
            return
        for k in range(-left, left + 1):
            acc.append(k)
            yield from rec(i + 1, left - abs(k), acc, total + k)
            acc.pop()

    yield from rec(0, radius, [], 0)


def translation_lattice_shell(rs: RootSystem, radius: int) -> list[tuple[int, ...]]:
    """T' vectors (over the del basis) with sum |k_i| <= radius."""
    return sorted(_shell(rs.n, radius, rs.family == GL))


def enumerate_translations(rs: RootSystem, qbound: int) -> list[Weight]:
    """All mu in T' with -(v(mu), mu) <= qbound, in lexicographic order of coordinates."""
    if qbound < 0:
        raise ValueError("qbound must be non-negative")
    radius = 2 * qbound if rs.family == GL else qbound
    out = []
    for k in translation_lattice_shell(rs, radius):
        mu = Weight.make((0,) * rs.m, k)
        if -v_pairing(rs, mu) <= qbound:
            out.append(mu)
    return out


def _signed_perms(n: int, flips: str) -> Iterable[tuple[int, ...]]:
    for perm in permutations(range(1, n + 1)):
        if flips == "none":
            yield perm
            continue
        for signs in product((1, -1), repeat=n):
            if flips == "even" and signs.count(-1) % 2:
                continue
            yield tuple(s * p for s, p in zip(signs, perm))


def group_order(rs: RootSystem, which: str) -> int:
    if rs.family == GL:
        return math.factorial(rs.n)
    if which == "W'":
        return 2 ** rs.n * math.factorial(rs.n)
    return 2 ** rs.n * math.factorial(rs.n + 1)


def enumerate_finite_group(rs: RootSystem, which: str) -> list[GroupElement]:
    """W' (Weyl group of the del-block) or W'' (of the eps-block)."""
    if which not in ("W'", "W''"):
        raise ValueError("which must be W' or W''")
    size = group_order(rs, which)
    if size > MAX_GROUP_ORDER:
        raise ValueError(f"group of order {size} exceeds the enumeration guard")
    ident_e = tuple(range(1, rs.m + 1))
    ident_d = tuple(range(1, rs.n + 1))
    zero = rs.zero()
    if which == "W'":
        flips = "none" if rs.family == GL else "all"
        out = [GroupElement(ident_e, p, zero) for p in _signed_perms(rs.n, flips)]
    else:
        flips = "none" if rs.family == GL else "even"
        out = [GroupElement(p, ident_d, zero) for p in _signed_perms(rs.m, flips)]
    assert len(out) == size
    return sorted(out, key=lambda g: (g.perm_eps, g.perm_del))


def _expand_chunk(args):
    rs, items, base, order = args
    total = None
    for sign, p in items:
        s = _expand_into_window(rs, p, sign, base, order)
        if s is None:
            continue
        total = s if total is None else add(total, s)
    return total


def _expand_into_window(rs, p, sign, base, order) -> Optional[SparseSeries]:
    # order needed below p.prefix so that the window of (base, order) is covered
    lift = rs.height(p.prefix - base)
    local = order + lift
    if local < 0:
        return None
    s = expand(rs, p if sign == 1 else ProductExpr(-p.sign, p.prefix, p.factors), local)
    return rebase(s, base, drop=True)


def window_sum(
    rs: RootSystem,
    items: Sequence[tuple[int, ProductExpr]],
    base: Weight,
    order: int,
    workers: int = 1,
) -> SparseSeries:
    """Sum of ``sign * expand(p)`` restricted to the cone window of (``base``, ``order``).

    Every summand is expanded deep enough to cover that window, so the result
    is exact there regardless of where the summand's own cone starts.
    """
    zero = SparseSeries(rs, base, order)
    if workers > 1 and len(items) > 1:
        chunks = [list(items[i::workers]) for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_expand_chunk, [(rs, c, base, order) for c in chunks]))
    else:
        parts = [_expand_chunk((rs, items, base, order))]
    total = zero
    for part in parts:
        if part is not None:
            total = add(total, part)
    return SparseSeries(rs, base, order, rebase(total, base, drop=True).terms)


def fsum(
    rs: RootSystem,
    elements: Sequence[GroupElement],
    p: ProductExpr,
    order: int,
    base: Optional[Weight] = None,
    workers: int = 1,
) -> SparseSeries:
    """sum_g sign(g) g(p), expanded.

    With ``base`` the sum is restricted to that cone window; otherwise the
    summands are expanded to ``order`` below their own prefixes and added.
    """
    items = [(g.sign, act(rs, g, p)) for g in elements]
    if base is not None:
        return window_sum(rs, items, base, order, workers)
    total = None
    for sign, q in items:
        s = expand(rs, q, order) * sign
        total = s if total is None else add(total, s)
    return total if total is not None else SparseSeries.zero(rs, order)
