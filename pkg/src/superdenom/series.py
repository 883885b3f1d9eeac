"""Truncated sparse series supported in a single cone ``base - Q+``.

A series stores coefficients of ``e^(base - eta)`` for exponent vectors
``eta`` over the affine simple roots, with ``height(eta) <= order``.  The
coefficients of every weight whose height below ``base`` is at most
``order`` are known exactly; weights outside the cone are known to be zero.
Because of that, moving the base up by ``s`` keeps all information and
raises the order by ``height(s)``.
"""
from __future__ import annotations

import json
from collections import defaultdict
from typing import Iterable, Optional

from .lattice import RootSystem, Weight, to_affine_simple_coords


class IncompatibleCones(ValueError):
    """Two bases do not differ by an element of the affine root lattice."""


class NotAUnit(ValueError):
    pass


class SupportViolation(AssertionError):
    def __init__(self, weights: list):
        self.weights = weights
        super().__init__(f"{len(weights)} support weights outside the invariant span, e.g. {weights[:3]}")


def _add_vec(a, b):
    return tuple(x + y for x, y in zip(a, b))


class SparseSeries:
    __slots__ = ("rs", "base", "order", "terms")

    def __init__(self, rs: RootSystem, base: Weight, order: int, terms: Optional[dict] = None):
        if order < 0:
            raise ValueError("order must be non-negative")
        self.rs = rs
        self.base = base
        self.order = order
        clean = {}
        r = len(rs.affine_simple)
        for eta, c in (terms or {}).items():
            if not c:
                continue
            eta = tuple(eta)
            if len(eta) != r or min(eta) < 0:
                raise ValueError(f"bad exponent vector {eta}")
            if sum(eta) <= order:
                clean[eta] = c
        self.terms = clean

    @classmethod
    def monomial(cls, rs: RootSystem, weight: Weight, order: int, coeff: int = 1) -> "SparseSeries":
        return cls(rs, weight, order, {(0,) * len(rs.affine_simple): coeff})

    @classmethod
    def zero(cls, rs: RootSystem, order: int) -> "SparseSeries":
        return cls(rs, rs.zero(), order)

    @classmethod
    def one(cls, rs: RootSystem, order: int) -> "SparseSeries":
        return cls.monomial(rs, rs.zero(), order)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"SparseSeries({self.rs.name}, base={self.base}, order={self.order}, {len(self.terms)} terms)"

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseSeries):
            return NotImplemented
        if self.rs is not other.rs or self.order != other.order:
            return False
        if not self.terms and not other.terms:
            return True
        return self.base == other.base and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(other, -1))

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        return mul(self, other)

    __rmul__ = __mul__

    def coeff(self, weight: Weight) -> int:
        c = self.rs.coords(self.base - weight)
        if c is None:
            raise IncompatibleCones(f"{weight} is not in the lattice coset of {self.base}")
        if sum(c) > self.order:
            raise ValueError(f"{weight} is beyond the truncation order")
        return self.terms.get(c, 0)

    def by_height(self) -> list[dict]:
        out = [dict() for _ in range(self.order + 1)]
        for eta, c in self.terms.items():
            out[sum(eta)][eta] = c
        return out


def _offset(rs: RootSystem, upper: Weight, lower: Weight) -> tuple[int, ...]:
    c = to_affine_simple_coords(rs, upper - lower)
    if c is None:
        raise IncompatibleCones(f"bases {upper} and {lower} lie in different lattice cosets")
    return c


def scale(a: SparseSeries, k: int) -> SparseSeries:
    return SparseSeries(a.rs, a.base, a.order, {e: k * c for e, c in a.terms.items()})


def rebase(a: SparseSeries, new_base: Weight, *, drop: bool = False) -> SparseSeries:
    """Re-express ``a`` relative to ``new_base``.

    The valid window (all weights at height <= order below the base) is
    preserved exactly, so the order changes by the height of the shift.
    Terms outside the new cone raise unless ``drop`` is set.
    """
    s = _offset(a.rs, new_base, a.base)
    new_order = a.order + sum(s)
    if new_order < 0:
        raise ValueError("new base lies above the valid window")
    terms = {}
    for eta, c in a.terms.items():
        e2 = _add_vec(eta, s)
        if min(e2) < 0:
            if drop:
                continue
            raise ValueError(f"term at {a.base} - {eta} lies outside the cone of {new_base}")
        terms[e2] = c
    return SparseSeries(a.rs, new_base, new_order, terms)


def restrict(a: SparseSeries, base: Weight, order: int) -> SparseSeries:
    """The part of ``a`` in the cone window of (``base``, ``order``).

    Fails if ``a`` does not determine every coefficient of that window.
    """
    out = rebase(a, base, drop=True)
    if out.order < order:
        raise ValueError(f"series valid to order {out.order} at {base}, {order} requested")
    return SparseSeries(a.rs, base, order, out.terms)


def add(a: SparseSeries, b: SparseSeries) -> SparseSeries:
    if a.rs is not b.rs:
        raise ValueError("series over different root systems")
    c = to_affine_simple_coords(a.rs, b.base - a.base)
    if c is None:
        # an empty series in a foreign lattice coset carries no window information
        if not b.terms:
            return a
        if not a.terms:
            return b
    d = _offset(a.rs, b.base, a.base)
    # componentwise max of the two cone positions, relative to a.base
    s_a = tuple(max(0, x) for x in d)
    s_b = tuple(x - y for x, y in zip(s_a, d))
    base = a.base if not any(s_a) else a.rs.from_coords(s_a) + a.base
    order = min(a.order + sum(s_a), b.order + sum(s_b))
    terms: dict = defaultdict(int)
    for src, s in ((a, s_a), (b, s_b)):
        for eta, c in src.terms.items():
            e2 = _add_vec(eta, s)
            if sum(e2) <= order:
                terms[e2] += c
    return SparseSeries(a.rs, base, order, terms)


def mul(a: SparseSeries, b: SparseSeries) -> SparseSeries:
    if a.rs is not b.rs:
        raise ValueError("series over different root systems")
    order = min(a.order, b.order)
    if len(a.terms) > len(b.terms):
        a, b = b, a
    buckets = b.by_height()
    out: dict = defaultdict(int)
    for ea, ca in a.terms.items():
        ha = sum(ea)
        for hb in range(0, min(order - ha, b.order) + 1):
            for eb, cb in buckets[hb].items():
                out[_add_vec(ea, eb)] += ca * cb
    return SparseSeries(a.rs, a.base + b.base, order, out)


def div_by_unit(a: SparseSeries, b: SparseSeries) -> SparseSeries:
    """The series c with b*c = a up to the common order; b must lead with +-1 at its base."""
    if a.rs is not b.rs:
        raise ValueError("series over different root systems")
    r = len(a.rs.affine_simple)
    lead = b.terms.get((0,) * r)
    if lead not in (1, -1):
        raise NotAUnit(f"leading coefficient {lead} is not a unit")
    order = min(a.order, b.order)
    rest = [(e, c) for e, c in b.terms.items() if any(e)]
    residual = [defaultdict(int) for _ in range(order + 1)]
    for eta, c in a.terms.items():
        if sum(eta) <= order:
            residual[sum(eta)][eta] += c
    out = {}
    for h in range(order + 1):
        for eta, c in sorted(residual[h].items()):
            if not c:
                continue
            q = c * lead
            out[eta] = q
            for eb, cb in rest:
                h2 = h + sum(eb)
                if h2 <= order:
                    residual[h2][_add_vec(eta, eb)] -= q * cb
    return SparseSeries(a.rs, a.base - b.base, order, out)


def support_weights(a: SparseSeries) -> list[tuple[Weight, int]]:
    rs = a.rs
    return [(a.base - rs.from_coords(eta), c) for eta, c in sorted(a.terms.items())]


def invariant_span_violations(a: SparseSeries) -> list[Weight]:
    """Support weights outside base - (Z>=0 delta + Z str)."""
    rs = a.rs
    bad = []
    for w, _ in support_weights(a):
        diff = a.base - w
        if diff.imag < 0:
            bad.append(w)
            continue
        fin = diff.finite
        if rs.str_ is None:
            ok = fin.is_zero()
        else:
            k = fin.eps2[0]
            ok = fin == rs.str_ * (k // 2) if k % 2 == 0 else False
        if not ok:
            bad.append(w)
    return bad


def project_to_invariant_span(a: SparseSeries) -> SparseSeries:
    bad = invariant_span_violations(a)
    if bad:
        raise SupportViolation(bad)
    return a


def compare(a: SparseSeries, b: SparseSeries, *, limit: Optional[int] = None):
    """Coefficient mismatches of two series on their common valid window.

    Returns ``(window_order, mismatches)`` with mismatches as
    ``(weight, coeff_a, coeff_b)`` sorted by exponent, relative to the
    common base.
    """
    total = add(a, scale(b, -1))
    base = total.base
    ra = rebase(a, base, drop=False)
    rb = rebase(b, base, drop=False)
    rs = a.rs
    out = []
    for eta in sorted(total.terms):
        if sum(eta) > total.order:
            continue
        out.append((base - rs.from_coords(eta), ra.terms.get(eta, 0), rb.terms.get(eta, 0)))
        if limit is not None and len(out) >= limit:
            break
    return total.order, out


def to_json(a: SparseSeries) -> str:
    """Canonical JSON: sorted exponent vectors, decimal-string coefficients."""
    obj = {
        "root_system": {"family": a.rs.family, "n": a.rs.n},
        "base": a.base.to_json(),
        "order": a.order,
        "terms": [[list(eta), str(c)] for eta, c in sorted(a.terms.items())],
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def from_json(text: str) -> SparseSeries:
    from .lattice import build_root_system

    obj = json.loads(text)
    rs = build_root_system(obj["root_system"]["family"], obj["root_system"]["n"])
    terms = {tuple(eta): int(c) for eta, c in obj["terms"]}
    return SparseSeries(rs, Weight.from_json(obj["base"]), obj["order"], terms)


def q_coefficients(a: SparseSeries, upto: Optional[int] = None) -> list[int]:
    """Coefficients of q^0..q^upto for a series in the span of delta below its base."""
    upto = a.order // a.rs.delta_height if upto is None else upto
    out = [0] * (upto + 1)
    for w, c in support_weights(a):
        diff = a.base - w
        if not diff.finite.is_zero():
            raise ValueError(f"{w} is not a pure q-power below the base")
        if diff.imag <= upto:
            out[diff.imag] += c
    return out


def iter_terms(a: SparseSeries) -> Iterable[tuple[tuple[int, ...], int]]:
    return sorted(a.terms.items())
