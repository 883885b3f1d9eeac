"""Verifiers for the affine and finite denominator identities and their corollaries."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Optional, Sequence

from .lattice import D, GL, RootSystem, Weight, build_root_system, form4
from .products import (
    Factor,
    ProductExpr,
    act,
    affine_horizon,
    build_R,
    build_R0p,
    build_R0pp,
    build_Rhat,
    build_R1,
    expand,
    inverse,
    monomial,
    normalize,
)
from .series import (
    SparseSeries,
    SupportViolation,
    compare,
    div_by_unit,
    invariant_span_violations,
    q_coefficients,
    support_weights,
)
from .weyl import (
    GroupElement,
    compute_v,
    enumerate_finite_group,
    enumerate_translations,
    fsum,
    translation,
    compose,
    v_pairing,
    window_sum,
)

MAX_WITNESSES = 50


class ShellError(AssertionError):
    """An enumeration bound failed its a-posteriori check (infrastructure, not mathematics)."""


@dataclass
class VerificationReport:
    identity_name: str
    family: str
    n: int
    order: int
    lhs_terms: int = 0
    rhs_terms: int = 0
    mismatches: list = field(default_factory=list)
    mismatch_count: int = 0
    elapsed: float = 0.0
    informational: bool = False
    details: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        if self.informational:
            return "info"
        return "pass" if self.mismatch_count == 0 else "fail"

    @property
    def passed(self) -> bool:
        return self.verdict != "fail"

    def add_mismatches(self, items) -> None:
        items = list(items)
        self.mismatch_count += len(items)
        room = MAX_WITNESSES - len(self.mismatches)
        self.mismatches.extend(items[: max(room, 0)])

    def to_dict(self, *, timing: bool = True) -> dict:
        out = {
            "identity": self.identity_name,
            "family": self.family,
            "n": self.n,
            "order": self.order,
            "verdict": self.verdict,
            "lhs_terms": self.lhs_terms,
            "rhs_terms": self.rhs_terms,
            "mismatch_count": self.mismatch_count,
            "mismatches": [
                {"weight": w.to_json() if isinstance(w, Weight) else w, "lhs": str(a), "rhs": str(b)}
                for w, a, b in self.mismatches
            ],
        }
        if timing:
            out["elapsed_ms"] = round(self.elapsed * 1000, 3)
        if self.details:
            out["details"] = self.details
        return out


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def resolve_family(family: str, n: int) -> RootSystem:
    """Map a CLI family name to a root system; d21a is D(2|1), sl reuses gl."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if family in ("gl", "sl"):
        return build_root_system(GL, n)
    if family == "d":
        return build_root_system(D, n)
    if family == "d21a":
        if n != 1:
            raise ValueError("d21a shares the root datum of D(2|1); n must be 1")
        return build_root_system(D, 1)
    raise ValueError(f"unknown family {family!r}")


# --- plain q-series helpers (lists of integer coefficients) ---------------

def q_mul(a: Sequence[int], b: Sequence[int], M: int) -> list[int]:
    out = [0] * (M + 1)
    for i, x in enumerate(a[: M + 1]):
        if x:
            for j, y in enumerate(b[: M + 1 - i]):
                out[i + j] += x * y
    return out


def q_power_product(terms: Sequence[tuple[int, int, int]], M: int) -> list[int]:
    """prod over (c, k, r) of (1 + c q^k)^r through q^M, with c in {1,-1} and k >= 1."""
    out = [1] + [0] * M
    for c, k, r in terms:
        for _ in range(abs(r)):
            if r > 0:
                for i in range(M, k - 1, -1):
                    out[i] += c * out[i - k]
            else:
                for i in range(k, M + 1):
                    out[i] -= c * out[i - k]
    return out


def pochhammer_q(c: int, M: int, r: int = 1) -> list[int]:
    """((1 + c q)^inf_q)^r = prod_{k>=1} (1 + c q^k)^r through q^M."""
    return q_power_product([(c, k, r) for k in range(1, M + 1)], M)


def partition_numbers(M: int) -> list[int]:
    """p(0..M) by counting partitions with parts bounded, independent of any product."""
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def count(m: int, largest: int) -> int:
        if m == 0:
            return 1
        return sum(count(m - part, part) for part in range(1, min(m, largest) + 1))

    return [count(m, m) for m in range(M + 1)]


def sl_f_closed_form(n: int, M: int) -> list[int]:
    """The sl(n|n) factor through q^M: (1-q)^inf_q for even n, ((1+q)^inf_q)^2/(1-q)^inf_q for odd n."""
    if n % 2 == 0:
        return pochhammer_q(-1, M)
    return q_mul(pochhammer_q(1, M, 2), pochhammer_q(-1, M, -1), M)


# --- closed forms ---------------------------------------------------------

def f_product(rs: RootSystem, order: int) -> ProductExpr:
    K = affine_horizon(rs, order)
    if rs.family == D:
        return ProductExpr(1, rs.zero(), tuple(Factor(-1, rs.delta * k, -1) for k in range(1, K + 1)))
    a = (-1) ** (rs.n + 1)  # 1 - q^k (-1)^n e^{+-str}
    fs = []
    for k in range(1, K + 1):
        fs += [
            Factor(a, rs.delta * k - rs.str_, 1),
            Factor(a, rs.delta * k + rs.str_, 1),
            Factor(-1, rs.delta * k, -2),
        ]
    return ProductExpr(1, rs.zero(), tuple(fs))


def f_closed_form(rs: RootSystem, order: int) -> SparseSeries:
    """f(q) for D(n+1|n), f(q, e^str) for gl(n|n), truncated at height ``order`` below 0."""
    return expand(rs, f_product(rs, order), order)


def rhat_rho(rs: RootSystem, order: int, rank: Optional[int] = None) -> SparseSeries:
    return expand(rs, build_Rhat(rs, order, rank).shifted(rs.rho), order)


def _translation_items(rs: RootSystem, order: int, report: Optional[VerificationReport] = None):
    R = build_R(rs).shifted(rs.rho)
    items = []
    for mu in enumerate_translations(rs, order):
        g = translation(rs, mu)
        if g.sign != 1:
            raise ShellError("translation with sign -1")
        p = act(rs, g, R)
        qdeg = rs.rho.imag - p.prefix.imag
        if qdeg != -v_pairing(rs, mu):
            raise ShellError(f"leading q-degree {qdeg} of t_{mu}(R e^rho) != -(v(mu),mu)")
        # max supp of t_mu(R) is -v(mu) + (v(mu),mu) delta
        v = compute_v(rs, mu)
        if p.prefix - rs.rho != (-v).shift_imag(v_pairing(rs, mu)):
            raise ShellError(f"maximal support of t_{mu}(R) disagrees with v(mu)")
        items.append((1, p))
    if report is not None:
        report.details["translations"] = len(items)
    return items


def translation_sum(rs: RootSystem, order: int, workers: int = 1, report=None) -> SparseSeries:
    """sum over T' of t(R e^rho), exact on the cone window of height ``order`` below rho."""
    return window_sum(rs, _translation_items(rs, order, report), rs.rho, order, workers)


def _record_compare(report: VerificationReport, lhs: SparseSeries, rhs: SparseSeries) -> None:
    report.lhs_terms, report.rhs_terms = len(lhs), len(rhs)
    window, mm = compare(lhs, rhs)
    report.details["window_order"] = window
    report.add_mismatches(mm)


def _family_label(family: str, rs: RootSystem) -> str:
    return family if family in ("sl", "d21a") else rs.family


# --- main identity ----------------------------------------------------------

def verify_affine_identity(family: str, n: int, order: int, workers: int = 1) -> VerificationReport:
    rs = resolve_family(family, n)
    rep = VerificationReport("denom0", _family_label(family, rs), n, order)
    with _Timer() as t:
        lhs = f_closed_form(rs, order) * rhat_rho(rs, order)
        rhs = translation_sum(rs, order, workers, rep)
        _record_compare(rep, lhs, rhs)
        if family == "sl":
            _sl_details(rs, order, rep, workers)
    rep.elapsed = t.elapsed
    return rep


def _sl_details(rs: RootSystem, order: int, rep: VerificationReport, workers: int) -> None:
    """Check the sl(n|n) specialisation e^str -> 1 of the extracted and closed-form factors."""
    n = rs.n
    K = order // (3 * n)
    Y = extract_Y("gl", n, order, workers)
    at_one = [0] * (K + 1)
    for w, c in support_weights(Y):
        k = -w.imag
        if k <= K:
            at_one[k] += c
    shifted = q_mul(at_one, pochhammer_q(-1, K), K)
    closed = sl_f_closed_form(n, K)
    # the closed gl factor at e^str = 1 must also reproduce the sl formula
    sign = (-1) ** n
    gl_at_one = q_mul(pochhammer_q(-sign, K, 2), pochhammer_q(-1, K, -2), K)
    via_gl = q_mul(gl_at_one, pochhammer_q(-1, K), K)
    rep.details["sl_q_degree"] = K
    rep.details["sl_f"] = [str(x) for x in closed]
    bad = [(f"q^{k}", a, b) for k, (a, b) in enumerate(zip(shifted, closed)) if a != b]
    bad += [(f"q^{k} (closed gl)", a, b) for k, (a, b) in enumerate(zip(via_gl, closed)) if a != b]
    rep.add_mismatches(bad)


def extract_Y(family: str, n: int, order: int, workers: int = 1) -> SparseSeries:
    """(R^ e^rho)^-1 times the translation sum; raises SupportViolation off the invariant span."""
    rs = resolve_family(family, n)
    Y = div_by_unit(translation_sum(rs, order, workers), rhat_rho(rs, order))
    bad = invariant_span_violations(Y)
    if bad:
        raise SupportViolation(bad)
    return Y


def extract_Y_report(family: str, n: int, order: int, workers: int = 1) -> VerificationReport:
    rs = resolve_family(family, n)
    rep = VerificationReport("extract_Y", _family_label(family, rs), n, order)
    with _Timer() as t:
        try:
            Y = extract_Y(family, n, order, workers)
        except SupportViolation as exc:
            rep.add_mismatches((w, "support", "0") for w in exc.weights)
        else:
            _record_compare(rep, Y, f_closed_form(rs, order))
            if rs.family == GL:
                for w, c in support_weights(Y):
                    k, m = -w.imag, w.eps2[0] // 2
                    if abs(m) > k:
                        rep.add_mismatches([(w, c, "|m|<=k")])
            else:
                rep.details["q_coefficients"] = [str(c) for c in q_coefficients(Y)]
            if family == "sl":
                _sl_details(rs, order, rep, workers)
    rep.elapsed = t.elapsed
    return rep


def check_support_isotropy(family: str, n: int, order: int, workers: int = 1) -> VerificationReport:
    rs = resolve_family(family, n)
    rep = VerificationReport("isotropy", _family_label(family, rs), n, order)
    with _Timer() as t:
        target = form4(rs.rho, rs.rho)
        rep.details["rho_norm"] = str(rs.form(rs.rho, rs.rho))
        for label, s in (("Rhat", rhat_rho(rs, order)), ("FT'", translation_sum(rs, order, workers))):
            bad = [(w, label, str(form4(w, w) / 4)) for w, _ in support_weights(s) if form4(w, w) != target]
            rep.add_mismatches(bad)
            if label == "Rhat":
                rep.lhs_terms = len(s)
            else:
                rep.rhs_terms = len(s)
    rep.elapsed = t.elapsed
    return rep


# --- finite and alternative forms -----------------------------------------

def s_product(rs: RootSystem) -> ProductExpr:
    """e^rho / prod_{beta in S} (1 + e^-beta)."""
    return ProductExpr(1, rs.rho, tuple(Factor(1, b, -1) for b in rs.iso_set))


def _weight_sum(ws) -> Weight:
    out = None
    for w in ws:
        out = w if out is None else out + w
    return out


def _half(w: Weight) -> Weight:
    return Weight(tuple(x // 2 for x in w.eps2), tuple(x // 2 for x in w.del2), w.imag)


def _simple_reflecting_roots(rs: RootSystem, group: str) -> list[Weight]:
    """Simple roots of the even block whose Weyl group is ``group``."""
    n, m = rs.n, rs.m
    if group == "W''":
        out = [rs.eps(i) - rs.eps(i + 1) for i in range(1, m)]
        if rs.family == D:
            out.append(rs.eps(m - 1) + rs.eps(m))
    else:
        out = [rs.del_(i) - rs.del_(i + 1) for i in range(1, n)]
        if rs.family == D:
            out.append(rs.del_(n, 2))
    return out


def _reflect(w: Weight, a: Weight) -> Weight:
    num, den = 2 * form4(w, a), form4(a, a)
    if num % den:
        raise ValueError("non-integral reflection")
    return w - a * (num // den)


def straighten(w: Weight, simple: Sequence[Weight]) -> tuple[int, Optional[Weight]]:
    """(sign, dominant representative) of the orbit of ``w``; representative None if singular."""
    sign = 1
    while True:
        for a in simple:
            # <w, a^vee> < 0 with the sign of (a, a) folded in
            if form4(w, a) * form4(a, a) < 0:
                w = _reflect(w, a)
                sign = -sign
                break
        else:
            break
    if any(form4(w, a) == 0 for a in simple):
        return sign, None
    return sign, w


def _dict_of(s: SparseSeries) -> dict:
    return {w: c for w, c in support_weights(s)}


def _full_degree(rs: RootSystem, p: ProductExpr) -> int:
    for f in p.factors:
        if f.r < 0:
            raise ValueError("not a polynomial")
    return sum(f.r * rs.height(f.gamma) for f in p.factors)


def polynomial_orbit_sum(rs: RootSystem, elements, p: ProductExpr) -> dict:
    """Exact sum_g sgn(g) g(p) for a Laurent polynomial p, as a weight -> coefficient dict."""
    items = [(g.sign, act(rs, g, p)) for g in elements]
    base = items[0][1].prefix
    for _, q in items[1:]:
        d = rs.coords(q.prefix - base)
        base = base + rs.from_coords(max(0, x) for x in d)
    order = max(rs.height(base - q.prefix) + _full_degree(rs, q) for _, q in items)
    return _dict_of(window_sum(rs, items, base, order))


def finite_denominator_check(family: str, n: int, group: str = "W''", explicit_limit: int = 400_000) -> VerificationReport:
    """R e^rho = sum over ``group`` of w(e^rho / prod_S (1 + e^-beta)).

    Multiplying by the W-invariant R1 e^rho1 turns this into the polynomial
    identity R0 e^rho0 = sum_w sgn(w) w(e^rho0 prod_{odd+ minus S} (1 + e^-beta)),
    whose full support is compared exactly: by straightening every term of
    the right-hand polynomial into the dominant chamber (both sides are
    anti-invariant), and by the explicit orbit sum when that is affordable.
    The original quotient form is also compared on a height window.
    """
    rs = resolve_family(family, n)
    odd_sum = _weight_sum(rs.pos_odd)
    order = 2 * rs.height(odd_sum)
    rep = VerificationReport("finite_denominator", _family_label(family, rs), n, order)
    with _Timer() as t:
        elements = enumerate_finite_group(rs, group)
        rho0 = _half(_weight_sum(rs.pos_even)) if rs.pos_even else rs.zero()
        S = set(rs.iso_set)
        poly = ProductExpr(1, rho0, tuple(Factor(1, b, 1) for b in rs.pos_odd if b not in S))
        P = expand(rs, poly, _full_degree(rs, poly))
        R0 = ProductExpr(1, rho0, tuple(Factor(-1, a, 1) for a in rs.pos_even))
        L = _dict_of(expand(rs, R0, _full_degree(rs, R0)))
        rep.lhs_terms, rep.rhs_terms = len(L), len(P)
        simple = _simple_reflecting_roots(rs, group)

        # the Weyl denominator side must itself be anti-invariant
        bad = [(w, c, str(-L.get(_reflect(w, a), 0))) for w, c in L.items() for a in simple if L.get(_reflect(w, a), 0) != -c]
        dominant: dict = {}
        for w, c in support_weights(P):
            sign, d = straighten(w, simple)
            if d is not None:
                dominant[d] = dominant.get(d, 0) + sign * c
        for w in sorted(set(dominant) | {w for w in L if straighten(w, simple) == (1, w)}):
            if dominant.get(w, 0) != L.get(w, 0):
                bad.append((w, L.get(w, 0), dominant.get(w, 0)))
        rep.details.update(group=group, summands=len(elements), polynomial_terms=len(P))

        if len(elements) * len(P) <= explicit_limit:
            A = polynomial_orbit_sum(rs, elements, poly)
            A = {w: c for w, c in A.items() if c}
            for w in sorted(set(A) | set(L)):
                if A.get(w, 0) != L.get(w, 0):
                    bad.append((w, L.get(w, 0), A.get(w, 0)))
            rep.details["explicit_orbit_sum"] = True
        else:
            rep.details["explicit_orbit_sum"] = False

        window = min(order, SERIES_WINDOW)
        lhs = expand(rs, build_R(rs).shifted(rs.rho), window)
        rhs = fsum(rs, elements, s_product(rs), window, base=rs.rho)
        _, mm = compare(lhs, rhs)
        rep.details["series_window"] = window
        bad += mm
        rep.add_mismatches(bad)
    rep.elapsed = t.elapsed
    return rep


SERIES_WINDOW = 12


def _box(rs: RootSystem, radius: int) -> list[tuple[int, ...]]:
    vecs = iproduct(range(-radius, radius + 1), repeat=rs.n)
    if rs.family == GL:
        return sorted(v for v in vecs if sum(v) == 0)
    return sorted(vecs)


def affine_w_prime_items(rs: RootSystem, p: ProductExpr, order: int) -> list[tuple[int, ProductExpr]]:
    """Signed images g(p) over W' x T' whose leading q-degree is at most ``order``.

    The translation box max|mu_i| <= order is checked a posteriori: every
    element on the next shell must have leading q-degree beyond ``order``.
    """
    finite = enumerate_finite_group(rs, "W'")
    ref = rs.rho.imag
    items = []
    for k in _box(rs, order):
        t = translation(rs, k)
        for y in finite:
            g = compose(t, y)
            q = act(rs, g, p)
            if ref - q.prefix.imag <= order:
                items.append((g.sign, q))
    for k in _box(rs, order + 1):
        if max(abs(x) for x in k) <= order:
            continue
        t = translation(rs, k)
        for y in finite:
            q = act(rs, compose(t, y), p)
            if ref - q.prefix.imag <= order:
                raise ShellError(f"element t_{k} y on the boundary shell reaches q-degree {ref - q.prefix.imag}")
    return items


def lemma_form_check(family: str, n: int, order: int, workers: int = 1) -> VerificationReport:
    """Translation sum of R e^rho against the W'^-alternating sum of R0'' e^rho / R1."""
    rs = resolve_family(family, n)
    rep = VerificationReport("lemma_form", _family_label(family, rs), n, order)
    with _Timer() as t:
        lhs = translation_sum(rs, order, workers)
        p = build_R0pp(rs).times(inverse(build_R1(rs))).shifted(rs.rho)
        items = affine_w_prime_items(rs, p, order)
        rep.details["summands"] = len(items)
        rhs = window_sum(rs, items, rs.rho, order, workers)
        _record_compare(rep, lhs, rhs)
    rep.elapsed = t.elapsed
    return rep


def slnn_alternative_form(n: int, order: int, workers: int = 1) -> VerificationReport:
    """f(q, e^str) * R^ e^rho = sum over W'^ of w(e^rho / prod_S (1 + e^-beta)), gl(n|n) only."""
    rs = resolve_family("gl", n)
    rep = VerificationReport("slnn_form", "gl", n, order)
    with _Timer() as t:
        items = affine_w_prime_items(rs, s_product(rs), order)
        rep.details["summands"] = len(items)
        rhs = window_sum(rs, items, rs.rho, order, workers)
        lhs = f_closed_form(rs, order) * rhat_rho(rs, order)
        _record_compare(rep, lhs, rhs)
    rep.elapsed = t.elapsed
    return rep


def _translates_S_positive(rs: RootSystem, mu: Weight) -> bool:
    g = translation(rs, mu)
    from .weyl import act_weight

    for b in rs.iso_set:
        c = rs.coords(act_weight(rs, g, b))
        if c is None or min(c) < 0:
            return False
    return True


def d_illdefined_probe(n: int, kmax: int) -> VerificationReport:
    """Witnesses that the S-form sums and the T'' sum do not converge for D(n+1|n)."""
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    rs = resolve_family("d", n)
    rep = VerificationReport("d_illdefined_probe", "d", n, kmax, informational=True)
    with _Timer() as t:
        p = ProductExpr(1, rs.zero(), tuple(Factor(1, b, -1) for b in rs.iso_set))
        zero = rs.zero()

        def witness(mu: Weight) -> dict:
            q = act(rs, translation(rs, mu), p)
            pos = _translates_S_positive(rs, mu)
            const = None
            if pos:
                const = expand(rs, q, 0).coeff(zero) if q.prefix == zero else 0
            return {"mu": mu.to_json(), "tS_positive": pos, "constant_term": const}

        dels, eps_pos, eps_neg, v_zero = [], [], [], []
        for k in range(1, kmax + 1):
            dels.append(witness(Weight.make((0,) * rs.m, (k,) * rs.n)))
            eps_pos.append(witness(Weight.make((2 * k,) * rs.m, (0,) * rs.n)))
            eps_neg.append(witness(Weight.make((-2 * k,) * rs.m, (0,) * rs.n)))
            mu = rs.eps(1, -2 * k)
            v = compute_v(rs, mu)
            v_zero.append({"mu": mu.to_json(), "v": v.to_json(), "v_is_zero": v.is_zero()})
        rep.details = {
            "del_translations": dels,
            "eps_translations_positive": eps_pos,
            "eps_translations_negative": eps_neg,
            "v_of_minus_2k_eps1": v_zero,
            "tS_witnesses": sum(w["tS_positive"] and w["constant_term"] == 1 for w in dels + eps_pos),
            "v_witnesses": sum(w["v_is_zero"] for w in v_zero),
        }
    rep.elapsed = t.elapsed
    return rep


# --- Jacobi eight squares ---------------------------------------------------

def theta_series(M: int) -> list[int]:
    out = [0] * (M + 1)
    j = 0
    while j * j <= M:
        out[j * j] += 1 if j == 0 else 2
        j += 1
    return out


def jacobi_divisor_side(M: int) -> list[int]:
    out = [0] * (M + 1)
    out[0] = 1
    for j in range(1, M + 1):
        for k in range(1, M // j + 1):
            out[j * k] += 16 * (-1) ** ((j + 1) * k) * k ** 3
    return out


def r8_convolution(M: int) -> list[int]:
    """r_8(0..M) by convolving the one-square counting sequence eight times."""
    one = theta_series(M)
    out = [1] + [0] * M
    for _ in range(8):
        out = q_mul(out, one, M)
    return out


def r8_direct(M: int) -> list[int]:
    """r_8(0..M) by enumerating integer vectors in the ball of radius sqrt(M)."""
    counts = [0] * (M + 1)
    bound = int(M ** 0.5)
    vals = range(-bound, bound + 1)

    def rec(depth: int, total: int) -> None:
        if depth == 8:
            counts[total] += 1
            return
        for x in vals:
            t2 = total + x * x
            if t2 <= M:
                rec(depth + 1, t2)

    rec(0, 0)
    return counts


def jacobi_check(M: int) -> VerificationReport:
    if M < 1:
        raise ValueError("M must be at least 1")
    rep = VerificationReport("jacobi", "-", 0, M)
    with _Timer() as t:
        th = theta_series(M)
        a = q_mul(th, th, M)
        a = q_mul(a, a, M)
        a = q_mul(a, a, M)
        b = jacobi_divisor_side(M)
        c = r8_convolution(M)
        rep.lhs_terms = sum(1 for x in a if x)
        rep.rhs_terms = sum(1 for x in b if x)
        bad = []
        for m in range(M + 1):
            if not a[m] == b[m] == c[m]:
                bad.append((f"q^{m}", a[m], f"{b[m]}|{c[m]}"))
        rep.add_mismatches(bad)
        rep.details["head"] = [str(x) for x in a[:6]]
    rep.elapsed = t.elapsed
    return rep


# --- classical Weyl denominators --------------------------------------------

def verify_classical_weyl(rs: RootSystem, which: str) -> VerificationReport:
    """R0 e^rho0 = sum_w sgn(w) e^(w rho0) for the del-block (W') or eps-block (W'') even roots."""
    if which in ("prime", "W'", "Δ'"):
        roots, group, block = rs.pos_even_prime, "W'", "prime"
        num = build_R0p(rs)
    elif which in ("doubleprime", "W''", "Δ''"):
        roots, group, block = rs.pos_even_doubleprime, "W''", "doubleprime"
        num = build_R0pp(rs)
    else:
        raise ValueError(f"unknown block {which!r}")
    total = rs.zero()
    for a in roots:
        total = total + a
    rho0 = Weight(tuple(x // 2 for x in total.eps2), tuple(x // 2 for x in total.del2), 0)
    order = rs.height(total) if roots else 0
    rep = VerificationReport("classical_weyl", rs.family, rs.n, order)
    with _Timer() as t:
        elements = enumerate_finite_group(rs, group)
        lhs = expand(rs, num.shifted(rho0), order)
        rhs = fsum(rs, elements, monomial(rs, rho0), order, base=rho0)
        rep.details.update(block=block, type=classical_type(rs, block), summands=len(elements))
        _record_compare(rep, lhs, rhs)
    rep.elapsed = t.elapsed
    return rep


def classical_type(rs: RootSystem, block: str) -> str:
    if rs.family == GL:
        return f"A{rs.n - 1}"
    return f"C{rs.n}" if block == "prime" else f"D{rs.n + 1}"
