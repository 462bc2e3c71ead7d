"""Hodge-integral extraction from simple Hurwitz numbers and the
operator calculus tying the two generating series together.

Conventions pinned here (each enforced by tests against displayed values):

* a(d, d+k) are the expansion constants of the alternating sum of
  1/(1 - b psi): psi^d + sum_k a_{d,d+k} psi^{d+k}; they are integers.

* The change of variables sends p_b to
  sum_{d >= b-1} u^{-(3b + 2d + 1)} (-1)^{d-b+1}/((d-b+1)! b^{b-1}) t_d
  with u^3 = beta and z = u^2.  On the stable simple series every retained
  u exponent is even and nonnegative; the z^k slice carries the weight-k
  lambda-class data.

* The regrouping operator is L = 1 + z L_1 + z^2 L_2 + ... with first-order
  parts sum_n a_{n,n+k} t_n d/dt_{n+k} (index-lowering).  The transformed
  stable series equals L applied to sum_k (-z)^k F^{(k)}.  L = exp(l) for a
  z-graded first-order l with the same lowering shape; the triangular
  relations determining l's coefficients alpha are direction-free.
"""

from __future__ import annotations

import threading
from itertools import product
from math import comb, factorial

from .series import Series, Rat, FAMILY_P, FAMILY_TQ
from .diffops import TOp, ZOp
from .hurwitz import (HurwitzQuery, SIMPLE, hurwitz_frobenius, h_simple_series,
                      h_unst_simple, _lagrange_fit_1d)

_cache = {}
_cache_lock = threading.Lock()


def _cached(key, build):
    got = _cache.get(key)
    if got is None:
        got = build()
        with _cache_lock:
            _cache[key] = got
    return got


# -- expansion constants --------------------------------------------------------


def a_coeff(d, k):
    """Coefficient of psi^{d+k} in the alternating sum; a(d, 0) = 1."""
    assert d >= 0 and k >= 0
    acc = Rat(0)
    for b in range(1, d + 2):
        acc += Rat((-1) ** (d - b + 1) * b ** (d + k),
                   factorial(d - b + 1) * factorial(b - 1))
    return acc


# -- the appendix change of variables ---------------------------------------------


def elsv_chvar_coeff(b, d):
    """Coefficient of t_d in the image of p_b (u power handled separately)."""
    if d < b - 1:
        return Rat(0)
    return Rat((-1) ** (d - b + 1), factorial(d - b + 1) * b ** (b - 1))


class LaurentU:
    """Transform image {(u_exponent, t_monomial): coeff}; exact where
    u + 5 sum(d) + 4 n <= 3 * aux_cap(input) and weight <= w_cap."""

    __slots__ = ("terms", "w_cap", "m_cap")

    def __init__(self, terms, w_cap, m_cap):
        self.terms = {k: v for k, v in terms.items() if v}
        self.w_cap = w_cap
        self.m_cap = m_cap

    def min_u(self):
        return min((j for j, _ in self.terms), default=0)

    def z_slice(self, k):
        """The u^{2k} slice as a t-series; weight range depends on k."""
        terms = {}
        wmax = 0
        for (u, vm), c in self.terms.items():
            if u == 2 * k:
                terms[(0, vm)] = c
        w = self._slice_weight_cap(2 * k)
        return Series(FAMILY_TQ, w, 0, terms)

    def _slice_weight_cap(self, u):
        # largest W such that every monomial of weight <= W is exact:
        # worst case all-t_0 monomial (sum d = 0, n = W)
        w = self.w_cap
        while w > 0 and not self._mono_region_ok(u, w):
            w -= 1
        return w

    def _mono_region_ok(self, u, w):
        # check the staircase bound over monomial shapes of weight w:
        # 5 sum(d) + 4 n with sum (d+1) e = w; maximum at n as small as
        # possible (single t_{w-1}: 5(w-1) + 4) vs all-t_0 (4w)
        worst = max(5 * (w - 1) + 4, 4 * w)
        return u + worst <= 3 * self.m_cap


def transform_p_to_tu(series, w_cap=None):
    """Exact transform of a family-P series into the (u, t) Laurent picture."""
    assert series.family == FAMILY_P
    w_eff = series.cap_weight if w_cap is None else min(w_cap, series.cap_weight)
    m_cap = series.cap_aux
    out = {}
    for (m, vm), c in series.terms.items():
        bs = []
        for b, e in vm:
            bs.extend([b] * e)
        base_u = 3 * m

        def assign(idx, budget, coeff, uexp, mono):
            if idx == len(bs):
                sum_d = sum(d * e for d, e in mono.items())
                n = sum(mono.values())
                if uexp + 5 * sum_d + 4 * n > 3 * m_cap:
                    return
                key = (uexp, tuple(sorted(mono.items())))
                out[key] = out.get(key, Rat(0)) + coeff
                return
            b = bs[idx]
            d = b - 1
            while (d + 1) <= budget:
                cc = elsv_chvar_coeff(b, d)
                mono[d] = mono.get(d, 0) + 1
                assign(idx + 1, budget - (d + 1), coeff * cc,
                       uexp - (3 * b + 2 * d + 1), mono)
                mono[d] -= 1
                if not mono[d]:
                    del mono[d]
                d += 1

        assign(0, w_eff, c, base_u, {})
    return LaurentU(out, w_eff, m_cap)


def chvar_elsv(series, w_cap=None):
    """Transform and verify nonnegative, even u exponents on the exact range."""
    img = transform_p_to_tu(series, w_cap)
    bad = [(k, v) for k, v in img.terms.items() if k[0] < 0 or k[0] % 2]
    if bad:
        raise ValueError("transform outside the guaranteed class, e.g. %r" % (bad[0],))
    return img


def derivative_transform_elsv(b):
    """d/dp_b as sum over d < b of coeff u^{3b+2d+1} d/dt_d;
    returns [(d, u_exponent, coeff)]."""
    assert b >= 1
    return [(d, 3 * b + 2 * d + 1, Rat(b ** (b - 1), factorial(b - 1 - d)))
            for d in range(b)]


def derivative_inverse_check(nmax):
    """The derivative transform is the exact inverse of the change of
    variables: sum_d D[b][d] C[d][b'] = delta_{b b'} (u powers cancel)."""
    for b in range(1, nmax + 1):
        for bp in range(1, nmax + 1):
            acc = Rat(0)
            for d, _, coeff in derivative_transform_elsv(b):
                acc += coeff * elsv_chvar_coeff(bp, d)
            if acc != (1 if b == bp else 0):
                return False
    return True


# -- stable simple series and moduli generating functions -------------------------


def h_simple_stable(W, M):
    def build():
        return h_simple_series(W, M) - h_unst_simple(W, M)
    return _cached(("H_st", W, M), build)


def moduli_caps_for(W, kmax):
    """Auxiliary cap needed so the z^k slices are exact to weight W."""
    return (2 * kmax + max(5 * (W - 1) + 4, 4 * W) + 2) // 3 + 1


def transformed_stable(W, M, w_cap):
    def build():
        return chvar_elsv(h_simple_stable(W, M), w_cap)
    return _cached(("LbF", W, M, w_cap), build)


def f_moduli(k, W, M=None):
    """F^{(k)} extracted from the transformed stable series via
    F^0 = slice_0, F^1 = L_1 F^0 - slice_1, F^2 = slice_2 - L_2 F^0 + L_1 F^1."""
    assert 0 <= k <= 2
    if M is None:
        M = moduli_caps_for(W, k)

    def build():
        img = transformed_stable(W, M, W)
        index_cap = W
        if k == 0:
            return img.z_slice(0)
        f0 = f_moduli(0, W, M)
        l1 = build_L_grade(1, index_cap)
        if k == 1:
            return l1.apply(f0) - img.z_slice(1)
        f1 = f_moduli(1, W, M)
        l2 = build_L_grade(2, index_cap)
        return img.z_slice(2) - l2.apply(f0) + l1.apply(f1)
    return _cached(("F", k, W, M), build)


# -- the regrouping operator L and its logarithm l --------------------------------


def _compositions(k):
    if k == 0:
        return [()]
    out = []
    for first in range(1, k + 1):
        for rest in _compositions(k - first):
            out.append((first,) + rest)
    return out


def build_L_grade(k, index_cap):
    """z^k part of L: sum over ordered compositions (k_1..k_r) of k of
    (1/r!) prod a_{n_i, n_i+k_i} t_{n_1}..t_{n_r} d/dt_{n_1+k_1}..d/dt_{n_r+k_r}."""
    def build():
        terms = {}
        for compn in _compositions(k):
            r = len(compn)
            if r == 0:
                continue
            base = Rat(1, factorial(r))
            for ns in product(range(index_cap + 1), repeat=r):
                if any(n + ki > index_cap for n, ki in zip(ns, compn)):
                    continue
                coeff = base
                for n, ki in zip(ns, compn):
                    coeff *= a_coeff(n, ki)
                tm = tuple(sorted(ns))
                dm = tuple(sorted(n + ki for n, ki in zip(ns, compn)))
                key = (tm, dm)
                terms[key] = terms.get(key, Rat(0)) + coeff
        return TOp(terms)
    return _cached(("L", k, index_cap), build)


def build_L(zmax, index_cap):
    return ZOp({0: TOp.single((), (), 1),
                **{k: build_L_grade(k, index_cap) for k in range(1, zmax + 1)}})


def solve_l(zmax, index_cap):
    """The z-graded first-order l with exp(l) = L, solved triangularly."""
    def build():
        grades = {}
        for k in range(1, zmax + 1):
            partial = ZOp(dict(grades))
            ek = partial.exp(k, index_cap).grade(k) if grades else TOp.zero()
            terms = {}
            for n in range(index_cap - k + 1):
                alpha = a_coeff(n, k) - ek.terms.get(((n,), (n + k,)), Rat(0))
                if alpha:
                    terms[((n,), (n + k,))] = alpha
            grades[k] = TOp(terms)
        return ZOp(grades)
    return _cached(("l", zmax, index_cap), build)


def alpha_coeff(n, k, index_cap=None):
    cap = index_cap if index_cap is not None else n + k + 2
    l = solve_l(k, max(cap, n + k))
    return l.grade(k).terms.get(((n,), (n + k,)), Rat(0))


def exp_l_equals_L_check(zmax, index_cap):
    """exp(l) reproduces every coefficient of L through z^zmax on terms with
    all indices within the cap (lowering chains never leave that range)."""
    l = solve_l(zmax, index_cap)
    expl = l.exp(zmax, index_cap)
    for k in range(zmax + 1):
        want = TOp.single((), (), 1) if k == 0 else build_L_grade(k, index_cap)
        if expl.grade(k) != want:
            return False
    return True


LISTED_CK = [Rat(1), Rat(-1, 2), Rat(1, 2), Rat(-2, 3), Rat(11, 12), Rat(-3, 4),
             Rat(-11, 6), Rat(29, 4), Rat(493, 12), Rat(-2711, 6),
             Rat(-12406, 15), Rat(2636317, 60)]


def ck_report(kmax, nmax=4):
    """For each k, test both candidate binomial normalizations of
    alpha_{n,n+k} for constancy in n.  Returns
    {k: {"lowering": value-or-None, "transposed": value-or-None}} where the
    value is the constant ratio when one exists."""
    index_cap = nmax + kmax + 2
    l = solve_l(kmax, index_cap)
    out = {}
    for k in range(1, kmax + 1):
        grade = l.grade(k)
        ratios_a = []
        ratios_b = []
        for n in range(nmax + 1):
            alpha = grade.terms.get(((n,), (n + k,)), Rat(0))
            ratios_a.append(alpha / comb(n + k + 1, k + 1))
            ratios_b.append(alpha / comb(n + 1, k + 1) if comb(n + 1, k + 1) else None)
        const_a = ratios_a[0] if all(r == ratios_a[0] for r in ratios_a) else None
        valid_b = [r for r in ratios_b if r is not None]
        const_b = valid_b[0] if valid_b and all(r == valid_b[0] for r in valid_b) \
            and len(valid_b) == len(ratios_b) else None
        out[k] = {"lowering": const_a, "transposed": const_b}
    return out


# -- ELSV linear solve -------------------------------------------------------------


def elsv_scaled_value(g, bs):
    """h_{g;b} / (m! prod b_i^{b_i}/b_i!), the polynomial part of the count."""
    q = HurwitzQuery(SIMPLE, g, bs)
    h = hurwitz_frobenius(q)
    scale = Rat(factorial(q.branch_points))
    for b in bs:
        scale *= Rat(b ** b, factorial(b))
    return h / scale


def hurwitz_to_hodge(g, n, max_k=None):
    """Solve the grid interpolation for all brackets <prod tau_{d_i} lambda_k>
    with the given (g, n); returns {(k, sorted d-tuple): value}.

    The scaled counts are polynomials of per-variable degree 3g-3+n; the
    grid is b_i in 1..3g-2+n with the point (3g-2+n+1, ..) held out and
    verified.  Off-grading coefficients must vanish and the solve must be
    symmetric; both are asserted.
    """
    if max_k is None:
        max_k = g
    dim = 3 * g - 3 + n
    assert dim >= 0, "unstable (g, n)"
    B = dim + 1
    axes = list(range(1, B + 1))

    def fit_rec(prefix, depth):
        if depth == n:
            return {(): elsv_scaled_value(g, tuple(prefix))}
        per_x = []
        for x in axes:
            per_x.append((Rat(x), fit_rec(prefix + [x], depth + 1)))
        keys = set()
        for _, sub in per_x:
            keys.update(sub)
        out = {}
        for key in keys:
            pts = [(x, sub.get(key, Rat(0))) for x, sub in per_x]
            for e, c in enumerate(_lagrange_fit_1d(pts)):
                if c:
                    out[(e,) + key] = c
        return out

    coeffs = fit_rec([], 0)
    table = {}
    for exps, c in coeffs.items():
        k = dim - sum(exps)
        if k < 0 or k > g:
            raise ValueError("off-grading coefficient at %r: %r" % (exps, c))
        key = (k, tuple(sorted(exps)))
        prev = table.get(key)
        value = c * Rat((-1) ** k)
        if prev is not None and prev != value:
            raise ValueError("asymmetric solve at %r" % (key,))
        table[key] = value
    # held-out validation
    probe = tuple([B + 1] * n)
    predicted = Rat(0)
    for exps, c in coeffs.items():
        term = c
        for x, e in zip(probe, exps):
            term *= Rat(x) ** e
        predicted += term
    if predicted != elsv_scaled_value(g, probe):
        raise ValueError("held-out grid point failed")
    if max_k < g:
        table = {key: v for key, v in table.items() if key[0] <= max_k}
    return table


# -- the transformed KP equation and its conjugation --------------------------------


def khat_22():
    """KP_{2,2} rewritten on the stable part: terms {(beta_exp, etas): coeff}
    where etas is a sorted tuple of p-derivative multi-indices.

    The second derivatives of the unstable part are constants
    u(a,b) = beta^{a+b} a^a b^b / ((a+b) a! b!); the pure-constant part
    cancels identically and is asserted to."""
    from .hierarchy import kp_form

    def ud(a, b):
        return (a + b, Rat(a ** a * b ** b, (a + b) * factorial(a) * factorial(b)))

    out = {}
    for etas, c in kp_form(2, 2).items():
        # expand prod (S_eta + u_eta) over subsets; the unstable part is
        # quadratic, so u_eta vanishes for third and higher derivatives
        choices = []
        for eta in etas:
            assert len(eta) >= 2, "first-derivative terms are not supported"
            choices.append((eta, ud(eta[0], eta[1]) if len(eta) == 2 else (0, Rat(0))))
        for mask in product((0, 1), repeat=len(etas)):
            beta = 0
            coeff = c
            rest = []
            for bit, (eta, (bexp, uval)) in zip(mask, choices):
                if bit:
                    beta += bexp
                    coeff *= uval
                else:
                    rest.append(eta)
            if not coeff:
                continue
            key = (beta, tuple(sorted(rest)))
            out[key] = out.get(key, Rat(0)) + coeff
    out = {k: v for k, v in out.items() if v}
    # no surviving pure-constant term
    assert not any(not etas for (_, etas) in out)
    return out


def kpbar_22():
    """khat transformed to the t picture and normalized by the leading z
    power: {(z, t_etas): coeff}.  Matches the displayed form."""
    khat = khat_22()
    raw = {}
    for (bexp, etas), c in khat.items():
        # expand each p-derivative via the derivative transform;
        # beta^bexp carries u^{3 bexp}
        acc = [(3 * bexp, c, [])]
        for eta in etas:
            nxt = []
            for uexp, coeff, tetas in acc:
                for combo in product(*[derivative_transform_elsv(b) for b in eta]):
                    du = sum(x[1] for x in combo)
                    dc = coeff
                    for x in combo:
                        dc *= x[2]
                    teta = tuple(sorted(x[0] for x in combo))
                    nxt.append((uexp + du, dc, tetas + [teta]))
            acc = nxt
        for uexp, coeff, tetas in acc:
            key = (uexp, tuple(sorted(tetas)))
            raw[key] = raw.get(key, Rat(0)) + coeff
    raw = {k: v for k, v in raw.items() if v}
    base = min(u for u, _ in raw)
    assert all((u - base) % 2 == 0 for u, _ in raw)
    return {((u - base) // 2, etas): c for (u, etas), c in raw.items()}


def conjugated_equation(i, j, k, index_cap=12):
    """z^k coefficient of the conjugated transformed KP equation, as
    {multiset of (slice, t_eta): coeff} acting on the moduli series
    F^{(0)}, ..., F^{(k)}.

    Implemented for (i, j) = (2, 2); other equations contain first-order
    derivative terms whose unstable corrections are not polynomial
    operators."""
    if (i, j) != (2, 2):
        raise NotImplementedError(
            "conjugated equations are provided for (2,2) only; "
            "first-derivative terms of higher equations need non-polynomial "
            "unstable corrections")

    def build():
        eq = kpbar_22()
        l = solve_l(max(k, 1), index_cap)
        # conjugate each derivative monomial once
        qhats = {}
        for (_, etas) in eq:
            for eta in etas:
                if eta in qhats:
                    continue
                z0 = ZOp({0: TOp.single((), eta, 1)})
                conj = z0.conjugate_by_exp(l, k, index_cap)
                grades = {}
                for zz, top in conj.grades.items():
                    terms = {}
                    for (tm, dm), c in top.terms.items():
                        assert tm == (), "conjugation left a t coefficient"
                        terms[dm] = terms.get(dm, Rat(0)) + c
                    grades[zz] = terms
                qhats[eta] = grades
        out = {}

        def distribute(etas, idx, zleft, factors, coeff):
            if idx == len(etas):
                if zleft == 0:
                    key = tuple(sorted(factors))
                    out[key] = out.get(key, Rat(0)) + coeff
                return
            eta = etas[idx]
            grades = qhats[eta]
            for zz, terms in grades.items():
                if zz > zleft:
                    continue
                for slice_k in range(zleft - zz + 1):
                    sign = Rat((-1) ** slice_k)
                    for dm, c in terms.items():
                        distribute(etas, idx + 1, zleft - zz - slice_k,
                                   factors + [(slice_k, dm)], coeff * c * sign)

        for (z0, etas), c in eq.items():
            if z0 > k:
                continue
            distribute(etas, 0, k - z0, [], c)
        return {key: v for key, v in out.items() if v}
    return _cached(("conj", i, j, k, index_cap), build)


def eval_moduli_poly(eq, fs):
    """Evaluate {multiset of (slice, eta): coeff} on series fs[slice]."""
    some = next(iter(fs.values()))
    out = Series.zero(some.family, some.cap_weight, some.cap_aux)
    for key, c in eq.items():
        piece = None
        for slice_k, eta in key:
            part = fs[slice_k].partial_multi(eta)
            piece = part if piece is None else piece * part
        if piece is None:
            piece = Series.constant(some.family, some.cap_weight, some.cap_aux, 1)
        out = out + piece * c
    return out


# -- displayed hierarchy equations on the moduli series ------------------------------

# Each equation is {z: {multiset of bold-F derivative etas: coeff}} with the
# convention lhs - rhs = 0; eta indices are t indices.

KDV_EQUATIONS = {
    "F01": {
        0: {((0, 1),): Rat(1),
            ((0, 0), (0, 0)): Rat(-1, 2),
            ((0, 0, 0, 0),): Rat(-1, 12)},
        1: {((0, 0, 0), (0, 0, 0)): Rat(1, 24),
            ((0,) * 6,): Rat(1, 720)},
        2: {((0, 0, 0), (0, 0, 0, 0, 0)): Rat(-1, 720),
            ((0, 0, 0, 0), (0, 0, 0, 0)): Rat(-1, 360),
            ((0,) * 8,): Rat(-1, 30240)},
    },
    "F02": {
        0: {((0, 2),): Rat(1),
            ((0, 0), (0, 0), (0, 0)): Rat(-1, 6),
            ((0, 0), (0, 0, 0, 0)): Rat(-1, 12),
            ((0, 0, 0), (0, 0, 0)): Rat(-1, 24),
            ((0,) * 6,): Rat(-1, 240)},
        1: {((0, 0), (0, 0, 0), (0, 0, 0)): Rat(1, 24),
            ((0, 0), (0,) * 6): Rat(1, 720),
            ((0, 0, 0), (0, 0, 0, 0, 0)): Rat(7, 720),
            ((0, 0, 0, 0), (0, 0, 0, 0)): Rat(1, 180),
            ((0,) * 8,): Rat(1, 7560)},
    },
    "F11": {
        0: {((1, 1),): Rat(1),
            ((0, 0), (0, 0), (0, 0)): Rat(-1, 3),
            ((0, 0), (0, 0, 0, 0)): Rat(-1, 6),
            ((0, 0, 0), (0, 0, 0)): Rat(-1, 24),
            ((0,) * 6,): Rat(-1, 144)},
        1: {((0, 0), (0, 0, 0), (0, 0, 0)): Rat(1, 12),
            ((0, 0), (0,) * 6): Rat(1, 360),
            ((0, 0, 0), (0, 0, 0, 0, 0)): Rat(13, 720),
            ((0, 0, 0, 0), (0, 0, 0, 0)): Rat(1, 120),
            ((0,) * 8,): Rat(1, 4320)},
    },
    "F03": {
        0: {((0, 3),): Rat(1),
            ((0, 0), (0, 0), (0, 0), (0, 0)): Rat(-1, 24),
            ((0, 0), (0, 0), (0, 0, 0, 0)): Rat(-1, 24),
            ((0, 0), (0, 0, 0), (0, 0, 0)): Rat(-1, 24),
            ((0, 0), (0,) * 6): Rat(-1, 240),
            ((0, 0, 0), (0, 0, 0, 0, 0)): Rat(-1, 120),
            ((0, 0, 0, 0), (0, 0, 0, 0)): Rat(-1, 160),
            ((0,) * 8,): Rat(-1, 6720)},
    },
    "F12": {
        0: {((1, 2),): Rat(1),
            ((0, 0), (0, 0), (0, 0), (0, 0)): Rat(-1, 8),
            ((0, 0), (0, 0), (0, 0, 0, 0)): Rat(-1, 8),
            ((0, 0), (0, 0, 0), (0, 0, 0)): Rat(-1, 12),
            ((0, 0), (0,) * 6): Rat(-1, 90),
            ((0, 0, 0), (0, 0, 0, 0, 0)): Rat(-1, 60),
            ((0, 0, 0, 0), (0, 0, 0, 0)): Rat(-23, 1440),
            ((0,) * 8,): Rat(-1, 2880)},
    },
}


def kdv_zpart_as_moduli_poly(name, zk, kmax):
    """Expand the z^zk coefficient of a displayed equation over the bold
    series sum (-z)^k F^{(k)}: returns {multiset of (slice, eta): coeff}."""
    eq = KDV_EQUATIONS[name]
    out = {}
    for z0, terms in eq.items():
        if z0 > zk:
            continue
        for etas, c in terms.items():
            r = len(etas)

            def distribute(idx, zleft, factors, coeff):
                if idx == r:
                    if zleft == 0:
                        key = tuple(sorted(factors))
                        out[key] = out.get(key, Rat(0)) + coeff
                    return
                for slice_k in range(zleft + 1):
                    distribute(idx + 1, zleft - slice_k,
                               factors + [(slice_k, etas[idx])],
                               coeff * Rat((-1) ** slice_k))

            distribute(0, zk - z0, [], c)
    return {key: v for key, v in out.items()
            if v and all(s <= kmax for s, _ in key)}


def kdv_check(name, zk, fs):
    """Verify the z^zk part of a displayed equation on the given moduli
    series; returns the residual (zero on the exactly-checked region)."""
    poly = kdv_zpart_as_moduli_poly(name, zk, max(fs))
    return eval_moduli_poly(poly, fs)


# -- PDE route: solve bracket values from the equations alone ------------------------


class ModuliPDESolver:
    """Solve single-lambda bracket values from the conjugated equations plus
    the string and dilaton reductions, seeded only at <tau_0^3> = 1.

    Brackets with a tau_0 (and at least one other point) reduce by the
    string recursion, tau_1 by the dilaton factor 2g - 2 + n; the remaining
    primitives (all indices >= 2, and the one-pointed exceptional values)
    are extracted one at a time from coefficient equations of the z^0 and
    z^1 conjugated equations, each solved when it is the only unknown.
    """

    def __init__(self, kmax=1, weight_cap=10):
        self.kmax = kmax
        self.weight_cap = weight_cap
        self.solved = {}
        self._reduce_memo = {}
        self._ran = False

    # bracket -> (constant, {primitive: coeff})

    def reduce(self, k, ds):
        ds = tuple(sorted(ds))
        key = (k, ds)
        got = self._reduce_memo.get(key)
        if got is not None:
            return got
        out = self._reduce_raw(k, ds)
        self._reduce_memo[key] = out
        return out

    def _reduce_raw(self, k, ds):
        n = len(ds)
        total = sum(ds)
        if n == 0:
            return (Rat(0), {})
        if (k + total + 3 - n) % 3:
            return (Rat(0), {})
        g = (k + total + 3 - n) // 3
        if g < 0 or k > g:
            return (Rat(0), {})
        if n >= 2 and ds[0] == 0:
            rest = ds[1:]
            const = Rat(1) if (k == 0 and rest == (0, 0)) else Rat(0)
            lin = {}
            seen = set()
            for i, v in enumerate(rest):
                if v == 0 or v in seen:
                    continue
                seen.add(v)
                mult = rest.count(v)
                lowered = list(rest)
                lowered[i] = v - 1
                c2, l2 = self.reduce(k, tuple(lowered))
                const += mult * c2
                for kk, vv in l2.items():
                    lin[kk] = lin.get(kk, Rat(0)) + mult * vv
            return (const, {kk: vv for kk, vv in lin.items() if vv})
        if n >= 2 and 1 in ds:
            rest = list(ds)
            rest.remove(1)
            factor = Rat(2 * g - 2 + n - 1)
            c2, l2 = self.reduce(k, tuple(rest))
            return (factor * c2, {kk: factor * vv for kk, vv in l2.items()})
        prim = (k, ds)
        if prim in self.solved:
            return (self.solved[prim], {})
        return (Rat(0), {prim: Rat(1)})

    # coefficient of a monomial in d^eta F^{(k)}, as an affine value

    def _deriv_coeff(self, k, eta, mono):
        merged = dict(mono)
        for d in eta:
            merged[d] = merged.get(d, 0) + 1
        ds = []
        for d, e in merged.items():
            ds.extend([d] * e)
        const, lin = self.reduce(k, tuple(ds))
        denom = 1
        for e in mono.values():
            denom *= factorial(e)
        scale = Rat(1, denom)
        return (const * scale, {kk: vv * scale for kk, vv in lin.items()})

    @staticmethod
    def _affine_mul(a, b):
        (c1, l1), (c2, l2) = a, b
        if l1 and l2:
            return None
        const = c1 * c2
        lin = {}
        for kk, vv in l1.items():
            lin[kk] = lin.get(kk, Rat(0)) + vv * c2
        for kk, vv in l2.items():
            lin[kk] = lin.get(kk, Rat(0)) + vv * c1
        return (const, {kk: vv for kk, vv in lin.items() if vv})

    def _submonomials(self, mono):
        items = sorted(mono.items())
        out = [{}]
        for d, e in items:
            nxt = []
            for base in out:
                for take in range(e + 1):
                    cur = dict(base)
                    if take:
                        cur[d] = take
                    nxt.append(cur)
            out = nxt
        return out

    def equation_affine(self, eq, mono):
        """Affine form of the equation's coefficient at the monomial, or
        None when a product of two unknown-bearing factors appears."""
        total = (Rat(0), {})
        for key, c in eq.items():
            if len(key) == 1:
                slice_k, eta = key[0]
                term = self._deriv_coeff(slice_k, eta, mono)
                term = (term[0] * c, {kk: vv * c for kk, vv in term[1].items()})
            elif len(key) == 2:
                (k1, e1), (k2, e2) = key
                term = (Rat(0), {})
                for sub in self._submonomials(mono):
                    rest = dict(mono)
                    for d, e in sub.items():
                        rest[d] -= e
                        if not rest[d]:
                            del rest[d]
                    a = self._deriv_coeff(k1, e1, sub)
                    b = self._deriv_coeff(k2, e2, rest)
                    prod = self._affine_mul(a, b)
                    if prod is None:
                        return None
                    term = (term[0] + prod[0],
                            _merge_lin(term[1], prod[1], Rat(1)))
                term = (term[0] * c, {kk: vv * c for kk, vv in term[1].items()})
            else:
                raise NotImplementedError("equations with 3+ factors")
            total = (total[0] + term[0], _merge_lin(total[1], term[1], Rat(1)))
        return (total[0], {kk: vv for kk, vv in total[1].items() if vv})

    def run(self):
        if self._ran:
            return self
        from .pic import _monomials_up_to_weight
        for phase in range(self.kmax + 1):
            eq = conjugated_equation(2, 2, phase)
            progress = True
            while progress:
                progress = False
                for mono in _monomials_up_to_weight(self.weight_cap):
                    aff = self.equation_affine(eq, mono)
                    if aff is None:
                        continue
                    const, lin = aff
                    if len(lin) == 1:
                        (prim, coeff), = lin.items()
                        self.solved[prim] = -const / coeff
                        self._reduce_memo.clear()
                        progress = True
                    elif not lin and const:
                        raise ValueError("inconsistent equation at %r" % (mono,))
        self._ran = True
        return self

    def bracket(self, k, ds):
        self.run()
        const, lin = self.reduce(k, ds)
        if lin:
            raise ValueError("unsolved primitives %r" % (sorted(lin),))
        return const


def _merge_lin(a, b, scale):
    out = dict(a)
    for kk, vv in b.items():
        out[kk] = out.get(kk, Rat(0)) + vv * scale
    return out
