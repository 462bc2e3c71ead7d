"""Intersection brackets from one-part Hurwitz numbers, the triangular
change of variables into t-variables, and tau-function checks for the
bracket generating series.

The change of variables sends p_b to
    sum_{d >= b-1} q^{-(d+1)} (-1)^{d-b+1} / ((d-b+1)! (b-1)!) t_d
with q^2 = beta.  Applied to a series whose beta^m p-monomials are exactly
truncated to p-weight <= W and m <= M, the image coefficient at
(q^j, prod t_{d_i}) is exact iff wt = sum (d_i + 1) <= W and
(j + wt)/2 <= M (only the input slot m = (j + wt)/2 contributes, and the
contributing p-monomials have sum b_i <= wt).  Results are returned as a
Laurent object tracking that staircase.

The bracket itself is defined combinatorially:
    <tau_{d_1} ... tau_{d_n}> =
        sum over 1 <= b_i <= d_i + 1 of
        prod (-1)^{d_i - b_i + 1} / ((d_i - b_i + 1)! (b_i - 1)!)
        * h_{g; b} / ((2g - 1 + n)! sum b_i),
with 4g = sum d_i - n + 3 (zero if no such integer g >= 0 exists).
"""

from __future__ import annotations

import threading
from itertools import product
from math import factorial

from .partitions import partitions_of
from .series import Series, Rat, FAMILY_P, FAMILY_TQ
from .hurwitz import HurwitzQuery, ONEPART, hurwitz_frobenius


class LaurentT:
    """Transform image: {(q_exponent, t_monomial): coeff} with integer
    (possibly negative) q exponents, exact on the staircase
    q + weight <= stair and weight <= w_cap."""

    __slots__ = ("terms", "w_cap", "stair")

    def __init__(self, terms, w_cap, stair):
        self.terms = {k: v for k, v in terms.items() if v}
        self.w_cap = w_cap
        self.stair = stair

    def min_q(self):
        return min((j for j, _ in self.terms), default=0)

    def q_slice(self, j):
        """t-polynomial at q^j, as a family T_Q series with aux 0.

        Its reliable weight range is min(w_cap, stair - j)."""
        w = min(self.w_cap, self.stair - j)
        return Series(FAMILY_TQ, max(w, 0), 0,
                      {(0, vm): c for (q, vm), c in self.terms.items() if q == j})

    def to_series(self):
        if self.min_q() < 0:
            raise ValueError("negative q exponent present (min %d)" % self.min_q())
        return Series(FAMILY_TQ, self.w_cap, self.stair,
                      {(q, vm): c for (q, vm), c in self.terms.items()})

    def lowest_nonzero_q(self):
        return min((j for (j, _), c in self.terms.items() if c), default=None)


def chvar_coeff(b, d):
    """Coefficient of t_d in the image of p_b (without the q power)."""
    if d < b - 1:
        return Rat(0)
    return Rat((-1) ** (d - b + 1), factorial(d - b + 1) * factorial(b - 1))


def transform_p_to_tq(series, w_cap=None):
    """Exact transform of a family-P series into the Laurent t-picture."""
    assert series.family == FAMILY_P
    w_eff = series.cap_weight if w_cap is None else min(w_cap, series.cap_weight)
    stair = 2 * series.cap_aux
    out = {}
    for (m, vm), c in series.terms.items():
        bs = []
        for b, e in vm:
            bs.extend([b] * e)
        base_j = 2 * m

        def assign(idx, budget, coeff, mono):
            if idx == len(bs):
                wt = sum((d + 1) * e for d, e in mono.items())
                j = base_j - wt
                if j + wt > stair:
                    return
                key = (j, tuple(sorted(mono.items())))
                out[key] = out.get(key, Rat(0)) + coeff
                return
            b = bs[idx]
            d = b - 1
            while (d + 1) <= budget:
                cc = chvar_coeff(b, d)
                mono[d] = mono.get(d, 0) + 1
                assign(idx + 1, budget - (d + 1), coeff * cc, mono)
                mono[d] -= 1
                if not mono[d]:
                    del mono[d]
                d += 1

        assign(0, w_eff, c, {})
    return LaurentT(out, w_eff, stair)


def chvar_pic(series, w_cap=None, q_floor=1):
    """Transform and verify that every q exponent is >= q_floor.

    Raises if an exactly-computed coefficient below the floor is nonzero
    (the input was outside the guaranteed class)."""
    img = transform_p_to_tq(series, w_cap)
    bad = [(k, v) for k, v in img.terms.items() if k[0] < q_floor]
    if bad:
        raise ValueError("transform has %d terms below q^%d, e.g. %r"
                         % (len(bad), q_floor, bad[0]))
    return img


def lp2_h_unst_transformed(w_cap):
    """Closed form of the transform of L_p^2 H_unst:
    q^{-1} t_0 (t_1 + 1) + t_0^2, entered directly."""
    terms = {
        (-1, ((0, 1),)): Rat(1),
        (-1, ((0, 1), (1, 1))): Rat(1),
        (0, ((0, 2),)): Rat(1),
    }
    return LaurentT(terms, w_cap, 2)


# -- brackets ------------------------------------------------------------------

_bracket_cache = {}
_bracket_lock = threading.Lock()


def bracket(indices):
    """<tau_{d_1} ... tau_{d_n}> for a multiset of nonnegative indices."""
    key = tuple(sorted(indices))
    got = _bracket_cache.get(key)
    if got is not None:
        return got
    value = _bracket_raw(key)
    with _bracket_lock:
        _bracket_cache[key] = value
    return value


def _bracket_raw(ds):
    n = len(ds)
    if n == 0:
        return Rat(0)
    total = sum(ds)
    if (total - n + 3) % 4 or total - n + 3 < 0:
        return Rat(0)
    g = (total - n + 3) // 4
    m = 2 * g - 1 + n
    if m < 0:
        return Rat(0)
    acc = Rat(0)
    for bs in product(*[range(1, d + 2) for d in ds]):
        coeff = Rat(1)
        for d, b in zip(ds, bs):
            coeff *= chvar_coeff(b, d)
        h = hurwitz_frobenius(HurwitzQuery(ONEPART, g, bs))
        if h:
            acc += coeff * h / (factorial(m) * sum(bs))
    return acc


def genus_table(g):
    """All brackets with every index >= 2 (the generators modulo the string
    and dilaton recursions) for the given genus, as {multiset: value}."""
    out = {}
    if g == 0:
        out[(0, 0, 0)] = bracket((0, 0, 0))
        return out
    for n in range(1, 4 * g - 3 + 3 + 1):
        total = 4 * g - 3 + n
        if total < 2 * n:
            continue
        for la in partitions_of(total - 2 * n):
            if len(la) > n:
                continue
            ds = tuple(sorted((2,) * (n - len(la)) + tuple(x + 2 for x in la)))
            out[ds] = bracket(ds)
    return out


# -- generating series of brackets ----------------------------------------------


def _monomials_up_to_weight(W):
    """All t-monomials with sum (d+1) e_d <= W, as {d: e} dicts."""
    out = []
    for w in range(W + 1):
        for la in partitions_of(w):
            mono = {}
            for part in la.parts:
                mono[part - 1] = mono.get(part - 1, 0) + 1
            out.append(mono)
    return out


def _mono_factorials(mono):
    out = 1
    for e in mono.values():
        out *= factorial(e)
    return out


def f_series(W):
    """F: coefficient of prod t_d^{e_d} is bracket / prod e_d!."""
    items = []
    for mono in _monomials_up_to_weight(W):
        ds = []
        for d, e in mono.items():
            ds.extend([d] * e)
        v = bracket(tuple(ds))
        if v:
            items.append((0, mono, v / _mono_factorials(mono)))
    return Series.from_terms(FAMILY_TQ, W, 0, items)


def u_series(W):
    """U = d^2 F / d t_0^2, built directly from brackets."""
    items = []
    for mono in _monomials_up_to_weight(W):
        ds = [0, 0]
        for d, e in mono.items():
            ds.extend([d] * e)
        v = bracket(tuple(ds))
        if v:
            items.append((0, mono, v / _mono_factorials(mono)))
    return Series.from_terms(FAMILY_TQ, W, 0, items)


# -- string / dilaton / L_t ------------------------------------------------------


def _coeff(F, mono):
    return F.coeff(0, mono)


def _bump(mono, d, by=1):
    out = dict(mono)
    out[d] = out.get(d, 0) + by
    if out[d] == 0:
        del out[d]
    elif out[d] < 0:
        return None
    return out


STRING_SOURCE_PIC = {((0, 2),): Rat(1, 2)}


def string_check(F, source=STRING_SOURCE_PIC):
    """dF/dt_0 = sum_{d>=1} t_d dF/dt_{d-1} + source, coefficient-wise on
    every monomial whose dependency cone lies inside the caps.

    The default source t_0^2/2 is the genus-zero three-point slot of the
    bracket series.  Lambda-class slices carry their own exceptional slots
    (e.g. the one-pointed genus-one value as a constant source); pass them
    as {monomial-key: value}."""
    W = F.cap_weight
    source = source or {}
    for mono in _monomials_up_to_weight(W - 1):
        e0 = mono.get(0, 0)
        lhs = (e0 + 1) * _coeff(F, _bump(mono, 0))
        rhs = source.get(tuple(sorted(mono.items())), Rat(0))
        for d in list(mono):
            if d < 1 or mono[d] < 1:
                continue
            stripped = _bump(mono, d, -1)
            rhs += (stripped.get(d - 1, 0) + 1) * _coeff(F, _bump(stripped, d - 1))
        if lhs != rhs:
            return False
    return True


def dilaton_check(F):
    """dF/dt_1 = 1/2 sum (d+1) t_d dF/dt_d - F/2, coefficient-wise."""
    W = F.cap_weight
    for mono in _monomials_up_to_weight(W - 2):
        e1 = mono.get(1, 0)
        lhs = (e1 + 1) * _coeff(F, _bump(mono, 1))
        weight = sum((d + 1) * e for d, e in mono.items())
        rhs = Rat(weight, 2) * _coeff(F, mono) - Rat(1, 2) * _coeff(F, mono)
        if lhs != rhs:
            return False
    return True


def lt_first_identity_check(F):
    """L_t F = F + 2 dF/dt_1 + (1/sqrt(beta)) (dF/dt_0 - t_0^2/2),
    split into the q^0 and q^{-1} parts, coefficient-wise."""
    W = F.cap_weight
    for mono in _monomials_up_to_weight(W - 2):
        weight = sum((d + 1) * e for d, e in mono.items())
        # q^0 part: Euler operator sum (d+1) t_d d/dt_d
        lhs0 = Rat(weight) * _coeff(F, mono)
        rhs0 = _coeff(F, mono) + 2 * (mono.get(1, 0) + 1) * _coeff(F, _bump(mono, 1))
        if lhs0 != rhs0:
            return False
        # q^{-1} part: sum_{d>=1} t_d d/dt_{d-1}
        lhs1 = Rat(0)
        for d in list(mono):
            if d < 1 or mono[d] < 1:
                continue
            stripped = _bump(mono, d, -1)
            lhs1 += (stripped.get(d - 1, 0) + 1) * _coeff(F, _bump(stripped, d - 1))
        rhs1 = (mono.get(0, 0) + 1) * _coeff(F, _bump(mono, 0))
        if mono == {0: 2}:
            rhs1 -= Rat(1, 2)
        if lhs1 != rhs1:
            return False
    return True


def lt_second_identity_check(F):
    """L_t (dF/dt_0) = 2 d^2F/dt_0 dt_1 + (1/sqrt(beta)) (d^2F/dt_0^2 - t_0)."""
    W = F.cap_weight
    G = F.partial(0)
    for mono in _monomials_up_to_weight(W - 3):
        weight = sum((d + 1) * e for d, e in mono.items())
        lhs0 = Rat(weight) * _coeff(G, mono)
        rhs0 = 2 * (mono.get(0, 0) + 1) * (mono.get(1, 0) + 1) * \
            _coeff(F, _bump(_bump(mono, 0), 1))
        if lhs0 != rhs0:
            return False
        lhs1 = Rat(0)
        for d in list(mono):
            if d < 1 or mono[d] < 1:
                continue
            stripped = _bump(mono, d, -1)
            lhs1 += (stripped.get(d - 1, 0) + 1) * _coeff(G, _bump(stripped, d - 1))
        rhs1 = (mono.get(0, 0) + 2) * (mono.get(0, 0) + 1) * _coeff(F, _bump(mono, 0, 2))
        if mono == {0: 1}:
            rhs1 -= 1
        if lhs1 != rhs1:
            return False
    return True


# -- tau-function checks for U in the T variables ---------------------------


def u_in_T(W):
    """U re-expressed in T_i = t_{i-1}/(i-1)!: a family-P style series in
    the T variables (weight(T_i) = i), suitable for the Hirota machinery."""
    U = u_series(W)
    items = []
    for (aux, vm), c in U.terms.items():
        scale = Rat(1)
        tv = {}
        for d, e in vm:
            scale *= Rat(factorial(d)) ** e
            tv[d + 1] = e
        items.append((0, tv, c * scale))
    return Series.from_terms(FAMILY_P, W, 0, items)


def u_hierarchy_residuals(W, equations=((2, 2), (2, 3)), shifts=(Rat(0), Rat(1))):
    """Hirota residuals of c' + U and linearized residuals of U, in the T
    variables.  Returns {(kind, (i,j), shift): residual_series}; the caps of
    each residual delimit the exactly-checked region."""
    from .hierarchy import hirota_residual, lkp_residual
    UT = u_in_T(W)
    out = {}
    for (i, j) in equations:
        for c in shifts:
            out[("hirota", (i, j), c)] = hirota_residual(i, j, UT + c)
        out[("lkp", (i, j), None)] = lkp_residual(i, j, UT)
    return out


# -- binomial identity used by the change of variables ---------------------------


def psi_expansion_check(d):
    """The alternating sum of 1/(1 - b psi) telescopes to psi^d + higher:
    coefficient of psi^k is 0 for k < d and 1 for k = d."""
    for k in range(d + 1):
        s = sum(chvar_coeff(b, d) * Rat(b) ** k for b in range(1, d + 2))
        want = Rat(1) if k == d else Rat(0)
        if s != want:
            return False
    return True


def derivative_transform_pic(b):
    """d/dp_b = sum_{d<b} q^{d+1} (b-1)!/(b-d-1)! d/dt_d;
    returns [(d, q_exponent, coeff)]."""
    assert b >= 1
    return [(d, d + 1, Rat(factorial(b - 1), factorial(b - 1 - d)))
            for d in range(b)]


def derivative_inverse_check_pic(nmax):
    """The derivative transform inverts the change of variables exactly."""
    for b in range(1, nmax + 1):
        for bp in range(1, nmax + 1):
            acc = Rat(0)
            for d, _, coeff in derivative_transform_pic(b):
                acc += coeff * chvar_coeff(bp, d)
            if acc != (1 if b == bp else 0):
                return False
    return True
