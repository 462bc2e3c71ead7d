"""Hurwitz numbers by independent routes, and their generating series.

Two families are computed:

* one-part numbers ("onepart"): degree-d covers with a single fully
  ramified point over 0 (monodromy a d-cycle), n numbered points over
  infinity with multiplicities b_1..b_n, and m = 2g-1+n simple branch
  points.  The d-cycle forces connectedness.

* simple numbers ("simple"): no point over 0, m = d+n+2g-2 simple branch
  points, covers required connected.

Counting convention (pinned by the unstable-part goldens, not assumed):
h = |Aut(profile)| * #{(sigma, tau_1..tau_m, pi) : product = id, classes as
required, connected} / d!, where |Aut| counts the assignments of the n
labels to the cycles of pi.

Routes:
  * brute force: explicit tuple counting over S_d (dynamic programming on
    the running product, plus a sheet-partition state for the simple kind's
    transitivity filter);
  * character sums: for one-part numbers the class-algebra formula
    collapses onto hook diagrams, h = (1/(d prod b_i)) sum over hooks of
    chi(hook at the d-cycle) f^m chi(hook at profile); for the simple kind
    the character sum counts possibly-disconnected covers and connected
    values are extracted from the logarithm of the disconnected series;
  * closed hook series (one-part only): coefficient extraction from
    sum_{a,b} (-1)^b s_{hook(a,b)} e^{f beta}.
"""

from __future__ import annotations

import json
import os
import threading
from itertools import permutations
from math import factorial

from .partitions import (Partition, partitions_of, partitions_upto, aut_order,
                         hook, cut_and_join_eigenvalue)
from .symfunc import character, dimension, schur_poly
from .series import Series, Rat, FAMILY_P

ONEPART = "onepart"
SIMPLE = "simple"


class HurwitzQuery:
    """kind, genus, and ordered ramification profile over infinity."""

    __slots__ = ("kind", "genus", "profile")

    def __init__(self, kind, genus, profile):
        assert kind in (ONEPART, SIMPLE)
        profile = tuple(int(b) for b in profile)
        assert genus >= 0 and len(profile) >= 1
        assert all(b >= 1 for b in profile)
        self.kind = kind
        self.genus = genus
        self.profile = profile

    @property
    def degree(self):
        return sum(self.profile)

    @property
    def npoints(self):
        return len(self.profile)

    @property
    def branch_points(self):
        if self.kind == ONEPART:
            return 2 * self.genus - 1 + self.npoints
        return self.degree + self.npoints + 2 * self.genus - 2

    @property
    def cycle_type(self):
        return Partition.from_multiset(self.profile)

    def key(self):
        return (self.kind, self.genus, tuple(sorted(self.profile, reverse=True)))

    def __repr__(self):
        return "HurwitzQuery(%s, g=%d, b=%r)" % (self.kind, self.genus, self.profile)


# -- brute force ---------------------------------------------------------------


def _transpositions(d):
    return [(i, j) for i in range(d) for j in range(i + 1, d)]


def _apply_transposition(perm, t):
    i, j = t
    lst = list(perm)
    lst[i], lst[j] = lst[j], lst[i]
    return tuple(lst)


def _cycle_type_of(perm):
    d = len(perm)
    seen = [False] * d
    lens = []
    for s in range(d):
        if seen[s]:
            continue
        n = 0
        x = s
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            n += 1
        lens.append(n)
    return Partition.from_multiset(lens)


def _merge_blocks(blocks, i, j):
    bi = bj = None
    for b in blocks:
        if i in b:
            bi = b
        if j in b:
            bj = b
    if bi is bj:
        return blocks
    rest = tuple(b for b in blocks if b is not bi and b is not bj)
    return tuple(sorted(rest + (tuple(sorted(bi + bj)),)))


def hurwitz_bruteforce(q):
    """Exact count by explicit factorization enumeration; desk scale only."""
    d, m = q.degree, q.branch_points
    if d > 5 or m > 7:
        raise ValueError("brute force limited to degree <= 5, branch points <= 7")
    if m < 0:
        return Rat(0)
    target = q.cycle_type
    labelings = aut_order(target)
    transpositions = _transpositions(d)
    identity = tuple(range(d))

    if q.kind == ONEPART:
        # DP over the running product sigma tau_1 ... tau_k
        total = 0
        for sigma in permutations(range(d)):
            if len(_cycle_type_of(sigma)) != 1:
                continue
            state = {sigma: 1}
            for _ in range(m):
                nxt = {}
                for perm, cnt in state.items():
                    for t in transpositions:
                        np = _apply_transposition(perm, t)
                        nxt[np] = nxt.get(np, 0) + cnt
                state = nxt
            for perm, cnt in state.items():
                # pi = perm^{-1}; same cycle type as perm
                if _cycle_type_of(perm) == target:
                    total += cnt
        return Rat(total * labelings, factorial(d))

    # simple kind: track the partition of sheets generated by the
    # transpositions so far, to filter for connectedness at the end
    start_blocks = tuple((i,) for i in range(d))
    state = {(identity, start_blocks): 1}
    for _ in range(m):
        nxt = {}
        for (perm, blocks), cnt in state.items():
            for t in transpositions:
                np = _apply_transposition(perm, t)
                nb = _merge_blocks(blocks, t[0], t[1])
                key = (np, nb)
                nxt[key] = nxt.get(key, 0) + cnt
        state = nxt
    full = tuple((tuple(range(d)),))
    total = 0
    for (perm, blocks), cnt in state.items():
        if _cycle_type_of(perm) != target:
            continue
        # pi = perm^{-1} joins its own cycles into the orbit structure
        joined = blocks
        pi_cycles = _cycles_of(perm)
        for cyc in pi_cycles:
            for x in cyc[1:]:
                joined = _merge_blocks(joined, cyc[0], x)
        if joined == full:
            total += cnt
    return Rat(total * labelings, factorial(d))


def _cycles_of(perm):
    d = len(perm)
    seen = [False] * d
    out = []
    for s in range(d):
        if seen[s]:
            continue
        cyc = []
        x = s
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = perm[x]
        out.append(tuple(cyc))
    return out


# -- character sums ------------------------------------------------------------


def _onepart_character_sum(nu, m):
    """sum over hooks lambda of |nu| of chi_lambda((d)) f^m chi_lambda(nu)."""
    d = nu.size
    dcycle = Partition((d,))
    total = Rat(0)
    for b in range(d):
        la = hook(d - 1 - b, b)
        chi_d = character(la, dcycle)
        if not chi_d:
            continue
        f = cut_and_join_eigenvalue(la)
        total += chi_d * f ** m * character(la, nu)
    return total


def hurwitz_frobenius(q):
    """Character-sum route; one-part directly, simple via the series log."""
    d, m = q.degree, q.branch_points
    if m < 0:
        return Rat(0)
    nu = q.cycle_type
    if q.kind == ONEPART:
        prod_b = 1
        for b in q.profile:
            prod_b *= b
        return _onepart_character_sum(nu, m) / (d * prod_b)
    series = _h_simple_covering(d, m)
    coeff = series.coeff(aux=m, vm=nu.multiplicities())
    return coeff * factorial(m) * aut_order(nu)


_covering_caps = [0, 0]


def _h_simple_covering(d, m):
    """A cached connected series whose caps cover (d, m); grows monotonically
    so a scan of queries triggers at most a few builds."""
    W = max(_covering_caps[0], ((d + 3) // 4) * 4)
    M = max(_covering_caps[1], ((m + 3) // 4) * 4)
    _covering_caps[0] = W
    _covering_caps[1] = M
    return h_simple_series(W, M)


# -- generating series ---------------------------------------------------------

_series_cache = {}
_series_lock = threading.Lock()


def _cached(key, build):
    got = _series_cache.get(key)
    if got is None:
        got = build()
        with _series_lock:
            _series_cache[key] = got
    return got


def disconnected_simple_series(cap_weight, cap_aux):
    """exp of the simple-number series:
    sum over partitions lambda of (dim/d!) e^{beta f_lambda} s_lambda."""
    def build():
        acc = {}
        for la in partitions_upto(cap_weight):
            s = schur_poly(la, cap_weight=cap_weight, cap_aux=cap_aux)
            f = cut_and_join_eigenvalue(la)
            scale = Rat(dimension(la), factorial(la.size))
            for (_, vm), c in s.terms.items():
                base = c * scale
                power = Rat(1)
                for k in range(cap_aux + 1):
                    key = (k, vm)
                    acc[key] = acc.get(key, Rat(0)) + base * power
                    power = power * f / (k + 1)
        return Series(FAMILY_P, cap_weight, cap_aux, acc)
    return _cached(("disc", cap_weight, cap_aux), build)


def h_simple_series(cap_weight, cap_aux):
    """Connected simple series H: coefficient of beta^m p_nu is
    h_{g;nu} / (m! |Aut(nu)|) with m = d + n + 2g - 2."""
    def build():
        return disconnected_simple_series(cap_weight, cap_aux).log()
    return _cached(("H_simple", cap_weight, cap_aux), build)


def h_onepart_series(cap_weight, cap_aux):
    """One-part series H: coefficient of beta^m p_nu is
    h_{g;nu} / (m! |Aut(nu)| d) with m = 2g - 1 + n."""
    def build():
        items = []
        for d in range(1, cap_weight + 1):
            for nu in partitions_of(d):
                n = len(nu)
                for m in range(cap_aux + 1):
                    if (m + 1 - n) % 2 or m + 1 - n < 0:
                        continue
                    g = (m + 1 - n) // 2
                    h = hurwitz_frobenius(HurwitzQuery(ONEPART, g, nu.parts))
                    if h:
                        items.append((m, nu.multiplicities(),
                                      h / (factorial(m) * aut_order(nu) * d)))
        return Series.from_terms(FAMILY_P, cap_weight, cap_aux, items)
    return _cached(("H_onepart", cap_weight, cap_aux), build)


def h_unst_onepart(cap_weight, cap_aux):
    """Unstable part (g = 0, n <= 2) of the one-part H, closed form."""
    items = []
    for b in range(1, cap_weight + 1):
        items.append((0, {b: 1}, Rat(1, b * b)))
    if cap_aux >= 1:
        for b1 in range(1, cap_weight):
            for b2 in range(1, cap_weight - b1 + 1):
                vm = {b1: 1}
                vm[b2] = vm.get(b2, 0) + 1
                items.append((1, vm, Rat(1, 2 * (b1 + b2))))
    return Series.from_terms(FAMILY_P, cap_weight, cap_aux, items)


def h_unst_simple(cap_weight, cap_aux):
    """Unstable part (g = 0, n <= 2) of the simple H, closed form.

    One-point coefficients are beta^{b-1} b^{b-2}/b!, where b = 1 reads
    1^{-1}/1! = 1.
    """
    items = [(0, {1: 1}, Rat(1))]
    for b in range(2, cap_weight + 1):
        if b - 1 <= cap_aux:
            items.append((b - 1, {b: 1}, Rat(b ** (b - 2), factorial(b))))
    for b1 in range(1, cap_weight):
        for b2 in range(1, cap_weight - b1 + 1):
            if b1 + b2 > cap_aux:
                continue
            vm = {b1: 1}
            vm[b2] = vm.get(b2, 0) + 1
            c = Rat(b1 ** b1 * b2 ** b2, (b1 + b2) * factorial(b1) * factorial(b2))
            items.append((b1 + b2, vm, c / 2))
    return Series.from_terms(FAMILY_P, cap_weight, cap_aux, items)


def lp(series):
    """L_p = sum b p_b d/dp_b: multiply each term by its p-weight."""
    from .series import vm_weight
    return Series(series.family, series.cap_weight, series.cap_aux,
                  {(aux, vm): c * vm_weight(series.family, vm)
                   for (aux, vm), c in series.terms.items()})


def hook_series(cap_weight, cap_aux):
    """sum_{a,b >= 0} (-1)^b s_{hook(a,b)} e^{f beta}; equals L_p^2 H."""
    def build():
        acc = {}
        for d in range(1, cap_weight + 1):
            for b in range(d):
                la = hook(d - 1 - b, b)
                f = cut_and_join_eigenvalue(la)
                s = schur_poly(la, cap_weight, cap_aux)
                for (_, vm), c in s.terms.items():
                    base = c * Rat((-1) ** b)
                    power = Rat(1)
                    for k in range(cap_aux + 1):
                        key = (k, vm)
                        acc[key] = acc.get(key, Rat(0)) + base * power
                        power = power * f / (k + 1)
        return Series(FAMILY_P, cap_weight, cap_aux, acc)
    return _cached(("hooks", cap_weight, cap_aux), build)


def hurwitz_closed(q):
    """One-part value extracted from the hook closed-form series."""
    if q.kind != ONEPART:
        raise ValueError("the hook closed form applies to one-part numbers only")
    d, m = q.degree, q.branch_points
    if m < 0:
        return Rat(0)
    nu = q.cycle_type
    coeff = hook_series(d, m).coeff(aux=m, vm=nu.multiplicities())
    return coeff * factorial(m) * aut_order(nu) / d


def hurwitz(q, method="frobenius"):
    if method == "frobenius":
        return hurwitz_frobenius(q)
    if method == "brute":
        return hurwitz_bruteforce(q)
    if method == "closed":
        return hurwitz_closed(q)
    raise ValueError("unknown method %r" % (method,))


# -- polynomiality -------------------------------------------------------------


def _lagrange_fit_1d(points):
    """Exact polynomial through (x, y) points, as a coefficient list."""
    n = len(points)
    coeffs = [Rat(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Rat(1)]
        denom = Rat(1)
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            denom *= xi - xj
            basis = _poly_mul_linear(basis, -xj)
        for k, c in enumerate(basis):
            coeffs[k] += yi * c / denom
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _poly_mul_linear(coeffs, const):
    out = [Rat(0)] * (len(coeffs) + 1)
    for k, c in enumerate(coeffs):
        out[k] += c * const
        out[k + 1] += c
    return out


def _poly_eval(coeffs, x):
    acc = Rat(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def polynomiality_check(g, n, window, held_out):
    """Fit h_{g;b}/(m! d) on the window of b-tuples as a polynomial and
    verify exactly on held-out tuples.

    window and held_out are lists of b-tuples of length n.  Returns the
    fitted coefficients for n = 1, or just True/False for n > 1 (tensor
    fit).  Degree must stay below the window size per axis.
    """
    def value(b):
        q = HurwitzQuery(ONEPART, g, b)
        m = q.branch_points
        return hurwitz_frobenius(q) / (factorial(m) * q.degree)

    if n == 1:
        pts = [(Rat(b[0]), value(b)) for b in window]
        coeffs = _lagrange_fit_1d(pts)
        ok = all(_poly_eval(coeffs, Rat(b[0])) == value(b) for b in held_out)
        return ok, coeffs

    # tensor grid fit: iterate 1-d interpolation along each axis
    axes = [sorted({b[i] for b in window}) for i in range(n)]
    table = {tuple(b): value(b) for b in window}

    def fit_rec(prefix, depth):
        if depth == n:
            return {(): table[tuple(prefix)]}
        out = {}
        per_x = []
        for x in axes[depth]:
            sub = fit_rec(prefix + [x], depth + 1)
            per_x.append((Rat(x), sub))
        keys = set()
        for _, sub in per_x:
            keys.update(sub)
        for key in keys:
            pts = [(x, sub.get(key, Rat(0))) for x, sub in per_x]
            cs = _lagrange_fit_1d(pts)
            for k, c in enumerate(cs):
                if c:
                    out[(k,) + key] = c
        return out

    coeffs = fit_rec([], 0)

    def predict(b):
        acc = Rat(0)
        for exps, c in coeffs.items():
            term = c
            for x, e in zip(b, exps):
                term *= Rat(x) ** e
            acc += term
        return acc

    ok = all(predict(b) == value(b) for b in held_out)
    return ok, coeffs


# -- advisory value cache --------------------------------------------------------


def cache_path():
    return os.environ.get("TAU_LAB_CACHE", "")


def cache_lookup(q):
    path = cache_path()
    if not path or not os.path.exists(path):
        return None
    key = list(q.key())
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            row = json.loads(line)
            if row.get("query") == [key[0], key[1], list(key[2])]:
                num, den = row["value"].split("/")
                return Rat(int(num), int(den))
    return None


def cache_store(q, value):
    path = cache_path()
    if not path:
        return
    key = q.key()
    row = {"query": [key[0], key[1], list(key[2])],
           "value": "%d/%d" % (value.numerator, value.denominator)}
    with open(path, "a") as fh:
        fh.write(json.dumps(row) + "\n")
