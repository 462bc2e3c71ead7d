"""Finite differential operators.

Two flavors are used:

* ``DPoly``: a polynomial with rational coefficients in commuting derivative
  symbols d_1, d_2, ... (weight(d_i) = i).  Viewed as a constant-coefficient
  operator it acts on series by iterated partial derivatives; viewed as a
  polynomial it supports the corner-bite calculus (the S operator).

* ``TOp``: a normal-ordered operator sum c * t-monomial * derivative-monomial
  acting on series in the t variables, with exact composition (contractions
  via Leibniz).  Used for the appendix operator calculus (L, l, conjugation).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb

from .series import Series, Rat


def _mono_mul(a, b):
    return tuple(sorted(a + b))


def _mono_remove_one(mono, x):
    out = list(mono)
    out.remove(x)
    return tuple(out)


class DPoly:
    """Polynomial in derivative symbols d_i; keys are sorted index tuples."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = Rat(c)
            if c:
                clean[tuple(sorted(mono))] = clean.get(tuple(sorted(mono)), Rat(0)) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def one(cls):
        return cls({(): Rat(1)})

    @classmethod
    def d(cls, i):
        return cls({(i,): Rat(1)})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Rat(0)) + v
        return DPoly(out)

    def __sub__(self, other):
        return self + (other * Rat(-1))

    def __mul__(self, other):
        if isinstance(other, DPoly):
            out = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    k = _mono_mul(m1, m2)
                    out[k] = out.get(k, Rat(0)) + c1 * c2
            return DPoly(out)
        c = Rat(other)
        return DPoly({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, DPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "DPoly(0)"
        bits = []
        for mono, c in sorted(self.terms.items()):
            name = "*".join("d%d" % i for i in mono) if mono else "1"
            bits.append("%s*%s" % (c, name))
        return "DPoly(%s)" % " + ".join(bits)

    def is_zero(self):
        return not self.terms

    def weight(self):
        """Max total weight of a monomial (weight(d_i) = i)."""
        return max((sum(m) for m in self.terms), default=0)

    def constant(self):
        return self.terms.get((), Rat(0))

    def apply(self, series):
        out = Series.zero(series.family, series.cap_weight, series.cap_aux)
        for mono, c in self.terms.items():
            out = out + series.partial_multi(mono) * c
        return out

    def s_action(self):
        """S = sum_i i d_i d/dd_{i+1}, acting on the polynomial."""
        out = {}
        for mono, c in self.terms.items():
            seen = set()
            for x in mono:
                if x in seen or x < 2:
                    continue
                seen.add(x)
                e = mono.count(x)
                new = _mono_mul(_mono_remove_one(mono, x), (x - 1,))
                out[new] = out.get(new, Rat(0)) + c * e * (x - 1)
        return DPoly(out)

    def subst_binomial_q(self):
        """Substitute d_i -> sum_{k=1..i} C(i-1, k-1) q^k delta_k.

        Returns {(q_exponent, delta_monomial): coeff}; used to verify that
        this change of variables equals beta^{n/2} e^{S/sqrt(beta)} on
        quasihomogeneous polynomials.
        """
        out = {}
        for mono, c in self.terms.items():
            acc = {(0, ()): c}
            for i in mono:
                nxt = {}
                for (q, dm), v in acc.items():
                    for k in range(1, i + 1):
                        coeff = comb(i - 1, k - 1)
                        key = (q + k, _mono_mul(dm, (k,)))
                        nxt[key] = nxt.get(key, Rat(0)) + v * coeff
                acc = nxt
            for key, v in acc.items():
                out[key] = out.get(key, Rat(0)) + v
        return {k: v for k, v in out.items() if v}


class BForm:
    """Bilinear combination sum_r c_r (A_r tau) (B_r tau)."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        self.parts = [(Rat(c), a, b) for c, a, b in parts]

    def __add__(self, other):
        return BForm(self.parts + other.parts)

    def scale(self, c):
        c = Rat(c)
        return BForm([(c * k, a, b) for k, a, b in self.parts])

    def apply(self, tau):
        out = Series.zero(tau.family, tau.cap_weight, tau.cap_aux)
        for c, a, b in self.parts:
            out = out + (a.apply(tau) * b.apply(tau)) * c
        return out

    def canonical_pairs(self):
        """Unordered expansion dict {(mono_min, mono_max): coeff}."""
        out = {}
        for c, a, b in self.parts:
            for m1, c1 in a.terms.items():
                for m2, c2 in b.terms.items():
                    key = (m1, m2) if m1 <= m2 else (m2, m1)
                    out[key] = out.get(key, Rat(0)) + c * c1 * c2
        return {k: v for k, v in out.items() if v}

    def s_tensor(self):
        """(S (x) 1 + 1 (x) S) applied to the form."""
        return BForm([(c, a.s_action(), b) for c, a, b in self.parts]
                     + [(c, a, b.s_action()) for c, a, b in self.parts])

    def d1_derivative(self):
        """Derivative of the expression in p_1 (product rule)."""
        d1 = DPoly.d(1)
        return BForm([(c, d1 * a, b) for c, a, b in self.parts]
                     + [(c, a, d1 * b) for c, a, b in self.parts])

    def equals(self, other):
        return self.canonical_pairs() == other.canonical_pairs()


# -- normal-ordered t-variable operators --------------------------------------


class TOp:
    """sum c * (prod t_j) * (prod d/dt_i), keys = (tmono, dmono) tuples."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for (tm, dm), c in (terms or {}).items():
            c = Rat(c)
            if not c:
                continue
            key = (tuple(sorted(tm)), tuple(sorted(dm)))
            clean[key] = clean.get(key, Rat(0)) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def single(cls, tmono, dmono, c=1):
        return cls({(tuple(sorted(tmono)), tuple(sorted(dmono))): Rat(c)})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Rat(0)) + v
        return TOp(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Rat(c)
        return TOp({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, TOp) and self.terms == other.terms

    def __repr__(self):
        return "TOp(%d terms)" % len(self.terms)

    def is_zero(self):
        return not self.terms

    def compose(self, other, index_cap=None):
        """Operator composition self o other, normal ordered exactly."""
        out = {}
        for (tp, qd), ca in self.terms.items():
            qcount = {}
            for x in qd:
                qcount[x] = qcount.get(x, 0) + 1
            for (tr, sd), cb in other.terms.items():
                rcount = {}
                for x in tr:
                    rcount[x] = rcount.get(x, 0) + 1
                shared = [x for x in qcount if x in rcount]
                # enumerate contraction multiplicities per shared index
                ranges = [range(min(qcount[x], rcount[x]) + 1) for x in shared]
                for combo in product(*ranges):
                    contraction = dict(zip(shared, combo))
                    coeff = ca * cb
                    for x, j in contraction.items():
                        q, r = qcount[x], rcount[x]
                        fall = 1
                        for t in range(j):
                            fall *= (r - t)
                        coeff *= comb(q, j) * fall
                    if not coeff:
                        continue
                    newt = list(tp)
                    for x in tr:
                        newt.append(x)
                    newd = list(sd)
                    for x in qd:
                        newd.append(x)
                    for x, j in contraction.items():
                        for _ in range(j):
                            newt.remove(x)
                            newd.remove(x)
                    if index_cap is not None and any(x > index_cap for x in newt + newd):
                        continue
                    key = (tuple(sorted(newt)), tuple(sorted(newd)))
                    out[key] = out.get(key, Rat(0)) + coeff
        return TOp(out)

    def commutator(self, other, index_cap=None):
        return self.compose(other, index_cap) - other.compose(self, index_cap)

    def apply(self, series):
        """Apply to a series, coefficient-wise.

        The exact weight range shrinks by the largest weight gain
        wt(derivatives) - wt(t factors) over the operator's terms; the
        result caps record that."""
        from .series import var_weight
        fam = series.family
        shift = 0
        for (tm, dm), _ in self.terms.items():
            gain = sum(var_weight(fam, x) for x in dm) - \
                sum(var_weight(fam, x) for x in tm)
            shift = max(shift, gain)
        out = {}
        for (aux, vm), c in series.terms.items():
            counts = dict(vm)
            for (tm, dm), oc in self.terms.items():
                coeff = c * oc
                work = dict(counts)
                ok = True
                for x in dm:
                    e = work.get(x, 0)
                    if not e:
                        ok = False
                        break
                    coeff *= e
                    work[x] = e - 1
                if not ok or not coeff:
                    continue
                for x in tm:
                    work[x] = work.get(x, 0) + 1
                key = (aux, tuple(sorted((i, e) for i, e in work.items() if e)))
                out[key] = out.get(key, Rat(0)) + coeff
        return Series(fam, max(series.cap_weight - shift, 0), series.cap_aux, out)


class ZOp:
    """z-graded operator: {z_order: TOp}, order >= 0."""

    __slots__ = ("grades",)

    def __init__(self, grades=None):
        self.grades = {k: v for k, v in (grades or {}).items()
                       if isinstance(v, TOp) and not v.is_zero()}

    @classmethod
    def identity(cls):
        return cls({0: TOp.single((), (), 1)})

    def grade(self, k):
        return self.grades.get(k, TOp.zero())

    def __add__(self, other):
        out = dict(self.grades)
        for k, v in other.grades.items():
            out[k] = out.get(k, TOp.zero()) + v
        return ZOp(out)

    def scale(self, c):
        return ZOp({k: v.scale(c) for k, v in self.grades.items()})

    def compose(self, other, zcap, index_cap=None):
        out = {}
        for k1, a in self.grades.items():
            for k2, b in other.grades.items():
                if k1 + k2 > zcap:
                    continue
                t = a.compose(b, index_cap)
                if not t.is_zero():
                    out[k1 + k2] = out.get(k1 + k2, TOp.zero()) + t
        return ZOp(out)

    def commutator(self, other, zcap, index_cap=None):
        return self.compose(other, zcap, index_cap) + \
            other.compose(self, zcap, index_cap).scale(-1)

    def exp(self, zcap, index_cap=None):
        """exp of an operator with no z^0 part."""
        assert 0 not in self.grades
        acc = ZOp.identity()
        term = ZOp.identity()
        for n in range(1, zcap + 1):
            term = term.compose(self, zcap, index_cap).scale(Fraction(1, n))
            if not term.grades:
                break
            acc = acc + term
        return acc

    def conjugate_by_exp(self, l, zcap, index_cap=None):
        """e^{-l} self e^{l} = self + [self, l] + 1/2 [[self, l], l] + ...

        Requires l to have no z^0 part, so the series is finite per grade.
        """
        assert 0 not in l.grades
        acc = self
        term = self
        for n in range(1, zcap + 1):
            term = term.commutator(l, zcap, index_cap).scale(Fraction(1, n))
            if not term.grades:
                break
            acc = acc + term
        return acc
