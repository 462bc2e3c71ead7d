"""Truncated sparse multivariate power series over exact rationals.

Every series lives in one of three variable families:

* ``P``:   auxiliary variable beta, main variables p_1, p_2, ... with
  weight(p_b) = b.
* ``T_Q``: auxiliary variable q (q^2 = beta), main variables t_0, t_1, ...
  with weight(t_d) = d + 1.
* ``T_U``: auxiliary variable u (u^3 = beta, z = u^2), main variables
  t_0, t_1, ... with weight(t_d) = d + 1.

A monomial is stored as ``(aux_exponent, ((index, exponent), ...))`` with the
variable pairs sorted by index and all exponents positive.  Truncation is
eager: a series never stores a term whose weight exceeds ``cap_weight`` or
whose auxiliary exponent exceeds ``cap_aux``, and never stores a zero
coefficient.  All arithmetic is exact; there is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

Rat = Fraction

FAMILY_P = "P"
FAMILY_TQ = "T_Q"
FAMILY_TU = "T_U"
FAMILIES = (FAMILY_P, FAMILY_TQ, FAMILY_TU)

# aux variable name per family, for messages and serialization docs
AUX_NAME = {FAMILY_P: "beta", FAMILY_TQ: "q", FAMILY_TU: "u"}


def vm_from_dict(d):
    """Canonical variable-monomial from an {index: exponent} mapping."""
    items = tuple(sorted((i, e) for i, e in d.items() if e))
    assert all(e > 0 for _, e in items)
    return items


def vm_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for i, e in b:
        acc[i] = acc.get(i, 0) + e
    return tuple(sorted(acc.items()))


_WEIGHT_CACHE = {}


def vm_weight(family, vm):
    key = (family, vm)
    got = _WEIGHT_CACHE.get(key)
    if got is None:
        if family == FAMILY_P:
            got = sum(i * e for i, e in vm)
        else:
            got = sum((i + 1) * e for i, e in vm)
        _WEIGHT_CACHE[key] = got
    return got


def vm_degree(vm):
    return sum(e for _, e in vm)


def var_weight(family, index):
    return index if family == FAMILY_P else index + 1


class Series:
    """Sparse truncated series.  Treat instances as immutable."""

    __slots__ = ("family", "cap_weight", "cap_aux", "terms")

    def __init__(self, family, cap_weight, cap_aux, terms=None):
        assert family in FAMILIES, family
        assert cap_weight >= 0 and cap_aux >= 0
        self.family = family
        self.cap_weight = cap_weight
        self.cap_aux = cap_aux
        clean = {}
        for (aux, vm), c in (terms or {}).items():
            if not c:
                continue
            if aux < 0:
                raise ValueError("negative auxiliary exponent %d" % aux)
            if aux <= cap_aux and vm_weight(family, vm) <= cap_weight:
                clean[(aux, vm)] = c if type(c) is Rat else Rat(c)
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, family, cap_weight, cap_aux):
        return cls(family, cap_weight, cap_aux)

    @classmethod
    def constant(cls, family, cap_weight, cap_aux, value):
        return cls(family, cap_weight, cap_aux, {(0, ()): Rat(value)})

    @classmethod
    def variable(cls, family, index, cap_weight, cap_aux, coeff=1):
        if family == FAMILY_P:
            assert index >= 1
        else:
            assert index >= 0
        return cls(family, cap_weight, cap_aux, {(0, ((index, 1),)): Rat(coeff)})

    @classmethod
    def aux_power(cls, family, k, cap_weight, cap_aux, coeff=1):
        return cls(family, cap_weight, cap_aux, {(k, ()): Rat(coeff)})

    @classmethod
    def from_terms(cls, family, cap_weight, cap_aux, items):
        """items: iterable of (aux, {index: exp} or vm tuple, coeff)."""
        terms = {}
        for aux, vm, c in items:
            if isinstance(vm, dict):
                vm = vm_from_dict(vm)
            key = (aux, vm)
            terms[key] = terms.get(key, Rat(0)) + Rat(c)
        return cls(family, cap_weight, cap_aux, terms)

    # -- queries -------------------------------------------------------

    def coeff(self, aux=0, vm=()):
        if isinstance(vm, dict):
            vm = vm_from_dict(vm)
        return self.terms.get((aux, vm), Rat(0))

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get((0, ()), Rat(0))

    def min_weight(self):
        """Smallest weight of a stored term, None if zero series."""
        if not self.terms:
            return None
        return min(vm_weight(self.family, vm) for _, vm in self.terms)

    def max_aux(self):
        return max((aux for aux, _ in self.terms), default=0)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def aux_slice(self, j):
        """Coefficient series of aux^j (the aux exponent is dropped)."""
        terms = {(0, vm): c for (aux, vm), c in self.terms.items() if aux == j}
        return Series(self.family, self.cap_weight, self.cap_aux, terms)

    def filter_terms(self, pred):
        """Keep only terms with pred(aux, vm) true; caps unchanged."""
        return Series(self.family, self.cap_weight, self.cap_aux,
                      {k: c for k, c in self.terms.items() if pred(*k)})

    # -- arithmetic ----------------------------------------------------

    def _check_family(self, other):
        if self.family != other.family:
            raise ValueError("mismatched families %s, %s" % (self.family, other.family))

    def __add__(self, other):
        if not isinstance(other, Series):
            return self + Series.constant(self.family, self.cap_weight, self.cap_aux, other)
        self._check_family(other)
        w = min(self.cap_weight, other.cap_weight)
        a = min(self.cap_aux, other.cap_aux)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, Rat(0)) + c
        return Series(self.family, w, a, terms)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.family, self.cap_weight, self.cap_aux,
                      {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, Series) else -Rat(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series):
            c = Rat(other)
            if not c:
                return Series(self.family, self.cap_weight, self.cap_aux)
            return Series(self.family, self.cap_weight, self.cap_aux,
                          {k: c * v for k, v in self.terms.items()})
        self._check_family(other)
        w = min(self.cap_weight, other.cap_weight)
        a = min(self.cap_aux, other.cap_aux)
        fam = self.family
        out = {}
        # bucket the right factor by weight so high-weight pairs are skipped
        # without touching them
        buckets = {}
        for (aux2, vm2), c2 in other.terms.items():
            w2 = vm_weight(fam, vm2)
            if w2 <= w:
                buckets.setdefault(w2, []).append((aux2, vm2, c2))
        weights = sorted(buckets)
        for (aux1, vm1), c1 in self.terms.items():
            w1 = vm_weight(fam, vm1)
            room = w - w1
            if room < 0:
                continue
            aroom = a - aux1
            for w2 in weights:
                if w2 > room:
                    break
                for aux2, vm2, c2 in buckets[w2]:
                    if aux2 > aroom:
                        continue
                    key = (aux1 + aux2, vm_mul(vm1, vm2))
                    prev = out.get(key)
                    out[key] = c1 * c2 if prev is None else prev + c1 * c2
        return Series(fam, w, a, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        assert isinstance(n, int) and n >= 0
        result = Series.constant(self.family, self.cap_weight, self.cap_aux, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.inverse()
        return self * (Rat(1) / Rat(other))

    def __eq__(self, other):
        if not isinstance(other, Series):
            if self.terms and set(self.terms) != {(0, ())}:
                return False
            return self.constant_term() == Rat(other)
        return self.family == other.family and self.terms == other.terms

    def __hash__(self):
        return hash((self.family, frozenset(self.terms.items())))

    def __repr__(self):
        n = len(self.terms)
        return "Series(%s, w<=%d, aux<=%d, %d terms)" % (
            self.family, self.cap_weight, self.cap_aux, n)

    def pretty(self, max_terms=24):
        """Readable rendering, deterministic order."""
        if not self.terms:
            return "0"
        names = {FAMILY_P: ("beta", "p"), FAMILY_TQ: ("q", "t"), FAMILY_TU: ("u", "t")}
        auxn, varn = names[self.family]
        bits = []
        for (aux, vm), c in self.sorted_terms()[:max_terms]:
            factors = []
            if aux:
                factors.append("%s^%d" % (auxn, aux) if aux > 1 else auxn)
            for i, e in vm:
                v = "%s%d" % (varn, i) if self.family != FAMILY_P else "p%d" % i
                factors.append(v if e == 1 else "%s^%d" % (v, e))
            mono = "*".join(factors) if factors else "1"
            bits.append("%s*%s" % (c, mono))
        tail = " + ..." if len(self.terms) > max_terms else ""
        return " + ".join(bits) + tail

    # -- calculus ------------------------------------------------------

    def partial(self, index):
        """Formal derivative in the main variable with the given index.

        The result is exact only to cap_weight - weight(var); the caps are
        reduced accordingly.
        """
        fam = self.family
        wvar = var_weight(fam, index)
        out = {}
        for (aux, vm), c in self.terms.items():
            d = dict(vm)
            e = d.get(index)
            if not e:
                continue
            if e == 1:
                del d[index]
            else:
                d[index] = e - 1
            key = (aux, tuple(sorted(d.items())))
            out[key] = out.get(key, Rat(0)) + e * c
        return Series(fam, max(self.cap_weight - wvar, 0), self.cap_aux, out)

    def partial_multi(self, indices):
        s = self
        for i in indices:
            s = s.partial(i)
        return s

    def aux_shift(self, k):
        """Multiply by aux^k (k >= 0)."""
        assert k >= 0
        return Series(self.family, self.cap_weight, self.cap_aux,
                      {(aux + k, vm): c for (aux, vm), c in self.terms.items()})

    def aux_partial(self):
        """Formal derivative in the auxiliary variable."""
        out = {}
        for (aux, vm), c in self.terms.items():
            if aux:
                out[(aux - 1, vm)] = aux * c
        return Series(self.family, self.cap_weight, self.cap_aux, out)

    def substitute(self, images, family=None, cap_weight=None, cap_aux=None,
                   aux_image_exp=1):
        """Simultaneous substitution of finite series for main variables.

        ``images`` maps variable indices to Series in the target family; any
        variable without an image must not occur.  The auxiliary variable is
        sent to aux^aux_image_exp.  Every image must be free of constant
        terms (each image term has weight + aux >= 1); this is the
        triangularity that keeps the truncated computation finite and is
        checked up front.  Exactness on the retained range is the caller's
        responsibility: images must be supplied complete up to the target
        caps.
        """
        fam = family or self.family
        w = self.cap_weight if cap_weight is None else cap_weight
        a = self.cap_aux if cap_aux is None else cap_aux
        for i, img in images.items():
            if img.family != fam:
                raise ValueError("image of variable %d is in family %s, not %s"
                                 % (i, img.family, fam))
            for (aux, vm), _ in img.terms.items():
                if aux == 0 and not vm:
                    raise ValueError("image of variable %d has a constant term; "
                                     "substitution grading is not triangular" % i)
        out = Series.zero(fam, w, a)
        for (aux, vm), c in self.terms.items():
            piece = Series(fam, w, a, {(aux * aux_image_exp, ()): c})
            if piece.is_zero():
                continue
            for i, e in vm:
                if i not in images:
                    raise ValueError("no image for variable index %d" % i)
                img = Series(fam, w, a, images[i].terms)
                for _ in range(e):
                    piece = piece * img
                    if piece.is_zero():
                        break
                if piece.is_zero():
                    break
            out = out + piece
        return out

    # -- exp / log / inverse --------------------------------------------

    def exp(self):
        """exp of a series with zero constant term."""
        if self.constant_term():
            raise ValueError("exp needs zero constant term")
        one = Series.constant(self.family, self.cap_weight, self.cap_aux, 1)
        acc = one
        term = one
        # each factor raises weight + aux by at least 1
        for k in range(1, self.cap_weight + self.cap_aux + 1):
            term = term * self * Rat(1, k)
            if term.is_zero():
                break
            acc = acc + term
        return acc

    def log(self):
        """log of a series with constant term 1."""
        if self.constant_term() != 1:
            raise ValueError("log needs constant term 1")
        x = self - 1
        acc = Series.zero(self.family, self.cap_weight, self.cap_aux)
        term = Series.constant(self.family, self.cap_weight, self.cap_aux, 1)
        for k in range(1, self.cap_weight + self.cap_aux + 1):
            term = term * x
            if term.is_zero():
                break
            acc = acc + term * Rat((-1) ** (k + 1), k)
        return acc

    def inverse(self):
        """Multiplicative inverse; constant term must be nonzero."""
        c0 = self.constant_term()
        if not c0:
            raise ValueError("inverse needs nonzero constant term")
        y = self * Rat(1, 1) / c0 - 1
        acc = Series.constant(self.family, self.cap_weight, self.cap_aux, 1)
        term = Series.constant(self.family, self.cap_weight, self.cap_aux, 1)
        for k in range(1, self.cap_weight + self.cap_aux + 1):
            term = term * y
            if term.is_zero():
                break
            acc = acc + term * Rat((-1) ** k)
        return acc * (Rat(1) / c0)

    # -- serialization ---------------------------------------------------

    def to_jsonable(self):
        """JSON object with exponent vectors (aux, slot1, slot2, ...).

        Slot i holds p_i (family P) or t_{i-1} (families T_*), matching the
        canonical variable order (beta|q|u, p_1/t_0, p_2/t_1, ...).
        """
        width = 0
        for _, vm in self.terms:
            for i, _ in vm:
                slot = i if self.family == FAMILY_P else i + 1
                width = max(width, slot)
        rows = []
        for (aux, vm), c in self.terms.items():
            vec = [0] * (width + 1)
            vec[0] = aux
            for i, e in vm:
                slot = i if self.family == FAMILY_P else i + 1
                vec[slot] = e
            rows.append({"exp": vec, "coeff": "%d/%d" % (c.numerator, c.denominator)})
        rows.sort(key=lambda r: r["exp"])
        return {"family": self.family,
                "caps": {"weight": self.cap_weight, "aux": self.cap_aux},
                "terms": rows}

    @classmethod
    def from_jsonable(cls, obj):
        family = obj["family"]
        if family not in FAMILIES:
            raise ValueError("unknown family %r" % (family,))
        caps = obj["caps"]
        terms = {}
        for row in obj["terms"]:
            vec = row["exp"]
            num, den = row["coeff"].split("/")
            c = Rat(int(num), int(den))
            aux = vec[0]
            d = {}
            for slot, e in enumerate(vec[1:], start=1):
                if e:
                    idx = slot if family == FAMILY_P else slot - 1
                    d[idx] = e
            key = (aux, vm_from_dict(d))
            terms[key] = terms.get(key, Rat(0)) + c
        return cls(family, caps["weight"], caps["aux"], terms)
