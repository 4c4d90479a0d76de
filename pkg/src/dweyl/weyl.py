"""Exact arithmetic in the Weyl algebra D_n over the rationals.

D_n is generated by x_1..x_n and the partial-derivative operators
d_1..d_n, subject to d_i*x_i = x_i*d_i + 1 with all other generator
pairs commuting.  Every element is kept as a rational linear combination
of normally ordered monomials x^a d^b (all x factors left of all d
factors), stored sparsely as a map from the exponent pair (a, b) to a
nonzero Fraction.

Grading: deg(x_i) = +1 and deg(d_i) = -1, so x^a d^b is homogeneous of
degree |a| - |b|.  Elements are immutable; all operations return fresh
values and are safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _cartesian
from math import comb

from .errors import InputError


class _AnyDegree:
    """Sentinel: the zero element is homogeneous of every degree."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ANY_DEGREE"


ANY_DEGREE = _AnyDegree()


def _falling(c: int, k: int) -> int:
    """Falling factorial c * (c-1) * ... * (c-k+1)."""
    out = 1
    for j in range(k):
        out *= c - j
    return out


def mono_mul(a, b, c, d):
    """Normally ordered expansion of (x^a d^b) * (x^c d^d).

    Commuting the d^b block past x^c gives, per variable,
    d^b x^c = sum_k C(b,k) * c!/(c-k)! * x^(c-k) d^(b-k).
    Yields ((a', b'), integer coefficient) pairs.
    """
    n = len(a)
    ranges = [range(min(b[i], c[i]) + 1) for i in range(n)]
    for k in _cartesian(*ranges):
        coeff = 1
        for i in range(n):
            coeff *= comb(b[i], k[i]) * _falling(c[i], k[i])
        new_a = tuple(a[i] + c[i] - k[i] for i in range(n))
        new_b = tuple(b[i] + d[i] - k[i] for i in range(n))
        yield (new_a, new_b), coeff


def _display_key(mono):
    # degree-lexicographic on the concatenated exponents; cosmetic only
    a, b = mono
    return (sum(a) + sum(b), a + b)


class WeylElement:
    """An element of D_n in canonical form (no zero coefficients)."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    clean[mono] = coeff
        self.terms = clean
        self._hash = None

    # ---- constructors ----

    @classmethod
    def zero(cls, n: int) -> "WeylElement":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "WeylElement":
        z = (0,) * n
        return cls(n, {(z, z): Fraction(1)})

    @classmethod
    def monomial(cls, n: int, a, b, coeff=1) -> "WeylElement":
        a, b = tuple(a), tuple(b)
        if len(a) != n or len(b) != n:
            raise InputError(f"exponent tuples must have length {n}")
        if any(e < 0 for e in a) or any(e < 0 for e in b):
            raise InputError("exponents must be nonnegative")
        return cls(n, {(a, b): Fraction(coeff)})

    @classmethod
    def x(cls, n: int, i: int) -> "WeylElement":
        """The generator x_i, 1-based index."""
        if not 1 <= i <= n:
            raise InputError(f"variable index {i} out of range 1..{n}")
        a = tuple(1 if j == i - 1 else 0 for j in range(n))
        return cls.monomial(n, a, (0,) * n)

    @classmethod
    def d(cls, n: int, i: int) -> "WeylElement":
        """The generator d_i (partial derivative), 1-based index."""
        if not 1 <= i <= n:
            raise InputError(f"variable index {i} out of range 1..{n}")
        b = tuple(1 if j == i - 1 else 0 for j in range(n))
        return cls.monomial(n, (0,) * n, b)

    @classmethod
    def constant(cls, n: int, c) -> "WeylElement":
        z = (0,) * n
        return cls(n, {(z, z): Fraction(c)})

    # ---- basic structure ----

    def is_zero(self) -> bool:
        return not self.terms

    def is_polynomial(self) -> bool:
        """True when no term carries a derivative."""
        return all(not any(b) for _, b in self.terms)

    def sorted_terms(self):
        """Terms in canonical display order (largest first)."""
        return sorted(self.terms.items(), key=lambda t: _display_key(t[0]), reverse=True)

    def _require_same_n(self, other):
        if self.n != other.n:
            raise InputError(f"mixed variable counts: {self.n} vs {other.n}")

    # ---- ring operations ----

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement.constant(self.n, other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        self._require_same_n(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + coeff
        return WeylElement(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement.constant(self.n, other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        self._require_same_n(other)
        terms = {}
        for (a, b), cf in self.terms.items():
            for (c, d), cg in other.terms.items():
                for mono, k in mono_mul(a, b, c, d):
                    if k:
                        terms[mono] = terms.get(mono, Fraction(0)) + cf * cg * k
        return WeylElement(self.n, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "WeylElement":
        c = Fraction(c)
        if not c:
            return WeylElement.zero(self.n)
        return WeylElement(self.n, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, e: int):
        if e < 0:
            raise InputError("negative powers are not defined in D_n")
        out = WeylElement.one(self.n)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement.constant(self.n, other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    # ---- structure maps ----

    def transpose(self) -> "WeylElement":
        """The standard transposition: x^a d^b -> (-1)^|b| d^b x^a, re-normalized.

        An anti-automorphism of D_n; extended linearly from monomials.
        """
        terms = {}
        zero = (0,) * self.n
        for (a, b), coeff in self.terms.items():
            sign = -1 if sum(b) % 2 else 1
            for mono, k in mono_mul(zero, b, a, zero):
                if k:
                    terms[mono] = terms.get(mono, Fraction(0)) + sign * coeff * k
        return WeylElement(self.n, terms)

    def homogeneous_degree(self):
        """The common degree |a| - |b| of all terms.

        Returns ANY_DEGREE for the zero element and None when the terms
        have differing degrees (a legitimate outcome, not an error).
        """
        if not self.terms:
            return ANY_DEGREE
        degs = {sum(a) - sum(b) for a, b in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def order(self) -> int:
        """Maximal derivative order |b| over all terms; -1 for zero."""
        if not self.terms:
            return -1
        return max(sum(b) for _, b in self.terms)

    def order_symbol(self) -> "SymbolPolynomial":
        """Top-order part with each d_i replaced by the commuting xi_i."""
        if not self.terms:
            raise InputError("the zero element has no order symbol")
        top = self.order()
        terms = {}
        for (a, b), coeff in self.terms.items():
            if sum(b) == top:
                terms[(a, b)] = coeff
        return SymbolPolynomial(self.n, terms)

    # ---- action on polynomials ----

    def apply_to(self, p: "WeylElement") -> "WeylElement":
        """Apply this operator to a polynomial: x_i multiplies, d_i differentiates."""
        self._require_same_n(p)
        if not p.is_polynomial():
            raise InputError("apply_to expects a polynomial (no derivative terms)")
        terms = {}
        for (c, _zero), pc in p.terms.items():
            for (a, b), oc in self.terms.items():
                res = _diff_mono(c, b)
                if res is None:
                    continue
                mono, k = res
                new = tuple(mono[i] + a[i] for i in range(self.n))
                key = (new, _zero)
                terms[key] = terms.get(key, Fraction(0)) + pc * oc * k
        return WeylElement(self.n, terms)

    def apply_to_monomial(self, c) -> dict:
        """Apply to the single monomial x^c; returns {exponent tuple: Fraction}."""
        out = {}
        for (a, b), oc in self.terms.items():
            res = _diff_mono(c, b)
            if res is None:
                continue
            mono, k = res
            new = tuple(mono[i] + a[i] for i in range(self.n))
            val = out.get(new, Fraction(0)) + oc * k
            if val:
                out[new] = val
            elif new in out:
                del out[new]
        return out

    # ---- display ----

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"WeylElement({self.n}, {render(self)!r})"


def _diff_mono(c, b):
    """d^b applied to x^c: None if it vanishes, else ((c - b), falling-factorial)."""
    k = 1
    new = []
    for ci, bi in zip(c, b):
        if ci < bi:
            return None
        k *= _falling(ci, bi)
        new.append(ci - bi)
    return tuple(new), k


class SymbolPolynomial:
    """Commutative polynomial in x_1..x_n, xi_1..xi_n over the rationals.

    The image of an operator's top-order part in the associated graded
    ring of the order filtration; xi_i stands for the class of d_i.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    clean[mono] = coeff
        self.terms = clean

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if self.n != other.n:
            raise InputError("mixed variable counts")
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + coeff
        return SymbolPolynomial(self.n, terms)

    def __neg__(self):
        return SymbolPolynomial(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.n != other.n:
            raise InputError("mixed variable counts")
        terms = {}
        for (a, u), cf in self.terms.items():
            for (c, v), cg in other.terms.items():
                mono = (
                    tuple(a[i] + c[i] for i in range(self.n)),
                    tuple(u[i] + v[i] for i in range(self.n)),
                )
                terms[mono] = terms.get(mono, Fraction(0)) + cf * cg
        return SymbolPolynomial(self.n, terms)

    def __eq__(self, other):
        return (
            isinstance(other, SymbolPolynomial)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, u), coeff in sorted(
            self.terms.items(), key=lambda t: _display_key(t[0]), reverse=True
        ):
            factors = []
            for i, e in enumerate(a):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e:
                    factors.append(f"x{i + 1}^{e}")
            for i, e in enumerate(u):
                if e == 1:
                    factors.append(f"xi{i + 1}")
                elif e:
                    factors.append(f"xi{i + 1}^{e}")
            parts.append(_format_term(coeff, factors))
        return _join_terms(parts)

    __repr__ = __str__


def monomials_of_degree(n: int, d: int):
    """All exponent tuples of length n with entry sum d, in a fixed order."""
    if d < 0:
        return []
    if n == 1:
        return [(d,)]
    out = []
    for head in range(d, -1, -1):
        for tail in monomials_of_degree(n - 1, d - head):
            out.append((head,) + tail)
    return out


def _format_term(coeff, factors):
    """One rendered term, e.g. '3/2*x1^2*d2'; sign kept on the coefficient."""
    if not factors:
        return str(coeff)
    if coeff == 1:
        return "*".join(factors)
    if coeff == -1:
        return "-" + "*".join(factors)
    return str(coeff) + "*" + "*".join(factors)


def _join_terms(parts):
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


def render(f: WeylElement) -> str:
    """Canonical text form, parseable by the expression parser."""
    if f.is_zero():
        return "0"
    parts = []
    for (a, b), coeff in f.sorted_terms():
        factors = []
        for i, e in enumerate(a):
            if e == 1:
                factors.append(f"x{i + 1}")
            elif e:
                factors.append(f"x{i + 1}^{e}")
        for i, e in enumerate(b):
            if e == 1:
                factors.append(f"d{i + 1}")
            elif e:
                factors.append(f"d{i + 1}^{e}")
        parts.append(_format_term(coeff, factors))
    return _join_terms(parts)
