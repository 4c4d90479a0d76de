"""Term orders on normally ordered monomials and their module extensions.

A ring monomial is an exponent pair (a, b).  Orders are realized as key
functions: monomials compare the way their keys compare, and the leading
term of an element is the one with the largest key.  Both orders below
refine total degree |a| + |b|, which makes leading monomials
multiplicative in D_n (commutator corrections have strictly smaller
degree), and both are well-orders.
"""

from __future__ import annotations


class TermOrder:
    """Ring order: 'degrevlex' on (a, b), or 'filtration' (|b| first)."""

    def __init__(self, kind: str):
        if kind not in ("degrevlex", "filtration"):
            raise ValueError(f"unknown order kind {kind!r}")
        self.kind = kind

    def key(self, mono):
        a, b = mono
        joint = a + b
        drl = (sum(joint), tuple(-e for e in reversed(joint)))
        if self.kind == "degrevlex":
            return drl
        return (sum(b), drl)

    def __repr__(self):
        return f"TermOrder({self.kind!r})"


DEGREVLEX = TermOrder("degrevlex")
FILTRATION = TermOrder("filtration")


class ModuleOrder:
    """Extension to free-module monomials (l, a, b).

    Compares the ring monomial first, breaking ties by smallest
    component index.
    """

    def __init__(self, ring: TermOrder = DEGREVLEX):
        self.ring = ring

    def key(self, mono):
        l, a, b = mono
        return (self.ring.key((a, b)), -l)

    def __repr__(self):
        return f"ModuleOrder({self.ring!r})"


DEFAULT_ORDER = ModuleOrder(DEGREVLEX)
FILTRATION_ORDER = ModuleOrder(FILTRATION)
