"""Left Groebner bases in free modules over D_n, syzygies, and resolutions.

Buchberger's algorithm carries over to the Weyl algebra because the term
orders in use refine total degree, which keeps leading monomials
multiplicative: lm(f*g) = lm(f)*lm(g) as commutative monomials, with all
commutator corrections strictly smaller.  S-pair reductions therefore
behave as in the commutative case, and tracking their cofactors yields a
generating set of the left syzygy module (Schreyer).

Free modules are graded with the shift convention D(c)_e = D_{c+e}: an
element whose component l has operator degree w sits in module degree
w - c_l, and a homogeneous row of degree e becomes a generator of the
next free module with shift -e.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, InternalError
from .orders import DEFAULT_ORDER, ModuleOrder
from .weyl import ANY_DEGREE, WeylElement, mono_mul


class FreeElement:
    """Sparse element of the free module D^beta.

    Terms map (component, a, b) to a nonzero rational coefficient.
    """

    __slots__ = ("n", "beta", "terms")

    def __init__(self, n: int, beta: int, terms=None):
        self.n = n
        self.beta = beta
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    clean[mono] = coeff
        self.terms = clean

    @classmethod
    def from_components(cls, components) -> "FreeElement":
        components = list(components)
        if not components:
            raise InputError("a free element needs at least one component")
        n = components[0].n
        terms = {}
        for l, comp in enumerate(components):
            if comp.n != n:
                raise InputError("mixed variable counts among components")
            for (a, b), coeff in comp.terms.items():
                terms[(l, a, b)] = coeff
        return cls(n, len(components), terms)

    def components(self) -> list:
        out = [dict() for _ in range(self.beta)]
        for (l, a, b), coeff in self.terms.items():
            out[l][(a, b)] = coeff
        return [WeylElement(self.n, t) for t in out]

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + coeff
        return FreeElement(self.n, self.beta, terms)

    def __neg__(self):
        return FreeElement(self.n, self.beta, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FreeElement":
        c = Fraction(c)
        return FreeElement(self.n, self.beta, {m: c * v for m, v in self.terms.items()})

    def term_mul(self, coeff, mono) -> "FreeElement":
        """Left-multiply by coeff * x^p d^q with mono = (p, q)."""
        p, q = mono
        coeff = Fraction(coeff)
        terms = {}
        for (l, a, b), val in self.terms.items():
            for (na, nb), k in mono_mul(p, q, a, b):
                key = (l, na, nb)
                terms[key] = terms.get(key, Fraction(0)) + coeff * val * k
        return FreeElement(self.n, self.beta, terms)

    def lead(self, order: ModuleOrder):
        if not self.terms:
            raise InternalError("zero element has no leading term")
        mono = max(self.terms, key=order.key)
        return mono, self.terms[mono]

    def __eq__(self, other):
        return (
            isinstance(other, FreeElement)
            and self.n == other.n
            and self.beta == other.beta
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, self.beta, frozenset(self.terms.items())))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components()) + ")"

    __repr__ = __str__


def left_mul(op: WeylElement, f: FreeElement) -> FreeElement:
    """op * f, multiplying every component on the left."""
    out = FreeElement(f.n, f.beta)
    for (a, b), coeff in op.terms.items():
        out = out + f.term_mul(coeff, (a, b))
    return out


def free_degree(f: FreeElement, shifts):
    """Module degree of f in the free module with the given shifts.

    Returns ANY_DEGREE for zero and None when f is not homogeneous.
    """
    if not f.terms:
        return ANY_DEGREE
    degs = {sum(a) - sum(b) - shifts[l] for (l, a, b) in f.terms}
    if len(degs) == 1:
        return degs.pop()
    return None


def _divides(small, big):
    sl, sa, sb = small
    bl, ba, bb = big
    if sl != bl:
        return False
    return all(x <= y for x, y in zip(sa, ba)) and all(
        x <= y for x, y in zip(sb, bb)
    )


def _reduce(f: FreeElement, basis, order: ModuleOrder, want_cofactors=False):
    """Total normal form; optionally the cofactors c with f = sum c_k g_k + r."""
    key = order.key
    leads = [g.lead(order) for g in basis]
    rem = dict(f.terms)
    cofs = [dict() for _ in basis] if want_cofactors else None
    while True:
        target = None
        for mono in sorted(rem, key=key, reverse=True):
            for idx, (lm, _lc) in enumerate(leads):
                if _divides(lm, mono):
                    target = (mono, idx)
                    break
            if target:
                break
        if target is None:
            break
        mono, idx = target
        (gl, ga, gb), lc = leads[idx]
        _, a, b = mono
        u = (
            tuple(x - y for x, y in zip(a, ga)),
            tuple(x - y for x, y in zip(b, gb)),
        )
        c = rem[mono] / lc
        for (tl, ta, tb), gc in basis[idx].terms.items():
            for (na, nb), k in mono_mul(u[0], u[1], ta, tb):
                tk = (tl, na, nb)
                val = rem.get(tk, Fraction(0)) - c * gc * k
                if val:
                    rem[tk] = val
                else:
                    rem.pop(tk, None)
        if want_cofactors:
            cofs[idx][u] = cofs[idx].get(u, Fraction(0)) + c
    remainder = FreeElement(f.n, f.beta, rem)
    if want_cofactors:
        return remainder, [WeylElement(f.n, t) for t in cofs]
    return remainder


def normal_form(f: FreeElement, gb, order: ModuleOrder = DEFAULT_ORDER) -> FreeElement:
    """Remainder of f on division by gb; no term divisible by an lm of gb."""
    if not gb:
        return f
    return _reduce(f, list(gb), order)


def _s_pair(gi: FreeElement, gj: FreeElement, order: ModuleOrder):
    """S-element of two rows with a common leading component, plus multipliers."""
    (li, ai, bi), ci = gi.lead(order)
    (lj, aj, bj), cj = gj.lead(order)
    if li != lj:
        return None
    la = tuple(max(x, y) for x, y in zip(ai, aj))
    lb = tuple(max(x, y) for x, y in zip(bi, bj))
    ui = (tuple(x - y for x, y in zip(la, ai)), tuple(x - y for x, y in zip(lb, bi)))
    uj = (tuple(x - y for x, y in zip(la, aj)), tuple(x - y for x, y in zip(lb, bj)))
    s = gi.term_mul(Fraction(1, 1) / ci, ui) - gj.term_mul(Fraction(1, 1) / cj, uj)
    return s, (ui, ci), (uj, cj), sum(la) + sum(lb)


def left_groebner(gens, order: ModuleOrder = DEFAULT_ORDER) -> list:
    """Reduced left Groebner basis of the submodule generated by gens.

    Monic, inter-reduced, sorted by increasing leading monomial; empty
    input returns the empty basis.  Homogeneous input yields a
    homogeneous basis.
    """
    basis = [g for g in gens if not g.is_zero()]
    if not basis:
        return []
    basis = [g.scale(Fraction(1, 1) / g.lead(order)[1]) for g in basis]
    heap = []
    counter = 0

    def push_pairs(new_idx):
        nonlocal counter
        for i in range(new_idx):
            sp = _s_pair(basis[i], basis[new_idx], order)
            if sp is None:
                continue
            _, _, _, deg = sp
            heapq.heappush(heap, (deg, counter, i, new_idx))
            counter += 1

    for idx in range(1, len(basis)):
        for i in range(idx):
            sp = _s_pair(basis[i], basis[idx], order)
            if sp is not None:
                heapq.heappush(heap, (sp[3], counter, i, idx))
                counter += 1

    while heap:
        _, _, i, j = heapq.heappop(heap)
        sp = _s_pair(basis[i], basis[j], order)
        if sp is None:
            continue
        remainder = _reduce(sp[0], basis, order)
        if remainder.is_zero():
            continue
        remainder = remainder.scale(Fraction(1, 1) / remainder.lead(order)[1])
        basis.append(remainder)
        push_pairs(len(basis) - 1)

    return _reduced_basis(basis, order)


def _reduced_basis(basis, order: ModuleOrder) -> list:
    key = order.key
    # minimal: drop rows whose lead is divisible by an earlier (smaller) lead
    basis = sorted(basis, key=lambda g: key(g.lead(order)[0]))
    minimal = []
    for g in basis:
        lm = g.lead(order)[0]
        if any(_divides(h.lead(order)[0], lm) for h in minimal):
            continue
        minimal.append(g)
    # tail-reduce every row against the others until stable
    changed = True
    while changed:
        changed = False
        for i in range(len(minimal)):
            others = minimal[:i] + minimal[i + 1 :]
            if not others:
                continue
            r = _reduce(minimal[i], others, order)
            if r != minimal[i]:
                changed = True
                if r.is_zero():
                    del minimal[i]
                else:
                    minimal[i] = r.scale(Fraction(1, 1) / r.lead(order)[1])
                break
    return sorted(minimal, key=lambda g: key(g.lead(order)[0]))


def syzygies(gb, order: ModuleOrder = DEFAULT_ORDER) -> list:
    """Generators of the left syzygy module of a Groebner basis.

    Each returned s (an element of D^len(gb)) satisfies
    sum_l s_l * gb_l = 0, verified here by direct multiplication.
    """
    gb = list(gb)
    if not gb:
        return []
    n = gb[0].n
    s_count = len(gb)
    pairs = []
    for i in range(s_count):
        for j in range(i + 1, s_count):
            sp = _s_pair(gb[i], gb[j], order)
            if sp is not None:
                pairs.append((sp[3], i, j))
    out = []
    for _, i, j in sorted(pairs):
        s, (ui, ci), (uj, cj), _ = _s_pair(gb[i], gb[j], order)
        remainder, cofs = _reduce(s, gb, order, want_cofactors=True)
        if not remainder.is_zero():
            raise InternalError("syzygies require a Groebner basis as input")
        terms = {}
        for k, cof in enumerate(cofs):
            for (a, b), coeff in cof.terms.items():
                terms[(k, a, b)] = terms.get((k, a, b), Fraction(0)) - coeff
        terms[(i,) + ui] = terms.get((i,) + ui, Fraction(0)) + Fraction(1, 1) / ci
        terms[(j,) + uj] = terms.get((j,) + uj, Fraction(0)) - Fraction(1, 1) / cj
        syz = FreeElement(n, s_count, terms)
        if syz.is_zero():
            continue
        check = FreeElement(n, gb[0].beta)
        for l, comp in enumerate(syz.components()):
            check = check + left_mul(comp, gb[l])
        if not check.is_zero():
            raise InternalError("computed syzygy fails verification")
        out.append(syz)
    return out


@dataclass(frozen=True)
class PresentedModule:
    """Graded left module given as the cokernel of a homogeneous relation matrix.

    shifts are the grading shifts of the ambient free module D^beta;
    relations are homogeneous rows in that module.
    """

    n: int
    shifts: tuple
    relations: tuple

    def __post_init__(self):
        for idx, rel in enumerate(self.relations):
            if rel.n != self.n or rel.beta != len(self.shifts):
                raise InputError(f"relation row {idx} has inconsistent shape")
            deg = free_degree(rel, self.shifts)
            if deg is None:
                raise InputError(
                    f"relation row {idx} is not homogeneous for shifts {self.shifts}"
                )

    @classmethod
    def from_strings(cls, n: int, relation_strings, shifts=None) -> "PresentedModule":
        """Build from comma-separated component expressions per relation."""
        from .expr import parse

        rows = []
        for text in relation_strings:
            comps = [parse(part.strip(), n) for part in text.split(",")]
            rows.append(comps)
        if shifts is None:
            beta = len(rows[0]) if rows else 1
            shifts = (0,) * beta
        shifts = tuple(shifts)
        beta = len(shifts)
        relations = []
        for idx, comps in enumerate(rows):
            if len(comps) != beta:
                raise InputError(
                    f"relation row {idx} has {len(comps)} components, expected {beta}"
                )
            relations.append(FreeElement.from_components(comps))
        return cls(n, shifts, tuple(relations))

    @classmethod
    def cyclic(cls, n: int, relation_strings) -> "PresentedModule":
        """Quotient of D by the left ideal generated by the given expressions."""
        return cls.from_strings(n, relation_strings, (0,))


@dataclass
class GradedResolution:
    """Chain of free graded modules with homogeneous matrices.

    shifts[j] lists the grading shifts of level j; matrices[j-1] is the
    level-j matrix B_j whose row r is the image in level j-1 of the r-th
    generator of level j.  Rows of B_1 generate the relation submodule of
    the presentation (after Groebner completion), and the rows of each
    B_{j+1} generate the syzygies of the rows of B_j.
    """

    n: int
    shifts: list
    matrices: list

    @property
    def length(self) -> int:
        return len(self.matrices)

    def beta(self, j: int) -> int:
        return len(self.shifts[j])

    def rows_as_elements(self, j: int) -> list:
        """Rows of B_j as elements of the level j-1 free module."""
        beta_prev = self.beta(j - 1)
        out = []
        for row in self.matrices[j - 1]:
            terms = {}
            for l in range(beta_prev):
                for (a, b), coeff in row[l].terms.items():
                    terms[(l, a, b)] = coeff
            out.append(FreeElement(self.n, beta_prev, terms))
        return out

    def check(self):
        """Assert homogeneity bookkeeping and B_j B_{j+1} = 0, exactly."""
        for j in range(1, self.length + 1):
            rows = self.matrices[j - 1]
            if len(rows) != self.beta(j):
                raise InternalError(f"level {j} rank mismatch")
            for r, row in enumerate(rows):
                for l in range(self.beta(j - 1)):
                    entry = row[l]
                    if entry.is_zero():
                        continue
                    want = self.shifts[j - 1][l] - self.shifts[j][r]
                    if entry.homogeneous_degree() != want:
                        raise InternalError(
                            f"entry ({r}, {l}) of level {j} has degree "
                            f"{entry.homogeneous_degree()}, expected {want}"
                        )
        for j in range(1, self.length):
            lower = self.rows_as_elements(j)
            for row in self.matrices[j]:
                acc = FreeElement(self.n, self.beta(j - 1))
                for l, entry in enumerate(row):
                    if not entry.is_zero():
                        acc = acc + left_mul(entry, lower[l])
                if not acc.is_zero():
                    raise InternalError(
                        f"composite of levels {j + 1} and {j} is nonzero"
                    )


def graded_free_resolution(
    module: PresentedModule, length: int, order: ModuleOrder = DEFAULT_ORDER
) -> GradedResolution:
    """Resolution of the presented module to the requested homological length.

    Level 1 is the Groebner completion of the relations (same cokernel);
    each further level is the Groebner completion of the syzygies of the
    previous one, so image equals kernel at every interior level.
    """
    if length < 1:
        raise InputError("resolution length must be at least 1")
    shifts = [tuple(module.shifts)]
    matrices = []
    current = list(module.relations)
    for j in range(1, length + 1):
        gb = left_groebner(current, order)
        level_shifts = []
        rows = []
        for g in gb:
            deg = free_degree(g, shifts[j - 1])
            if deg is None or deg is ANY_DEGREE:
                raise InternalError("non-homogeneous row in resolution step")
            level_shifts.append(-deg)
            rows.append(g.components())
        shifts.append(tuple(level_shifts))
        matrices.append(rows)
        current = syzygies(gb, order) if gb else []
    resolution = GradedResolution(module.n, shifts, matrices)
    resolution.check()
    return resolution
