"""Indeterminacy of page classes via relative complexes and connecting maps.

A class on page r at column p is only defined up to a subgroup of the
ordinary cohomology H^p: the image of the connecting homomorphism of

    0 -> K_p/K_{p+1} -> K_{p-r+1}/K_{p+1} -> K_{p-r+1}/K_p -> 0

modulo exact forms.  This module computes that subgroup constructively on
canonical representatives, and also rebuilds every page cell through the
cohomological description

    Z_r = delta^{-1}( image of H(K_{p+r}) -> H(K_{p+1}) )
    B_r = j^*( kernel of H(K_p) -> H(K_{p-r+1}) )

inside E_1^{p,q} = Omega^p, which gives an independent route to the page
dimensions computed by the zig-zag engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cdga import CdgaModel, Form
from .linalg import (
    Mat,
    QuotientSpace,
    SubspaceBasis,
    Vec,
    image,
    kernel,
    preimage,
    span_in_quotient,
)
from .spectral import SpectralSequence
from .twist import BlockSpace, DOperator, TwistForm


class RelativeComplex:
    """The quotient complex K_a/K_b (degrees a..b-1) with the induced D.

    D is induced by dropping output components of degree >= b; it is
    well-defined since D raises degree.  For b = a+1 the induced D is zero.
    Cohomology is parity-graded (the parity of the total degree).
    """

    def __init__(self, model: CdgaModel, H: TwistForm, a: int, b: int, op: Optional[DOperator] = None):
        if not (0 <= a < b <= model.top_degree + 1):
            raise ValueError(f"need 0 <= a < b <= {model.top_degree + 1}, got a={a}, b={b}")
        self.model = model
        self.H = H
        self.a = a
        self.b = b
        self.op = op if op is not None else DOperator(model, H)
        degs = range(a, b)
        self.spaces = (
            BlockSpace(model, [p for p in degs if p % 2 == 0]),
            BlockSpace(model, [p for p in degs if p % 2 == 1]),
        )
        self.d = (
            self.op.matrix(self.spaces[0], self.spaces[1]),
            self.op.matrix(self.spaces[1], self.spaces[0]),
        )
        self._cohom: dict[int, QuotientSpace] = {}

    def space(self, parity: int) -> BlockSpace:
        return self.spaces[parity % 2]

    def d_from(self, parity: int) -> Mat:
        return self.d[parity % 2]

    def cohomology(self, parity: int) -> QuotientSpace:
        parity %= 2
        if parity not in self._cohom:
            self._cohom[parity] = QuotientSpace(
                kernel(self.d_from(parity)), image(self.d_from(1 - parity))
            )
        return self._cohom[parity]

    def pack(self, f: Form, parity: int) -> Vec:
        return self.space(parity).pack(self._restrict(f, parity))

    def unpack(self, v: Vec, parity: int) -> Form:
        return self.space(parity).unpack(v)

    def _restrict(self, f: Form, parity: int) -> Form:
        keep = set(self.space(parity).degrees)
        return Form(self.model, {p: v for p, v in f.parts.items() if p in keep})

    def class_of(self, f: Form, parity: int) -> Vec:
        return self.cohomology(parity).project(self.pack(f, parity))

    def __repr__(self):
        return f"RelativeComplex(K_{self.a}/K_{self.b})"


def relative_cohomology(
    model: CdgaModel, H: TwistForm, a: int, b: int, parity: int
) -> QuotientSpace:
    """Cohomology of (K_a/K_b, D) in the given parity."""
    return RelativeComplex(model, H, a, b).cohomology(parity)


def induced_map(src: RelativeComplex, dst: RelativeComplex, parity: int) -> Mat:
    """The map on cohomology induced by include-then-project on chains.

    Valid whenever dst.a <= src.a and restricting a src-cocycle to the dst
    degree range yields a dst-cocycle, which holds for the inclusion maps
    (same b) and the quotient projections (same a) used here.
    """
    hs = src.cohomology(parity)
    hd = dst.cohomology(parity)
    cols = []
    for rep in hs.coset_reps:
        f = src.unpack(rep, parity)
        cols.append(hd.project(dst.pack(f, parity)))
    return Mat.from_cols(cols, rows=hd.dim)


def connecting_map(
    model: CdgaModel, H: TwistForm, a: int, m: int, b: int, parity: int,
    src: Optional[RelativeComplex] = None, dst: Optional[RelativeComplex] = None,
) -> Mat:
    """Connecting homomorphism H^par(K_a/K_m) -> H^(par+1)(K_m/K_b).

    For the short exact sequence 0 -> K_m/K_b -> K_a/K_b -> K_a/K_m -> 0:
    lift a relative cocycle verbatim, apply D, truncate to degrees [m, b).
    """
    assert 0 <= a < m < b <= model.top_degree + 2
    src = src if src is not None else RelativeComplex(model, H, a, m)
    dst = dst if dst is not None else RelativeComplex(model, H, m, min(b, model.top_degree + 1))
    hs = src.cohomology(parity)
    hd = dst.cohomology((parity + 1) % 2)
    cols = []
    for rep in hs.coset_reps:
        w = src.unpack(rep, parity)
        dw = w.d() + H.form().wedge(w)
        cols.append(hd.project(dst.pack(dw, (parity + 1) % 2)))
    return Mat.from_cols(cols, rows=hd.dim)


def connecting_delta_bar(
    model: CdgaModel, H: TwistForm, p: int, r: int, parity: int
) -> Mat:
    """The connecting map H^par(K_{p-r+1}/K_p) -> H^(par+1)(K_p/K_{p+1}).

    The target of the short exact sequence used for indeterminacy; its
    image, modulo exact forms, is the indeterminacy subgroup at (p, r).
    For r = 2 it coincides with the first-page differential d.
    """
    if r < 2:
        raise ValueError("connecting_delta_bar needs r >= 2")
    if not (0 <= p <= model.top_degree):
        raise ValueError(f"column {p} outside 0..{model.top_degree}")
    a = max(0, p - r + 1)
    if a == p:  # the source complex K_p/K_p is zero
        dst = RelativeComplex(model, H, p, p + 1)
        return Mat.zeros(dst.cohomology((parity + 1) % 2).dim, 0)
    return connecting_map(model, H, a, p, p + 1, parity)


@dataclass(frozen=True)
class IndeterminacySubgroup:
    """The subgroup of H^p in which representatives of a page class move.

    ``group`` is the quotient (im delta_bar)/(im d); ``in_h`` spans the same
    subgroup in the class coordinates of H^p, for membership tests.
    """

    p: int
    r: int
    group: QuotientSpace
    in_h: SubspaceBasis
    h: QuotientSpace

    @property
    def dim(self) -> int:
        return self.group.dim

    def contains_class(self, f: Form) -> bool:
        """Whether a closed degree-p form's cohomology class is in the subgroup."""
        if f.is_zero:
            return True
        return self.in_h.contains(self.h.project(f.component(self.p)))


def indeterminacy_subgroup(
    model: CdgaModel, H: TwistForm, p: int, q: int, r: int
) -> IndeterminacySubgroup:
    """Indeterminacy of a class in E_r^{p,q} as a subgroup of H^p.

    Computed as im(delta_bar)/im(d); requires r >= 3 (for r = 2 the subgroup
    is trivial since delta_bar = d).
    """
    if r < 3:
        raise ValueError("indeterminacy_subgroup needs r >= 3")
    parity = (p + q - 1) % 2
    if p > model.top_degree:
        trivial = QuotientSpace(SubspaceBasis.zero(0), SubspaceBasis.zero(0))
        return IndeterminacySubgroup(p, r, trivial, SubspaceBasis.zero(0), trivial)
    h = model.de_rham(p)
    if q % 2 == 1:
        return IndeterminacySubgroup(
            p, r, QuotientSpace(h.sub, h.sub), SubspaceBasis.zero(h.dim), h
        )
    delta = connecting_delta_bar(model, H, p, r, parity)
    im_delta = image(delta)
    if not h.ambient.contains_space(im_delta):
        raise AssertionError("connecting image contains non-closed forms; engine bug")
    if not im_delta.contains_space(h.sub):
        raise AssertionError("exact forms escaped the connecting image; engine bug")
    group = QuotientSpace(im_delta, h.sub)
    in_h = span_in_quotient(h, list(im_delta.rows))
    return IndeterminacySubgroup(p, r, group, in_h, h)


def differential_indeterminacy(
    model: CdgaModel, H: TwistForm, p: int, q: int, t: int
) -> IndeterminacySubgroup:
    """Indeterminacy of d_{2t+3} values, a subgroup of H^{p+2t+3} (t >= 1)."""
    if t < 1:
        raise ValueError("differential_indeterminacy needs t >= 1")
    return indeterminacy_subgroup(model, H, p + 2 * t + 3, q - 2 * t - 2, 2 * t + 3)


# ---------------------------------------------------------------------------
# the cohomological page construction, for cross-checking the zig-zag route


class _Tower:
    """Cached relative complexes K_a/K_b for one (model, twist)."""

    def __init__(self, model: CdgaModel, H: TwistForm):
        self.model = model
        self.H = H
        self.op = DOperator(model, H)
        self._rc: dict[tuple[int, int], RelativeComplex] = {}

    def rc(self, a: int, b: int) -> RelativeComplex:
        b = min(b, self.model.top_degree + 1)
        key = (a, b)
        if key not in self._rc:
            self._rc[key] = RelativeComplex(self.model, self.H, a, b, op=self.op)
        return self._rc[key]


def zb_cell(
    model: CdgaModel, H: TwistForm, r: int, p: int, tower: Optional[_Tower] = None
) -> tuple[SubspaceBasis, SubspaceBasis]:
    """(Z_r, B_r) at column p (even q) through the cohomological description.

    Z_r is the delta-preimage of the classes coming from H(K_{p+r}); B_r is
    the j^*-image of the kernel of H(K_p) -> H(K_{p-r+1}).  Both live inside
    E_1^{p, even} = Omega^p.
    """
    if r < 2:
        raise ValueError("the cohomological description starts at r = 2")
    tower = tower if tower is not None else _Tower(model, H)
    n = model.top_degree
    dim_p = model.dim(p)
    parity = p % 2  # total parity of E_1^{p, even q}

    # delta: Omega^p -> H^(p+1 parity)(K_{p+1}) by x |-> class of D x
    if p + 1 <= n:
        k_next = tower.rc(p + 1, n + 1)
        h_next = k_next.cohomology((parity + 1) % 2)
        cols = []
        for i in range(dim_p):
            e = model.basis_form(model.label_of(p, i))
            de = e.d() + H.form().wedge(e)
            cols.append(h_next.project(k_next.pack(de, (parity + 1) % 2)))
        delta = Mat.from_cols(cols, rows=h_next.dim)
        if p + r <= n:
            k_far = tower.rc(p + r, n + 1)
            incl = induced_map(k_far, k_next, (parity + 1) % 2)
            z = preimage(delta, image(incl))
        else:
            z = kernel(delta)
    else:
        z = SubspaceBasis.full(dim_p)

    # B_r = j^*(ker[H(K_p) -> H(K_{p-r+1})])
    a = max(0, p - r + 1)
    k_p = tower.rc(p, n + 1)
    h_p = k_p.cohomology(parity)
    if a == p:
        ker_basis = SubspaceBasis.zero(h_p.dim)
    else:
        k_a = tower.rc(a, n + 1)
        ker_basis = kernel(induced_map(k_p, k_a, parity))
    b_vecs = []
    for coords in ker_basis.rows:
        z_form = k_p.unpack(h_p.lift(coords), parity)
        b_vecs.append(z_form.component(p))
    b = SubspaceBasis.span(dim_p, b_vecs)
    return z, b


@dataclass
class PageAgreement:
    passed: bool
    mismatches: list[tuple[int, int]] = field(default_factory=list)  # (r, p)


def page_agreement(ss: SpectralSequence, max_r: Optional[int] = None) -> PageAgreement:
    """Assert the cohomological Z_r/B_r route reproduces the zig-zag cells.

    Compares canonical subspace bases, not just dimensions, for every page
    and column.
    """
    tower = _Tower(ss.model, ss.H)
    out = PageAgreement(passed=True)
    top_r = max_r if max_r is not None else ss.max_page
    for r in range(2, top_r + 1):
        for p in range(ss.n + 1):
            z, b = zb_cell(ss.model, ss.H, r, p, tower)
            if z != ss.cycles(r, p) or b != ss.boundaries(r, p):
                out.passed = False
                out.mismatches.append((r, p))
    return out
