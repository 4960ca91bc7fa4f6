"""The twisted differential d + H and the parity-graded twisted cohomology.

The twist H is a sum of closed odd-degree forms H_3 + H_5 + ..., acting by
left exterior multiplication.  The operator D = d + H is not homogeneous for
the integer grading but is homogeneous for the mod-2 grading, where it
squares to zero; its kernel-mod-image on each parity is the twisted
cohomology.

This module also provides the graded block machinery shared by the spectral
sequence and the relative complexes: `BlockSpace` packs a range of degrees
into one coordinate space, and `DOperator` assembles the matrix of D between
any two degree ranges, with truncation.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .cdga import CdgaModel, Form
from .linalg import (
    Mat,
    QuotientSpace,
    Vec,
    image,
    kernel,
    vec_concat,
    vec_is_zero,
    zero_vec,
)


class TwistError(Exception):
    """An invalid twisting form."""


class TwistForm:
    """A twist H stored per homogeneous odd degree.

    Every component must be closed, of odd degree between 3 and the model's
    top degree.  Degree-1 components are rejected: the twisted theory starts
    at H_3 and the first-page structure relies on that.
    """

    __slots__ = ("model", "components")

    def __init__(self, model: CdgaModel, components: dict[int, Vec]):
        self.model = model
        self.components = {
            p: v for p, v in sorted(components.items()) if not vec_is_zero(v)
        }

    @property
    def is_zero(self) -> bool:
        return not self.components

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(self.components)

    def component_form(self, p: int) -> Form:
        if p in self.components:
            return Form(self.model, {p: self.components[p]})
        return self.model.zero_form()

    def form(self) -> Form:
        return Form(self.model, dict(self.components))

    def single_degree(self) -> Optional[int]:
        """The degree 2s+1 when H has exactly one component, else None."""
        if len(self.components) == 1:
            return next(iter(self.components))
        return None

    def describe(self) -> str:
        if self.is_zero:
            return "0"
        return str(self.form())

    def __eq__(self, other):
        return (
            isinstance(other, TwistForm)
            and self.model is other.model
            and self.components == other.components
        )

    def __repr__(self):
        return f"TwistForm({self.describe()})"


def make_twist(model: CdgaModel, parts: Sequence[Form]) -> TwistForm:
    """Validate homogeneous odd closed forms of degree >= 3 into a twist."""
    components: dict[int, Vec] = {}
    for part in parts:
        if part.is_zero:
            continue
        if not part.is_homogeneous:
            raise TwistError("twist parts must be homogeneous; split them by degree")
        p = part.degree
        if p % 2 == 0:
            raise TwistError(f"twist component of even degree {p}")
        if p < 3:
            raise TwistError("twist components must have degree >= 3")
        if not part.d().is_zero:
            raise TwistError(f"twist component of degree {p} is not closed")
        v = part.component(p)
        components[p] = (
            tuple(a + b for a, b in zip(components[p], v)) if p in components else v
        )
    return TwistForm(model, components)


def parse_twist(model: CdgaModel, expr: str) -> TwistForm:
    """Build a twist from a wedge expression, split into homogeneous parts."""
    f = model.parse_form(expr)
    return make_twist(model, [f.homogeneous_part(p) for p in f.degrees])


def apply_D(H: TwistForm, x: Form) -> Form:
    """The twisted differential D x = d x + H wedge x."""
    return x.d() + H.form().wedge(x)


# ---------------------------------------------------------------------------
# graded blocks


class BlockSpace:
    """A list of degrees of a model packed into one coordinate space."""

    __slots__ = ("model", "degrees", "offsets", "total_dim")

    def __init__(self, model: CdgaModel, degrees: Iterable[int]):
        self.model = model
        self.degrees = tuple(degrees)
        assert len(set(self.degrees)) == len(self.degrees)
        offs, t = {}, 0
        for p in self.degrees:
            offs[p] = t
            t += model.dim(p)
        self.offsets = offs
        self.total_dim = t

    def pack(self, f: Form) -> Vec:
        for p in f.degrees:
            if p not in self.offsets:
                raise ValueError(f"form has a degree-{p} component outside the block")
        return vec_concat([f.component(p) for p in self.degrees])

    def unpack(self, v: Vec) -> Form:
        assert len(v) == self.total_dim
        parts = {}
        for p in self.degrees:
            o = self.offsets[p]
            parts[p] = v[o : o + self.model.dim(p)]
        return Form(self.model, parts)

    def __repr__(self):
        return f"BlockSpace(degrees={self.degrees}, dim={self.total_dim})"


class DOperator:
    """The twisted differential assembled from graded blocks.

    ``block(src, dst)`` is the matrix of the degree-(dst-src) piece of
    D = d + H: the differential for dst == src+1 and wedging by the
    degree-(dst-src) twist component otherwise.  ``matrix`` stacks the blocks
    between two degree lists, which silently truncates whatever falls
    outside the codomain; that is exactly the induced operator on a quotient
    complex of the degree filtration.
    """

    def __init__(self, model: CdgaModel, H: TwistForm):
        if H.model is not model:
            raise ValueError("twist belongs to a different model")
        self.model = model
        self.H = H
        self._wedge_mats: dict[int, dict[int, Mat]] = {}
        for h_deg, h_vec in H.components.items():
            h_form = Form(model, {h_deg: h_vec})
            per_src = {}
            for src in range(model.top_degree + 1):
                dst = src + h_deg
                if dst > model.top_degree or model.dim(src) == 0:
                    continue
                cols = [
                    h_form.wedge(model.basis_form(model.label_of(src, i))).component(dst)
                    for i in range(model.dim(src))
                ]
                per_src[src] = Mat.from_cols(cols, rows=model.dim(dst))
            self._wedge_mats[h_deg] = per_src

    def block(self, src: int, dst: int) -> Optional[Mat]:
        """The (dst, src) block of D, or None when it is structurally zero."""
        if dst == src + 1:
            return self.model.d_mat(src)
        shift = dst - src
        if shift in self._wedge_mats:
            return self._wedge_mats[shift].get(src)
        return None

    def matrix(self, domain: BlockSpace, codomain: BlockSpace) -> Mat:
        rows = codomain.total_dim
        cols = domain.total_dim
        grid = [[None] * len(domain.degrees) for _ in codomain.degrees]
        for sj, src in enumerate(domain.degrees):
            for di, dst in enumerate(codomain.degrees):
                grid[di][sj] = self.block(src, dst)
        data = []
        for di, dst in enumerate(codomain.degrees):
            ddim = self.model.dim(dst)
            for r in range(ddim):
                row = []
                for sj, src in enumerate(domain.degrees):
                    b = grid[di][sj]
                    if b is None:
                        row.extend(zero_vec(self.model.dim(src)))
                    else:
                        row.extend(b.data[r])
                data.append(row)
        return Mat(data, cols=cols)

    def apply(self, x: Form) -> Form:
        return apply_D(self.H, x)


# ---------------------------------------------------------------------------
# the mod-2 graded complex and its cohomology


class ParityComplex:
    """The whole model split by parity, with the two blocks of D.

    D o D = 0 is asserted on construction for both parities.
    """

    def __init__(self, model: CdgaModel, H: TwistForm):
        self.model = model
        self.H = H
        self.op = DOperator(model, H)
        n = model.top_degree
        self.even = BlockSpace(model, [p for p in range(n + 1) if p % 2 == 0])
        self.odd = BlockSpace(model, [p for p in range(n + 1) if p % 2 == 1])
        self.d_even_to_odd = self.op.matrix(self.even, self.odd)
        self.d_odd_to_even = self.op.matrix(self.odd, self.even)
        if not (self.d_odd_to_even @ self.d_even_to_odd).is_zero():
            raise TwistError("D o D != 0 on the even part")
        if not (self.d_even_to_odd @ self.d_odd_to_even).is_zero():
            raise TwistError("D o D != 0 on the odd part")

    def space(self, parity: int) -> BlockSpace:
        return self.even if parity % 2 == 0 else self.odd

    def d_from(self, parity: int) -> Mat:
        return self.d_even_to_odd if parity % 2 == 0 else self.d_odd_to_even

    def cohomology(self, parity: int) -> QuotientSpace:
        return QuotientSpace(
            kernel(self.d_from(parity)), image(self.d_from(1 - parity % 2))
        )


class TwistedCohomology:
    """Kernel-mod-image of D on both parities, with canonical representatives."""

    def __init__(self, complex_: ParityComplex):
        self.complex = complex_
        self.h_even = complex_.cohomology(0)
        self.h_odd = complex_.cohomology(1)

    @property
    def dims(self) -> tuple[int, int]:
        return (self.h_even.dim, self.h_odd.dim)

    def representatives(self, parity: int) -> list[Form]:
        q = self.h_even if parity % 2 == 0 else self.h_odd
        space = self.complex.space(parity)
        return [space.unpack(r) for r in q.coset_reps]

    def __repr__(self):
        return f"TwistedCohomology(even={self.h_even.dim}, odd={self.h_odd.dim})"


def twisted_cohomology(model: CdgaModel, H: TwistForm) -> TwistedCohomology:
    """Compute the twisted cohomology of (model, H) on both parities."""
    return TwistedCohomology(ParityComplex(model, H))
