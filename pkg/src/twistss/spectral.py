"""The spectral sequence of the degree filtration, computed by zig-zags.

The filtration K_p (forms of degree >= p) of the twisted complex induces a
spectral sequence that is 2-periodic in q and concentrated in even q.  Cells
are realized directly at chain level:

* cycles  Z_r at (p, even q) are the degree-p forms x_p that extend to a
  zig-zag x = x_p + x_{p+2} + ... with D x in K_{p+r};
* boundaries B_r are the degree-p components of D w for w in K_{p-r+1} with
  D w in K_p;
* the cell E_r^{p,q} is Z_r / B_r with canonical echelon representatives.

A zig-zag tail is found by one stacked linear solve with free variables
zeroed, so lifting succeeds exactly when the class survives and the result
is deterministic.  The differential d_r reads off the degree-(p+r) component
of D x of a zig-zag lift of reach r.

Everything is a pure function of (model, twist); results are cached in the
`SpectralSequence` object, which is safe for concurrent reads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .cdga import CdgaModel, Form
from .linalg import (
    Mat,
    QuotientSpace,
    SubspaceBasis,
    Vec,
    image,
    kernel,
    solve_particular,
)
from .twist import BlockSpace, DOperator, TwistForm


class PageError(Exception):
    """Bad page index or a class that does not live on the requested page."""


class Filtration:
    """The decreasing degree filtration K_p = (forms of degree >= p).

    K_0 is the whole complex and K_{n+1} = 0.  Each level is split by the
    parity of the total degree; the twisted differential preserves every
    level and in fact shifts it, D(K_p) inside K_{p+1}, since all of its
    graded blocks raise degree by at least one.
    """

    def __init__(self, model: CdgaModel):
        self.model = model
        self.length = model.top_degree + 1

    def level_degrees(self, p: int, parity: Optional[int] = None) -> tuple[int, ...]:
        return tuple(
            q
            for q in range(max(0, p), self.model.top_degree + 1)
            if parity is None or q % 2 == parity
        )

    def level_dim(self, p: int, parity: Optional[int] = None) -> int:
        return sum(self.model.dim(q) for q in self.level_degrees(p, parity))

    def contains(self, p: int, f: Form) -> bool:
        return all(q >= p for q in f.degrees)

    def check_shift(self, op: DOperator) -> bool:
        """D(K_p) inside K_{p+1} for every level, checked block by block."""
        n = self.model.top_degree
        for src in range(n + 1):
            for dst in range(n + 1):
                if dst <= src and op.block(src, dst) is not None:
                    blk = op.block(src, dst)
                    if blk.rows and blk.cols and not blk.is_zero():
                        return False
        return True


@dataclass(frozen=True)
class ZigZag:
    """An inhomogeneous form x = x_p + x_{p+2} + ... with D x in K_{p+reach}."""

    p: int
    form: Form
    reach: int
    twist: TwistForm

    def dx(self) -> Form:
        return self.form.d() + self.twist.form().wedge(self.form)

    def leading_dx(self) -> Form:
        """The lowest-degree component of D x, the one d_r evaluates."""
        deg = self.p + self.reach
        if deg > self.form.model.top_degree:
            return self.form.model.zero_form()
        return self.dx().homogeneous_part(deg)


@dataclass(frozen=True)
class PageClass:
    """A class on page r at column p, in the cell's canonical coordinates."""

    r: int
    p: int
    coords: Vec

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


class SpectralPage:
    """A full page: per-column cells (even q) and the d_r matrices."""

    def __init__(self, r: int, cells: dict[int, QuotientSpace], d: dict[int, Mat], stable: bool):
        self.r = r
        self.cells = cells
        self.d = d
        self.stable = stable

    def dim(self, p: int, q: int = 0) -> int:
        if q % 2 == 1:
            return 0
        cell = self.cells.get(p)
        return cell.dim if cell is not None else 0

    def dims(self) -> dict[int, int]:
        return {p: c.dim for p, c in self.cells.items()}

    def total_dim(self, parity: Optional[int] = None) -> int:
        return sum(c.dim for p, c in self.cells.items() if parity is None or p % 2 == parity)

    def __repr__(self):
        nz = {p: c.dim for p, c in self.cells.items() if c.dim}
        return f"SpectralPage(r={self.r}, dims={nz}, stable={self.stable})"


@dataclass
class EvenVanishingReport:
    passed: bool
    checked: list[tuple[int, bool, bool]] = field(default_factory=list)
    # entries: (even r, d_r == 0, E_{r+1} == E_r)

    def __bool__(self):
        return self.passed


class SpectralSequence:
    """All pages, cycles/boundaries, lifts and differentials for (model, H)."""

    def __init__(self, model: CdgaModel, H: TwistForm):
        self.model = model
        self.H = H
        self.op = DOperator(model, H)
        self.n = model.top_degree
        self.max_page = self.n + 2
        self._cycles: dict[tuple[int, int], SubspaceBasis] = {}
        self._bounds: dict[tuple[int, int], SubspaceBasis] = {}
        self._cells: dict[tuple[int, int], QuotientSpace] = {}
        self._dmats: dict[tuple[int, int], Mat] = {}
        self._pages: dict[int, SpectralPage] = {}

    # -- D on zig-zags -------------------------------------------------------

    def apply_D(self, x: Form) -> Form:
        return x.d() + self.H.form().wedge(x)

    def zigzag_dx(self, z: ZigZag) -> Form:
        return self.apply_D(z.form)

    # -- chain-level cell pieces ----------------------------------------------

    def _check_r(self, r: int):
        if not (1 <= r <= self.max_page):
            raise PageError(f"page index {r} outside 1..{self.max_page}")

    def _tail_degrees(self, p: int) -> list[int]:
        return [q for q in range(p + 2, self.n + 1, 2)]

    def _condition_degrees(self, p: int, reach: int) -> list[int]:
        return [q for q in range(p + 1, min(p + reach, self.n + 1), 2)]

    def _compute_cycles(self, r: int, p: int) -> SubspaceBasis:
        dim_p = self.model.dim(p)
        conds = self._condition_degrees(p, r)
        if dim_p == 0:
            return SubspaceBasis.zero(0)
        if not conds:
            return SubspaceBasis.full(dim_p)
        dom = BlockSpace(self.model, [p] + self._tail_degrees(p))
        cod = BlockSpace(self.model, conds)
        phi = self.op.matrix(dom, cod)
        return SubspaceBasis.span(dim_p, [row[:dim_p] for row in kernel(phi).rows])

    def _compute_boundaries(self, r: int, p: int) -> SubspaceBasis:
        dim_p = self.model.dim(p)
        start = max(0, p - r + 1)
        if (p + 1 - start) % 2 != 0:
            start += 1
        dom_degs = [q for q in range(start, self.n + 1, 2)]
        if dim_p == 0 or not dom_degs:
            return SubspaceBasis.zero(dim_p)
        dom = BlockSpace(self.model, dom_degs)
        conds = [q for q in range(start + 1, p, 2)]
        if conds:
            psi = self.op.matrix(dom, BlockSpace(self.model, conds))
            lifts = kernel(psi)
        else:
            lifts = SubspaceBasis.full(dom.total_dim)
        proj = self.op.matrix(dom, BlockSpace(self.model, [p]))
        if not lifts.dim:
            return SubspaceBasis.zero(dim_p)
        return image(proj @ lifts.basis_matrix())

    def cycles(self, r: int, p: int) -> SubspaceBasis:
        """Z_r at column p: leading terms of zig-zags of reach r."""
        self._check_r(r)
        key = (r, p)
        if key not in self._cycles:
            self._cycles[key] = self._compute_cycles(r, p)
        return self._cycles[key]

    def boundaries(self, r: int, p: int) -> SubspaceBasis:
        """B_r at column p: degree-p components of D w, w in K_{p-r+1}, Dw in K_p."""
        self._check_r(r)
        key = (r, p)
        if key not in self._bounds:
            self._bounds[key] = self._compute_boundaries(r, p)
        return self._bounds[key]

    def precompute(self, max_r: Optional[int] = None, threads: int = 1):
        """Fill the cycle/boundary caches for pages 1..max_r.

        Cell pieces are pure functions of (r, p), so with threads > 1 they
        are computed concurrently and published into the cache afterwards.
        """
        top = min(max_r, self.max_page) if max_r else self.max_page
        keys = [
            (r, p)
            for r in range(1, top + 1)
            for p in range(self.n + 1)
            if (r, p) not in self._cells
        ]
        if threads > 1 and len(keys) > 1:
            from concurrent.futures import ThreadPoolExecutor

            def work(key):
                r, p = key
                return key, self._compute_cycles(r, p), self._compute_boundaries(r, p)

            with ThreadPoolExecutor(max_workers=threads) as pool:
                for key, z, b in pool.map(work, keys):
                    self._cycles.setdefault(key, z)
                    self._bounds.setdefault(key, b)
        for r, p in keys:
            self.cell(r, p)

    def cell(self, r: int, p: int, q: int = 0) -> QuotientSpace:
        """The cell E_r^{p,q}; cells with odd q are zero."""
        self._check_r(r)
        dim_p = self.model.dim(p) if 0 <= p <= self.n else 0
        if q % 2 == 1 or not (0 <= p <= self.n):
            return QuotientSpace(SubspaceBasis.zero(dim_p), SubspaceBasis.zero(dim_p))
        key = (r, p)
        if key not in self._cells:
            self._cells[key] = QuotientSpace(self.cycles(r, p), self.boundaries(r, p))
        return self._cells[key]

    # -- zig-zag lifting -------------------------------------------------------

    def resolve_tail(
        self, fixed: Form, reach: int, free_degrees: Sequence[int]
    ) -> Optional[Form]:
        """Complete `fixed` so that D of the result vanishes below p + reach.

        Only the listed free degrees are solved for (one stacked solve, free
        variables zeroed); the fixed components are kept verbatim.  Returns
        None when no completion exists.
        """
        p = min(fixed.degrees)
        conds = self._condition_degrees(p, reach)
        if not conds:
            return fixed
        cod = BlockSpace(self.model, conds)
        dfixed = self.apply_D(fixed)
        rhs = tuple(-c for c in cod.pack(_truncate(dfixed, conds)))
        free = [q for q in free_degrees if q <= self.n]
        if not free:
            return fixed if all(c == 0 for c in rhs) else None
        dom = BlockSpace(self.model, free)
        sol = solve_particular(self.op.matrix(dom, cod), rhs)
        if sol is None:
            return None
        return fixed + dom.unpack(sol)

    def lift_zigzag(self, x_p: Form, reach: int) -> Optional[ZigZag]:
        """Extend x_p to a zig-zag with D x in K_{p+reach}, or None if it dies.

        The whole tail is found by one stacked solve with free variables
        zeroed, so the result is canonical and exists if and only if the
        class of x_p survives to page `reach`.
        """
        if x_p.is_zero:
            return ZigZag(0, x_p, reach, self.H)
        if not x_p.is_homogeneous:
            raise PageError("zig-zag base must be homogeneous")
        p = x_p.degree
        full = self.resolve_tail(x_p, reach, self._tail_degrees(p))
        if full is None:
            return None
        return ZigZag(p, full, reach, self.H)

    # -- differentials ---------------------------------------------------------

    def differential_matrix(self, r: int, p: int) -> Mat:
        """d_r as a matrix from the cell at p to the cell at p+r (even q)."""
        self._check_r(r)
        key = (r, p)
        if key not in self._dmats:
            src = self.cell(r, p)
            tgt = self.cell(r, p + r, q=(1 - r) % 2)
            cols = []
            for rep in src.coset_reps:
                x = Form(self.model, {p: rep})
                cls = self._differential_of_cycle(r, x, tgt)
                cols.append(cls)
            self._dmats[key] = Mat.from_cols(cols, rows=tgt.dim)
        return self._dmats[key]

    def _differential_of_cycle(self, r: int, x: Form, tgt: QuotientSpace) -> Vec:
        zz = self.lift_zigzag(x, r)
        assert zz is not None, "cycle failed to lift; engine bug"
        if tgt.dim == 0:
            return ()
        p = x.degree
        y = self.zigzag_dx(zz).component(p + r)
        assert self.cycles(r, p + r).contains(y), "d_r image left the cycle space"
        return tgt.project(y)

    def differential(self, r: int, x_p: Form) -> PageClass:
        """d_r of the page class represented by x_p (homogeneous, on page r)."""
        self._check_r(r)
        if x_p.is_zero:
            raise PageError("the zero form does not name a page class")
        if not x_p.is_homogeneous:
            raise PageError("page classes are represented by homogeneous forms")
        p = x_p.degree
        if not self.cycles(r, p).contains(x_p.component(p)):
            raise PageError(f"form of degree {p} is not a class on page {r}")
        tgt = self.cell(r, p + r, q=(1 - r) % 2)
        return PageClass(r, p + r, self._differential_of_cycle(r, x_p, tgt))

    def class_of(self, r: int, x_p: Form) -> PageClass:
        """The page-r class of a surviving homogeneous form."""
        self._check_r(r)
        p = x_p.degree
        if p is None:
            raise PageError("the zero form does not name a page class")
        if not self.cycles(r, p).contains(x_p.component(p)):
            raise PageError(f"form of degree {p} is not a class on page {r}")
        return PageClass(r, p, self.cell(r, p).project(x_p.component(p)))

    def representative(self, cls: PageClass) -> Form:
        return Form(self.model, {cls.p: self.cell(cls.r, cls.p).lift(cls.coords)})

    # -- pages ------------------------------------------------------------------

    def page(self, r: int) -> SpectralPage:
        """The full page E_r with its differentials; r must be in 1..n+2."""
        self._check_r(r)
        if r not in self._pages:
            cells = {p: self.cell(r, p) for p in range(self.n + 1)}
            d = {p: self.differential_matrix(r, p) for p in range(self.n + 1)}
            self._pages[r] = SpectralPage(r, cells, d, stable=(r >= self.max_page))
        return self._pages[r]

    def e_infinity(self) -> SpectralPage:
        """The stable page: the filtration is exhausted at r = n + 2."""
        return self.page(self.max_page)

    def check_even_vanishing(self) -> EvenVanishingReport:
        """Verify d_{2k} = 0 and E_{2k+1} = E_{2k} for every even page."""
        report = EvenVanishingReport(passed=True)
        for r in range(2, self.max_page + 1, 2):
            d_zero = all(
                self.differential_matrix(r, p).is_zero() for p in range(self.n + 1)
            )
            if r + 1 <= self.max_page:
                cells_equal = all(
                    self.cell(r + 1, p) == self.cell(r, p) for p in range(self.n + 1)
                )
            else:
                cells_equal = True
            report.checked.append((r, d_zero, cells_equal))
            if not (d_zero and cells_equal):
                report.passed = False
        return report


def _truncate(f: Form, degrees: list[int]) -> Form:
    keep = set(degrees)
    return Form(f.model, {p: v for p, v in f.parts.items() if p in keep})
