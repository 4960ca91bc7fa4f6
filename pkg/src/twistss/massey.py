"""Massey products: triple products, defining systems, related cocycles.

Sign convention: for homogeneous x, ``bar(x) = (-1)^(1 + deg x) * x``.  A
defining system for an n-fold product <x_1, ..., x_n> is an upper-triangular
array a_{i,j} (1 <= i <= j <= n, (i,j) != (1,n)) with

* a_{i,i} = x_i,
* a_{i,j} of degree r_i + ... + r_j - (j - i),
* d(a_{i,j}) = sum over m of bar(a_{i,m}) wedge a_{m+1,j},

and its related cocycle is c(A) = sum over m of bar(a_{1,m}) wedge a_{m+1,n},
a closed form whose class is the Massey product element chosen by A.

Two constructive families are provided, matching the two shapes of page
differentials of the twisted spectral sequence:

* `banded_defining_system` -- constant antidiagonal bands (-1)^k H_{2k+3}
  with a last column of zig-zag tail components; works for any twist and
  realizes d_{2t+3} as (-1)^t [c(A)] on the page.
* `diagonal_defining_system` -- for a single twist component H_{2s+1} and
  t = l s - 1 (l >= 2): constant diagonal, zero strict upper triangle away
  from the last column, tail components supported at degree steps of 2s;
  realizes d_{2t+3} as (-1)^(l-1) [c(B)].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cdga import CdgaModel, Form
from .linalg import (
    QuotientSpace,
    SubspaceBasis,
    Vec,
    kernel,
    solve_particular,
    span_in_quotient,
)
from .spectral import PageClass, PageError, SpectralSequence
from .twist import BlockSpace, TwistForm


class MasseyError(Exception):
    """A Massey product that is not defined for the given inputs."""


class DefiningSystemError(MasseyError):
    """A triangular array violating one of the defining-system conditions."""


def bar(x: Form) -> Form:
    """The sign twist (-1)^(1 + deg x) x for homogeneous x."""
    if x.is_zero:
        return x
    if not x.is_homogeneous:
        raise MasseyError("bar is only defined on homogeneous forms")
    return x if x.degree % 2 == 1 else -1 * x


# ---------------------------------------------------------------------------
# triple products


@dataclass(frozen=True)
class TripleProduct:
    """A Massey triple product representative with its witnesses.

    ``omega = bar(v1) ^ x3 + bar(x1) ^ v2`` where d v1 = bar(x1) ^ x2 and
    d v2 = bar(x2) ^ x3, both solved with zeroed free variables.  ``coords``
    is the class of omega in cohomology at ``degree``; ``indeterminacy``
    spans the subgroup [x1] H + H [x3] inside that cohomology, so the product
    as a set is coords + indeterminacy.
    """

    omega: Form
    v1: Form
    v2: Form
    degree: int
    cohomology: QuotientSpace
    coords: Vec
    indeterminacy: SubspaceBasis

    @property
    def is_zero_class(self) -> bool:
        return all(c == 0 for c in self.coords)


def _solve_primitive(model: CdgaModel, w: Form, degree: int) -> Form:
    """A form v of the given degree with d v = w, free variables zeroed."""
    if w.is_zero:
        return model.zero_form()
    sol = solve_particular(model.d_mat(degree), w.component(degree + 1))
    if sol is None:
        raise MasseyError("product class is nonzero; Massey product undefined")
    return Form(model, {degree: sol})


def triple_product(x1: Form, x2: Form, x3: Form) -> TripleProduct:
    """The Massey triple product <x1, x2, x3> with canonical witnesses.

    Requires closed homogeneous inputs with [x1][x2] = 0 and [x2][x3] = 0.
    """
    model = x1.model
    for x in (x1, x2, x3):
        if x.is_zero or not x.is_homogeneous:
            raise MasseyError("triple product inputs must be nonzero homogeneous forms")
        if not x.d().is_zero:
            raise MasseyError("triple product inputs must be closed")
    r1, r2, r3 = x1.degree, x2.degree, x3.degree
    v1 = _solve_primitive(model, bar(x1).wedge(x2), r1 + r2 - 1)
    v2 = _solve_primitive(model, bar(x2).wedge(x3), r2 + r3 - 1)
    omega = bar(v1).wedge(x3) + bar(x1).wedge(v2)
    assert omega.d().is_zero, "triple product representative is not closed"
    degree = r1 + r2 + r3 - 1
    if degree > model.top_degree:
        assert omega.is_zero
        trivial = QuotientSpace(SubspaceBasis.zero(0), SubspaceBasis.zero(0))
        return TripleProduct(omega, v1, v2, degree, trivial, (), SubspaceBasis.zero(0))
    h = model.de_rham(degree)
    coords = h.project(omega.component(degree))
    shifts = []
    for z in _closed_basis(model, r2 + r3 - 1):
        w = x1.wedge(z)
        if not w.is_zero:
            shifts.append(w.component(degree))
    for z in _closed_basis(model, r1 + r2 - 1):
        w = z.wedge(x3)
        if not w.is_zero:
            shifts.append(w.component(degree))
    indet = span_in_quotient(h, shifts) if shifts else SubspaceBasis.zero(h.dim)
    return TripleProduct(omega, v1, v2, degree, h, coords, indet)


def _closed_basis(model: CdgaModel, degree: int) -> list[Form]:
    if not (0 <= degree <= model.top_degree):
        return []
    return [
        Form(model, {degree: row}) for row in kernel(model.d_mat(degree)).rows
    ]


# ---------------------------------------------------------------------------
# defining systems


class DefiningSystem:
    """An upper-triangular defining system with nominal input degrees.

    Entries are keyed 1-based by (i, j); the corner (1, size) is absent.
    ``input_degrees`` keeps the nominal degree of each diagonal slot so the
    degree conditions stay meaningful when an input form happens to be zero.
    """

    def __init__(
        self,
        model: CdgaModel,
        input_degrees: Sequence[int],
        entries: dict[tuple[int, int], Form],
    ):
        self.model = model
        self.input_degrees = tuple(input_degrees)
        self.size = len(self.input_degrees)
        self.entries = dict(entries)
        for (i, j) in self.entries:
            if not (1 <= i <= j <= self.size) or (i, j) == (1, self.size):
                raise DefiningSystemError(f"entry ({i},{j}) outside the triangular range")

    def entry(self, i: int, j: int) -> Form:
        return self.entries.get((i, j), self.model.zero_form())

    def slot_degree(self, i: int, j: int) -> int:
        return sum(self.input_degrees[i - 1 : j]) - (j - i)

    @property
    def inputs(self) -> list[Form]:
        return [self.entry(i, i) for i in range(1, self.size + 1)]

    def layout(self) -> str:
        """The triangular matrix layout as aligned text."""
        strs = {}
        for i in range(1, self.size + 1):
            for j in range(1, self.size + 1):
                if i > j or (i, j) == (1, self.size):
                    strs[(i, j)] = ""
                else:
                    strs[(i, j)] = str(self.entry(i, j))
        widths = [
            max(len(strs[(i, j)]) for i in range(1, self.size + 1))
            for j in range(1, self.size + 1)
        ]
        lines = []
        for i in range(1, self.size + 1):
            cells = [strs[(i, j)].rjust(widths[j - 1]) for j in range(1, self.size + 1)]
            lines.append("[ " + "  ".join(cells) + " ]")
        return "\n".join(lines)

    def __repr__(self):
        return f"DefiningSystem(size={self.size}, degrees={self.input_degrees})"


def related_cocycle(system: DefiningSystem) -> Form:
    """c(A) = sum over m of bar(a_{1,m}) wedge a_{m+1,n}."""
    n = system.size
    out = system.model.zero_form()
    for m in range(1, n):
        out = out + bar(system.entry(1, m)).wedge(system.entry(m + 1, n))
    return out


def validate_defining_system(system: DefiningSystem) -> Form:
    """Check the degree, diagonal and differential conditions; return c(A).

    Raises `DefiningSystemError` naming the first violated entry.
    """
    n = system.size
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if (i, j) == (1, n):
                continue
            a = system.entry(i, j)
            want = system.slot_degree(i, j)
            if not a.is_zero and (not a.is_homogeneous or a.degree != want):
                raise DefiningSystemError(
                    f"entry ({i},{j}) has degree {a.degrees}, expected {want}"
                )
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if (i, j) == (1, n):
                continue
            lhs = system.entry(i, j).d()
            rhs = system.model.zero_form()
            for m in range(i, j):
                rhs = rhs + bar(system.entry(i, m)).wedge(system.entry(m + 1, j))
            if lhs != rhs:
                raise DefiningSystemError(
                    f"differential condition fails at entry ({i},{j})"
                )
    c = related_cocycle(system)
    if not c.d().is_zero:
        raise DefiningSystemError("related cocycle is not closed")
    return c


def specific_element(system: DefiningSystem) -> tuple[int, Vec]:
    """The cohomology class of the related cocycle: (degree, class coordinates).

    The degree is the nominal one, sum of input degrees minus size plus 2;
    beyond the model's top degree the class is trivially zero.
    """
    c = validate_defining_system(system)
    deg = sum(system.input_degrees) - system.size + 2
    model = system.model
    if deg > model.top_degree:
        assert c.is_zero
        return deg, ()
    return deg, model.de_rham(deg).project(c.component(deg))


# ---------------------------------------------------------------------------
# the two constructive families


def _tail_components(ss: SpectralSequence, x_p: Form, t: int) -> dict[int, Form]:
    """Zig-zag tail of x_p for page 2t+3, split per degree."""
    zz = ss.lift_zigzag(x_p, 2 * t + 3)
    if zz is None:
        raise PageError(f"class does not survive to page {2 * t + 3}")
    p = x_p.degree
    return {
        i: zz.form.homogeneous_part(p + 2 * i)
        for i in range(1, (ss.n - p) // 2 + 1)
    }


def _assemble_banded(
    ss: SpectralSequence, x_p: Form, t: int, tail: dict[int, Form]
) -> DefiningSystem:
    """Lay out the (t+2)-fold banded system from a per-index tail."""
    model = ss.model
    size = t + 2
    entries: dict[tuple[int, int], Form] = {}
    for i in range(1, size):
        for k in range(0, size - i):
            if (i, i + k) == (1, size):
                continue
            h = ss.H.component_form(2 * k + 3)
            entries[(i, i + k)] = h if k % 2 == 0 else -1 * h
    entries[(size, size)] = x_p
    for i in range(2, size):
        m = size - i  # tail component index, degree p + 2m
        comp = tail.get(m, model.zero_form())
        entries[(i, size)] = Fraction(-1) ** (size - i) * comp
    return DefiningSystem(model, [3] * (t + 1) + [x_p.degree], entries)


def banded_defining_system(ss: SpectralSequence, x_p: Form, t: int) -> DefiningSystem:
    """The (t+2)-fold system for <H_3, ..., H_3, x_p> from a zig-zag lift.

    Bands a_{i,i+k} = (-1)^k H_{2k+3}; the last column carries the signed
    tail components of the canonical zig-zag of x_p through page 2t+3.
    """
    if t < 1:
        raise MasseyError("the banded system needs t >= 1")
    if x_p.degree is None:
        raise MasseyError("x_p must be a nonzero homogeneous form")
    return _assemble_banded(ss, x_p, t, _tail_components(ss, x_p, t))


def sparse_tail(ss: SpectralSequence, x_p: Form, t: int, s: int) -> dict[int, Form]:
    """Tail components at degree steps 2s solving d x_{p+2is} = -H ^ x_{p+2(i-1)s}.

    Only valid for a single twist component H_{2s+1}; all other zig-zag
    components can then be chosen zero, and the stacked solve below finds
    the canonical sparse tail exactly when the class survives to page 2t+3.
    """
    if ss.H.single_degree() != 2 * s + 1:
        raise MasseyError(f"the twist is not a single component of degree {2 * s + 1}")
    p = x_p.degree
    steps = t // s
    var_degs = [p + 2 * i * s for i in range(1, steps + 1) if p + 2 * i * s <= ss.n]
    cond_degs = [d + 1 for d in var_degs if d + 1 <= ss.n]
    if not x_p.d().is_zero:
        raise PageError(f"class does not survive to page {2 * t + 3}")
    if not var_degs or not cond_degs:
        return {}
    dom = BlockSpace(ss.model, var_degs)
    cod = BlockSpace(ss.model, cond_degs)
    rhs_form = ss.apply_D(x_p)
    rhs = tuple(
        -c
        for c in cod.pack(
            Form(ss.model, {d: rhs_form.component(d) for d in cond_degs})
        )
    )
    sol = solve_particular(ss.op.matrix(dom, cod), rhs)
    if sol is None:
        raise PageError(f"class does not survive to page {2 * t + 3}")
    solved = dom.unpack(sol)
    return {
        i: solved.homogeneous_part(p + 2 * i * s)
        for i in range(1, steps + 1)
        if p + 2 * i * s <= ss.n
    }


def diagonal_defining_system(
    ss: SpectralSequence, x_p: Form, t: int, s: int
) -> DefiningSystem:
    """The (l+1)-fold system for <H_{2s+1}, ..., H_{2s+1}, x_p>, t = l s - 1.

    Constant diagonal H_{2s+1}, zero strict upper triangle except the last
    column, which carries signed sparse tail components at degree steps 2s.
    """
    if s < 1 or t < 1 or (t + 1) % s != 0:
        raise MasseyError(f"t = {t} is not of the form l*s - 1 for s = {s}")
    l = (t + 1) // s
    if l < 2:
        raise MasseyError("the diagonal system needs l >= 2; t = s - 1 is plain cup product")
    if ss.H.single_degree() != 2 * s + 1:
        raise MasseyError(f"the twist is not a single component of degree {2 * s + 1}")
    model = ss.model
    p = x_p.degree
    if not ss.cycles(2 * t + 3, p).contains(x_p.component(p)):
        raise PageError(f"class does not survive to page {2 * t + 3}")
    tail = sparse_tail(ss, x_p, t, s)
    h = ss.H.component_form(2 * s + 1)
    size = l + 1
    entries: dict[tuple[int, int], Form] = {}
    for i in range(1, l + 1):
        entries[(i, i)] = h
        for j in range(i + 1, l + 1):
            entries[(i, j)] = model.zero_form()
    entries[(size, size)] = x_p
    for i in range(2, size):
        m = size - i  # tail step, degree p + 2 m s
        comp = tail.get(m, model.zero_form())
        entries[(i, size)] = Fraction(-1) ** (size - i) * comp
    return DefiningSystem(model, [2 * s + 1] * l + [p], entries)


# ---------------------------------------------------------------------------
# verification of the differential formulas


@dataclass
class ClassCheck:
    p: int
    index: int
    zigzag: PageClass
    banded_ok: bool
    case_ok: Optional[bool]
    routes_agree: Optional[bool]
    independence_ok: Optional[bool]

    @property
    def passed(self) -> bool:
        return (
            self.banded_ok
            and self.case_ok is not False
            and self.routes_agree is not False
            and self.independence_ok is not False
        )


@dataclass
class MasseyVerification:
    t: int
    r: int
    checks: list[ClassCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def nontrivial(self) -> bool:
        return bool(self.checks)


def _page_class_of_form(ss: SpectralSequence, r: int, p: int, f: Form) -> Vec:
    cell = ss.cell(r, p, q=0)
    if cell.dim == 0:
        return ()
    return cell.project(f.component(p))


def perturbed_banded_system(
    ss: SpectralSequence, x_p: Form, t: int
) -> Optional[DefiningSystem]:
    """A second valid banded system with a shifted tail, when one exists.

    One solved tail component is shifted by a canonical nonzero closed form
    of its degree and the later components are re-solved; returns None when
    no shift keeps the recursion solvable.  This is a heuristic search, not
    an exhaustive one.
    """
    model = ss.model
    p = x_p.degree
    reach = 2 * t + 3
    base = ss.lift_zigzag(x_p, reach)
    if base is None:
        raise PageError(f"class does not survive to page {reach}")
    for i in range(1, t + 1):
        deg = p + 2 * i
        if deg > ss.n:
            break
        for z_row in kernel(model.d_mat(deg)).rows:
            shift = Form(model, {deg: z_row})
            if shift.is_zero:
                continue
            fixed = model.zero_form()
            for j in range(0, i + 1):
                fixed = fixed + base.form.homogeneous_part(p + 2 * j)
            fixed = fixed + shift
            resolved = ss.resolve_tail(
                fixed, reach, [p + 2 * j for j in range(i + 1, (ss.n - p) // 2 + 1)]
            )
            if resolved is None:
                continue
            tail = {
                j: resolved.homogeneous_part(p + 2 * j)
                for j in range(1, (ss.n - p) // 2 + 1)
            }
            return _assemble_banded(ss, x_p, t, tail)
    return None


def verify_main_theorems(
    ss: SpectralSequence, t: int, independence: bool = True
) -> MasseyVerification:
    """Check every page-(2t+3) basis class against the Massey formulas.

    For each class: the zig-zag differential must equal (-1)^t [c(A)] for the
    banded system; when the twist is a single H_{2s+1} the case table must
    hold (cup product at t = s-1, (-1)^(l-1) [c(B)] at t = l s - 1, zero
    otherwise), with both defining-system routes agreeing on the page; and a
    perturbed defining system, when one is found, must give the same page
    class.
    """
    r = 2 * t + 3
    out = MasseyVerification(t=t, r=r)
    single = ss.H.single_degree()
    s = (single - 1) // 2 if single is not None else None
    for p in range(ss.n + 1):
        cell = ss.cell(r, p)
        for index, rep in enumerate(cell.coset_reps):
            x = Form(ss.model, {p: rep})
            lhs = ss.differential(r, x)

            system = banded_defining_system(ss, x, t)
            c_a = validate_defining_system(system)
            rhs_a = Fraction(-1) ** t * c_a
            banded_ok = lhs.coords == _page_class_of_form(ss, r, p + r, rhs_a)

            case_ok: Optional[bool] = None
            routes_agree: Optional[bool] = None
            if s is not None:
                if t == s - 1:
                    cup = ss.H.component_form(2 * s + 1).wedge(x)
                    case_ok = lhs.coords == _page_class_of_form(ss, r, p + r, cup)
                elif (t + 1) % s == 0 and (t + 1) // s >= 2:
                    l = (t + 1) // s
                    system_b = diagonal_defining_system(ss, x, t, s)
                    c_b = validate_defining_system(system_b)
                    rhs_b = Fraction(-1) ** (l - 1) * c_b
                    coords_b = _page_class_of_form(ss, r, p + r, rhs_b)
                    case_ok = lhs.coords == coords_b
                    routes_agree = coords_b == _page_class_of_form(ss, r, p + r, rhs_a)
                else:
                    case_ok = lhs.is_zero

            independence_ok: Optional[bool] = None
            if independence:
                perturbed = perturbed_banded_system(ss, x, t)
                if perturbed is not None:
                    c_a2 = validate_defining_system(perturbed)
                    independence_ok = _page_class_of_form(
                        ss, r, p + r, Fraction(-1) ** t * c_a2
                    ) == _page_class_of_form(ss, r, p + r, rhs_a)

            out.checks.append(
                ClassCheck(p, index, lhs, banded_ok, case_ok, routes_agree, independence_ok)
            )
    return out
