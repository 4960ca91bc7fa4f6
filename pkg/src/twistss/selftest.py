"""The acceptance battery: twelve criteria over the bundled model library.

Each criterion is a function returning (passed, detail).  They are exact
checks (rational arithmetic, tolerance zero) against independent oracles:
the parity-complex kernel/image computation cross-checks page totals, the
cohomological Z_r/B_r construction cross-checks the zig-zag cells, and the
hand-checkable small models pin concrete values.  `run_selftest` prints one
pass/fail line per criterion and is what `twistss selftest` invokes.
"""

from __future__ import annotations

from typing import Callable

from .cdga import Form
from .indet import (
    differential_indeterminacy,
    indeterminacy_subgroup,
    page_agreement,
)
from .massey import bar, triple_product, verify_main_theorems
from .models import bundled_model, standard_pairs
from .modelgen import random_model, random_twist
from .spectral import SpectralSequence
from .twist import parse_twist, twisted_cohomology

RANDOM_MODELS = 50
RANDOM_DIM_CAP = 64


class Workspace:
    """Lazily built, shared spectral sequences for the acceptance run."""

    def __init__(self, seed: int = 0):
        self.seed = seed
        self._models = {}
        self._ss = {}
        self._random = {}

    def model(self, name):
        if name not in self._models:
            self._models[name] = bundled_model(name)
        return self._models[name]

    def ss(self, name, twist_expr) -> SpectralSequence:
        key = (name, twist_expr)
        if key not in self._ss:
            m = self.model(name)
            self._ss[key] = SpectralSequence(m, parse_twist(m, twist_expr))
        return self._ss[key]

    def pairs(self):
        return [self.ss(name, tw) for name, tw in standard_pairs()]

    def random_pair(self, i: int) -> SpectralSequence:
        if i not in self._random:
            m = random_model(self.seed + i)
            self._random[i] = SpectralSequence(m, random_twist(m, self.seed + i))
        return self._random[i]

    def random_pairs(self, count=RANDOM_MODELS):
        return [self.random_pair(i) for i in range(count)]


def _all_sequences(ws: Workspace, random_count=RANDOM_MODELS):
    return ws.pairs() + ws.random_pairs(random_count)


def _d_squared_zero(ss: SpectralSequence) -> bool:
    for r in range(1, ss.max_page + 1):
        for p in range(ss.n + 1):
            out = ss.differential_matrix(r, p)
            if p - r >= 0:
                inc = ss.differential_matrix(r, p - r)
                if inc.rows and inc.cols and out.rows and not (out @ inc).is_zero():
                    return False
    return True


def crit_structural(ws: Workspace):
    """D^2 = 0 and d_r o d_r = 0 on all bundled and 50 random models."""
    for ss in _all_sequences(ws):
        if ss.model.total_dim > RANDOM_DIM_CAP:
            return False, f"{ss.model.name} exceeds the ambient cap"
        for parity in (0, 1):
            for p in range(ss.n + 1):
                if p % 2 != parity or ss.model.dim(p) == 0:
                    continue
                for i in range(ss.model.dim(p)):
                    e = ss.model.basis_form(ss.model.label_of(p, i))
                    if not ss.apply_D(ss.apply_D(e)).is_zero:
                        return False, f"D^2 != 0 on {ss.model.name}"
        if not _d_squared_zero(ss):
            return False, f"d_r o d_r != 0 on {ss.model.name}"
    return True, f"{len(ws.pairs())} bundled pairs + {RANDOM_MODELS} random models"


def crit_page_identifications(ws: Workspace):
    """E_1 is the graded piece, E_2 is de Rham cohomology, odd q vanishes."""
    for ss in _all_sequences(ws, random_count=10):
        m = ss.model
        for p in range(ss.n + 1):
            if ss.cell(1, p).dim != m.dim(p):
                return False, f"E_1 dim mismatch on {m.name} at p={p}"
            c2 = ss.cell(2, p)
            if c2.dim != m.betti(p) or c2.coset_reps != m.de_rham(p).coset_reps:
                return False, f"E_2 mismatch on {m.name} at p={p}"
            for r in (2, 3):
                if ss.cell(r, p, q=1).dim != 0:
                    return False, f"odd-q cell nonzero on {m.name}"
                if ss.cell(r, p, q=0) != ss.cell(r, p, q=2):
                    return False, f"q-periodicity broken on {m.name}"
    return True, "E_1/E_2 identifications and q-parity structure"


def crit_even_vanishing(ws: Workspace):
    """d_{2k} = 0 and E_{2k+1} = E_{2k} on every model."""
    for ss in _all_sequences(ws):
        rep = ss.check_even_vanishing()
        if not rep.passed:
            return False, f"even page structure fails on {ss.model.name}"
    return True, "all even differentials vanish, consecutive pages equal"


def crit_convergence(ws: Workspace):
    """Stable page totals equal the twisted cohomology, in exact arithmetic."""
    for ss in _all_sequences(ws):
        tc = twisted_cohomology(ss.model, ss.H)
        einf = ss.e_infinity()
        even = sum(c.dim for p, c in einf.cells.items() if p % 2 == 0)
        odd = sum(c.dim for p, c in einf.cells.items() if p % 2 == 1)
        if (even, odd) != tc.dims:
            return False, f"convergence fails on {ss.model.name}: {(even, odd)} vs {tc.dims}"
    t3 = ws.ss("torus3", "e1^e2^e3")
    tc3 = twisted_cohomology(t3.model, t3.H)
    if tc3.dims != (3, 3):
        return False, f"torus3 twisted dims {tc3.dims} != (3, 3)"
    return True, "page totals match kernel/image twisted cohomology everywhere"


def crit_d3_cup(ws: Workspace):
    """Zig-zag d_3 equals cup product with the degree-3 twist component."""
    for ss in _all_sequences(ws, random_count=10):
        h3 = ss.H.component_form(3)
        for p in range(ss.n + 1):
            tgt = ss.cell(3, p + 3)
            for rep in ss.cell(3, p).coset_reps:
                x = Form(ss.model, {p: rep})
                lhs = ss.differential(3, x).coords
                rhs = tgt.project(h3.wedge(x).component(p + 3)) if tgt.dim else ()
                if lhs != rhs:
                    return False, f"d_3 != cup on {ss.model.name} at p={p}"
    return True, "d_3 = cup with the degree-3 component on every class"


def crit_massey_banded(ws: Workspace):
    """d_{2t+3} = (-1)^t [c(A)] for the banded systems, with independence."""
    total = 0
    for ss in _all_sequences(ws, random_count=10):
        for t in range(1, (ss.max_page - 3) // 2 + 1):
            ver = verify_main_theorems(ss, t)
            total += len(ver.checks)
            for c in ver.checks:
                if not c.banded_ok:
                    return False, f"banded rule fails on {ss.model.name} t={t} p={c.p}"
                if c.independence_ok is False:
                    return False, f"defining-system independence fails on {ss.model.name} t={t} p={c.p}"
    return True, f"{total} page classes checked"


def crit_case_table(ws: Workspace):
    """Single-twist case table for s = 1, 2, 3."""
    cases = [("cascade3", "a", 1), ("heisenberg", "a^b^c", 1), ("cascade5", "a", 2),
             ("torus5", "e1^e2^e3^e4^e5", 2), ("su3xsu3", "x5", 2), ("cascade7", "a", 3)]
    nontrivial = 0
    for name, tw, s in cases:
        ss = ws.ss(name, tw)
        if ss.H.single_degree() != 2 * s + 1:
            return False, f"{name} twist is not a single degree-{2*s+1} component"
        for t in range(1, (ss.max_page - 3) // 2 + 1):
            ver = verify_main_theorems(ss, t)
            for c in ver.checks:
                if c.case_ok is False:
                    return False, f"case table fails on {name} t={t} p={c.p}"
                if c.case_ok:
                    nontrivial += 1
    return True, f"s in {{1,2,3}}, {nontrivial} class checks"


def crit_route_compatibility(ws: Workspace):
    """Banded and diagonal routes agree on d_9 of the degree-5-only model."""
    ss = ws.ss("cascade5", "a")
    if sum(ss.cell(9, p).dim for p in range(ss.n + 1)) == 0:
        return False, "cascade5 has trivial E_9; nothing to compare"
    ver = verify_main_theorems(ss, 3)
    routes = [c for c in ver.checks if c.routes_agree is not None]
    if not routes:
        return False, "no classes hit the l >= 2 case"
    if any(not c.routes_agree for c in routes):
        return False, "routes disagree"
    if any(c.zigzag.is_zero for c in routes if c.p == 5):
        return False, "expected a nonzero d_9 witness"
    return True, f"{len(routes)} classes, nonzero d_9 witnessed"


def crit_formality(ws: Workspace):
    """The free model on degrees 3 and 5 with its degree-3 twist collapses."""
    ss = ws.ss("su3", "x3")
    tc = twisted_cohomology(ss.model, ss.H)
    if tc.dims != (0, 0):
        return False, f"twisted dims {tc.dims} != (0, 0)"
    for p in range(ss.n + 1):
        if ss.cell(4, p) != ss.cell(ss.max_page, p):
            return False, f"E_4 != stable page at p={p}"
        if ss.cell(4, p).dim != 0:
            return False, "stable page is not zero"
    return True, "twisted dims (0,0) and E_4 = stable page = 0"


def crit_triple_product(ws: Workspace):
    """The Heisenberg triple product <a,b,b> is [c^b] != 0, with containment."""
    m = ws.model("heisenberg")
    a, b, c = m.basis_form("a"), m.basis_form("b"), m.basis_form("c")
    tp = triple_product(a, b, b)
    expected = c.wedge(b)
    if tp.omega != expected:
        return False, f"omega = {tp.omega}, expected {expected}"
    if tp.is_zero_class:
        return False, "triple product class vanished"
    if tp.v1 != c or not tp.v2.is_zero:
        return False, "witnesses differ from the canonical solution"
    # shift the witnesses by closed forms; the class must move inside
    # [a] H^1 + H^1 [b]
    from .linalg import kernel

    for z_row in kernel(m.d_mat(1)).rows:
        z = Form(m, {1: z_row})
        omega2 = bar(tp.v1 + z).wedge(b) + bar(a).wedge(tp.v2)
        omega3 = bar(tp.v1).wedge(b) + bar(a).wedge(tp.v2 + z)
        for om in (omega2, omega3):
            if not om.d().is_zero:
                return False, "shifted representative is not closed"
            delta = om - tp.omega
            coords = tp.cohomology.project(delta.component(tp.degree)) if not delta.is_zero else None
            if coords is not None and not tp.indeterminacy.contains(coords):
                return False, "shifted class escapes the indeterminacy subgroup"
    return True, "<a,b,b> = [c^b] != 0; shifts stay in the indeterminacy subgroup"


def crit_indeterminacy_coherence(ws: Workspace):
    """Representative pairs differ inside the indeterminacy subgroups."""
    samples = 0
    for ss in _all_sequences(ws, random_count=10):
        m, H = ss.model, ss.H
        for r in range(3, ss.max_page + 1):
            for p in range(ss.n + 1):
                cell = ss.cell(r, p)
                if cell.dim == 0:
                    continue
                h = m.de_rham(p)
                shifts = [bb for bb in ss.boundaries(r, p).rows if not h.sub.contains(bb)]
                if not shifts:
                    continue
                sub = indeterminacy_subgroup(m, H, p, 0, r)
                rep = cell.coset_reps[0]
                x1 = Form(m, {p: rep})
                x2 = Form(m, {p: tuple(u + v for u, v in zip(rep, shifts[0]))})
                if not sub.contains_class(x2 - x1):
                    return False, f"representative difference escapes on {m.name} (r={r}, p={p})"
                samples += 1
                if r % 2 == 1 and r >= 5 and p + r <= ss.n:
                    t = (r - 3) // 2
                    y1 = ss.zigzag_dx(ss.lift_zigzag(x1, r)).component(p + r)
                    y2 = ss.zigzag_dx(ss.lift_zigzag(x2, r)).component(p + r)
                    dsub = differential_indeterminacy(m, H, p, 0, t)
                    delta = Form(m, {p + r: tuple(u - v for u, v in zip(y1, y2))})
                    if not dsub.contains_class(delta):
                        return False, f"d_{r} values escape on {m.name} (p={p})"
    if samples == 0:
        return False, "no representative pairs sampled"
    return True, f"{samples} representative pairs checked"


def crit_page_agreement(ws: Workspace):
    """The cohomological Z_r/B_r cells equal the zig-zag cells everywhere."""
    for ss in ws.pairs():
        pa = page_agreement(ss)
        if not pa.passed:
            return False, f"disagreement on {ss.model.name} at {pa.mismatches[:3]}"
    return True, "identical canonical bases on every page of every bundled model"


CRITERIA: list[tuple[str, Callable]] = [
    ("structural axioms (D^2 = 0, d_r o d_r = 0, exact)", crit_structural),
    ("page identifications (E_1, E_2, odd q, 2-periodicity)", crit_page_identifications),
    ("even differentials vanish", crit_even_vanishing),
    ("convergence to twisted cohomology", crit_convergence),
    ("d_3 is cup product with the degree-3 component", crit_d3_cup),
    ("higher differentials via banded defining systems", crit_massey_banded),
    ("single-twist case table (s = 1, 2, 3)", crit_case_table),
    ("banded/diagonal route compatibility at d_9", crit_route_compatibility),
    ("formality showcase: collapse at E_4", crit_formality),
    ("Massey triple product on the Heisenberg model", crit_triple_product),
    ("indeterminacy coherence of representatives", crit_indeterminacy_coherence),
    ("page-construction agreement (Z_r/B_r vs zig-zag)", crit_page_agreement),
]


def run_selftest(seed: int = 0, emit=print) -> bool:
    ws = Workspace(seed=seed)
    ok = True
    for i, (description, fn) in enumerate(CRITERIA, start=1):
        passed, detail = fn(ws)
        ok = ok and passed
        status = "PASS" if passed else "FAIL"
        emit(f"{status}  criterion {i:2d}: {description} -- {detail}")
    emit(f"{'PASS' if ok else 'FAIL'}  overall")
    return ok
