"""Finite CDGA models: graded bases, wedge tables, differentials, cohomology.

A model is a finite-dimensional graded-commutative differential graded
algebra given at basis level: ordered basis labels per degree, structure
constants for the wedge product, and matrices for the degree +1
differential.  Loading a model validates the axioms eagerly (d o d = 0,
graded commutativity, Leibniz, associativity, existence of a unit) so that
everything downstream can rely on them.

Two input layouts are accepted:

* generator form -- an exterior algebra on named odd-degree generators with
  the differential given on generators; the parser expands it to basis
  level (square-free monomials, ordered by degree then lexicographically on
  the generator sequence), and
* basis form -- explicit per-degree labels plus multiplication/differential
  tables; unspecified products and differentials are zero.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .linalg import (
    Mat,
    QuotientSpace,
    Vec,
    ZERO,
    image,
    kernel,
    solve_particular,
    vec,
    vec_add,
    vec_is_zero,
    vec_scale,
    zero_vec,
)


class ModelError(Exception):
    """Base class for model loading problems."""


class ModelSchemaError(ModelError):
    """The document does not match the model-file schema."""


class AlgebraError(ModelError):
    """A CDGA axiom fails; the message names the axiom and the witnesses."""


# ---------------------------------------------------------------------------
# linear-combination / wedge-expression parsing


def _parse_rational(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as e:
        raise ModelSchemaError(f"bad rational coefficient {tok!r}: {e}") from None


def _split_terms(s: str) -> list[tuple[int, str]]:
    """Split a sum into (sign, term) pairs; raises on empty terms."""
    terms = []
    sign, buf = 1, []
    started = False
    for ch in s:
        if ch.isspace() and not started:
            continue
        if ch in "+-" and started:
            t = "".join(buf).strip()
            if not t:
                raise ModelSchemaError(f"empty term in expression {s!r}")
            terms.append((sign, t))
            sign, buf = (1 if ch == "+" else -1), []
            started = False
        elif ch == "-" and not started and not buf:
            sign = -sign
            started = False
        elif ch == "+" and not buf:
            continue
        else:
            buf.append(ch)
            if not ch.isspace():
                started = True
    t = "".join(buf).strip()
    if t:
        terms.append((sign, t))
    return terms


def parse_linear_combination(s: str) -> list[tuple[Fraction, str]]:
    """Parse ``"c1*label1 + c2*label2"`` into (coefficient, token) pairs.

    A missing coefficient means 1; the string "0" (or an empty string) is the
    zero combination.  Tokens are opaque here; callers resolve them.
    """
    s = s.strip()
    if s in ("", "0"):
        return []
    out = []
    for sign, term in _split_terms(s):
        if "*" in term:
            coeff_s, _, tok = term.partition("*")
            coeff = _parse_rational(coeff_s.strip())
        else:
            coeff, tok = Fraction(1), term
        tok = tok.strip()
        if not tok:
            raise ModelSchemaError(f"term without a label in {s!r}")
        out.append((sign * coeff, tok))
    return out


# ---------------------------------------------------------------------------
# forms


class Form:
    """A (possibly inhomogeneous) element of a model, stored per degree.

    Zero components are omitted.  Forms are immutable; arithmetic returns
    new values.
    """

    __slots__ = ("model", "parts")

    def __init__(self, model: "CdgaModel", parts: Mapping[int, Vec]):
        cleaned = {}
        for p, v in parts.items():
            if not (0 <= p <= model.top_degree):
                raise ValueError(f"degree {p} outside the model range")
            v = vec(v)
            if len(v) != model.dim(p):
                raise ValueError(
                    f"component of degree {p} has length {len(v)}, expected {model.dim(p)}"
                )
            if not vec_is_zero(v):
                cleaned[p] = v
        self.model = model
        self.parts = dict(sorted(cleaned.items()))

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.parts

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(self.parts)

    @property
    def is_homogeneous(self) -> bool:
        return len(self.parts) <= 1

    @property
    def degree(self) -> Optional[int]:
        """Degree of a homogeneous form; None for zero; error otherwise."""
        if not self.parts:
            return None
        if len(self.parts) > 1:
            raise ValueError("inhomogeneous form has no single degree")
        return next(iter(self.parts))

    def component(self, p: int) -> Vec:
        return self.parts.get(p, zero_vec(self.model.dim(p)))

    def homogeneous_part(self, p: int) -> "Form":
        return Form(self.model, {p: self.component(p)})

    # -- arithmetic ----------------------------------------------------------

    def _check_same_model(self, other: "Form"):
        if self.model is not other.model:
            raise ValueError("forms belong to different models")

    def __add__(self, other: "Form") -> "Form":
        self._check_same_model(other)
        parts = dict(self.parts)
        for p, v in other.parts.items():
            parts[p] = vec_add(parts[p], v) if p in parts else v
        return Form(self.model, parts)

    def __neg__(self) -> "Form":
        return Form(self.model, {p: vec_scale(-1, v) for p, v in self.parts.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __rmul__(self, c) -> "Form":
        c = Fraction(c)
        return Form(self.model, {p: vec_scale(c, v) for p, v in self.parts.items()})

    def wedge(self, other: "Form") -> "Form":
        self._check_same_model(other)
        return self.model.wedge(self, other)

    def d(self) -> "Form":
        return self.model.d(self)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Form)
            and self.model is other.model
            and self.parts == other.parts
        )

    def __hash__(self):
        return hash(tuple(self.parts.items()))

    def __repr__(self):
        return f"Form({self})"

    def __str__(self):
        terms = []
        for p, v in self.parts.items():
            for i, c in enumerate(v):
                if c == 0:
                    continue
                label = self.model.label_of(p, i)
                if c == 1:
                    terms.append(label)
                elif c == -1:
                    terms.append(f"-{label}")
                else:
                    terms.append(f"{c}*{label}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


# ---------------------------------------------------------------------------
# the model


class CdgaModel:
    """A finite CDGA with explicit structure constants.  Immutable."""

    def __init__(
        self,
        name: str,
        top_degree: int,
        labels: Sequence[Sequence[str]],
        mult: Mapping[tuple[int, int], Sequence[Sequence[Vec]]],
        diff: Sequence[Mat],
    ):
        self.name = name
        self.top_degree = top_degree
        self.labels = tuple(tuple(ls) for ls in labels)
        self._mult = {k: tuple(tuple(vec(v) for v in row) for row in t) for k, t in mult.items()}
        self.diff = tuple(diff)
        self._label_index: dict[str, tuple[int, int]] = {}
        for p, ls in enumerate(self.labels):
            for i, lab in enumerate(ls):
                if lab in self._label_index:
                    raise ModelSchemaError(f"duplicate basis label {lab!r}")
                self._label_index[lab] = (p, i)
        self._validate_shapes()
        self.unit = self._find_unit()
        self._validate()
        self._de_rham_cache: dict[int, QuotientSpace] = {}

    # -- basic geometry -----------------------------------------------------

    def dim(self, p: int) -> int:
        if 0 <= p <= self.top_degree:
            return len(self.labels[p])
        return 0

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(ls) for ls in self.labels)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def label_of(self, p: int, i: int) -> str:
        return self.labels[p][i]

    def index_of(self, label: str) -> tuple[int, int]:
        try:
            return self._label_index[label]
        except KeyError:
            raise KeyError(f"unknown basis label {label!r}") from None

    # -- form construction ----------------------------------------------------

    def zero_form(self) -> Form:
        return Form(self, {})

    def form(self, parts: Mapping[int, Iterable]) -> Form:
        return Form(self, {p: vec(v) for p, v in parts.items()})

    def basis_form(self, label: str) -> Form:
        p, i = self.index_of(label)
        v = [ZERO] * self.dim(p)
        v[i] = Fraction(1)
        return Form(self, {p: tuple(v)})

    def unit_form(self) -> Form:
        return Form(self, {0: self.unit})

    # -- algebra operations ---------------------------------------------------

    def wedge_basis(self, p: int, i: int, q: int, j: int) -> Vec:
        """Structure constants of e_i^p wedge e_j^q in degree p+q."""
        if p + q > self.top_degree:
            return ()
        return self._mult[(p, q)][i][j]

    def wedge(self, u: Form, v: Form) -> Form:
        out: dict[int, list] = {}
        for p, up in u.parts.items():
            for q, vq in v.parts.items():
                if p + q > self.top_degree:
                    continue
                acc = out.setdefault(p + q, [ZERO] * self.dim(p + q))
                tab = self._mult[(p, q)]
                for i, a in enumerate(up):
                    if a == 0:
                        continue
                    for j, b in enumerate(vq):
                        if b == 0:
                            continue
                        c = a * b
                        for k, s in enumerate(tab[i][j]):
                            if s != 0:
                                acc[k] += c * s
        return Form(self, {p: tuple(v) for p, v in out.items()})

    def d_mat(self, p: int) -> Mat:
        """The differential on the degree-p piece, as a dim(p+1) x dim(p) matrix."""
        if 0 <= p <= self.top_degree:
            return self.diff[p]
        return Mat.zeros(self.dim(p + 1), 0)

    def d(self, u: Form) -> Form:
        out: dict[int, Vec] = {}
        for p, up in u.parts.items():
            if p + 1 > self.top_degree:
                continue
            w = self.diff[p].apply(up)
            if not vec_is_zero(w):
                out[p + 1] = w
        return Form(self, out)

    def de_rham(self, p: int) -> QuotientSpace:
        """Ordinary cohomology ker(d_p)/im(d_{p-1}) with canonical representatives."""
        if not (0 <= p <= self.top_degree):
            raise ValueError(f"degree {p} outside 0..{self.top_degree}")
        if p not in self._de_rham_cache:
            z = kernel(self.d_mat(p))
            b = image(self.diff[p - 1]) if p >= 1 else image(Mat.zeros(self.dim(p), 0))
            self._de_rham_cache[p] = QuotientSpace(z, b)
        return self._de_rham_cache[p]

    def betti(self, p: int) -> int:
        return self.de_rham(p).dim

    # -- expression parsing ---------------------------------------------------

    def parse_form(self, expr: str) -> Form:
        """Parse a wedge expression over basis labels.

        Terms are separated by + and -, each term is an optional rational
        coefficient (``p/q*``) times a wedge of basis labels joined by ``^``.
        The empty string parses to zero.
        """
        out = self.zero_form()
        for coeff, tok in parse_linear_combination(expr):
            out = out + coeff * self._resolve_wedge_token(tok)
        return out

    def _resolve_wedge_token(self, tok: str) -> Form:
        if tok in self._label_index:
            return self.basis_form(tok)
        factors = [f.strip() for f in tok.split("^")]
        if any(f not in self._label_index for f in factors):
            raise KeyError(f"cannot resolve {tok!r} against the basis of model {self.name!r}")
        acc = self.basis_form(factors[0])
        for f in factors[1:]:
            acc = acc.wedge(self.basis_form(f))
        return acc

    # -- validation -----------------------------------------------------------

    def _find_unit(self) -> Vec:
        """Solve for a degree-0 unit acting as identity on every basis element."""
        if self.dim(0) == 0:
            raise AlgebraError("degree 0 is empty; no unit element")
        rows: list[list[Fraction]] = []
        rhs: list[Fraction] = []
        n0 = self.dim(0)
        for q in range(self.top_degree + 1):
            tab = self._mult[(0, q)]
            for j in range(self.dim(q)):
                for k in range(self.dim(q)):
                    rows.append([tab[i][j][k] for i in range(n0)])
                    rhs.append(Fraction(1) if j == k else ZERO)
        sol = solve_particular(Mat(rows, cols=n0), tuple(rhs))
        if sol is None:
            raise AlgebraError("degree 0 contains no unit element with 1^x = x")
        return sol

    def _validate_shapes(self):
        n = self.top_degree
        if n < 0:
            raise ModelSchemaError("top_degree must be >= 0")
        if len(self.labels) != n + 1:
            raise ModelSchemaError("basis must list every degree 0..top_degree")
        if len(self.diff) != n + 1:
            raise ModelSchemaError("differential must cover every degree 0..top_degree")
        for p in range(n + 1):
            for q in range(n + 1 - p):
                t = self._mult.get((p, q))
                if t is None:
                    raise ModelSchemaError(f"missing multiplication table for degrees ({p},{q})")
                if len(t) != self.dim(p) or any(len(row) != self.dim(q) for row in t):
                    raise ModelSchemaError(f"multiplication table for degrees ({p},{q}) has the wrong shape")
                for row in t:
                    for v in row:
                        if len(v) != self.dim(p + q):
                            raise ModelSchemaError(
                                f"product vector in degrees ({p},{q}) has the wrong length"
                            )
        for p in range(n + 1):
            dmat = self.diff[p]
            if dmat.cols != self.dim(p) or dmat.rows != self.dim(p + 1):
                raise ModelSchemaError(f"differential at degree {p} has the wrong shape")

    def _validate(self):
        n = self.top_degree

        # d o d = 0
        for p in range(n - 1):
            prod = self.diff[p + 1] @ self.diff[p]
            if not prod.is_zero():
                i = next(
                    j for j in range(self.dim(p)) if not vec_is_zero(prod.col(j))
                )
                raise AlgebraError(
                    f"d o d != 0 on basis element {self.label_of(p, i)!r} of degree {p}"
                )

        basis_elems = [
            (p, i) for p in range(n + 1) for i in range(self.dim(p))
        ]

        # graded commutativity
        for p, i in basis_elems:
            for q, j in basis_elems:
                if p + q > n or (q, j) < (p, i):
                    continue
                ab = self.wedge_basis(p, i, q, j)
                ba = self.wedge_basis(q, j, p, i)
                sign = -1 if (p % 2 and q % 2) else 1
                if ab != tuple(sign * x for x in ba):
                    raise AlgebraError(
                        "graded commutativity fails on "
                        f"{self.label_of(p, i)!r} ^ {self.label_of(q, j)!r}"
                    )

        # graded Leibniz on basis pairs
        for p, i in basis_elems:
            a = self.basis_form(p_label := self.label_of(p, i))
            da = self.d(a)
            for q, j in basis_elems:
                b = self.basis_form(q_label := self.label_of(q, j))
                lhs = self.d(self.wedge(a, b))
                sign = Fraction(-1 if p % 2 else 1)
                rhs = self.wedge(da, b) + sign * self.wedge(a, self.d(b))
                if lhs != rhs:
                    raise AlgebraError(
                        f"Leibniz rule fails on {p_label!r} ^ {q_label!r}"
                    )

        # associativity on basis triples
        for p, i in basis_elems:
            a = self.basis_form(self.label_of(p, i))
            for q, j in basis_elems:
                if p + q > n:
                    continue
                ab = self.wedge(a, self.basis_form(self.label_of(q, j)))
                b = self.basis_form(self.label_of(q, j))
                for r, k in basis_elems:
                    if p + q + r > n:
                        continue
                    c = self.basis_form(self.label_of(r, k))
                    if self.wedge(ab, c) != self.wedge(a, self.wedge(b, c)):
                        raise AlgebraError(
                            "associativity fails on "
                            f"{self.label_of(p, i)!r}, {self.label_of(q, j)!r}, {self.label_of(r, k)!r}"
                        )

    def __repr__(self):
        return f"CdgaModel({self.name!r}, top_degree={self.top_degree}, dims={self.dims})"


# ---------------------------------------------------------------------------
# generator-form construction (exterior algebras on odd generators)


def _monomial_label(names: Sequence[str], mono: tuple[int, ...]) -> str:
    return "^".join(names[g] for g in mono) if mono else "1"


def _sort_with_sign(gens: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Sort generator indices, tracking the sign; 0 on a repeated generator.

    All generators are odd-degree, so each transposition contributes -1.
    """
    lst = list(gens)
    sign = 1
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(lst, lst[1:]):
        if a == b:
            return 0, ()
    return sign, tuple(lst)


def build_generator_model(
    name: str,
    gens: Sequence[tuple[str, int]],
    diffs: Mapping[str, Sequence[tuple[Fraction, tuple[str, ...]]]],
    top_degree: Optional[int] = None,
) -> CdgaModel:
    """Expand an exterior algebra on odd generators to a basis-level model.

    ``diffs`` maps a generator name to a polynomial, given as a list of
    (coefficient, monomial-of-generator-names) terms.
    """
    names = [g for g, _ in gens]
    degs = [d for _, d in gens]
    gen_index = {g: i for i, g in enumerate(names)}
    if len(gen_index) != len(names):
        raise ModelSchemaError("duplicate generator name")
    for g, d in gens:
        if d % 2 == 0 or d < 1:
            raise ModelSchemaError(
                f"generator {g!r} has degree {d}; the generator form only supports odd degrees"
            )
    full_degree = sum(degs)
    n = full_degree if top_degree is None else top_degree
    if n < full_degree:
        raise ModelSchemaError(
            f"top_degree {n} would truncate the exterior algebra (needs {full_degree})"
        )

    # square-free monomials, bucketed by degree, ordered lexicographically
    monos_by_degree: list[list[tuple[int, ...]]] = [[] for _ in range(n + 1)]
    k = len(names)
    all_monos = []
    for mask in range(1 << k):
        mono = tuple(i for i in range(k) if mask & (1 << i))
        all_monos.append(mono)
    all_monos.sort()
    for mono in all_monos:
        d = sum(degs[i] for i in mono)
        if d <= n:
            monos_by_degree[d].append(mono)
    for ms in monos_by_degree:
        ms.sort()
    mono_pos = {}
    for d, ms in enumerate(monos_by_degree):
        for i, m in enumerate(ms):
            mono_pos[m] = (d, i)

    labels = [[_monomial_label(names, m) for m in ms] for ms in monos_by_degree]

    def mono_vec(coeffs: Iterable[tuple[Fraction, tuple[int, ...]]], degree: int) -> Vec:
        out = [ZERO] * len(monos_by_degree[degree])
        for c, m in coeffs:
            if c == 0:
                continue
            d, i = mono_pos[m]
            assert d == degree
            out[i] += c
        return tuple(out)

    mult = {}
    for p in range(n + 1):
        for q in range(n + 1 - p):
            table = []
            for m1 in monos_by_degree[p]:
                row = []
                for m2 in monos_by_degree[q]:
                    sign, prod = _sort_with_sign(m1 + m2)
                    row.append(
                        mono_vec([(Fraction(sign), prod)] if sign else [], p + q)
                    )
                table.append(row)
            mult[(p, q)] = table

    # differentials of generators, as monomial-coefficient lists
    dgen: dict[int, list[tuple[Fraction, tuple[int, ...]]]] = {}
    for gname, poly in diffs.items():
        if gname not in gen_index:
            raise ModelSchemaError(f"differential given for unknown generator {gname!r}")
        gi = gen_index[gname]
        terms = []
        for coeff, mono_names in poly:
            try:
                mono = tuple(gen_index[m] for m in mono_names)
            except KeyError as e:
                raise ModelSchemaError(f"unknown generator in differential of {gname!r}: {e}")
            sign, mono = _sort_with_sign(mono)
            if sign == 0:
                continue
            deg = sum(degs[i] for i in mono)
            if deg != degs[gi] + 1:
                raise ModelSchemaError(
                    f"differential of {gname!r} has a term of degree {deg}, expected {degs[gi] + 1}"
                )
            terms.append((sign * coeff, mono))
        dgen[gi] = terms

    def d_mono(mono: tuple[int, ...]) -> list[tuple[Fraction, tuple[int, ...]]]:
        out = []
        for t, g in enumerate(mono):
            if g not in dgen:
                continue
            # all generators are odd, so the Koszul prefix sign is (-1)^t
            prefix_sign = Fraction(-1 if t % 2 else 1)
            for c, m in dgen[g]:
                combined = mono[:t] + m + mono[t + 1 :]
                sign, sorted_mono = _sort_with_sign(combined)
                if sign:
                    out.append((prefix_sign * c * sign, sorted_mono))
        return out

    diff_mats = []
    for p in range(n + 1):
        cols = []
        for mono in monos_by_degree[p]:
            cols.append(mono_vec(d_mono(mono), p + 1) if p + 1 <= n else ())
        diff_mats.append(
            Mat.from_cols(cols, rows=len(monos_by_degree[p + 1]) if p + 1 <= n else 0)
            if cols
            else Mat.zeros(len(monos_by_degree[p + 1]) if p + 1 <= n else 0, 0)
        )

    return CdgaModel(name, n, labels, mult, diff_mats)


# ---------------------------------------------------------------------------
# document loading


def _model_from_generator_doc(doc: dict) -> CdgaModel:
    gens = []
    for g in doc["generators"]:
        if not isinstance(g, dict) or "name" not in g or "degree" not in g:
            raise ModelSchemaError("each generator needs 'name' and 'degree'")
        gens.append((str(g["name"]), int(g["degree"])))
    diffs = {}
    for gname, poly_s in doc.get("differentials", {}).items():
        terms = []
        for coeff, tok in parse_linear_combination(poly_s):
            terms.append((coeff, tuple(f.strip() for f in tok.split("^"))))
        diffs[str(gname)] = terms
    return build_generator_model(
        str(doc["name"]), gens, diffs, top_degree=int(doc["top_degree"])
    )


def _model_from_basis_doc(doc: dict) -> CdgaModel:
    n = int(doc["top_degree"])
    labels: list[list[str]] = [[] for _ in range(n + 1)]
    for deg_s, ls in doc["basis"].items():
        deg = int(deg_s)
        if not (0 <= deg <= n):
            raise ModelSchemaError(f"basis degree {deg} outside 0..{n}")
        labels[deg] = [str(x) for x in ls]
    index = {}
    for p, ls in enumerate(labels):
        for i, lab in enumerate(ls):
            if lab in index:
                raise ModelSchemaError(f"duplicate basis label {lab!r}")
            for ch in "+-* \t":
                if ch in lab:
                    raise ModelSchemaError(f"basis label {lab!r} contains {ch!r}")
            index[lab] = (p, i)

    def combo_vec(s: str, degree: int) -> Vec:
        out = [ZERO] * len(labels[degree])
        for coeff, tok in parse_linear_combination(s):
            if tok not in index:
                raise ModelSchemaError(f"unknown label {tok!r} in {s!r}")
            p, i = index[tok]
            if p != degree:
                raise ModelSchemaError(
                    f"label {tok!r} has degree {p}, expected {degree} in {s!r}"
                )
            out[i] += coeff
        return tuple(out)

    mult: dict[tuple[int, int], list[list[Vec]]] = {}
    for p in range(n + 1):
        for q in range(n + 1 - p):
            mult[(p, q)] = [
                [zero_vec(len(labels[p + q])) for _ in labels[q]] for _ in labels[p]
            ]
    for entry in doc.get("mult", []):
        left, right = str(entry["left"]), str(entry["right"])
        if left not in index or right not in index:
            raise ModelSchemaError(f"mult entry references unknown labels: {entry}")
        p, i = index[left]
        q, j = index[right]
        if p + q > n:
            raise ModelSchemaError(
                f"product {left!r}^{right!r} exceeds top degree {n}"
            )
        mult[(p, q)][i][j] = combo_vec(str(entry.get("result", "0")), p + q)

    diff_mats = []
    dcols: dict[str, Vec] = {}
    for entry in doc.get("diff", []):
        src = str(entry["from"])
        if src not in index:
            raise ModelSchemaError(f"diff entry references unknown label {src!r}")
        p, _ = index[src]
        if p + 1 > n:
            raise ModelSchemaError(f"differential of {src!r} exceeds top degree {n}")
        dcols[src] = combo_vec(str(entry.get("result", "0")), p + 1)
    for p in range(n + 1):
        target_dim = len(labels[p + 1]) if p + 1 <= n else 0
        cols = [
            dcols.get(lab, zero_vec(target_dim)) if target_dim else ()
            for lab in labels[p]
        ]
        diff_mats.append(
            Mat.from_cols(cols, rows=target_dim) if cols else Mat.zeros(target_dim, 0)
        )

    return CdgaModel(str(doc["name"]), n, labels, mult, diff_mats)


def model_from_dict(doc: dict) -> CdgaModel:
    if not isinstance(doc, dict):
        raise ModelSchemaError("model document must be a JSON object")
    for field in ("name", "top_degree"):
        if field not in doc:
            raise ModelSchemaError(f"model document is missing {field!r}")
    if "generators" in doc:
        return _model_from_generator_doc(doc)
    if "basis" in doc:
        return _model_from_basis_doc(doc)
    raise ModelSchemaError("model document needs either 'generators' or 'basis'")


def loads_model(text: str) -> CdgaModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelSchemaError(f"not valid JSON: {e}") from None
    return model_from_dict(doc)


def load_model(path) -> CdgaModel:
    """Load and validate a model file (JSON, generator or basis layout)."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return loads_model(text)
