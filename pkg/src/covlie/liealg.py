"""Finite-dimensional Lie algebras over cyclotomic scalars.

A ``LieAlgebra`` is a labeled basis plus sparse structure constants stored
for i < j only.  An algebra may carry a degree per basis element and a
window W; then [b_i, b_j] is only defined when |deg_i + deg_j| <= W
(degree ``None`` marks central elements, always defined).  This is how
degree-truncated affine algebras are represented.
"""

from __future__ import annotations

import math
from typing import Callable, Optional, Sequence

from .cyclotomic import ONE, ZERO, CycNumber
from .errors import NotAnIdeal, NotAutomorphism, WindowExceeded
from .linalg import Subspace, as_cyc, axpy, kernel, scale, vec_sub
from .report import Check

__all__ = [
    "BilinearForm",
    "LieAlgebra",
    "LinearMap",
    "check_invariant_form",
    "check_jacobi",
    "fixed_subalgebra",
    "is_homomorphism",
    "is_isomorphism",
    "killing_form",
    "quotient",
    "restrict_form",
    "subalgebra",
]


def _order_of(values) -> int:
    out = 1
    for c in values:
        out = out * c.order // math.gcd(out, c.order)
    return out


def _vec_str(v: dict) -> dict:
    return {str(k): str(c) for k, c in sorted(v.items())}


class LieAlgebra:
    def __init__(self, labels: Sequence[str], structure: dict, degrees=None, window=None, name=""):
        self.labels = list(labels)
        self.structure = {}
        for (i, j), v in structure.items():
            if i == j:
                continue
            v = {k: as_cyc(c) for k, c in v.items() if c}
            if not v:
                continue
            if i < j:
                self.structure[(i, j)] = v
            else:
                self.structure[(j, i)] = scale(v, -ONE)
        self.degrees = list(degrees) if degrees is not None else None
        self.window = window
        self.name = name

    @classmethod
    def from_bracket(cls, labels, bracket: Callable[[int, int], dict], degrees=None, window=None, name=""):
        alg = cls(labels, {}, degrees, window, name)
        n = len(labels)
        for i in range(n):
            for j in range(i + 1, n):
                if alg.is_defined(i, j):
                    v = bracket(i, j)
                    if v:
                        alg.structure[(i, j)] = {k: as_cyc(c) for k, c in v.items() if c}
        return alg

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self):
        return f"LieAlgebra({self.name or '?'}, dim={self.dim})"

    @property
    def scalar_order(self) -> int:
        m = 1
        for v in self.structure.values():
            for c in v.values():
                m = m * c.order // math.gcd(m, c.order)
        return m

    @property
    def is_truncated(self) -> bool:
        return self.degrees is not None and self.window is not None

    def is_defined(self, i: int, j: int) -> bool:
        if self.degrees is None or self.window is None:
            return True
        di, dj = self.degrees[i], self.degrees[j]
        if di is None or dj is None:
            return True
        return abs(di + dj) <= self.window

    def basis_vector(self, i: int) -> dict:
        return {i: ONE}

    def bracket_basis(self, i: int, j: int) -> dict:
        if i < j:
            return self.structure.get((i, j), {})
        if i > j:
            v = self.structure.get((j, i))
            return scale(v, -ONE) if v else {}
        return {}

    def bracket(self, x: dict, y: dict) -> dict:
        out: dict = {}
        S = self.structure
        check = self.is_truncated
        for i, a in x.items():
            for j, b in y.items():
                if i == j:
                    continue
                if check and not self.is_defined(i, j):
                    raise WindowExceeded(self.degrees[i] + self.degrees[j], self.window)
                if i < j:
                    v = S.get((i, j))
                    if v:
                        axpy(out, a * b, v)
                else:
                    v = S.get((j, i))
                    if v:
                        axpy(out, -(a * b), v)
        return out

    def ad(self, x: dict) -> list[dict]:
        """Columns of ad x."""
        return [self.bracket(x, {j: ONE}) for j in range(self.dim)]

    def degree_of(self, v: dict):
        """Common degree of a homogeneous vector (None if central/ungraded)."""
        if self.degrees is None:
            return None
        ds = {self.degrees[k] for k in v if self.degrees[k] is not None}
        if len(ds) > 1:
            raise ValueError("vector is not homogeneous")
        return ds.pop() if ds else None

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "dim": self.dim,
            "basis": self.labels,
            "scalar_order": self.scalar_order,
            "structure": [
                [i, j, k, str(c)]
                for (i, j) in sorted(self.structure)
                for k, c in sorted(self.structure[(i, j)].items())
            ],
        }
        if self.is_truncated:
            d["degrees"] = self.degrees
            d["window"] = self.window
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "LieAlgebra":
        order = d.get("scalar_order", 1)
        structure: dict = {}
        for i, j, k, s in d["structure"]:
            structure.setdefault((i, j), {})[k] = CycNumber.parse(s, order)
        return cls(d["basis"], structure, d.get("degrees"), d.get("window"), d.get("name", ""))


class BilinearForm:
    """A bilinear form stored sparsely by basis pairs."""

    def __init__(self, dim: int, entries: dict, name=""):
        self.dim = dim
        self.entries = {k: as_cyc(v) for k, v in entries.items() if v}
        self.name = name

    @classmethod
    def from_function(cls, dim, fn, name=""):
        return cls(dim, {(i, j): fn(i, j) for i in range(dim) for j in range(dim)}, name)

    @classmethod
    def zero(cls, dim):
        return cls(dim, {})

    def value(self, i: int, j: int) -> CycNumber:
        return self.entries.get((i, j), ZERO)

    def __call__(self, u: dict, v: dict) -> CycNumber:
        total = ZERO
        E = self.entries
        for i, a in u.items():
            for j, b in v.items():
                c = E.get((i, j))
                if c is not None:
                    total = total + a * b * c
        return total

    def row(self, i: int) -> dict:
        return {j: c for (a, j), c in self.entries.items() if a == i}

    def matrix(self) -> list[list[CycNumber]]:
        return [[self.value(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def is_symmetric(self) -> bool:
        return all(self.entries.get((j, i), ZERO) == c for (i, j), c in self.entries.items())

    def rank(self) -> int:
        rows: dict[int, dict] = {}
        for (i, j), c in self.entries.items():
            rows.setdefault(i, {})[j] = c
        return Subspace(self.dim, rows.values()).rank

    def is_nondegenerate(self) -> bool:
        return self.rank() == self.dim

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "scalar_order": _order_of(self.entries.values()),
            "entries": [[i, j, str(c)] for (i, j), c in sorted(self.entries.items())],
        }


class LinearMap:
    """Matrix of a linear map, stored as the images of domain basis vectors."""

    def __init__(self, domain: LieAlgebra, codomain: LieAlgebra, columns: list[dict], name=""):
        if len(columns) != domain.dim:
            raise ValueError("one column per domain basis vector is required")
        self.domain = domain
        self.codomain = codomain
        self.columns = [{k: as_cyc(c) for k, c in col.items() if c} for col in columns]
        self.name = name

    @classmethod
    def identity(cls, L: LieAlgebra, name="id"):
        return cls(L, L, [{i: ONE} for i in range(L.dim)], name)

    def __call__(self, v: dict) -> dict:
        out: dict = {}
        for i, c in v.items():
            axpy(out, c, self.columns[i])
        return out

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """self o inner."""
        return LinearMap(inner.domain, self.codomain, [self(c) for c in inner.columns],
                         f"{self.name}*{inner.name}")

    def __eq__(self, other):
        if not isinstance(other, LinearMap) or len(self.columns) != len(other.columns):
            return NotImplemented
        return all(not vec_sub(a, b) for a, b in zip(self.columns, other.columns))

    def key(self) -> tuple:
        """Hashable exact fingerprint of the matrix."""
        return tuple(tuple(sorted(col.items(), key=lambda kv: kv[0])) for col in self.columns)

    def rank(self) -> int:
        return Subspace(self.codomain.dim, self.columns).rank

    def kernel(self) -> list[dict]:
        return kernel(self.columns) if self.columns else []

    def image(self) -> Subspace:
        return Subspace(self.codomain.dim, self.columns)

    def is_identity(self) -> bool:
        return all(col == {i: ONE} for i, col in enumerate(self.columns))

    def minus_identity_columns(self) -> list[dict]:
        return [vec_sub(col, {i: ONE}) for i, col in enumerate(self.columns)]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "domain_dim": self.domain.dim,
            "codomain_dim": self.codomain.dim,
            "scalar_order": _order_of(c for col in self.columns for c in col.values()),
            "columns": [[[k, str(c)] for k, c in sorted(col.items())] for col in self.columns],
        }


# verification sweeps ---------------------------------------------------------


def check_jacobi(L: LieAlgebra, name="jacobi") -> Check:
    """Exhaustive Jacobi identity over basis triples i < j < k."""
    chk = Check(name)
    n = L.dim
    for i in range(n):
        for j in range(i + 1, n):
            if not L.is_defined(i, j):
                continue
            bij = L.bracket_basis(i, j)
            for k in range(j + 1, n):
                try:
                    t = L.bracket(bij, {k: ONE})
                    axpy(t, ONE, L.bracket(L.bracket_basis(j, k), {i: ONE}))
                    axpy(t, ONE, L.bracket(L.bracket_basis(k, i), {j: ONE}))
                except WindowExceeded:
                    continue
                if not L.is_defined(j, k) or not L.is_defined(k, i):
                    continue
                chk.tuple_count += 1
                if t:
                    return chk.fail({"triple": [L.labels[i], L.labels[j], L.labels[k]],
                                     "value": _vec_str(t)})
    return chk


def check_invariant_form(L: LieAlgebra, B: BilinearForm, name="invariant_form") -> Check:
    """Symmetry plus <[a,b],c> = <a,[b,c]> on every basis triple."""
    chk = Check(name)
    if not B.is_symmetric():
        for (i, j), c in sorted(B.entries.items()):
            if B.value(j, i) != c:
                return chk.fail({"asymmetric": [L.labels[i], L.labels[j]]})
    n = L.dim
    rows = [B.row(k) for k in range(n)]

    def pair_row(i, j):
        out: dict = {}
        for k, c in L.bracket_basis(i, j).items():
            axpy(out, c, rows[k])
        return out

    T = {}
    for i in range(n):
        for j in range(n):
            if L.is_defined(i, j):
                T[(i, j)] = pair_row(i, j)
    for i in range(n):
        for j in range(n):
            tij = T.get((i, j))
            if tij is None:
                continue
            for l in range(n):
                tjl = T.get((j, l))
                if tjl is None:
                    continue
                chk.tuple_count += 1
                if tij.get(l, ZERO) != tjl.get(i, ZERO):
                    return chk.fail({"triple": [L.labels[i], L.labels[j], L.labels[l]],
                                     "lhs": str(tij.get(l, ZERO)), "rhs": str(tjl.get(i, ZERO))})
    return chk


def killing_form(L: LieAlgebra) -> BilinearForm:
    """kappa(a, b) = trace(ad a o ad b)."""
    if L.is_truncated:
        raise ValueError("Killing form needs a fully defined bracket")
    n = L.dim
    ads = [L.ad({i: ONE}) for i in range(n)]
    entries = {}
    for a in range(n):
        for b in range(a, n):
            tr = ZERO
            ad_a, ad_b = ads[a], ads[b]
            for l in range(n):
                for k, c in ad_b[l].items():
                    x = ad_a[k].get(l)
                    if x is not None:
                        tr = tr + c * x
            if tr:
                entries[(a, b)] = tr
                entries[(b, a)] = tr
    return BilinearForm(n, entries, "killing")


def is_homomorphism(f: LinearMap, name=None) -> Check:
    chk = Check(name or f"homomorphism:{f.name}")
    D, C = f.domain, f.codomain
    for i in range(D.dim):
        for j in range(i + 1, D.dim):
            if not D.is_defined(i, j):
                continue
            chk.tuple_count += 1
            lhs = f(D.bracket_basis(i, j))
            rhs = C.bracket(f.columns[i], f.columns[j])
            if vec_sub(lhs, rhs):
                return chk.fail({"pair": [D.labels[i], D.labels[j]],
                                 "f([a,b])": _vec_str(lhs), "[fa,fb]": _vec_str(rhs)})
    return chk


def is_isomorphism(f: LinearMap, name=None) -> Check:
    chk = is_homomorphism(f, name or f"isomorphism:{f.name}")
    if not chk:
        return chk
    r = f.rank()
    chk.detail = {"rank": r, "dim_domain": f.domain.dim, "dim_codomain": f.codomain.dim}
    if not (r == f.domain.dim == f.codomain.dim):
        return chk.fail({"rank": r, "dim_domain": f.domain.dim, "dim_codomain": f.codomain.dim})
    return chk


def ideal_witness(L: LieAlgebra, I: Subspace):
    """First (basis index, ideal vector) whose bracket leaves I, or None."""
    for i in range(L.dim):
        for v in I.basis():
            try:
                w = L.bracket({i: ONE}, v)
            except WindowExceeded:
                continue
            if not I.contains(w):
                return i, v
    return None


def _relabel(v: dict, pos: dict) -> dict:
    return {pos[k]: c for k, c in v.items()}


def quotient(L: LieAlgebra, I: Subspace, complement: Optional[list[int]] = None, name=""):
    """L / I on a complement of standard basis vectors; returns (Q, projection)."""
    bad = ideal_witness(L, I)
    if bad is not None:
        i, v = bad
        raise NotAnIdeal(f"[{L.labels[i]}, v] leaves the subspace",
                         witness={"basis": L.labels[i], "vector": _vec_str(v)})
    if complement is None:
        complement = I.complement()
    comp_set = set(complement)
    rest = [c for c in range(L.dim) if c not in comp_set]
    red = Subspace(L.dim, I.basis(), priority=rest + list(complement))
    if set(red.rows) != set(rest):
        raise ValueError("chosen coordinates do not span a complement of the ideal")
    pos = {c: a for a, c in enumerate(complement)}

    def project(v):
        return _relabel(red.reduce(v), pos)

    degrees = [L.degrees[c] for c in complement] if L.degrees is not None else None
    Q = LieAlgebra.from_bracket(
        [L.labels[c] for c in complement],
        lambda a, b: project(L.bracket_basis(complement[a], complement[b])),
        degrees, L.window, name or f"{L.name}/I",
    )
    proj = LinearMap(L, Q, [project({i: ONE}) for i in range(L.dim)], "projection")
    return Q, proj


def subalgebra(L: LieAlgebra, vectors: list[dict], labels=None, name=""):
    """Subalgebra with the given independent vectors as basis; (S, inclusion)."""
    sp = Subspace(L.dim, track=True)
    for v in vectors:
        sp.add(v)
    if sp.relations:
        raise ValueError("subalgebra basis vectors are linearly dependent")
    labels = labels or [f"v{a}" for a in range(len(vectors))]
    degrees = None
    if L.degrees is not None:
        degrees = [L.degree_of(v) for v in vectors]

    def br(a, b):
        w = L.bracket(vectors[a], vectors[b])
        try:
            return sp.coordinates(w)
        except ValueError:
            raise ValueError(f"span is not closed: [{labels[a]}, {labels[b]}]") from None

    S = LieAlgebra.from_bracket(labels, br, degrees, L.window, name)
    return S, LinearMap(S, L, [dict(v) for v in vectors], "inclusion")


def restrict_form(B: BilinearForm, inclusion: LinearMap) -> BilinearForm:
    cols = inclusion.columns
    n = len(cols)
    return BilinearForm.from_function(n, lambda a, b: B(cols[a], cols[b]), f"{B.name}|sub")


def fixed_subalgebra(L: LieAlgebra, auts: list[LinearMap]) -> Subspace:
    """Common fixed points of the given automorphisms (closure under bracket verified)."""
    for g in auts:
        if not is_isomorphism(g):
            raise NotAutomorphism(f"{g.name} is not a Lie automorphism")
    n = L.dim
    stacked = []
    for i in range(n):
        col: dict = {}
        for t, g in enumerate(auts):
            for k, c in vec_sub(g.columns[i], {i: ONE}).items():
                col[t * n + k] = c
        stacked.append(col)
    if auts:
        fixed = Subspace(n, kernel(stacked))
    else:
        fixed = Subspace(n, [{i: ONE} for i in range(n)])
    basis = fixed.basis()
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            try:
                w = L.bracket(basis[a], basis[b])
            except WindowExceeded:
                continue
            if not fixed.contains(w):
                raise NotAutomorphism("fixed points are not closed under the bracket")
    return fixed
