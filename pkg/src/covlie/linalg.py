"""Exact sparse linear algebra over cyclotomic scalars.

Vectors are dicts ``{coordinate: CycNumber}`` holding only nonzero entries.
``Subspace`` keeps a fully reduced row echelon basis and can optionally
track how each basis row was formed from the vectors fed into it, which
gives kernels, coordinates and intersections without separate solvers.
"""

from __future__ import annotations

from .cyclotomic import ONE, CycNumber

__all__ = [
    "Subspace",
    "as_cyc",
    "axpy",
    "intersect",
    "kernel",
    "scale",
    "vec_add",
    "vec_eq",
    "vec_sub",
]


def scale(v: dict, c) -> dict:
    if not c:
        return {}
    return {k: x * c for k, x in v.items()}


def axpy(y: dict, c, x: dict) -> None:
    """y += c * x in place, dropping zeros."""
    if not c:
        return
    for k, xv in x.items():
        t = xv * c
        cur = y.get(k)
        if cur is None:
            if t:
                y[k] = t
        else:
            s = cur + t
            if s:
                y[k] = s
            else:
                del y[k]


def vec_add(u: dict, v: dict) -> dict:
    out = dict(u)
    axpy(out, ONE, v)
    return out


def vec_sub(u: dict, v: dict) -> dict:
    out = dict(u)
    axpy(out, -ONE, v)
    return out


def vec_eq(u: dict, v: dict) -> bool:
    return not vec_sub(u, v)


def as_cyc(x) -> CycNumber:
    return x if isinstance(x, CycNumber) else CycNumber.rational(x)


class Subspace:
    """Span of sparse vectors in a space of dimension ``dim``.

    Rows are kept in reduced echelon form keyed by pivot column.  Pivots
    are chosen as the first nonzero column under ``priority`` (a list of
    columns, most preferred first; default natural order).
    """

    def __init__(self, dim: int, vectors=(), priority=None, track=False):
        self.dim = dim
        self.rows: dict[int, dict] = {}
        self.track = track
        self.exprs: dict[int, dict] = {}
        self.relations: list[dict] = []
        self.n_added = 0
        if priority is None:
            self._rank = None
        else:
            self._rank = {c: i for i, c in enumerate(priority)}
        for v in vectors:
            self.add(v)

    def _pivot_of(self, v):
        if self._rank is None:
            return min(v)
        r = self._rank
        return min(v, key=lambda c: r.get(c, len(r) + c))

    def _reduce(self, v: dict, expr=None):
        v = dict(v)
        for p in [p for p in v if p in self.rows]:
            c = v.get(p)
            if c:
                axpy(v, -c, self.rows[p])
                if expr is not None:
                    axpy(expr, -c, self.exprs[p])
        return v

    def add(self, v: dict) -> bool:
        """Insert v; returns True if it enlarged the span."""
        idx = self.n_added
        self.n_added += 1
        expr = {idx: ONE} if self.track else None
        v = self._reduce(v, expr)
        if not v:
            if self.track:
                self.relations.append(expr)
            return False
        p = self._pivot_of(v)
        inv = v[p].inverse()
        v = scale(v, inv)
        if self.track:
            expr = scale(expr, inv)
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                axpy(row, -c, v)
                if self.track:
                    axpy(self.exprs[q], -c, expr)
        self.rows[p] = v
        if self.track:
            self.exprs[p] = expr
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in self.pivots]

    def reduce(self, v: dict) -> dict:
        """Normal form of v modulo this subspace (zero at every pivot)."""
        return self._reduce(v)

    def contains(self, v: dict) -> bool:
        return not self._reduce(v)

    def coordinates(self, v: dict) -> dict:
        """Coefficients of v on the *input* vectors (requires track=True)."""
        if not self.track:
            raise ValueError("coordinates need a tracking subspace")
        expr: dict = {}
        rest = dict(v)
        for p in [p for p in v if p in self.rows]:
            c = rest.get(p)
            if c:
                axpy(rest, -c, self.rows[p])
                axpy(expr, c, self.exprs[p])
        if rest:
            raise ValueError("vector is not in the span")
        return expr

    def equals(self, other: "Subspace") -> bool:
        return self.rank == other.rank and all(other.contains(r) for r in self.rows.values())

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows.values())

    def complement(self, order=None) -> list[int]:
        """Coordinates spanning a complement, chosen greedily in ``order``."""
        order = range(self.dim) if order is None else order
        work = Subspace(self.dim)
        for r in self.rows.values():
            work.add(r)
        chosen = []
        for c in order:
            if work.add({c: ONE}):
                chosen.append(c)
        return chosen


def intersect(U: Subspace, vectors_v: list[dict]) -> list[dict]:
    """Basis of U intersected with span(vectors_v)."""
    residues = Subspace(U.dim, track=True)
    for v in vectors_v:
        residues.add(U.reduce(v))
    out = Subspace(U.dim)
    for rel in residues.relations:
        w: dict = {}
        for j, c in rel.items():
            axpy(w, c, vectors_v[j])
        if w:
            out.add(w)
    return out.basis()


def kernel(columns: list[dict]) -> list[dict]:
    """Basis of {x : sum_i x_i columns[i] = 0}, x indexed by column position."""
    dim = 1 + max((k for c in columns for k in c), default=-1)
    sp = Subspace(dim, track=True)
    for c in columns:
        sp.add(c)
    return [dict(r) for r in sp.relations]

