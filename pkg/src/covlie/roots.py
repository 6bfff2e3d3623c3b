"""Root decomposition against a supplied Cartan subalgebra and type matching."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .cyclotomic import ONE, CycNumber, zeta
from .errors import NotSimultaneouslyDiagonalizable, UnrecognizedRootSystem
from .liealg import LieAlgebra
from .linalg import Subspace, as_cyc, axpy, kernel, vec_sub

__all__ = ["RootData", "cartan_matrix", "classify_simple_type", "root_decomposition", "type_templates"]


@dataclass
class RootData:
    dim: int
    rank: int
    roots: dict = field(default_factory=dict)  # root tuple -> multiplicity
    zero_dim: int = 0
    cartan_is_maximal: bool = True
    spaces: dict = field(default_factory=dict, repr=False)  # eigenvalue tuple -> basis vectors

    @property
    def nonzero_roots(self) -> list[tuple]:
        return sorted(self.roots)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "rank": self.rank,
            "zero_weight_dim": self.zero_dim,
            "roots": [list(r) for r in self.nonzero_roots],
        }


def _lcm(*xs):
    out = 1
    for x in xs:
        out = out * x // math.gcd(out, x)
    return out


def _split_block(key: tuple, vecs: list[dict], A: list[dict], unit: CycNumber, values) -> list:
    images = []
    for v in vecs:
        w: dict = {}
        for j, c in v.items():
            axpy(w, c, A[j])
        images.append(w)
    out = []
    for r in values:
        lam = unit * r
        cols = [vec_sub(images[a], {j: c * lam for j, c in vecs[a].items()}) for a in range(len(vecs))]
        ker = kernel(cols) if any(cols) else [{a: ONE} for a in range(len(vecs))]
        if not ker:
            continue
        sub = []
        for x in ker:
            u: dict = {}
            for a, c in x.items():
                axpy(u, c, vecs[a])
            sub.append(u)
        out.append((key + (r,), sub))
    return out


def _eigen_bound(columns: list[dict]) -> int:
    # Gershgorin: every eigenvalue lies within the largest absolute column sum
    best = 0.0
    for col in columns:
        best = max(best, sum(abs(c.to_complex()) for c in col.values()))
    return int(math.floor(best + 1e-9))


def _integer_candidates(A: list[dict], unit: CycNumber, bound: int) -> list[int]:
    """Integers r with r*unit numerically close to an eigenvalue; exact kernels decide later."""
    n = len(A)
    M = np.zeros((n, n), dtype=complex)
    for j, col in enumerate(A):
        for i, c in col.items():
            M[i, j] = c.to_complex()
    vals = np.linalg.eigvals(M) / unit.to_complex() if n else []
    out = set()
    for x in vals:
        r = round(x.real)
        if abs(x - r) < 1e-6 and abs(r) <= bound:
            out.add(int(r))
    return sorted(out)


def root_decomposition(L: LieAlgebra, cartan: list[dict], unit: Optional[CycNumber] = None) -> RootData:
    """Simultaneous ad-eigenspaces of the Cartan elements.

    Eigenvalues are read as unit * integer, with unit = i unless given.
    """
    n = L.dim
    cartan = [{k: as_cyc(c) for k, c in h.items() if c} for h in cartan]
    for a in range(len(cartan)):
        for b in range(a + 1, len(cartan)):
            if L.bracket(cartan[a], cartan[b]):
                raise NotSimultaneouslyDiagonalizable("Cartan elements do not commute",
                                                      witness={"pair": [a, b]})
    if unit is None:
        orders = [L.scalar_order] + [c.order for h in cartan for c in h.values()]
        unit = zeta(_lcm(4, *orders), _lcm(4, *orders) // 4)
    ads = [L.ad(h) for h in cartan]
    blocks: list[tuple[tuple, list[dict]]] = [((), [{j: ONE} for j in range(n)])]
    for A in ads:
        bound = _eigen_bound(A)
        fast = _integer_candidates(A, unit, bound)
        refined = []
        for key, vecs in blocks:
            # numeric candidates first; the full integer range only if they miss something
            got = _split_block(key, vecs, A, unit, fast)
            if sum(len(sub) for _, sub in got) != len(vecs):
                got = _split_block(key, vecs, A, unit, range(-bound, bound + 1))
            found = sum(len(sub) for _, sub in got)
            if found != len(vecs):
                raise NotSimultaneouslyDiagonalizable(
                    "ad action is not diagonalizable with eigenvalues in unit*Z",
                    witness={"block": list(key), "dim": len(vecs), "eigen_dim": found})
            refined.extend(got)
        blocks = refined
    data = RootData(dim=n, rank=len(cartan))
    for key, vecs in blocks:
        data.spaces[key] = vecs
        if all(r == 0 for r in key):
            data.zero_dim += len(vecs)
            zero_space = Subspace(n, vecs)
            data.cartan_is_maximal = zero_space.equals(Subspace(n, cartan))
        else:
            data.roots[key] = data.roots.get(key, 0) + len(vecs)
    return data


def _ip(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def cartan_matrix(simple: list[tuple]) -> list[list[Fraction]]:
    return [[Fraction(2 * _ip(a, b), _ip(b, b)) for b in simple] for a in simple]


def _template_roots(kind: str, n: int) -> list[tuple]:
    def e(i, dim):
        return tuple(1 if t == i else 0 for t in range(dim))

    def diff(i, dim):
        return tuple(x - y for x, y in zip(e(i, dim), e(i + 1, dim)))

    if kind == "A":
        return [diff(i, n + 1) for i in range(n)]
    base = [diff(i, n) for i in range(n - 1)]
    if kind == "B":
        return base + [e(n - 1, n)]
    if kind == "C":
        return base + [tuple(2 * x for x in e(n - 1, n))]
    if kind == "D":
        return base + [tuple(a + b for a, b in zip(e(n - 2, n), e(n - 1, n)))]
    raise ValueError(kind)


def type_templates(rank: int) -> list[tuple[str, list[list[Fraction]]]]:
    """Candidate (label, Cartan matrix) pairs in matching priority order."""
    out = []
    if rank >= 2:
        out.append((f"B{rank}", cartan_matrix(_template_roots("B", rank))))
    if rank >= 3:
        out.append((f"D{rank}", cartan_matrix(_template_roots("D", rank))))
    out.append((f"A{rank}", cartan_matrix(_template_roots("A", rank))))
    if rank >= 3:
        out.append((f"C{rank}", cartan_matrix(_template_roots("C", rank))))
    return out


def _match(C, T) -> Optional[list[int]]:
    """Permutation p with C[i][j] == T[p[i]][p[j]], by backtracking."""
    n = len(C)
    perm: list[int] = []
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        for t in range(n):
            if used[t]:
                continue
            if C[i][i] != T[t][t]:
                continue
            if all(C[i][j] == T[t][perm[j]] and C[j][i] == T[perm[j]][t] for j in range(i)):
                used[t] = True
                perm.append(t)
                if extend(i + 1):
                    return True
                perm.pop()
                used[t] = False
        return False

    return perm if extend(0) else None


def _components(C) -> list[list[int]]:
    n = len(C)
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and (C[i][j] != 0 or C[j][i] != 0):
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def simple_roots(roots: list[tuple]) -> list[tuple]:
    zero = tuple(0 for _ in roots[0])
    positive = sorted(r for r in roots if r > zero)
    pos_set = set(positive)
    simple = []
    for r in positive:
        decomposable = any(
            tuple(x - y for x, y in zip(r, p)) in pos_set for p in positive if p != r
        )
        if not decomposable:
            simple.append(r)
    return simple


def _rank_of(vectors: list[tuple]) -> int:
    rows = [{i: Fraction(x) for i, x in enumerate(v) if x} for v in vectors]
    return Subspace(len(vectors[0]) if vectors else 0, [{k: CycNumber.rational(c) for k, c in r.items()}
                                                        for r in rows]).rank


def classify_simple_type(data: RootData) -> dict:
    """Type label plus the Cartan matrix used to find it.

    Components are joined with "x".  A rank-one component is reported as B1
    when its roots have squared length 1 (so(3) in plane-rotation
    coordinates) and A1 otherwise.
    """
    if not data.cartan_is_maximal:
        raise UnrecognizedRootSystem("zero-weight space is larger than the supplied Cartan",
                                     witness={"zero_weight_dim": data.zero_dim, "rank": data.rank})
    roots = data.nonzero_roots
    if not roots:
        return {"type": f"abelian-dim-{data.dim}", "cartan_matrix": [], "simple_roots": []}
    root_set = set(roots)
    for r in roots:
        if tuple(-x for x in r) not in root_set:
            raise UnrecognizedRootSystem("roots are not closed under negation", witness={"root": list(r)})
        if data.roots[r] != 1:
            raise UnrecognizedRootSystem("root space is not one-dimensional",
                                         witness={"root": list(r), "multiplicity": data.roots[r]})
    simple = simple_roots(roots)
    C = cartan_matrix(simple)
    printable = [[str(x) for x in row] for row in C]
    if len(simple) != _rank_of(roots):
        raise UnrecognizedRootSystem("simple roots do not form a basis of the root span",
                                     witness={"cartan_matrix": printable})
    labels = []
    for comp in _components(C):
        sub = [[C[i][j] for j in comp] for i in comp]
        if len(comp) == 1:
            r = simple[comp[0]]
            labels.append("B1" if _ip(r, r) == 1 else "A1")
            continue
        for label, T in type_templates(len(comp)):
            if _match(sub, T) is not None:
                labels.append(label)
                break
        else:
            raise UnrecognizedRootSystem("Cartan matrix matches no A/B/C/D template",
                                         witness={"cartan_matrix": printable})
    return {
        "type": "x".join(labels),
        "cartan_matrix": printable,
        "simple_roots": [list(r) for r in simple],
    }
