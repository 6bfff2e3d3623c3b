"""Covariant algebras K/G for finite automorphism groups, and the comparison with K^G.

For a Lie algebra K and a finite group G of automorphisms, the averaged
product [a, b]_G = sum_g [g a, b] descends to a Lie bracket on K / I_G with
I_G = span{a - g a}.  The map a -> sum_g g a identifies K/G with the fixed
subalgebra K^G.  Everything here is checked, not assumed.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Optional

from .cyclotomic import ONE, ZERO
from .errors import FormNotPreserved, NotAnIdeal, NotAutomorphism, NotFinite, WindowExceeded
from .liealg import (
    BilinearForm,
    LieAlgebra,
    LinearMap,
    check_invariant_form,
    check_jacobi,
    fixed_subalgebra,
    is_homomorphism,
    is_isomorphism,
    subalgebra,
)
from .linalg import Subspace, axpy, vec_sub
from .report import Check

__all__ = ["CovariantAlgebra", "GroupActionOnLie", "covariant_algebra", "phi_fixed_point_iso"]

DEFAULT_CAP = int(os.environ.get("COVLIE_GROUP_CAP", "4096"))


class GroupActionOnLie:
    """Finite group of automorphisms generated by the given maps (closure materialized)."""

    def __init__(self, algebra: LieAlgebra, generators: list[LinearMap], cap: int = DEFAULT_CAP,
                 verify: bool = True):
        self.algebra = algebra
        self.generators = list(generators)
        if verify:
            for g in self.generators:
                chk = is_isomorphism(g)
                if not chk:
                    raise NotAutomorphism(f"{g.name} is not a Lie automorphism", witness=chk.witness)
        ident = LinearMap.identity(algebra)
        self.elements = [ident]
        seen = {ident.key()}
        frontier = [ident]
        while frontier:
            nxt = []
            for h in frontier:
                for g in self.generators:
                    gh = g.compose(h)
                    key = gh.key()
                    if key in seen:
                        continue
                    seen.add(key)
                    self.elements.append(gh)
                    nxt.append(gh)
                    if len(self.elements) > cap:
                        raise NotFinite(f"group closure exceeds {cap} elements")
            frontier = nxt

    @property
    def order(self) -> int:
        return len(self.elements)

    def preserves(self, B: BilinearForm) -> Optional[dict]:
        n = self.algebra.dim
        for t, g in enumerate(self.generators):
            for i in range(n):
                for j in range(n):
                    if B(g.columns[i], g.columns[j]) != B.value(i, j):
                        return {"generator": t, "pair": [self.algebra.labels[i], self.algebra.labels[j]]}
        return None


@dataclass
class CovariantAlgebra:
    source: LieAlgebra
    action: GroupActionOnLie
    algebra: LieAlgebra
    projection: LinearMap
    ideal: Subspace
    complement: list
    form: Optional[BilinearForm] = None
    checks: list = field(default_factory=list)


def _avg_bracket(K: LieAlgebra, elems, x: dict, y: dict) -> dict:
    out: dict = {}
    for g in elems:
        gx = g(x)
        if gx:
            axpy(out, ONE, K.bracket(gx, y))
    return out


def covariant_algebra(K: LieAlgebra, G: GroupActionOnLie, B: Optional[BilinearForm] = None,
                      name: str = "") -> CovariantAlgebra:
    n = K.dim
    elems = G.elements
    if B is not None:
        bad = G.preserves(B)
        if bad is not None:
            raise FormNotPreserved("group does not preserve the form", witness=bad)
    I = Subspace(n)
    for g in G.generators:
        for col in g.minus_identity_columns():
            if col:
                I.add(col)
    checks = []

    ideal = Check("I_G two-sided ideal for averaged product")
    basis_I = I.basis()
    for i in range(n):
        e = {i: ONE}
        for v in basis_I:
            for x in _pair_products(K, elems, e, v):
                ideal.tuple_count += 1
                if x is not None and not I.contains(x):
                    raise NotAnIdeal("I_G is not an ideal of the averaged product",
                                     witness={"basis": K.labels[i]})
    checks.append(ideal)

    complement = I.complement()
    chosen = set(complement)
    red = Subspace(n, basis_I, priority=[c for c in range(n) if c not in chosen] + complement)
    pos = {c: t for t, c in enumerate(complement)}

    def project(v):
        return {pos[k]: c for k, c in red.reduce(v).items()}

    antisym = Check("averaged product antisymmetric on quotient")
    table = {}
    for s, p in enumerate(complement):
        for t in range(s + 1, len(complement)):
            q = complement[t]
            if not K.is_defined(p, q):
                continue
            u = project(_avg_bracket(K, elems, {p: ONE}, {q: ONE}))
            w = project(_avg_bracket(K, elems, {q: ONE}, {p: ONE}))
            antisym.tuple_count += 1
            if vec_sub(u, {k: -c for k, c in w.items()}) and antisym:
                antisym.fail({"pair": [K.labels[p], K.labels[q]]})
            if u:
                table[(s, t)] = u
    checks.append(antisym)
    degrees = [K.degrees[c] for c in complement] if K.degrees is not None else None
    Q = LieAlgebra([K.labels[c] for c in complement], table, degrees, K.window, name or f"{K.name}/G")
    proj = LinearMap(K, Q, [project({i: ONE}) for i in range(n)], "projection")
    checks.append(check_jacobi(Q, "covariant jacobi"))

    form = None
    if B is not None:
        entries = {}
        for s, p in enumerate(complement):
            for t, q in enumerate(complement):
                val = ZERO
                for g in elems:
                    val = val + B(g.columns[p], {q: ONE})
                if val:
                    entries[(s, t)] = val
        form = BilinearForm(len(complement), entries, "averaged form")
        radical = Check("I_G in radical of averaged form")
        for v in basis_I:
            for j in range(n):
                radical.tuple_count += 1
                val = ZERO
                for g in elems:
                    val = val + B(g(v), {j: ONE})
                if val and radical:
                    radical.fail({"basis": K.labels[j]})
        checks.append(radical)
        checks.append(check_invariant_form(Q, form, "averaged form invariant"))
    return CovariantAlgebra(K, G, Q, proj, I, complement, form, checks)


def _pair_products(K, elems, e, v):
    out = []
    for x, y in ((e, v), (v, e)):
        try:
            out.append(_avg_bracket(K, elems, x, y))
        except WindowExceeded:
            out.append(None)
    return out


def phi_fixed_point_iso(C: CovariantAlgebra) -> tuple[LinearMap, LinearMap, list[Check]]:
    """phi(a + I_G) = sum_g g a, checked to be a Lie isomorphism K/G -> K^G.

    Returns (phi, inclusion of K^G into K, checks).
    """
    K, G, Q = C.source, C.action, C.algebra
    n = K.dim
    elems = G.elements

    def avg(v):
        out: dict = {}
        for g in elems:
            axpy(out, ONE, g(v))
        return out

    fixed = fixed_subalgebra(K, G.generators)
    fixed_basis = fixed.basis()
    KG, inc = subalgebra(K, fixed_basis, [f"f{t}" for t in range(len(fixed_basis))], f"{K.name}^G")
    tracker = Subspace(n, track=True)
    for v in fixed_basis:
        tracker.add(v)
    checks = []

    kills = Check("sum over G kills I_G")
    for v in C.ideal.basis():
        kills.tuple_count += 1
        if avg(v) and kills:
            kills.fail({"vector": {K.labels[k]: str(c) for k, c in v.items()}})
    checks.append(kills)

    lands = Check("sum over G lands in fixed points")
    images = []
    for p in C.complement:
        lands.tuple_count += 1
        w = avg({p: ONE})
        if not fixed.contains(w):
            lands.fail({"basis": K.labels[p]})
            images.append({})
        else:
            images.append(tracker.coordinates(w))
    checks.append(lands)

    phi = LinearMap(Q, KG, images, "phi")
    checks.append(is_isomorphism(phi, "phi isomorphism"))

    natural = Check("phi o projection = sum over G")
    for i in range(n):
        natural.tuple_count += 1
        lhs = inc(phi(C.projection.columns[i]))
        if vec_sub(lhs, avg({i: ONE})) and natural:
            natural.fail({"basis": K.labels[i]})
    checks.append(natural)
    return phi, inc, checks
