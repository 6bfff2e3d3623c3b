"""Concrete algebras attached to a finite abelian group S.

* gl_S with basis E(a,b), its trace-type form and the transpose automorphism tau.
* A_S^tau, spanned by Gt(a,b) = E(a+b, b-a) - E(b-a, b+a).
* g_S, the algebra on generators d(a,b) with d(-a,b) = -d(a,b), built as a
  quotient K/J of a nonassociative algebra K with basis F(a,b).
* The chi-form on g_S, the shift action of S, the map pi: g_S -> A_S^tau,
  the ideal I, and the splitting of A_S^tau into blocks over cosets of 2S.

Group elements are integer indices of a ``FinAbGroup``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cyclotomic import ONE, ZERO, CycNumber
from .errors import NotAnIdeal
from .group import Character, FinAbGroup, coset_decomposition_2S
from .liealg import (
    BilinearForm,
    LieAlgebra,
    LinearMap,
    check_invariant_form,
    check_jacobi,
    is_homomorphism,
    is_isomorphism,
    quotient,
    restrict_form,
    subalgebra,
)
from .linalg import Subspace, axpy, intersect, scale, vec_add, vec_sub
from .report import Check
from .roots import classify_simple_type, root_decomposition

__all__ = [
    "AStau",
    "Block",
    "GS",
    "GlS",
    "IdealDecomposition",
    "build_A_S_tau",
    "build_K_lie",
    "build_g_S",
    "build_gl_S",
    "check_a_s_basis",
    "check_chi_form_well_defined",
    "check_g_equality_criterion",
    "check_gt_relations",
    "check_pi",
    "check_presentation",
    "check_s_action",
    "chi_form",
    "chi_form_value",
    "g_matrix",
    "g_tau",
    "gs_bracket_rule",
    "gt_bracket_rule",
    "ideal_I",
    "ideal_I_and_blocks",
    "k_product",
    "minus_theta",
    "pi_hom",
    "s_action_on_gS",
    "structure_checks",
]

HALF = CycNumber.rational(Fraction(1, 2))


# gl_S ------------------------------------------------------------------------


@dataclass
class GlS:
    group: FinAbGroup
    algebra: LieAlgebra
    form: BilinearForm
    tau: LinearMap

    def e(self, a: int, b: int) -> int:
        return a * self.group.order + b

    def shift(self, g: int) -> LinearMap:
        """E(a,b) -> E(a+g, b+g)."""
        S = self.group
        cols = [{self.e(S.add(a, g), S.add(b, g)): ONE} for a in range(S.order) for b in range(S.order)]
        return LinearMap(self.algebra, self.algebra, cols, f"shift{S.label(g)}")


def build_gl_S(S: FinAbGroup) -> GlS:
    n = S.order
    labels = [f"E({S.label(a)},{S.label(b)})" for a in range(n) for b in range(n)]

    def br(i, j):
        a, b = divmod(i, n)
        m, v = divmod(j, n)
        out: dict = {}
        if b == m:
            axpy(out, ONE, {a * n + v: ONE})
        if v == a:
            axpy(out, -ONE, {m * n + b: ONE})
        return out

    L = LieAlgebra.from_bracket(labels, br, name=f"gl_{S.name}")
    form = BilinearForm(n * n, {(a * n + b, b * n + a): HALF for a in range(n) for b in range(n)}, "trace/2")
    tau = LinearMap(L, L, [{b * n + a: -ONE} for a in range(n) for b in range(n)], "tau")
    return GlS(S, L, form, tau)


def g_matrix(S: FinAbGroup, a: int, b: int) -> dict:
    """G(a,b) = E(a+b, b-a) in gl_S coordinates."""
    return {S.add(a, b) * S.order + S.sub(b, a): ONE}


def g_tau(S: FinAbGroup, a: int, b: int) -> dict:
    """Gt(a,b) = G(a,b) - G(-a,b) in gl_S coordinates."""
    return vec_sub(g_matrix(S, a, b), g_matrix(S, S.neg(a), b))


# A_S^tau ---------------------------------------------------------------------


@dataclass
class AStau:
    group: FinAbGroup
    gl: GlS
    algebra: LieAlgebra
    inclusion: LinearMap
    pairs: list  # (a, b) of the Gt vector used as each basis element
    a_s_dim: int
    _coords: Subspace = field(repr=False, default=None)

    def coords(self, gl_vector: dict) -> dict:
        """Coordinates of a gl_S vector lying in A_S^tau."""
        return self._coords.coordinates(gl_vector)

    def gt(self, a: int, b: int) -> dict:
        return self.coords(g_tau(self.group, a, b))

    def shift(self, g: int) -> LinearMap:
        sh = self.gl.shift(g)
        cols = [self.coords(sh(v)) for v in self.inclusion.columns]
        return LinearMap(self.algebra, self.algebra, cols, f"shift{self.group.label(g)}")

    def form(self) -> BilinearForm:
        return restrict_form(self.gl.form, self.inclusion)


def build_A_S_tau(S: FinAbGroup, gl: Optional[GlS] = None) -> AStau:
    gl = gl or build_gl_S(S)
    n = S.order
    a_s = Subspace(n * n, (g_matrix(S, a, b) for a in range(n) for b in range(n)))
    sp = Subspace(n * n)
    pairs, vecs = [], []
    for a in range(n):
        for b in range(n):
            v = g_tau(S, a, b)
            if v and sp.add(v):
                pairs.append((a, b))
                vecs.append(v)
    labels = [f"Gt({S.label(a)},{S.label(b)})" for a, b in pairs]
    alg, inc = subalgebra(gl.algebra, vecs, labels, f"A_{S.name}^tau")
    coords = Subspace(n * n, track=True)
    for v in vecs:
        coords.add(v)
    return AStau(S, gl, alg, inc, pairs, a_s.rank, coords)


def check_a_s_basis(S: FinAbGroup) -> Check:
    """A_S equals span{E(m,n) : m+n in 2S}."""
    chk = Check("A_S basis")
    n = S.order
    a_s = Subspace(n * n, (g_matrix(S, a, b) for a in range(n) for b in range(n)))
    two = set(S.two_s)
    expected = Subspace(n * n, ({m * n + v: ONE} for m in range(n) for v in range(n) if S.add(m, v) in two))
    chk.tuple_count = n * n
    chk.detail = {"dim_A_S": a_s.rank, "expected": len(two) * n}
    if not a_s.equals(expected) or a_s.rank != len(two) * n:
        return chk.fail({"dim_A_S": a_s.rank, "dim_expected": expected.rank})
    return chk


def check_gt_relations(A: AStau) -> Check:
    """Gt(a+g, b+g) = Gt(a,b) for g in S^0, Gt(-a,b) = -Gt(a,b), and the Gt bracket rule."""
    S = A.group
    n = S.order
    chk = Check("Gt relations")
    L = A.gl.algebra
    for a in range(n):
        for b in range(n):
            base = g_tau(S, a, b)
            for g in S.s0:
                chk.tuple_count += 1
                if vec_sub(g_tau(S, S.add(a, g), S.add(b, g)), base):
                    return chk.fail({"relation": "S0-translation", "a": a, "b": b, "g": g})
            chk.tuple_count += 1
            if vec_sub(g_tau(S, S.neg(a), b), scale(base, -ONE)):
                return chk.fail({"relation": "negation", "a": a, "b": b})
    for a in range(n):
        for b in range(n):
            x = g_tau(S, a, b)
            for m in range(n):
                for v in range(n):
                    chk.tuple_count += 1
                    lhs = L.bracket(x, g_tau(S, m, v))
                    rhs = gt_bracket_rule(S, a, b, m, v)
                    if vec_sub(lhs, rhs):
                        return chk.fail({"relation": "bracket", "tuple": [a, b, m, v]})
    return chk


def gt_bracket_rule(S: FinAbGroup, a, b, m, v) -> dict:
    """Closed-form [Gt(a,b), Gt(m,v)] as a four-term sum of Gt vectors."""
    add, sub = S.add, S.sub
    out: dict = {}
    if add(a, m) == sub(b, v):
        axpy(out, ONE, g_tau(S, add(a, m), add(v, a)))
    if add(a, m) == sub(v, b):
        axpy(out, -ONE, g_tau(S, add(a, m), add(m, b)))
    if sub(a, m) == sub(v, b):
        axpy(out, ONE, g_tau(S, sub(a, m), sub(b, m)))
    if sub(a, m) == sub(b, v):
        axpy(out, -ONE, g_tau(S, sub(a, m), add(a, v)))
    return out


def check_g_equality_criterion(S: FinAbGroup) -> Check:
    """G(a,b) = G(a',b') exactly when (a,b) and (a',b') differ by a diagonal S^0 translate."""
    chk = Check("G equality criterion")
    n = S.order
    for a in range(n):
        for b in range(n):
            ga = g_matrix(S, a, b)
            for a2 in range(n):
                for b2 in range(n):
                    chk.tuple_count += 1
                    same = ga == g_matrix(S, a2, b2)
                    pred = any(a == S.add(a2, g) and b == S.add(b2, g) for g in S.s0)
                    if same != pred:
                        return chk.fail({"pairs": [[a, b], [a2, b2]], "equal": same})
    return chk


# g_S -------------------------------------------------------------------------


def k_product(S: FinAbGroup, a, b, m, v) -> dict:
    """F(a,b) * F(m,v) in K, coordinates F(x,y) -> x*|S| + y."""
    n = S.order
    add, sub = S.add, S.sub
    out: dict = {}
    if add(a, m) == sub(v, b):
        axpy(out, ONE, {add(a, m) * n + sub(v, a): ONE})
    if add(a, m) == sub(b, v):
        axpy(out, -ONE, {add(a, m) * n + add(a, v): ONE})
    if sub(a, m) == sub(v, b):
        axpy(out, -ONE, {sub(a, m) * n + sub(v, a): ONE})
    if sub(a, m) == sub(b, v):
        axpy(out, ONE, {sub(a, m) * n + add(a, v): ONE})
    return out


def build_K_lie(S: FinAbGroup) -> LieAlgebra:
    """Commutator algebra of F(a,b) . F(m,v) = delta_{v, a+b+m} F(a+m, b+m)."""
    n = S.order
    add = S.add

    def dot(a, b, m, v):
        return {add(a, m) * n + add(b, m): ONE} if v == add(add(a, b), m) else {}

    def br(i, j):
        a, b = divmod(i, n)
        m, v = divmod(j, n)
        return vec_sub(dot(a, b, m, v), dot(m, v, a, b))

    return LieAlgebra.from_bracket([f"F({S.label(a)},{S.label(b)})" for a in range(n) for b in range(n)],
                                   br, name=f"K_{S.name}")


def minus_theta(K: LieAlgebra, S: FinAbGroup) -> LinearMap:
    """F(a,b) -> -F(-a,b), an order-two Lie automorphism of the commutator algebra."""
    n = S.order
    return LinearMap(K, K, [{S.neg(a) * n + b: -ONE} for a in range(n) for b in range(n)], "-theta")


@dataclass
class GS:
    group: FinAbGroup
    algebra: LieAlgebra
    pairs: list  # (a, b) with a in S_- for each basis element
    index: dict
    witness: dict

    def vec(self, a: int, b: int) -> dict:
        """d(a,b) on the basis, resolving d(-a,b) = -d(a,b) and d(a,b) = 0 for 2a = 0."""
        sign, rep = self.group.normal_form(a)
        if sign == 0:
            return {}
        return {self.index[(rep, b)]: CycNumber.rational(sign)}

    def shift(self, g: int) -> LinearMap:
        S = self.group
        cols = [self.vec(a, S.add(b, g)) for a, b in self.pairs]
        return LinearMap(self.algebra, self.algebra, cols, f"shift{S.label(g)}")


def build_g_S(S: FinAbGroup) -> GS:
    """K/J with K the four-delta product algebra and J = span{F(a,b) + F(-a,b)}."""
    n = S.order
    dim_k = n * n
    J = Subspace(dim_k)
    for a in range(n):
        for b in range(n):
            J.add(vec_add({a * n + b: ONE}, {S.neg(a) * n + b: ONE}))
    for i in range(dim_k):
        a, b = divmod(i, n)
        for v in J.basis():
            for x in (_k_apply(S, {i: ONE}, v), _k_apply(S, v, {i: ONE})):
                if not J.contains(x):
                    raise NotAnIdeal("J is not a two-sided ideal of K",
                                     witness={"basis": [a, b]})
    complement = J.complement()
    chosen = set(complement)
    J = Subspace(dim_k, J.basis(), priority=[c for c in range(dim_k) if c not in chosen] + complement)
    pos = {c: t for t, c in enumerate(complement)}
    pairs = [divmod(c, n) for c in complement]

    def project(v):
        return {pos[k]: c for k, c in J.reduce(v).items()}

    products = {}
    for s, (a, b) in enumerate(pairs):
        for t, (m, v) in enumerate(pairs):
            products[(s, t)] = project(k_product(S, a, b, m, v))
    for (s, t), p in products.items():
        if vec_sub(p, scale(products[(t, s)], -ONE)):
            raise NotAnIdeal("quotient product is not antisymmetric",
                             witness={"pair": [list(pairs[s]), list(pairs[t])]})
    labels = [f"d({S.label(a)},{S.label(b)})" for a, b in pairs]
    alg = LieAlgebra.from_bracket(labels, lambda s, t: products[(s, t)], name=f"g_{S.name}")
    witness = {"dim_K": dim_k, "dim_J": J.rank, "J_two_sided_ideal": True}
    return GS(S, alg, pairs, {p: t for t, p in enumerate(pairs)}, witness)


def _k_apply(S, x: dict, y: dict) -> dict:
    n = S.order
    out: dict = {}
    for i, c in x.items():
        a, b = divmod(i, n)
        for j, e in y.items():
            m, v = divmod(j, n)
            axpy(out, c * e, k_product(S, a, b, m, v))
    return out


def gs_bracket_rule(G: GS, a, b, m, v) -> dict:
    """Closed-form [d(a,b), d(m,v)] as a four-term sum of generators."""
    S = G.group
    add, sub = S.add, S.sub
    out: dict = {}
    if add(a, m) == sub(v, b):
        axpy(out, ONE, G.vec(add(a, m), sub(v, a)))
    if add(a, m) == sub(b, v):
        axpy(out, -ONE, G.vec(add(a, m), add(a, v)))
    if sub(a, m) == sub(v, b):
        axpy(out, -ONE, G.vec(sub(a, m), sub(v, a)))
    if sub(a, m) == sub(b, v):
        axpy(out, ONE, G.vec(sub(a, m), add(a, v)))
    return out


def check_presentation(G: GS) -> Check:
    """The constructed bracket satisfies the defining relations on every generator pair."""
    S = G.group
    n = S.order
    chk = Check("g_S presentation")
    for a in range(n):
        for b in range(n):
            chk.tuple_count += 1
            if vec_sub(G.vec(S.neg(a), b), scale(G.vec(a, b), -ONE)):
                return chk.fail({"relation": "d(-a,b) = -d(a,b)", "pair": [a, b]})
    for a in range(n):
        for b in range(n):
            x = G.vec(a, b)
            for m in range(n):
                for v in range(n):
                    chk.tuple_count += 1
                    lhs = G.algebra.bracket(x, G.vec(m, v))
                    if vec_sub(lhs, gs_bracket_rule(G, a, b, m, v)):
                        return chk.fail({"relation": "bracket", "tuple": [a, b, m, v]})
    return chk


# chi-form, S-action, pi --------------------------------------------------------


def chi_form_value(S: FinAbGroup, chi: Character, a, b, m, v) -> CycNumber:
    add, sub = S.add, S.sub
    out = ZERO
    s = add(a, m)
    if add(s, s) == 0 and s == sub(b, v):
        out = out + chi(s)
    d = sub(a, m)
    if add(d, d) == 0 and d == sub(b, v):
        out = out - chi(d)
    return out


def chi_form(G: GS, chi: Character) -> BilinearForm:
    S = G.group
    n = len(G.pairs)
    entries = {}
    for s, (a, b) in enumerate(G.pairs):
        for t, (m, v) in enumerate(G.pairs):
            c = chi_form_value(S, chi, a, b, m, v)
            if c:
                entries[(s, t)] = c
    return BilinearForm(n, entries, "chi")


def check_chi_form_well_defined(G: GS, chi: Character, B: BilinearForm) -> Check:
    """The closed formula agrees with the basis form on every generator pair."""
    S = G.group
    n = S.order
    chk = Check("chi-form representative independence")
    for a in range(n):
        for b in range(n):
            x = G.vec(a, b)
            for m in range(n):
                for v in range(n):
                    chk.tuple_count += 1
                    if B(x, G.vec(m, v)) != chi_form_value(S, chi, a, b, m, v):
                        return chk.fail({"tuple": [a, b, m, v]})
    return chk


def s_action_on_gS(G: GS) -> list[LinearMap]:
    return [G.shift(g) for g in range(G.group.order)]


def check_s_action(G: GS, maps: list[LinearMap], B: Optional[BilinearForm] = None) -> list[Check]:
    S = G.group
    out = []
    auto = Check("S-action by automorphisms")
    for g, f in enumerate(maps):
        c = is_isomorphism(f)
        auto.tuple_count += c.tuple_count
        if not c:
            auto.fail({"element": S.label(g), **(c.witness or {})})
            break
    out.append(auto)
    law = Check("S-action composition law")
    if maps and not maps[0].is_identity():
        law.fail({"element": S.label(0), "reason": "not identity"})
    for g in range(S.order):
        if not law:
            break
        for h in range(S.order):
            law.tuple_count += 1
            if maps[g].compose(maps[h]) != maps[S.add(g, h)]:
                law.fail({"pair": [S.label(g), S.label(h)]})
                break
    out.append(law)
    if B is not None:
        pres = Check("S-action preserves chi-form")
        n = G.algebra.dim
        for g, f in enumerate(maps):
            if not pres:
                break
            for i in range(n):
                for j in range(n):
                    pres.tuple_count += 1
                    if B(f.columns[i], f.columns[j]) != B.value(i, j):
                        pres.fail({"element": S.label(g), "pair": [G.algebra.labels[i], G.algebra.labels[j]]})
                        break
                if not pres:
                    break
        out.append(pres)
    return out


def pi_hom(G: GS, A: AStau) -> LinearMap:
    """d(a,b) -> -Gt(a,b)."""
    cols = [scale(A.gt(a, b), -ONE) for a, b in G.pairs]
    return LinearMap(G.algebra, A.algebra, cols, "pi")


def check_pi(G: GS, A: AStau, pi: LinearMap, B: Optional[BilinearForm] = None) -> list[Check]:
    S = G.group
    out = [is_homomorphism(pi, "pi homomorphism")]
    surj = Check("pi surjective", tuple_count=1)
    r = pi.rank()
    surj.detail = {"rank": r, "dim_g_S": G.algebra.dim, "dim_A_S_tau": A.algebra.dim}
    if r != A.algebra.dim:
        surj.fail({"rank": r, "dim_A_S_tau": A.algebra.dim})
    out.append(surj)
    eq = Check("pi intertwines S-actions")
    for g in range(S.order):
        eq.tuple_count += 1
        if pi.compose(G.shift(g)) != A.shift(g).compose(pi):
            eq.fail({"element": S.label(g)})
            break
    out.append(eq)
    if B is not None and S.s0 == [0]:
        iso = is_isomorphism(pi, "pi isomorphism")
        out.append(iso)
        isom = Check("pi isometry")
        AB = A.form()
        n = G.algebra.dim
        for i in range(n):
            for j in range(n):
                isom.tuple_count += 1
                if AB(pi.columns[i], pi.columns[j]) != B.value(i, j):
                    isom.fail({"pair": [G.algebra.labels[i], G.algebra.labels[j]]})
                    break
            if not isom:
                break
        out.append(isom)
    return out


# ideal I and blocks ------------------------------------------------------------


@dataclass
class Block:
    index: int
    coset: list
    algebra: LieAlgebra
    inclusion: LinearMap  # block -> gl_S
    cartan: list  # block coordinates
    classification: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "block_index": self.index,
            "coset": self.coset,
            "dimension": self.algebra.dim,
            "rank": len(self.cartan),
            "cartan_matrix": self.classification.get("cartan_matrix", []),
            "type_label": self.classification.get("type"),
        }


@dataclass
class IdealDecomposition:
    ideal: Subspace
    quotient: LieAlgebra
    projection: LinearMap
    pi_bar: LinearMap
    blocks: list
    checks: list


def ideal_I(G: GS) -> Subspace:
    S = G.group
    n = S.order
    I = Subspace(G.algebra.dim)
    for a in range(n):
        for b in range(n):
            base = G.vec(a, b)
            for g in S.s0:
                I.add(vec_sub(G.vec(S.add(a, g), S.add(b, g)), base))
    return I


def ideal_I_and_blocks(G: GS, A: AStau, classify: bool = True) -> IdealDecomposition:
    S = G.group
    n = S.order
    checks = []
    I = ideal_I(G)
    Q, proj = quotient(G.algebra, I, name=f"g_{S.name}/I")
    checks.append(Check("I is an ideal", tuple_count=G.algebra.dim * I.rank,
                        detail={"dim_I": I.rank, "dim_quotient": Q.dim}))
    pi = pi_hom(G, A)
    comp = [G.algebra.labels.index(lbl) for lbl in Q.labels]
    pi_bar = LinearMap(Q, A.algebra, [pi.columns[c] for c in comp], "pi_bar")
    checks.append(is_isomorphism(pi_bar, "pi_bar isomorphism"))
    ker = Check("ker pi = I", tuple_count=1)
    if not Subspace(G.algebra.dim, pi.kernel()).equals(I):
        ker.fail({"dim_kernel": len(pi.kernel()), "dim_I": I.rank})
    checks.append(ker)

    k, r, cosets = coset_decomposition_2S(S)
    gl = A.gl
    a_span = Subspace(n * n, A.inclusion.columns)
    blocks = []
    total = Subspace(n * n)
    for j, coset in enumerate(cosets):
        gl_j = [{gl.e(x, y): ONE} for x in coset for y in coset]
        vecs = intersect(a_span, gl_j)
        expected = Subspace(n * n, (vec_sub({gl.e(x, y): ONE}, {gl.e(y, x): ONE})
                                    for x in coset for y in coset if x != y))
        ok = Subspace(n * n, vecs).equals(expected) and len(vecs) == k * (k - 1) // 2
        c = Check(f"block {j} = span of antisymmetric units", tuple_count=len(gl_j),
                  detail={"dim": len(vecs), "expected": k * (k - 1) // 2})
        if not ok:
            c.fail({"dim": len(vecs), "expected": k * (k - 1) // 2})
        checks.append(c)
        basis = expected.basis()
        labels = [_gl_label(S, v) for v in basis]
        alg, inc = subalgebra(gl.algebra, basis, labels, f"g_{j}")
        tracker = Subspace(n * n, track=True)
        for v in basis:
            tracker.add(v)
        cartan = [tracker.coordinates(vec_sub({gl.e(x, y): ONE}, {gl.e(y, x): ONE}))
                  for x, y in zip(coset[0::2], coset[1::2])]
        block = Block(j, coset, alg, inc, cartan)
        if classify:
            block.classification = classify_simple_type(root_decomposition(alg, cartan))
        blocks.append(block)
        for v in basis:
            total.add(v)
    summ = Check("blocks span A_S^tau", tuple_count=len(blocks))
    if not total.equals(a_span):
        summ.fail({"dim_sum": total.rank, "dim_A_S_tau": a_span.rank})
    comm = Check("blocks commute pairwise")
    for x in range(len(blocks)):
        for y in range(x + 1, len(blocks)):
            for u in blocks[x].inclusion.columns:
                for w in blocks[y].inclusion.columns:
                    comm.tuple_count += 1
                    if comm and gl.algebra.bracket(u, w):
                        comm.fail({"blocks": [x, y]})
    checks.extend([summ, comm])
    return IdealDecomposition(I, Q, proj, pi_bar, blocks, checks)


def _gl_label(S: FinAbGroup, v: dict) -> str:
    n = S.order
    pos = [k for k, c in v.items() if c == ONE]
    neg = [k for k, c in v.items() if c == -ONE]
    if len(pos) == 1 and len(neg) == 1 and len(v) == 2:
        x, y = divmod(pos[0], n)
        return f"R({S.label(x)},{S.label(y)})"
    return "v"


def structure_checks(G: GS, chi: Optional[Character]) -> list[Check]:
    """Jacobi and, with a character, invariance of the chi-form."""
    out = [check_jacobi(G.algebra, "g_S jacobi")]
    if chi is not None:
        B = chi_form(G, chi)
        out.append(check_invariant_form(G.algebra, B, "chi-form invariant"))
    return out
