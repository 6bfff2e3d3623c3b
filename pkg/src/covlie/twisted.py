"""Twisted affine algebras, grading elements and the identification chain.

For h with ad h semisimple and integer eigenvalues, sigma = exp((2 pi i / T) ad h)
twists the affine algebra; components a t^(n - r/T) with a in L_r are stored
as integer labels n together with the eigenvalue r of their base vector.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import cached_property
from typing import Optional

from .affine import (
    K_TO_C,
    AffineAlgebra,
    AffineElement,
    _check_window,
    affine_bracket,
    build_affine_gS_with_S_action,
    fixed_point_comparison,
    verify_theorem_pisomorphism,
)
from .cyclotomic import ONE, ZERO, CycNumber, zeta
from .errors import CovlieError, NotFound, NotIntegerSemisimple, NotSimultaneouslyDiagonalizable
from .group import Character, FinAbGroup
from .liealg import (
    BilinearForm,
    LieAlgebra,
    LinearMap,
    check_invariant_form,
    check_jacobi,
    fixed_subalgebra,
    is_isomorphism,
)
from .linalg import Subspace, axpy, kernel, scale, vec_sub
from .paperalg import AStau, build_A_S_tau, build_g_S, pi_hom
from .report import Check, VerificationReport, skipped
from .roots import RootData, root_decomposition, simple_roots

__all__ = [
    "TwistedAffine",
    "exp_ad",
    "find_grading_element",
    "grading_element_from_dict",
    "grading_element_to_dict",
    "identification_chain",
    "psi_twisted_untwisted_iso",
    "shift_fixed_cartan",
]


def _i_unit(*orders: int) -> CycNumber:
    M = 4
    for o in orders:
        M = M * o // math.gcd(M, o)
    return zeta(M, M // 4)


def shift_fixed_cartan(A: AStau, chi: Character) -> list[dict]:
    """Cartan of A_S^tau fixed by every shift, for S cyclic of odd order N = 2l+1.

    H_m = sum_{a,b} (i/N)(chi(a-b)^m - chi(a-b)^-m) E_{a,b} for m = 1..l, in A_S^tau
    coordinates.  On the Fourier vector with chi-frequency k it acts by
    i(delta_{k,m} - delta_{k,-m}), so its ad-eigenvalues are i times integers.
    """
    S = A.group
    N = S.order
    if N % 2 == 0 or not S.is_cyclic:
        raise CovlieError("shift-fixed Cartan needs a cyclic group of odd order", witness={"group": S.name})
    i = _i_unit(N)
    inv_n = CycNumber.rational(Fraction(1, N))
    out = []
    for m in range(1, (N - 1) // 2 + 1):
        v: dict = {}
        for a in range(N):
            for b in range(N):
                d = S.sub(a, b)
                c = i * inv_n * (chi.power(d, m) - chi.power(d, -m))
                if c:
                    v[A.gl.e(a, b)] = c
        out.append(A.coords(v))
    return out


# grading elements ----------------------------------------------------------------------


def _eigen(L: LieAlgebra, h: dict) -> RootData:
    # the same h is decomposed by several checks; keep one result per algebra
    cache = L.__dict__.setdefault("_ad_eigen_cache", {})
    key = frozenset(h.items())
    if key not in cache:
        try:
            cache[key] = root_decomposition(L, [h], unit=ONE)
        except NotSimultaneouslyDiagonalizable as exc:
            raise NotIntegerSemisimple("ad h is not semisimple with integer eigenvalues",
                                       witness=exc.witness) from exc
    return cache[key]


def _eigenbasis(data: RootData) -> tuple[list[dict], list[int]]:
    vecs, weights = [], []
    for key in sorted(data.spaces):
        for v in data.spaces[key]:
            vecs.append(v)
            weights.append(key[0])
    return vecs, weights


def exp_ad(L: LieAlgebra, h: dict, T: int) -> LinearMap:
    """exp((2 pi i / T) ad h) assembled from the integer eigenspaces of ad h."""
    vecs, weights = _eigenbasis(_eigen(L, h))
    track = Subspace(L.dim, track=True)
    for v in vecs:
        track.add(v)
    cols = []
    for j in range(L.dim):
        col: dict = {}
        for t, c in track.coordinates({j: ONE}).items():
            axpy(col, c * zeta(T, weights[t] % T), vecs[t])
        cols.append(col)
    return LinearMap(L, L, cols, f"exp(2 pi i ad h / {T})")


def _scalar_on(sigma: LinearMap, vecs: list[dict]) -> Optional[CycNumber]:
    lam = None
    for v in vecs:
        k0 = min(v)
        w = sigma(v)
        c = w.get(k0, ZERO) * v[k0].inverse()
        if vec_sub(w, scale(v, c)):
            return None
        if lam is None:
            lam = c
        elif lam != c:
            return None
    return lam


def find_grading_element(L: LieAlgebra, cartan: list[dict], sigma: LinearMap, T: int, slack: int = 1) -> dict:
    """Some h in span(cartan) with exp((2 pi i / T) ad h) = sigma, or NotFound.

    sigma must fix the Cartan pointwise and act on each root space by a T-th
    root of unity.  Exponent lifts for the simple roots are their residues
    shifted by up to ``slack`` periods, smallest total first; the other root values must
    come out integral with the right residue.  Every candidate is confirmed by
    comparing the matrix exponential with sigma.  Failure says nothing about
    whether such an h exists outside the searched range.
    """
    ident = LinearMap.identity(L)
    power = ident
    for _ in range(T):
        power = sigma.compose(power)
    if power != ident:
        raise NotFound(f"sigma^{T} is not the identity", witness={"T": T})
    data = root_decomposition(L, cartan)
    zt = [zeta(T, e) for e in range(T)]
    residue = {}
    for key, vecs in data.spaces.items():
        lam = _scalar_on(sigma, vecs)
        if lam is None or lam not in zt:
            raise NotFound("sigma is not a root of unity scalar on an eigenspace", witness={"root": list(key)})
        residue[key] = zt.index(lam)
    zero = tuple(0 for _ in cartan)
    if residue.get(zero, 0) != 0:
        raise NotFound("sigma does not fix the Cartan pointwise")
    roots = data.nonzero_roots
    if not roots:
        return {}
    simple = simple_roots(roots)
    rank = len(cartan)
    i = _i_unit(L.scalar_order, *(c.order for h in cartan for c in h.values()))
    choices = [[residue[a] + T * s for s in range(-slack, slack + 1)] for a in simple]
    lifts = sorted(itertools.product(*choices), key=lambda v: (sum(map(abs, v)), v))
    for lift in lifts:
        # solve sum_j y_j alpha_j = lift[alpha] over Q
        cols = [{s: CycNumber.rational(a[j]) for s, a in enumerate(simple) if a[j]} for j in range(rank)]
        cols.append({s: CycNumber.rational(-p) for s, p in enumerate(lift) if p})
        sol = next((x for x in kernel(cols) if x.get(rank)), None)
        if sol is None:
            continue
        norm = sol[rank].inverse()
        y = [sol.get(j, ZERO) * norm for j in range(rank)]
        ok = True
        for r in roots:
            val = sum((y[j] * r[j] for j in range(rank)), ZERO)
            if not val.is_rational() or val.as_fraction().denominator != 1 \
                    or int(val.as_fraction()) % T != residue[r]:
                ok = False
                break
        if not ok:
            continue
        h: dict = {}
        for j in range(rank):
            if y[j]:
                axpy(h, -i * y[j], cartan[j])
        if exp_ad(L, h, T) == sigma:
            return h
    raise NotFound("no grading element within the lift search range",
                   witness={"T": T, "simple_roots": [list(a) for a in simple]})


# twisted affine algebra and psi ---------------------------------------------------------


class TwistedAffine:
    """Windowed g[sigma]: basis u_t t^(n - r_t/T) for ad h eigenvectors u_t, |n| <= W, then k."""

    def __init__(self, L: LieAlgebra, B: BilinearForm, h: dict, T: int, window: int):
        self.base = L
        self.form = B
        self.h = h
        self.T = T
        self.W = window
        self.vecs, self.weights = _eigenbasis(_eigen(L, h))
        self._track = Subspace(L.dim, track=True)
        for v in self.vecs:
            self._track.add(v)
        self.width = 2 * window + 1
        self.k_index = len(self.vecs) * self.width
        self.dim = self.k_index + 1
        self._struct = {}
        self._pair = {}
        for s, u in enumerate(self.vecs):
            for t, v in enumerate(self.vecs):
                self._struct[(s, t)] = self._track.coordinates(L.bracket(u, v))
                self._pair[(s, t)] = B(u, v)

    def index(self, t: int, n: int) -> int:
        _check_window(n, self.W)
        return t * self.width + n + self.W

    def split(self, idx: int):
        if idx == self.k_index:
            return None
        t, r = divmod(idx, self.width)
        return t, r - self.W

    def eigen_coordinates(self, v: dict) -> dict:
        return self._track.coordinates(v)

    def bracket_basis(self, s: int, n: int, t: int, m: int) -> dict:
        """[u_s t^(n - r_s/T), u_t t^(m - r_t/T)] with cocycle ((nT - r_s)/T) delta <u_s,u_t> k."""
        _check_window(n + m, self.W)
        out = {self.index(q, n + m): c for q, c in self._struct[(s, t)].items() if c}
        T = self.T
        if (n * T - self.weights[s]) + (m * T - self.weights[t]) == 0:
            f = self._pair[(s, t)]
            if f:
                out[self.k_index] = f * CycNumber.rational(Fraction(n * T - self.weights[s], T))
        return out

    @cached_property
    def labels(self) -> list[str]:
        T = self.T
        return [f"u{t}<{self.weights[t]}>[{n}-{self.weights[t]}/{T}]"
                for t in range(len(self.vecs)) for n in range(-self.W, self.W + 1)] + ["k"]

    @cached_property
    def lie(self) -> LieAlgebra:
        def br(p, q):
            sp, sq = self.split(p), self.split(q)
            if sp is None or sq is None:
                return {}
            return self.bracket_basis(sp[0], sp[1], sq[0], sq[1])

        degrees = [n for _ in self.vecs for n in range(-self.W, self.W + 1)] + [None]
        return LieAlgebra.from_bracket(self.labels, br, degrees, self.W, f"twisted({self.base.name},T={self.T})")


def psi_map(tw: TwistedAffine, target: AffineAlgebra) -> LinearMap:
    """psi(u t^(n - r/T)) = u t^n + (1/T) <h, u> delta_{n,0} k, psi(k) = k."""
    inv_t = CycNumber.rational(Fraction(1, tw.T))
    cols = []
    for idx in range(tw.k_index):
        t, n = tw.split(idx)
        u = tw.vecs[t]
        col = {target.index(j, n): c for j, c in u.items()}
        if n == 0:
            f = tw.form(tw.h, u)
            if f:
                col[target.k_index] = f * inv_t
        cols.append(col)
    cols.append({target.k_index: ONE})
    return LinearMap(tw.lie, target.lie, cols, "psi")


def psi_twisted_untwisted_iso(L: LieAlgebra, B: BilinearForm, h: dict, T: int, W: int,
                              group: str = "", jacobi: bool = True) -> VerificationReport:
    """psi from windowed g[sigma] to windowed affine L, checked as a Lie isomorphism."""
    if T < 1:
        raise ValueError("T must be a positive integer")
    rep = VerificationReport("appendix", group or L.name, None, W)
    tw = TwistedAffine(L, B, h, T, W)
    semi = Check("ad h semisimple with integer eigenvalues", tuple_count=L.dim,
                 detail={"eigenvalues": sorted(tw.weights)})
    rep.add(semi)
    sym = Check("form symmetric", tuple_count=L.dim * L.dim)
    if not B.is_symmetric():
        sym.fail({"form": B.name})
    rep.add(sym)
    rep.add(check_invariant_form(L, B, "form invariant"))
    if jacobi:
        rep.add(check_jacobi(tw.lie, "twisted algebra jacobi"))
    target = AffineAlgebra(L, B, W, f"affine({L.name})")
    psi = psi_map(tw, target)
    rep.add(is_isomorphism(psi, "psi isomorphism twisted -> untwisted"))
    kk = Check("psi(k) = k", tuple_count=1)
    if psi.columns[tw.k_index] != {target.k_index: ONE}:
        kk.fail({"image": {target.labels[i]: str(c) for i, c in psi.columns[tw.k_index].items()}})
    rep.add(kk)
    deg = Check("psi preserves degree")
    for idx in range(tw.k_index):
        deg.tuple_count += 1
        n = tw.split(idx)[1]
        bad = [i for i in psi.columns[idx] if i != target.k_index and target.split(i)[1] != n]
        if bad and deg:
            deg.fail({"basis": tw.labels[idx]})
    rep.add(deg)
    return rep


def grading_element_to_dict(L: LieAlgebra, h: dict) -> dict:
    """{"order": M, "h": {label: literal in zeta_M}}, readable by grading_element_from_dict."""
    M = 1
    for c in h.values():
        M = M * c.order // math.gcd(M, c.order)
    return {"order": M, "h": {L.labels[i]: str(c.embed(M)) for i, c in sorted(h.items())}}


def grading_element_from_dict(L: LieAlgebra, data: dict) -> dict:
    M = int(data.get("order", 1))
    h: dict = {}
    for label, text in data["h"].items():
        if label not in L.labels:
            raise ValueError(f"unknown basis label {label!r}")
        c = CycNumber.parse(str(text), M)
        if c:
            h[L.labels.index(label)] = c
    return h


# identification chain ---------------------------------------------------------------------


def _affine_hom(src: AffineAlgebra, dst: AffineAlgebra, base_map: LinearMap, k_scalar=ONE, name="") -> LinearMap:
    cols = []
    for idx in range(src.k_index):
        i, n = src.split(idx)
        cols.append({dst.index(j, n): c for j, c in base_map.columns[i].items()})
    cols.append({dst.k_index: k_scalar})
    return LinearMap(src.lie, dst.lie, cols, name)


def _sigma_hat(aff: AffineAlgebra, sigma: LinearMap, unit: CycNumber) -> LinearMap:
    """a t^n -> unit^n sigma(a) t^n, k -> k."""
    cols = []
    for idx in range(aff.k_index):
        i, n = aff.split(idx)
        cols.append({aff.index(j, n): c * unit ** n for j, c in sigma.columns[i].items()})
    cols.append({aff.k_index: ONE})
    return LinearMap(aff.lie, aff.lie, cols, "sigma_hat")


def _prefixed(link: str, checks: list[Check]) -> list[Check]:
    for c in checks:
        c.name = f"{link}: {c.name}"
    return checks


def _rescale_check(aff: AffineAlgebra, sigma_hat: LinearMap, tw: TwistedAffine) -> list[Check]:
    """Fixed points of sigma_hat on windowed affine L versus g[sigma], via u t^d -> u t^((d + r)/T), k -> k/T."""
    T = tw.T
    fixed = fixed_subalgebra(aff.lie, [sigma_hat])
    basis = []  # (eigen index t, affine degree d)
    for t, r in enumerate(tw.weights):
        for d in range(-aff.W, aff.W + 1):
            if (d + r) % T == 0:
                basis.append((t, d))
    span = Check("fixed points spanned by u t^d with d = -r mod T", tuple_count=len(basis) + 1,
                 detail={"dim_fixed": fixed.rank})
    vecs = [{aff.index(j, d): c for j, c in tw.vecs[t].items()} for t, d in basis] + [{aff.k_index: ONE}]
    if fixed.rank != len(vecs) or not all(fixed.contains(v) for v in vecs):
        span.fail({"dim_fixed": fixed.rank, "dim_expected": len(vecs)})
    if not span:
        return [span]

    inv_t = CycNumber.rational(Fraction(1, T))

    def phi(x: AffineElement) -> dict:
        out: dict = {}
        by_degree: dict = {}
        for (j, d), c in x.terms.items():
            by_degree.setdefault(d, {})[j] = c
        for d, v in by_degree.items():
            for t, c in tw.eigen_coordinates(v).items():
                num = d + tw.weights[t]
                if num % T:
                    raise CovlieError("element is not sigma-fixed", witness={"degree": d})
                axpy(out, c, {tw.index(t, num // T): ONE})
        if x.central:
            axpy(out, x.central * inv_t, {tw.k_index: ONE})
        return out

    hom = Check("rescaling map is a bracket homomorphism (k -> k/T)")
    for p, (s, d1) in enumerate(basis):
        x = AffineElement({(j, d1): c for j, c in tw.vecs[s].items()})
        for (t, d2) in basis[p + 1:]:
            if abs(d1 + d2) > aff.W:
                continue
            y = AffineElement({(j, d2): c for j, c in tw.vecs[t].items()})
            hom.tuple_count += 1
            lhs = phi(affine_bracket(x, y, aff.base, aff.form, aff.W))
            rhs: dict = {}
            for p1, c1 in phi(x).items():
                for p2, c2 in phi(y).items():
                    axpy(rhs, c1 * c2, tw.bracket_basis(*tw.split(p1), *tw.split(p2)))
            if vec_sub(lhs, rhs):
                return [span, hom.fail({"pair": [[s, d1], [t, d2]]})]
    return [span, hom]


def identification_chain(S: FinAbGroup, chi: Character, W: int, h: Optional[dict] = None,
                         search: bool = False, sweep: bool = True) -> VerificationReport:
    """D_S -> affine g_S / S -> fixed points -> affine A_S^tau fixed by sigma_hat -> g[sigma] -> affine A_S^tau.

    Each link is verified at window W.  The grading element h (in A_S^tau
    coordinates) is taken from ``h`` or searched for in the shift-fixed
    Cartan when ``search`` is set; without one, the last two links are
    reported as skipped.
    """
    N = S.order
    rep = VerificationReport("appendix", S.name, chi.k, W)
    if N % 2 == 0:
        rep.add(skipped("identification chain", "needs |S| odd"))
        return rep

    if sweep:
        rep.extend(_prefixed("L1 D_S vs covariant", verify_theorem_pisomorphism(S, chi, W).checks))
    else:
        rep.add(skipped("L1 D_S vs covariant", "sweep disabled"))

    g = build_g_S(S)
    ag = build_affine_gS_with_S_action(S, chi, W, g)
    fp_checks, info = fixed_point_comparison(ag)
    rep.extend(_prefixed("L2 covariant vs fixed points", fp_checks))
    l2 = Check("L2 covariant vs fixed points: phi(k) = |S| k", tuple_count=1, detail=info)
    if info["phi_k_scalar"] != str(N):
        l2.fail({"phi_k_scalar": info["phi_k_scalar"], "expected": N})
    rep.add(l2)

    A = build_A_S_tau(S)
    BA = A.form()
    pi = pi_hom(g, A)
    aff_g = ag.affine
    aff_a = AffineAlgebra(A.algebra, BA, W, f"affine_A_{S.name}^tau")
    pi_hat = _affine_hom(aff_g, aff_a, pi, ONE, "pi_hat")
    gen = chi.generator()
    sigma = A.shift(gen)
    sig_hat = _sigma_hat(aff_a, sigma, chi(gen))
    l3 = [is_isomorphism(pi_hat, "pi_hat isomorphism")]
    inter = Check("pi_hat intertwines the S-action with sigma_hat", tuple_count=aff_g.dim)
    if pi_hat.compose(ag.shifts[gen]) != sig_hat.compose(pi_hat):
        inter.fail({"generator": S.label(gen)})
    l3.append(inter)
    iso = Check("pi isometry chi-form -> trace form", tuple_count=g.algebra.dim ** 2)
    for a in range(g.algebra.dim):
        for b in range(g.algebra.dim):
            if ag.form.value(a, b) != BA(pi.columns[a], pi.columns[b]) and iso:
                iso.fail({"pair": [g.algebra.labels[a], g.algebra.labels[b]]})
    l3.append(iso)
    rep.extend(_prefixed("L3 affine g_S vs affine A_S^tau", l3))

    if h is None and search:
        try:
            h = find_grading_element(A.algebra, shift_fixed_cartan(A, chi), sigma, N)
        except NotFound as exc:
            rep.add(skipped("L4/L5 grading element", f"search failed: {exc}"))
            return rep
    if h is None:
        rep.add(skipped("L4/L5 grading element", "no grading element supplied"))
        return rep
    grade = Check("grading element: exp(2 pi i ad h / N) = sigma", tuple_count=A.algebra.dim,
                  detail=grading_element_to_dict(A.algebra, h))
    if exp_ad(A.algebra, h, N) != sigma:
        grade.fail({"reason": "exp(2 pi i ad h / N) differs from the shift"})
    rep.add(grade)
    if not grade:
        return rep

    tw = TwistedAffine(A.algebra, BA, h, N, W)
    # labels (d + r)/N of in-window fixed elements, and of their pairwise sums, may exceed W
    reach = -(-(W + 2 * max(map(abs, tw.weights), default=0)) // N)
    tw_wide = TwistedAffine(A.algebra, BA, h, N, max(W, reach))
    rep.extend(_prefixed("L4 fixed points vs twisted", _rescale_check(aff_a, sig_hat, tw_wide)))
    rep.extend(_prefixed("L5 twisted vs untwisted", psi_twisted_untwisted_iso(A.algebra, BA, h, N, W, S.name).checks))
    rep.add(Check("central normalization along the chain", tuple_count=1,
                  detail={"k_to_c": str(K_TO_C), "covariant_to_fixed": N, "fixed_to_twisted": f"1/{N}",
                          "twisted_to_untwisted": 1}))
    return rep
