"""Finite abelian groups, injective characters, and 2-torsion/doubling data.

Elements are handled internally as integer indices 0..|S|-1 (mixed radix
over the invariant factors, so index order is the lexicographic order of
coordinate tuples).  Addition and negation are table lookups.
"""

from __future__ import annotations

import math
import re
from functools import cached_property
from itertools import product

from .cyclotomic import CycNumber, zeta
from .errors import GroupSpecError, NotCyclic, NotInjective

__all__ = [
    "Character",
    "FinAbGroup",
    "coset_decomposition_2S",
    "make_character",
    "parse_group",
    "subgroup_s0",
]


def _prime_powers(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append((p, q))
        p += 1
    if n > 1:
        out.append((n, n))
    return out


def invariant_factors(factors) -> list[int]:
    """Invariant factors d1 | d2 | ... of the product of cyclic groups Z/f."""
    by_prime: dict[int, list[int]] = {}
    for f in factors:
        if f < 1:
            raise GroupSpecError(f"invalid cyclic factor {f}")
        for p, q in _prime_powers(f):
            by_prime.setdefault(p, []).append(q)
    if not by_prime:
        return []
    length = max(len(v) for v in by_prime.values())
    out = [1] * length
    for qs in by_prime.values():
        qs = sorted(qs, reverse=True)
        for i, q in enumerate(qs):
            out[length - 1 - i] *= q
    return [d for d in out if d > 1]


class FinAbGroup:
    """A finite abelian group given by its invariant factors."""

    def __init__(self, factors=()):
        self.invariant_factors = tuple(invariant_factors(factors))
        self.order = math.prod(self.invariant_factors)
        self.elements = list(product(*(range(d) for d in self.invariant_factors)))
        self._index = {e: i for i, e in enumerate(self.elements)}
        n = self.order
        self.add_table = [[self._index[self._add(a, b)] for b in self.elements] for a in self.elements]
        self.neg_table = [self._index[tuple((-x) % d for x, d in zip(a, self.invariant_factors))]
                          for a in self.elements]
        self.zero = 0
        assert len(self.elements) == n

    def _add(self, a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariant_factors))

    def __repr__(self):
        return f"FinAbGroup({self.name})"

    def __eq__(self, other):
        return isinstance(other, FinAbGroup) and other.invariant_factors == self.invariant_factors

    def __hash__(self):
        return hash(self.invariant_factors)

    def __len__(self):
        return self.order

    @property
    def name(self) -> str:
        if not self.invariant_factors:
            return "Z1"
        return "x".join(f"Z{d}" for d in self.invariant_factors)

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def index(self, element) -> int:
        if isinstance(element, int):
            if not self.is_cyclic:
                raise GroupSpecError("integer elements only make sense for cyclic groups")
            return element % self.order if self.order else 0
        return self._index[tuple(element)]

    def element(self, i: int) -> tuple:
        return self.elements[i]

    def label(self, i: int) -> str:
        e = self.elements[i]
        if len(e) == 1:
            return str(e[0])
        if not e:
            return "0"
        return "(" + ",".join(map(str, e)) + ")"

    def add(self, i: int, j: int) -> int:
        return self.add_table[i][j]

    def neg(self, i: int) -> int:
        return self.neg_table[i]

    def sub(self, i: int, j: int) -> int:
        return self.add_table[i][self.neg_table[j]]

    def mul(self, n: int, i: int) -> int:
        """n * element i."""
        e = self.elements[i]
        return self._index[tuple((n * x) % d for x, d in zip(e, self.invariant_factors))]

    @cached_property
    def s0(self) -> list[int]:
        return [a for a in range(self.order) if self.add(a, a) == 0]

    @cached_property
    def two_s(self) -> list[int]:
        return sorted({self.add(a, a) for a in range(self.order)})

    @cached_property
    def half_set(self) -> list[int]:
        """S_-: the least of each pair {a, -a} with a != -a."""
        return [a for a in range(self.order) if a < self.neg(a)]

    def normal_form(self, a: int) -> tuple[int, int]:
        """(sign, representative) with x^{-a} = -x^{a}; sign 0 when a = -a."""
        na = self.neg(a)
        if a == na:
            return 0, a
        return (1, a) if a < na else (-1, na)


def parse_group(spec: str) -> FinAbGroup:
    """Parse CLI syntax such as ``Z5``, ``Z6``, ``Z2xZ2``."""
    s = spec.replace(" ", "")
    if not re.fullmatch(r"Z\d+(?:xZ\d+)*", s):
        raise GroupSpecError(f"cannot parse group spec {spec!r}")
    factors = [int(f) for f in re.findall(r"\d+", s)]
    if any(f < 1 for f in factors):
        raise GroupSpecError(f"cyclic factors must be positive in {spec!r}")
    return FinAbGroup(factors)


def subgroup_s0(S: FinAbGroup) -> list[tuple]:
    return [S.element(a) for a in S.s0]


def coset_decomposition_2S(S: FinAbGroup):
    """(k, r, cosets): k = |2S|, r = |S/2S|, cosets[0] = 2S, as element indices."""
    two = S.two_s
    seen = set()
    cosets = []
    for a in range(S.order):
        if a in seen:
            continue
        coset = sorted(S.add(a, t) for t in two)
        seen.update(coset)
        cosets.append(coset)
    return len(two), len(cosets), cosets


class Character:
    """An injective character chi(a) = zeta_N^(k a) of the cyclic group Z/N."""

    def __init__(self, group: FinAbGroup, k: int):
        self.group = group
        self.k = k
        self.N = max(group.order, 1)
        self.unit = zeta(self.N, k)
        self._values = [zeta(self.N, (k * self._coord(a)) % self.N) for a in range(group.order)]

    def _coord(self, a):
        e = self.group.element(a)
        return e[0] if e else 0

    def __call__(self, a: int) -> CycNumber:
        return self._values[a]

    def power(self, a: int, n: int) -> CycNumber:
        """chi(a)^n."""
        return zeta(self.N, (self.k * self._coord(a) * n) % self.N)

    def generator(self) -> int:
        """The group element g with chi(g) = zeta_N."""
        inv = pow(self.k, -1, self.N) if self.N > 1 else 0
        return self.group.index(inv) if self.group.order > 1 else 0

    def __repr__(self):
        return f"Character({self.group.name}, k={self.k})"


def make_character(S: FinAbGroup, k: int = 1) -> Character:
    if not S.is_cyclic:
        raise NotCyclic(f"{S.name} is not cyclic; no injective character exists")
    N = max(S.order, 1)
    if math.gcd(k, N) != 1:
        raise NotInjective(f"gcd({k}, {N}) != 1; character zeta^{k} is not injective on {S.name}")
    return Character(S, k)
