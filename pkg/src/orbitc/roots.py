"""Root systems of the classical families, their Weyl groups, and root subsystems.

Roots are integer tuples: length ``n + 1`` for family A (entries summing to
zero), length ``n`` otherwise.  Weyl elements are signed permutations.
Conjugacy questions are settled by brute force over the whole group, using a
precomputed table of how each group element permutes the roots.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import factorial
from typing import Iterator, NamedTuple

import numpy as np

from .errors import CapacityError, DomainError
from .linalg import clear_denominators, integer_rank, rational_nullspace

FAMILIES = ("A", "B", "C", "D")
MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 2}
DEFAULT_WEYL_CAP = 2_000_000

Root = tuple[int, ...]


def check_family_rank(family: str, rank: int) -> None:
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}")
    if not isinstance(rank, (int, np.integer)) or rank < MIN_RANK[family]:
        raise DomainError(f"{family}{rank}: rank must be >= {MIN_RANK[family]}")


def coord_length(family: str, rank: int) -> int:
    return rank + 1 if family == "A" else rank


def _unit(m: int, i: int, c: int = 1) -> list[int]:
    v = [0] * m
    v[i] = c
    return v


def _generate_roots(family: str, n: int) -> list[Root]:
    m = coord_length(family, n)
    out: list[Root] = []
    for i, j in itertools.permutations(range(m), 2):
        v = [0] * m
        v[i], v[j] = 1, -1
        out.append(tuple(v))
        if family != "A" and i < j:
            for s in (1, -1):
                w = [0] * m
                w[i], w[j] = s, s
                out.append(tuple(w))
    if family in ("B", "C"):
        c = 1 if family == "B" else 2
        for i in range(m):
            out.append(tuple(_unit(m, i, c)))
            out.append(tuple(_unit(m, i, -c)))
    return out


def is_positive(r: Root) -> bool:
    """First nonzero coordinate positive."""
    for x in r:
        if x:
            return x > 0
    return False


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    roots: tuple[Root, ...]

    def __repr__(self) -> str:
        return f"RootSystem({self.family}{self.rank}, |roots|={len(self.roots)})"

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def coord_length(self) -> int:
        return coord_length(self.family, self.rank)

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in self.roots if is_positive(r))

    @cached_property
    def index(self) -> dict[Root, int]:
        return {r: k for k, r in enumerate(self.roots)}

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.roots, dtype=np.int64)

    @cached_property
    def negation(self) -> np.ndarray:
        """negation[k] is the index of -roots[k]."""
        return np.array([self.index[tuple(-x for x in r)] for r in self.roots])

    @property
    def algebra_dim(self) -> int:
        return self.rank + len(self.roots)

    def subsystem(self, roots) -> "RootSubsystem":
        return RootSubsystem(self, frozenset(tuple(int(x) for x in r) for r in roots))

    def full(self) -> "RootSubsystem":
        return RootSubsystem(self, frozenset(self.roots))


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    check_family_rank(family, rank)
    return RootSystem(family, int(rank), tuple(sorted(_generate_roots(family, int(rank)))))


def expected_root_count(family: str, n: int) -> int:
    return {"A": n * (n + 1), "B": 2 * n * n, "C": 2 * n * n, "D": 2 * n * (n - 1)}[family]


# ---------------------------------------------------------------- Weyl group


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation: coordinate ``j`` moves to position ``perm[j]``,
    then coordinate ``i`` of the result is multiplied by ``signs[i]``."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    @cached_property
    def inverse_perm(self) -> tuple[int, ...]:
        inv = [0] * len(self.perm)
        for j, p in enumerate(self.perm):
            inv[p] = j
        return tuple(inv)

    def __call__(self, r: Root) -> Root:
        inv = self.inverse_perm
        return tuple(self.signs[i] * r[inv[i]] for i in range(len(r)))

    def apply_set(self, roots) -> frozenset[Root]:
        return frozenset(self(r) for r in roots)

    @classmethod
    def identity(cls, m: int) -> "WeylElement":
        return cls(tuple(range(m)), (1,) * m)


def apply_weyl(w: WeylElement, r: Root) -> Root:
    if len(w.perm) != len(r):
        raise DomainError("Weyl element and root have different lengths")
    return w(r)


def weyl_order(family: str, rank: int) -> int:
    check_family_rank(family, rank)
    if family == "A":
        return factorial(rank + 1)
    if family == "D":
        return 2 ** (rank - 1) * factorial(rank)
    return 2**rank * factorial(rank)


def _check_cap(family: str, rank: int, cap: int) -> int:
    order = weyl_order(family, rank)
    if order > cap:
        raise CapacityError(f"|W({family}{rank})| = {order} exceeds the enumeration cap {cap}")
    return order


def _sign_patterns(family: str, m: int) -> list[tuple[int, ...]]:
    if family == "A":
        return [(1,) * m]
    pats = list(itertools.product((1, -1), repeat=m))
    if family == "D":
        pats = [p for p in pats if np.prod(p) == 1]
    return pats


def weyl_elements(family: str, rank: int, cap: int = DEFAULT_WEYL_CAP) -> Iterator[WeylElement]:
    """Every element of W exactly once: permutations in lexicographic order,
    sign patterns inner."""
    _check_cap(family, rank, cap)
    m = coord_length(family, rank)
    signs = _sign_patterns(family, m)
    for perm in itertools.permutations(range(m)):
        for s in signs:
            yield WeylElement(perm, s)


def _weyl_arrays(family: str, rank: int) -> tuple[np.ndarray, np.ndarray]:
    m = coord_length(family, rank)
    perms = np.array(list(itertools.permutations(range(m))), dtype=np.int64)
    signs = np.array(_sign_patterns(family, m), dtype=np.int64)
    P = np.repeat(perms, len(signs), axis=0)
    S = np.tile(signs, (len(perms), 1))
    return P, S


def _root_keys(a: np.ndarray) -> np.ndarray:
    m = a.shape[-1]
    weights = 5 ** np.arange(m, dtype=np.int64)
    return (a + 2) @ weights


@lru_cache(maxsize=8)
def _action_table(family: str, rank: int) -> np.ndarray:
    sys = build_root_system(family, rank)
    P, S = _weyl_arrays(family, rank)
    inv = np.argsort(P, axis=1)
    R = sys.array
    keys = _root_keys(R)
    order = np.argsort(keys)
    sorted_keys = keys[order]
    table = np.empty((len(P), len(R)), dtype=np.int32)
    chunk = 4096
    RT = R.T
    for start in range(0, len(P), chunk):
        inv_c = inv[start:start + chunk]
        S_c = S[start:start + chunk]
        imgs = RT[inv_c] * S_c[:, :, None]          # (w, coord, root)
        k = _root_keys(np.transpose(imgs, (0, 2, 1)))
        table[start:start + chunk] = order[np.searchsorted(sorted_keys, k)]
    return table


def weyl_action_table(system: RootSystem, cap: int = DEFAULT_WEYL_CAP) -> np.ndarray:
    """Array T with T[w, k] = index of w(roots[k]), rows in weyl_elements order."""
    _check_cap(system.family, system.rank, cap)
    return _action_table(system.family, system.rank)


def weyl_element_at(family: str, rank: int, k: int) -> WeylElement:
    """The k-th element of weyl_elements(family, rank)."""
    m = coord_length(family, rank)
    signs = _sign_patterns(family, m)
    pi, si = divmod(k, len(signs))
    perm = next(itertools.islice(itertools.permutations(range(m)), pi, None))
    return WeylElement(perm, signs[si])


# ---------------------------------------------------------------- subsystems


@dataclass(frozen=True)
class RootSubsystem:
    ambient: RootSystem
    roots: frozenset[Root]

    def __post_init__(self):
        idx = self.ambient.index
        for r in self.roots:
            if r not in idx:
                raise DomainError(f"{r} is not a root of {self.ambient.name}")
            if tuple(-x for x in r) not in self.roots:
                raise DomainError(f"subsystem not closed under negation at {r}")

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(sorted(self.roots))

    def __contains__(self, r) -> bool:
        return tuple(r) in self.roots

    @cached_property
    def indices(self) -> np.ndarray:
        idx = self.ambient.index
        return np.array(sorted(idx[r] for r in self.roots), dtype=np.int64)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(len(self.ambient.roots), dtype=bool)
        m[self.indices] = True
        return m

    @property
    def rank(self) -> int:
        return integer_rank(sorted(self.roots))

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in sorted(self.roots)]

    def weyl_image(self, w: WeylElement) -> "RootSubsystem":
        return RootSubsystem(self.ambient, w.apply_set(self.roots))


class Factor(NamedTuple):
    kind: str  # "SU", "B", "C" or "D"
    size: int  # SU(size) or B_size, ...

    def __str__(self) -> str:
        return f"SU({self.size})" if self.kind == "SU" else f"{self.kind}{self.size}"


def _find(parent: list[int], i: int) -> int:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def _sign_consistent(block: list[Root]) -> bool:
    """True iff there are signs eps with every root equal to eps_i e_i - eps_j e_j."""
    eps: dict[int, int] = {}
    edges: dict[int, list[tuple[int, int]]] = {}
    for r in block:
        nz = [(i, x) for i, x in enumerate(r) if x]
        if len(nz) != 2:
            return False
        (i, a), (j, b) = nz
        rel = -a * b  # eps_i * eps_j == rel
        edges.setdefault(i, []).append((j, rel))
        edges.setdefault(j, []).append((i, rel))
    for start in edges:
        if start in eps:
            continue
        eps[start] = 1
        stack = [start]
        while stack:
            i = stack.pop()
            for j, rel in edges[i]:
                want = eps[i] * rel
                if j not in eps:
                    eps[j] = want
                    stack.append(j)
                elif eps[j] != want:
                    return False
    return True


_TYPE_SIZE = {
    "SU": lambda k: k * (k - 1),
    "B": lambda k: 2 * k * k,
    "C": lambda k: 2 * k * k,
    "D": lambda k: 2 * k * (k - 1),
}


def _factor_sort_key(f: Factor):
    return (f.kind == "SU", f.kind, -f.size)


def subsystem_type(S: RootSubsystem) -> list[Factor]:
    """Lie type of a root subsystem, named in coordinates.

    Irreducible components (connected under non-orthogonality) sharing a
    coordinate are merged so that {+-e_i +- e_j} reads as D2 rather than
    SU(2) x SU(2) on the same letters; this matches how element types are
    named (B_J, C_J, D_J for the zero block, SU(s) for the others).
    """
    roots = sorted(S.roots)
    if not roots:
        return []
    n = len(roots)
    parent = list(range(n))
    arr = np.array(roots)
    gram = arr @ arr.T
    for i in range(n):
        for j in range(i + 1, n):
            if gram[i, j] != 0:
                parent[_find(parent, i)] = _find(parent, j)
    # merge components with overlapping coordinate support
    comps: dict[int, list[int]] = {}
    for i in range(n):
        comps.setdefault(_find(parent, i), []).append(i)
    supports = {c: {k for i in members for k, x in enumerate(roots[i]) if x} for c, members in comps.items()}
    keys = list(comps)
    cparent = {c: c for c in keys}

    def cfind(c):
        while cparent[c] != c:
            c = cparent[c]
        return c

    for a, b in itertools.combinations(keys, 2):
        if supports[a] & supports[b]:
            cparent[cfind(a)] = cfind(b)
    blocks: dict[int, list[Root]] = {}
    block_support: dict[int, set[int]] = {}
    for c in keys:
        root_c = cfind(c)
        blocks.setdefault(root_c, []).extend(roots[i] for i in comps[c])
        block_support.setdefault(root_c, set()).update(supports[c])

    factors = []
    for c, block in blocks.items():
        k = len(block_support[c])
        singles = [max(abs(x) for x in r) for r in block if sum(1 for x in r if x) == 1]
        if singles:
            kind = "B" if singles[0] == 1 else "C"
        elif _sign_consistent(block):
            kind = "SU"
        else:
            kind = "D"
        if S.ambient.family == "A" and kind != "SU":
            kind = "?"
        if kind == "?" or _TYPE_SIZE[kind](k) != len(block):
            raise RuntimeError(f"unrecognized root subsystem component {sorted(block)}")
        factors.append(Factor(kind, k))
    return sorted(factors, key=_factor_sort_key)


def type_label(factors: list[Factor]) -> str:
    return "x".join(str(f) for f in factors) if factors else "empty"


def _find_conjugator(S1: RootSubsystem, S2: RootSubsystem, cap: int, subset: bool) -> int | None:
    if S1.ambient.family != S2.ambient.family or S1.ambient.rank != S2.ambient.rank:
        raise DomainError("subsystems live in different root systems")
    table = weyl_action_table(S1.ambient, cap)
    if len(S1) == 0:
        return 0 if (subset or len(S2) == 0) else None
    if not subset and len(S1) != len(S2):
        return None
    hits = S2.mask[table[:, S1.indices]].all(axis=1)
    found = np.flatnonzero(hits)
    return int(found[0]) if len(found) else None


def is_weyl_conjugate(S1: RootSubsystem, S2: RootSubsystem, cap: int = DEFAULT_WEYL_CAP):
    """(True, w) with w(S1) == S2 setwise, or (False, None)."""
    k = _find_conjugator(S1, S2, cap, subset=False)
    if k is None:
        return False, None
    return True, weyl_element_at(S1.ambient.family, S1.ambient.rank, k)


def is_conjugate_to_subset(S1: RootSubsystem, S2: RootSubsystem, cap: int = DEFAULT_WEYL_CAP) -> bool:
    """True iff some w in W has w(S1) contained in S2."""
    return _find_conjugator(S1, S2, cap, subset=True) is not None


def conjugacy_key(S: RootSubsystem, cap: int = DEFAULT_WEYL_CAP) -> tuple[int, ...]:
    """Canonical representative of the Weyl orbit of S (lexicographically
    least sorted index tuple over the orbit)."""
    if len(S) == 0:
        return ()
    table = weyl_action_table(S.ambient, cap)
    images = np.sort(table[:, S.indices], axis=1)
    best = images[np.lexsort(images.T[::-1])[0]]
    return tuple(int(x) for x in best)


# ------------------------------------------------- closed corank-one subsystems


def _closure(system: RootSystem, gens: frozenset[Root]) -> frozenset[Root]:
    """span(gens) intersected with the root system."""
    m = system.coord_length
    null = rational_nullspace(sorted(gens), m)
    if not null:
        return frozenset(system.roots)
    N = np.array([clear_denominators(v) for v in null], dtype=object)
    R = system.array.astype(object)
    vals = R @ N.T
    keep = [r for r, row in zip(system.roots, vals) if not any(row)]
    return frozenset(keep)


def closed_subsystems_of_rank(system: RootSystem, k: int) -> list[RootSubsystem]:
    """All Psi with span(Psi) ∩ Phi = Psi and rank(Psi) = k."""
    if not 0 <= k <= system.rank:
        raise DomainError(f"rank {k} out of range for {system.name}")
    level: set[frozenset[Root]] = {frozenset()}
    pos = system.positive_roots
    for _ in range(k):
        nxt: set[frozenset[Root]] = set()
        for S in level:
            covered = set(S)
            for r in pos:
                if r in covered:
                    continue
                C = _closure(system, S | {r})
                covered |= C
                nxt.add(C)
        level = nxt
    out = [RootSubsystem(system, S) for S in level]
    out.sort(key=lambda s: tuple(s.indices))
    return out


def closed_corank1_subsystems(system: RootSystem, cap: int = DEFAULT_WEYL_CAP) -> list[RootSubsystem]:
    """Closed subsystems of rank n - 1 (the quantifier domain of Wright's test).

    Enumeration grows closed subsystems one rank at a time, deduplicating by
    set equality, which visits far fewer candidates than all (n-1)-subsets.
    """
    if len(system.roots) > 200:
        raise CapacityError(f"{system.name} too large for corank-one enumeration")
    return closed_subsystems_of_rank(system, system.rank - 1)
