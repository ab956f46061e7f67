"""Torus elements, their types, and the absolute continuity decision.

A torus element is a vector of exact rationals.  For family A it has
``n + 1`` entries summing to zero (diagonal of an su(n+1) matrix divided by
i); for B, C, D it holds the n block parameters of the torus embedding.

The decision procedure: a tuple whose orbital measures convolve to an
absolutely continuous measure must satisfy the eligibility inequality on the
S statistics; eligible tuples are absolutely continuous unless they are one of
a short list of exceptional configurations.  One exceptional pair in D_n,
n >= 6, is unresolved and reported as Unknown.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Iterable, Sequence

from .errors import DomainError
from .roots import (
    DEFAULT_WEYL_CAP,
    MIN_RANK,
    RootSubsystem,
    build_root_system,
    check_family_rank,
    coord_length,
    is_conjugate_to_subset,
    is_weyl_conjugate,
)

# ranks where the characterization is asserted; C2 is included since it is
# isomorphic to B2 (where every pair is absolutely continuous)
DECIDE_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise DomainError("floating point input refused; use exact rationals such as '1/3'")
    try:
        return Fraction(x)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"not a rational number: {x!r}") from exc


@dataclass(frozen=True)
class TorusElement:
    family: str
    rank: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        check_family_rank(self.family, self.rank)
        vals = tuple(_as_fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        m = coord_length(self.family, self.rank)
        if len(vals) != m:
            raise DomainError(f"{self.family}{self.rank} needs {m} values, got {len(vals)}")
        if self.family == "A" and sum(vals) != 0:
            raise DomainError("family A values must sum to zero")

    @classmethod
    def of(cls, family: str, rank: int, values: Iterable) -> "TorusElement":
        return cls(family, rank, tuple(values))

    @property
    def is_zero(self) -> bool:
        return not any(self.values)

    @property
    def spec(self) -> str:
        return f"{self.family}{self.rank}:[" + ",".join(str(v) for v in self.values) + "]"

    def __str__(self) -> str:
        return self.spec


class Status(str, enum.Enum):
    ABSOLUTELY_CONTINUOUS = "AbsolutelyContinuous"
    SINGULAR = "Singular"
    UNKNOWN = "Unknown"


class Reason(str, enum.Enum):
    ELIGIBLE_NONEXCEPTIONAL = "eligible_nonexceptional"
    NOT_ELIGIBLE = "not_eligible"
    EXCEPTIONAL = "exceptional"
    OPEN_CASE = "open_case"
    TYPE_MISMATCH = "type_mismatch"  # group_decide only


@dataclass(frozen=True)
class Verdict:
    status: Status
    reason: Reason
    case: str | None = None  # exceptional case label "a".."d"

    def to_json(self) -> dict:
        out = {"status": self.status.value, "reason": self.reason.value}
        if self.case:
            out["case"] = self.case
        return out


@dataclass(frozen=True)
class ElementType:
    family: str
    rank: int
    J: int
    parts: tuple[int, ...]  # block sizes, descending
    sign: str | None = None  # "+" / "-" for family D with J == 0

    def __post_init__(self):
        total = sum(self.parts) + self.J
        if total != coord_length(self.family, self.rank):
            raise DomainError(f"type sizes sum to {total}, expected {coord_length(self.family, self.rank)}")
        if self.family == "A" and self.J:
            raise DomainError("family A has no zero block")
        if (self.sign is not None) != (self.family == "D" and self.J == 0):
            raise DomainError("sign class applies exactly to family D with J = 0")
        if any(p < 1 for p in self.parts) or tuple(sorted(self.parts, reverse=True)) != self.parts:
            raise DomainError("parts must be positive and descending")
        if self.family == "A" and len(self.parts) < 2 or self.family != "A" and not self.parts:
            raise DomainError("the zero element has no type")

    @property
    def smax(self) -> int:
        return self.parts[0]

    @property
    def dominant_zero_block(self) -> bool:
        """Dominant B/C/D type: 2J >= max s_j (never for family A)."""
        return self.family != "A" and 2 * self.J >= self.smax

    @property
    def S(self) -> int:
        return 2 * self.J if self.dominant_zero_block else self.smax

    @property
    def factors(self) -> list[str]:
        out = []
        if self.family != "A" and self.J:
            out.append(f"{self.family}{self.J}")
        out += [f"SU({s})" for s in self.parts if s > 1]
        return out

    @property
    def label(self) -> str:
        base = "x".join(self.factors) or "regular"
        return base + (self.sign or "")

    def is_su(self, k: int, J: int = 0, others: tuple[int, ...] = ()) -> bool:
        return self.J == J and self.parts == (k,) + others

    def witness(self) -> TorusElement:
        """Canonical element of this type: zeros, then block k filled with k."""
        vals: list[Fraction] = [Fraction(0)] * self.J
        for k, s in enumerate(self.parts, start=1):
            vals += [Fraction(k)] * s
        if self.family == "A":
            mean = sum(vals) / len(vals)
            vals = [v - mean for v in vals]
        if self.sign == "-":
            vals[-1] = -vals[-1]
        return TorusElement(self.family, self.rank, tuple(vals))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}:{self.label}"


def annihilator(X: TorusElement) -> RootSubsystem:
    """Phi_X: roots vanishing on X, evaluated exactly."""
    sys = build_root_system(X.family, X.rank)
    v = X.values
    return sys.subsystem(r for r in sys.roots if sum(a * x for a, x in zip(r, v) if a) == 0)


def element_type(X: TorusElement) -> ElementType:
    if X.is_zero:
        raise DomainError("the zero element has a one-point orbit and no type")
    if X.family == "A":
        parts = tuple(sorted(Counter(X.values).values(), reverse=True))
        return ElementType("A", X.rank, 0, parts)
    absvals = [abs(v) for v in X.values]
    J = absvals.count(0)
    parts = tuple(sorted(Counter(a for a in absvals if a).values(), reverse=True))
    sign = None
    if X.family == "D" and J == 0:
        negatives = sum(1 for v in X.values if v < 0)
        sign = "-" if negatives % 2 else "+"
    return ElementType(X.family, X.rank, J, parts, sign)


def s_value(X: TorusElement) -> int:
    return element_type(X).S


def canonical_form(X: TorusElement) -> TorusElement:
    """Weyl-equivalent representative: zeros first, then blocks by size
    (descending) and value (ascending); for B/C/D all values nonnegative
    except, in family D with J = 0 and odd sign class, the last one."""
    t = element_type(X)
    if X.family == "A":
        cnt = Counter(X.values)
    else:
        cnt = Counter(abs(v) for v in X.values if v)
    blocks = sorted(cnt.items(), key=lambda kv: (-kv[1], kv[0]))
    vals: list[Fraction] = [Fraction(0)] * t.J
    for value, size in blocks:
        vals += [value] * size
    if t.sign == "-":
        vals[-1] = -vals[-1]
    return TorusElement(X.family, X.rank, tuple(vals))


def reduce(X: TorusElement) -> TorusElement:
    """X -> X' in rank n - 1: drop a zero when 2J >= s_1, otherwise drop one
    entry of the first largest block (canonical order)."""
    if X.rank - 1 < MIN_RANK[X.family]:
        raise DomainError(f"cannot reduce below {X.family}{MIN_RANK[X.family]}")
    t = element_type(X)
    c = list(canonical_form(X).values)
    if X.family != "A" and t.J > 0 and 2 * t.J >= t.smax:
        del c[0]
    else:
        del c[t.J]
    if X.family == "A":
        mean = sum(c) / len(c)
        c = [v - mean for v in c]
    return TorusElement(X.family, X.rank - 1, tuple(c))


def reduction_chain(X: TorusElement) -> list[TorusElement]:
    chain = [X]
    while chain[-1].rank - 1 >= MIN_RANK[X.family]:
        chain.append(reduce(chain[-1]))
    return chain


def _check_tuple(xs: Sequence[TorusElement]) -> None:
    if len(xs) < 2:
        raise DomainError("a tuple needs at least two elements")
    fams = {(x.family, x.rank) for x in xs}
    if len(fams) != 1:
        raise DomainError(f"mixed families/ranks in tuple: {sorted(fams)}")
    for x in xs:
        if x.is_zero:
            raise DomainError("tuple elements must be nonzero")


def eligibility_bound(family: str, rank: int, L: int) -> int:
    return (L - 1) * (rank + 1) if family == "A" else (L - 1) * 2 * rank


def is_eligible(xs: Sequence[TorusElement]) -> bool:
    _check_tuple(xs)
    x0 = xs[0]
    return sum(s_value(x) for x in xs) <= eligibility_bound(x0.family, x0.rank, len(xs))


def _is_su_minus_one(t: ElementType, n: int) -> bool:
    # SU(n-1) x D1 or SU(n-1) x SU(1)
    return t.is_su(n - 1, J=1) or t.is_su(n - 1, J=0, others=(1,))


def is_exceptional(xs: Sequence[TorusElement], cap: int = DEFAULT_WEYL_CAP) -> tuple[bool, str | None]:
    """Match the exceptional configurations; returns (True, case) or (False, None).

    a: SU(2m), L = 2, both of type SU(m) x SU(m), m >= 2
    b: D_n, L = 2, types (SU(n), SU(n)) or (SU(n), SU(n-1))
    c: D_4, L = 2, (SU(4), SU(2) x SU(2)) with the second annihilator Weyl
       conjugate to a subset of the first, or (SU(4), SU(2) x D_2)
    d: D_4, L = 3, three SU(4) with pairwise conjugate annihilators
    """
    _check_tuple(xs)
    fam, n, L = xs[0].family, xs[0].rank, len(xs)
    types = [element_type(x) for x in xs]
    if fam == "A" and L == 2 and (n + 1) % 2 == 0:
        m = (n + 1) // 2
        if m >= 2 and all(t.parts == (m, m) for t in types):
            return True, "a"
    if fam != "D":
        return False, None
    if L == 2:
        for i, j in ((0, 1), (1, 0)):
            ti, tj = types[i], types[j]
            if not ti.is_su(n):
                continue
            if tj.is_su(n) or _is_su_minus_one(tj, n):
                return True, "b"
            if n == 4:
                if tj.is_su(2, J=2):
                    return True, "c"
                if tj.is_su(2, J=0, others=(2,)) and is_conjugate_to_subset(
                    annihilator(xs[j]), annihilator(xs[i]), cap
                ):
                    return True, "c"
    if L == 3 and n == 4 and all(t.is_su(4) for t in types):
        phis = [annihilator(x) for x in xs]
        if all(is_weyl_conjugate(phis[0], p, cap)[0] for p in phis[1:]):
            return True, "d"
    return False, None


def is_open_case(xs: Sequence[TorusElement]) -> bool:
    """The unresolved pair (SU(n), SU(n-1)) in D_n with n >= 6."""
    if len(xs) != 2 or xs[0].family != "D" or xs[0].rank < 6:
        return False
    n = xs[0].rank
    t = [element_type(x) for x in xs]
    return (t[0].is_su(n) and _is_su_minus_one(t[1], n)) or (t[1].is_su(n) and _is_su_minus_one(t[0], n))


def decide(xs: Sequence[TorusElement], cap: int = DEFAULT_WEYL_CAP) -> Verdict:
    _check_tuple(xs)
    fam, n = xs[0].family, xs[0].rank
    if n < DECIDE_MIN_RANK[fam]:
        raise DomainError(f"the characterization covers {fam}_n for n >= {DECIDE_MIN_RANK[fam]}")
    if not is_eligible(xs):
        return Verdict(Status.SINGULAR, Reason.NOT_ELIGIBLE)
    exc, case = is_exceptional(xs, cap)
    if exc:
        if is_open_case(xs):
            return Verdict(Status.UNKNOWN, Reason.OPEN_CASE, case)
        return Verdict(Status.SINGULAR, Reason.EXCEPTIONAL, case)
    return Verdict(Status.ABSOLUTELY_CONTINUOUS, Reason.ELIGIBLE_NONEXCEPTIONAL)


def min_power(X: TorusElement, cap: int = DEFAULT_WEYL_CAP) -> int | None:
    """Smallest L with the L-fold convolution of mu_X absolutely continuous,
    scanning L = 2 .. n + 2; None if an Unknown verdict or the cap is hit."""
    for L in range(2, X.rank + 3):
        v = decide([X] * L, cap)
        if v.status is Status.ABSOLUTELY_CONTINUOUS:
            return L
        if v.status is Status.UNKNOWN:
            return None
    return None


def dominant_zero_block_power(family: str, n: int, J: int) -> int:
    """Closed form ceil(n / (n - J)) for a dominant zero-block element."""
    return ceil(Fraction(n, n - J))


# ------------------------------------------------------------------ enumerations


def _partitions(total: int, largest: int | None = None):
    if total == 0:
        yield ()
        return
    largest = total if largest is None else min(largest, total)
    for k in range(largest, 0, -1):
        for rest in _partitions(total - k, k):
            yield (k,) + rest


def all_element_types(family: str, rank: int) -> list[ElementType]:
    """Every type of nonzero torus element, with both D sign classes."""
    check_family_rank(family, rank)
    out = []
    if family == "A":
        for p in _partitions(rank + 1):
            if len(p) >= 2:
                out.append(ElementType("A", rank, 0, p))
        return out
    for J in range(0, rank):
        for p in _partitions(rank - J):
            if family == "D" and J == 0:
                out.append(ElementType(family, rank, 0, p, "+"))
                out.append(ElementType(family, rank, 0, p, "-"))
            else:
                out.append(ElementType(family, rank, J, p))
    return out


# ------------------------------------------------------------------- group side


@dataclass(frozen=True)
class GroupTorusElement:
    """x = exp(X) for the torus element with coordinates ``angles * pi``;
    angles are exact rationals (multiples of pi)."""

    family: str
    rank: int
    angles: tuple[Fraction, ...]

    def __post_init__(self):
        check_family_rank(self.family, self.rank)
        object.__setattr__(self, "angles", tuple(_as_fraction(a) for a in self.angles))
        m = coord_length(self.family, self.rank)
        if len(self.angles) != m:
            raise DomainError(f"{self.family}{self.rank} needs {m} angles")
        total = sum(self.angles)
        if self.family == "A" and (total.denominator != 1 or total.numerator % 2):
            raise DomainError("family A angles must sum to 0 mod 2 (units of pi)")

    def algebra_preimage(self) -> TorusElement:
        vals = list(self.angles)
        if self.family == "A":
            # central shift; the conjugacy class is translated by a central element
            mean = sum(vals) / len(vals)
            vals = [v - mean for v in vals]
        return TorusElement(self.family, self.rank, tuple(vals))


def group_annihilator(x: GroupTorusElement) -> RootSubsystem:
    """Phi_x = {alpha : alpha(x) = 0 mod 2 pi}."""
    sys = build_root_system(x.family, x.rank)
    keep = []
    for r in sys.roots:
        val = sum(a * t for a, t in zip(r, x.angles) if a)
        if val.denominator == 1 and val.numerator % 2 == 0:
            keep.append(r)
    return sys.subsystem(keep)


def group_decide(xs: Sequence[GroupTorusElement], cap: int = DEFAULT_WEYL_CAP) -> Verdict:
    if len(xs) < 2:
        raise DomainError("a tuple needs at least two elements")
    preimages = []
    same_type = True
    for x in xs:
        phi_x = group_annihilator(x)
        if len(phi_x) == len(phi_x.ambient.roots):
            raise DomainError("central element: its conjugacy class is a single point")
        X = x.algebra_preimage()
        if X.is_zero:
            raise DomainError("identity element has a trivial conjugacy class")
        if annihilator(X).roots != phi_x.roots:
            same_type = False
        preimages.append(X)
    alg = decide(preimages, cap)
    if same_type:
        return alg
    if alg.status is Status.SINGULAR:
        return alg
    return Verdict(Status.UNKNOWN, Reason.TYPE_MISMATCH)
