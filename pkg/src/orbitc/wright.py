"""Wright's sufficient criterion for absolute continuity.

For every closed subsystem Psi of rank n - 1 the tuple must satisfy

    (L - 1)(|Phi| - |Psi|) - 1  >=  sum_i (|Phi_Xi| - min_w |Phi_Xi ∩ w(Psi)|).

The minimum over the Weyl group is taken by brute force on the root
permutation table, so every number in a report is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .classifier import TorusElement, _check_tuple, annihilator
from .errors import DomainError
from .roots import (
    DEFAULT_WEYL_CAP,
    RootSubsystem,
    WeylElement,
    build_root_system,
    closed_corank1_subsystems,
    conjugacy_key,
    subsystem_type,
    type_label,
    weyl_action_table,
    weyl_element_at,
)


def min_intersection(phi_x: RootSubsystem, psi: RootSubsystem,
                     cap: int = DEFAULT_WEYL_CAP) -> tuple[int, WeylElement]:
    """min over w in W of |phi_x ∩ w(psi)|, with a minimizing w."""
    a, b = phi_x.ambient, psi.ambient
    if (a.family, a.rank) != (b.family, b.rank):
        raise DomainError("subsystems live in different root systems")
    table = weyl_action_table(a, cap)
    if len(psi) == 0 or len(phi_x) == 0:
        return 0, weyl_element_at(a.family, a.rank, 0)
    counts = phi_x.mask[table[:, psi.indices]].sum(axis=1)
    k = int(np.argmin(counts))
    return int(counts[k]), weyl_element_at(a.family, a.rank, k)


@dataclass
class WrightRow:
    psi_type: str
    psi_size: int
    class_size: int  # number of closed corank-one subsystems in the class
    representative: RootSubsystem
    lhs: int
    phi_sizes: tuple[int, ...]
    mins: tuple[int, ...]

    @property
    def rhs(self) -> int:
        return sum(p - m for p, m in zip(self.phi_sizes, self.mins))

    @property
    def satisfied(self) -> bool:
        return self.lhs >= self.rhs

    def to_json(self) -> dict:
        return {
            "psi_type": self.psi_type,
            "psi_size": self.psi_size,
            "class_size": self.class_size,
            "psi": self.representative.to_json(),
            "lhs": self.lhs,
            "phi_sizes": list(self.phi_sizes),
            "mins": list(self.mins),
            "rhs": self.rhs,
            "satisfied": self.satisfied,
        }


@dataclass
class WrightReport:
    family: str
    rank: int
    root_count: int
    L: int
    rows: list[WrightRow] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(r.satisfied for r in self.rows)

    def rows_of_type(self, label: str) -> list[WrightRow]:
        return [r for r in self.rows if r.psi_type == label]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "root_count": self.root_count,
            "L": self.L,
            "overall": self.overall,
            "rows": [r.to_json() for r in self.rows],
        }

    def table(self) -> str:
        head = ["psi_type", "|psi|", "count", "lhs", "|phi_Xi|", "min_w", "rhs", "ok"]
        body = [[r.psi_type, str(r.psi_size), str(r.class_size), str(r.lhs),
                 ",".join(map(str, r.phi_sizes)), ",".join(map(str, r.mins)),
                 str(r.rhs), "yes" if r.satisfied else "NO"] for r in self.rows]
        widths = [max(len(x) for x in col) for col in zip(head, *body)]
        fmt = "  ".join(f"{{:<{w}}}" for w in widths)
        lines = [fmt.format(*head), fmt.format(*("-" * w for w in widths))]
        lines += [fmt.format(*row) for row in body]
        lines.append(f"overall: {'satisfied' if self.overall else 'not satisfied'}")
        return "\n".join(lines)


def psi_label(psi: RootSubsystem, cap: int = DEFAULT_WEYL_CAP) -> str:
    """Type label; in D_n with n even the two SU(n) classes get a sign suffix."""
    label = type_label(subsystem_type(psi))
    fam, n = psi.ambient.family, psi.ambient.rank
    if fam == "D" and n % 2 == 0 and label == f"SU({n})":
        plus = annihilator(TorusElement.of("D", n, [1] * n))
        same = conjugacy_key(psi, cap) == conjugacy_key(plus, cap)
        label += "+" if same else "-"
    return label


@lru_cache(maxsize=32)
def psi_classes(family: str, rank: int, cap: int = DEFAULT_WEYL_CAP) -> tuple:
    """Closed corank-one subsystems grouped by Weyl class, ordered by the
    canonical encoding, as (representative, class_size) pairs."""
    system = build_root_system(family, rank)
    groups: dict[tuple[int, ...], list[RootSubsystem]] = {}
    for psi in closed_corank1_subsystems(system, cap):
        groups.setdefault(conjugacy_key(psi, cap), []).append(psi)
    return tuple((groups[k][0], len(groups[k])) for k in sorted(groups))


def wright_check(xs: Sequence[TorusElement], cap: int = DEFAULT_WEYL_CAP) -> WrightReport:
    """Evaluate the criterion on every class of closed corank-one subsystems."""
    _check_tuple(xs)
    fam, n, L = xs[0].family, xs[0].rank, len(xs)
    phis = [annihilator(X) for X in xs]
    total = len(phis[0].ambient.roots)
    report = WrightReport(fam, n, total, L)
    for psi, count in psi_classes(fam, n, cap):
        mins = tuple(min_intersection(p, psi, cap)[0] for p in phis)
        report.rows.append(WrightRow(
            psi_type=psi_label(psi, cap),
            psi_size=len(psi),
            class_size=count,
            representative=psi,
            lhs=(L - 1) * (total - len(psi)) - 1,
            phi_sizes=tuple(len(p) for p in phis),
            mins=mins,
        ))
    return report
