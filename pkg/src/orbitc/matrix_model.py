"""Matrix realizations su(n+1), so(2n+1), sp(n), so(2n) of the classical algebras.

Two arithmetic modes share one code path:

* numeric: ``numpy`` float/complex arrays;
* exact: object arrays of ``Fraction`` (B, D) or :class:`ExactComplexMatrix`
  (A, C), which keeps real and imaginary parts as separate Fraction arrays.

Both support ``@``, ``+``, ``-``, scalar ``*``, ``.conj()`` and ``.T``, so the
bracket, adjoint action and tangent spaces are written once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

import numpy as np
from scipy.linalg import expm

from .classifier import TorusElement, annihilator
from .errors import DomainError
from .linalg import exact_inverse, rational_rank
from .roots import build_root_system, check_family_rank

COMPLEX_FAMILIES = ("A", "C")


@dataclass(frozen=True, eq=False)
class ExactComplexMatrix:
    re: np.ndarray
    im: np.ndarray

    @property
    def shape(self):
        return self.re.shape

    def __matmul__(self, other):
        if isinstance(other, ExactComplexMatrix):
            return ExactComplexMatrix(self.re @ other.re - self.im @ other.im, self.re @ other.im + self.im @ other.re)
        return ExactComplexMatrix(self.re @ other, self.im @ other)

    def __add__(self, other):
        return ExactComplexMatrix(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return ExactComplexMatrix(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return ExactComplexMatrix(-self.re, -self.im)

    def __mul__(self, c):
        c = complex(c) if not isinstance(c, (int, Fraction)) else c
        if isinstance(c, complex):
            a, b = Fraction(c.real), Fraction(c.imag)
            return ExactComplexMatrix(self.re * a - self.im * b, self.re * b + self.im * a)
        return ExactComplexMatrix(self.re * c, self.im * c)

    __rmul__ = __mul__

    def conj(self):
        return ExactComplexMatrix(self.re, -self.im)

    @property
    def T(self):
        return ExactComplexMatrix(self.re.T, self.im.T)

    def __eq__(self, other):
        return (
            isinstance(other, ExactComplexMatrix)
            and np.array_equal(self.re, other.re)
            and np.array_equal(self.im, other.im)
        )

    def to_complex(self) -> np.ndarray:
        return self.re.astype(float) + 1j * self.im.astype(float)

    def inverse(self) -> "ExactComplexMatrix":
        n = self.shape[0]
        real = np.block([[self.re, -self.im], [self.im, self.re]])
        inv = exact_inverse(real)
        return ExactComplexMatrix(inv[:n, :n], inv[n:, :n])


Matrix = Union[np.ndarray, ExactComplexMatrix]


def is_exact(M: Matrix) -> bool:
    return isinstance(M, ExactComplexMatrix) or (isinstance(M, np.ndarray) and M.dtype == object)


def matrix_size(family: str, rank: int) -> int:
    return {"A": rank + 1, "B": 2 * rank + 1, "C": 2 * rank, "D": 2 * rank}[family]


def algebra_dim(family: str, rank: int) -> int:
    """Matrix-side dimension formula (independent of the root count)."""
    p = matrix_size(family, rank)
    if family == "A":
        return p * p - 1
    if family == "C":
        return rank * (2 * rank + 1)
    return p * (p - 1) // 2


def _fr(a: np.ndarray) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    flat = a.ravel()
    out.ravel()[:] = [Fraction(int(x)) if float(x).is_integer() else Fraction(float(x)) for x in flat]
    return out


def to_exact(M: np.ndarray, family: str) -> Matrix:
    """Integer-valued numeric matrix -> exact matrix of the family's kind."""
    if family in COMPLEX_FAMILIES:
        return ExactComplexMatrix(_fr(np.real(M)), _fr(np.imag(M)))
    return _fr(np.real(M))


def to_numeric(M: Matrix) -> np.ndarray:
    if isinstance(M, ExactComplexMatrix):
        return M.to_complex()
    if M.dtype == object:
        return M.astype(float)
    return M


def identity(family: str, rank: int, exact: bool = False) -> Matrix:
    p = matrix_size(family, rank)
    I = np.eye(p, dtype=complex if family in COMPLEX_FAMILIES else float)
    return to_exact(I, family) if exact else I


@lru_cache(maxsize=None)
def _numeric_basis(family: str, rank: int) -> tuple[np.ndarray, ...]:
    check_family_rank(family, rank)
    p = matrix_size(family, rank)
    out = []
    if family == "A":
        for i in range(p):
            for j in range(i + 1, p):
                m = np.zeros((p, p), complex)
                m[i, j], m[j, i] = 1, -1
                out.append(m)
                m = np.zeros((p, p), complex)
                m[i, j], m[j, i] = 1j, 1j
                out.append(m)
        for k in range(p - 1):
            m = np.zeros((p, p), complex)
            m[k, k], m[k + 1, k + 1] = 1j, -1j
            out.append(m)
    elif family in ("B", "D"):
        for i in range(p):
            for j in range(i + 1, p):
                m = np.zeros((p, p))
                m[i, j], m[j, i] = 1, -1
                out.append(m)
    else:
        n = rank

        def sp(A, B):
            return np.block([[A, B], [-B.conj(), A.conj()]])

        Z = np.zeros((n, n), complex)
        for i in range(n):
            A = Z.copy()
            A[i, i] = 1j
            out.append(sp(A, Z))
        for i in range(n):
            for j in range(i + 1, n):
                A = Z.copy()
                A[i, j], A[j, i] = 1, -1
                out.append(sp(A, Z))
                A = Z.copy()
                A[i, j], A[j, i] = 1j, 1j
                out.append(sp(A, Z))
        for i in range(n):
            for j in range(i, n):
                for c in (1, 1j):
                    B = Z.copy()
                    B[i, j] = B[j, i] = c
                    out.append(sp(Z, B))
    for m in out:
        m.setflags(write=False)
    return tuple(out)


@lru_cache(maxsize=None)
def _exact_basis(family: str, rank: int) -> tuple:
    return tuple(to_exact(m, family) for m in _numeric_basis(family, rank))


def algebra_basis(family: str, rank: int, exact: bool = False) -> list[Matrix]:
    """A real basis of the compact algebra; its length is n + |Phi|."""
    return list(_exact_basis(family, rank) if exact else _numeric_basis(family, rank))


def embed_torus(X: TorusElement, exact: bool = False) -> Matrix:
    fam, n = X.family, X.rank
    p = matrix_size(fam, n)
    if exact:
        re = np.full((p, p), Fraction(0), dtype=object)
        im = np.full((p, p), Fraction(0), dtype=object)
    else:
        re = np.zeros((p, p))
        im = np.zeros((p, p))
    vals = X.values if exact else [float(v) for v in X.values]
    if fam == "A":
        for k, a in enumerate(vals):
            im[k, k] = a
    elif fam == "C":
        for k, a in enumerate(vals):
            im[k, k] = a
            im[n + k, n + k] = -a
    else:
        for k, b in enumerate(vals):
            re[2 * k, 2 * k + 1] = b
            re[2 * k + 1, 2 * k] = -b
    if fam in COMPLEX_FAMILIES:
        return ExactComplexMatrix(re, im) if exact else re + 1j * im
    return re


def bracket(A: Matrix, B: Matrix) -> Matrix:
    if A.shape != B.shape:
        raise DomainError(f"shape mismatch {A.shape} vs {B.shape}")
    return A @ B - B @ A


def dagger(g: Matrix) -> Matrix:
    return g.conj().T


def adjoint(g: Matrix, M: Matrix) -> Matrix:
    """Ad(g) M = g M g^{-1}, with g^{-1} = g^* for the compact groups."""
    if g.shape != M.shape:
        raise DomainError(f"shape mismatch {g.shape} vs {M.shape}")
    return g @ M @ dagger(g)


def coordinates(M: Matrix, family: str) -> list:
    """Real coordinates of an algebra element, one per dimension.

    so(p): strict upper triangle.  su(p): Im of the first p-1 diagonal entries,
    Re/Im of the strict upper triangle.  sp(n): the same for the A block plus
    Re/Im of the upper triangle (with diagonal) of the symmetric B block.
    """
    if isinstance(M, ExactComplexMatrix):
        re, im = M.re, M.im
    elif M.dtype == object:
        re, im = M, None
    else:
        re, im = np.real(M), np.imag(M)
    p = re.shape[0]
    if family in ("B", "D"):
        iu = np.triu_indices(p, 1)
        return list(re[iu])
    if family == "A":
        iu = np.triu_indices(p, 1)
        return list(im[np.arange(p - 1), np.arange(p - 1)]) + list(re[iu]) + list(im[iu])
    n = p // 2
    iu = np.triu_indices(n, 1)
    iu0 = np.triu_indices(n, 0)
    Ar, Ai = re[:n, :n], im[:n, :n]
    Br, Bi = re[:n, n:], im[:n, n:]
    return list(Ai[np.arange(n), np.arange(n)]) + list(Ar[iu]) + list(Ai[iu]) + list(Br[iu0]) + list(Bi[iu0])


def membership_residual(M: np.ndarray, family: str) -> float:
    """Max violation of the algebra's defining relations (numeric)."""
    M = to_numeric(M)
    res = np.abs(M + M.conj().T).max()
    if family == "A":
        res = max(res, abs(np.trace(M)))
    elif family in ("B", "D"):
        res = max(res, np.abs(np.imag(M)).max())
    else:
        n = M.shape[0] // 2
        A, B = M[:n, :n], M[:n, n:]
        res = max(res, np.abs(B - B.T).max(), np.abs(M[n:, :n] + B.conj()).max(), np.abs(M[n:, n:] - A.conj()).max())
    return float(res)


def symplectic_form(n: int) -> np.ndarray:
    I = np.eye(n)
    Z = np.zeros((n, n))
    return np.block([[Z, -I], [I, Z]])


def group_residual(g: Matrix, family: str) -> float:
    """Max violation of unitarity (and U^T J U = J for Sp(n))."""
    if is_exact(g):
        raise DomainError("use exact_group_check for exact matrices")
    p = g.shape[0]
    res = np.abs(g @ g.conj().T - np.eye(p)).max()
    if family == "C":
        J = symplectic_form(p // 2)
        res = max(res, np.abs(g.T @ J @ g - J).max())
    return float(res)


def exact_group_check(g: Matrix, family: str) -> bool:
    p = g.shape[0]
    gg = g @ dagger(g)
    I = identity_exact(family, p)
    unitary = gg == I if isinstance(g, ExactComplexMatrix) else np.array_equal(gg, I)
    if not unitary:
        return False
    if family == "C":
        J = to_exact(symplectic_form(p // 2).astype(complex), "C")
        return g.T @ J @ g == J
    return True


def identity_exact(family: str, p: int) -> Matrix:
    I = np.eye(p, dtype=complex if family in COMPLEX_FAMILIES else float)
    return to_exact(I, family)


# --------------------------------------------------------------- tangent spaces


@dataclass(frozen=True, eq=False)
class TangentBasis:
    matrices: list
    base_point: Matrix
    family: str

    def coordinate_rows(self) -> list[list]:
        return [coordinates(m, self.family) for m in self.matrices]


def tangent_basis(X: TorusElement, g: Matrix | None = None, exact: bool = False) -> TangentBasis:
    """{[B_k, Ad(g) X] : B_k in algebra_basis}, spanning T_{Ad(g)X}(O_X)."""
    if X.is_zero:
        raise DomainError("the zero element has a trivial orbit")
    if g is not None:
        exact = is_exact(g)
    H = embed_torus(X, exact)
    base = H if g is None else adjoint(g, H)
    mats = [bracket(B, base) for B in algebra_basis(X.family, X.rank, exact)]
    return TangentBasis(mats, base, X.family)


@lru_cache(maxsize=256)
def torus_tangent_rows(X: TorusElement) -> tuple[tuple, ...]:
    """Independent subset of [B_k, X] at the torus point itself (exact).

    Used by the span oracle: Ad(g) maps T_X onto T_{Ad(g)X}, so moving this
    basis spans the same space as the full bracket list at Ad(g)X.
    """
    tb = tangent_basis(X, exact=True)
    picked = []
    rows: list[list] = []
    for M in tb.matrices:
        row = coordinates(M, X.family)
        if not any(row):
            continue
        if rational_rank(rows + [row]) == len(rows) + 1:
            rows.append(row)
            picked.append(M)
    return tuple(picked)


def orbit_dimension(X: TorusElement) -> int:
    sys = build_root_system(X.family, X.rank)
    return len(sys.roots) - len(annihilator(X))


# ------------------------------------------------------------- group sampling


@dataclass(frozen=True, eq=False)
class GroupMatrix:
    entries: Matrix
    family: str
    rank: int
    exact: bool
    seed: int


def random_algebra_element(family: str, rank: int, rng: np.random.Generator, exact: bool,
                           num_range: int = 3, max_den: int = 4) -> Matrix:
    basis = algebra_basis(family, rank, exact)
    if not exact:
        coeffs = rng.uniform(-1.0, 1.0, size=len(basis))
        return sum(c * B for c, B in zip(coeffs, basis))
    dens = rng.integers(1, max_den + 1, size=len(basis))
    nums = [int(rng.integers(-num_range * d, num_range * d + 1)) for d in dens]
    out = None
    for num, den, B in zip(nums, dens, basis):
        term = B * Fraction(num, int(den))
        out = term if out is None else out + term
    return out


def cayley(S: Matrix, family: str) -> Matrix:
    """(I - S)^{-1} (I + S); exact when S is exact."""
    p = S.shape[0]
    I = identity_exact(family, p)
    A = I - S
    inv = A.inverse() if isinstance(A, ExactComplexMatrix) else exact_inverse(A)
    return inv @ (I + S)


def random_group_element(family: str, rank: int, seed: int, mode: str = "numeric",
                         num_range: int = 3, max_den: int = 4) -> GroupMatrix:
    """Seeded random element of the compact group.

    numeric: exp of a random algebra element with coefficients in [-1, 1].
    exact: Cayley transform of a random algebra element whose coefficients
    are rationals k/d with d <= max_den and |k/d| <= num_range.
    """
    check_family_rank(family, rank)
    if mode not in ("numeric", "exact"):
        raise DomainError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    if mode == "numeric":
        S = random_algebra_element(family, rank, rng, exact=False)
        return GroupMatrix(expm(S), family, rank, False, seed)
    for _ in range(16):
        S = random_algebra_element(family, rank, rng, exact=True, num_range=num_range, max_den=max_den)
        try:
            return GroupMatrix(cayley(S, family), family, rank, True, seed)
        except ZeroDivisionError:  # I - S singular; draw again from the same stream
            continue
    raise RuntimeError("could not draw an invertible Cayley parameter")
