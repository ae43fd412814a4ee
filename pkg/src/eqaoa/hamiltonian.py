"""Diagonal problem Hamiltonians and their projector / Walsh expansions.

A diagonal operator on ``n`` qubits is stored as its ``2**n`` eigenvalues.
Two bases span the diagonal operators:

* projectors ``p_j = prod_{i in j} P_i`` with ``P = diag(0, 1)``, whose
  eigenvalue at ``z`` is 1 iff ``j & z == j``;
* Walsh operators ``w_j = prod_{i in j} Z_i``, eigenvalue
  ``(-1)**popcount(j & z)``.

Projector coefficients come from the subset Moebius transform, Walsh
coefficients from the Walsh-Hadamard transform; both run in ``O(n 2**n)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numba
import numpy as np

from .errors import DomainError, ShapeError, SizeError

MAX_TRANSFORM_QUBITS = 24


@dataclass(frozen=True)
class Clause3:
    """Disjunction of three literals over distinct variables.

    ``signs[k]`` is True for a positive literal, satisfied when bit
    ``vars[k]`` of the assignment is 1.
    """

    vars: tuple[int, int, int]
    signs: tuple[bool, bool, bool] = (True, True, True)

    def __post_init__(self):
        v = tuple(int(x) for x in self.vars)
        s = tuple(bool(x) for x in self.signs)
        if len(v) != 3 or len(s) != 3:
            raise DomainError("a 3-clause needs exactly three variables and three signs")
        if len(set(v)) != 3:
            raise DomainError(f"clause variables must be distinct, got {v}")
        if min(v) < 0:
            raise DomainError(f"negative variable index in {v}")
        object.__setattr__(self, "vars", v)
        object.__setattr__(self, "signs", s)

    def satisfied_by(self, z):
        return any(((z >> v) & 1) == int(s) for v, s in zip(self.vars, self.signs))

    @property
    def forbidden_mask(self):
        """Bits of the single local pattern that violates the clause."""
        return sum(1 << v for v, s in zip(self.vars, self.signs) if not s)


@dataclass(frozen=True)
class SatInstance:
    n: int
    clauses: tuple[Clause3, ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))
        if self.n < 1:
            raise DomainError(f"variable count must be positive, got {self.n}")
        if not self.clauses:
            raise DomainError("an instance needs at least one clause")
        for c in self.clauses:
            if max(c.vars) >= self.n:
                raise DomainError(f"clause {c} references a variable outside [0, {self.n})")

    @property
    def m(self):
        return len(self.clauses)

    @classmethod
    def from_arrays(cls, n, variables, signs):
        variables = np.asarray(variables)
        signs = np.asarray(signs, dtype=bool)
        clauses = tuple(
            Clause3(tuple(int(x) for x in v), tuple(bool(x) for x in s))
            for v, s in zip(variables, signs)
        )
        return cls(int(n), clauses)

    @cached_property
    def variables(self):
        """``(m, 3)`` array of variable indices."""
        return np.array([c.vars for c in self.clauses], dtype=np.int64)

    @cached_property
    def signs(self):
        """``(m, 3)`` boolean array, True for positive literals."""
        return np.array([c.signs for c in self.clauses], dtype=bool)


@dataclass(frozen=True, eq=False)
class DiagonalObjective:
    """Eigenvalues ``C(z)`` of a diagonal Hamiltonian, one per basis state."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 1 or v.shape[0] != 1 << self.n:
            raise ShapeError(f"expected {1 << self.n} values, got shape {v.shape}")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)


@dataclass(frozen=True, eq=False)
class NormalizedDiagonal:
    """Objective divided by a ceiling ``C_lim`` so that its values lie in [0, 1].

    ``raw`` and ``divisor`` keep the pre-division data; for clause counts this
    makes ``delta_c`` and the satisfiability test exact.
    """

    n: int
    values: np.ndarray
    c_max: float
    delta_c: float
    raw: np.ndarray | None = None
    divisor: float = 1.0
    c_lim: float = 1.0
    satisfiable: bool = field(default=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 1 or v.shape[0] != 1 << self.n:
            raise ShapeError(f"expected {1 << self.n} values, got shape {v.shape}")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)


def _as_values(diag):
    if isinstance(diag, (DiagonalObjective, NormalizedDiagonal)):
        return diag.n, diag.values
    v = np.asarray(diag)
    size = v.shape[0] if v.ndim == 1 else 0
    if size == 0 or size & (size - 1):
        raise ShapeError(f"diagonal length must be a power of two, got shape {v.shape}")
    return size.bit_length() - 1, v


# ---------------------------------------------------------------------------
# subset-lattice transforms

def _check_transform_size(n):
    if n > MAX_TRANSFORM_QUBITS:
        raise SizeError(f"basis transforms are limited to n <= {MAX_TRANSFORM_QUBITS}, got {n}")


def mobius_transform(values):
    """Subset Moebius transform: ``c_j = sum_{k subset of j} (-1)^{|j|-|k|} f_k``.

    Returns a new array; integer input stays integer and the result is exact.
    """
    out = np.array(values, copy=True)
    n = out.shape[0].bit_length() - 1
    for i in range(n):
        v = out.reshape(-1, 2, 1 << i)
        v[:, 1, :] -= v[:, 0, :]
    return out


def zeta_transform(coeffs):
    """Subset-sum (zeta) transform, inverse of :func:`mobius_transform`."""
    out = np.array(coeffs, copy=True)
    n = out.shape[0].bit_length() - 1
    for i in range(n):
        v = out.reshape(-1, 2, 1 << i)
        v[:, 1, :] += v[:, 0, :]
    return out


def superset_zeta_transform(coeffs):
    """``g_k = sum_{j superset of k} c_j``."""
    out = np.array(coeffs, copy=True)
    n = out.shape[0].bit_length() - 1
    for i in range(n):
        v = out.reshape(-1, 2, 1 << i)
        v[:, 0, :] += v[:, 1, :]
    return out


def walsh_hadamard_transform(values):
    """Unnormalized Walsh-Hadamard transform ``F_k = sum_z (-1)^{|k&z|} f_z``."""
    out = np.array(values, dtype=np.result_type(values, np.int64), copy=True)
    n = out.shape[0].bit_length() - 1
    for i in range(n):
        v = out.reshape(-1, 2, 1 << i)
        a = v[:, 0, :].copy()
        v[:, 0, :] += v[:, 1, :]
        v[:, 1, :] = a - v[:, 1, :]
    return out


def popcounts(n):
    z = np.arange(1 << n, dtype=np.int64)
    pop = np.zeros_like(z)
    for i in range(n):
        pop += (z >> i) & 1
    return pop


# ---------------------------------------------------------------------------
# coefficient containers

def _terms_from_dense(coeffs):
    nz = np.flatnonzero(coeffs)
    return {int(j): coeffs[j].item() for j in nz}


@dataclass(frozen=True, eq=False)
class _MaskHamiltonian:
    n: int
    terms: dict

    def __post_init__(self):
        terms = {}
        for j, c in dict(self.terms).items():
            j = int(j)
            if not 0 <= j < 1 << self.n:
                raise DomainError(f"mask {j} out of range for n={self.n}")
            if c != 0:
                terms[j] = c
        object.__setattr__(self, "terms", terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return type(self) is type(other) and self.n == other.n and self.terms == other.terms

    def dense(self, dtype=None):
        if dtype is None:
            dtype = np.result_type(*[type(c) for c in self.terms.values()]) if self.terms else np.float64
        out = np.zeros(1 << self.n, dtype=dtype)
        for j, c in self.terms.items():
            out[j] = c
        return out

    def l1_norm(self):
        return float(sum(abs(c) for c in self.terms.values()))

    def scaled(self, factor):
        return type(self)(self.n, {j: c * factor for j, c in self.terms.items()})


class ProjectorHamiltonian(_MaskHamiltonian):
    """``sum_j gamma_j p_j`` stored sparsely as ``{mask: coefficient}``."""

    def to_diagonal(self):
        """Eigenvalues ``D(z) = sum_{j subset of z} gamma_j``."""
        return zeta_transform(self.dense())

    def normalized(self):
        """Rescale so that ``sum_j |gamma_j| = 1``."""
        norm = self.l1_norm()
        if norm == 0:
            raise DomainError("cannot normalize an empty Hamiltonian")
        return self.scaled(1.0 / norm)

    def layer(self):
        return layer(self)


class WalshHamiltonian(_MaskHamiltonian):
    """``sum_j theta_j w_j`` stored sparsely as ``{mask: coefficient}``."""

    def to_diagonal(self):
        return walsh_hadamard_transform(self.dense(np.float64))


# ---------------------------------------------------------------------------
# operations

def build_sat_diagonal(instance):
    """Number of clauses satisfied by every assignment ``z``.

    Starts from ``m`` everywhere and, per clause, decrements only the
    ``2**(n-3)`` states that match its forbidden pattern.
    """
    n, m = instance.n, instance.m
    values = np.full(1 << n, m, dtype=np.int64)
    order = np.argsort(instance.variables, axis=1)
    positions = np.take_along_axis(instance.variables, order, axis=1)
    forbidden = ~np.take_along_axis(instance.signs, order, axis=1)
    fixed = (forbidden.astype(np.int64) << positions).sum(axis=1)
    _remove_forbidden(values, n, positions, fixed)
    return DiagonalObjective(n, values)


@numba.njit(cache=True, nogil=True)
def _remove_forbidden(values, n, positions, fixed):
    # positions[r] sorted ascending; fixed[r] holds the forbidden bits
    for r in range(positions.shape[0]):
        a, b, c = positions[r, 0], positions[r, 1], positions[r, 2]
        f = fixed[r]
        for hi in range(0, 1 << n, 1 << (c + 1)):
            for mid2 in range(0, 1 << c, 1 << (b + 1)):
                for mid1 in range(0, 1 << b, 1 << (a + 1)):
                    base = hi + mid2 + mid1 + f
                    for lo in range(1 << a):
                        values[base + lo] -= 1


def normalize(diag, divisor):
    """Divide by the ceiling ``divisor`` (``C_lim``), yielding ``C_lim = 1``.

    ``delta_c = (divisor - max) / divisor`` is computed from the undivided
    values, so for integer data ``satisfiable`` is an exact test.
    """
    if not divisor > 0:
        raise DomainError(f"normalization divisor must be positive, got {divisor!r}")
    n, raw = _as_values(diag)
    top = raw.max()
    gap = divisor - top
    if gap < 0:
        raise DomainError(f"divisor {divisor} is below the objective maximum {top}")
    return NormalizedDiagonal(
        n=n,
        values=raw / divisor,
        c_max=float(top / divisor),
        delta_c=float(gap / divisor),
        raw=raw,
        divisor=divisor,
        satisfiable=bool(gap == 0),
    )


def normalize_l1(diag):
    """Normalize with ``C_lim = sum_j |gamma_j|`` over the projector expansion.

    This is the rule for objectives whose expansion has negative terms, e.g.
    the QAOA+ independent-set penalty.
    """
    h = projector_coefficients(diag)
    return normalize(diag, h.l1_norm())


def projector_coefficients(diag):
    """Expand a diagonal in the projector basis: ``diag[z] = sum_{j subset of z} c_j``."""
    if isinstance(diag, NormalizedDiagonal) and diag.raw is not None:
        n = diag.n
        _check_transform_size(n)
        coeffs = mobius_transform(diag.raw)
        h = ProjectorHamiltonian(n, _terms_from_dense(coeffs))
        return h.scaled(1.0 / diag.divisor)
    n, values = _as_values(diag)
    _check_transform_size(n)
    return ProjectorHamiltonian(n, _terms_from_dense(mobius_transform(values)))


def walsh_coefficients(diag):
    """Expand a diagonal in the Walsh basis: ``diag[z] = sum_j theta_j (-1)^{|j&z|}``."""
    n, values = _as_values(diag)
    _check_transform_size(n)
    theta = walsh_hadamard_transform(values.astype(np.float64)) / float(1 << n)
    return WalshHamiltonian(n, _terms_from_dense(theta))


def projector_to_walsh(h):
    """Rewrite projector terms as Walsh terms using ``P = (I - Z) / 2``.

    ``p_j = 2^{-|j|} sum_{k subset of j} (-1)^{|k|} w_k``, so
    ``theta_k = (-1)^{|k|} sum_{j superset of k} 2^{-|j|} c_j``.
    """
    _check_transform_size(h.n)
    pop = popcounts(h.n)
    scaled = h.dense(np.float64) * np.ldexp(1.0, -pop)
    theta = superset_zeta_transform(scaled)
    theta[pop & 1 == 1] *= -1
    return WalshHamiltonian(h.n, _terms_from_dense(theta))


def layer(h):
    """Largest number of control bits ``popcount(j)`` over the stored terms."""
    if not h.terms:
        raise DomainError("layer of an empty Hamiltonian is undefined")
    return max(int(j).bit_count() for j in h.terms)


def eval_projector(j, z):
    """Eigenvalue ``<z|p_j|z>``: 1 if every bit of ``j`` is set in ``z``.

    Works elementwise on integer arrays.
    """
    if isinstance(j, np.ndarray) or isinstance(z, np.ndarray):
        j = np.asarray(j)
        return ((j & np.asarray(z)) == j).astype(np.int64)
    return int((j & z) == j)


def grover_diagonal(n, marked):
    """Indicator diagonal of the marked states (value 1 per marked state)."""
    idx = np.array(sorted({int(z) for z in marked}), dtype=np.int64)
    if idx.size == 0:
        raise DomainError("the Grover diagonal needs at least one marked state")
    if idx[0] < 0 or idx[-1] >= 1 << n:
        raise IndexError(f"marked index out of range for n={n}")
    raw = np.zeros(1 << n, dtype=np.int64)
    raw[idx] = 1
    return normalize(DiagonalObjective(n, raw), 1)
