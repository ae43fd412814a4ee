"""Dense statevector storage and the elementary evolution primitives.

Qubit ``i`` is bit ``i`` of the basis index (little-endian), so basis state
``z`` has ``z_i = (z >> i) & 1``.  All primitives mutate the amplitude array
in place and return the same :class:`StateVector` for chaining.
"""
from __future__ import annotations

import math
from collections.abc import Iterable

import numba
import numpy as np

from .errors import ShapeError, SizeError

MAX_QUBITS = 26
NORM_TOL = 1e-9

# below this pair stride the scalar loop beats slicing
_SLICE_MIN = 16


def _check_n(n):
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise SizeError(f"qubit count must be an integer, got {n!r}")
    if not 1 <= n <= MAX_QUBITS:
        raise SizeError(f"qubit count must be in [1, {MAX_QUBITS}], got {n}")
    return int(n)


class StateVector:
    """``2**n`` complex amplitudes with unit norm.

    The amplitude array is owned by the state and is mutated in place by the
    module-level primitives.
    """

    __slots__ = ("n", "amplitudes")

    def __init__(self, n, amplitudes, *, check=True):
        n = _check_n(n)
        amps = np.ascontiguousarray(amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.shape[0] != 1 << n:
            raise ShapeError(f"expected {1 << n} amplitudes, got shape {amps.shape}")
        if check:
            nrm = float(np.vdot(amps, amps).real)
            if abs(nrm - 1.0) > NORM_TOL:
                raise ValueError(f"amplitudes are not normalized (norm^2 = {nrm!r})")
        self.n = n
        self.amplitudes = amps

    @classmethod
    def basis(cls, n, z):
        n = _check_n(n)
        if not 0 <= z < 1 << n:
            raise IndexError(f"basis index {z} out of range for n={n}")
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[z] = 1.0
        return cls(n, amps, check=False)

    def copy(self):
        return StateVector(self.n, self.amplitudes.copy(), check=False)

    def norm_squared(self):
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def probabilities(self):
        a = self.amplitudes
        return a.real * a.real + a.imag * a.imag

    def __len__(self):
        return self.amplitudes.shape[0]

    def __repr__(self):
        return f"StateVector(n={self.n})"


def init_uniform(n):
    """Equal superposition over all ``2**n`` basis states."""
    n = _check_n(n)
    amps = np.full(1 << n, 2.0 ** (-n / 2), dtype=np.complex128)
    return StateVector(n, amps, check=False)


def _check_diag(state, diag):
    d = np.asarray(diag)
    if d.ndim != 1 or d.shape[0] != len(state):
        raise ShapeError(f"diagonal length {d.shape} does not match 2**{state.n}")
    return d


@numba.njit(cache=True, nogil=True)
def _phase_kernel(x, d, angle):
    for i in range(x.shape[0]):
        t = angle * d[i]
        x[i] *= complex(math.cos(t), -math.sin(t))


@numba.njit(cache=True, nogil=True)
def _phase_table_kernel(x, codes, table):
    for i in range(x.shape[0]):
        x[i] *= table[codes[i]]


@numba.njit(cache=True, nogil=True)
def _rx_pair(a, b, c, s):
    for k in range(a.shape[0]):
        a0 = a[k]
        a1 = b[k]
        a[k] = complex(c * a0.real + s * a1.imag, c * a0.imag - s * a1.real)
        b[k] = complex(c * a1.real + s * a0.imag, c * a1.imag - s * a0.real)


@numba.njit(cache=True, nogil=True)
def _rx_all_kernel(x, n, c, s):
    # exp(-i beta X) on every qubit: (a0, a1) -> (c a0 - i s a1, c a1 - i s a0)
    size = x.shape[0]
    for q in range(n):
        b = 1 << q
        if b >= _SLICE_MIN:
            for hi in range(0, size, 2 * b):
                _rx_pair(x[hi:hi + b], x[hi + b:hi + 2 * b], c, s)
        else:
            for hi in range(0, size, 2 * b):
                for i in range(hi, hi + b):
                    a0 = x[i]
                    a1 = x[i + b]
                    x[i] = complex(c * a0.real + s * a1.imag, c * a0.imag - s * a1.real)
                    x[i + b] = complex(c * a1.real + s * a0.imag, c * a1.imag - s * a0.real)


@numba.njit(cache=True, nogil=True)
def _h_pair(a, b, r):
    for k in range(a.shape[0]):
        a0 = a[k]
        a1 = b[k]
        a[k] = (a0 + a1) * r
        b[k] = (a0 - a1) * r


@numba.njit(cache=True, nogil=True)
def _h_all_kernel(x, n, r):
    size = x.shape[0]
    for q in range(n):
        b = 1 << q
        if b >= _SLICE_MIN:
            for hi in range(0, size, 2 * b):
                _h_pair(x[hi:hi + b], x[hi + b:hi + 2 * b], r)
        else:
            for hi in range(0, size, 2 * b):
                for i in range(hi, hi + b):
                    a0 = x[i]
                    a1 = x[i + b]
                    x[i] = (a0 + a1) * r
                    x[i + b] = (a0 - a1) * r


def apply_diagonal_phase(state, diag, angle):
    """Multiply amplitude ``z`` by ``exp(-i * angle * diag[z])``."""
    d = _check_diag(state, diag)
    if not math.isfinite(angle):
        raise ValueError(f"angle must be finite, got {angle!r}")
    _phase_kernel(state.amplitudes, np.ascontiguousarray(d, dtype=np.float64), float(angle))
    return state


class DiagonalPhase:
    """Precomputed form of ``exp(-i * angle * diag)`` for repeated application.

    Diagonals with few distinct values (integer clause counts, Grover
    markings) are factored into a value table plus per-state codes, so each
    application is one gather instead of ``2**n`` sin/cos evaluations.
    """

    max_table = 1 << 16

    def __init__(self, diag):
        d = np.ascontiguousarray(diag, dtype=np.float64)
        self.diag = d
        uniq, codes = np.unique(d, return_inverse=True)
        if uniq.shape[0] <= self.max_table:
            self.values = uniq
            self.codes = codes.astype(np.int32 if uniq.shape[0] > 255 else np.uint8)
        else:
            self.values = None
            self.codes = None

    def apply(self, state, angle):
        if self.diag.shape[0] != len(state):
            raise ShapeError(f"diagonal length {self.diag.shape[0]} does not match 2**{state.n}")
        if self.values is None:
            _phase_kernel(state.amplitudes, self.diag, float(angle))
        else:
            t = float(angle) * self.values
            table = np.cos(t) - 1j * np.sin(t)
            _phase_table_kernel(state.amplitudes, self.codes, table)
        return state


def hz_diagonal(n):
    """Eigenvalues of ``sum_m Z_m``: ``n - 2 * popcount(z)``."""
    z = np.arange(1 << n, dtype=np.int64)
    pop = np.zeros_like(z)
    for i in range(n):
        pop += (z >> i) & 1
    return (n - 2 * pop).astype(np.float64)


def apply_hadamard_all(state):
    """``H^{(x)n}``: normalized fast Walsh-Hadamard transform of the amplitudes."""
    _h_all_kernel(state.amplitudes, state.n, 1.0 / math.sqrt(2.0))
    return state


def apply_mixer(state, beta, form="direct"):
    """Apply ``exp(-i * beta * sum_j X_j)``.

    ``form="direct"`` mixes each qubit's amplitude pairs with
    ``[[cos b, -i sin b], [-i sin b, cos b]]``; ``form="hadamard"`` uses
    ``H exp(-i b H_Z) H``.  The two agree to rounding.
    """
    if form == "direct":
        _rx_all_kernel(state.amplitudes, state.n, math.cos(beta), math.sin(beta))
    elif form in ("hadamard", "hadamard-conjugated"):
        apply_hadamard_all(state)
        apply_diagonal_phase(state, hz_diagonal(state.n), beta)
        apply_hadamard_all(state)
    else:
        raise ValueError(f"unknown mixer form {form!r}")
    return state


def expectation(state, diag):
    """``sum_z diag[z] * |psi_z|^2``."""
    d = _check_diag(state, diag)
    return float(np.dot(state.probabilities(), d))


def probability_mass(state, indices):
    """Total probability on a set of basis indices."""
    if isinstance(indices, np.ndarray):
        idx = indices.astype(np.int64, copy=False).ravel()
    else:
        idx = np.fromiter(indices if isinstance(indices, Iterable) else [indices], dtype=np.int64)
    if idx.size == 0:
        return 0.0
    if idx.min() < 0 or idx.max() >= len(state):
        raise IndexError(f"basis index out of range for n={state.n}")
    a = state.amplitudes[idx]
    return float(np.sum(a.real * a.real + a.imag * a.imag))


def sample(state, shots, rng=None):
    """Draw measurement outcomes in the computational basis."""
    rng = np.random.default_rng(rng)
    p = state.probabilities()
    return rng.choice(len(state), size=shots, p=p / p.sum())
