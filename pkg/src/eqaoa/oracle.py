"""Brute-force reference implementations used to check the fast paths.

Nothing here shares code with the evolution engine: operators are built as
explicit dense matrices and clauses are evaluated literal by literal.
"""
from __future__ import annotations

import numpy as np

from .errors import SizeError

MAX_ORACLE_QUBITS = 8
UNITARY_TOL = 1e-10


class DenseOperator:
    """Explicit ``2**n x 2**n`` unitary."""

    def __init__(self, n, matrix):
        if n > MAX_ORACLE_QUBITS:
            raise SizeError(f"dense operators are limited to n <= {MAX_ORACLE_QUBITS}")
        matrix = np.asarray(matrix, dtype=np.complex128)
        dim = 1 << n
        if matrix.shape != (dim, dim):
            raise SizeError(f"expected a {dim}x{dim} matrix, got {matrix.shape}")
        err = np.abs(matrix @ matrix.conj().T - np.eye(dim)).max()
        if err > UNITARY_TOL:
            raise ValueError(f"operator is not unitary (max deviation {err:.3g})")
        self.n = n
        self.matrix = matrix

    def __matmul__(self, other):
        if isinstance(other, DenseOperator):
            return DenseOperator(self.n, self.matrix @ other.matrix)
        return self.matrix @ np.asarray(other)


def phase_operator(diag, gamma):
    d = np.asarray(diag, dtype=np.float64)
    n = d.shape[0].bit_length() - 1
    return DenseOperator(n, np.diag(np.exp(-1j * gamma * d)))


def mixer_operator(n, beta):
    c, s = np.cos(beta), np.sin(beta)
    rx = np.array([[c, -1j * s], [-1j * s, c]])
    u = np.ones((1, 1), dtype=np.complex128)
    for _ in range(n):
        u = np.kron(u, rx)
    return DenseOperator(n, u)


def dense_evolution(diag, angles, n=None):
    """Reference QAOA state: ``U_B(b_p) U_C(g_p) ... U_B(b_1) U_C(g_1) |s>``.

    ``angles`` is a sequence of ``(gamma, beta)`` pairs, applied in order.
    Returns the final amplitude vector.
    """
    d = np.asarray(diag, dtype=np.float64)
    if n is None:
        n = d.shape[0].bit_length() - 1
    if n > MAX_ORACLE_QUBITS:
        raise SizeError(f"dense evolution is limited to n <= {MAX_ORACLE_QUBITS}, got {n}")
    psi = np.full(1 << n, 1 / np.sqrt(1 << n), dtype=np.complex128)
    for gamma, beta in angles:
        psi = phase_operator(d, gamma) @ psi
        psi = mixer_operator(n, beta) @ psi
    return psi


def projector_diagonal_naive(h):
    """Eigenvalues of ``sum_j c_j p_j`` by evaluating every product ``prod_{i in j} z_i``."""
    n = h.n
    out = np.zeros(1 << n)
    for z in range(1 << n):
        bits = [(z >> i) & 1 for i in range(n)]
        total = 0.0
        for j, c in h.terms.items():
            prod = 1
            for i in range(n):
                if (j >> i) & 1:
                    prod *= bits[i]
            total += c * prod
        out[z] = total
    return out


def exhaustive_max(diag):
    """Maximum value and the complete set of indices attaining it."""
    d = np.asarray(diag)
    best = d.max()
    return best.item(), frozenset(int(z) for z in np.flatnonzero(d == best))


def clause_count_check(instance, z):
    """Number of clauses satisfied by assignment ``z``, evaluated literal by literal."""
    count = 0
    for clause in instance.clauses:
        for v, positive in zip(clause.vars, clause.signs):
            bit = (z >> v) & 1
            if (bit == 1) == positive:
                count += 1
                break
    return count
