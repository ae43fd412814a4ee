"""Problem instances: planted and unsatisfiable random 3-SAT, independent-set
objectives, and DIMACS CNF interchange.

Random draws use numpy's ``PCG64`` generator seeded with the instance seed.
Draw order for one instance: planted assignment (planted mode only), then an
``(m, n)`` block of uniforms whose per-row argsort yields each clause's
variable triple, then one integer per clause selecting its sign pattern.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DimacsParseError, DomainError, GenerationError
from .hamiltonian import Clause3, DiagonalObjective, SatInstance, build_sat_diagonal
from .statevector import MAX_QUBITS

RNG_NAME = "PCG64"
MODES = ("planted", "random-unsat")
UNSAT_ATTEMPTS = 1000


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise DomainError(f"self-loop on vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise DomainError(f"edge ({u}, {v}) outside [0, {self.n})")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    def adjacency(self):
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        return a


@dataclass(frozen=True)
class GeneratorSpec:
    n: int
    m: int
    mode: str = "planted"
    seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.m < 1:
            raise DomainError(f"clause count must be positive, got {self.m}")
        if self.n < 3:
            raise DomainError(f"3-SAT needs at least 3 variables, got n={self.n}")
        if self.n > MAX_QUBITS:
            raise DomainError(f"n={self.n} exceeds the simulator limit {MAX_QUBITS}")


def _random_triples(rng, n, m):
    return np.argsort(rng.random((m, n)), axis=1, kind="stable")[:, :3]


def _pattern_bits(patterns):
    # bit k of the pattern is the sign of literal k
    return ((patterns[:, None] >> np.arange(3)) & 1).astype(bool)


def generate_planted_sat(spec):
    """Random instance satisfied by a hidden uniformly drawn assignment.

    Each clause gets a uniform random variable triple and one of the seven
    sign patterns that the planted assignment satisfies, uniformly.
    Returns ``(instance, planted)``.
    """
    if spec.mode != "planted":
        raise DomainError(f"expected mode 'planted', got {spec.mode!r}")
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    planted = int(rng.integers(0, 1 << spec.n))
    triples = _random_triples(rng, spec.n, spec.m)
    # the violating pattern has each literal false: sign = not(bit)
    bits = (planted >> triples) & 1
    forbidden = ((1 - bits) << np.arange(3)).sum(axis=1)
    k = rng.integers(0, 7, size=spec.m)
    patterns = np.where(k >= forbidden, k + 1, k)
    return SatInstance.from_arrays(spec.n, triples, _pattern_bits(patterns)), planted


def generate_random_unsat(spec, max_attempts=UNSAT_ATTEMPTS):
    """Uniform random instance, resampled until no assignment satisfies all clauses."""
    if spec.mode != "random-unsat":
        raise DomainError(f"expected mode 'random-unsat', got {spec.mode!r}")
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    for _ in range(max_attempts):
        triples = _random_triples(rng, spec.n, spec.m)
        patterns = rng.integers(0, 8, size=spec.m)
        inst = SatInstance.from_arrays(spec.n, triples, _pattern_bits(patterns))
        if build_sat_diagonal(inst).values.max() < spec.m:
            return inst
    raise GenerationError(
        f"no unsatisfiable instance with n={spec.n}, m={spec.m} in {max_attempts} attempts"
    )


def generate(spec):
    """Dispatch on ``spec.mode``; returns ``(instance, planted or None)``."""
    if spec.mode == "planted":
        return generate_planted_sat(spec)
    return generate_random_unsat(spec), None


def mis_diagonal(graph, variant="standard"):
    """Independent-set objectives.

    ``standard``: number of selected vertices.  ``plus``: selected vertices
    minus selected edges (each unordered edge counted once).
    """
    z = np.arange(1 << graph.n, dtype=np.int64)
    bits = [(z >> i) & 1 for i in range(graph.n)]
    values = np.zeros_like(z)
    for b in bits:
        values += b
    if variant == "plus":
        for u, v in graph.edges:
            values -= bits[u] & bits[v]
    elif variant != "standard":
        raise DomainError(f"unknown MIS variant {variant!r}")
    return DiagonalObjective(graph.n, values)


# ---------------------------------------------------------------------------
# DIMACS

def emit_dimacs(instance, comments=()):
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {instance.n} {instance.m}")
    for c in instance.clauses:
        lits = [(v + 1) if s else -(v + 1) for v, s in zip(c.vars, c.signs)]
        lines.append(" ".join(str(x) for x in lits) + " 0")
    return "\n".join(lines) + "\n"


def parse_dimacs(text):
    """Parse a DIMACS CNF with exactly three literals per clause.

    Variable ``v`` maps to qubit ``v - 1``.
    """
    n = m = None
    header_line = None
    clauses = []
    pending = []
    pending_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if n is not None:
                raise DimacsParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsParseError(f"malformed header {line!r}", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsParseError(f"malformed header {line!r}", lineno) from None
            if n < 3 or m < 1:
                raise DimacsParseError(f"header needs n >= 3 and m >= 1, got {n} {m}", lineno)
            header_line = lineno
            continue
        if n is None:
            raise DimacsParseError("clause before problem line", lineno)
        try:
            lits = [int(tok) for tok in line.split()]
        except ValueError:
            raise DimacsParseError(f"non-integer literal in {line!r}", lineno) from None
        for lit in lits:
            if pending_line is None:
                pending_line = lineno
            if lit == 0:
                clauses.append(_make_clause(pending, n, pending_line))
                pending, pending_line = [], None
            else:
                pending.append(lit)
    if n is None:
        raise DimacsParseError("missing problem line", None)
    if pending:
        raise DimacsParseError("last clause is not terminated by 0", pending_line)
    if len(clauses) != m:
        raise DimacsParseError(f"header declares {m} clauses, found {len(clauses)}", header_line)
    return SatInstance(n, tuple(Clause3(v, s) for v, s in clauses))


def _make_clause(lits, n, lineno):
    if len(lits) != 3:
        raise DimacsParseError(f"clause has {len(lits)} literals, expected 3", lineno)
    variables = tuple(abs(x) - 1 for x in lits)
    if any(not 0 <= v < n for v in variables):
        raise DimacsParseError(f"variable out of range 1..{n} in {lits}", lineno)
    if len(set(variables)) != 3:
        raise DimacsParseError(f"repeated variable in clause {lits}", lineno)
    return variables, tuple(x > 0 for x in lits)


def sidecar(spec, planted=None):
    return {"n": spec.n, "m": spec.m, "mode": spec.mode, "seed": spec.seed, "planted": planted}


def write_instance(path, instance, spec=None, planted=None):
    """Write ``path`` (DIMACS) and, when ``spec`` is given, a ``.json`` sidecar next to it."""
    path = Path(path)
    comments = []
    if spec is not None:
        comments.append(f"mode={spec.mode} seed={spec.seed} rng={RNG_NAME}")
    path.write_text(emit_dimacs(instance, comments))
    if spec is not None:
        meta = path.with_suffix(".json")
        meta.write_text(json.dumps(sidecar(spec, planted), indent=2) + "\n")
    return path


def read_instance(path):
    """Read a DIMACS file and its sidecar if present; returns ``(instance, meta or None)``."""
    path = Path(path)
    inst = parse_dimacs(path.read_text())
    meta_path = path.with_suffix(".json")
    meta = json.loads(meta_path.read_text()) if meta_path.exists() else None
    return inst, meta
