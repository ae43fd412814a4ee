"""Repeated-run campaigns over random 3-SAT instances and their reports.

A campaign is a list of cells ``(m, mode)``; every cell runs ``reps``
fresh instances with seeds ``base_seed + rep`` and records the target
probability after each iteration of the scheduled evolution.
"""
from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .engine import RunConfig, Schedule, run_standard
from .errors import DomainError, EqaoaError
from .hamiltonian import build_sat_diagonal, normalize
from .oracle import exhaustive_max
from .problems import RNG_NAME, GeneratorSpec, generate

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
BENCH_N = 20
# number of distinct variable triples at n = 20
M_UNIT = math.comb(BENCH_N, 3)
M_PRESETS = {"0.5M": M_UNIT // 2, "M": M_UNIT, "2M": 2 * M_UNIT, "4M": 4 * M_UNIT}
CSV_HEADER = ("iteration", "gamma_s", "mean_target_probability")


def resolve_m(value):
    """Clause count from an integer or a preset label such as ``"2M"``."""
    if isinstance(value, str):
        if value in M_PRESETS:
            return M_PRESETS[value]
        return int(value)
    return int(value)


def m_label(m):
    for label, value in M_PRESETS.items():
        if value == m:
            return label
    return str(m)


@dataclass(frozen=True)
class Cell:
    m: int
    mode: str = "planted"

    @property
    def label(self):
        return m_label(self.m)


@dataclass(frozen=True)
class CampaignConfig:
    n: int = BENCH_N
    cells: tuple = ()
    reps: int = 50
    variant: str = "full"
    gamma_form: str = "literal"
    log_base: str = "2"
    base_seed: int = 0

    def __post_init__(self):
        cells = tuple(c if isinstance(c, Cell) else Cell(resolve_m(c[0]), c[1]) for c in self.cells)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "log_base", str(self.log_base))
        if self.reps < 1:
            raise DomainError(f"reps must be >= 1, got {self.reps}")

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        cells = []
        for c in data.pop("cells", []):
            if isinstance(c, dict):
                cells.append(Cell(resolve_m(c["m"]), c.get("mode", "planted")))
            else:
                cells.append(Cell(resolve_m(c[0]), c[1]))
        return cls(cells=tuple(cells), **data)

    def to_dict(self):
        d = asdict(self)
        d["cells"] = [{"m": c.m, "mode": c.mode} for c in self.cells]
        return d

    def seed(self, rep):
        return self.base_seed + rep

    def schedule(self, m):
        return Schedule(self.n, m, self.variant, self.gamma_form, self.log_base)


@dataclass
class CellResult:
    m: int
    mode: str
    reps: int
    mean_max: float
    std: float
    per_rep_max: list
    curve: list
    gammas: list
    seeds: list = field(default_factory=list)
    target_sizes: list = field(default_factory=list)
    c_max: list = field(default_factory=list)

    @property
    def label(self):
        return m_label(self.m)


@dataclass
class CampaignReport:
    config: dict
    cells: list
    provenance: dict

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "config": self.config,
            "provenance": self.provenance,
            "cells": [asdict(c) for c in self.cells],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data):
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise DomainError(f"unsupported report schema_version {version!r}")
        return cls(data["config"], [CellResult(**c) for c in data["cells"]], data["provenance"])

    def write(self, path):
        Path(path).write_text(self.to_json())

    @classmethod
    def read(cls, path):
        return cls.from_dict(json.loads(Path(path).read_text()))


def mean_of(values):
    return math.fsum(values) / len(values)


def run_instance(instance, schedule, target=None, record_expectation=False):
    """Normalize an instance by its clause count and run the standard schedule."""
    raw = build_sat_diagonal(instance)
    diag = normalize(raw, instance.m)
    if target is None:
        _, target = exhaustive_max(raw.values)
    config = RunConfig(schedule, target, record_expectation=record_expectation)
    return diag, run_standard(diag, config)


def run_cell(config, cell):
    sched = config.schedule(cell.m)
    maxima, curves, sizes, cmax, seeds = [], [], [], [], []
    for rep in range(config.reps):
        seed = config.seed(rep)
        spec = GeneratorSpec(config.n, cell.m, cell.mode, seed)
        try:
            instance, _ = generate(spec)
        except EqaoaError as exc:
            raise type(exc)(f"cell m={cell.m} mode={cell.mode} rep={rep}: {exc}") from exc
        diag, traj = run_instance(instance, sched)
        probs = traj.target_probabilities
        maxima.append(float(probs.max()))
        curves.append(probs)
        sizes.append(int(np.count_nonzero(diag.raw == diag.raw.max())))
        cmax.append(int(diag.raw.max()))
        seeds.append(seed)
        log.info("cell %s/%s rep %d: max target probability %.4f", cell.label, cell.mode, rep, maxima[-1])
    curve = np.mean(np.vstack(curves), axis=0)
    return CellResult(
        m=cell.m,
        mode=cell.mode,
        reps=config.reps,
        mean_max=mean_of(maxima),
        std=float(np.std(maxima)),
        per_rep_max=maxima,
        curve=[float(x) for x in curve],
        gammas=sched.gammas(),
        seeds=seeds,
        target_sizes=sizes,
        c_max=cmax,
    )


def run_campaign(config):
    """Run every cell of ``config``; deterministic given ``config.base_seed``."""
    cells = [run_cell(config, cell) for cell in config.cells]
    provenance = {
        "software_version": __version__,
        "rng": RNG_NAME,
        "seed_rule": "base_seed + rep",
        "log_base": config.log_base,
        "variant": config.variant,
        "gamma_form": config.gamma_form,
        "beta": 1.0 / config.n,
    }
    return CampaignReport(config.to_dict(), cells, provenance)


def summarize(report):
    """Plain-text table: one row per cell, in campaign order."""
    if not report.cells:
        raise DomainError("cannot summarize an empty report")
    rows = [("constraints", "mode", "mean max probability", "std")]
    for c in report.cells:
        rows.append((c.label, c.mode, f"{c.mean_max:.4f}", f"{c.std:.4f}"))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    lines = [" | ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "-+-".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def export_trajectories(report, path):
    """Write one ``<label>_<mode>.csv`` per cell under ``path``; returns the file paths."""
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    files = []
    for c in report.cells:
        f = out / f"{c.label}_{c.mode}.csv"
        with f.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(CSV_HEADER)
            for i, (g, prob) in enumerate(zip(c.gammas, c.curve), start=1):
                w.writerow((i, repr(float(g)), repr(float(prob))))
        files.append(f)
    return files
