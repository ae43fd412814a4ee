"""Command-line driver: ``python -m eqaoa {generate,run,campaign,report}``.

Data go to files (``report`` prints to stdout); progress goes to stderr.
Failures exit with status 1 and a single JSON line on stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .campaign import (
    CampaignConfig,
    CampaignReport,
    export_trajectories,
    resolve_m,
    run_campaign,
    run_instance,
    summarize,
)
from .engine import Schedule
from .problems import GeneratorSpec, generate, read_instance, write_instance


def _cmd_generate(args):
    spec = GeneratorSpec(args.n, resolve_m(args.m), args.mode, args.seed)
    instance, planted = generate(spec)
    write_instance(args.out, instance, spec, planted)
    logging.info("wrote %s (n=%d, m=%d, mode=%s)", args.out, spec.n, spec.m, spec.mode)


def _cmd_run(args):
    instance, meta = read_instance(args.instance)
    sched = Schedule(instance.n, instance.m, args.schedule, args.gamma_form, args.log_base)
    diag, traj = run_instance(instance, sched, record_expectation=args.expectation)
    out = {
        "instance": str(args.instance),
        "n": instance.n,
        "m": instance.m,
        "meta": meta,
        "schedule": {
            "variant": sched.variant,
            "gamma_form": sched.gamma_form,
            "log_base": str(sched.log_base),
            "p_max": sched.p_max,
            "beta": sched.beta,
        },
        "c_max": diag.c_max,
        "delta_c": diag.delta_c,
        "satisfiable": diag.satisfiable,
        "max_target_probability": traj.max_target_probability,
        "trajectory": [
            {"p": r.p, "gamma_s": r.gamma_s, "target_probability": r.target_probability}
            | ({"expectation": r.expectation} if r.expectation is not None else {})
            for r in traj.records
        ],
    }
    Path(args.out).write_text(json.dumps(out, indent=2) + "\n")
    logging.info("max target probability %.4f over %d iterations", traj.max_target_probability, len(traj))


def _cmd_campaign(args):
    config = CampaignConfig.from_dict(json.loads(Path(args.config).read_text()))
    report = run_campaign(config)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report.write(out / "report.json")
    export_trajectories(report, out)
    logging.info("wrote %s", out / "report.json")


def _cmd_report(args):
    report = CampaignReport.read(args.input)
    if args.format == "json":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(summarize(report))


def build_parser():
    parser = argparse.ArgumentParser(prog="eqaoa", description=__doc__.splitlines()[0])
    parser.add_argument("-q", "--quiet", action="store_true", help="suppress progress output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a random 3-SAT instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", required=True, help="clause count or preset (0.5M, M, 2M, 4M)")
    p.add_argument("--mode", choices=("planted", "random-unsat"), default="planted")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="DIMACS output path; sidecar written next to it")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("run", help="run the scheduled QAOA on one instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--schedule", choices=("full", "reduced"), default="full")
    p.add_argument("--gamma-form", choices=("literal", "odd"), default="literal")
    p.add_argument("--log-base", choices=("2", "e"), default="2")
    p.add_argument("--expectation", action="store_true", help="also record <H_C> per iteration")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("campaign", help="run a repeated-instance campaign from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_campaign)

    p = sub.add_parser("report", help="render a campaign report")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_report)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(message)s",
        stream=sys.stderr,
    )
    try:
        args.func(args)
    except Exception as exc:  # noqa: BLE001 - reported as a machine-readable line
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1
    return 0
