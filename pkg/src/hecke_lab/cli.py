"""Command line harness: one subcommand per verified statement.

    hecke-lab verify <suite>|all [options]
    hecke-lab experiment theorem2 [options]
    hecke-lab report merge FILE [FILE ...] [--out DIR]

Exit codes: 0 all pass, 64 bad configuration, 65 inconclusive,
70 falsification candidate, 1 other failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .reports import VerificationReport, exit_code
from .suites import SUITES

EXIT_CONFIG = 64


def _parse_int_list(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _suite_kwargs(name: str, args, file_config: dict) -> dict:
    """Map generic CLI flags onto suite-specific keyword arguments."""
    kw = dict(file_config.get(name, {}))
    D = args.D
    p = args.p
    if name in ("gauss-norm",):
        if D:
            kw["fields"] = D
        if args.bound:
            kw["norm_bound"] = args.bound
    elif name in ("gauss-mult",):
        if D:
            kw["fields"] = D
        if p:
            kw["ps"] = p
        if args.n:
            kw["n_max"] = max(args.n)
        if args.bound:
            kw["tame_bound"] = args.bound
        if args.m_norm:
            kw["tame_norms"] = args.m_norm
    elif name in ("gauss-decomp",):
        if D:
            kw["fields"] = D
        if p:
            kw["ps"] = p
        if args.n:
            kw["n_max"] = max(args.n)
    elif name == "kloosterman":
        if p:
            kw["ps"] = p
        if args.d_max:
            kw["d_max"] = args.d_max
    elif name == "twisted-average":
        if D:
            kw["fields"] = D
        if p:
            kw["ps"] = p
        if args.m_norm:
            kw["ms"] = args.m_norm
    elif name == "partial-l":
        if D:
            kw["fields"] = D
        if p:
            kw["ps"] = p
        if args.bound:
            kw["coeff_bound"] = args.bound
    elif name == "fe":
        if args.prec:
            kw["prec"] = args.prec
    elif name == "theorem2":
        if D:
            kw["D"] = D[0]
        if p:
            kw["p"] = p[0]
        if args.theta_mod:
            kw["theta_mod"] = args.theta_mod
        if args.n:
            kw["n_list"] = tuple(args.n)
        if args.r_norm:
            kw["r_norm"] = args.r_norm
        if args.prec:
            kw["prec"] = args.prec
        if args.numeric_guard:
            kw["numeric_guard"] = True
    elif name == "primitive-nonvanish":
        if D:
            kw["fields"] = D
        if p:
            kw["ps"] = p
        if args.bound:
            kw["witness_bound"] = args.bound
    elif name == "determination":
        if D:
            kw["fields"] = D
        if p:
            kw["ps"] = p
        if args.bound:
            kw["bound"] = args.bound
    elif name == "generation":
        if D:
            kw["D"] = D[0]
        if p:
            kw["p"] = p[0]
        if args.theta_mod:
            kw["theta_mod"] = args.theta_mod
        if args.bound:
            kw["bounds"] = (args.bound, args.bound)
        if args.n:
            kw["n_list"] = tuple(args.n)
    return kw


def _run_suites(names, args, file_config) -> list[VerificationReport]:
    jobs = max(1, args.jobs)
    if jobs > 1 and len(names) > 1:
        # parallel across suites; assembly stays ordered and single-threaded
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = {
                name: pool.submit(_run_one, name, _suite_kwargs(name, args, file_config))
                for name in names
            }
            return [futs[name].result() for name in names]
    return [_run_one(name, _suite_kwargs(name, args, file_config)) for name in names]


def _run_one(name: str, kwargs: dict) -> VerificationReport:
    return SUITES[name](**kwargs)


def _emit(reports: list[VerificationReport], outdir: Path | None) -> None:
    from .figures import render_report_files

    for rep in reports:
        line = f"[{rep.status:^22s}] {rep.suite}: {rep.quote}"
        print(line)
        if rep.residuals:
            print(f"    residuals: {', '.join(rep.residuals[:8])}")
        if rep.counts:
            print(f"    counts: {rep.counts}")
    if outdir is not None:
        summary = []
        for rep in reports:
            files = render_report_files(rep, outdir)
            summary.append(rep.to_markdown())
            print(f"    wrote {', '.join(str(f) for f in files)}")
        (outdir / "summary.md").write_text(
            "# verification summary\n\n" + "\n".join(summary)
        )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hecke-lab",
        description="Exact and numeric verification suites for Hecke characters "
        "over real quadratic fields.",
    )
    sub = parser.add_subparsers(dest="command")

    def add_common(sp):
        sp.add_argument("--D", type=_parse_int_list, default=None,
                        help="field parameter list, e.g. 2,5")
        sp.add_argument("--p", type=_parse_int_list, default=None,
                        help="wild prime list, e.g. 3,5")
        sp.add_argument("--n", type=_parse_int_list, default=None,
                        help="conductor exponents, e.g. 4,5,6")
        sp.add_argument("--bound", type=int, default=None)
        sp.add_argument("--d-max", type=int, default=None, dest="d_max")
        sp.add_argument("--m-norm", type=_parse_int_list, default=None, dest="m_norm")
        sp.add_argument("--theta-mod", type=int, default=None, dest="theta_mod")
        sp.add_argument("--r-norm", type=int, default=None, dest="r_norm")
        sp.add_argument("--numeric-guard", action="store_true", dest="numeric_guard")
        sp.add_argument("--prec", type=int, default=None, help="decimal digits")
        sp.add_argument("--out", type=Path, default=None, help="report directory")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--config", type=Path, default=None,
                        help="JSON file with per-suite keyword arguments")

    vp = sub.add_parser("verify", help="run a verification suite")
    vp.add_argument("suite", choices=sorted(SUITES) + ["all"])
    add_common(vp)

    ep = sub.add_parser("experiment", help="run the averaging experiment")
    ep.add_argument("which", choices=["theorem2"])
    add_common(ep)

    rp = sub.add_parser("report", help="report utilities")
    rp.add_argument("action", choices=["merge"])
    rp.add_argument("files", nargs="+", type=Path)
    rp.add_argument("--out", type=Path, default=None)

    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_CONFIG

    if args.command == "report":
        return _merge_reports(args.files, args.out)

    file_config = {}
    if getattr(args, "config", None):
        try:
            file_config = json.loads(args.config.read_text())
        except (OSError, json.JSONDecodeError) as e:
            print(f"bad config file: {e}", file=sys.stderr)
            return EXIT_CONFIG

    if args.command == "experiment":
        names = ["theorem2"]
    else:
        names = sorted(SUITES) if args.suite == "all" else [args.suite]

    try:
        reports = _run_suites(names, args, file_config)
    except (ValueError, KeyError) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    _emit(reports, args.out)
    return exit_code(reports)


def _merge_reports(files: list[Path], outdir: Path | None) -> int:
    reports = []
    for f in files:
        try:
            obj = json.loads(f.read_text())
        except (OSError, json.JSONDecodeError) as e:
            print(f"cannot read {f}: {e}", file=sys.stderr)
            return EXIT_CONFIG
        rep = VerificationReport(
            suite=obj["suite"],
            status=obj["status"],
            config=obj.get("config", {}),
            witnesses=obj.get("witnesses", []),
            residuals=obj.get("residuals", []),
            runtime_ms=obj.get("runtime_ms", 0),
            counts=obj.get("counts", {}),
        )
        reports.append(rep)
    lines = ["# merged verification summary", ""]
    for rep in sorted(reports, key=lambda r: r.suite):
        lines.append(f"- `{rep.suite}`: **{rep.status}** ({rep.runtime_ms} ms)")
    text = "\n".join(lines) + "\n"
    print(text)
    if outdir is not None:
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "merged.md").write_text(text)
    return exit_code(reports)


if __name__ == "__main__":
    sys.exit(main())
