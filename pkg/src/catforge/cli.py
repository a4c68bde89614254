"""Command line entry points.

    catforge run <preset|config.json> [--out DIR] [--workers N]
                 [--dims-bump K] [--seedless]
    catforge validate <config.json>
    catforge props [--out DIR]

Exit status is 0 only when every threshold configured for the run is met.
Set CATFORGE_DETERMINISTIC=1 to pin the sweep worker pool to one process.
"""

from __future__ import annotations

import argparse
import json
import sys

from .experiments import load_config, preset_path, run_experiment, validate_config


def _resolve_config(name_or_path: str) -> dict:
    p = preset_path(name_or_path)
    if p is not None:
        config = json.loads(p.read_text())
        errors = validate_config(config)
        if errors:
            raise ValueError(f"preset {name_or_path} invalid:\n  " + "\n  ".join(errors))
        return config
    return load_config(name_or_path)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="catforge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment preset or config file")
    p_run.add_argument("config", help="preset name (fig3, fig4, fig5_top, fig5_bottom, "
                                      "fig6, figS1, multimode3, props) or a config path")
    p_run.add_argument("--out", default="out", help="artifact directory")
    p_run.add_argument("--workers", type=int, default=None, help="sweep worker processes")
    p_run.add_argument("--dims-bump", type=int, default=0, help="add K to every mode cutoff")
    p_run.add_argument("--seedless", action="store_true",
                       help="omit wall-clock metadata for byte-reproducible artifacts")

    p_val = sub.add_parser("validate", help="validate a config file against the schema")
    p_val.add_argument("config")

    p_props = sub.add_parser("props", help="run the invariant property suite")
    p_props.add_argument("--out", default="out_props")
    p_props.add_argument("--dims-bump", type=int, default=0)

    args = parser.parse_args(argv)

    if args.command == "validate":
        with open(args.config) as fh:
            config = json.load(fh)
        errors = validate_config(config)
        if errors:
            print("invalid:", file=sys.stderr)
            for e in errors:
                print(f"  {e}", file=sys.stderr)
            return 1
        print("ok")
        return 0

    if args.command == "props":
        config = _resolve_config("props")
        art = run_experiment(config, args.out, dims_bump=args.dims_bump)
        _print_summary(art)
        return 0 if art.ok else 1

    config = _resolve_config(args.config)
    art = run_experiment(
        config, args.out, workers=args.workers, dims_bump=args.dims_bump, seedless=args.seedless
    )
    _print_summary(art)
    return 0 if art.ok else 1


def _print_summary(art) -> None:
    print(f"experiment: {art.experiment}  ->  {art.out_dir}/summary.json")
    for k, v in sorted(art.summary.items()):
        print(f"  {k}: {v}")
    for name, verdict in getattr(art, "summary_thresholds", {}).items():
        state = "PASS" if verdict["pass"] else "FAIL"
        print(f"  [{state}] {name} = {verdict.get('value')}")


if __name__ == "__main__":
    sys.exit(main())
