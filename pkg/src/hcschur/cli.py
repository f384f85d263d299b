"""Command-line client.

By default commands run in-process; ``--url`` sends them to a running
service instead.  Exit codes: 0 success, 1 verification failure, 2 usage
error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import urllib.error
import urllib.request

from .schemas import COMMANDS, Params, Report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hcschur", description="Schur elements and semisimplicity checks")
    groups = ap.add_subparsers(dest="group", required=True)
    for group, actions in COMMANDS.items():
        gp = groups.add_parser(group)
        sub = gp.add_subparsers(dest="action", required=True)
        for action in actions:
            p = sub.add_parser(action)
            p.add_argument("--kind")
            p.add_argument("--n")
            p.add_argument("--m", type=int)
            p.add_argument("--lambda", dest="lam")
            p.add_argument("--family")
            p.add_argument("--e")
            p.add_argument("--weight")
            p.add_argument("--spec")
            p.add_argument("--form", choices=("t", "tau"), default="t")
            p.add_argument("--path")
            p.add_argument("--format", choices=("json", "csv", "text"), default="text")
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--jobs", type=int, default=1)
            p.add_argument("--url", help="base URL of a running service")
    return ap


def _params(ns: argparse.Namespace) -> Params:
    return Params(kind=ns.kind, n=ns.n, m=ns.m, lam=ns.lam, family=ns.family, e=ns.e, weight=ns.weight,
                  spec=ns.spec, form=ns.form, path=ns.path, seed=ns.seed, jobs=ns.jobs)


def _remote(url: str, group: str, action: str, params: Params) -> Report:
    body = params.model_dump_json(by_alias=True).encode()
    req = urllib.request.Request(f"{url.rstrip('/')}/{group}/{action}", data=body,
                                 headers={"Content-Type": "application/json"})
    try:
        with urllib.request.urlopen(req) as resp:
            return Report.model_validate_json(resp.read())
    except urllib.error.HTTPError as exc:
        if exc.code in (400, 404, 422):
            from .service import UsageError

            raise UsageError(exc.read().decode(errors="replace")) from None
        raise


def _cell(v) -> str:
    return v if isinstance(v, str) else json.dumps(v)


def render(rep: Report, fmt: str) -> str:
    if fmt == "json":
        return rep.model_dump_json(indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if rep.matrix is not None:
            w.writerows(rep.matrix)
        else:
            cols = list(dict.fromkeys(k for r in rep.records for k in r))
            w.writerow(cols)
            for r in rep.records:
                w.writerow([_cell(r.get(c, "")) for c in cols])
        return buf.getvalue()
    lines = [f"{rep.command}: {'ok' if rep.ok else 'FAILED'}"]
    for k, v in rep.summary.items():
        if isinstance(v, (list, dict)) and len(v) > 8:
            v = f"<{len(v)} entries>"
        lines.append(f"  {k}: {_cell(v)}")
    for r in rep.records:
        lines.append("  " + "  ".join(f"{k}={_cell(v)}" for k, v in r.items()))
    for c in rep.counterexamples:
        lines.append("  counterexample: " + json.dumps(c))
    lines += [f"  note: {x}" for x in rep.notes]
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    from .service import UsageError, run

    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        params = _params(ns)
        rep = _remote(ns.url, ns.group, ns.action, params) if ns.url else run(ns.group, ns.action, params)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render(rep, ns.format))
    return EXIT_OK if rep.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
