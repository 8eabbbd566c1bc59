"""Command-line front end: JSON in, JSON (or CSV for scans) out.

Input documents look like::

    {"c_v": 1.0,
     "data": {"left":  {"rho": 1, "v2": 1, "p": 1},
              "right": {"rho": 1, "v2": -1, "p": 1}},
     "candidate": {...}}            # verify only

``--c-v`` overrides the document's ``c_v``.  Exit codes: 0 success, 1 domain
error (JSON object on stderr), 2 malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import replace

from . import onefan, twofan
from .config import SearchConfig
from .errors import FanError
from .fan_algebra import SubsolutionCandidate, verify
from .gas import GasModel, RiemannData
from .riemann1d import jump_residuals, solve_two_shock_fan

COMMANDS = ("solve-riemann", "verify", "search-2fan", "search-1fan", "threshold-u", "threshold-scan")
ONEFAN_MARGINS = ("order", "left_speed", "right_speed", "p1", "eps1", "eps2", "ad12", "y_sign", "y_sign_shifted")


class InputError(Exception):
    pass


def _clean(obj):
    """JSON-safe copy: non-finite floats become null, tuples become lists."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        return _clean(obj.item())  # numpy scalars
    return obj


def dumps(obj) -> str:
    # repr-based float output is the shortest string that round-trips exactly
    return json.dumps(_clean(obj), indent=2, sort_keys=True, allow_nan=False) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eulerfan", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", help="input JSON (default: stdin)")
    p.add_argument("--output", help="write result here instead of stdout")
    p.add_argument("--c-v", dest="c_v", type=float)
    p.add_argument("--rho1", type=float)
    p.add_argument("--max-j", dest="max_j", type=int)
    p.add_argument("--max-k", dest="max_k", type=int)
    p.add_argument("--margin-floor", dest="margin_floor", type=float)
    p.add_argument("--u-cap", dest="u_cap", type=float)
    p.add_argument("--confirm", dest="confirm_count", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--scan", action="store_true", help="emit CSV over the search grid")
    return p


def _config(args) -> SearchConfig:
    over = {k: getattr(args, k) for k in ("max_j", "max_k", "margin_floor", "u_cap", "confirm_count", "tol")}
    return replace(SearchConfig(), **{k: v for k, v in over.items() if v is not None})


def _load(args) -> tuple[dict, GasModel, RiemannData]:
    try:
        text = open(args.input).read() if args.input else sys.stdin.read()
        doc = json.loads(text)
        if not isinstance(doc, dict):
            raise InputError("input must be a JSON object")
        cv = args.c_v if args.c_v is not None else doc.get("c_v")
        if cv is None:
            raise InputError("c_v missing (document field or --c-v)")
        gas = GasModel(float(cv))
        data = RiemannData.from_dict(doc["data"] if "data" in doc else doc)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{type(exc).__name__}: {exc}") from exc
    return doc, gas, data


def _header(gas: GasModel, data: RiemannData) -> dict:
    return {"c_v": gas.c_v, "data": data.to_dict()}


def _csv(rows, fields) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for row in rows:
        w.writerow({k: ("" if row.get(k) is None else row[k]) for k in fields})
    return buf.getvalue()


def cmd_solve_riemann(args, doc, gas, data) -> str:
    fan = solve_two_shock_fan(data, gas)
    res = {k: {"raw": v[0], "relative": v[1]} for k, v in jump_residuals(fan, data, gas).items()}
    return dumps({**_header(gas, data), "fan": fan.to_dict(), "jump_residuals": res})


def cmd_verify(args, doc, gas, data) -> str:
    try:
        cand = SubsolutionCandidate.from_dict(doc["candidate"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad candidate: {exc}") from exc
    tol = args.tol if args.tol is not None else SearchConfig().tol
    rep = verify(cand, data, gas, tol)
    return dumps({**_header(gas, data), "candidate": cand.to_dict(), "report": rep.to_dict()})


def cmd_search_2fan(args, doc, gas, data) -> str:
    cfg = _config(args)
    if args.scan:
        fields = ["j", "k", "eps", "delta", *twofan.MARGIN_NAMES, "feasible"]
        return _csv(twofan.scan_rows(data, gas, cfg), fields)
    r = twofan.search(data, gas, cfg)
    return dumps(
        {
            **_header(gas, data),
            "candidate": r.candidate.to_dict(),
            "rest_candidate": r.rest_candidate.to_dict(),
            "coefficients": r.coefficients.to_dict(),
            "fan": r.fan.to_dict(),
            "margins": r.margins,
            "j": r.j,
            "k": r.k,
            "report": r.report.to_dict(),
        }
    )


def _rho1(args, gas, data) -> float:
    if args.rho1 is not None:
        return args.rho1
    return onefan.DEFAULT_RHO1_FACTOR * onefan.min_rho1(gas, data)


def cmd_search_1fan(args, doc, gas, data) -> str:
    tol = args.tol if args.tol is not None else SearchConfig().tol
    r = onefan.search(data, gas, _rho1(args, gas, data), tol)
    return dumps(
        {
            **_header(gas, data),
            "rho1": r.rho1,
            "state": r.state.to_dict(),
            "candidate": r.candidate.to_dict(),
            "report": r.report.to_dict(),
        }
    )


def cmd_threshold_u(args, doc, gas, data) -> str:
    res = onefan.threshold_u(data, gas, _rho1(args, gas, data), _config(args))
    return dumps({**_header(gas, data), "threshold": res.to_dict()})


def cmd_threshold_scan(args, doc, gas, data) -> str:
    cfg = _config(args)
    base = onefan.min_rho1(gas, data)
    rows = []
    for rho1, res in onefan.threshold_scan(data, gas, onefan.default_factors(), cfg):
        row = {"rho1": rho1, "factor": rho1 / base, "status": "ok" if res else "budget_exhausted"}
        if res:
            row.update({"u_bar": res.u_bar, "U": res.U, **res.margins_at_u_bar})
        rows.append(row)
    return _csv(rows, ["rho1", "factor", "status", "u_bar", "U", *ONEFAN_MARGINS])


HANDLERS = {
    "solve-riemann": cmd_solve_riemann,
    "verify": cmd_verify,
    "search-2fan": cmd_search_2fan,
    "search-1fan": cmd_search_1fan,
    "threshold-u": cmd_threshold_u,
    "threshold-scan": cmd_threshold_scan,
}


def run(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc, gas, data = _load(args)
        out = HANDLERS[args.command](args, doc, gas, data)
    except InputError as exc:
        sys.stderr.write(dumps({"error": "malformed_input", "message": str(exc)}))
        return 2
    except FanError as exc:
        sys.stderr.write(dumps(exc.to_dict()))
        return 1
    except ValueError as exc:
        # config validation
        sys.stderr.write(dumps({"error": "malformed_input", "message": str(exc)}))
        return 2
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def main() -> None:
    sys.exit(run())
