"""Command-line front end: a thin client of the darktripod service.

By default requests are served in-process against the FastAPI app; pass
--server (or set DARKTRIPOD_SERVER) to talk to a remote instance instead.
Every output CSV is written atomically and accompanied by a
``<out>.manifest.json`` recording the resolved request, so a run can be
reproduced from the manifest alone.

Exit codes: 0 success, 1 failed oracle check, 2 bad arguments,
3 physics-domain error (pole/branch), 4 non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import time
from pathlib import Path

import httpx

from . import __version__
from .model import CONFIG_KEYS, SystemConfig

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_ARGS = 2
EXIT_PHYSICS = 3
EXIT_NO_CONVERGENCE = 4

_KIND_TO_EXIT = {
    "bad-request": EXIT_BAD_ARGS,
    "physics": EXIT_PHYSICS,
    "convergence": EXIT_NO_CONVERGENCE,
}


class CliError(Exception):
    def __init__(self, message: str, exit_code: int) -> None:
        super().__init__(message)
        self.exit_code = exit_code


def _parse_grid(spec: str) -> dict:
    parts = spec.split(":")
    if len(parts) != 3:
        raise CliError(f"bad grid spec {spec!r}, expected lo:hi:n", EXIT_BAD_ARGS)
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise CliError(f"bad grid spec {spec!r}", EXIT_BAD_ARGS) from None
    return {"lo": lo, "hi": hi, "n": n}


def _parse_floats(spec: str) -> list[float]:
    try:
        return [float(x) for x in spec.split(",") if x.strip()]
    except ValueError:
        raise CliError(f"bad number list {spec!r}", EXIT_BAD_ARGS) from None


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        cfg = SystemConfig.from_file(path)
    except FileNotFoundError:
        raise CliError(f"config file not found: {path}", EXIT_BAD_ARGS) from None
    except ValueError as exc:
        raise CliError(f"bad config file: {exc}", EXIT_BAD_ARGS) from None
    return cfg.to_dict()


def _make_client(server: str | None):
    server = server or os.environ.get("DARKTRIPOD_SERVER")
    if server:
        return httpx.Client(base_url=server, timeout=300.0)
    from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app, raise_server_exceptions=False)


def _post(client, path: str, payload: dict) -> dict:
    resp = client.post(path, json=payload)
    if resp.status_code == 200:
        return resp.json()
    try:
        body = resp.json()
    except ValueError:
        body = {}
    kind = body.get("kind", "bad-request")
    detail = body.get("detail", f"HTTP {resp.status_code}")
    raise CliError(str(detail), _KIND_TO_EXIT.get(kind, EXIT_BAD_ARGS))


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_manifest(out: Path, subcommand: str, payload: dict,
                    outputs: list[str], t0: float, extra: dict | None = None) -> None:
    manifest = {
        "subcommand": subcommand,
        "tool_version": __version__,
        "request": payload,
        "outputs": outputs,
        "duration_s": time.monotonic() - t0,
    }
    if extra:
        manifest.update(extra)
    _atomic_write(Path(str(out) + ".manifest.json"),
                  json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _theta_path(out: Path, theta: float) -> Path:
    return out.with_name(f"{out.stem}_theta{theta:.6f}{out.suffix or '.csv'}")


def _run_curves(client, args, endpoint: str, payload: dict) -> int:
    t0 = time.monotonic()
    result = _post(client, endpoint, payload)
    out = Path(args.out)
    curves = result["curves"]
    paths = []
    for curve in curves:
        path = out if len(curves) == 1 else _theta_path(out, curve["theta"])
        _atomic_write(path, curve["csv"])
        paths.append(str(path))
    _write_manifest(out, endpoint.strip("/"), payload, paths, t0)
    return EXIT_OK


def _run_csv(client, args, endpoint: str, payload: dict) -> int:
    t0 = time.monotonic()
    result = _post(client, endpoint, payload)
    out = Path(args.out)
    _atomic_write(out, result["csv"])
    _write_manifest(out, endpoint.strip("/"), payload, [str(out)], t0,
                    extra={"meta": result.get("meta", {})})
    return EXIT_OK


def _config_payload(args) -> dict:
    cfg = _load_config(getattr(args, "config", None))
    if getattr(args, "theta", None) is not None:
        cfg["theta"] = args.theta
    return cfg


def cmd_fig2(client, args) -> int:
    payload = {}
    if args.grid:
        payload["grid"] = _parse_grid(args.grid)
    return _run_csv(client, args, "/fig2", payload)


def cmd_fig3(client, args) -> int:
    payload: dict = {"config": _config_payload(args)}
    if args.grid:
        payload["grid"] = _parse_grid(args.grid)
    if args.theta is not None:
        payload["thetas"] = [args.theta]
    elif args.thetas:
        payload["thetas"] = _parse_floats(args.thetas)
    return _run_curves(client, args, "/fig3", payload)


def cmd_fig4(client, args) -> int:
    payload: dict = {}
    if args.grid:
        payload["theta_grid"] = _parse_grid(args.grid)
    if args.tan2phi:
        payload["tan2phi"] = _parse_floats(args.tan2phi)
    return _run_csv(client, args, "/fig4", payload)


def cmd_fig5(client, args) -> int:
    cfg = _config_payload(args)
    cfg.setdefault("K", 10.0)
    payload: dict = {"config": cfg}
    if args.grid:
        payload["grid"] = _parse_grid(args.grid)
    if args.theta is not None:
        payload["thetas"] = [args.theta]
    elif args.thetas:
        payload["thetas"] = _parse_floats(args.thetas)
    return _run_curves(client, args, "/fig5", payload)


def cmd_scan(client, args) -> int:
    payload: dict = {"config": _config_payload(args)}
    if args.grid:
        payload["grid"] = _parse_grid(args.grid)
    return _run_csv(client, args, "/scan", payload)


def cmd_propagate(client, args) -> int:
    payload: dict = {
        "config": _config_payload(args),
        "sigma_t": args.sigma_t,
        "carrier_delta1": args.carrier_delta1,
        "length": args.length,
        "local_field": bool(args.local_field),
    }
    t0 = time.monotonic()
    result = _post(client, "/propagate", payload)
    out = Path(args.out)
    _atomic_write(out, result["csv"])
    summary_path = Path(str(out) + ".summary.json")
    _atomic_write(summary_path, json.dumps(result["summary"], indent=2, sort_keys=True) + "\n")
    _write_manifest(out, "propagate", payload, [str(out), str(summary_path)], t0,
                    extra={"summary": result["summary"]})
    return EXIT_OK


def cmd_oracle_check(client, args) -> int:
    payload: dict = {
        "config": _config_payload(args),
        "n_samples": args.samples,
        "seed": args.seed,
    }
    t0 = time.monotonic()
    result = _post(client, "/oracle-check", payload)
    out = Path(args.out)
    _atomic_write(out, result["csv"])
    summary = result["summary"]
    _write_manifest(out, "oracle-check", payload, [str(out)], t0,
                    extra={"summary": summary, "seed": summary.get("seed")})
    status = "PASS" if summary.get("pass") else "FAIL"
    print(f"oracle-check {status}: "
          f"max_closed_vs_linear={summary['max_resid_closed_vs_linear']:.3e} "
          f"max_linear_vs_ode={summary['max_resid_linear_vs_ode']:.3e}")
    return EXIT_OK if summary.get("pass") else EXIT_CHECK_FAILED


def cmd_serve(client, args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="darktripod",
        description="Dark-state tripod EIT medium: scans, group velocity, propagation",
    )
    parser.add_argument("--version", action="version", version=f"darktripod {__version__}")
    parser.add_argument("--server", help="base URL of a running service "
                        "(default: in-process; env DARKTRIPOD_SERVER)")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, out_required=True):
        p.add_argument("--config", help="path to a key = value config file "
                       f"(keys: {', '.join(CONFIG_KEYS)})")
        p.add_argument("--out", required=out_required, help="output CSV path")
        p.add_argument("--theta", type=float, help="override mixing angle (radians)")
        p.add_argument("--grid", help="grid spec lo:hi:n")

    p = sub.add_parser("fig2", help="weight functions f(theta), g(theta)")
    p.add_argument("--out", required=True)
    p.add_argument("--grid", help="theta grid lo:hi:n")
    p.set_defaults(fn=cmd_fig2)

    p = sub.add_parser("fig3", help="susceptibility scans per mixing angle")
    add_common(p)
    p.add_argument("--thetas", help="comma-separated mixing angles (radians)")
    p.set_defaults(fn=cmd_fig3)

    p = sub.add_parser("fig4", help="group velocity over theta and tan2phi")
    p.add_argument("--out", required=True)
    p.add_argument("--grid", help="theta grid lo:hi:n")
    p.add_argument("--tan2phi", help="comma-separated tan^2(phi) values")
    p.set_defaults(fn=cmd_fig4)

    p = sub.add_parser("fig5", help="local-field corrected dense-medium scans")
    add_common(p)
    p.add_argument("--thetas", help="comma-separated mixing angles (radians)")
    p.set_defaults(fn=cmd_fig5)

    p = sub.add_parser("scan", help="susceptibility scan for one configuration")
    add_common(p)
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("propagate", help="pulse propagation through a slab")
    add_common(p)
    p.add_argument("--sigma-t", type=float, default=200.0, dest="sigma_t")
    p.add_argument("--carrier-delta1", type=float, default=0.0, dest="carrier_delta1")
    p.add_argument("--length", type=float, default=1.0)
    p.add_argument("--local-field", action="store_true", dest="local_field")
    p.set_defaults(fn=cmd_propagate)

    p = sub.add_parser("oracle-check", help="three-way steady-state residual sweep")
    add_common(p)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=12345)
    p.set_defaults(fn=cmd_oracle_check)

    p = sub.add_parser("serve", help="run the HTTP service under uvicorn")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors already
        return int(exc.code or 0)

    client = None
    try:
        if args.subcommand != "serve":
            client = _make_client(args.server)
        return args.fn(client, args)
    except CliError as exc:
        print(f"darktripod: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except httpx.HTTPError as exc:
        print(f"darktripod: transport error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    finally:
        if client is not None:
            client.close()


if __name__ == "__main__":
    sys.exit(main())
