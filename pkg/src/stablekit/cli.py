"""Command-line client for the stable-law toolkit.

Every numeric answer is produced by posting the request to the in-process
HTTP service and printing the response, so CLI output matches library
results bit for bit in --json mode; the default human mode rounds floats
to 6 significant digits.  Exit codes: 0 success, 1 usage error, 2
numerical failure.
"""

import argparse
import asyncio
import json
import os
import sys

import httpx

from ._errors import DimensionMismatch, StableKitError
from .datasets import EMBEDDED_NAMES, abbey_returns, load_embedded, read_csv

_EXIT_USAGE = 1
_EXIT_NUMERICAL = 2
_DATASETS = list(EMBEDDED_NAMES) + ["abbey_returns"]


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(_EXIT_USAGE)


class _CallFailed(Exception):
    def __init__(self, code, name, detail):
        super().__init__(f"{name}: {detail}")
        self.code = code


def _floats(text):
    try:
        return [float(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma list of numbers: {text!r}")


def _matrix(text):
    try:
        return [[float(t) for t in row.split(",")]
                for row in text.split(";")]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"not a ';'-separated list of comma rows: {text!r}")


def _env_number(name, cast):
    raw = os.environ.get(name)
    if raw is None:
        return None
    try:
        return cast(raw)
    except ValueError:
        raise StableKitError(f"environment variable {name} is not numeric: "
                             f"{raw!r}") from None


_APP = None


async def _asgi_post(path, payload):
    transport = httpx.ASGITransport(app=_APP)
    async with httpx.AsyncClient(transport=transport,
                                 base_url="http://stablekit",
                                 timeout=None) as client:
        return await client.post(path, json=payload)


def _post(path, payload):
    global _APP
    if _APP is None:
        from .service import create_app

        _APP = create_app()
    resp = asyncio.run(_asgi_post(path, payload))
    if resp.status_code == 200:
        return resp
    try:
        body = resp.json()
    except ValueError:
        body = {}
    name = body.get("error", "ValidationError")
    detail = body.get("detail", resp.text)
    if not isinstance(detail, str):
        detail = json.dumps(detail)
    code = _EXIT_USAGE if resp.status_code == 422 else _EXIT_NUMERICAL
    raise _CallFailed(code, name, detail)


def _round6(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return float(f"{obj:.6g}")
    if isinstance(obj, list):
        return [_round6(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _round6(v) for k, v in obj.items()}
    return obj


def _emit_text(text, args):
    if getattr(args, "json", False):
        sys.stdout.write(text.rstrip("\n") + "\n")
    else:
        print(json.dumps(_round6(json.loads(text)), indent=2))
    return 0


def _emit(resp, args):
    return _emit_text(resp.text, args)


def _resolve_data(args, columns=None):
    if args.dataset is not None:
        ds = (abbey_returns() if args.dataset == "abbey_returns"
              else load_embedded(args.dataset))
    else:
        ds = read_csv(args.data, expected_columns=columns)
    vals = ds.values
    if columns == 2:
        if vals.ndim != 2 or vals.shape[1] != 2:
            raise DimensionMismatch(f"{ds.name}: need two-column data")
    elif vals.ndim != 1:
        raise DimensionMismatch(f"{ds.name}: need one-column data")
    return vals.tolist()


def _seed_value(args):
    if args.seed is not None:
        return args.seed
    env = _env_number("STABLEKIT_SEED", int)
    return 0 if env is None else env


def _cfg_payload(args):
    cfg = {}
    tol = args.tol if args.tol is not None else _env_number("STABLEKIT_TOL",
                                                            float)
    if tol is not None:
        cfg["tol"] = tol
    if args.max_iter is not None:
        cfg["max_iter"] = args.max_iter
    seed = args.seed if args.seed is not None else _env_number(
        "STABLEKIT_SEED", int)
    if seed is not None:
        cfg["seed"] = seed
    return cfg


def _law_payload(args):
    return {"alpha": args.alpha, "beta": args.beta, "sigma": args.sigma,
            "mu": args.mu, "param": args.param}


def _model_payload(args, parser):
    if args.model_json is not None:
        try:
            return json.loads(args.model_json)
        except json.JSONDecodeError as exc:
            parser.error(f"argument --model-json: invalid JSON ({exc})")
    if None in (args.alpha, args.beta, args.sigma, args.mu):
        parser.error("provide --model-json or all of "
                     "--alpha/--beta/--sigma/--mu")
    return _law_payload(args)


def _build_parser():
    parser = _Parser(prog="stablekit",
                     description="Stable-law simulation, densities, EM "
                                 "fitting and spectral estimation.")
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="SUBCOMMAND")

    out = _Parser(add_help=False)
    out.add_argument("--json", action="store_true",
                     help="full-precision JSON (default rounds to 6 "
                          "significant digits)")

    law = _Parser(add_help=False)
    law.add_argument("--alpha", type=float, required=True)
    law.add_argument("--beta", type=float, required=True)
    law.add_argument("--sigma", type=float, required=True)
    law.add_argument("--mu", type=float, required=True)
    law.add_argument("--param", type=int, choices=[0, 1], default=0,
                     help="0 for the continuous form, 1 for the classical "
                          "chf form")

    data = _Parser(add_help=False)
    grp = data.add_mutually_exclusive_group(required=True)
    grp.add_argument("--dataset", choices=_DATASETS,
                     help="embedded sample")
    grp.add_argument("--data", metavar="CSV", help="numeric CSV file")

    emcfg = _Parser(add_help=False)
    emcfg.add_argument("--tol", type=float, default=None,
                       help="relative loglik stop (env STABLEKIT_TOL)")
    emcfg.add_argument("--max-iter", type=int, default=None)
    emcfg.add_argument("--seed", type=int, default=None,
                       help="E-step fallback seed (env STABLEKIT_SEED)")

    p = sub.add_parser("sim", parents=[out, law],
                       help="draw univariate stable variates",
                       description="Output keys: values.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("sim-trunc", parents=[out, law],
                       help="draw truncated stable variates",
                       description="Output keys: values.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("sim-elliptical", parents=[out],
                       help="draw elliptical stable vectors",
                       description="Output keys: values (n rows).")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--sigma", type=_matrix, required=True,
                   metavar="R1C1,R1C2;R2C1,R2C2", help="dispersion matrix")
    p.add_argument("--mu", type=_floats, required=True)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("sim-spectral", parents=[out],
                       help="draw from a discrete spectral measure",
                       description="Output keys: values (n rows).")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--points", type=_matrix, required=True,
                   metavar="X1,Y1;X2,Y2", help="unit anchor rows")
    p.add_argument("--masses", type=_floats, required=True)
    p.add_argument("--mu", type=_floats, default=None)
    p.add_argument("--seed", type=int, default=None)

    for name in ("pdf", "cdf"):
        p = sub.add_parser(name, parents=[out, law],
                           help=f"evaluate the {name}",
                           description=f"Output keys: {name}.")
        p.add_argument("--y", type=_floats, required=True)

    p = sub.add_parser("pdf-elliptical", parents=[out],
                       help="evaluate the elliptical density",
                       description="Output keys: pdf.")
    p.add_argument("--z", type=_matrix, required=True, metavar="X1,Y1;X2,Y2")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--sigma", type=_matrix, required=True)
    p.add_argument("--mu", type=_floats, required=True)

    fit = sub.add_parser("fit", help="EM and projection estimators")
    fsub = fit.add_subparsers(dest="kind", required=True, metavar="KIND")
    fit_desc = ("Output keys: estimates, loglik_trace, iterations, "
                "converged, tol, gof.")

    p = fsub.add_parser("cauchy", parents=[out, data, emcfg],
                        help="skewed Cauchy fit", description=fit_desc)
    p.add_argument("--init-beta", type=float, required=True)
    p.add_argument("--init-sigma", type=float, required=True)
    p.add_argument("--init-mu", type=float, required=True)

    p = fsub.add_parser("sym", parents=[out, data, emcfg],
                        help="symmetric stable fit", description=fit_desc)
    p.add_argument("--init-alpha", type=float, required=True)
    p.add_argument("--init-sigma", type=float, required=True)
    p.add_argument("--init-mu", type=float, required=True)

    p = fsub.add_parser("skew", parents=[out, data, emcfg],
                        help="skewed stable fit", description=fit_desc)
    p.add_argument("--init-alpha", type=float, required=True)
    p.add_argument("--init-beta", type=float, required=True)
    p.add_argument("--init-sigma", type=float, required=True)
    p.add_argument("--init-mu", type=float, required=True)
    p.add_argument("--param", type=int, choices=[0, 1], default=1)

    p = fsub.add_parser("cauchy-mix", parents=[out, data, emcfg],
                        help="Cauchy mixture fit", description=fit_desc)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--init-omega", type=_floats, required=True)
    p.add_argument("--init-beta", type=_floats, required=True)
    p.add_argument("--init-sigma", type=_floats, required=True)
    p.add_argument("--init-mu", type=_floats, required=True)

    p = fsub.add_parser("sym-mix", parents=[out, data, emcfg],
                        help="symmetric stable mixture fit",
                        description=fit_desc)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--init-omega", type=_floats, required=True)
    p.add_argument("--init-alpha", type=_floats, required=True)
    p.add_argument("--init-sigma", type=_floats, required=True)
    p.add_argument("--init-mu", type=_floats, required=True)

    p = fsub.add_parser("elliptical", parents=[out, data, emcfg],
                        help="elliptical stable fit", description=fit_desc)
    p.add_argument("--init-alpha", type=float, required=True)
    p.add_argument("--init-sigma", type=_matrix, required=True)
    p.add_argument("--init-mu", type=_floats, required=True)

    p = fsub.add_parser("spectral", parents=[out, data],
                        help="discrete spectral measure estimate",
                        description="Output keys: alpha, points, masses, mu.")
    p.add_argument("--m", type=int, required=True, help="number of anchors")

    fsub.add_parser("tail", parents=[out, data],
                    help="tail index and scale from the empirical chf",
                    description="Output keys: alpha, sigma.")

    p = sub.add_parser("gof", parents=[out, data],
                       help="KS and AD statistics against a model",
                       description="Output keys: n, ks, ad.")
    p.add_argument("--model-json", default=None,
                   help="model as JSON (a fit's estimates object)")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--mu", type=float, default=None)
    p.add_argument("--param", type=int, choices=[0, 1], default=0)

    p = sub.add_parser("plot-data", parents=[data],
                       help="CSV of fitted-pdf curve and histogram counts",
                       description="CSV sections: curve (x0, value) and "
                                   "hist (x0, x1, value).")
    p.add_argument("--model-json", default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--mu", type=float, default=None)
    p.add_argument("--param", type=int, choices=[0, 1], default=0)
    p.add_argument("--bins", type=int, default=20)
    p.add_argument("--points", type=int, default=200)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _dispatch(args, parser):
    cmd = args.command
    if cmd == "serve":
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0
    if cmd == "sim":
        payload = _law_payload(args) | {"n": args.n, "seed": _seed_value(args)}
        return _emit(_post("/sim", payload), args)
    if cmd == "sim-trunc":
        payload = _law_payload(args) | {"n": args.n, "a": args.a, "b": args.b,
                                        "seed": _seed_value(args)}
        return _emit(_post("/sim-trunc", payload), args)
    if cmd == "sim-elliptical":
        payload = {"n": args.n, "alpha": args.alpha, "sigma": args.sigma,
                   "mu": args.mu, "seed": _seed_value(args)}
        return _emit(_post("/sim-elliptical", payload), args)
    if cmd == "sim-spectral":
        mu = args.mu if args.mu is not None else [0.0] * len(args.points[0])
        payload = {"n": args.n, "alpha": args.alpha, "points": args.points,
                   "masses": args.masses, "mu": mu,
                   "seed": _seed_value(args)}
        return _emit(_post("/sim-spectral", payload), args)
    if cmd in ("pdf", "cdf"):
        payload = _law_payload(args) | {"y": args.y}
        resp = _post(f"/{cmd}", payload)
        text = resp.text
        if len(args.y) == 1:
            # a one-point query prints a scalar
            body = resp.json()
            body[cmd] = body[cmd][0]
            text = json.dumps(body)
        return _emit_text(text, args)
    if cmd == "pdf-elliptical":
        payload = {"z": args.z, "alpha": args.alpha, "sigma": args.sigma,
                   "mu": args.mu}
        resp = _post("/pdf-elliptical", payload)
        text = resp.text
        if len(args.z) == 1:
            body = resp.json()
            body["pdf"] = body["pdf"][0]
            text = json.dumps(body)
        return _emit_text(text, args)
    if cmd == "gof":
        payload = {"data": _resolve_data(args),
                   "model": _model_payload(args, parser)}
        return _emit(_post("/gof", payload), args)
    if cmd == "plot-data":
        payload = {"data": _resolve_data(args),
                   "model": _model_payload(args, parser),
                   "bins": args.bins, "points": args.points}
        sys.stdout.write(_post("/plot-data", payload).text)
        return 0
    if cmd == "fit":
        return _dispatch_fit(args)
    raise AssertionError(f"unhandled subcommand {cmd}")


def _dispatch_fit(args):
    kind = args.kind
    if kind == "tail":
        return _emit(_post("/fit/tail", {"data": _resolve_data(args)}), args)
    if kind == "spectral":
        payload = {"data": _resolve_data(args, columns=2), "m": args.m}
        return _emit(_post("/fit/spectral", payload), args)
    cfg = _cfg_payload(args)
    if kind == "cauchy":
        payload = {"data": _resolve_data(args), "init_beta": args.init_beta,
                   "init_sigma": args.init_sigma, "init_mu": args.init_mu,
                   "cfg": cfg}
        return _emit(_post("/fit/cauchy", payload), args)
    if kind == "sym":
        payload = {"data": _resolve_data(args), "init_alpha": args.init_alpha,
                   "init_sigma": args.init_sigma, "init_mu": args.init_mu,
                   "cfg": cfg}
        return _emit(_post("/fit/symmetric", payload), args)
    if kind == "skew":
        payload = {"data": _resolve_data(args), "init_alpha": args.init_alpha,
                   "init_beta": args.init_beta,
                   "init_sigma": args.init_sigma, "init_mu": args.init_mu,
                   "param": args.param, "cfg": cfg}
        return _emit(_post("/fit/skewed", payload), args)
    if kind == "cauchy-mix":
        payload = {"data": _resolve_data(args), "k": args.k,
                   "init_omega": args.init_omega,
                   "init_beta": args.init_beta,
                   "init_sigma": args.init_sigma,
                   "init_mu": args.init_mu, "cfg": cfg}
        return _emit(_post("/fit/cauchy-mixture", payload), args)
    if kind == "sym-mix":
        payload = {"data": _resolve_data(args), "k": args.k,
                   "init_omega": args.init_omega,
                   "init_alpha": args.init_alpha,
                   "init_sigma": args.init_sigma,
                   "init_mu": args.init_mu, "cfg": cfg}
        return _emit(_post("/fit/symmetric-mixture", payload), args)
    if kind == "elliptical":
        payload = {"data": _resolve_data(args, columns=2),
                   "init_alpha": args.init_alpha,
                   "init_sigma": args.init_sigma,
                   "init_mu": args.init_mu, "cfg": cfg}
        return _emit(_post("/fit/elliptical", payload), args)
    raise AssertionError(f"unhandled fit kind {kind}")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args, parser)
    except _CallFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except StableKitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return (_EXIT_USAGE if isinstance(exc, ValueError)
                else _EXIT_NUMERICAL)


if __name__ == "__main__":
    sys.exit(main())
