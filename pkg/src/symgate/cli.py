"""Command-line front end.

Exit codes: 0 on success, 2 for usage or validation errors, 3 when a gate
fails the unitarity check.
"""
import argparse
import json
import os
import sys

import numpy as np

from . import entangling, invariants, majorana, models
from .errors import NotUnitary, SymgateError
from .gates import (BasisTag, GeometricPoint, SymmetricGate, gate_from_json, gate_from_point,
                    is_reducible, symmetric_block)
from .invariants import format_number, records_to_csv


class UsageError(Exception):
    pass


def _json_text(obj):
    """JSON with every float printed to 17 significant digits."""
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {_json_text(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_text(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_number(obj)
    if obj is None:
        return "null"
    return json.dumps(obj)


def _flatten(payload):
    row = {}
    for k, v in payload.items():
        if isinstance(v, (list, tuple)):
            for i, x in enumerate(v):
                row[f"{k}{i + 1}"] = x
        else:
            row[k] = v
    return row


def _emit(args, payload, columns=None):
    fmt = args.format or ("csv" if columns else "json")
    if fmt == "json":
        text = _json_text(payload) + "\n"
    elif columns:
        text = records_to_csv(payload, columns)
    else:
        row = _flatten(payload)
        text = records_to_csv([row], list(row))
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _floats(text, n, name):
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"{name}: expected {n} comma-separated numbers, got {text!r}") from None
    if len(vals) != n or not all(np.isfinite(vals)):
        raise UsageError(f"{name}: expected {n} finite comma-separated numbers, got {text!r}")
    return vals


def _point(args):
    c = _floats(args.point, 3, "--point")
    if args.degrees:
        c = list(np.radians(c))
    return GeometricPoint(*c)


def _load_gate(path):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise UsageError(f"gate file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"gate file: invalid JSON ({exc})") from None
    rows = obj.get("matrix") if isinstance(obj, dict) else None
    if isinstance(rows, list) and len(rows) == 4:
        try:
            V = np.array([[complex(*z) for z in row] for row in rows])
        except (TypeError, ValueError):
            raise UsageError("matrix: expected [re, im] entries") from None
        if V.shape != (4, 4):
            raise UsageError("matrix: expected 4 rows of 4 entries")
        if not is_reducible(V):
            raise UsageError("matrix: 4x4 gate does not preserve the symmetric subspace")
        return SymmetricGate(symmetric_block(V), BasisTag.COMP_SYM)
    if isinstance(rows, list) and len(rows) > 4:
        raise UsageError(f"matrix: {len(rows)}x{len(rows)} gates are not supported")
    try:
        return gate_from_json(obj)
    except NotUnitary:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _target(args):
    if args.point is not None and args.gate is not None:
        raise UsageError("give either a gate file or --point, not both")
    if args.point is not None:
        return _point(args)
    if args.gate is not None:
        return _load_gate(args.gate)
    raise UsageError("a gate file or --point is required")


def _as_gate(target):
    if isinstance(target, GeometricPoint):
        return gate_from_point(target)
    return target


def cmd_analyze(args):
    if not args.tol > 0:
        raise UsageError(f"--tol: must be positive, got {args.tol}")
    _emit(args, entangling.classification_record(_target(args), tol=args.tol))


def cmd_ep(args):
    target = _target(args)
    if isinstance(target, GeometricPoint):
        closed = entangling.ep_closed_form(target).ep
    else:
        closed = entangling.ep_of_gate(target)
    payload = {"ep": closed, "method": "closed_form"}
    if args.mc is not None:
        if args.mc < 100:
            raise UsageError(f"--mc: need at least 100 samples, got {args.mc}")
        res = entangling.ep_monte_carlo(_as_gate(target), args.mc, args.seed)
        payload = {"closed_form": closed, "monte_carlo": res.ep,
                   "std_error": res.std_error, "n_samples": res.n_samples}
    _emit(args, payload)


def cmd_heatmap(args):
    if args.resolution < 2:
        raise UsageError(f"--resolution: must be >= 2, got {args.resolution}")
    _emit(args, invariants.oplane_grid(args.resolution), invariants.GRID_COLUMNS)


def _grid(text):
    parts = text.lower().split("x")
    try:
        n_theta, n_phi = (int(p) for p in parts)
    except ValueError:
        raise UsageError(f"--grid: expected NTHETAxNPHI, got {text!r}") from None
    if n_theta < 2 or n_phi < 2:
        raise UsageError(f"--grid: need at least 2x2, got {text!r}")
    return n_theta, n_phi


def cmd_sphere(args):
    n_theta, n_phi = _grid(args.grid)
    g = _as_gate(_target(args))
    theta, phi, E = majorana.entropy_sphere(g, n_theta, n_phi)
    _emit(args, majorana.sphere_records(theta, phi, E), ("theta", "phi", "entropy"))


_PARAM_TYPES = {"heisenberg": models.HeisenbergParams, "lmg": models.LMGParams,
                "crosskerr": models.CrossKerrParams}


def _model_params(args):
    if args.model not in _PARAM_TYPES:
        raise UsageError(f"model: unknown model {args.model!r}")
    if args.preset and args.params:
        raise UsageError("give either --preset or --params, not both")
    if args.params:
        kw = {}
        for item in args.params.split(","):
            key, _, value = item.partition("=")
            try:
                kw[key.strip()] = float(value)
            except ValueError:
                raise UsageError(f"--params: bad value in {item!r}") from None
        try:
            return _PARAM_TYPES[args.model](**kw)
        except TypeError:
            raise UsageError(f"--params: {args.model} takes "
                             f"{', '.join(_PARAM_TYPES[args.model].__dataclass_fields__)}") from None
    presets = models.PRESETS[args.model]
    name = args.preset or next(iter(presets))
    if name not in presets:
        raise UsageError(f"--preset: unknown preset {name!r} for {args.model}")
    return presets[name]


def _t_range(text):
    parts = text.split(":")
    try:
        a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
    except (ValueError, IndexError):
        raise UsageError(f"--t-range: expected START:END:N, got {text!r}") from None
    if len(parts) != 3 or not b > a or n < 2:
        raise UsageError(f"--t-range: need START < END and N >= 2, got {text!r}")
    return a, b, n


def cmd_model(args):
    params = _model_params(args)
    a, b, n = _t_range(args.t_range)
    records = [vars(r) for r in models.sweep(args.model, params, a, b, n)]
    _emit(args, records, models.SWEEP_COLUMNS)


def cmd_fraction(args):
    if args.samples < 10**4:
        raise UsageError(f"--samples: need at least 10000, got {args.samples}")
    _emit(args, {
        "analytic": entangling.chamber_fraction_perfect("analytic"),
        "monte_carlo": entangling.chamber_fraction_perfect("monte_carlo", args.samples, args.seed),
    })


def _star_payload(con):
    return [[s.theta, s.phi] for s in con.stars]


def cmd_majorana(args):
    if (args.state is None) == (args.stars is None):
        raise UsageError("give exactly one of --state or --stars")
    if args.state is not None:
        v = _floats(args.state, 6, "--state")
        try:
            state = majorana.SymmetricState.normalized(
                [complex(v[0], v[1]), complex(v[2], v[3]), complex(v[4], v[5])])
        except SymgateError as exc:
            raise UsageError(f"--state: {exc}") from None
        con = majorana.stars_of(state)
    else:
        v = _floats(args.stars, 4, "--stars")
        if args.degrees:
            v = list(np.radians(v))
        try:
            con = majorana.Constellation((majorana.MajoranaStar(v[0], v[1]),
                                          majorana.MajoranaStar(v[2], v[3])))
        except ValueError as exc:
            raise UsageError(f"--stars: {exc}") from None
        state = majorana.state_from_stars(con)
    _emit(args, {
        "state": [[float(z.real), float(z.imag)] for z in state.amplitudes],
        "stars": _star_payload(con),
        "concurrence": majorana.concurrence(state),
        "chordal_distance": majorana.chordal_distance(con),
    })


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="RNG seed (default: $SYMGATE_SEED or 0)")
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--output", default=argparse.SUPPRESS, help="write here instead of stdout")
    common.add_argument("--degrees", action="store_true", default=argparse.SUPPRESS,
                        help="angles on input are in degrees")

    parser = argparse.ArgumentParser(
        prog="symgate", parents=[common],
        description="Nonlocality and entangling power of symmetric two-qubit gates.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    def gate_input(p):
        p.add_argument("gate", nargs="?", help="gate JSON file")
        p.add_argument("--point", help="geometric point c1,c2,c3")

    p = add("analyze", cmd_analyze, "classify a gate and reduce it to the Weyl chamber")
    gate_input(p)
    # Points typed on the command line carry ~1e-8 rounding.
    p.add_argument("--tol", type=float, default=1e-6, help="hull boundary tolerance")
    p = add("ep", cmd_ep, "entangling power, closed form and optionally Monte Carlo")
    gate_input(p)
    p.add_argument("--mc", type=int, help="Monte Carlo sample count (>= 100)")
    p = add("heatmap", cmd_heatmap, "O-plane raster of Tr m, |G| and ep")
    p.add_argument("--resolution", type=int, default=101)
    p = add("sphere", cmd_sphere, "linear entropy of U|u,u> over the sphere")
    gate_input(p)
    p.add_argument("--grid", default="181x361", help="NTHETAxNPHI")
    p = add("model", cmd_model, "time sweep of a physical model")
    p.add_argument("model", help="heisenberg, lmg or crosskerr")
    p.add_argument("--preset", help="fig6a, fig6b or fig6c")
    p.add_argument("--params", help="explicit parameters, e.g. Ix=1,Iy=0,Iz=-1")
    p.add_argument("--t-range", default="0:3.141592653589793:301", help="START:END:N")
    p = add("fraction", cmd_fraction, "fraction of the chamber holding perfect entanglers")
    p.add_argument("--samples", type=int, default=10**6)
    p = add("majorana", cmd_majorana, "convert between a symmetric state and its stars")
    p.add_argument("--state", help="re0,im0,re1,im1,re2,im2 in the comp-sym basis")
    p.add_argument("--stars", help="theta1,phi1,theta2,phi2")
    return parser


# Flags whose value is a comma list that may start with a minus sign.
_LIST_FLAGS = ("--point", "--state", "--stars", "--params")


def _glue_list_values(argv):
    """Rewrite ``--point -1,0,1`` as ``--point=-1,0,1`` so argparse keeps it."""
    out = []
    it = iter(argv)
    for item in it:
        if item in _LIST_FLAGS:
            value = next(it, None)
            out.append(item if value is None else f"{item}={value}")
        else:
            out.append(item)
    return out


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_list_values(argv))
    defaults = {"format": None, "output": None, "degrees": False}
    for key, value in defaults.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    if not hasattr(args, "seed"):
        env = os.environ.get("SYMGATE_SEED")
        try:
            args.seed = int(env) if env else 0
        except ValueError:
            parser.exit(2, f"symgate: error: SYMGATE_SEED: not an integer: {env!r}\n")
    try:
        args.func(args)
    except UsageError as exc:
        parser.exit(2, f"symgate: error: {exc}\n")
    except NotUnitary as exc:
        parser.exit(3, f"symgate: error: {exc}\n")
    except SymgateError as exc:
        parser.exit(2, f"symgate: error: {exc}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
