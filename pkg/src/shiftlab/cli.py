"""``shiftlab``: command-line front end.

JSON goes to stdout (exact integers as decimal strings), short human
summaries to stderr. Exit status: 0 success, 1 bad input, 2 budget exceeded.
"""

import argparse
import json
import os
import re
import sys
import time
from fractions import Fraction

import numpy as np

from . import chessboard as cb
from . import dyck
from . import rotations as rot
from ._util import DEFAULT_MAX_NODES, BudgetExceeded
from .numtheory import CountSequence
from .perron import (ReducibleError, is_perron, perron_factorizations, perron_from_poly,
                     perron_root)
from .polynomials import format_poly, parse_poly
from .sft import (Sublattice, TorusConfiguration, entropy_box_estimate, fixed_points,
                  full_shift, golden_mean, periodically_equivalent, sublattices_of_index)
from .specfile import load_spec
from .verify import run_suite
from .zeta import direct_prime_certificate, to_transfer_matrix, zeta_denominator, zeta_series


class InputError(ValueError):
    pass


# -- parsing helpers -------------------------------------------------------

_SYSTEM = re.compile(r"^\s*(full|chessboard|dyck)\s*\(([\d,\s]+)\)\s*$|^\s*(goldenmean)\s*$")


def resolve_system(key):
    """Named system -> SftSpec, or ``("dyck", N)`` for the Dyck shift."""
    m = _SYSTEM.match(key or "")
    if not m:
        raise InputError(f"unknown system {key!r}; expected full(n,d), chessboard(d), "
                         "goldenmean or dyck(N)")
    if m.group(3):
        return golden_mean()
    args = [int(a) for a in m.group(2).split(",") if a.strip()]
    name = m.group(1)
    if name == "full" and len(args) == 2 and min(args) >= 1:
        return full_shift(*args)
    if name == "chessboard" and len(args) == 1 and args[0] >= 1:
        return cb.chessboard_sft(args[0])
    if name == "dyck" and len(args) == 1 and args[0] >= 1:
        return ("dyck", args[0])
    raise InputError(f"bad arguments for system {key!r}")


def _system_from(args, key_attr="system", spec_attr="spec"):
    key, path = getattr(args, key_attr), getattr(args, spec_attr)
    if bool(key) == bool(path):
        raise InputError(f"give exactly one of --{key_attr.replace('_', '-')} "
                         f"and --{spec_attr.replace('_', '-')}")
    return load_spec(path) if path else resolve_system(key)


def _sft(args, **kw):
    X = _system_from(args, **kw)
    if isinstance(X, tuple):
        raise InputError("the Dyck shift is not of finite type; use the dyck subcommands")
    return X


def parse_lattice(text):
    """``"a,b;0,c"`` -> Sublattice (rows are generators, brought to HNF)."""
    try:
        rows = [[int(v) for v in r.split(",")] for r in text.split(";")]
        return Sublattice.from_generators(rows)
    except ValueError as e:
        raise InputError(f"bad lattice {text!r}: {e}") from None


def parse_vector(text):
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise InputError(f"bad integer vector {text!r}") from None


def parse_grid(text):
    """Digit grid -> integer array.

    One row per line gives a 2-D array (line = first index); a single line
    is 1-D; blank-line separated blocks stack into 3-D. Whitespace inside a
    row separates multi-digit entries, otherwise each character is a cell.
    """
    blocks = [b for b in re.split(r"\n\s*\n", text.strip()) if b.strip()]

    def row(line):
        toks = line.split() if " " in line.strip() else list(line.strip())
        return [int(t) for t in toks]

    try:
        data = [[row(ln) for ln in b.strip().splitlines()] for b in blocks]
        arr = np.array(data, dtype=np.int64)
    except ValueError:
        raise InputError("grid rows must be integers of equal length") from None
    if arr.ndim != 3:
        raise InputError("grid rows must have equal length")
    if arr.shape[0] == 1:
        arr = arr[0]
        if arr.shape[0] == 1:
            arr = arr[0]
    return arr


def format_grid(a):
    a = np.asarray(a)
    if a.ndim == 1:
        return " ".join(map(str, a))
    if a.ndim == 2:
        return "\n".join(" ".join(map(str, r)) for r in a)
    return "\n\n".join(format_grid(s) for s in a)


def _read_grid(path):
    text = sys.stdin.read() if path == "-" else open(path).read()
    return parse_grid(text)


def _torus(arr):
    L = Sublattice.diagonal(*arr.shape)
    return TorusConfiguration(L, tuple(int(arr[c]) for c in L.cells()))


def parse_group(text):
    """``"Z5^4"`` or ``"Z2xZ3"`` -> list of moduli."""
    out = []
    for part in re.split(r"\s*[x*]\s*", text.strip()):
        m = re.fullmatch(r"Z(\d+)(?:\^(\d+))?", part)
        if not m:
            raise InputError(f"bad group {text!r}; expected e.g. Z5^4 or Z2xZ3")
        out += [int(m.group(1))] * int(m.group(2) or 1)
    return out


def load_counts(path):
    """A JSON list (periods 1, 2, ...) or an object {period: count}."""
    try:
        with open(path) as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: not valid JSON ({e})") from None
    if isinstance(data, list):
        return CountSequence.from_periods([int(v) for v in data])
    if isinstance(data, dict):
        return CountSequence(sorted((int(k), int(v)) for k, v in data.items()))
    raise InputError(f"{path}: expected a list or an object of counts")


def _s(x):
    """Exact value as a string."""
    return str(x)


# -- commands ------------------------------------------------------------------

def cmd_count(args):
    X = _system_from(args)
    if isinstance(X, tuple):
        if args.period is None:
            raise InputError("the Dyck shift only supports --period")
        c = dyck.periodic_count_total(X[1], args.period)
        return {"system": f"dyck({X[1]})", "period": args.period, "count": _s(c)}
    if args.lattice:
        lattices = [parse_lattice(args.lattice)]
    elif args.period is not None:
        lattices = [Sublattice.diagonal(*([args.period] * X.dimension))]
    elif args.index is not None:
        lattices = sublattices_of_index(X.dimension, args.index)
    else:
        raise InputError("give --index, --period or --lattice")
    if any(L.dimension != X.dimension for L in lattices):
        raise InputError(f"lattice dimension differs from the system dimension {X.dimension}")
    results = []
    for L in lattices:
        if args.enumerate:
            pts = fixed_points(X, L, "enumerate", jobs=args.jobs, max_nodes=args.max_nodes)
            results.append({"lattice": L.to_json(), "count": _s(len(pts)),
                            "points": [[_s(v) for v in p.values] for p in pts]})
        else:
            c = fixed_points(X, L, jobs=args.jobs, max_nodes=args.max_nodes)
            results.append({"lattice": L.to_json(), "count": _s(c)})
    counts = {r["count"] for r in results}
    for r in results:
        print(f"{Sublattice(r['lattice'])!s:>16}  {r['count']}", file=sys.stderr)
    return {"system": X.name, "results": results,
            "count": counts.pop() if len(counts) == 1 else None}


def cmd_equiv(args):
    X = _sft(args)
    Y = _sft(args, key_attr="other", spec_attr="other_spec")
    res = periodically_equivalent(X, Y, args.horizon, jobs=args.jobs, max_nodes=args.max_nodes)
    print(res.to_json()["verdict"], file=sys.stderr)
    return {"systems": [X.name, Y.name], **res.to_json()}


def cmd_entropy(args):
    X = _sft(args)
    rows = []
    for n in range(args.min_radius, args.radius + 1):
        h = entropy_box_estimate(X, n, max_nodes=args.max_nodes)
        rows.append({"radius": n, "estimate": h})
        print(f"n={n:<3} {h:.6f}", file=sys.stderr)
    return {"system": X.name, "estimates": rows}


def cmd_zeta(args):
    X = _sft(args)
    if X.dimension != 1:
        raise InputError("zeta functions are computed for 1-D systems only")
    A = to_transfer_matrix(X)
    z = zeta_series(A, args.order)
    print("zeta:", ", ".join(str(c) for c in z), file=sys.stderr)
    return {"system": X.name, "matrix": A.tolist(),
            "traces": [_s(t) for t in A.traces(args.order)],
            "coefficients": [_s(c) for c in z],
            "denominator": [_s(c) for c in zeta_denominator(A)]}


def _parse_matrix(text):
    try:
        return [[int(v) for v in r.split(",")] for r in text.split(";")]
    except ValueError:
        raise InputError(f"bad matrix {text!r}; expected rows like '1,1;1,0'") from None


def _root_arg(text):
    if text is None:
        return None
    try:
        if "," in text:
            lo, hi = text.split(",")
            return (Fraction(lo), Fraction(hi))
        return Fraction(text)
    except ValueError:
        raise InputError(f"bad root selector {text!r}") from None


def cmd_perron(args):
    if args.action == "root":
        if not args.matrix:
            raise InputError("perron root needs --matrix")
        r = perron_root(_parse_matrix(args.matrix), Fraction(args.precision))
        print(f"{format_poly(r.min_poly)}: {float(r):.12f}", file=sys.stderr)
        return {"root": r.to_json(), "perron": type(r).__name__ == "PerronNumber"}
    if not args.poly:
        raise InputError(f"perron {args.action} needs --poly")
    p = parse_poly(args.poly)
    if args.action == "check":
        ok = is_perron(p, _root_arg(args.root))
        print("Perron" if ok else "not Perron", file=sys.stderr)
        return {"poly": format_poly(p), "is_perron": ok}
    lam = perron_from_poly(p, _root_arg(args.root))
    rep = perron_factorizations(lam, args.max_degree, args.max_height)
    for fac in rep.factorizations:
        print(" * ".join(format_poly(f.min_poly) for f in fac), file=sys.stderr)
    return rep.to_json()


def cmd_certify(args):
    if args.counts:
        c = load_counts(args.counts)
    elif args.system:
        X = _sft(args)
        if X.dimension != 1:
            raise InputError("certify-prime needs a 1-D system")
        c = CountSequence.from_periods(
            [fixed_points(X, Sublattice.diagonal(n), jobs=args.jobs, max_nodes=args.max_nodes)
             for n in range(1, args.horizon + 1)])
    else:
        raise InputError("give --counts FILE or --system KEY")
    rep = direct_prime_certificate(c, args.horizon, jobs=args.jobs, max_nodes=args.max_nodes)
    print(f"{len(rep['pairs'])} pairs, {len(rep['nontrivial'])} nontrivial", file=sys.stderr)
    return {"horizon": args.horizon, "certified": rep["certified"],
            "pairs": [p.to_json() for p in rep["pairs"]],
            "nontrivial": len(rep["nontrivial"])}


def cmd_chessboard(args):
    if args.action == "maxslope":
        L = parse_lattice(args.lattice) if args.lattice else Sublattice.diagonal(*([3] * args.dim))
        pts = cb.max_slope_points(L.dimension, L, jobs=args.jobs, max_nodes=args.max_nodes)
        print(f"{len(pts)} max-slope points", file=sys.stderr)
        return {"lattice": L.to_json(), "count": _s(len(pts)),
                "points": [[_s(v) for v in p.values] for p in pts]}
    if not args.grid:
        raise InputError(f"chessboard {args.action} needs --grid FILE (or - for stdin)")
    a = _read_grid(args.grid)
    if args.action == "lift":
        h = cb.lift_height(a, args.base)
        print(format_grid(h), file=sys.stderr)
        return {"shape": list(a.shape), "heights": format_grid(h)}
    if args.action == "cocycle":
        x = _torus(a)
        if not cb.is_proper(x):
            raise InputError("grid is not a proper coloring of the torus")
        n = parse_vector(args.n)
        v = cb.height_cocycle(x, n)
        print(f"Ht = {v}", file=sys.stderr)
        return {"shape": list(a.shape), "n": list(n), "value": _s(v),
                "slopes": [_s(s) for s in cb.torus_slopes(x)]}
    try:
        x = cb.periodic_extension(a, args.period, max_nodes=args.max_nodes)
    except cb.ExtensionNotFound as e:
        raise InputError(str(e)) from None
    K = x.lattice.basis[0][0]
    grid = np.zeros((K,) * a.ndim, dtype=np.int64)
    for c, v in x.as_dict().items():
        grid[c] = v
    print(format_grid(grid), file=sys.stderr)
    return {"period": K, "coloring": format_grid(grid)}


def cmd_dyck(args):
    N = args.n_brackets
    if N < 1:
        raise InputError("--n-brackets must be >= 1")
    if args.action == "count":
        if args.period is None:
            raise InputError("dyck count needs --period")
        n = args.period
        if args.excess is not None:
            c = dyck.periodic_count_closed_form(N, n, args.excess)
            out = {"N": N, "period": n, "excess": args.excess, "count": _s(c)}
            if args.oracle:
                o = dyck.periodic_count_oracle(N, n, args.excess, jobs=args.jobs,
                                               max_nodes=args.max_nodes)
                out["oracle"] = _s(o)
        else:
            by = {j: dyck.periodic_count_closed_form(N, n, j) for j in range(-n, n + 1, 2)}
            out = {"N": N, "period": n, "by_excess": {str(j): _s(v) for j, v in by.items()},
                   "count": _s(sum(by.values()))}
            if args.oracle:
                o = dyck.periodic_count_oracle(N, n, jobs=args.jobs, max_nodes=args.max_nodes)
                out["oracle"] = {str(j): _s(v) for j, v in o.items()}
        print(out["count"], file=sys.stderr)
        return out
    if args.action == "cylinder":
        if not args.word:
            raise InputError("dyck cylinder needs --word")
        w = dyck.parse_word(args.word)
        m = dyck.mu_cylinder(N, w, args.side)
        ub, ua = dyck.unmatched_counts(w)
        out = {"N": N, "word": dyck.format_word(w), "side": args.side, "measure": _s(m),
               "unmatched": {"beta": ub, "alpha": ua}}
        if w and dyck.is_periodic_admissible(w):
            hp, hm = dyck.local_entropy(N, w)
            out["local_entropy"] = {"plus": str(hp), "minus": str(hm),
                                    "plus_value": float(hp), "minus_value": float(hm)}
        print(out["measure"], file=sys.stderr)
        return out
    if args.action == "certify":
        rep = dyck.dyck_prime_certificate(N, args.kmax, max_nodes=args.max_nodes)
        print("certified" if rep["certified"] else "NOT certified", file=sys.stderr)
        big = ("top_counts", "balanced_counts")
        out = {k: ([_s(v) for v in rep[k]] if k in big else rep[k]) for k in rep}
        for r in out["rejected_by_graded_counts"] + out["survivors"]:
            r["y"], r["z"] = [_s(v) for v in r["y"]], [_s(v) for v in r["z"]]
        return out
    w = dyck.sample_mu_plus(N, args.length, args.seed)
    print(dyck.format_word(w), file=sys.stderr)
    return {"N": N, "length": args.length, "seed": args.seed, "word": dyck.format_word(w)}


# Census of F_5[x]/(x^2+1) as sometimes quoted; it cannot hold for 25 elements.
_QUOTED_CENSUS = {(5, (1, 0, 1)): {1: 1, 4: 10}}


def _census_notes(module, census):
    quoted = _QUOTED_CENSUS.get((module.p, module.f))
    if quoted is None:
        return []
    size = sum(k * v for k, v in quoted.items())
    return [f"{module}: a census of {quoted} is sometimes quoted, but it accounts for "
            f"{size} elements while the module has {module.order}; computed {census}"]


def cmd_rotations(args):
    if args.action == "census":
        moduli = parse_group(args.group)
        kind = args.action_kind
        if kind is None:
            # Zm^n is read as a full shift over Z/n unless told otherwise
            kind = "shift" if "^" in args.group else "translate"
        if kind == "shift":
            if len(set(moduli)) != 1:
                raise InputError("the coordinate shift needs a group of the form Zm^n")
            k = 1
            if args.step:
                step = parse_vector(args.step)
                if len(step) not in (1, len(moduli)) or len(set(step)) != 1:
                    raise InputError("a shift step is one integer k (or k repeated per coordinate)")
                k = step[0]
            system = rot.CoordinateShift(moduli[0], len(moduli), k)
        else:
            step = parse_vector(args.step) if args.step else (1,) * len(moduli)
            if len(step) != len(moduli):
                raise InputError("step and group have different lengths")
            system = rot.FiniteRotation(tuple(moduli), step)
        c = rot.orbit_census(system, jobs=args.jobs, max_nodes=args.max_nodes)
        print(c, file=sys.stderr)
        return {"group": args.group, "action": kind, "census": c.to_json(),
                "order": _s(c.order)}
    if args.action == "decompose":
        dec = rot.module_decompose(args.p, args.n, max_nodes=args.max_nodes)
        summ = [{"module": str(s["module"]), "multiplicity": s["multiplicity"],
                 "census": s["census"].to_json()} for s in dec["summands"]]
        notes = []
        out = {"p": args.p, "n": args.n,
               "factors": [{"factor": format_poly(g), "multiplicity": e}
                           for g, e in dec["factors"]],
               "summands": summ, "census": dec["census"].to_json(),
               "repeated_factors": dec["repeated_factors"]}
        if args.coarse:
            parts = rot.split_module(args.p, args.n, rot.coarse_split(args.p, args.n, args.coarse),
                                     max_nodes=args.max_nodes)
            out["coarse"] = [{"module": str(M), "census": c.to_json()} for M, c in parts]
            for M, c in parts:
                notes += _census_notes(M, c)
        for s in dec["summands"]:
            notes += _census_notes(s["module"], s["census"])
        out["notes"] = notes
        print(dec["census"], file=sys.stderr)
        for n in notes:
            print("note:", n, file=sys.stderr)
        return out
    primes = parse_vector(args.primes)
    facs = rot.rotation_factorizations(primes)
    for f in facs:
        print(" x ".join("Z" + "xZ".join(map(str, r.moduli)) for r in f), file=sys.stderr)
    return {"primes": sorted(primes), "count": len(facs),
            "factorizations": [[list(r.moduli) for r in f] for f in facs]}


def cmd_verify(args):
    res = run_suite(args.suite)
    for r in res:
        mark = "PASS" if r["passed"] else "FAIL"
        print(f"{mark}  {r['suite']:<11} {r['check']:<32} {r['seconds']:>7.3f}s  {r['detail']}",
              file=sys.stderr)
    return {"suite": args.suite, "passed": all(r["passed"] for r in res), "checks": res}


# -- argument parser ---------------------------------------------------------------

def _env_budget():
    v = os.environ.get("SHIFTLAB_MAX_NODES")
    if v is None:
        return DEFAULT_MAX_NODES
    try:
        return int(v)
    except ValueError:
        raise InputError(f"SHIFTLAB_MAX_NODES must be an integer, got {v!r}") from None


class _Parser(argparse.ArgumentParser):
    # usage mistakes are input errors (exit 1); exit 2 is reserved for budgets
    def error(self, message):
        sub = self.prog.partition(" ")[2]
        raise InputError(f"{sub}: {message}" if sub else message)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--max-nodes", type=int, default=None,
                        help="search node budget (default: $SHIFTLAB_MAX_NODES or 5000000)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = _Parser(prog="shiftlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def system_args(sp):
        sp.add_argument("--system", help="full(n,d), chessboard(d), goldenmean or dyck(N)")
        sp.add_argument("--spec", help="SFT spec file")

    sp = sub.add_parser("count", parents=[common], help="count periodic points")
    system_args(sp)
    sp.add_argument("--index", type=int, help="every sublattice of this index")
    sp.add_argument("--period", type=int, help="the lattice nZ^d")
    sp.add_argument("--lattice", help="generators, e.g. '2,1;0,3'")
    sp.add_argument("--enumerate", action="store_true", help="also list the points")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("equiv", parents=[common], help="compare periodic-point counts")
    system_args(sp)
    sp.add_argument("--other")
    sp.add_argument("--other-spec")
    sp.add_argument("--horizon", type=int, default=4)
    sp.set_defaults(func=cmd_equiv)

    sp = sub.add_parser("entropy", parents=[common], help="box-count entropy estimates")
    system_args(sp)
    sp.add_argument("--radius", type=int, default=3)
    sp.add_argument("--min-radius", type=int, default=0)
    sp.set_defaults(func=cmd_entropy)

    sp = sub.add_parser("zeta", parents=[common], help="zeta series of a 1-D SFT")
    system_args(sp)
    sp.add_argument("--order", type=int, default=8)
    sp.set_defaults(func=cmd_zeta)

    sp = sub.add_parser("perron", parents=[common], help="Perron numbers")
    sp.add_argument("action", choices=["root", "factor", "check"])
    sp.add_argument("--matrix", help="rows like '1,1;1,0'")
    sp.add_argument("--precision", default="1e-12")
    sp.add_argument("--poly", help="e.g. 'x^2-x-1'")
    sp.add_argument("--root", help="root selector: a number or 'lo,hi' (default: largest)")
    sp.add_argument("--max-degree", type=int, default=2)
    sp.add_argument("--max-height", type=int, default=20)
    sp.set_defaults(func=cmd_perron)

    sp = sub.add_parser("certify-prime", parents=[common],
                        help="search factor pairs of a periodic count sequence")
    sp.add_argument("--counts", help="JSON list or {period: count} object")
    system_args(sp)
    sp.add_argument("--horizon", type=int, default=8)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("chessboard", parents=[common], help="3-colored chessboard tools")
    sp.add_argument("action", choices=["lift", "cocycle", "maxslope", "extend"])
    sp.add_argument("--grid", help="digit grid file, or - for stdin")
    sp.add_argument("--base", type=int, help="height at the first cell")
    sp.add_argument("--n", default="0,0", help="displacement for cocycle")
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--lattice", help="period lattice for maxslope")
    sp.add_argument("--period", type=int, help="torus side for extend")
    sp.set_defaults(func=cmd_chessboard)

    sp = sub.add_parser("dyck", parents=[common], help="Dyck shift tools")
    sp.add_argument("action", choices=["count", "cylinder", "certify", "sample"])
    sp.add_argument("--n-brackets", type=int, default=2)
    sp.add_argument("--period", type=int)
    sp.add_argument("--excess", type=int)
    sp.add_argument("--oracle", action="store_true", help="also enumerate words")
    sp.add_argument("--word")
    sp.add_argument("--side", choices=["plus", "minus"], default="plus")
    sp.add_argument("--kmax", type=int, default=3)
    sp.add_argument("--length", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_dyck)

    sp = sub.add_parser("rotations", parents=[common], help="finite rotations")
    sp.add_argument("action", choices=["census", "decompose", "factorize"])
    sp.add_argument("--group", default="Z5^4")
    sp.add_argument("--step")
    sp.add_argument("--action", dest="action_kind", choices=["translate", "shift"],
                    default=None,
                    help="translate by --step, or shift coordinates by --step places "
                         "(default: shift for Zm^n, translate otherwise)")
    sp.add_argument("--p", type=int, default=5)
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--coarse", type=int, help="also split off x^d - 1")
    sp.add_argument("--primes", default="2,3,5")
    sp.set_defaults(func=cmd_rotations)

    sp = sub.add_parser("verify", parents=[common], help="run invariant suites")
    sp.add_argument("suite", nargs="?", default="all",
                    choices=["all", "sft", "zeta", "chessboard", "dyck", "rotations"])
    sp.set_defaults(func=cmd_verify)
    return p


def run(argv=None):
    """Parse, execute and return ``(report, exit_code)``."""
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except InputError as e:
        return {"command": argv[0] if argv else None, "argv": argv,
                "error": {"kind": "input", "message": str(e)}, "timing": {"seconds": 0.0}}, 1
    report = {"command": args.command, "argv": argv}
    t = time.perf_counter()
    try:
        if args.max_nodes is None:
            args.max_nodes = _env_budget()
        result = args.func(args)
        code = 1 if args.command == "verify" and not result["passed"] else 0
        report["result"] = result
    except BudgetExceeded as e:
        report["error"] = {"kind": "budget", "message": str(e), "bound": e.bound}
        code = 2
    except (InputError, ReducibleError, ValueError, OSError, KeyError) as e:
        report["error"] = {"kind": "input", "message": str(e)}
        code = 1
    report["timing"] = {"seconds": round(time.perf_counter() - t, 6)}
    return report, code


def main(argv=None):
    report, code = run(argv)
    if "error" in report:
        print(f"shiftlab: {report['error']['message']}", file=sys.stderr)
    json.dump(report, sys.stdout, indent=2, default=str)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
