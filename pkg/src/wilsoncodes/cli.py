"""Command-line entry point: ``wilsoncodes <subcommand> ...``.

Exit status is 0 on success, 1 when a computation rejects its parameters
(or a heuristic gives up) and 2 on usage errors.  Every subcommand accepts
``--config FILE`` with ``key = value`` lines; explicit flags win.  Runs that
write files also write a JSON manifest next to the first output (or to
``--manifest``) recording parameters, version, timestamps and sha256 digests.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__, designs, distance, qc, search
from .errors import DomainError, PurgeFailed
from .gf2 import min_nonzero_weight
from .io import format_matrix, from_alist, to_alist, write_atomic
from .simulate import ChannelConfig, DecoderConfig, records_to_csv, run_curve
from .sparse import SparseParity
from .wilson import build_wilson, code_dimension, wilson_rank

log = logging.getLogger("wilsoncodes")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class _Run:
    """Collects written files for the manifest."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.outputs: dict[str, str] = {}
        self.started = time.time()

    def write(self, path: str, data: str) -> None:
        self.outputs[str(path)] = write_atomic(path, data)
        log.info("wrote %s", path)

    def manifest(self) -> dict:
        params = {k: v for k, v in vars(self.args).items() if k not in ("func", "config", "manifest", "log_level")}
        return {
            "subcommand": self.args.command,
            "parameters": params,
            "seed": getattr(self.args, "seed", None),
            "version": __version__,
            "started": _iso(self.started),
            "finished": _iso(time.time()),
            "outputs": self.outputs,
        }

    def finish(self) -> None:
        target = self.args.manifest or (next(iter(self.outputs)) + ".manifest.json" if self.outputs else None)
        if target:
            write_atomic(target, json.dumps(self.manifest(), indent=2, sort_keys=True, default=str) + "\n")


def _iso(t: float) -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(t))


# -- subcommands ----------------------------------------------------------------------


CONSTRUCTIONS = ("subsets", "doubling", "pasch", "hadamard", "pair", "triangle")


def _need(args, *names: str) -> None:
    """Required flags are checked after the config file has been merged in."""
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command}: missing {', '.join(missing)}")


def cmd_wilson(args, run: _Run) -> None:
    _need(args, "t", "n", "k")
    t, n, k = args.t, args.n, args.k
    if args.action == "rank":
        print(f"rank {wilson_rank(t, n, k)}")
        print(f"dimension {code_dimension(t, n, k)}")
    elif args.action == "build":
        W = build_wilson(t, n, k)
        text = format_matrix(W, [f"W_(t={t},n={n},k={k}) rows={W.nrows} cols={W.ncols}"])
        if args.out:
            run.write(args.out, text)
        else:
            sys.stdout.write(text)
    else:
        found = min_nonzero_weight(build_wilson(t, n, k))
        print("distance none (trivial code)" if found is None else f"distance {found[0]}")


def cmd_designs(args, run: _Run) -> None:
    if args.action == "verify":
        args.file = args.file or args.target
        _need(args, "t", "file")
        D = designs.BinaryDesign.from_json(Path(args.file).read_text())
        ok = designs.is_binary_design(D, args.t)
        print(f"blocks {len(D)} n {D.n} k {D.k} binary {args.t}-design {'yes' if ok else 'no'}")
        return
    kind = args.target
    if kind not in CONSTRUCTIONS:
        raise UsageError(f"designs construct: choose one of {', '.join(CONSTRUCTIONS)}")
    _need(args, *{"subsets": ("t", "k"), "pasch": ("t", "k"), "pair": ("k",), "triangle": ("k",),
                  "hadamard": ("l",), "doubling": ("file",)}[kind])
    if kind == "subsets":
        D = designs.construct_subsets(args.t, args.k)
    elif kind == "pasch":
        D = designs.construct_pasch(args.t, args.k)
    elif kind == "pair":
        D = designs.construct_pair(args.k)
    elif kind == "hadamard":
        D = designs.construct_hadamard_stretch(args.l)
    elif kind == "doubling":
        D = designs.doubling(designs.BinaryDesign.from_json(Path(args.file).read_text()))
    else:
        D = designs.construct_triangle_stretch(args.k)
    text = json.dumps(D.to_dict()) + "\n"
    if args.out:
        run.write(args.out, text)
    else:
        sys.stdout.write(text)


def cmd_distance(args, run: _Run) -> None:
    if args.action == "table":
        _need(args, "t")
        row = distance.table1_row(args.t, range(2, args.kmax + 1))
        print("k    " + " ".join(f"{k:>7}" for k in range(2, args.kmax + 1)))
        print(f"t={args.t}  " + " ".join(f"{(f.cell() if f else '-'):>7}" for f in row))
        return
    _need(args, "t", "n", "k")
    f = distance.fact(args.t, args.n, args.k)
    print(f"lo {f.lo} [{', '.join(f.lo_provenance)}]")
    print(f"hi {f.hi if f.hi is not None else 'none'} [{', '.join(f.hi_provenance)}]")
    print(f"exact {f.lo if f.exact else 'unknown'}")
    if args.witness:
        D = distance.witness(args.t, args.n, args.k)
        if D is None:
            print("witness none")
        else:
            text = json.dumps(D.to_dict()) + "\n"
            if args.out:
                run.write(args.out, text)
            else:
                sys.stdout.write(text)


def cmd_search(args, run: _Run) -> None:
    _need(args, "nblocks")
    cfg = search.SearchConfig(args.nblocks, args.minweight, args.kmin, args.kmax, args.zmax)
    parts = []
    count = 0
    for hit in search.enumerate_reduced_matrices(cfg, jobs=args.jobs):
        count += 1
        header = [f"solution {count}: rows={hit.R.nrows} z={' '.join(map(str, hit.z))} k={hit.k}"]
        parts.append(format_matrix(hit.R, header))
    text = "\n".join(parts)
    if args.out:
        run.write(args.out, text)
    elif text:
        sys.stdout.write(text)
    print(f"nblocks {args.nblocks} solutions {count}")


def cmd_lift(args, run: _Run) -> None:
    if args.exp:
        E = qc.ExponentMatrix.from_json(Path(args.exp).read_text())
    else:
        if args.base_file:
            B = from_alist(Path(args.base_file).read_text())
        elif None not in (args.t, args.n, args.k):
            B = build_wilson(args.t, args.n, args.k)
        else:
            raise UsageError("lift: give --exp, --base-file or all of --t --n --k")
        if args.qc is None:
            raise UsageError("lift: --qc is required when purging")
        E = qc.purge_cycles(B, args.qc, args.forbid6, args.seed, max_restarts=args.restarts)
    cycles = qc.enumerate_cycles(E.base(), 6 if args.forbid6 else 4)
    bad = qc.violations(E, cycles)
    print(f"qc {E.qc} base {E.rows}x{E.cols} four-cycle violations {len(bad.four_cycles)}"
          + (f" six-cycle violations {len(bad.six_cycles)}" if args.forbid6 else ""))
    if args.out_exp:
        run.write(args.out_exp, E.to_json() + "\n")
    if args.out_alist:
        run.write(args.out_alist, to_alist(qc.lift(E)))
    if args.rank:
        print(f"lifted rank {qc.lift(E).rank()} of {E.rows * E.qc} rows")


def cmd_simulate(args, run: _Run) -> None:
    if bool(args.alist) == bool(args.exp):
        raise UsageError("simulate: give exactly one of --alist and --exp")
    if args.exp:
        H = SparseParity.from_exponent(qc.ExponentMatrix.from_json(Path(args.exp).read_text()))
    else:
        H = SparseParity.from_bitmatrix(from_alist(Path(args.alist).read_text()))
    dec = DecoderConfig(args.decoder, args.max_iter, args.alpha, args.variant, args.theta)
    chan = ChannelConfig(args.channel, args.rate)
    _need(args, "points")
    records = run_curve(H, dec, chan, args.points, args.frames, args.seed, args.codeword, args.jobs)
    text = records_to_csv(records)
    if args.out:
        run.write(args.out, text)
    else:
        sys.stdout.write(text)


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wilsoncodes", description="Codes and binary designs from Wilson inclusion matrices.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp):
        sp.add_argument("--config", help="key = value file; explicit flags take precedence")
        sp.add_argument("--manifest", help="manifest path (default: next to the first output)")
        sp.add_argument("--log-level", default="WARNING")

    w = sub.add_parser("wilson", help="inclusion matrices: rank, build, exact distance")
    w.add_argument("action", choices=["rank", "build", "mindist"])
    for name in ("t", "n", "k"):
        w.add_argument(f"--{name}", type=int)
    w.add_argument("--out")
    common(w)
    w.set_defaults(func=cmd_wilson)

    d = sub.add_parser("designs", help="construct or check binary designs")
    d.add_argument("action", choices=["construct", "verify"])
    d.add_argument("target", nargs="?", help="construction name for construct, design file for verify")
    d.add_argument("--t", type=int)
    d.add_argument("--k", type=int)
    d.add_argument("--l", type=int, default=1)
    d.add_argument("--file", help="design JSON (verify input, or the design to double)")
    d.add_argument("--out")
    common(d)
    d.set_defaults(func=cmd_designs)

    ds = sub.add_parser("distance", help="bounds on d_{t,n,k}, or a table row")
    ds.add_argument("action", nargs="?", choices=["fact", "table"], default="fact")
    ds.add_argument("--t", type=int)
    ds.add_argument("--n", type=int)
    ds.add_argument("--k", type=int)
    ds.add_argument("--kmax", type=int, default=13)
    ds.add_argument("--witness", action="store_true")
    ds.add_argument("--out")
    common(ds)
    ds.set_defaults(func=cmd_distance)

    s = sub.add_parser("search", help="enumerate reduced incidence matrices of 3-designs")
    s.add_argument("--nblocks", type=int)
    s.add_argument("--minweight", type=int, default=6)
    s.add_argument("--kmin", type=int, default=6)
    s.add_argument("--kmax", type=int, default=64)
    s.add_argument("--zmax", type=int, default=16)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    common(s)
    s.set_defaults(func=cmd_search)

    lf = sub.add_parser("lift", help="purge short cycles and lift to a quasi-cyclic code")
    lf.add_argument("--exp", help="existing exponent-matrix JSON")
    lf.add_argument("--base-file", help="base matrix in alist format")
    lf.add_argument("--t", type=int)
    lf.add_argument("--n", type=int)
    lf.add_argument("--k", type=int)
    lf.add_argument("--qc", type=int)
    lf.add_argument("--forbid6", action="store_true")
    lf.add_argument("--seed", type=int, default=0)
    lf.add_argument("--restarts", type=int, default=200)
    lf.add_argument("--rank", action="store_true", help="report the GF(2) rank of the lifted matrix")
    lf.add_argument("--out-exp")
    lf.add_argument("--out-alist")
    common(lf)
    lf.set_defaults(func=cmd_lift)

    sm = sub.add_parser("simulate", help="Monte-Carlo BER/FER curve")
    sm.add_argument("--alist")
    sm.add_argument("--exp")
    sm.add_argument("--decoder", choices=["gdbf", "minsum"], default="gdbf")
    sm.add_argument("--channel", choices=["bsc", "awgn"], default="bsc")
    sm.add_argument("--points", type=float, nargs="+")
    sm.add_argument("--frames", type=int, default=100)
    sm.add_argument("--seed", type=int, default=0)
    sm.add_argument("--jobs", type=int, default=1)
    sm.add_argument("--max-iter", type=int, default=30)
    sm.add_argument("--alpha", type=float, default=0.75)
    sm.add_argument("--variant", choices=["tied-min", "threshold"], default="tied-min")
    sm.add_argument("--theta", type=float)
    sm.add_argument("--rate", type=float)
    sm.add_argument("--codeword", choices=["zero", "random"], default="zero")
    sm.add_argument("--out")
    common(sm)
    sm.set_defaults(func=cmd_simulate)
    return p


def read_config(path: str) -> dict[str, str]:
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config {path}:{lineno}: expected key = value")
        key, value = (x.strip() for x in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _apply_config(parser: argparse.ArgumentParser, args: argparse.Namespace, argv: Sequence[str]) -> None:
    sp = parser._subparsers._group_actions[0].choices[args.command]
    actions = {a.dest: a for a in sp._actions}
    given = {a.dest for a in sp._actions for opt in a.option_strings for tok in argv
             if tok == opt or tok.startswith(opt + "=")}
    for key, raw in read_config(args.config).items():
        action = actions.get(key)
        if action is None or not action.option_strings:
            raise UsageError(f"config: unknown key {key!r} for {args.command}")
        if key in given:
            continue
        if isinstance(action, argparse._StoreTrueAction):
            value = raw.lower() in ("1", "true", "yes", "on")
        elif action.nargs in ("+", "*"):
            value = [action.type(x) if action.type else x for x in raw.replace(",", " ").split()]
        else:
            value = action.type(raw) if action.type else raw
        if action.choices is not None and value not in action.choices:
            raise UsageError(f"config: {key} must be one of {list(action.choices)}")
        setattr(args, key, value)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        if not argv:
            raise UsageError(parser.format_usage().strip())
        args, extra = parser.parse_known_args(argv)
        # argparse binds an optional positional before later flags, so
        # `designs verify --t 2 FILE` leaves FILE over; accept it as the target
        if args.command == "designs" and args.target is None and len(extra) == 1 and not extra[0].startswith("-"):
            args.target, extra = extra[0], []
        if extra:
            raise UsageError(f"wilsoncodes: unrecognized arguments: {' '.join(extra)}")
        if args.command is None:
            raise UsageError(parser.format_usage().strip())
        if args.config:
            _apply_config(parser, args, argv)
        logging.basicConfig(level=args.log_level.upper(), stream=sys.stderr,
                            format="%(levelname)s %(name)s: %(message)s")
        run = _Run(args)
        args.func(args, run)
        run.finish()
        return 0
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except (DomainError, PurgeFailed) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
