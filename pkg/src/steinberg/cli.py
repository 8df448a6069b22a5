"""
Command-line front end.

    steinberg building --q 2 --n 3 --model tits
    steinberg symbol eval --q 2 --n 2 --g "1,0;0,1"
    steinberg symbol check-relations --q 3 --n 2 --trials 100 --seed 7
    steinberg d1 apply --q 2 --n 2 --g "1,0;0,1"
    steinberg d1 square-zero --q 2 --n 3 --trials 25 --seed 1
    steinberg e1 coinvariants --q 2 --n 2
    steinberg compare --q 2 --n 3 --trials 20

Reports are JSON with sorted keys and a top-level "schema" field, so the
same arguments always produce the same bytes.  Exit status: 0 when the
report has no failures, 2 for bad parameters or exceeded caps, 3 for
unparsable input, 4 when a consistency check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import building, gfgeom as gf, rankdiff, scx, symbols
from .errors import CapExceeded, DimMismatch, ParseError, SteinbergError, ZeroGenerator
from .rng import SplitMix64

SCHEMA = "1"
EXIT_OK, EXIT_PARAM, EXIT_PARSE, EXIT_FAIL = 0, 2, 3, 4
VERTEX_LIMIT = 2000
DEFAULT_SEED = 0
MODELS = ("tits", "sigma_tits", "estar", "BJ", "J1", "J2", "X", "XL")


class UsageError(Exception):
    """Bad parameters: reported with exit status 2."""


# ---------------------------------------------------------------------------
# argument handling

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _common(suppress: bool) -> argparse.ArgumentParser:
    # the same flags are accepted before and after the subcommand; the
    # subcommand copy uses SUPPRESS so it only overrides when given
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--q", type=int, default=d(2), help="field size (a prime)")
    p.add_argument("--n", type=int, default=d(2), help="dimension of V")
    p.add_argument("--seed", type=_seed, default=d(DEFAULT_SEED), help="64-bit seed for random trials")
    p.add_argument("--trials", type=int, default=d(10), help="number of random trials")
    p.add_argument("--out", choices=("json", "text"), default=d("json"), help="report format")
    p.add_argument("--max-degree", type=int, default=d(None), dest="max_degree",
                   help="highest homology degree to report")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="steinberg", parents=[_common(False)],
                                     description="Tits buildings, Steinberg modules and the rank differential over F_q.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(True)

    b = sub.add_parser("building", parents=[common], help="homology of a building model")
    b.add_argument("--model", choices=MODELS, default="tits")
    b.add_argument("--line", help='spanning vector of the line for the XL model, e.g. "1,0"')
    b.set_defaults(func=cmd_building)

    s = sub.add_parser("symbol", parents=[common], help="modular and extended symbols")
    s.add_argument("action", choices=("eval", "check-relations", "compare"))
    s.add_argument("--g", help='generators, e.g. "1,0;0,1"')
    s.set_defaults(func=cmd_symbol)

    d = sub.add_parser("d1", parents=[common], help="the differential on coefficients")
    d.add_argument("action", choices=("apply", "square-zero", "oracle-check"))
    d.add_argument("--g", help='generators, e.g. "1,0;0,1"')
    d.set_defaults(func=cmd_d1)

    e = sub.add_parser("e1", parents=[common], help="coinvariants of the Steinberg module")
    e.add_argument("action", choices=("coinvariants",), nargs="?", default="coinvariants")
    e.add_argument("--full-group", action="store_true", help="use every group element, not generators")
    e.set_defaults(func=cmd_e1)

    c = sub.add_parser("compare", parents=[common], help="extended symbols versus the Tits building")
    c.add_argument("--g", help="a single basis to compare; random bases otherwise")
    c.set_defaults(func=cmd_compare)
    return parser


def _check_params(args) -> None:
    if not gf.is_prime(args.q):
        raise UsageError("q must be prime")
    if args.n < 1:
        raise UsageError("n must be at least 1")
    if args.trials < 0:
        raise UsageError("trials must be non-negative")
    if args.max_degree is not None and args.max_degree < 0:
        raise UsageError("max-degree must be non-negative")


def _gens(args, required: bool = True) -> Optional[List[gf.Vec]]:
    if args.g is None:
        if required:
            raise ParseError("--g is required")
        return None
    gens = gf.parse_vectors(args.g, args.q, args.n)
    if len(gens) != args.n:
        raise ParseError(f"expected {args.n} generators, got {len(gens)}")
    return gens


def _random_basis(rng: SplitMix64, q: int, n: int) -> List[gf.Vec]:
    while True:
        g = rng.vectors(q, n, n)
        if gf.independent(q, g):
            return g


def _bases(args) -> List[List[gf.Vec]]:
    rng = SplitMix64(args.seed)
    return [_random_basis(rng, args.q, args.n) for _ in range(args.trials)]


def _basis_source(args) -> List[List[gf.Vec]]:
    g = _gens(args, required=False)
    return [g] if g is not None else _bases(args)


# ---------------------------------------------------------------------------
# subcommands; each returns a report dict with an "ok" field

def _line(args) -> gf.Subspace:
    if args.line is None:
        return gf.enumerate_subspaces(args.q, args.n, 1)[0]
    v = gf.parse_vector(args.line, args.q, args.n)
    if gf.is_zero(v):
        raise UsageError("the line needs a nonzero vector")
    return gf.line(args.q, v)


def _model(q: int, n: int, name: str, args=None):
    if name == "X":
        return building.model_X(q, n), n - 1
    if name == "XL":
        return building.model_XL(q, n, _line(args)), n - 1
    if name == "tits":
        return building.tits(q, n), max(n - 2, 0)
    if name == "sigma_tits":
        return building.sigma_tits(q, n), n - 1
    if name == "estar":
        return scx.estar_complex(q, n), n - 1
    if name == "BJ":
        P = gf.layer_poset(q, n)
    elif name == "J1":
        P = building.subposet_J1(q, n)
    else:
        P = building.subposet_J2(q, n)
    return building.layer_order_complex(P, name), n - 1


def _vertex_estimate(q: int, n: int, model: str) -> int:
    subspaces = sum(gf.gaussian_binomial(q, n, k) for k in range(n + 1))
    if model == "estar":
        return q ** n
    if model in ("X", "XL"):
        # subdivision of a complex on q^n vertices
        return 2 ** (q ** n)
    if model in ("tits", "sigma_tits"):
        return subspaces
    # layers: pairs of nested subspaces, bounded by subspaces squared
    return subspaces * subspaces


def cmd_building(args) -> dict:
    if _vertex_estimate(args.q, args.n, args.model) > VERTEX_LIMIT:
        raise UsageError(f"{args.model} over F_{args.q}^{args.n} exceeds the vertex cap {VERTEX_LIMIT}")
    if args.model in ("tits", "X", "XL") and args.n < 2:
        raise UsageError(f"the {args.model} model needs n >= 2")
    C, top = _model(args.q, args.n, args.model, args)
    if args.max_degree is not None:
        top = min(top, args.max_degree)
    return {"model": args.model, "vertices": C.nverts, "reduced": True,
            "homology": building.homology_report(C, top, reduced=True), "ok": True}


def cmd_symbol(args) -> dict:
    q, n = args.q, args.n
    if args.action == "eval":
        g = _gens(args)
        ext = symbols.ExtendedSymbol(q, n, g)
        out = {"generators": ext.to_json(), "extended": list(symbols.extended_symbol_class(ext)), "ok": True}
        out["coords"] = out["extended"]
        if n >= 2:
            out["modular"] = list(symbols.modular_symbol_class(symbols.ModularSymbol(q, n, g)))
            out["coords"] = out["modular"]
        out["zero"] = not any(out["coords"])
        return out
    if args.action == "check-relations":
        rep = symbols.check_relations(q, n, args.trials, args.seed)
        return {k: rep[k] for k in ("relations", "trials", "seed", "consequences_consistent", "ok")}
    return cmd_compare(args)


def cmd_compare(args) -> dict:
    q, n = args.q, args.n
    if n < 2:
        raise UsageError("the comparison needs n >= 2")
    bases = _basis_source(args)
    agree = sum(symbols.compare_agrees(symbols.ExtendedSymbol(q, n, g)) for g in bases)
    iso = symbols.mv_comparison_is_iso(q, n)
    return {"sign": symbols.comparison_sign(q, n), "mv_isomorphism": iso,
            "bases": len(bases), "agree": agree, "ok": iso and agree == len(bases)}


def _random_symbols(args) -> List[List[gf.Vec]]:
    g = _gens(args, required=False)
    if g is not None:
        return [g]
    rng = SplitMix64(args.seed)
    return [rng.vectors(args.q, args.n, args.n) for _ in range(args.trials)]


def cmd_d1(args) -> dict:
    q, n = args.q, args.n
    if n < 2:
        raise UsageError("d1 needs n >= 2")
    if args.action == "apply":
        s = symbols.ExtendedSymbol(q, n, _gens(args))
        out = rankdiff.d1_coeff(s).to_json()
        out["ok"] = True
        return out
    if args.action == "square-zero":
        if n < 3:
            raise UsageError("square-zero needs n >= 3")
        g = _gens(args, required=False)
        bases = [g] if g is not None else _bases(args)
        checks = [rankdiff.d1_square_check(symbols.ExtendedSymbol(q, n, b)) for b in bases]
        passed = sum(c["ok"] for c in checks)
        return {"trials": len(bases), "passed": passed, "verdict": "PASS" if passed == len(bases) else "FAIL",
                "ok": passed == len(bases)}
    mono = epi = 0
    samples = _random_symbols(args)
    for g in samples:
        s = symbols.ExtendedSymbol(q, n, g)
        mono += rankdiff.mono_oracle_check(s)
        epi += rankdiff.epi_oracle_check(s)
    k = len(samples)
    return {"trials": k, "mono_agree": mono, "epi_agree": epi, "ok": mono == k and epi == k}


def cmd_e1(args) -> dict:
    if args.n > 3 or args.q > 3:
        raise UsageError("e1 coinvariants is limited to n <= 3 and q <= 3")
    res = rankdiff.e1_coinvariants(args.q, args.n, full_group=args.full_group)
    out = res.to_json()
    out["generators"] = "full_group" if args.full_group else "elementary"
    out["ok"] = True
    return out


# ---------------------------------------------------------------------------

def _text(report: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for k in sorted(report):
        v = report[k]
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        else:
            lines.append(f"{pad}{k}: {json.dumps(v, sort_keys=True)}")
    return "\n".join(lines)


def render(report: dict, fmt: str) -> str:
    if fmt == "text":
        return _text(report)
    return json.dumps(report, sort_keys=True, indent=2)


def run(argv: Optional[Sequence[str]] = None) -> tuple:
    """Parse and execute; returns (exit status, output text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        return EXIT_PARAM, render({"schema": SCHEMA, "error": str(e), "ok": False}, "json")
    base = {"schema": SCHEMA, "command": args.command, "q": args.q, "n": args.n}
    try:
        _check_params(args)
        report = args.func(args)
    except UsageError as e:
        return EXIT_PARAM, render(dict(base, error=str(e), ok=False), args.out)
    except ParseError as e:
        return EXIT_PARSE, render(dict(base, error=str(e), ok=False), args.out)
    except (CapExceeded, ZeroGenerator, DimMismatch) as e:
        return EXIT_PARAM, render(dict(base, error=str(e), ok=False), args.out)
    except SteinbergError as e:
        return EXIT_FAIL, render(dict(base, error=f"{type(e).__name__}: {e}", ok=False), args.out)
    report = dict(base, **report)
    return (EXIT_OK if report["ok"] else EXIT_FAIL), render(report, args.out)


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, text = run(argv)
    stream = sys.stdout if code in (EXIT_OK, EXIT_FAIL) else sys.stderr
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
