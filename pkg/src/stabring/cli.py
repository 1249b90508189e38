"""Command-line front end: ``stabring analyze|verify|hilbert|polytope``.

Exit codes: 0 success, 2 bad input or flags, 3 verdict withheld or a size
guard hit, 4 classifier and oracle disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .classify import h_perfect_status, classify
from .exceptions import GraphFormatError, UndecidedError
from .graph import Graph, read_graph
from .lattice import VariantSystem, hilbert_function, omega_sizes
from .oracle import Budget, cross_check
from .polytope import Variant, build_polytope, enumerate_vertices

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_WITHHELD = 3
EXIT_DISAGREE = 4

GRAPH_SUFFIXES = (".txt", ".json", ".edges")


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[Path, ...]
    variants: tuple[Variant, ...]
    fmt: str = "text"
    output: Path | None = None
    assume_h_perfect: bool = False
    max_degree: int | None = None
    window: tuple[int, int] | None = None
    seed: int = 0
    degree: int = 5
    figure: Path | None = None
    hrep: bool = False


class UsageError(Exception):
    pass


def _parse_window(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"--window expects a..b, got {text!r}") from None
    if not sep or a < 1 or b < a:
        raise UsageError(f"--window needs 1 <= a <= b, got {text!r}")
    return a, b


def _variants(name: str) -> tuple[Variant, ...]:
    if name == "all":
        return tuple(Variant)
    return (Variant.parse(name),)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stabring", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, fmts=("text", "json")) -> None:
        p.add_argument("input", nargs="?", help="graph file (edge list or JSON)")
        p.add_argument("--dir", help="run on every graph file in a directory")
        p.add_argument("--variant", default="hstab", choices=["hstab", "qstab", "tstab", "all"])
        p.add_argument("--format", dest="fmt", default="text", choices=fmts)
        p.add_argument("--output", help="write the report here instead of stdout")

    p = sub.add_parser("analyze", help="classify with the combinatorial criteria")
    common(p)
    p.add_argument("--assume-h-perfect", action="store_true")

    p = sub.add_parser("verify", help="cross-check the classifier against the oracles")
    common(p)
    p.add_argument("--assume-h-perfect", action="store_true")
    p.add_argument("--max-degree", type=int, help="generator degree bound (default: number of vertices)")
    p.add_argument("--window", help="degree window a..b for the bounded GPS check")
    p.add_argument("--seed", type=int, default=0, help="seed for sampling large slices")

    p = sub.add_parser("hilbert", help="tabulate ring and canonical-ideal slice sizes")
    common(p, ("text", "csv", "json"))
    p.add_argument("-n", dest="degree", type=int, default=5, help="largest degree")
    p.add_argument("--figure", help="also save a plot of the table (PNG, SVG, PDF)")

    p = sub.add_parser("polytope", help="list polytope vertices")
    common(p)
    p.add_argument("--hrep", action="store_true", help="print the inequality description instead")
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    """Validate flags before any computation."""
    if bool(args.input) == bool(args.dir):
        raise UsageError("give exactly one of an input file or --dir")
    if args.dir:
        d = Path(args.dir)
        if not d.is_dir():
            raise UsageError(f"--dir {d} is not a directory")
        inputs = tuple(sorted(p for p in d.iterdir() if p.suffix in GRAPH_SUFFIXES))
        if not inputs:
            raise UsageError(f"no graph files in {d}")
    else:
        inputs = (Path(args.input),)
    max_degree = getattr(args, "max_degree", None)
    if max_degree is not None and max_degree < 1:
        raise UsageError("--max-degree must be at least 1")
    window = _parse_window(args.window) if getattr(args, "window", None) else None
    degree = getattr(args, "degree", 5)
    if degree < 0:
        raise UsageError("-n must be non-negative")
    figure = getattr(args, "figure", None)
    if figure and len(inputs) > 1:
        raise UsageError("--figure needs a single input")
    return RunConfig(
        command=args.command,
        inputs=inputs,
        variants=_variants(args.variant),
        fmt=args.fmt,
        output=Path(args.output) if args.output else None,
        assume_h_perfect=getattr(args, "assume_h_perfect", False),
        max_degree=max_degree,
        window=window,
        seed=getattr(args, "seed", 0),
        degree=degree,
        figure=Path(figure) if figure else None,
        hrep=getattr(args, "hrep", False),
    )


# ------------------------------------------------------------------ commands


def _graph_json(path: Path, g: Graph) -> dict:
    return {"source": path.name, "n": g.n, "m": g.m}


def cmd_analyze(cfg: RunConfig, path: Path, g: Graph) -> tuple[int, dict, list[str]]:
    h = h_perfect_status(g, assume=cfg.assume_h_perfect)
    reports = [classify(g, v, h) for v in cfg.variants]
    lines = [f"graph {path.name}: n={g.n} m={g.m} hPerfect={h.status.value}"]
    for r in reports:
        j = r.to_json()
        lines.append(f"[{r.variant.value}]")
        lines.append(f"  gorenstein: {_txt(j['gorenstein']['value'])}")
        if j["gorenstein"]["witness"]:
            lines.append(f"  witness: {json.dumps(j['gorenstein']['witness'], sort_keys=True)}")
        lines.append(f"  gps: {_txt(j['gps']['value'])} ({j['gps']['note']})")
        lines.append(f"  nearly: {_txt(j['nearly']['value'])}")
        lines.append(f"  spectrum: I={j['spectrum']['I']} u={j['spectrum']['u']}")
    withheld = any(r.withheld for r in reports)
    if withheld:
        lines.append(f"verdicts withheld: h-perfectness is {h.status.value}; pass --assume-h-perfect to override")
    doc = {"graph": _graph_json(path, g), "reports": [r.to_json() for r in reports]}
    return (EXIT_WITHHELD if withheld else EXIT_OK), doc, lines


def cmd_verify(cfg: RunConfig, path: Path, g: Graph) -> tuple[int, dict, list[str]]:
    h = h_perfect_status(g, assume=cfg.assume_h_perfect)
    budget = Budget(max_degree=cfg.max_degree, window=cfg.window, seed=cfg.seed)
    reports = [cross_check(g, v, budget, h) for v in cfg.variants]
    lines = [f"graph {path.name}: n={g.n} m={g.m} hPerfect={h.status.value}"]
    code = EXIT_OK
    for r in reports:
        lines.append(f"[{r.variant.value}]")
        for c in r.claims:
            mark = {True: "agree", False: "DISAGREE", None: "n/a"}[c.agree]
            lines.append(f"  {c.name}: classifier={_txt(c.classifier)} oracle={_txt(c.oracle)} -> {mark}")
        if not r.ok:
            code = EXIT_DISAGREE
            first = r.disagreements[0]
            lines.append(f"  first disagreement: {first.name} {json.dumps(first.detail, sort_keys=True)}")
    doc = {"graph": _graph_json(path, g), "reports": [r.to_json() for r in reports]}
    return code, doc, lines


def cmd_hilbert(cfg: RunConfig, path: Path, g: Graph) -> tuple[int, dict, list[str]]:
    tables = {}
    for v in cfg.variants:
        sys_ = VariantSystem.of(g, v)
        tables[v.value] = {"hilbert": hilbert_function(sys_, cfg.degree), "omega": omega_sizes(sys_, cfg.degree)}
    sep = "," if cfg.fmt == "csv" else "\t"
    lines = [sep.join(["variant", "N", "H", "omega"])]
    for name, t in tables.items():
        for N, (h, w) in enumerate(zip(t["hilbert"], t["omega"])):
            lines.append(sep.join([name, str(N), str(h), str(w)]))
    if cfg.figure is not None:
        from .plotting import hilbert_figure

        first = next(iter(tables))
        hilbert_figure(tables[first]["hilbert"], tables[first]["omega"], f"{path.stem} ({first})", cfg.figure)
    doc = {"graph": _graph_json(path, g), "maxDegree": cfg.degree, "tables": tables}
    return EXIT_OK, doc, lines


def cmd_polytope(cfg: RunConfig, path: Path, g: Graph) -> tuple[int, dict, list[str]]:
    doc: dict = {"graph": _graph_json(path, g), "polytopes": {}}
    lines: list[str] = []
    for v in cfg.variants:
        p = build_polytope(g, v)
        if cfg.hrep:
            doc["polytopes"][v.value] = {"inequalities": p.to_text().splitlines()}
            lines.append(f"[{v.value}]")
            lines.extend(p.to_text().splitlines())
            continue
        vs = enumerate_vertices(p)
        entries = [
            {"vertex": [str(x) for x in vert], "integral": all(x.denominator == 1 for x in vert)}
            for vert in vs.vertices
        ]
        n_frac = sum(not e["integral"] for e in entries)
        doc["polytopes"][v.value] = {
            "vertices": entries,
            "integralCount": len(entries) - n_frac,
            "fractionalCount": n_frac,
        }
        lines.append(f"[{v.value}] {len(entries) - n_frac} integral, {n_frac} fractional")
        for e in entries:
            lines.append(("  " if e["integral"] else "* ") + " ".join(e["vertex"]))
    return EXIT_OK, doc, lines


COMMANDS = {"analyze": cmd_analyze, "verify": cmd_verify, "hilbert": cmd_hilbert, "polytope": cmd_polytope}


def _txt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    return str(value)


def run(cfg: RunConfig) -> tuple[int, str]:
    code = EXIT_OK
    docs, text = [], []
    for path in cfg.inputs:
        g = read_graph(path)
        c, doc, lines = COMMANDS[cfg.command](cfg, path, g)
        code = max(code, c)
        docs.append(doc)
        text.extend(lines)
    if cfg.fmt == "json":
        body = {"schemaVersion": SCHEMA_VERSION, "command": cfg.command, "results": docs}
        out = json.dumps(body, indent=2, sort_keys=True) + "\n"
    else:
        out = "\n".join(text) + "\n"
    return code, out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
        code, out = run(cfg)
    except UsageError as exc:
        print(f"stabring: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphFormatError, OSError) as exc:
        print(f"stabring: input error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UndecidedError as exc:
        print(f"stabring: undecided: {exc}", file=sys.stderr)
        return EXIT_WITHHELD
    if cfg.output is not None:
        cfg.output.write_text(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
