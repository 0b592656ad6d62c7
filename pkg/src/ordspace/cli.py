"""Command line entry point.

Exit status: 0 for success, a Yes/Unknown verdict or a passing certificate;
1 for a mathematical negative (No, failed certificate or check); 2 for usage,
syntax and class errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, Optional, Sequence, Tuple

import yaml

from . import constructions as C
from . import report as R
from .dsl import ParseError, parse, to_text
from .invariants import homeo_decide
from .space import SpaceError

DEFAULTS = {"depth": 5, "basis_max": 8, "format": "text"}
DEMO_IDS = ("convseq", "lgamma-square", "lgamma-rect", "lgamma-full", "decompose", "embed", "zlike")


class ConfigError(ValueError):
    pass


def load_config(path: str) -> Dict:
    """Read a YAML or JSON config file holding any of depth, basis_max, format."""
    try:
        with open(path) as fh:
            data = yaml.safe_load(fh) or {}
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError(f"cannot read config {path}: {e}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must be a mapping")
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key in ("depth", "basis_max"):
        if key in data and (not isinstance(data[key], int) or data[key] < 0):
            raise ConfigError(f"config key {key} must be a non-negative integer")
    if "format" in data and data["format"] not in ("text", "json"):
        raise ConfigError("config key format must be 'text' or 'json'")
    return data


def _global_flags() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the verb from being reset by the
    # subparser's copy; defaults are filled in by resolve().
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                   help="machine-readable output")
    g.add_argument("--depth", type=int, default=argparse.SUPPRESS,
                   help="exhaustion depth (certify: k); default 5")
    g.add_argument("--basis-max", dest="basis_max", type=int, default=argparse.SUPPRESS,
                   help="largest basis index checked (certify: n_max); default 8")
    g.add_argument("--config", default=argparse.SUPPRESS, help="YAML or JSON file of defaults")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = argparse.ArgumentParser(
        prog="ordspace", parents=[common],
        description="Explore countable ordered spaces, their invariants and explicit homeomorphisms.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def verb(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text, description=help_text)

    verb("parse", "parse an expression and print its canonical form").add_argument("expr")
    verb("invariants", "order type, compactness, discreteness and (rank, degree)").add_argument("expr")
    h = verb("homeo", "decide whether two spaces are homeomorphic")
    h.add_argument("left")
    h.add_argument("right")
    c = verb("certify", "check a named construction's bijection and continuity")
    c.add_argument("id", choices=sorted(C.CONSTRUCTIONS))
    c.add_argument("--corrupt", action="store_true",
                   help="swap the corner image with an isolated point (negative control)")
    verb("demo", "run a scripted scenario and print a narrative").add_argument("id", choices=DEMO_IDS)
    verb("decompose", "split a member of the L-class into pieces and a discrete rest").add_argument("expr")
    verb("embed", "embed a member of the L-class into L[w]").add_argument("expr")
    verb("enumerate", "list points up to the exhaustion depth with their CB ranks").add_argument("expr")
    verb("dot", "emit the CB decomposition tree as a DOT graph").add_argument("expr")
    return parser


def resolve(args: argparse.Namespace) -> Dict:
    """Merge built-in defaults, the config file and explicit flags, in that order."""
    opts = dict(DEFAULTS)
    if getattr(args, "config", None):
        opts.update(load_config(args.config))
    for key in ("depth", "basis_max"):
        if hasattr(args, key):
            opts[key] = getattr(args, key)
    if getattr(args, "json", False):
        opts["format"] = "json"
    return opts


def run(args: argparse.Namespace, opts: Dict) -> Tuple[object, str, int]:
    """Execute one command; returns (json payload, text report, exit code)."""
    depth, basis_max = opts["depth"], opts["basis_max"]
    cmd = args.command
    if cmd == "parse":
        X = parse(args.expr)
        text = to_text(X)
        return {"input": args.expr, "canonical": text, "ordered": X.ordered}, text, 0
    if cmd == "invariants":
        p = R.invariants_payload(parse(args.expr), depth)
        return p, R.invariants_text(p), 0
    if cmd == "homeo":
        v = homeo_decide(parse(args.left), parse(args.right), depth)
        return v.to_json(), R.homeo_text(v), 1 if v.verdict == "No" else 0
    if cmd == "certify":
        cert = R.run_certificate(args.id, depth, basis_max, args.corrupt)
        return cert.to_json(), R.certificate_text(cert), 0 if cert.passed else 1
    if cmd == "demo":
        text, ok = R.demo(args.id, depth, basis_max)
        return {"id": args.id, "pass": ok, "report": text}, text, 0 if ok else 1
    if cmd == "decompose":
        p = R.decompose_payload(parse(args.expr), depth)
        lines = [f"{len(p['pieces'])} pieces"]
        for pc in p["pieces"]:
            lines.append(f"  ({pc['beta_x'] or 'bottom'}, {pc['x']}]  type {pc['order_type']}")
        lines.append(f"  discrete rest: type {p['discrete_rest']['order_type']}")
        lines += [f"  ! {w}" for w in p["problems"]]
        return p, "\n".join(lines), 1 if p["problems"] else 0
    if cmd == "embed":
        p = R.embed_payload(parse(args.expr), depth)
        ok = p["injective"] and all(v["verdict"] == "Yes" for v in p["pieces"])
        lines = [f"{p['blocks']} blocks of L[w] used"]
        lines += [f"  {m['point']} -> {m['image']}" for m in p["map"]]
        lines.append(f"  injective: {p['injective']}")
        lines += [f"  piece {i}: {v['verdict']}" for i, v in enumerate(p["pieces"])]
        return p, "\n".join(lines), 0 if ok else 1
    if cmd == "enumerate":
        p = R.enumerate_payload(parse(args.expr), depth)
        return p, "\n".join(f"{q['point']}  rank {q['rank']}" for q in p["points"]), 0
    if cmd == "dot":
        g = R.dot_graph(parse(args.expr), depth, basis_max)
        return {"dot": g}, g.rstrip("\n"), 0
    raise AssertionError(cmd)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = getattr(args, "json", False)
    try:
        opts = resolve(args)
        as_json = opts["format"] == "json"
        payload, text, code = run(args, opts)
    except ParseError as e:
        _error({"error": f"syntax error at position {e.position}: expected {e.expected}",
                "position": e.position}, e.caret(), as_json)
        return 2
    except C.NotInClass as e:
        err = {"error": str(e)}
        if e.witness is not None:
            err["witness"] = str(e.witness)
        _error(err, None, as_json)
        return 2
    except (SpaceError, ConfigError, ValueError) as e:
        _error({"error": str(e)}, None, as_json)
        return 2
    if as_json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)
    return code


def _error(err: Dict, detail: Optional[str], as_json: bool):
    if as_json:
        print(json.dumps(err, indent=2))
        return
    print(f"error: {err['error']}", file=sys.stderr)
    if detail:
        print(detail, file=sys.stderr)
    if "witness" in err:
        print(f"witness: {err['witness']}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
