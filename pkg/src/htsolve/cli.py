"""Command-line frontend: solve, ground, check-config, translate-config.

Exit codes follow ASP-solver and sysexits conventions: 0 for non-solve
success, 10 satisfiable, 20 unsatisfiable, 1 for failed configuration
checks, 64 for usage errors, 65 for unreadable or unparsable input.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from . import configkit
from .core import Program, atoms_of, pretty_print
from .grounder import ground
from .parser import parse_program
from .search import solve

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_SAT = 10
EXIT_UNSAT = 20
EXIT_USAGE = 64
EXIT_INPUT = 65

_DOMAIN_RE = re.compile(r"(-?\d+)\.\.(-?\d+)\Z")


@dataclass(frozen=True)
class CliConfig:
    """One parsed invocation."""

    command: str
    program_path: str = ""
    model_path: str = ""
    instance_path: str = ""
    output_path: str = ""
    semantics: str = "casp"
    engine: str = "oracle"
    bounds: tuple = None
    models: int = 0
    text: bool = False

    def __post_init__(self) -> None:
        if self.bounds is not None and self.bounds[0] > self.bounds[1]:
            raise ValueError(f"empty domain {self.bounds[0]}..{self.bounds[1]}")
        if self.models < 0:
            raise ValueError("--models must be nonnegative")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _domain(text: str) -> tuple:
    m = _DOMAIN_RE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(
            f"expected LO..HI with integer bounds, got {text!r}"
        )
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty domain {text!r}")
    return (lo, hi)


def _build() -> _Parser:
    top = _Parser(prog="htsolve", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ps = sub.add_parser("solve", help="enumerate answer sets of a program file")
    ps.add_argument("file")
    ps.add_argument("--semantics", choices=("casp", "founded"), default="casp")
    ps.add_argument("--engine", choices=("oracle", "search"), default="oracle")
    ps.add_argument("--domain", type=_domain, default=None, metavar="LO..HI")
    ps.add_argument("--models", type=int, default=0, metavar="N",
                    help="print at most N answer sets (0 = all)")

    pg = sub.add_parser("ground", help="ground a program file")
    pg.add_argument("file")
    pg.add_argument("--text", action="store_true",
                    help="print the ground rules instead of a summary")

    pc = sub.add_parser("check-config", help="check an instance against a model")
    pc.add_argument("--model", required=True)
    pc.add_argument("--instance", required=True)

    pt = sub.add_parser("translate-config",
                        help="compile a model and optional partial instance")
    pt.add_argument("--model", required=True)
    pt.add_argument("--instance", default=None)
    pt.add_argument("--semantics", choices=("casp", "founded"), required=True)
    pt.add_argument("-o", "--output", required=True)
    return top


def _fail_usage(message: str) -> int:
    print(f"htsolve: usage error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _read(path: str):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"htsolve: cannot read {path}: {exc}", file=sys.stderr)
        return None


def _parse_file(path: str):
    src = _read(path)
    if src is None:
        return None
    result = parse_program(src)
    if not isinstance(result, Program):
        for d in result:
            print(f"{path}:{d.line}:{d.column}: {d.message}", file=sys.stderr)
        return None
    return result


def _load_config_file(path: str, loader):
    parsed = _parse_file(path)
    if parsed is None:
        return None
    loaded = loader(parsed)
    if isinstance(loaded, list):
        for d in loaded:
            if d.rule_index is None:
                print(f"{path}: {d.message}", file=sys.stderr)
            else:
                print(f"{path}: rule {d.rule_index}: {d.message}", file=sys.stderr)
        return None
    return loaded


def run(argv) -> int:
    """Execute one invocation and return its exit code."""
    try:
        ns = _build().parse_args(list(argv))
    except _UsageError as exc:
        return _fail_usage(str(exc))
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        cfg = _config_from(ns)
    except ValueError as exc:
        return _fail_usage(str(exc))
    if cfg.command == "solve":
        return _cmd_solve(cfg)
    if cfg.command == "ground":
        return _cmd_ground(cfg)
    if cfg.command == "check-config":
        return _cmd_check(cfg)
    return _cmd_translate(cfg)


def _config_from(ns: argparse.Namespace) -> CliConfig:
    if ns.command == "solve":
        return CliConfig(
            command="solve",
            program_path=ns.file,
            semantics=ns.semantics,
            engine=ns.engine,
            bounds=ns.domain,
            models=ns.models,
        )
    if ns.command == "ground":
        return CliConfig(command="ground", program_path=ns.file, text=ns.text)
    if ns.command == "check-config":
        return CliConfig(
            command="check-config", model_path=ns.model, instance_path=ns.instance
        )
    return CliConfig(
        command="translate-config",
        model_path=ns.model,
        instance_path=ns.instance or "",
        semantics=ns.semantics,
        output_path=ns.output,
    )


def _cmd_solve(cfg: CliConfig) -> int:
    if cfg.engine == "search" and cfg.semantics == "founded":
        return _fail_usage("--engine search supports --semantics casp only")
    program = _parse_file(cfg.program_path)
    if program is None:
        return EXIT_INPUT
    try:
        g = ground(program)
    except ValueError as exc:
        print(f"htsolve: {cfg.program_path}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    variables = atoms_of(g)[2]
    bounds = cfg.bounds
    if bounds is None:
        if variables:
            return _fail_usage(
                "--domain is required for programs with integer variables: "
                + ", ".join(str(v) for v in variables)
            )
        bounds = (0, 0)
    answers = solve(g, cfg.semantics, bounds, cfg.engine)
    shown = answers if cfg.models == 0 else answers[: cfg.models]
    for i, ans in enumerate(shown, start=1):
        print(f"Answer: {i}")
        print(" ".join(sorted(str(a) for a in ans.atoms)))
        rendered = str(ans.val)
        if rendered:
            print(f"val {rendered}")
    if answers:
        print("SATISFIABLE")
        return EXIT_SAT
    print("UNSATISFIABLE")
    return EXIT_UNSAT


def _cmd_ground(cfg: CliConfig) -> int:
    program = _parse_file(cfg.program_path)
    if program is None:
        return EXIT_INPUT
    try:
        g = ground(program)
    except ValueError as exc:
        print(f"htsolve: {cfg.program_path}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if cfg.text:
        text = str(g)
        if text:
            print(text)
    else:
        print(f"rules: {len(g.rules)}")
        print(f"universe: {len(g.universe)}")
    return EXIT_OK


def _cmd_check(cfg: CliConfig) -> int:
    model = _load_config_file(cfg.model_path, configkit.load_model)
    if model is None:
        return EXIT_INPUT
    instance = _load_config_file(cfg.instance_path, configkit.load_instance)
    if instance is None:
        return EXIT_INPUT
    violations = configkit.check_instance(model, instance)
    if not violations:
        print("OK")
        return EXIT_OK
    for v in violations:
        print(str(v))
    return EXIT_VIOLATIONS


def _cmd_translate(cfg: CliConfig) -> int:
    model = _load_config_file(cfg.model_path, configkit.load_model)
    if model is None:
        return EXIT_INPUT
    if cfg.instance_path:
        partial = _load_config_file(cfg.instance_path, configkit.load_instance)
        if partial is None:
            return EXIT_INPUT
    else:
        partial = configkit.EMPTY_INSTANCE
    try:
        program = configkit.translate(model, partial, cfg.semantics)
    except ValueError as exc:
        print(f"htsolve: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        Path(cfg.output_path).write_text(pretty_print(program) + "\n", encoding="utf-8")
    except OSError as exc:
        print(f"htsolve: cannot write {cfg.output_path}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    raise SystemExit(main())
