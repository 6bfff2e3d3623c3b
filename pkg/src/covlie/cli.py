"""Command-line front end: ``covlie build | verify | classify``.

Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import __version__
from .errors import CovlieError, GroupSpecError, NotCyclic, NotInjective
from .group import FinAbGroup, make_character, parse_group
from .paperalg import build_A_S_tau, build_g_S, chi_form, pi_hom, s_action_on_gS
from .report import SCHEMA_VERSION, VerificationReport
from .suites import SUITES, classification_record, default_window, merge, run_suites
from .twisted import grading_element_from_dict

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
NEEDS_CHAR = {"affine", "delta", "appendix"}


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _character(S: FinAbGroup, k: Optional[int], required: bool):
    if k is None and not required and not S.is_cyclic:
        return None
    return make_character(S, 1 if k is None else k)


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_build(args) -> int:
    S = parse_group(args.group)
    chi = _character(S, args.char, required=False)
    A = build_A_S_tau(S)
    g = build_g_S(S)
    bundle = {
        "schema_version": SCHEMA_VERSION,
        "engine_version": __version__,
        "group": S.name,
        "character": chi.k if chi else None,
        "dims": {"gl_S": A.gl.algebra.dim, "A_S_tau": A.algebra.dim, "g_S": g.algebra.dim},
        "gl_S": A.gl.algebra.to_dict(),
        "A_S_tau": A.algebra.to_dict(),
        "g_S": g.algebra.to_dict(),
        "forms": {
            "gl_S_trace": A.gl.form.to_dict(),
            "A_S_tau_trace": A.form().to_dict(),
            "g_S_chi": chi_form(g, chi).to_dict() if chi else None,
        },
        "pi": pi_hom(g, A).to_dict(),
        "s_action": [f.to_dict() for f in s_action_on_gS(g)],
    }
    _emit(_dump(bundle), args.output)
    return EXIT_OK


def _load_h(path: str, S: FinAbGroup):
    try:
        data = json.loads(Path(path).read_text())
        return grading_element_from_dict(build_A_S_tau(S).algebra, data)
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise ConfigError(f"cannot read grading element from {path}: {e}") from None


def cmd_verify(args) -> int:
    S = parse_group(args.group)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    required = args.char is not None or any(n in NEEDS_CHAR for n in names)
    chi = _character(S, args.char, required)
    W = args.window if args.window is not None else default_window(S)
    if W < 0:
        raise ConfigError("--window must be non-negative")
    h = _load_h(args.grading_element, S) if args.grading_element else None
    search = args.search_h or args.suite == "all"
    if "appendix" in names and h is None and not search:
        raise ConfigError("the appendix suite needs --grading-element FILE or --search-h")
    reports = run_suites(names, S, chi, W, h, search)
    rep: VerificationReport = reports[0] if len(reports) == 1 else merge(reports, S, chi, W)
    _emit(rep.to_markdown() if args.format == "md" else rep.to_json() + "\n", args.output)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_classify(args) -> int:
    S = parse_group(args.group)
    rec = classification_record(S)
    if args.format == "md":
        lines = [f"## classification of g_S for {rec['group']}", "",
                 f"ideal I: dim {rec['ideal_I_dim']}, quotient: dim {rec['quotient_dim']}", "",
                 "| block | coset | dim | rank | type |", "|---|---|---|---|---|"]
        for b in rec["blocks"]:
            lines.append(f"| {b['block_index']} | {b['coset']} | {b['dimension']} | {b['rank']} | {b['type_label']} |")
        text = "\n".join(lines) + "\n"
    else:
        text = _dump({"schema_version": SCHEMA_VERSION, "engine_version": __version__, **rec})
    _emit(text, args.output)
    return EXIT_OK if rec["checks_passed"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="covlie", description="Exact verification of covariant Lie algebra constructions.")
    p.add_argument("--version", action="version", version=f"covlie {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, char=True):
        sp.add_argument("--group", required=True, help="group spec such as Z5 or Z2xZ2")
        if char:
            sp.add_argument("--char", type=int, default=None,
                            help="character index k, chi(a) = zeta^(k a); default 1")
        sp.add_argument("--format", choices=("json", "md"), default="json")
        sp.add_argument("--output", "-o", default=None, help="write to a file instead of stdout")

    b = sub.add_parser("build", help="serialize gl_S, A_S^tau, g_S, forms, pi and the S-action")
    common(b)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="run a verification suite")
    common(v)
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--window", type=int, default=None, help="degree window W")
    v.add_argument("--grading-element", default=None, metavar="FILE",
                   help='JSON {"order": M, "h": {label: value}} for the appendix suite')
    v.add_argument("--search-h", action="store_true", help="search for a grading element")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classify", help="per-block simple type of g_S / I")
    common(c, char=False)
    c.set_defaults(func=cmd_classify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NotCyclic, NotInjective, GroupSpecError, ConfigError) as e:
        print(f"covlie: error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except CovlieError as e:
        print(f"covlie: verification error: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
