"""
🔺 Trigraph pipeline command line

    check <file>                      class F, Berge, balanced skew-partition, basic class
    decompose <file>                  2-join decomposition tree
    cssep build <file>                build and verify a CS-separator
    cssep verify <file> <sep>         verify a separator file
    biclique <file> [--weights]       biclique certificate of size n/55 (weight w/55)
    kjoin compose|cssep|biclique <recipe> --c p/q --k k
    gen <recipe> --seed s             seeded corpus instance with ground truth

Exit codes: 0 verified success, 1 verification failure, 2 precondition or
class violation, 3 cap exceeded, 4 contradiction.
"""

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from dotenv import load_dotenv

load_dotenv()

from core.config import LOG_LEVEL  # noqa: E402
from core.errors import TrigraphError  # noqa: E402
from orchestrator import run_pipeline  # noqa: E402
from utils.formats import save_text  # noqa: E402
from utils.reporting import generate_json_report, generate_report  # noqa: E402

logger = logging.getLogger("trigraph.cli")


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-o", "--output", default="", help="write the produced file here instead of stdout")
    parser.add_argument("--json", action="store_true", help="print the report as JSON")
    parser.add_argument("-v", "--verbose", action="store_true", help="print the pipeline transcript")


def _decomposition_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--no-precheck", dest="precheck", action="store_false",
                        help="skip the class F and balanced skew-partition checks")
    parser.add_argument("--no-hints", dest="hinted", action="store_false",
                        help="ignore region lines and search for 2-joins exhaustively")
    parser.add_argument("--base-threshold", type=int, default=None)


def _recipe_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("recipe")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--k", type=int, default=2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trigraph", description="Berge trigraph decomposition, "
                                     "clique-stable set separators and biclique extraction")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="class membership report")
    check.add_argument("file")
    _common(check)

    decompose = commands.add_parser("decompose", help="emit the decomposition tree")
    decompose.add_argument("file")
    decompose.add_argument("--mode", choices=["both", "single"], default="both")
    _decomposition_flags(decompose)
    _common(decompose)

    cssep = commands.add_parser("cssep", help="CS-separators")
    cssep_commands = cssep.add_subparsers(dest="action", required=True)
    build = cssep_commands.add_parser("build")
    build.add_argument("file")
    build.add_argument("--dedupe", dest="deduplicate", action="store_true",
                       help="drop duplicate cuts after size accounting")
    _decomposition_flags(build)
    _common(build)
    verify = cssep_commands.add_parser("verify")
    verify.add_argument("file")
    verify.add_argument("separator")
    _common(verify)

    biclique = commands.add_parser("biclique", help="Strong Erdős–Hajnal certificate")
    biclique.add_argument("file")
    biclique.add_argument("--weights", dest="use_weights", action="store_true",
                          help="use the weight lines of the input file")
    biclique.add_argument("--no-verify-steps", dest="verify_steps", action="store_false")
    _decomposition_flags(biclique)
    _common(biclique)

    kjoin = commands.add_parser("kjoin", help="generalized k-join closure pipelines")
    kjoin_commands = kjoin.add_subparsers(dest="action", required=True)
    for action in ("compose", "cssep", "biclique"):
        sub = kjoin_commands.add_parser(action)
        _recipe_flags(sub)
        sub.add_argument("--c", default="1/20", help="ratio p/q for bicliques (2ck < 1)")
        sub.add_argument("--oracle", default=None,
                         help="biclique oracle (exhaustive, bipartite) or separator oracle (all-cuts, pipeline)")
        sub.add_argument("--p0", type=int, default=None)
        sub.add_argument("--no-verify-steps", dest="verify_steps", action="store_false")
        _common(sub)

    gen = commands.add_parser("gen", help="seeded corpus instance")
    _recipe_flags(gen)
    _common(gen)

    return parser


def command_name(args: argparse.Namespace) -> str:
    if args.command in ("cssep", "kjoin"):
        return f"{args.command}-{args.action}"
    return args.command


def options_from(args: argparse.Namespace) -> dict:
    names = ("c", "k", "oracle", "p0", "deduplicate", "base_threshold", "use_weights",
             "hinted", "precheck", "verify_steps", "mode")
    return {name: getattr(args, name) for name in names if getattr(args, name, None) is not None}


def error_line(error: dict) -> str:
    return json.dumps(error, ensure_ascii=False, sort_keys=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=LOG_LEVEL.upper(), format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    command = command_name(args)

    try:
        result = run_pipeline(
            command,
            input_path=getattr(args, "file", ""),
            separator_path=getattr(args, "separator", ""),
            output_path=args.output,
            recipe=getattr(args, "recipe", ""),
            seed=getattr(args, "seed", 0),
            options=options_from(args),
        )
    except TrigraphError as e:
        print(error_line(e.to_dict()), file=sys.stderr)
        return e.exit_code
    except Exception as e:  # a bug, not an input problem
        logger.exception("pipeline crashed")
        print(error_line({"error": "internal", "exit_code": 1, "message": str(e)}), file=sys.stderr)
        return 1

    if args.verbose:
        for message in result["messages"]:
            print(message.content, file=sys.stderr)

    # with no -o the produced file owns stdout and the report moves to stderr
    report_stream = sys.stdout
    output = result.get("output") or ""
    if output and result["exit_code"] == 0:
        if args.output:
            save_text(args.output, output)
        else:
            sys.stdout.write(output)
            report_stream = sys.stderr

    report = result["report"]
    print(generate_json_report(report) if args.json else generate_report(report), file=report_stream)

    if result["exit_code"]:
        print(error_line(result["error"]), file=sys.stderr)
    return result["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
