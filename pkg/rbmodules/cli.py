"""rbmodules CLI."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable
from fractions import Fraction
from typing import TypeVar

from . import __version__
from .cache import DiskCache, get_cache_dir
from .codec import ParseError, dumps, parse_family, parse_flavor, parse_scalar
from .jobs import (
    EXIT_INPUT_ERROR,
    Command,
    JobResult,
    JobSpec,
    batch_report,
    load_batch,
    run,
    run_batch,
)
from .matsolve import Variant
from .rbops import Family, Flavor
from .sources import InputNotFound, load_input

LOG = logging.getLogger("rbmodules")

T = TypeVar("T")


def _argtype(parse: Callable[[str], T]) -> Callable[[str], T]:
    """Wrap a codec parser so argparse reports its ParseError as a usage error."""

    def convert(text: str) -> T:
        try:
            return parse(text)
        except ParseError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc

    convert.__name__ = parse.__name__
    return convert


def _rational(text: str) -> Fraction:
    return parse_scalar(text, "argument")


def _flavor(text: str) -> Flavor:
    return parse_flavor(text)


def _family(text: str) -> Family:
    return parse_family(text)


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-v", "--verbose", default=False, action="store_true", help="log debug output"
    )
    common.add_argument("-o", "--output", help="write the JSON report to this file")
    common.add_argument(
        "-c", "--cache_dir", help="use an alternate caching folder for inputs and solution spaces"
    )
    common.add_argument(
        "--no_cache", default=False, action="store_true", help="don't read or write the cache"
    )
    common.add_argument(
        "--clear_cache", default=False, action="store_true", help="empty the cache before running"
    )
    return common


def _add_input(parser: argparse.ArgumentParser, what: str, required: bool = False) -> None:
    parser.add_argument(
        "-i",
        "--input",
        action="append",
        required=required,
        help=f"{what}: inline JSON, a local file or a URL; repeat to give fallbacks",
    )


def _add_flavor(parser: argparse.ArgumentParser, help_text: str) -> None:
    parser.add_argument(
        "-f", "--flavor", type=_argtype(_flavor), help=help_text + " (kxp1..kxp4, xkx)"
    )


def _add_block(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument("--s", type=int, required=required, help="rows of the block")
    parser.add_argument("--t", type=int, required=required, help="columns of the block")
    parser.add_argument("--b1", type=_argtype(_rational), required=required, help="eigenvalue of the row block, as in --b1 -1 or --b1=-1/2")
    parser.add_argument("--b2", type=_argtype(_rational), required=required, help="eigenvalue of the column block, as in --b2 0 or --b2=-3/2")


def _add_truncation(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "-N",
        "--truncation",
        type=int,
        help="highest monomial degree to check (default: RBMOD_TRUNCATION or 12)",
    )


def build_parser() -> argparse.ArgumentParser:
    """The argument parser with one subcommand per job command plus batch."""
    parser = argparse.ArgumentParser(
        prog="rbmodules",
        description="Verify and classify modules over polynomial Rota-Baxter algebras, exactly",
    )
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    common = _common_options()
    commands = parser.add_subparsers(dest="command", metavar="command", required=True)

    verify = commands.add_parser(
        "verify", parents=[common], help="check a module pair against its equations and the axiom"
    )
    _add_input(verify, "module object {A, B, flavor}", required=True)
    _add_flavor(verify, "override the module's flavor")
    _add_truncation(verify)
    verify.add_argument("--b", type=_argtype(_rational), help="constant b of operator P1 (default 1)")

    classify = commands.add_parser(
        "classify", parents=[common], help="all A solving the flavor's equations for a fixed B"
    )
    _add_input(classify, "matrix B, or a module object", required=True)
    _add_flavor(classify, "module flavor")
    classify.add_argument(
        "--variant",
        type=Variant,
        choices=list(Variant),
        metavar="{i14,i23}",
        help="force the i14 or i23 triangular form",
    )

    block = commands.add_parser(
        "solve-block", parents=[common], help="free cells of one block of X·J_t(b2) = -J_s(b1)·X·J_t(b2)"
    )
    _add_block(block, required=True)

    analyze = commands.add_parser(
        "analyze", parents=[common], help="irreducibility, submodule witness and indecomposability"
    )
    _add_input(analyze, "module object {A, B, flavor}", required=True)
    _add_flavor(analyze, "override the module's flavor")

    catalog = commands.add_parser("catalog", parents=[common], help="list known module families")
    catalog.add_argument("--n", type=int, help="dimension")
    _add_flavor(catalog, "module flavor")
    catalog.add_argument(
        "--spot", default=False, action="store_true", help="list the larger spot examples instead"
    )

    compare = commands.add_parser(
        "oracle-compare", parents=[common], help="compare closed-form solutions with the kernel oracle"
    )
    _add_input(compare, "matrix B, or a module object")
    _add_flavor(compare, "module flavor")
    _add_block(compare, required=False)

    rb_check = commands.add_parser(
        "rb-check", parents=[common], help="check the Rota-Baxter identity of a monomial operator"
    )
    _add_input(rb_check, "operator object {family, weight, b, truncation}")
    rb_check.add_argument("--family", type=_argtype(_family), help="P1, P2, P3, P4 or XKx")
    rb_check.add_argument("--weight", type=_argtype(_rational), default=Fraction(1), help="nonzero weight (default 1)")
    rb_check.add_argument("--b", type=_argtype(_rational), help="constant b of P1")
    _add_truncation(rb_check)

    batch = commands.add_parser(
        "batch", parents=[common], help="run a JSON array of jobs; reports keep input order"
    )
    _add_input(batch, "array of job objects", required=True)
    batch.add_argument(
        "-p", "--processes", type=int, default=None, help="run jobs in this many processes"
    )
    return parser


def _job_from_args(args: argparse.Namespace, cache_dir: str | None) -> JobSpec:
    return JobSpec(
        command=Command(args.command),
        inputs=tuple(getattr(args, "input", None) or ()),
        flavor=getattr(args, "flavor", None),
        variant=getattr(args, "variant", None),
        truncation=getattr(args, "truncation", None),
        output_path=args.output,
        s=getattr(args, "s", None),
        t=getattr(args, "t", None),
        b1=getattr(args, "b1", None),
        b2=getattr(args, "b2", None),
        n=getattr(args, "n", None),
        spot=getattr(args, "spot", False),
        family=getattr(args, "family", None),
        weight=getattr(args, "weight", Fraction(1)),
        b=getattr(args, "b", None),
        cache_dir=cache_dir,
    )


def _run_batch(args: argparse.Namespace, cache_dir: str | None) -> JobResult:
    try:
        data = load_input(args.input, DiskCache(cache_dir))
        jobs = load_batch(data, cache_dir)
    except (ParseError, InputNotFound) as exc:
        LOG.error("%s: %s", type(exc).__name__, exc)
        return JobResult(EXIT_INPUT_ERROR, {"error": type(exc).__name__, "message": str(exc)})
    return batch_report(run_batch(jobs, args.processes))


def main() -> None:
    """Rbmodules CLI main command."""
    logging.basicConfig()

    parser = build_parser()
    args = parser.parse_args()

    if args.verbose:
        logging.getLogger("rbmodules").setLevel(logging.DEBUG)

    cache_dir = None if args.no_cache else (args.cache_dir or get_cache_dir())
    if args.clear_cache and cache_dir:
        DiskCache(cache_dir).clear()

    if args.command == "batch":
        result = _run_batch(args, cache_dir)
    else:
        result = run(_job_from_args(args, cache_dir))

    text = dumps(result.report)
    if args.output:
        with open(args.output, "w") as out:
            out.write(text + "\n")
    else:
        print(text)

    if result.exit_code:
        sys.exit(result.exit_code)
