"""Jobs: one command with its inputs, turned into an exit code and a JSON report.

Exit codes: 0 success or true, 1 checked and false, 2 input error,
3 irrational spectrum or an inconclusive verdict.
"""

from __future__ import annotations

import enum
import json
import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from multiprocessing import Pool
from typing import Any

from .cache import SOLUTION_SPACES_NAMESPACE, DiskCache
from .catalog import InvalidCaseParams, UnsupportedDimension, catalog, spot_examples
from .codec import (
    ParseError,
    dump_analysis,
    dump_axiom_report,
    dump_catalog_entry,
    dump_identity_report,
    dump_matrix,
    dump_module,
    dump_operator,
    dump_pattern,
    dump_solution_space,
    parse_family,
    parse_flavor,
    parse_matrix,
    parse_module,
    parse_operator,
    parse_scalar,
)
from .exactcore import DenseMatrix, DimensionMismatch, IrrationalSpectrum, NonSquare, same_span
from .matsolve import (
    NotQuasiIdempotent,
    Variant,
    classify,
    classify_kx,
    oracle_block_kernel,
    oracle_full_kernel,
    solve_block,
    verify_equation,
)
from .rbops import (
    FLAVOR_OF_FAMILY,
    ConstantTermNotAllowed,
    Family,
    Flavor,
    FlavorMismatch,
    InvalidOperator,
    RBOperator,
    TruncationExceeded,
    derived_identities_hold,
    semidirect_sum_check,
    verify_module_axiom,
    verify_rb_identity,
)
from .sources import InputNotFound, load_input
from .structure import NotAModule, Verdict, analyze

LOG = logging.getLogger("rbmodules")

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT_ERROR = 2
EXIT_INCONCLUSIVE = 3

FAMILY_OF_FLAVOR = {flavor: family for family, flavor in FLAVOR_OF_FAMILY.items()}

INPUT_ERRORS = (
    ParseError,
    InputNotFound,
    DimensionMismatch,
    NonSquare,
    FlavorMismatch,
    InvalidCaseParams,
    UnsupportedDimension,
    NotQuasiIdempotent,
    InvalidOperator,
    TruncationExceeded,
    ConstantTermNotAllowed,
)


class InvalidJob(ValueError):  # noqa: N818
    """A job lacks a field its command needs."""


class Command(str, enum.Enum):
    """Commands a job can run."""

    VERIFY = "verify"
    CLASSIFY = "classify"
    SOLVE_BLOCK = "solve-block"
    ANALYZE = "analyze"
    CATALOG = "catalog"
    ORACLE_COMPARE = "oracle-compare"
    RB_CHECK = "rb-check"


@dataclass(frozen=True)
class JobSpec:
    """Everything one command needs. Unused fields stay None."""

    command: Command
    inputs: tuple[str, ...] = ()
    flavor: Flavor | None = None
    variant: Variant | None = None
    truncation: int | None = None
    output_path: str | None = None
    s: int | None = None
    t: int | None = None
    b1: Fraction | None = None
    b2: Fraction | None = None
    n: int | None = None
    spot: bool = False
    family: Family | None = None
    weight: Fraction = Fraction(1)
    b: Fraction | None = None
    cache_dir: str | None = field(default=None, compare=False)

    def block_args(self) -> tuple[int, int, Fraction, Fraction] | None:
        """(s, t, b1, b2) when all four are given."""
        if None in (self.s, self.t, self.b1, self.b2):
            return None
        assert self.s is not None and self.t is not None
        assert self.b1 is not None and self.b2 is not None
        return self.s, self.t, self.b1, self.b2

    def validate(self) -> None:
        """Raise InvalidJob when a required field is missing."""
        needs_input = {Command.VERIFY, Command.CLASSIFY, Command.ANALYZE}
        if self.command in needs_input and not self.inputs:
            raise InvalidJob(f"{self.command.value} needs --input")
        if self.command is Command.SOLVE_BLOCK and self.block_args() is None:
            raise InvalidJob("solve-block needs --s, --t, --b1 and --b2")
        if self.command is Command.CATALOG and not self.spot and (self.n is None or self.flavor is None):
            raise InvalidJob("catalog needs --n and --flavor, or --spot")
        if self.command is Command.ORACLE_COMPARE and self.block_args() is None and not self.inputs:
            raise InvalidJob("oracle-compare needs --s/--t/--b1/--b2, or --input with a flavor")
        if self.command is Command.RB_CHECK and not self.inputs and self.family is None:
            raise InvalidJob("rb-check needs --family or --input")
        if self.s is not None and self.s < 1 or self.t is not None and self.t < 1:
            raise InvalidJob("block sizes must be positive")

    @classmethod
    def from_json(cls, data: object, cache_dir: str | None = None) -> JobSpec:
        """A job object as found in a batch file.

        Keys mirror the command line; "input" may be a source string, a list
        of them, or inline JSON data.
        """
        if not isinstance(data, Mapping):
            raise ParseError("batch job: expected a JSON object")
        try:
            command = Command(data["command"])
        except (KeyError, ValueError) as exc:
            raise ParseError(f"batch job: bad or missing 'command' in {dict(data)!r}") from exc

        raw = data.get("input")
        if raw is None:
            inputs: tuple[str, ...] = ()
        elif isinstance(raw, str):
            inputs = (raw,)
        elif isinstance(raw, list) and all(isinstance(x, str) for x in raw):
            inputs = tuple(raw)
        else:
            inputs = (json.dumps(raw),)

        def scalar(key: str) -> Fraction | None:
            return None if data.get(key) is None else parse_scalar(data[key], key)

        def integer(key: str) -> int | None:
            value = data.get(key)
            if value is None:
                return None
            if isinstance(value, bool) or not isinstance(value, int):
                raise ParseError(f"batch job: {key} must be an integer, got {value!r}")
            return value

        try:
            variant = None if data.get("variant") is None else Variant(str(data["variant"]).lower())
        except ValueError as exc:
            raise ParseError(f"batch job: unknown variant {data['variant']!r}") from exc
        return cls(
            command=command,
            inputs=inputs,
            flavor=None if data.get("flavor") is None else parse_flavor(data["flavor"]),
            variant=variant,
            truncation=integer("truncation"),
            s=integer("s"),
            t=integer("t"),
            b1=scalar("b1"),
            b2=scalar("b2"),
            n=integer("n"),
            spot=bool(data.get("spot", False)),
            family=None if data.get("family") is None else parse_family(data["family"]),
            weight=Fraction(1) if data.get("weight") is None else parse_scalar(data["weight"], "weight"),
            b=scalar("b"),
            cache_dir=cache_dir,
        )


@dataclass(frozen=True)
class JobResult:
    """Exit code and JSON-ready report of one job."""

    exit_code: int
    report: dict[str, Any]


def _load(job: JobSpec, cache: DiskCache) -> Any:
    return load_input(job.inputs, cache)


def _matrix_and_flavor(data: Any, flavor: Flavor | None) -> tuple[DenseMatrix, Flavor]:
    """B and the flavor from either a bare matrix or a module object."""
    if isinstance(data, dict):
        if "B" not in data:
            raise ParseError("expected a matrix or an object with 'B'")
        if flavor is None and "flavor" in data:
            flavor = parse_flavor(data["flavor"])
        b = parse_matrix(data["B"], "B")
    else:
        b = parse_matrix(data, "B")
    if flavor is None:
        raise ParseError("no flavor given; pass --flavor or include 'flavor' in the input")
    if not b.is_square:
        raise NonSquare(f"B is {b.rows}x{b.cols}; it must be square")
    return b, flavor


def _operator_for(job: JobSpec, flavor: Flavor) -> RBOperator:
    family = FAMILY_OF_FLAVOR[flavor]
    b = job.b if family is Family.P1 else None
    if family is Family.P1 and b is None:
        b = Fraction(1)
    return RBOperator(family, 1, b, job.truncation)


def _verify(job: JobSpec, cache: DiskCache) -> JobResult:
    mp = parse_module(_load(job, cache), job.flavor)
    op = _operator_for(job, mp.flavor)
    equation = verify_equation(mp)
    axiom = verify_module_axiom(op, mp)
    report = {
        "module": dump_module(mp),
        "operator": dump_operator(op),
        "valid": equation,
        "axiom": dump_axiom_report(axiom),
        "agree": equation == axiom.holds,
    }
    if equation:
        report["derived_identities_hold"] = derived_identities_hold(mp, op.truncation)
        report["semidirect_sum_holds"] = semidirect_sum_check(op, mp)
    return JobResult(EXIT_OK if equation and axiom.holds else EXIT_FALSE, report)


def _compute_space(b_json: str, flavor: str, variant: str | None) -> dict[str, Any]:
    b = parse_matrix(json.loads(b_json), "B")
    if variant is not None:
        space = classify_kx(b, Variant(variant), Flavor(flavor))
    else:
        space = classify(b, Flavor(flavor))
    return dump_solution_space(space)


def _classify(job: JobSpec, cache: DiskCache) -> JobResult:
    b, flavor = _matrix_and_flavor(_load(job, cache), job.flavor)
    if job.variant is not None and flavor is Flavor.XKX:
        raise InvalidJob("--variant applies to the KxP flavors only")
    report = cache.run_and_cache(
        func=_compute_space,
        namespace=SOLUTION_SPACES_NAMESPACE,
        kwargs={
            "b_json": json.dumps(dump_matrix(b)),
            "flavor": flavor.value,
            "variant": None if job.variant is None else job.variant.value,
        },
        hashed_argnames=["b_json", "flavor", "variant"],
    )
    return JobResult(EXIT_OK, report)


def _solve_block(job: JobSpec) -> JobResult:
    args = job.block_args()
    assert args is not None
    return JobResult(EXIT_OK, dump_pattern(solve_block(*args)))


def _analyze(job: JobSpec, cache: DiskCache) -> JobResult:
    report = analyze(parse_module(_load(job, cache), job.flavor))
    if not report.valid:
        code = EXIT_FALSE
    elif report.witness_note is not None or report.verdict is Verdict.INCONCLUSIVE:
        code = EXIT_INCONCLUSIVE
    else:
        code = EXIT_OK
    return JobResult(code, dump_analysis(report))


def _catalog(job: JobSpec) -> JobResult:
    if job.spot:
        entries = spot_examples()
    else:
        assert job.n is not None and job.flavor is not None
        entries = catalog(job.n, job.flavor)
    families = []
    for entry in entries:
        dumped = dump_catalog_entry(entry)
        dumped["valid"] = verify_equation(entry.module)
        families.append(dumped)
    return JobResult(EXIT_OK, {"families": families})


def _oracle_compare(job: JobSpec, cache: DiskCache) -> JobResult:
    args = job.block_args()
    if args is not None:
        pattern = solve_block(*args)
        oracle = oracle_block_kernel(*args)
        agree = same_span(pattern.vectors(), oracle)
        report = {"closed_form_dim": pattern.count, "oracle_dim": len(oracle), "same_span": agree}
    else:
        b, flavor = _matrix_and_flavor(_load(job, cache), job.flavor)
        space = classify(b, flavor)
        kernel = oracle_full_kernel(b, flavor)
        agree = space.same_span_as(kernel)
        report = {
            "flavor": flavor.value,
            "closed_form_dim": space.dim,
            "oracle_dim": len(kernel),
            "same_span": agree,
        }
    return JobResult(EXIT_OK if agree else EXIT_FALSE, report)


def _rb_check(job: JobSpec, cache: DiskCache) -> JobResult:
    if job.inputs:
        op = parse_operator(_load(job, cache), job.truncation)
    else:
        assert job.family is not None
        op = RBOperator(job.family, job.weight, job.b, job.truncation)
    report = verify_rb_identity(op)
    return JobResult(EXIT_OK if report.holds else EXIT_FALSE, dump_identity_report(op, report))


def _error(code: int, exc: Exception) -> JobResult:
    LOG.error("%s: %s", type(exc).__name__, exc)
    return JobResult(code, {"error": type(exc).__name__, "message": str(exc)})


def run(job: JobSpec) -> JobResult:
    """Run one job, mapping failures onto the exit-code contract."""
    cache = DiskCache(cache_dir=job.cache_dir)
    try:
        job.validate()
        if job.command is Command.VERIFY:
            return _verify(job, cache)
        if job.command is Command.CLASSIFY:
            return _classify(job, cache)
        if job.command is Command.SOLVE_BLOCK:
            return _solve_block(job)
        if job.command is Command.ANALYZE:
            return _analyze(job, cache)
        if job.command is Command.CATALOG:
            return _catalog(job)
        if job.command is Command.ORACLE_COMPARE:
            return _oracle_compare(job, cache)
        return _rb_check(job, cache)
    except IrrationalSpectrum as exc:
        return _error(EXIT_INCONCLUSIVE, exc)
    except NotAModule as exc:
        return _error(EXIT_FALSE, exc)
    except (InvalidJob, *INPUT_ERRORS) as exc:
        return _error(EXIT_INPUT_ERROR, exc)


def run_batch(jobs: Sequence[JobSpec], processes: int | None = None) -> list[JobResult]:
    """Run jobs, in a process pool when `processes` > 1; results keep input order."""
    if processes is not None and processes > 1 and len(jobs) > 1:
        with Pool(processes=processes) as pool:
            return pool.map(run, jobs)
    return [run(job) for job in jobs]


def load_batch(data: object, cache_dir: str | None = None) -> list[JobSpec]:
    """Job specs from a JSON array of job objects."""
    if not isinstance(data, list):
        raise ParseError("batch input: expected a JSON array of jobs")
    return [JobSpec.from_json(item, cache_dir) for item in data]


def batch_report(results: Sequence[JobResult]) -> JobResult:
    """Combined report; the exit code is the worst of the job codes."""
    return JobResult(
        max((r.exit_code for r in results), default=EXIT_OK),
        {
            "jobs": [
                {"index": i, "exit_code": r.exit_code, "report": r.report}
                for i, r in enumerate(results)
            ]
        },
    )
