"""
Command handlers for the `parcat` command line.

Each handler takes the parsed arguments and the per-invocation CliConfig and
returns a CommandOutput; printing and exit codes are handled by `run`.
"""
import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from pydantic import ValidationError

from models.algebra import AlgebraElement, format_coefficient
from models.partition import Partition
from schemas.cli import CliConfig
from schemas.element import AlgebraElementSchema, DiagramSchema
from schemas.report import (
    BlockCheckSchema,
    BlockRowSchema,
    BlockStructureReportSchema,
    GramReportSchema,
)
from schemas.response import StandardResponse
from services.algebra_service import AlgebraService
from services.blocks_service import BlocksService
from services.diagram_service import DiagramService, parse_diagram_list
from services.schurweyl_service import OracleKind
from services.stdmod_service import StdmodService
from services.symfun_service import SymfunService
from services.verification_service import VerificationService
from utils.exceptions import ParcatError, ParseError, PreconditionError
from utils.logger import get_logger
from utils.validators import format_rational

logger = get_logger("cli")


@dataclass
class CommandOutput:
    """What a command produced, in every output format."""
    response: StandardResponse
    text: str
    tsv: Optional[str] = None
    exit_code: int = 0


# -- helpers -------------------------------------------------------------------


def _t_label(t: Optional[Fraction]) -> str:
    return "generic" if t is None else format_rational(t)


def _rational_t(config: CliConfig, command: str) -> Fraction:
    t = config.t_value
    if t is None:
        raise PreconditionError(f"`parcat {command}` needs a rational --t")
    return t


def _at_t(f: AlgebraElement, t: Optional[Fraction]) -> AlgebraElement:
    return f if t is None else AlgebraService.specialize(f, t)


def _element_output(f: AlgebraElement, message: str) -> CommandOutput:
    schema = AlgebraElementSchema.from_element(f)
    tsv = "\n".join(f"{term.diagram}\t{term.coeff}" for term in schema.terms)
    return CommandOutput(
        response=StandardResponse(status="success", message=message, data=schema.model_dump(), count=len(schema.terms)),
        text=str(f),
        tsv=tsv,
    )


def _element_from_terms(lines: Sequence[str], t: Optional[Fraction]) -> AlgebraElement:
    text = "\n".join(piece for line in lines for piece in line.split(";"))
    return AlgebraService.parse_element(text, t)


# -- diagram and algebra commands ----------------------------------------------


def cmd_compose(args: argparse.Namespace, config: CliConfig) -> CommandOutput:
    """
    Compose diagrams listed in the order they act: the first is the bottom
    layer, the last the top.
    """
    diagrams = parse_diagram_list(args.diagrams)
    result, loops = diagrams[0], 0
    for d in diagrams[1:]:
        result, extra = DiagramService.compose(d, result)
        loops += extra
    t = config.t_value
    scalar = f"T^{loops}" if t is None else format_rational(t ** loops)
    return CommandOutput(
        response=StandardResponse(
            status="success",
            message=f"Composed {len(diagrams)} diagrams",
            data={"diagram": str(result), "loops": loops, "scalar": scalar},
        ),
        text=f"{result}, loops={loops}",
        tsv=f"{result}\t{loops}",
    )


def cmd_basis(args: argparse.Namespace, config: CliConfig) -> CommandOutput:
    diagrams = DiagramService.enumerate_diagrams(args.m, args.n)
    rows = []
    for d in diagrams:
        kind = DiagramService.classify(d)
        rows.append(DiagramSchema(diagram=DiagramService.format_diagram(d), kind=kind.kind.value, propagating_rank=kind.propagating_rank))
    return CommandOutput(
        response=StandardResponse(
            status="success",
            message=f"{len(rows)} diagrams in Hom({args.n}, {args.m})",
            data=[r.model_dump() for r in rows],
            count=len(rows),
        ),
        text="\n".join(r.diagram for r in rows) + f"\n# {len(rows)} diagrams",
        tsv="\n".join(f"{r.diagram}\t{r.kind}\t{r.propagating_rank}" for r in rows),
    )


JM_KINDS = {
    "left": OracleKind.LEFT_DOT,
    "right": OracleKind.RIGHT_DOT,
    "cross-left": OracleKind.LEFT_CROSS,
    "cross-right": OracleKind.RIGHT_CROSS,
}


def cmd_jm(args: argparse.Namespace, config: CliConfig) -> CommandOutput:
    builders = {
        OracleKind.LEFT_DOT: AlgebraService.jm_left,
        OracleKind.RIGHT_DOT: AlgebraService.jm_right,
        OracleKind.LEFT_CROSS: AlgebraService.cross_left,
        OracleKind.RIGHT_CROSS: AlgebraService.cross_right,
    }
    kind = JM_KINDS[args.kind]
    f = _at_t(builders[kind](args.n, args.j), config.t_value)
    return _element_output(f, f"{kind.value} on strand {args.j} of {args.n} at t={_t_label(config.t_value)}")


def cmd_central(args: argparse.Namespace, config: CliConfig) -> CommandOutput:
    if args.kind == "z":
        f = AlgebraService.central_z(args.n, args.r)
    else:
        f = AlgebraService.central_c(args.n, args.r)
    f = _at_t(f, config.t_value)
    return _element_output(f, f"{args.kind}^({args.r}) in P_{args.n} at t={_t_label(config.t_value)}")


def cmd_hc(args: argparse.Namespace, config: CliConfig) -> CommandOutput:
    f = _element_from_terms(args.terms, config.t_value)
    image = AlgebraService.hc_project(f)
    data = {
        "n": image.n,
        "terms": [
            {"coeff": format_coefficient(c).replace(" ", ""), "permutation": image.format_permutation(g)}
            for g, c in sorted(image.terms.items())
        ],
    }
    return CommandOutput(
        response=StandardResponse(status="success", message=f"HC projection in S_{image.n}", data=data, count=len(image.terms)),
        text=str(image),
        tsv="\n".join(f"{row['permutation']}\t{row['coeff']}" for row in data["terms"]),
    )


# -- symmetric functions and blocks --------------------------------------------


def cmd_kron(args: argparse.Namespace, config: CliConfig) -> CommandOutput:
    lam, mu, nu = (Partition.parse(text) for text in (args.lam, args.mu, args.nu))
    if args.reduced:
        method = SymfunService.parse_method(args.method)
        value = SymfunService.reduced_kronecker(lam, mu, nu, method)
        label = f"reduced Kronecker coefficient G({lam},{mu},{nu}) by {method.value}"
    else:
        value = SymfunService.kronecker(lam, mu, nu)
        label = f"Kronecker coefficient g({lam},{mu},{nu})"
    return CommandOutput(
        response=StandardResponse(status="success", message=label, data={"value": value}),
        text=str(value),
        tsv=f"{lam}\t{mu}\t{nu}\t{value}",
    )


def cmd_deformed(args: argparse.Namespace, config: CliConfig) -> CommandOutput:
    shape = Partition.parse(args.shape)
    if args.times:
        other = Partition.parse(args.times)
        poly = SymfunService.deformed_structure_constants(shape, other)
        message = f"s~{shape} s~{other} in the deformed basis"
        text = str(poly).replace("s(", "s~(")
    else:
        poly = SymfunService.deformed_schur(shape)
        message = f"s~{shape} in the Schur basis"
        text = str(poly)
    rows = [{"partition": str(p), "coeff": format_rational(c)} for p, c in poly.sorted_terms()]
    return CommandOutput(
        response=StandardResponse(status="success", message=message, data=rows, count=len(rows)),
        text=text,
        tsv="\n".join(f"{r['partition']}\t{r['coeff']}" for r in rows),
    )


def cmd_cartan(args: argparse.Namespace, config: CliConfig) -> CommandOutput:
    table = SymfunService.cartan_table(config.max_size)
    rows = [
        {"lam": str(lam), "mu": str(mu), "value": value}
        for (lam, mu), value in sorted(table.items(), key=lambda item: (item[0][0].size, item[0][1].size, item[0]))
    ]
    tsv = "\n".join(f"{r['lam']}\t{r['mu']}\t{r['value']}" for r in rows)
    return CommandOutput(
        response=StandardResponse(status="success", message=f"Nonzero B entries up to size {config.max_size}", data=rows, count=len(rows)),
        text=tsv,
        tsv=tsv,
    )


def cmd_blocks(args: argparse.Namespace, config: CliConfig) -> CommandOutput:
    t = _rational_t(config, "blocks")
    table = BlocksService.block_table(t, config.max_size)
    rows = [
        BlockRowSchema(
            block=k,
            partition=str(row.partition),
            typical=row.typical,
            kappa=None if row.kappa is None else str(row.kappa),
            n=row.n,
            window=str(row.window),
        )
        for k, group in enumerate(table)
        for row in group
    ]
    text = "\n".join("{" + ", ".join(str(row.partition) for row in group) + "}" for group in table)
    tsv = "\n".join(
        ["block\tpartition\ttypical\tkappa\tn\twindow"]
        + [
            f"{r.block}\t{r.partition}\t{'yes' if r.typical else 'no'}\t{r.kappa or '-'}\t"
            f"{'-' if r.n is None else r.n}\t{r.window}"
            for r in rows
        ]
    )
    return CommandOutput(
        response=StandardResponse(
            status="success",
            message=f"{len(table)} blocks at t={format_rational(t)} up to size {config.max_size}",
            data=[r.model_dump() for r in rows],
            count=len(rows),
        ),
        text=text,
        tsv=tsv,
    )


# -- standard modules ----------------------------------------------------------


def cmd_gram(args: argparse.Namespace, config: CliConfig) -> CommandOutput:
    shape = Partition.parse(args.shape)
    t = _rational_t(config, "gram")
    gram = StdmodService.gram_matrix(shape, args.m, t)
    report = GramReportSchema(
        partition=str(shape), m=args.m, t=format_rational(t), dimension=gram.matrix.rows, rank=gram.rank
    )
    text = f"dimension {report.dimension}, rank {report.rank}"
    if args.matrix:
        text += "\n" + gram.matrix.to_coordinate_text()
    data = report.model_dump()
    if args.matrix:
        data["matrix"] = gram.matrix.to_coordinate_text()
    return CommandOutput(
        response=StandardResponse(status="success", message=f"Gram matrix of 1_{args.m} Delta{shape}", data=data),
        text=text,
        tsv=f"{report.partition}\t{report.m}\t{report.t}\t{report.dimension}\t{report.rank}",
    )


def cmd_block_structure(args: argparse.Namespace, config: CliConfig) -> CommandOutput:
    kappa = Partition.parse(args.kappa)
    checks = StdmodService.verify_block_structure(kappa, args.m_max, args.j_max)
    report = BlockStructureReportSchema(
        kappa=str(kappa),
        t=str(kappa.size),
        rows=[
            BlockCheckSchema(
                n=c.n, m=c.m, partition=str(c.shape), rank=c.rank, predicted=c.predicted, passed=c.ok
            )
            for c in checks
        ],
    )
    tsv = "\n".join(
        ["n\tm\tpartition\trank\tpredicted\tok"]
        + [f"{r.n}\t{r.m}\t{r.partition}\t{r.rank}\t{r.predicted}\t{'yes' if r.passed else 'no'}" for r in report.rows]
    )
    failed = sum(not r.passed for r in report.rows)
    return CommandOutput(
        response=StandardResponse(
            status="success" if report.ok else "failed",
            message=f"Block structure along the orbit of {kappa}: {failed} mismatches",
            data=report.model_dump(),
            count=len(report.rows),
        ),
        text=tsv,
        tsv=tsv,
        exit_code=0 if report.ok else 1,
    )


def cmd_verify(args: argparse.Namespace, config: CliConfig) -> CommandOutput:
    reports = VerificationService.run(args.suite, config.bounds, config.seed)
    lines = []
    for report in reports:
        for check in report.checks:
            status = "PASS" if check.passed else "FAIL"
            lines.append(f"{status}\t{check.suite}\t{check.name}" + (f"\t{check.detail}" if check.detail else ""))
    total = sum(len(r.checks) for r in reports)
    failed = sum(len(r.failed) for r in reports)
    summary = f"{total - failed}/{total} checks passed in {len(reports)} suites ({config.bounds} bounds)"
    ok = failed == 0
    return CommandOutput(
        response=StandardResponse(
            status="success" if ok else "failed",
            message=summary,
            data=[r.model_dump() for r in reports],
            count=total,
            error_code=None if ok else "CHECKS_FAILED",
        ),
        text="\n".join(lines + [summary]),
        tsv="\n".join(lines),
        exit_code=0 if ok else 1,
    )


COMMANDS: Dict[str, Callable[[argparse.Namespace, CliConfig], CommandOutput]] = {
    "compose": cmd_compose,
    "basis": cmd_basis,
    "jm": cmd_jm,
    "central": cmd_central,
    "hc": cmd_hc,
    "kron": cmd_kron,
    "deformed": cmd_deformed,
    "cartan": cmd_cartan,
    "blocks": cmd_blocks,
    "gram": cmd_gram,
    "block-structure": cmd_block_structure,
    "verify": cmd_verify,
}


# -- parser --------------------------------------------------------------------


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--t", default=argparse.SUPPRESS, help='Parameter t: "generic" or an exact rational p/q')
    common.add_argument("--format", dest="output_format", default=argparse.SUPPRESS, help="text, json or tsv")
    common.add_argument("--max-size", "--max", dest="max_size", type=int, default=argparse.SUPPRESS,
                        help="Largest partition size in tables")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="Seed of the randomized checks")
    common.add_argument("--bounds", default=argparse.SUPPRESS, help="Verification bounds: small or full")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="parcat", description="Exact computations in the partition category.", parents=[common]
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compose", parents=[common], help="Compose diagrams, first listed acts first")
    p.add_argument("diagrams", nargs="+")

    p = sub.add_parser("basis", parents=[common], help="List the diagram basis of Hom(n, m)")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)

    p = sub.add_parser("jm", parents=[common], help="Jucys-Murphy dots and crossings")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    kinds = p.add_mutually_exclusive_group()
    for name in JM_KINDS:
        kinds.add_argument(f"--{name}", dest="kind", action="store_const", const=name)
    p.set_defaults(kind="left")

    p = sub.add_parser("central", parents=[common], help="Central elements z^(r) and c^(r)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--kind", choices=("z", "c"), default="z")

    p = sub.add_parser("hc", parents=[common], help="Harish-Chandra projection of an element")
    p.add_argument("terms", nargs="+", help="Lines 'diagram * coefficient'; ';' also separates terms")

    p = sub.add_parser("kron", parents=[common], help="Kronecker and reduced Kronecker coefficients")
    p.add_argument("lam")
    p.add_argument("mu")
    p.add_argument("nu")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--method", default=None, help="Stabilize or Littlewood")

    p = sub.add_parser("deformed", parents=[common], help="Deformed Schur functions")
    p.add_argument("shape")
    p.add_argument("--times", default=None, help="Second factor; prints the product in the deformed basis")

    sub.add_parser("cartan", parents=[common], help="Cartan matrix of the downward category")

    sub.add_parser("blocks", parents=[common], help="Block table at a rational t")

    p = sub.add_parser("gram", parents=[common], help="Gram matrix rank of a standard-module weight space")
    p.add_argument("shape")
    p.add_argument("m", type=int)
    p.add_argument("--matrix", action="store_true", help="Also print the matrix in coordinate form")

    p = sub.add_parser("block-structure", parents=[common], help="Gram ranks against alternating sums on a kappa orbit")
    p.add_argument("kappa")
    p.add_argument("--m-max", type=int, default=4)
    p.add_argument("--j-max", type=int, default=3)

    p = sub.add_parser("verify", parents=[common], help="Run named verification suites")
    p.add_argument("suite", choices=VerificationService.suite_names())
    return parser


def _config_from(args: argparse.Namespace) -> CliConfig:
    overrides = {
        key: getattr(args, key)
        for key in ("t", "output_format", "max_size", "seed", "bounds")
        if hasattr(args, key)
    }
    try:
        return CliConfig(**overrides)
    except ValidationError as e:
        messages = "; ".join(error["msg"] for error in e.errors())
        raise ParseError(messages)


def _emit(output: CommandOutput, output_format: str) -> None:
    if output_format == "json":
        print(output.response.model_dump_json(indent=2))
    elif output_format == "tsv" and output.tsv is not None:
        print(output.tsv)
    else:
        print(output.text)


def run(argv: Optional[List[str]] = None) -> int:
    """Parse, dispatch, print; returns the process exit code."""
    args = build_parser().parse_args(argv)
    output_format = getattr(args, "output_format", None) or "text"
    try:
        config = _config_from(args)
        output_format = config.output_format
        logger.debug(f"Running {args.command} with {config.model_dump()}")
        output = COMMANDS[args.command](args, config)
    except ParcatError as e:
        logger.error(f"{args.command} failed: {e}")
        if output_format == "json":
            print(
                StandardResponse(status="error", message=str(e), error_code=type(e).__name__).model_dump_json(indent=2)
            )
        else:
            print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    _emit(output, output_format)
    return output.exit_code
