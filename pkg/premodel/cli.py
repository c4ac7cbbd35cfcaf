"""Command-line entry point.

Every subcommand streams its results, one JSON object per line unless another
format is asked for. Logging goes to stderr. Exit status is 0 on success, 1
on bad input, 2 when an internal consistency check fails and 3 when ``count``
finds an enumerated count that disagrees with its closed form.
"""
import argparse
import json
import logging
import sys

import attrs

from . import __version__
from .base import InputError, InvariantViolation, dumps
from .config import resolve_log_level
from .format_utils import (
    detect_kind,
    lattice_from_json,
    load_json,
    pair_from_json,
    pair_to_json,
    partition_from_json,
    partition_to_json,
    transfer_from_json,
    transfer_to_json,
    tree_from_json,
    tree_to_json,
    triangulation_from_json,
    triangulation_to_json,
)
from .kreweras import enumerate_partitions, partition_of, transfer_of
from .orders import OrderKind, PairKind, classify, count_table, ratio_table
from .poset import chain
from .render import hasse_dot, legend, triangulation_svg
from .timeit import TimeIt
from .transfer import chain_length
from .tools.caching import CachedWorkspace
from .trees import admissibly_ordered, enumerate_trees, pair_to_tree, tree_to_pair
from .triangulation import triangulation_to_tree, tree_to_triangulation

logger = logging.getLogger(__name__)

SUBCOMMANDS = ("enumerate", "count", "classify", "convert", "hasse", "triangulate", "report")
OBJECT_KINDS = ("transfer", "partition", "tree")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INVARIANT = 2
EXIT_MISMATCH = 3


@attrs.define(frozen=True)
class Command:
    subcommand: str = attrs.field(validator=attrs.validators.in_(SUBCOMMANDS))
    chain: int = None
    lattice_file: str = None
    kind: str = None
    order: str = "cc"
    input: str = None
    out: str = None
    format: str = "json"
    to: str = None
    legend: str = None
    max_n: int = None
    workers: int = None
    verbose: int = 0

    def __attrs_post_init__(self):
        if self.chain is not None and self.lattice_file is not None:
            raise InputError("--chain and --lattice are mutually exclusive")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def build_parser():
    parser = _Parser(
        prog="premodel",
        description="Enumerate and classify transfer systems and premodel structures on finite lattices.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, lattice=True):
        p.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--workers", type=int, help="worker threads for exhaustive sweeps")
        if lattice:
            group = p.add_mutually_exclusive_group()
            group.add_argument("--chain", type=int, metavar="N", help="use the chain [N]")
            group.add_argument("--lattice", dest="lattice_file", metavar="FILE", help="lattice JSON file")

    p = sub.add_parser("enumerate", help="stream transfer systems, partitions, trees or structures")
    common(p)
    p.add_argument(
        "--kind",
        default="transfer",
        choices=OBJECT_KINDS + tuple(k.value for k in PairKind),
    )

    p = sub.add_parser("count", help="enumerated against closed-form counts")
    common(p)
    p.add_argument("--kind", default="all", choices=tuple(k.value for k in PairKind) + ("all",))
    p.add_argument("--format", default="json", choices=("json", "csv"))

    p = sub.add_parser("classify", help="kind flags of structure pairs read from a file")
    common(p)
    p.add_argument("--input", required=True, metavar="FILE")

    p = sub.add_parser("convert", help="map between representations")
    common(p)
    p.add_argument("--input", required=True, metavar="FILE")
    p.add_argument(
        "--to",
        required=True,
        choices=("transfer", "partition", "pair", "tree", "triangulation"),
    )

    p = sub.add_parser("hasse", help="DOT diagram of an order on the transfer systems")
    common(p)
    p.add_argument("--order", default="cc", choices=tuple(k.value for k in OrderKind))
    p.add_argument("--legend", metavar="FILE", help="write index-to-pairs legend JSON here")

    p = sub.add_parser("triangulate", help="SVG drawing of a stacked triangulation")
    common(p)
    p.add_argument("--input", required=True, metavar="FILE", help="tree, pair or triangulation JSON")

    p = sub.add_parser("report", help="exact count and ratio tables")
    common(p, lattice=False)
    p.add_argument("--max-n", type=int, default=8, dest="max_n")
    p.add_argument("--format", default="json", choices=("json", "csv"))
    return parser


def parse_command(argv=None):
    args = vars(build_parser().parse_args(argv))
    fields = {a.name for a in attrs.fields(Command)}
    return Command(**{k: v for k, v in args.items() if k in fields})


def configure_logging(verbose):
    logging.basicConfig(
        level=resolve_log_level(verbose),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _lattice(command, required=True):
    if command.chain is not None:
        if command.chain < 0:
            raise InputError("--chain needs a non-negative length")
        return chain(command.chain)
    if command.lattice_file is not None:
        docs = load_json(command.lattice_file)
        if len(docs) != 1:
            raise InputError("lattice file must hold one JSON object")
        return lattice_from_json(docs[0])
    if required:
        raise InputError("give a lattice with --chain N or --lattice FILE")
    return None


def _workspace(command):
    return CachedWorkspace(_lattice(command), max_workers=command.workers)


def _enumerate(command, emit):
    L = _lattice(command)
    if command.kind == "partition":
        for P in enumerate_partitions(chain_length(L)):
            emit(dumps(partition_to_json(P)))
    elif command.kind == "tree":
        for T in enumerate_trees(chain_length(L) + 1):
            emit(dumps(tree_to_json(T)))
    elif command.kind == "transfer":
        for R in CachedWorkspace(L, max_workers=command.workers).systems:
            emit(dumps(transfer_to_json(R)))
    else:
        ws = CachedWorkspace(L, max_workers=command.workers)
        for P in ws.structures(command.kind):
            lp = ws.left_classes[ws.index_of(P.R_prime)]
            emit(dumps(pair_to_json(P, classify(P, lp))))
    return EXIT_OK


def _count(command, emit):
    ws = _workspace(command)
    kinds = list(PairKind) if command.kind in (None, "all") else [PairKind.parse(command.kind)]
    try:
        chain_length(ws.lattice)
    except InputError:
        rows = [{"kind": k.value, "enumerated": len(ws.structures(k))} for k in kinds]
        for row in rows:
            emit(dumps(row))
        return EXIT_OK
    table = ws.count_check(kinds)
    if command.format == "csv":
        emit(table.to_csv(index=False).rstrip("\n"))
    else:
        for row in table.to_dict(orient="records"):
            emit(dumps(row))
    return EXIT_OK if (table["verdict"] == "MATCH").all() else EXIT_MISMATCH


def _read_inputs(command):
    return load_json(command.input)


def _classify(command, emit):
    L = _lattice(command, required=False)
    for obj in _read_inputs(command):
        P = pair_from_json(obj, lattice=L)
        emit(dumps(classify(P)))
    return EXIT_OK


_READERS = {
    "transfer": transfer_from_json,
    "pair": pair_from_json,
    "partition": lambda obj, lattice=None: partition_from_json(obj),
    "tree": lambda obj, lattice=None: tree_from_json(obj),
    "triangulation": lambda obj, lattice=None: triangulation_from_json(obj),
}

_CONVERSIONS = {
    ("transfer", "partition"): lambda R: partition_to_json(partition_of(R)),
    ("partition", "transfer"): lambda P: transfer_to_json(transfer_of(P)),
    ("pair", "tree"): lambda P: tree_to_json(pair_to_tree(P)),
    ("tree", "pair"): lambda T: pair_to_json(tree_to_pair(T)),
    ("tree", "triangulation"): lambda T: triangulation_to_json(tree_to_triangulation(T)),
    ("triangulation", "tree"): lambda S: tree_to_json(admissibly_ordered(triangulation_to_tree(S))),
    ("triangulation", "pair"): lambda S: pair_to_json(tree_to_pair(triangulation_to_tree(S))),
    ("pair", "triangulation"): lambda P: triangulation_to_json(tree_to_triangulation(pair_to_tree(P))),
}


def _read_object(obj, lattice):
    source = detect_kind(obj)
    if source not in _READERS:
        raise InputError(f"cannot convert a {source}")
    return source, _READERS[source](obj, lattice=lattice)


def _convert(command, emit):
    L = _lattice(command, required=False)
    for obj in _read_inputs(command):
        source, value = _read_object(obj, L)
        if source == command.to:
            raise InputError(f"input is already a {source}")
        convert = _CONVERSIONS.get((source, command.to))
        if convert is None:
            raise InputError(f"no conversion from {source} to {command.to}")
        emit(dumps(convert(value)))
    return EXIT_OK


def _hasse(command, emit):
    ws = _workspace(command)
    P = ws.order(command.order)
    emit(hasse_dot(P).rstrip("\n"))
    if command.legend is not None:
        with open(command.legend, "w") as f:
            json.dump(legend(ws.systems), f, sort_keys=True)
    return EXIT_OK


def _triangulate(command, emit):
    L = _lattice(command, required=False)
    for obj in _read_inputs(command):
        source, value = _read_object(obj, L)
        if source == "triangulation":
            S = value
        elif source == "tree":
            S = tree_to_triangulation(value)
        elif source == "pair":
            S = tree_to_triangulation(pair_to_tree(value))
        else:
            raise InputError(f"cannot draw a {source} as a triangulation")
        emit(triangulation_svg(S).rstrip("\n"))
    return EXIT_OK


def _report(command, emit):
    if command.max_n is None or command.max_n < 0:
        raise InputError("--max-n needs a non-negative bound")
    table = count_table(command.max_n).join(ratio_table(command.max_n))
    if command.format == "csv":
        emit(table.reset_index().astype(str).to_csv(index=False).rstrip("\n"))
    else:
        for row in table.reset_index().to_dict(orient="records"):
            emit(dumps(row))
    return EXIT_OK


_HANDLERS = {
    "enumerate": _enumerate,
    "count": _count,
    "classify": _classify,
    "convert": _convert,
    "hasse": _hasse,
    "triangulate": _triangulate,
    "report": _report,
}


def run(command, stream=None):
    """Execute a Command, writing its output lines to ``stream``

    Returns
    -------
    int
        Process exit status.
    """
    out = None
    try:
        if command.out is not None:
            out = open(command.out, "w")
            stream = out
        elif stream is None:
            stream = sys.stdout

        def emit(line):
            stream.write(line + "\n")

        with TimeIt(command.subcommand):
            return _HANDLERS[command.subcommand](command, emit)
    except InvariantViolation as e:
        logger.error(f"internal check failed: {e}")
        print(f"premodel: internal error: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InputError, OSError) as e:
        print(f"premodel: {e}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        if out is not None:
            out.close()


def main(argv=None):
    try:
        command = parse_command(argv)
        configure_logging(command.verbose)
    except InputError as e:
        print(f"premodel: {e}", file=sys.stderr)
        return EXIT_INPUT
    return run(command)


if __name__ == "__main__":
    sys.exit(main())
