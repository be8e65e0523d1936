"""
Command-line interface: ``pyfibcodes <command> [options]``.

Every command builds a :class:`CommandResult`; :func:`main` prints it either
as aligned text tables or, with ``--json``, as a JSON document with a fixed
key order. Exit codes: 0 on success, 1 on usage errors, 2 on domain errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import pandas as pd

from pyFibCodes import __version__
from pyFibCodes.config import enumeration_cap, log_level
from pyFibCodes.exceptions import FibCodesError, NotApplicableError
from pyFibCodes.fibcodes import (
    CyclicCode,
    classify_code,
    dual_code,
    extended_fibonacci_code,
    fibonacci_code,
    generalized_fibonacci_code,
    macwilliams_transform,
    predict_extended,
    predict_regime,
    predicted_weight_distribution,
    resolve_weight_distribution,
    rs_check,
    weight_distribution,
)
from pyFibCodes.fibseq import fib_period_sequence, table1, wall_vajda_check
from pyFibCodes.galois import modulus_value
from pyFibCodes.sss import (
    access_structure,
    deal_shares,
    predict_access_counts,
    read_share_file,
    reconstruct_secret,
    write_share_file,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2


class UsageError(Exception):
    """Bad command-line arguments."""

    def __init__(self, message: str, usage: str = ""):
        super().__init__(message)
        self.usage = usage


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}", self.format_usage())


@dataclass
class CommandResult:
    """Outcome of one command: status, payload document and diagnostics."""

    status: str
    command: str
    payload: dict
    diagnostics: List[str] = field(default_factory=list)
    exit_code: int = EXIT_OK
    text: str = ""

    def to_json(self) -> str:
        document = {
            "status": self.status,
            "command": self.command,
            "payload": self.payload,
            "diagnostics": self.diagnostics,
        }
        return json.dumps(document, indent=2)


def _int_list(text: str) -> List[int]:
    try:
        return [int(item) for item in text.replace(" ", "").split(",") if item]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON document instead of tables")
    common.add_argument("-v", "--verbose", action="count", default=0, help="more log output (repeatable)")
    common.add_argument("-q", "--quiet", action="store_true", help="only log errors")

    variant = _Parser(add_help=False)
    variant.add_argument("--variant", choices=["fibonacci", "extended", "generalized"], default="fibonacci")
    variant.add_argument("--r", type=int, default=3, help="step count of the extended sequence")
    variant.add_argument("--a", type=int, default=0, help="first seed of a generalized sequence")
    variant.add_argument("--b", type=int, default=1, help="second seed of a generalized sequence")

    parser = _Parser(prog="pyfibcodes", description="Fibonacci cyclic codes and Massey secret sharing.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    sub = commands.add_parser("analyze", parents=[common], help="sequence invariants of one prime")
    sub.add_argument("--p", type=int, required=True)

    sub = commands.add_parser("table1", parents=[common], help="sequence invariants of several primes")
    sub.add_argument("--primes", type=_int_list, default=[7, 11, 13, 17, 19, 23])
    sub.add_argument("--with-sequence", action="store_true", help="include one period of terms")

    sub = commands.add_parser("code", parents=[common, variant], help="parameters and classification of a code")
    sub.add_argument("--p", type=int, required=True)

    sub = commands.add_parser("weights", parents=[common, variant], help="weight distribution of a code")
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--predicted", action="store_true", help="add the closed-form distribution")

    sub = commands.add_parser("dual", parents=[common], help="dual of the Fibonacci code")
    sub.add_argument("--p", type=int, required=True)

    sub = commands.add_parser("access", parents=[common], help="access structure of the Massey scheme")
    sub.add_argument("--p", type=int, required=True)

    sss = commands.add_parser("sss", help="deal or recover a secret")
    actions = sss.add_subparsers(dest="action", required=True, metavar="action")
    deal = actions.add_parser("deal", parents=[common], help="deal shares to a share file")
    deal.add_argument("--p", type=int, required=True)
    deal.add_argument("--secret", type=int, required=True)
    deal.add_argument("--seed", type=int, required=True)
    deal.add_argument("--out", required=True)
    deal.add_argument("--keep-seed", action="store_true", help="store the seed in the share file")
    recover = actions.add_parser("recover", parents=[common], help="recover a secret from a share file")
    recover.add_argument("--in", dest="infile", required=True)
    recover.add_argument("--participants", type=_int_list, required=True)
    recover.add_argument("--verify", action="store_true", help="check that all recoveries agree")
    return parser


# --------------------------------------------------------------------------
# commands


def _code_from_args(args) -> CyclicCode:
    if args.variant == "extended":
        return extended_fibonacci_code(args.p, args.r)
    if args.variant == "generalized":
        return generalized_fibonacci_code(args.p, args.a, args.b)
    return fibonacci_code(args.p)


def _table(rows: Dict[str, object]) -> str:
    frame = pd.DataFrame({"field": list(rows), "value": [str(v) for v in rows.values()]})
    return frame.to_string(index=False)


def _analyze(args) -> CommandResult:
    profile = fib_period_sequence(args.p)
    diagnostics = []
    try:
        report = wall_vajda_check(profile.p).to_dict()
    except NotApplicableError as err:
        report = None
        diagnostics.append(str(err))
    payload = {
        "p": profile.p,
        "l": profile.l,
        "alpha": profile.alpha,
        "s": profile.s,
        "beta": profile.beta,
        "period_terms": list(profile.period_terms),
        "wall_vajda": report,
    }
    rows = {k: payload[k] for k in ("p", "l", "alpha", "s", "beta")}
    if report is not None:
        rows[report["divisibility_clause"]] = report["divisibility_holds"]
        rows[report["vajda_clause"]] = report["vajda_holds"]
    text = _table(rows) + "\n\nperiod: " + ",".join(map(str, profile.period_terms))
    return CommandResult("ok", "analyze", payload, diagnostics, text=text)


def _table1(args) -> CommandResult:
    frame = table1(args.primes)
    if not args.with_sequence:
        frame = frame.drop(columns="sequence")
    rows = [
        {key: (list(value) if key == "sequence" else int(value)) for key, value in record.items()}
        for record in frame.to_dict(orient="records")
    ]
    text_frame = frame.copy()
    if args.with_sequence:
        text_frame["sequence"] = text_frame["sequence"].map(lambda s: ",".join(map(str, s)))
    return CommandResult("ok", "table1", {"rows": rows}, text=text_frame.to_string(index=False))


def _code(args) -> CommandResult:
    code = _code_from_args(args)
    diagnostics = []
    if code.experimental:
        diagnostics.append(f"experimental: true ({code.label} has no proven parameters)")
    classification = classify_code(code)
    try:
        rs = rs_check(code)
    except NotApplicableError:
        rs = None
    prediction = None
    try:
        if code.origin == "extended":
            prediction = predict_extended(code.p, args.r).to_dict()
        elif code.origin == "fibonacci":
            prediction = predict_regime(code.p).to_dict()
    except NotApplicableError as err:
        diagnostics.append(str(err))
    payload = {
        "code": code.to_dict(),
        "classification": classification.to_dict(),
        "reed_solomon": rs,
        "prediction": prediction,
    }
    rows = {
        "code": f"[{code.n},{code.k},{classification.d}]_{code.p}",
        "generator": str(code.g),
        "origin": code.origin,
        "experimental": code.experimental,
        "regime": classification.regime.value,
        "mds": classification.is_mds,
        "singleton defect": classification.singleton_defect,
        "griesmer": f"{classification.griesmer_lhs} vs {classification.griesmer_rhs}",
        "meets griesmer": classification.meets_griesmer,
        "reed-solomon": "n/a" if rs is None else rs,
    }
    return CommandResult("ok", "code", payload, diagnostics, text=_table(rows))


def _weights(args) -> CommandResult:
    code = _code_from_args(args)
    diagnostics = []
    if code.experimental:
        diagnostics.append(f"experimental: true ({code.label} has no proven parameters)")
    method = "enumeration" if code.size <= enumeration_cap() else "macwilliams"
    wd = resolve_weight_distribution(code)
    payload = {
        "n": code.n,
        "k": code.k,
        "method": method,
        "distribution": wd.to_json_dict(),
        "polynomial": wd.polynomial(),
    }
    text = wd.to_frame().to_string(index=False) + "\n\nW(u,v) = " + wd.polynomial()
    if args.predicted:
        if code.origin != "fibonacci":
            raise NotApplicableError("closed-form distributions exist only for the Fibonacci variant")
        predicted = predicted_weight_distribution(code.p)
        payload["predicted"] = predicted.to_json_dict()
        payload["matches"] = predicted == wd
        text += f"\npredicted: {predicted.polynomial()} (matches: {payload['matches']})"
    return CommandResult("ok", "weights", payload, diagnostics, text=text)


def _dual(args) -> CommandResult:
    code = fibonacci_code(args.p)
    dual = dual_code(code)
    wd = macwilliams_transform(weight_distribution(code), code.p, code.n, code.k)
    payload = {
        "code": dual.to_dict(),
        "d": wd.min_weight,
        "distribution": wd.to_json_dict(),
        "polynomial": wd.polynomial(),
    }
    rows = {
        "code": f"[{dual.n},{dual.k},{wd.min_weight}]_{dual.p}",
        "generator": str(dual.g),
        "W(u,v)": wd.polynomial(),
    }
    return CommandResult("ok", "dual", payload, text=_table(rows))


def _access(args) -> CommandResult:
    code = fibonacci_code(args.p)
    structure = access_structure(code)
    diagnostics = []
    try:
        predicted = predict_access_counts(code.p)
    except NotApplicableError as err:
        predicted = None
        diagnostics.append(str(err))
    matches = None
    if predicted is not None:
        matches = (
            predicted.count == structure.count
            and predicted.dictatorial == structure.dictatorial
            and structure.other_frequencies() <= {predicted.frequency}
        )
    payload = {
        "structure": structure.to_dict(),
        "predicted": None if predicted is None else predicted.to_dict(),
        "matches": matches,
    }
    sets = pd.DataFrame(
        {"participants": [" ".join(map(str, s)) for s in structure.minimal_sets]}
    )
    lines = [
        sets.to_string(),
        "",
        f"minimal access sets: {structure.count}",
        f"dictatorial: {list(structure.dictatorial)}",
        f"other frequencies: {sorted(structure.other_frequencies())}",
    ]
    if predicted is not None:
        lines.append(
            f"predicted: {predicted.count} sets, dictatorial {list(predicted.dictatorial)}, "
            f"frequency {predicted.frequency} (matches: {matches})"
        )
    return CommandResult("ok", "access", payload, diagnostics, text="\n".join(lines))


def _deal(args) -> CommandResult:
    code = fibonacci_code(args.p)
    share_set = deal_shares(code, args.secret, args.seed)
    path = write_share_file(args.out, share_set, keep_seed=args.keep_seed)
    payload = {
        "path": str(path),
        "p": share_set.p,
        "n": share_set.n,
        "participants": len(share_set.shares),
        "code_id": share_set.scheme_code_id,
    }
    text = f"wrote {len(share_set.shares)} shares to {path}"
    return CommandResult("ok", "sss deal", payload, text=text)


def _recover(args) -> CommandResult:
    share_set = read_share_file(args.infile)
    code = share_set.scheme_code()
    secret = reconstruct_secret(code, args.participants, share_set.shares, verify=args.verify)
    payload = {"secret": secret, "participants": sorted(set(args.participants))}
    return CommandResult("ok", "sss recover", payload, text=f"secret: {secret}")


_COMMANDS: Dict[str, Callable[[argparse.Namespace], CommandResult]] = {
    "analyze": _analyze,
    "table1": _table1,
    "code": _code,
    "weights": _weights,
    "dual": _dual,
    "access": _access,
    "sss deal": _deal,
    "sss recover": _recover,
}


def _configure_logging(args) -> None:
    if getattr(args, "quiet", False):
        level = logging.ERROR
    elif getattr(args, "verbose", 0) >= 2:
        level = logging.DEBUG
    elif getattr(args, "verbose", 0) == 1:
        level = logging.INFO
    else:
        level = getattr(logging, log_level(), logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    logging.getLogger("pyFibCodes").setLevel(level)


def run(argv: Optional[Sequence[str]] = None) -> CommandResult:
    """
    Parse ``argv`` and execute the command.

    Usage and domain errors are returned as a result with status ``error``
    instead of being raised.
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as err:
        return CommandResult(
            "error", "", {"error": str(err), "kind": "UsageError"}, exit_code=EXIT_USAGE, text=err.usage + str(err)
        )
    name = args.command if args.command != "sss" else f"sss {args.action}"
    _configure_logging(args)
    try:
        if getattr(args, "p", None) is not None:
            modulus_value(args.p)
        result = _COMMANDS[name](args)
    except FibCodesError as err:
        logger.debug("%s failed", name, exc_info=True)
        return CommandResult(
            "error", name, {"error": str(err), "kind": type(err).__name__}, exit_code=EXIT_DOMAIN, text=f"error: {err}"
        )
    result.command = name
    return result


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Console entry point; returns the process exit code."""
    try:
        result = run(argv)
    except SystemExit as exit_:  # --help and --version
        return int(exit_.code or 0)
    wants_json = "--json" in (sys.argv[1:] if argv is None else argv)
    if result.status == "ok":
        print(result.to_json() if wants_json else result.text)
        for message in result.diagnostics:
            print(f"warning: {message}", file=sys.stderr)
    elif wants_json and result.exit_code == EXIT_DOMAIN:
        print(result.to_json())
    else:
        print(result.text, file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
