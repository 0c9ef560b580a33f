"""Command-line front end.

One logical request per invocation: a subcommand names the operation,
the JSON payload arrives via --input (file or stdin), and the report is
written to stdout with diagnostics on stderr.  Exit codes: 0 success,
1 invalid input, 2 mathematically rejected (the report carries the
citation tag), 3 numeric non-convergence.

Every report embeds the normalized request; feeding a report file back
through --input re-runs that request and reproduces the report byte for
byte.  The X4_THREADS environment variable caps BLAS parallelism and is
applied before any numerical module is imported.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 800
DEFAULT_TOL = 0.02
DEFAULT_FORMAT = "json"

_COMMAND_HELP = {
    "canon": "canonical form of an invariant tuple under rotation and reversal",
    "equiv": "decide equivalence of two invariant tuples",
    "euler": "euler sum and cyclic differences of an invariant tuple",
    "seifert-pi1": "fundamental group presentation of a Seifert presentation",
    "seifert-recognize": "recognize the boundary type of a Seifert presentation",
    "wcp": "kernel weights of a realizable invariant triple",
    "classify": "classify an action from its singular multigraph",
    "extent": "q-extent of a sampled circle-action quotient",
    "check-q": "run the full smallness battery on an action",
}


def _configure_threads() -> None:
    """Apply X4_THREADS to the BLAS pools before numpy can start them."""
    import os

    raw = os.environ.get("X4_THREADS")
    if not raw:
        return
    try:
        count = int(raw)
    except ValueError:
        sys.stderr.write(f"ignoring non-integer X4_THREADS={raw!r}\n")
        return
    if count < 1:
        sys.stderr.write(f"ignoring non-positive X4_THREADS={raw!r}\n")
        return
    for var in (
        "OPENBLAS_NUM_THREADS",
        "OMP_NUM_THREADS",
        "MKL_NUM_THREADS",
        "NUMEXPR_NUM_THREADS",
    ):
        os.environ.setdefault(var, str(count))


@dataclass
class Options:
    seed: int
    samples: int
    tol: float
    format: str

    def encode(self) -> dict:
        return {
            "format": self.format,
            "samples": self.samples,
            "seed": self.seed,
            "tol": self.tol,
        }


class _Parser(argparse.ArgumentParser):
    # usage errors are invalid input, not "mathematically rejected"
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="x4",
        description=(
            "Invariant algebra, orbit-graph classification, and extent "
            "measurements for isometric circle actions."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in _COMMAND_HELP.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--input", default="-", help="payload JSON path, - for stdin")
        p.add_argument("--seed", type=int, default=None, help="sampling seed (u64)")
        p.add_argument("--samples", type=int, default=None, help="sample count")
        p.add_argument("--tol", type=float, default=None, help="tolerance in radians")
        p.add_argument("--format", choices=("json", "text"), default=None)
    return parser


def _load_input(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    return json.loads(text)


# ---------------------------------------------------------------------------
# command handlers: (payload, options) -> (exit code, normalized payload, result)


def _run_canon(payload, opts):
    from . import serialize
    from .invariants import canonicalize, is_realizable

    t = serialize.decode_invariants(payload["invariants"])
    canonical = serialize.encode_invariants(canonicalize(t))
    # rotated inputs normalize to one payload, so their reports are identical
    normalized = {"invariants": canonical}
    result = {"canonical": canonical, "realizable": is_realizable(t)}
    return 0, normalized, result


def _run_equiv(payload, opts):
    from . import serialize
    from .invariants import are_equivalent, canonicalize

    left = serialize.decode_invariants(payload["left"])
    right = serialize.decode_invariants(payload["right"])
    normalized = {
        "left": serialize.encode_invariants(left),
        "right": serialize.encode_invariants(right),
    }
    result = {
        "equivalent": are_equivalent(left, right),
        "canonical_left": serialize.encode_invariants(canonicalize(left)),
        "canonical_right": serialize.encode_invariants(canonicalize(right)),
    }
    return 0, normalized, result


def _run_euler(payload, opts):
    from . import serialize
    from .invariants import cyclic_differences, euler_sum

    t = serialize.decode_invariants(payload["invariants"])
    normalized = {"invariants": serialize.encode_invariants(t)}
    result = {
        "euler_sum": serialize.encode_rational(euler_sum(t)),
        "cyclic_differences": [
            serialize.encode_rational(d) for d in cyclic_differences(t)
        ],
    }
    return 0, normalized, result


def _run_seifert_pi1(payload, opts):
    from math import isinf

    from . import serialize
    from .seifert import (
        abelian_order_two_fibers,
        euler_number,
        fundamental_group,
        normalize,
    )

    p = serialize.decode_seifert(payload["seifert"])
    normalized = {"seifert": serialize.encode_seifert(p)}
    result = {
        "presentation": serialize.encode_presentation(fundamental_group(p)),
        "euler_number": serialize.encode_rational(euler_number(p)),
        "normalized": serialize.encode_seifert(normalize(p)),
    }
    if len(p.fibers) == 2:
        order = abelian_order_two_fibers(p)
        result["two_fiber_order"] = "infinite" if isinf(order) else int(order)
    return 0, normalized, result


def _run_seifert_recognize(payload, opts):
    from . import serialize
    from .seifert import recognize_boundary

    p = serialize.decode_seifert(payload["seifert"])
    normalized = {"seifert": serialize.encode_seifert(p)}
    return 0, normalized, serialize.encode_recognition(recognize_boundary(p))


def _run_wcp(payload, opts):
    from . import serialize
    from .classifier import TAG_PAIRWISE_UNEQUAL
    from .invariants import is_realizable
    from .wcp import verify_kernel, weights_from_invariants

    t = serialize.decode_invariants(payload["invariants"])
    normalized = {"invariants": serialize.encode_invariants(t)}
    if not is_realizable(t):
        result = {
            "kind": "rejected",
            "reason": "invariant entries must be pairwise unequal to bound three fixed points",
            "tag": TAG_PAIRWISE_UNEQUAL,
        }
        return 2, normalized, result
    descriptor = weights_from_invariants(t)
    result = {
        "descriptor": serialize.encode_descriptor(descriptor),
        "kernel_verified": verify_kernel(descriptor.weights, t),
    }
    return 0, normalized, result


def _run_classify(payload, opts):
    from . import serialize
    from .classifier import Rejected, classify

    graph = serialize.decode_graph(payload["graph"])
    invariants = None
    normalized = {"graph": serialize.encode_graph(graph)}
    if "invariants" in payload:
        invariants = serialize.decode_invariants(payload["invariants"])
        normalized["invariants"] = serialize.encode_invariants(invariants)
    outcome = classify(graph, invariants)
    code = 2 if isinstance(outcome, Rejected) else 0
    return code, normalized, serialize.encode_classification(outcome)


def _run_extent(payload, opts):
    from . import serialize

    action = serialize.normalize_action(payload["action"], opts.samples, opts.seed)
    q = int(payload.get("q", 3))
    normalized = {"action": action, "q": q}
    method = payload.get("method")
    if method is not None:
        normalized["method"] = method

    from .extent_lab import SMALL_BOUND, extent, sample_quotient

    space = sample_quotient(serialize.decode_action(action))
    report = extent(space, q, method=method)
    result = {
        "space": serialize.encode_space_summary(space),
        "extent": serialize.encode_extent_report(report, space),
    }
    if q == 3:
        result["small"] = {
            "bound": SMALL_BOUND,
            "tol": opts.tol,
            "is_small": report.value <= SMALL_BOUND + opts.tol,
            "margin": SMALL_BOUND - report.value,
        }
    return 0, normalized, result


def _run_check_q(payload, opts):
    from . import serialize

    action = serialize.normalize_action(payload["action"], opts.samples, opts.seed)
    normalized = {"action": action}

    from .extent_lab import check_condition_qprime

    report = check_condition_qprime(serialize.decode_action(action), tol=opts.tol)
    return 0, normalized, serialize.encode_qprime_report(report)


_HANDLERS = {
    "canon": _run_canon,
    "equiv": _run_equiv,
    "euler": _run_euler,
    "seifert-pi1": _run_seifert_pi1,
    "seifert-recognize": _run_seifert_recognize,
    "wcp": _run_wcp,
    "classify": _run_classify,
    "extent": _run_extent,
    "check-q": _run_check_q,
}


def _exception_code(exc: Exception) -> int | None:
    """Exit code for a domain failure, None for a genuine crash."""
    names = {base.__name__ for base in type(exc).__mro__}
    if "ConvergenceError" in names or "GraphDisconnectedError" in names:
        return 3
    if isinstance(exc, ValueError):
        return 1
    return None


def main(argv=None) -> int:
    _configure_threads()
    args = _build_parser().parse_args(argv)

    try:
        raw = _load_input(args.input)
    except OSError as exc:
        sys.stderr.write(f"cannot read input: {exc}\n")
        return 1
    except json.JSONDecodeError as exc:
        sys.stderr.write(f"input is not valid JSON: {exc}\n")
        return 1

    # a full report (or request envelope) re-runs the request it embeds
    envelope_options = {}
    if isinstance(raw, dict) and isinstance(raw.get("request"), dict):
        raw = raw["request"]
    if isinstance(raw, dict) and "command" in raw and "payload" in raw:
        if raw["command"] != args.command:
            sys.stderr.write(
                f"input embeds command {raw['command']!r}, invoked as {args.command!r}\n"
            )
            return 1
        if isinstance(raw.get("options"), dict):
            envelope_options = raw["options"]
        raw = raw["payload"]

    def pick(flag, key, default):
        if flag is not None:
            return flag
        return envelope_options.get(key, default)

    opts = Options(
        seed=pick(args.seed, "seed", DEFAULT_SEED),
        samples=pick(args.samples, "samples", DEFAULT_SAMPLES),
        tol=pick(args.tol, "tol", DEFAULT_TOL),
        format=pick(args.format, "format", DEFAULT_FORMAT),
    )
    if not (isinstance(opts.seed, int) and 0 <= opts.seed < 2**64):
        sys.stderr.write("seed must be an unsigned 64-bit integer\n")
        return 1
    if not (isinstance(opts.samples, int) and opts.samples >= 50):
        sys.stderr.write("samples must be an integer >= 50\n")
        return 1
    if not (isinstance(opts.tol, (int, float)) and 0 < opts.tol < 1):
        sys.stderr.write("tol must lie in (0, 1) radians\n")
        return 1
    if opts.format not in ("json", "text"):
        sys.stderr.write("format must be json or text\n")
        return 1

    import jsonschema

    from .serialize import SCHEMAS, dumps_canonical, render_text

    try:
        jsonschema.validate(raw, SCHEMAS[args.command])
    except jsonschema.ValidationError as exc:
        sys.stderr.write(f"payload rejected by schema: {exc.message}\n")
        return 1

    try:
        code, normalized, result = _HANDLERS[args.command](raw, opts)
    except Exception as exc:
        mapped = _exception_code(exc)
        if mapped is None:
            raise
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return mapped

    report = {
        "request": {
            "command": args.command,
            "payload": normalized,
            "options": opts.encode(),
        },
        "result": result,
    }
    if opts.format == "json":
        sys.stdout.write(dumps_canonical(report))
    else:
        sys.stdout.write(render_text(report))
    if code == 2:
        sys.stderr.write(f"rejected: {result.get('tag', 'inadmissible')}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
