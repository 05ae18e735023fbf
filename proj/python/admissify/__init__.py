"""Admissible marking sets of Petri nets with uncontrollable transitions."""

import json

from ._admissify import (
    AdmissifyError,
    LinearConstraint,
    Net,
    ParseError,
    UnsatisfiableTransformation,
    _transform_json,
    load_net,
    parse_net,
    run_cli,
)

__all__ = [
    "AdmissifyError",
    "LinearConstraint",
    "Net",
    "ParseError",
    "UnsatisfiableTransformation",
    "load_net",
    "parse_net",
    "run_cli",
    "transform",
    "verify",
]


def transform(net, constraint=None, sequence=None, lookahead=1, max_steps=100, probe_blocks=False):
    """Runs the transformation and returns the JSON report as a dict.

    ``constraint`` is a LinearConstraint, a declared name, inline text or None.
    With ``sequence`` the given transitions are replayed instead of chosen.
    """
    text = _transform_json(net, constraint, list(sequence or []), lookahead, max_steps, probe_blocks)
    return json.loads(text)


def verify(path, bound, constraint=None, sequence=None, expressions=(), state_cap=None, depth_cap=None):
    """Runs ``admissify verify`` on a net file. Returns (exit_code, report)."""
    args = ["verify", "--net", str(path), "--bound", str(bound), "--format", "json"]
    if constraint is not None:
        args += ["--constraint", constraint]
    if sequence:
        args += ["--sequence", ",".join(sequence)]
    for e in expressions:
        args += ["--expression", e]
    if state_cap is not None:
        args += ["--state-cap", str(state_cap)]
    if depth_cap is not None:
        args += ["--depth-cap", str(depth_cap)]
    code, out, err = run_cli(args)
    if not out:
        raise AdmissifyError(err.strip())
    return code, json.loads(out)
