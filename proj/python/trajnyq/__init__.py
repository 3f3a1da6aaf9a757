"""Sampling checks, designs and reconstruction for trajectory sets."""

import json

from ._core import TrajnyqError, bessel_j
from ._core import run as _run
from ._core import support as _support
from ._core import width as _width

__all__ = ["TrajnyqError", "bessel_j", "run", "check", "design", "reconstruct", "support", "width"]


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def run(action, config, seed=None, tolerance=None):
    """Run a pipeline action. Returns (result, artifacts, exit_code)."""
    out = _run(action, _text(config), seed, tolerance)
    return json.loads(out["result"]), dict(out["artifacts"]), out["exit_code"]


def check(config, tolerance=None):
    return run("check", config, tolerance=tolerance)[0]


def design(config):
    return run("design", config)[0]


def reconstruct(config, seed=None):
    return run("reconstruct", config, seed=seed)[0]


def support(body, direction):
    return _support(_text(body), list(direction))


def width(body):
    w, u = _width(_text(body))
    return w, u
