"""Normal forms of reversible planar vector fields.

Each command takes the field components and job options and returns the
command's JSON document as a dict, with the process exit code under
"exit_code".
"""

import json

from . import _core
from ._core import Error, ParseError, canonical, schema_version

__all__ = [
    "Error",
    "ParseError",
    "canonical",
    "check",
    "diagnose",
    "normalform",
    "plotdata",
    "run",
    "schema_version",
    "verify",
]

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NOT_REVERSIBLE = 3
EXIT_DEGENERATE = 4
EXIT_VERIFICATION = 5


def run(command, config):
    text, code = _core.run(command, json.dumps(config))
    doc = json.loads(text)
    doc["exit_code"] = code
    return doc


def _job(P, Q, options):
    config = dict(options)
    config["P"] = P
    config["Q"] = Q
    return config


def check(P, Q, **options):
    return run("check", _job(P, Q, options))


def normalform(P, Q, **options):
    return run("normalform", _job(P, Q, options))


def verify(P, Q, **options):
    return run("verify", _job(P, Q, options))


def diagnose(P, Q, **options):
    return run("diagnose", _job(P, Q, options))


def plotdata(P, Q, directory, **options):
    config = _job(P, Q, options)
    config.setdefault("plot", {})["directory"] = str(directory)
    return run("plotdata", config)
