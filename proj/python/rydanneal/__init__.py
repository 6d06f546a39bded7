"""Python interface to the rydanneal C++ core.

Dict-valued wrappers around the JSON-string API exposed by the extension
module. See the project README for the config schema.
"""

import json as _json

from _rydanneal import (  # noqa: F401
    ancilla_weights,
    blockade_radius,
    schedule_csv,
)
import _rydanneal as _core

__all__ = [
    "ancilla_weights",
    "blockade_radius",
    "decode",
    "fixture_config",
    "is_independent",
    "mwis_cost",
    "paper_fixture_2d",
    "run_anneal",
    "run_calibrate",
    "run_optimize",
    "run_solve",
    "schedule_csv",
    "solve_graph",
    "validate_embedding",
]


def solve_graph(graph):
    return _json.loads(_core.solve_graph_json(_json.dumps(graph)))


def mwis_cost(graph, config, u):
    return _core.mwis_cost_json(_json.dumps(graph), config, u)


def is_independent(graph, config):
    return _core.is_independent_json(_json.dumps(graph), config)


def paper_fixture_2d(weights):
    return _json.loads(_core.paper_fixture_2d_json(list(weights)))


def validate_embedding(embedding):
    return _json.loads(_core.validate_embedding_json(_json.dumps(embedding)))


def decode(embedding, physical):
    return _core.decode_json(_json.dumps(embedding), physical)


def run_solve(config):
    return _json.loads(_core.run_solve_json(_json.dumps(config)))


def run_anneal(config, exact=False, force=False):
    return _json.loads(_core.run_anneal_json(_json.dumps(config), exact, force))


def run_optimize(config):
    return _json.loads(_core.run_optimize_json(_json.dumps(config)))


def run_calibrate(config):
    return _json.loads(_core.run_calibrate_json(_json.dumps(config)))


def fixture_config(name):
    return _json.loads(_core.fixture_config_json(name))
