"""Bond percolation experiments on expander host graphs."""

import json

from . import _core
from ._core import (
    BudgetExceeded,
    Graph,
    InvalidInput,
    from_edges,
    load_graph,
    regular_tree_survival,
    survival_probability,
)

CSV_HEADER = _core.CSV_HEADER

__all__ = [
    "BudgetExceeded",
    "CSV_HEADER",
    "Graph",
    "InvalidInput",
    "certify",
    "feasibility",
    "from_edges",
    "gw_monte_carlo",
    "load_graph",
    "paper_constant_feasibility",
    "percolate",
    "regular_tree_survival",
    "run_experiment",
    "survival_probability",
]


def _graph(g):
    return load_graph(g) if isinstance(g, str) else g


def gw_monte_carlo(d, p, depth=200, trials=100000, seed=1):
    return json.loads(_core.gw_monte_carlo_json(d, p, depth, trials, seed))


def percolate(graph, p, seed=0, top=10):
    """Component statistics of one bond percolation sample."""
    return json.loads(_core.percolate_json(_graph(graph), p, seed, top))


def certify(graph, prop="p3", **options):
    """Expansion certificate for property "p1", "p2" or "p3"."""
    return json.loads(_core.certify_json(_graph(graph), prop, json.dumps(options)))


def run_experiment(config, csv_path=None, summary_path=None, sizes_path=None):
    """Run an experiment from a config dict (ExperimentConfig field names).

    Returns the summary document with the per-trial records under "records".
    """
    return json.loads(
        _core.experiment_json(json.dumps(config), csv_path or "", summary_path or "", sizes_path or "")
    )


def feasibility(n, d, c1p, nc, eps):
    return json.loads(_core.feasibility_json(n, d, c1p, nc, eps))


def paper_constant_feasibility(n, d, c1):
    return json.loads(_core.paper_constant_feasibility_json(n, d, c1))
