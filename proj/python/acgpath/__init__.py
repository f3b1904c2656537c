"""Constrained shortest paths via atomic column generation.

Instances and solutions are plain dicts in the same schema the CLI reads and
writes; the extension module speaks JSON text underneath.
"""

import json

from acgpath._core import ParseError, __version__
from acgpath import _core

__all__ = [
    "ParseError",
    "__version__",
    "check",
    "compact_relaxation",
    "enumerate_optimum",
    "generate_from_topology",
    "generate_grid",
    "solve",
]


def generate_grid(width=5, height=5, path_size=5, seed=0, unfeasible=False):
    """Seeded instance on a width x height bidirected grid."""
    return json.loads(
        _core.grid_instance(width, height, path_size, seed, unfeasible)
    )


def generate_from_topology(text, path_size=5, seed=0, unfeasible=False):
    """Seeded instance on a `nodes/edge` topology listing."""
    return json.loads(
        _core.topology_instance(text, path_size, seed, unfeasible)
    )


def solve(
    instance,
    algo="acg",
    t_acg=500,
    t_atomic=60,
    gamma=0.2,
    limit=120000,
    workers=1,
    seed=0,
):
    """Run one solver; algo is acg, acg1, acgh, acgr, multipulse, or oracle."""
    return json.loads(
        _core.solve(
            json.dumps(instance), algo, t_acg, t_atomic, gamma, limit,
            workers, seed,
        )
    )


def check(instance, solution):
    """True iff the solution's claims hold against the instance."""
    return _core.check(json.dumps(instance), json.dumps(solution))


def enumerate_optimum(instance):
    """Exhaustive enumeration; ground truth for small instances."""
    return _core.enumerate_optimum(json.dumps(instance))


def compact_relaxation(instance):
    """LP value of the compact arc-flow relaxation (acyclic graphs only)."""
    return _core.compact_relaxation(json.dumps(instance))
