"""Fair labelings of graphs: decide, certify and generate hard instances.

Graphs are passed as a vertex count plus a list of (u, v) edges over
0..n-1; label multisets as plain lists of positive integers.
"""

from ._core import (
    InputError,
    gen_3partition,
    gen_circulant,
    gen_semimagic,
    load_instance,
    parameters,
    random_instance,
    read_instance,
    solve,
    verify,
)

ALGORITHMS = ("auto", "oracle", "fvs-alpha-delta", "vc-alpha", "regular-fvs", "vc-delta")


def solve_instance(instance, algorithm="auto", k=None, timeout=None):
    """Solve a dict returned by read_instance / load_instance / gen_*."""
    return solve(instance["n"], instance["edges"], instance["labels"], algorithm, k, timeout)


__all__ = [
    "ALGORITHMS",
    "InputError",
    "gen_3partition",
    "gen_circulant",
    "gen_semimagic",
    "load_instance",
    "parameters",
    "random_instance",
    "read_instance",
    "solve",
    "solve_instance",
    "verify",
]
