"""Shared oracles for the test suite.

Everything here is deliberately independent of the package implementation:
plain itertools enumeration, no package helpers, so the tests cross-check
rather than echo the code under test.
"""

from itertools import combinations


def is_cover(edges, s) -> bool:
    return all(u in s or v in s for u, v in edges)


def exhaustive_vc_opt(graph) -> int:
    """Minimum vertex cover size by size-increasing enumeration."""
    for k in range(graph.n + 1):
        for combo in combinations(range(graph.n), k):
            if is_cover(graph.edges, set(combo)):
                return k
    return graph.n


def exhaustive_vc_exists(graph, excluded, k) -> bool:
    """Whether the graph minus the excluded vertices has a cover of size <= k."""
    edges = [e for e in graph.edges if e[0] not in excluded and e[1] not in excluded]
    vertices = [v for v in range(graph.n) if v not in excluded]
    for size in range(min(k, len(vertices)) + 1):
        for combo in combinations(vertices, size):
            if is_cover(edges, set(combo)):
                return True
    return False


def hits_all(sets, s) -> bool:
    return all(any(v in s for v in t) for t in sets)


def exhaustive_hs_opt(hyper) -> int:
    """Minimum hitting set size by size-increasing enumeration."""
    for k in range(hyper.n + 1):
        for combo in combinations(range(hyper.n), k):
            if hits_all(hyper.sets, set(combo)):
                return k
    return hyper.n
