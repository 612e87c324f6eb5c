"""Concrete monotone systems: vertex cover and 3-hitting set.

Graphs use the DIMACS edge format externally (1-based vertices) and 0-based
contiguous vertex ids internally:

    c optional comment lines
    p edge <n> <m>
    e <u> <v>          (m of these, 1 <= u,v <= n, u != v)

Hypergraphs use the analogous format with a ``p hs3 <n> <m>`` header and
``s <a> [b] [c]`` lines holding 1-3 distinct 1-based elements.

Both extension oracles are deterministic.  The exact vertex-cover oracle is
plain two-way edge branching (base 2 per unit of budget); the matching
oracle returns both endpoints of a greedy maximal matching, a polynomial
2-approximate extension exercising the (alpha=2, c=1) corner.  All
tie-breaking is lexicographic (first uncovered edge or set, elements in
ascending order) so identical inputs give identical outputs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .engine import ExtensionOracle, MonotoneInstance

__all__ = [
    "ParseError",
    "Graph",
    "Hypergraph3",
    "vc_system",
    "vc_extend_exact",
    "vc_extend_matching",
    "vc_exact_oracle",
    "vc_matching_oracle",
    "hs3_system",
    "hs3_extend_exact",
    "hs3_exact_oracle",
    "parse_graph",
    "parse_hypergraph",
    "gen_gnp",
    "gen_planted_vc",
]


class ParseError(ValueError):
    """Malformed instance text; message carries the 1-based line number."""

    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; edges normalized to u < v, deduplicated.

    Edge order (first occurrence) is preserved: the matching oracle scans it.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"vertex count must be >= 0, got {self.n}")
        seen = set()
        normalized = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop edge ({u}, {v}) not allowed")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            e = (u, v) if u < v else (v, u)
            if e not in seen:
                seen.add(e)
                normalized.append(e)
        object.__setattr__(self, "edges", tuple(normalized))


@dataclass(frozen=True)
class Hypergraph3:
    """Set system with member sets of size 1-3, deduplicated, sorted."""

    n: int
    sets: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"universe size must be >= 0, got {self.n}")
        seen = set()
        normalized = []
        for s in self.sets:
            t = tuple(sorted(s))
            if not 1 <= len(t) <= 3 or len(set(t)) != len(t):
                raise ValueError(f"set {s} must have 1-3 distinct elements")
            if not all(0 <= v < self.n for v in t):
                raise ValueError(f"set {s} out of range for n={self.n}")
            if t not in seen:
                seen.add(t)
                normalized.append(t)
        object.__setattr__(self, "sets", tuple(normalized))


# ---------------------------------------------------------------- vertex cover


def vc_system(g: Graph, label: Optional[str] = None) -> MonotoneInstance:
    """Monotone system whose members are the vertex covers of g."""

    def membership(s: frozenset) -> bool:
        return all(u in s or v in s for u, v in g.edges)

    return MonotoneInstance(
        n=g.n,
        membership=membership,
        label=label or f"vc(n={g.n},m={len(g.edges)})",
    )


def vc_extend_exact(g: Graph, x: frozenset, k: int) -> Optional[frozenset]:
    """Cover of G - x of size <= k via two-way edge branching, else None.

    Branches on the lexicographically first uncovered edge, lower endpoint
    first, to depth k: complete for vertex cover, so None means no such
    cover exists.
    """
    if k < 0:
        return None
    edges = sorted(e for e in g.edges if e[0] not in x and e[1] not in x)

    def branch(chosen: set, budget: int) -> Optional[frozenset]:
        uncovered = next(
            (e for e in edges if e[0] not in chosen and e[1] not in chosen), None
        )
        if uncovered is None:
            return frozenset(chosen)
        if budget == 0:
            return None
        for v in uncovered:
            chosen.add(v)
            result = branch(chosen, budget - 1)
            chosen.discard(v)
            if result is not None:
                return result
        return None

    return branch(set(), k)


def vc_extend_matching(g: Graph, x: frozenset, k: int) -> Optional[frozenset]:
    """Both endpoints of a greedy maximal matching of G - x; None if it has
    more than k edges (then no cover of size <= k exists either, since any
    cover hits each matched edge)."""
    if k < 0:
        return None
    matched: set = set()
    size = 0
    for u, v in g.edges:
        if u in x or v in x or u in matched or v in matched:
            continue
        matched.update((u, v))
        size += 1
    if size > k:
        return None
    return frozenset(matched)


def vc_exact_oracle(g: Graph) -> ExtensionOracle:
    return ExtensionOracle(
        alpha=1.0,
        c=2.0,
        success_prob=1.0,
        extend=lambda x, k, rng: vc_extend_exact(g, x, k),
        name="vc-exact",
    )


def vc_matching_oracle(g: Graph) -> ExtensionOracle:
    return ExtensionOracle(
        alpha=2.0,
        c=1.0,
        success_prob=1.0,
        extend=lambda x, k, rng: vc_extend_matching(g, x, k),
        name="vc-matching",
    )


# --------------------------------------------------------------- 3-hitting set


def hs3_system(h: Hypergraph3, label: Optional[str] = None) -> MonotoneInstance:
    """Monotone system whose members intersect every set of h."""

    def membership(s: frozenset) -> bool:
        return all(any(v in s for v in t) for t in h.sets)

    return MonotoneInstance(
        n=h.n,
        membership=membership,
        label=label or f"hs3(n={h.n},m={len(h.sets)})",
    )


def hs3_extend_exact(h: Hypergraph3, x: frozenset, k: int) -> Optional[frozenset]:
    """Hitting set of the sets missed by x, of size <= k, via <=3-way
    branching on the first unhit set (elements in ascending order)."""
    if k < 0:
        return None
    sets = [t for t in h.sets if not any(v in x for v in t)]

    def branch(chosen: set, budget: int) -> Optional[frozenset]:
        unhit = next((t for t in sets if not any(v in chosen for v in t)), None)
        if unhit is None:
            return frozenset(chosen)
        if budget == 0:
            return None
        for v in unhit:
            chosen.add(v)
            result = branch(chosen, budget - 1)
            chosen.discard(v)
            if result is not None:
                return result
        return None

    return branch(set(), k)


def hs3_exact_oracle(h: Hypergraph3) -> ExtensionOracle:
    return ExtensionOracle(
        alpha=1.0,
        c=3.0,
        success_prob=1.0,
        extend=lambda x, k, rng: hs3_extend_exact(h, x, k),
        name="hs3-exact",
    )


# -------------------------------------------------------------------- parsing


def _parse_header(fields, line_no, expected_kind):
    if len(fields) != 4 or fields[1] != expected_kind:
        raise ParseError(line_no, f"expected 'p {expected_kind} <n> <m>'")
    try:
        n, m = int(fields[2]), int(fields[3])
    except ValueError:
        raise ParseError(line_no, f"non-integer counts in {' '.join(fields)!r}") from None
    if n < 0 or m < 0:
        raise ParseError(line_no, "counts must be non-negative")
    return n, m


def _parse_lines(text, kind, item_tag, parse_item):
    header = None
    items = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if header is not None:
                raise ParseError(line_no, "duplicate problem header")
            header = _parse_header(fields, line_no, kind)
        elif fields[0] == item_tag:
            if header is None:
                raise ParseError(line_no, "data line before the problem header")
            items.append(parse_item(fields[1:], line_no, header[0]))
        else:
            raise ParseError(line_no, f"unrecognized line {raw!r}")
    if header is None:
        raise ParseError(1, "missing problem header")
    n, m = header
    if len(items) != m:
        raise ParseError(1, f"header declares {m} data lines, found {len(items)}")
    return n, items


def _parse_vertex(token, line_no, n):
    try:
        v = int(token)
    except ValueError:
        raise ParseError(line_no, f"non-integer vertex {token!r}") from None
    if not 1 <= v <= n:
        raise ParseError(line_no, f"vertex {v} outside 1..{n}")
    return v - 1


def parse_graph(text: str) -> Graph:
    """Strict DIMACS edge-format parser (see module docstring)."""

    def parse_edge(tokens, line_no, n):
        if len(tokens) != 2:
            raise ParseError(line_no, "edge lines take exactly two vertices")
        u, v = (_parse_vertex(t, line_no, n) for t in tokens)
        if u == v:
            raise ParseError(line_no, f"loop edge on vertex {u + 1}")
        return (u, v) if u < v else (v, u)

    n, edges = _parse_lines(text, "edge", "e", parse_edge)
    return Graph(n=n, edges=tuple(edges))


def parse_hypergraph(text: str) -> Hypergraph3:
    """Strict parser for the hs3 format (see module docstring)."""

    def parse_set(tokens, line_no, n):
        if not 1 <= len(tokens) <= 3:
            raise ParseError(line_no, "set lines take one to three elements")
        elems = tuple(sorted(_parse_vertex(t, line_no, n) for t in tokens))
        if len(set(elems)) != len(elems):
            raise ParseError(line_no, "repeated element within a set")
        return elems

    n, sets = _parse_lines(text, "hs3", "s", parse_set)
    return Hypergraph3(n=n, sets=tuple(sets))


# ----------------------------------------------------------------- generators


def gen_gnp(n: int, p_edge: float, seed: int) -> Graph:
    """G(n, p): each of the C(n, 2) pairs drawn independently."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if not 0.0 <= p_edge <= 1.0:
        raise ValueError(f"p_edge must be in [0, 1], got {p_edge}")
    rng = random.Random(seed)
    edges = tuple((u, v) for u, v in combinations(range(n), 2) if rng.random() < p_edge)
    return Graph(n=n, edges=edges)


def gen_planted_vc(
    n: int, cover_size: int, extra_edges: int, seed: int
) -> tuple[Graph, frozenset]:
    """Random graph all of whose edges touch a planted vertex set.

    The planted set is therefore a cover, so the optimum is at most
    cover_size.  Returns (graph, planted).
    """
    if not 0 <= cover_size <= n:
        raise ValueError(f"cover_size must be in [0, n], got {cover_size}")
    rng = random.Random(seed)
    planted = frozenset(rng.sample(range(n), cover_size))
    candidates = [
        (u, v) for u, v in combinations(range(n), 2) if u in planted or v in planted
    ]
    if extra_edges < 0 or extra_edges > len(candidates):
        raise ValueError(
            f"extra_edges must be in [0, {len(candidates)}], got {extra_edges}"
        )
    edges = tuple(rng.sample(candidates, extra_edges))
    return Graph(n=n, edges=edges), planted
