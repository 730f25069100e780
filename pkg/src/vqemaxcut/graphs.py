"""Unweighted MaxCut instances.

Connected Erdos-Renyi generation, cut/cost evaluation, the exhaustive
brute-force optimum used as ground truth, and the on-disk edge-list format.

A partition is a plain length-n string of '0'/'1'; character ``v`` is the
side of node ``v``.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass

import numpy as np

from .errors import GenerationError, ParseError

MAX_BRUTE_FORCE_NODES = 30
DEFAULT_MAX_ATTEMPTS = 10_000

_MASK64 = (1 << 64) - 1
_CHUNK = 1 << 20


class SplitMix64:
    """SplitMix64: the deterministic 64-bit stream behind graph generation.

    One instance per generation call, seeded by value.  Each call to
    ``next_unit`` consumes exactly one 64-bit state step and returns the top
    53 bits as a float in [0, 1), so the stream is reproducible from the seed
    alone, in any language.
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_unit(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53


@dataclass(frozen=True)
class Graph:
    """Undirected unweighted graph on nodes 0..n-1.

    ``edges`` is a sorted tuple of (u, v) pairs with u < v; all weights are 1.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need at least one node, got n={self.n}")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
            if u > v:
                raise ValueError(f"edge ({u},{v}) not normalized (need u < v)")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
        if self.edges != tuple(sorted(self.edges)):
            raise ValueError("edges must be sorted")

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        """Build a Graph from any iterable of pairs, normalizing order."""
        canon = sorted((min(u, v), max(u, v)) for u, v in edges)
        return cls(n, tuple(canon))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = [False] * self.n
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        return count == self.n


@dataclass(frozen=True)
class Instance:
    """A MaxCut problem: a connected graph plus its brute-forced optimum."""

    graph: Graph
    instance_id: int
    optimal_cut: int

    def __post_init__(self):
        m = self.graph.edge_count
        if not self.graph.is_connected():
            raise ValueError(f"instance {self.instance_id}: graph is not connected")
        if not (-(-m // 2) <= self.optimal_cut <= m):
            raise ValueError(
                f"instance {self.instance_id}: optimal_cut={self.optimal_cut} "
                f"outside [ceil(m/2), m] = [{-(-m // 2)}, {m}]"
            )


def generate_erdos_renyi(
    n: int, p: float, seed: int, max_attempts: int = DEFAULT_MAX_ATTEMPTS
) -> Graph:
    """Sample a connected G(n, p) graph from the documented SplitMix64 stream.

    Each of the n(n-1)/2 pairs is tested in row-major order (0,1), (0,2), ...,
    (1,2), ...; the pair is an edge when the next stream value is < p.  A
    disconnected sample is discarded and the whole graph is redrawn from the
    continuing stream, which preserves the G(n, p) distribution conditioned
    on connectivity.  Identical (n, p, seed) always yields the identical
    edge set.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if not (0.0 < p <= 1.0):
        raise ValueError(f"edge probability must satisfy 0 < p <= 1, got {p}")
    rng = SplitMix64(seed)
    for _ in range(max_attempts):
        edges = [
            (u, v)
            for u in range(n - 1)
            for v in range(u + 1, n)
            if rng.next_unit() < p
        ]
        g = Graph(n, tuple(edges))
        if g.is_connected():
            return g
    raise GenerationError(
        f"no connected graph within {max_attempts} attempts for n={n}, p={p}, seed={seed}"
    )


def _check_partition(g: Graph, bits: str) -> None:
    if len(bits) != g.n:
        raise ValueError(f"partition length {len(bits)} != node count {g.n}")
    if any(c not in "01" for c in bits):
        raise ValueError(f"partition must be a binary string, got {bits!r}")


def cut_value(g: Graph, bits: str) -> int:
    """Number of edges whose endpoints fall on different sides."""
    _check_partition(g, bits)
    return sum(1 for u, v in g.edges if bits[u] != bits[v])


def cost(g: Graph, bits: str) -> int:
    """Minimization objective: -sum over edges of (x_u + x_v - 2 x_u x_v).

    Always equals -cut_value; kept as an independent term-by-term evaluation.
    """
    _check_partition(g, bits)
    total = 0
    for u, v in g.edges:
        xu = int(bits[u])
        xv = int(bits[v])
        total += xu + xv - 2 * xu * xv
    return -total


def complement(bits: str) -> str:
    """Flip every side; the cut value is invariant under this."""
    return "".join("1" if c == "0" else "0" for c in bits)


def brute_force_max_cut(g: Graph) -> tuple[int, str]:
    """Exhaustive MaxCut optimum with a deterministic witness.

    Scans the 2^(n-1) partitions with node 0 on side 0 (the other half is
    equivalent by global flip).  Returns the first maximizer in
    lexicographic partition-string order.
    """
    if g.n > MAX_BRUTE_FORCE_NODES:
        raise ValueError(
            f"brute force limited to n <= {MAX_BRUTE_FORCE_NODES}, got n={g.n}"
        )
    n = g.n
    # Partition string <-> integer: character v is bit (n-1-v), so ascending
    # integers enumerate strings in lexicographic order.
    shifts = [(np.uint64(n - 1 - u), np.uint64(n - 1 - v)) for u, v in g.edges]
    total = 1 << (n - 1)
    best_cut = -1
    best_mask = 0
    for start in range(0, total, _CHUNK):
        ks = np.arange(start, min(start + _CHUNK, total), dtype=np.uint64)
        acc = np.zeros(ks.shape, dtype=np.uint64)
        one = np.uint64(1)
        for su, sv in shifts:
            acc += ((ks >> su) ^ (ks >> sv)) & one
        j = int(np.argmax(acc))
        if int(acc[j]) > best_cut:
            best_cut = int(acc[j])
            best_mask = start + j
    witness = format(best_mask, f"0{n}b")
    return best_cut, witness


def graph_to_text(g: Graph) -> str:
    """Edge-list text: first line "n m", then one "u v" line per edge (u < v, sorted)."""
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines)


def graph_from_text(text: str) -> Graph:
    """Parse the edge-list format; errors name the offending 1-based line."""
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ParseError("line 1: expected header 'n m'")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(f"line 1: expected 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError(f"line 1: expected two integers, got {lines[0]!r}") from None
    if n < 1 or m < 0:
        raise ParseError(f"line 1: invalid sizes n={n}, m={m}")
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != m:
        raise ParseError(f"line 1: header declares {m} edges, file has {len(body)}")
    edges = []
    seen = set()
    for i, ln in enumerate(body, start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"line {i}: expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {i}: expected two integers, got {ln!r}") from None
        if u == v:
            raise ParseError(f"line {i}: self-loop ({u},{v})")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {i}: node out of range in ({u},{v}), n={n}")
        if u > v:
            raise ParseError(f"line {i}: expected u < v, got ({u},{v})")
        if (u, v) in seen:
            raise ParseError(f"line {i}: duplicate edge ({u},{v})")
        seen.add((u, v))
        edges.append((u, v))
    return Graph(n, tuple(sorted(edges)))


# --- instance persistence ---------------------------------------------------
#
# A directory of instances holds graph_<id>.txt files plus a manifest
# instances.csv with columns id,n,p,seed,edge_count,optimal_cut.  Instance
# seeds are seed_base + id, a namespace independent from optimizer run seeds.

MANIFEST_NAME = "instances.csv"
_MANIFEST_COLUMNS = ["id", "n", "p", "seed", "edge_count", "optimal_cut"]


def generate_instances(count: int, n: int, p: float, seed_base: int) -> list[Instance]:
    """Generate `count` connected instances with brute-forced optima."""
    if count < 1:
        raise ValueError(f"need count >= 1, got {count}")
    out = []
    for i in range(count):
        g = generate_erdos_renyi(n, p, seed_base + i)
        opt, _ = brute_force_max_cut(g)
        out.append(Instance(graph=g, instance_id=i, optimal_cut=opt))
    return out


def write_instance_dir(
    directory: str, instances: list[Instance], p: float, seed_base: int
) -> None:
    os.makedirs(directory, exist_ok=True)
    for inst in instances:
        path = os.path.join(directory, f"graph_{inst.instance_id}.txt")
        with open(path, "w") as fh:
            fh.write(graph_to_text(inst.graph) + "\n")
    with open(os.path.join(directory, MANIFEST_NAME), "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_MANIFEST_COLUMNS)
        for inst in instances:
            writer.writerow(
                [
                    inst.instance_id,
                    inst.graph.n,
                    repr(float(p)),
                    seed_base + inst.instance_id,
                    inst.graph.edge_count,
                    inst.optimal_cut,
                ]
            )


def read_instance_dir(directory: str) -> list[Instance]:
    manifest = os.path.join(directory, MANIFEST_NAME)
    if not os.path.exists(manifest):
        raise ParseError(f"line 0: missing manifest {manifest}")
    out = []
    with open(manifest, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != _MANIFEST_COLUMNS:
            raise ParseError(f"line 1: bad manifest header {header!r}")
        for row_no, row in enumerate(reader, start=2):
            if len(row) != len(_MANIFEST_COLUMNS):
                raise ParseError(f"line {row_no}: expected {len(_MANIFEST_COLUMNS)} cells")
            try:
                inst_id = int(row[0])
                n = int(row[1])
                edge_count = int(row[4])
                optimal_cut = int(row[5])
            except ValueError:
                raise ParseError(f"line {row_no}: non-numeric cell") from None
            path = os.path.join(directory, f"graph_{inst_id}.txt")
            try:
                with open(path) as gf:
                    g = graph_from_text(gf.read())
            except OSError as exc:
                raise ParseError(f"line {row_no}: cannot read {path}: {exc}") from None
            if g.n != n or g.edge_count != edge_count:
                raise ParseError(
                    f"line {row_no}: manifest says n={n}, m={edge_count}, "
                    f"file has n={g.n}, m={g.edge_count}"
                )
            out.append(Instance(graph=g, instance_id=inst_id, optimal_cut=optimal_cut))
    return out
