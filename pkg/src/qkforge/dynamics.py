"""Exhaustive functional-graph analysis of the map x -> k(x + 1/x) on the
projective line over a small finite field.

The graph has p^n + 1 nodes: the point at infinity (node 0, always a fixed
point since both 0 and infinity map there) followed by the field elements in
ascending base-p digit order (node 1 + j holds the element with index j).
Every node has exactly one outgoing edge, so components consist of one cycle
with reversed trees hanging off the periodic nodes.

Component statistics capture the cycle length, the maximum distance of any
node from the cycle, and whether the hanging trees form perfect reversed
binary trees: away from the two ramified targets (the images 2k and -2k of
the critical points 1 and -1, which contribute a single doubled preimage)
every node has either zero or two preimages, each periodic node roots
exactly one tree, and all leaves sit at the component's full depth.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .config import field_cap
from .errors import InternalConsistencyError, ResourceCapError, UsageError
from .extfield import ExtField, FqElem, batch_inverse
from .ffpoly import Poly, is_irreducible, is_prime, smallest_irreducible
from .qk import INFINITY

_INV_CHUNK = 4096


# ---------------------------------------------------------------------------
# graph construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FunctionalGraph:
    """Successor table of x -> k(x + 1/x) on the p^n + 1 projective points."""

    p: int
    n: int
    k: int
    modulus: Poly
    successors: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.successors)

    @cached_property
    def field(self) -> ExtField:
        return ExtField(self.modulus, assume_irreducible=True)

    def element_index(self, x) -> int:
        """Node index of a field element or INFINITY."""
        if x is INFINITY:
            return 0
        if not isinstance(x, FqElem):
            raise UsageError(f"expected a field element or INFINITY, got {type(x).__name__}")
        return 1 + self.field.index_of(x)

    def element_at(self, i: int):
        """Inverse of element_index."""
        if not 0 <= i < self.size:
            raise UsageError(f"node index {i} out of range [0, {self.size})")
        if i == 0:
            return INFINITY
        return self.field.from_index(i - 1)

    def node_name(self, i: int) -> str:
        """Canonical node name: "inf" or the element's digits, ascending."""
        if i == 0:
            return "inf"
        if self.n == 1:
            return str(i - 1)
        x = self.field.from_index(i - 1)
        return ",".join(str(d) for d in x.rep)


def _check_size_cap(p: int, n: int) -> int:
    size = p**n + 1
    limit = field_cap(None)
    if size > limit:
        raise ResourceCapError(
            f"graph on {size} nodes exceeds the configured cap {limit}; "
            "raise QKFORGE_CAP to scan larger fields"
        )
    return size


def _resolve_modulus(p: int, n: int, modulus: Optional[Poly]) -> Poly:
    if modulus is None:
        return smallest_irreducible(p, n)
    if modulus.p != p:
        raise UsageError(f"modulus is over F_{modulus.p}, expected F_{p}")
    if modulus.degree != n:
        raise UsageError(f"modulus has degree {modulus.degree}, expected {n}")
    if not is_irreducible(modulus):
        raise UsageError("modulus must be irreducible")
    return modulus.monic()


def build_graph(p: int, n: int, k: int, modulus: Optional[Poly] = None) -> FunctionalGraph:
    """Tabulate the successor of every projective point under x -> k(x + 1/x).

    Node 0 is infinity; node 1 + j is the field element with canonical index
    j.  Both 0 and infinity map to infinity.  Fields larger than the
    configured cap are refused.
    """
    if not is_prime(p):
        raise UsageError(f"p={p} is not prime")
    if n < 1:
        raise UsageError("n must be >= 1")
    _check_size_cap(p, n)
    k = k % p
    if k == 0:
        raise UsageError("the multiplier k must be nonzero mod p")
    modulus = _resolve_modulus(p, n, modulus)

    if n == 1:
        successors = _build_prime_field(p, k)
    else:
        successors = _build_extension_field(p, n, k, modulus)
    return FunctionalGraph(p=p, n=n, k=k, modulus=modulus, successors=successors)


def _build_prime_field(p: int, k: int) -> tuple[int, ...]:
    # inverse table: inv[i] = -(p // i) * inv[p % i] mod p
    inv = [0] * p
    if p > 1:
        inv[1 % p] = 1 % p
    for i in range(2, p):
        inv[i] = (-(p // i) * inv[p % i]) % p
    succ = [0] * (p + 1)
    succ[0] = 0  # infinity is fixed
    succ[1] = 0  # the element 0 maps to infinity
    for x in range(1, p):
        succ[1 + x] = 1 + (k * (x + inv[x])) % p
    return tuple(succ)


def _build_extension_field(p: int, n: int, k: int, modulus: Poly) -> tuple[int, ...]:
    field = ExtField(modulus, assume_irreducible=True)
    q = field.q
    kf = field.from_int(k)
    succ = [0] * (q + 1)
    succ[0] = 0
    succ[1] = 0  # from_index(0) is the zero element
    for lo in range(1, q, _INV_CHUNK):
        hi = min(lo + _INV_CHUNK, q)
        xs = [field.from_index(j) for j in range(lo, hi)]
        invs = batch_inverse(xs)
        for j, x, xi in zip(range(lo, hi), xs, invs):
            succ[1 + j] = 1 + field.index_of(kf * (x + xi))
    return tuple(succ)


# ---------------------------------------------------------------------------
# component decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComponentStats:
    """Shape summary of one connected component."""

    cycle_length: int
    tree_depth: int
    node_count: int
    binary_shape_ok: bool

    def __post_init__(self) -> None:
        if self.cycle_length < 1:
            raise InternalConsistencyError("every component contains a cycle")
        if self.node_count < self.cycle_length:
            raise InternalConsistencyError("component smaller than its cycle")


def _analyze(successors) -> tuple[list[bool], list[int], list[int], int]:
    """Single pass over a successor table.

    Returns (periodic, distance_to_cycle, component_id, component_count);
    component ids are assigned in order of each component's smallest node.
    """
    size = len(successors)
    state = [0] * size  # 0 = new, 1 = on current path, 2 = finished
    periodic = [False] * size
    dist = [0] * size
    comp = [-1] * size
    path_pos = [0] * size
    ncomp = 0
    for start in range(size):
        if state[start] != 0:
            continue
        path = []
        x = start
        while state[x] == 0:
            state[x] = 1
            path_pos[x] = len(path)
            path.append(x)
            x = successors[x]
        if state[x] == 1:
            # new cycle discovered within the current path
            cid = ncomp
            ncomp += 1
            for y in path[path_pos[x]:]:
                periodic[y] = True
                comp[y] = cid
                state[y] = 2
            tail = path[: path_pos[x]]
        else:
            cid = comp[x]
            tail = path
        for y in reversed(tail):
            comp[y] = cid
            dist[y] = dist[successors[y]] + 1
            state[y] = 2
    return periodic, dist, comp, ncomp


def distances_to_cycle(graph: FunctionalGraph) -> tuple[int, ...]:
    """Distance of every node from the cycle of its component (0 = periodic)."""
    return tuple(_analyze(graph.successors)[1])


def component_labels(graph: FunctionalGraph) -> tuple[int, ...]:
    """Component id of every node; ids follow each component's smallest node,
    so the component of infinity is always 0."""
    return tuple(_analyze(graph.successors)[2])


def _ramified_nodes(graph: FunctionalGraph) -> set[int]:
    """Nodes holding the two critical images 2k and -2k; these are the only
    points with a doubled (hence single) preimage."""
    field = graph.field
    return {
        1 + field.index_of(field.from_int(2 * graph.k)),
        1 + field.index_of(field.from_int(-2 * graph.k)),
    }


def component_stats(graph: FunctionalGraph) -> list[ComponentStats]:
    """Decompose the graph into components and summarize each one.

    binary_shape_ok reports whether the trees hanging off the cycle are
    perfect reversed binary trees: every periodic node feeds exactly one
    tree (none only at a ramified target), every internal tree node has two
    preimages (one only at a ramified target), and all leaves sit at the
    component's full depth.
    """
    succ = graph.successors
    periodic, dist, comp, ncomp = _analyze(succ)
    size = len(succ)

    pre_total = [0] * size
    pre_tree = [0] * size  # preimages that are themselves non-periodic
    for x in range(size):
        y = succ[x]
        pre_total[y] += 1
        if not periodic[x]:
            pre_tree[y] += 1

    ramified = _ramified_nodes(graph)
    cycle_len = [0] * ncomp
    depth = [0] * ncomp
    count = [0] * ncomp
    shape_ok = [True] * ncomp

    for x in range(size):
        c = comp[x]
        count[c] += 1
        if periodic[x]:
            cycle_len[c] += 1
            if pre_tree[x] != 1 and not (pre_tree[x] == 0 and x in ramified):
                shape_ok[c] = False
        else:
            if dist[x] > depth[c]:
                depth[c] = dist[x]
            if pre_total[x] not in (0, 2) and not (
                pre_total[x] == 1 and x in ramified
            ):
                shape_ok[c] = False

    # leaves must sit at the component's full depth (perfect trees)
    for x in range(size):
        if not periodic[x] and pre_total[x] == 0 and dist[x] != depth[comp[x]]:
            shape_ok[comp[x]] = False

    return [
        ComponentStats(
            cycle_length=cycle_len[c],
            tree_depth=depth[c],
            node_count=count[c],
            binary_shape_ok=shape_ok[c],
        )
        for c in range(ncomp)
    ]


# ---------------------------------------------------------------------------
# the k vs -k comparison
# ---------------------------------------------------------------------------


def check_lemma_kk(
    p: int, n: int, k: int, r_max: int, modulus: Optional[Poly] = None
) -> bool:
    """Compare the maps with multipliers k and -k over one field.

    True iff (1) for every point and every r <= r_max the 2r-th iterates of
    the two maps agree, and (2) whenever the k-map reaches a periodic point
    after t steps, the (-k)-map is already periodic after t steps as well
    (equivalently: no point sits farther from its cycle under -k than under
    k).  r_max = 0 checks nothing and is trivially true.
    """
    if r_max < 0:
        raise UsageError("r_max must be >= 0")
    if r_max == 0:
        return True
    modulus = _resolve_modulus(p, n, modulus) if modulus is not None else None
    g_pos = build_graph(p, n, k, modulus)
    g_neg = build_graph(p, n, -k, g_pos.modulus)
    s_pos = g_pos.successors
    s_neg = g_neg.successors
    size = len(s_pos)

    double_pos = [s_pos[s_pos[x]] for x in range(size)]
    double_neg = [s_neg[s_neg[x]] for x in range(size)]
    iter_pos = list(range(size))
    iter_neg = list(range(size))
    for _ in range(r_max):
        iter_pos = [double_pos[x] for x in iter_pos]
        iter_neg = [double_neg[x] for x in iter_neg]
        if iter_pos != iter_neg:
            return False

    tails_pos = _analyze(s_pos)[1]
    tails_neg = _analyze(s_neg)[1]
    return all(tn <= tp for tp, tn in zip(tails_pos, tails_neg))


# ---------------------------------------------------------------------------
# DOT export
# ---------------------------------------------------------------------------


def _node_label(graph: FunctionalGraph, i: int) -> str:
    if i == 0:
        return "inf"
    if graph.n == 1:
        return str(i - 1)
    digits = graph.field.from_index(i - 1).rep
    terms = []
    for e, d in enumerate(digits):
        if d == 0:
            continue
        if e == 0:
            terms.append(str(d))
        elif e == 1:
            terms.append("a" if d == 1 else f"{d}a")
        else:
            terms.append(f"a^{e}" if d == 1 else f"{d}a^{e}")
    return "+".join(terms) if terms else "0"


def export_dot(graph: FunctionalGraph, labels: bool = False) -> str:
    """Render the graph as deterministic DOT text.

    Nodes are named by their canonical representatives ("inf" for infinity)
    and emitted in index order, then one edge per node in the same order.
    With labels=True each node carries a human-readable label attribute.
    """
    lines = ["digraph qkforge {"]
    for i in range(graph.size):
        name = graph.node_name(i)
        if labels:
            lines.append(f'  "{name}" [label="{_node_label(graph, i)}"];')
        else:
            lines.append(f'  "{name}";')
    for i in range(graph.size):
        src = graph.node_name(i)
        dst = graph.node_name(graph.successors[i])
        lines.append(f'  "{src}" -> "{dst}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
