"""Finite bounded lattices and ortholattices with exhaustive law checkers.

Elements are dense integer ids ``0..n-1``.  The order relation and the
meet/join tables are stored as read-only numpy arrays, computed once at
construction; every checker is an exhaustive vectorized scan that reports
the lexicographically first witness when a law fails.
"""

from dataclasses import dataclass, field

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import DiGraphMatcher

from .errors import BadBounds, NotALattice, NotAnOrtholattice, NotAPoset, check_size


def _frozen(array, dtype):
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Verdict:
    """Outcome of a law check.  Truthy iff the law holds."""

    law: str
    ok: bool
    witness: tuple = None
    detail: str = ""

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {
            "law": self.law,
            "ok": self.ok,
            "witness": None if self.witness is None else list(self.witness),
            "detail": self.detail,
        }


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    """A finite bounded lattice.  Use :func:`build_lattice` to construct one
    from an order relation; the constructor itself trusts its tables."""

    leq: np.ndarray
    bottom: int
    top: int
    meet: np.ndarray
    join: np.ndarray
    labels: tuple = field(default=None)

    @property
    def n(self):
        return self.leq.shape[0]

    def label(self, x):
        return self.labels[x] if self.labels else str(x)

    def __eq__(self, other):
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return (
            self.n == other.n
            and self.bottom == other.bottom
            and self.top == other.top
            and np.array_equal(self.leq, other.leq)
        )

    def __hash__(self):
        return hash((self.n, self.bottom, self.top, self.leq.tobytes()))

    def __repr__(self):
        return f"FiniteLattice(n={self.n}, bottom={self.bottom}, top={self.top})"


def _meet_join_tables(leq):
    n = leq.shape[0]
    down = leq.sum(axis=0)  # down[x] = |{z : z <= x}|
    up = leq.sum(axis=1)
    meet = np.empty((n, n), dtype=np.int64)
    join = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        lower = leq[:, x][:, None] & leq  # lower[z, y]: z <= x and z <= y
        g = np.argmax(np.where(lower, down[:, None] + 1, 0), axis=0)
        bad = (lower & ~leq[:, g]).any(axis=0) | ~lower.any(axis=0)
        if bad.any():
            y = int(np.flatnonzero(bad)[0])
            raise NotALattice(f"elements {x} and {y} have no greatest lower bound")
        meet[x] = g
        upper = leq[x, :][:, None] & leq.T  # upper[z, y]: x <= z and y <= z
        h = np.argmax(np.where(upper, up[:, None] + 1, 0), axis=0)
        bad = (upper & ~leq.T[:, h]).any(axis=0) | ~upper.any(axis=0)
        if bad.any():
            y = int(np.flatnonzero(bad)[0])
            raise NotALattice(f"elements {x} and {y} have no least upper bound")
        join[x] = h
    return meet, join


def build_lattice(n, leq, bottom, top, labels=None):
    """Validate a partial order and compute its meet and join tables.

    Raises NotAPoset, BadBounds or NotALattice when the input is not a
    bounded lattice order on ``0..n-1``.
    """
    check_size(n)
    rel = np.asarray(leq, dtype=bool)
    if rel.shape != (n, n):
        raise NotAPoset(f"order relation has shape {rel.shape}, expected {(n, n)}")
    if not (0 <= bottom < n and 0 <= top < n):
        raise BadBounds("bottom/top out of range")
    if bottom == top:
        raise BadBounds("bottom and top coincide; the smallest lattice is the 2-chain")
    if not rel.diagonal().all():
        x = int(np.flatnonzero(~rel.diagonal())[0])
        raise NotAPoset(f"not reflexive at {x}")
    anti = rel & rel.T & ~np.eye(n, dtype=bool)
    if anti.any():
        x, y = map(int, np.argwhere(anti)[0])
        raise NotAPoset(f"not antisymmetric: {x} <= {y} <= {x}")
    steps = (rel.astype(np.int64) @ rel.astype(np.int64)) > 0
    if (steps & ~rel).any():
        x, y = map(int, np.argwhere(steps & ~rel)[0])
        raise NotAPoset(f"not transitive: {x} <= z <= {y} but not {x} <= {y}")
    if not rel[bottom].all() or not rel[:, top].all():
        raise BadBounds("declared bottom/top are not extremal")
    meet, join = _meet_join_tables(rel)
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != n:
            raise NotAPoset(f"{len(labels)} labels for {n} elements")
    return FiniteLattice(
        _frozen(rel, bool), int(bottom), int(top),
        _frozen(meet, np.int64), _frozen(join, np.int64), labels,
    )


def lattice_from_tables(leq, bottom, top, meet, join, labels=None):
    """Wrap precomputed tables without validation (callers own correctness)."""
    check_size(len(leq))
    return FiniteLattice(
        _frozen(leq, bool), int(bottom), int(top),
        _frozen(meet, np.int64), _frozen(join, np.int64),
        None if labels is None else tuple(labels),
    )


def _first(mask):
    return tuple(int(i) for i in np.argwhere(mask)[0])


def check_lattice_laws(L):
    """Commutativity, associativity, idempotence and absorption, exhaustively."""
    M, J = L.meet, L.join
    idx = np.arange(L.n)
    for name, table in (("meet", M), ("join", J)):
        if (table != table.T).any():
            return Verdict("lattice", False, _first(table != table.T), f"{name} not commutative")
        if (table[idx, idx] != idx).any():
            x = int(np.flatnonzero(table[idx, idx] != idx)[0])
            return Verdict("lattice", False, (x,), f"{name} not idempotent")
        # (x.y).z vs x.(y.z)
        left = table[table[:, :, None], idx[None, None, :]]
        right = table[idx[:, None, None], table[None, :, :]]
        if (left != right).any():
            return Verdict("lattice", False, _first(left != right), f"{name} not associative")
    absorb_mj = M[idx[:, None], J] != idx[:, None]  # x ^ (x v y) = x
    if absorb_mj.any():
        return Verdict("lattice", False, _first(absorb_mj), "meet does not absorb join")
    absorb_jm = J[idx[:, None], M] != idx[:, None]
    if absorb_jm.any():
        return Verdict("lattice", False, _first(absorb_jm), "join does not absorb meet")
    return Verdict("lattice", True)


def is_distributive(L):
    """Scan all ordered triples for a /\\ (b \\/ c) != (a /\\ b) \\/ (a /\\ c)."""
    M, J = L.meet, L.join
    idx = np.arange(L.n)
    lhs = M[idx[:, None, None], J[None, :, :]]
    rhs = J[M[:, :, None], M[:, None, :]]
    bad = lhs != rhs
    if bad.any():
        a, b, c = _first(bad)
        return Verdict(
            "distributive", False, (a, b, c),
            f"{a}^({b}v{c}) = {lhs[a, b, c]} but ({a}^{b})v({a}^{c}) = {rhs[a, b, c]}",
        )
    return Verdict("distributive", True)


def is_modular(L):
    """Scan triples x <= z for x \\/ (y /\\ z) != (x \\/ y) /\\ z."""
    M, J = L.meet, L.join
    idx = np.arange(L.n)
    lhs = J[idx[:, None, None], M[None, :, :]]
    rhs = M[J[:, :, None], idx[None, None, :]]
    bad = (lhs != rhs) & L.leq[:, None, :]
    if bad.any():
        x, y, z = _first(bad)
        return Verdict(
            "modular", False, (x, y, z),
            f"{x} <= {z} but {x}v({y}^{z}) = {lhs[x, y, z]} != ({x}v{y})^{z} = {rhs[x, y, z]}",
        )
    return Verdict("modular", True)


def is_ortholattice(L, ortho):
    """Check that ``ortho`` is an involutive, order-reversing complementation."""
    n = L.n
    o = np.asarray(ortho, dtype=np.int64)
    if o.shape != (n,) or (o < 0).any() or (o >= n).any():
        return Verdict("ortholattice", False, None, "ortho is not a total self-map")
    idx = np.arange(n)
    if (o[o] != idx).any():
        x = int(np.flatnonzero(o[o] != idx)[0])
        return Verdict("ortholattice", False, (x,), f"involution fails: {x}'' = {o[o[x]]}")
    # leq[x, y] must imply leq[o[y], o[x]]
    bad = L.leq & ~L.leq[np.ix_(o, o)].T
    if bad.any():
        x, y = _first(bad)
        return Verdict("ortholattice", False, (x, y), f"order reversal fails: {x} <= {y} but not {y}' <= {x}'")
    bad_meet = L.meet[idx, o] != L.bottom
    if bad_meet.any():
        x = int(np.flatnonzero(bad_meet)[0])
        return Verdict("ortholattice", False, (x,), f"complement law fails: {x} ^ {x}' = {L.meet[x, o[x]]}")
    bad_join = L.join[idx, o] != L.top
    if bad_join.any():
        x = int(np.flatnonzero(bad_join)[0])
        return Verdict("ortholattice", False, (x,), f"complement law fails: {x} v {x}' = {L.join[x, o[x]]}")
    return Verdict("ortholattice", True)


@dataclass(frozen=True, eq=False)
class FiniteOrthoLattice:
    """A finite lattice together with a validated orthocomplementation."""

    lattice: FiniteLattice
    ortho: tuple

    def __post_init__(self):
        object.__setattr__(self, "ortho", tuple(int(x) for x in self.ortho))
        verdict = is_ortholattice(self.lattice, self.ortho)
        if not verdict:
            raise NotAnOrtholattice(verdict.detail)

    n = property(lambda self: self.lattice.n)
    leq = property(lambda self: self.lattice.leq)
    meet = property(lambda self: self.lattice.meet)
    join = property(lambda self: self.lattice.join)
    bottom = property(lambda self: self.lattice.bottom)
    top = property(lambda self: self.lattice.top)
    labels = property(lambda self: self.lattice.labels)

    def label(self, x):
        return self.lattice.label(x)

    def __eq__(self, other):
        if not isinstance(other, FiniteOrthoLattice):
            return NotImplemented
        return self.lattice == other.lattice and self.ortho == other.ortho

    def __hash__(self):
        return hash((self.lattice, self.ortho))

    def __repr__(self):
        return f"FiniteOrthoLattice(n={self.n})"


def is_orthomodular(O):
    """For every x <= y check y = x \\/ (x' /\\ y)."""
    o = np.asarray(O.ortho)
    idx = np.arange(O.n)
    rhs = O.join[idx[:, None], O.meet[o[:, None], idx[None, :]]]
    bad = O.leq & (rhs != idx[None, :])
    if bad.any():
        x, y = _first(bad)
        return Verdict(
            "orthomodular", False, (x, y),
            f"{x} <= {y} but {x} v ({x}' ^ {y}) = {rhs[x, y]}",
        )
    return Verdict("orthomodular", True)


def _as_lattice(L):
    return L.lattice if isinstance(L, FiniteOrthoLattice) else L


def hasse_covers(L):
    """Sorted list of cover pairs (x, y): x < y with nothing strictly between."""
    leq = _as_lattice(L).leq
    strict = leq & ~np.eye(leq.shape[0], dtype=bool)
    s = strict.astype(np.int64)
    covers = strict & ~((s @ s) > 0)
    return [tuple(int(v) for v in p) for p in np.argwhere(covers)]


def closure_of_covers(n, covers):
    """Reflexive-transitive closure of a cover relation, as a boolean matrix."""
    g = nx.DiGraph()
    g.add_nodes_from(range(n))
    g.add_edges_from(covers)
    out = np.eye(n, dtype=bool)
    for x in range(n):
        for y in nx.descendants(g, x):
            out[x, y] = True
    return out


def ranks(L):
    """Length of the longest cover chain from bottom to each element."""
    lat = _as_lattice(L)
    rank = [0] * lat.n
    by_height = sorted(range(lat.n), key=lambda x: int(lat.leq[:, x].sum()))
    below = {y: [] for y in range(lat.n)}
    for x, y in hasse_covers(lat):
        below[y].append(x)
    for y in by_height:
        if below[y]:
            rank[y] = 1 + max(rank[x] for x in below[y])
    return rank


def to_dot(L, name="L"):
    """Graphviz digraph of the Hasse diagram, bottom on rank 0."""
    lat = _as_lattice(L)
    rank = ranks(lat)
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for x in range(lat.n):
        lines.append(f'  {x} [label="{lat.label(x)}"];')
    for r in sorted(set(rank)):
        members = " ".join(str(x) for x in range(lat.n) if rank[x] == r)
        lines.append(f"  {{ rank=same; {members}; }}")
    for x, y in hasse_covers(lat):
        lines.append(f"  {x} -> {y};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _iso_graph(L):
    g = nx.DiGraph()
    lat = _as_lattice(L)
    g.add_nodes_from(range(lat.n))
    g.add_edges_from(hasse_covers(lat), kind="cover")
    if isinstance(L, FiniteOrthoLattice):
        for x, y in enumerate(L.ortho):
            if g.has_edge(x, y):
                g[x][y]["kind"] = "cover+ortho"
            else:
                g.add_edge(x, y, kind="ortho")
    return g


def find_isomorphism(A, B):
    """An order (and, for ortholattices, ortho) isomorphism A -> B as a
    tuple map, or None.  Both arguments must be of the same kind."""
    if type(A) is not type(B) or A.n != B.n:
        return None
    ga, gb = _iso_graph(A), _iso_graph(B)
    if ga.number_of_edges() != gb.number_of_edges():
        return None
    if sorted(d for _, d in ga.degree()) != sorted(d for _, d in gb.degree()):
        return None
    matcher = DiGraphMatcher(ga, gb, edge_match=lambda e1, e2: e1["kind"] == e2["kind"])
    for mapping in matcher.isomorphisms_iter():
        return tuple(mapping[x] for x in range(A.n))
    return None


def is_isomorphic(A, B):
    return find_isomorphism(A, B) is not None


# Small named lattices used as fixtures and CLI builtins.

def chain(n):
    leq = [[i <= j for j in range(n)] for i in range(n)]
    return build_lattice(n, leq, 0, n - 1)


def diamond():
    """0 < a, b < 1 with a, b incomparable."""
    rel = {(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)}
    leq = [[i == j or (i, j) in rel for j in range(4)] for i in range(4)]
    return build_lattice(4, leq, 0, 3, labels=("0", "a", "b", "1"))


def pentagon():
    """N5: 0 < a < c < 1 and 0 < b < 1, b incomparable to a and c."""
    rel = {(0, 1), (0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (2, 4), (3, 4)}
    leq = [[i == j or (i, j) in rel for j in range(5)] for i in range(5)]
    return build_lattice(5, leq, 0, 4, labels=("0", "a", "b", "c", "1"))


def hexagon():
    """Two incomparable 2-chains between the bounds: 0 < a < b < 1, 0 < b' < a' < 1."""
    rel = {(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 5), (2, 5),
           (3, 4), (3, 5), (4, 5)}
    leq = [[i == j or (i, j) in rel for j in range(6)] for i in range(6)]
    return build_lattice(6, leq, 0, 5, labels=("0", "a", "b", "b'", "a'", "1"))


def benzene():
    """O6: the hexagon with a <-> a', b <-> b'.  Ortholattice, not orthomodular."""
    return FiniteOrthoLattice(hexagon(), (5, 4, 3, 2, 1, 0))
