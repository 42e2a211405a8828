"""Gluing Boolean algebras along their bounds (0-1 pasting).

``glue(B1, B2)`` is the pushout of B1 <- 2 -> B2: the disjoint union of the
two algebras with only their bottoms and tops identified.  Proper elements
from different blocks are incomparable, so their meet is bottom and their
join is top, and complementation is taken blockwise.

Carrier ids are canonical: bottom is 0, then the proper elements of each
input in mask order, block by block, and top is last.
"""

from collections import OrderedDict
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .boolean import BooleanAlgebra, LatticeHom, compose, coproduct, enumerate_boolean_homs, powerset
from .errors import BadBlock, BadSpec, BlockCount, BlockMismatch, CoconeMismatch, check_size
from .lattice import FiniteOrthoLattice, is_distributive, is_orthomodular, lattice_from_tables


def horizontal_sum(parts):
    """0-1 pasting of ortholattices.

    Returns ``(carrier, embeddings)`` where ``embeddings[j]`` is the element
    map from ``parts[j]`` into the carrier.
    """
    if not parts:
        raise BadSpec("need at least one lattice to glue")
    propers = [[x for x in range(p.n) if x not in (p.bottom, p.top)] for p in parts]
    n = sum(len(pr) for pr in propers) + 2
    check_size(n, "glued lattice")
    bot, top = 0, n - 1

    embeddings = []
    offset = 1
    for p, pr in zip(parts, propers):
        emb = [0] * p.n
        emb[p.bottom], emb[p.top] = bot, top
        for i, x in enumerate(pr):
            emb[x] = offset + i
        offset += len(pr)
        embeddings.append(np.asarray(emb))

    ids = np.arange(n)
    leq = np.zeros((n, n), dtype=bool)
    leq[bot, :] = True
    leq[:, top] = True
    leq[ids, ids] = True
    meet = np.full((n, n), bot, dtype=np.int64)
    join = np.full((n, n), top, dtype=np.int64)
    ortho = np.zeros(n, dtype=np.int64)
    ortho[bot], ortho[top] = top, bot
    labels = ["0"] + [None] * (n - 2) + ["1"]
    for j, (p, emb) in enumerate(zip(parts, embeddings)):
        g = emb
        leq[np.ix_(g, g)] |= p.leq
        meet[np.ix_(g, g)] = g[p.meet]
        join[np.ix_(g, g)] = g[p.join]
        ortho[g] = g[np.asarray(p.ortho)]
        for x in propers[j]:
            labels[g[x]] = f"{j + 1}:{p.label(x)}"

    lat = lattice_from_tables(leq, bot, top, meet, join, labels)
    return FiniteOrthoLattice(lat, tuple(ortho.tolist())), [tuple(e.tolist()) for e in embeddings]


def _block_embedding(carrier, block):
    """Identify a block with P(k): returns (algebra, embedding hom) or raises BadBlock."""
    members = sorted(block)
    nonzero = [x for x in members if x != carrier.bottom]
    atoms = [
        a for a in nonzero
        if not any(b != a and carrier.leq[b, a] for b in nonzero)
    ]
    k = len(atoms)
    if len(members) != 2 ** k:
        raise BadBlock(f"block of size {len(members)} with {k} atoms is not Boolean")
    emb = []
    for mask in range(2 ** k):
        x = carrier.bottom
        for i, a in enumerate(atoms):
            if mask >> i & 1:
                x = int(carrier.join[x, a])
        emb.append(x)
    algebra = BooleanAlgebra(k)
    hom = LatticeHom(algebra.lattice, carrier, tuple(emb))
    if set(emb) != set(members) or not hom.is_ortho_hom:
        raise BadBlock(f"block {members} is not a Boolean subalgebra")
    return algebra, hom


@dataclass(frozen=True, eq=False)
class BlockedLattice:
    """An orthomodular lattice with designated Boolean blocks sharing its bounds."""

    carrier: FiniteOrthoLattice
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(x) for x in set(b))) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        c = self.carrier
        verdict = is_orthomodular(c)
        if not verdict:
            raise BadBlock(f"carrier is not orthomodular: {verdict.detail}")
        for b in blocks:
            if c.bottom not in b or c.top not in b:
                raise BadBlock(f"block {list(b)} does not contain the shared bounds")
            if any(not 0 <= x < c.n for x in b):
                raise BadBlock("block element out of range")
        self.block_algebras  # validates every block

    @cached_property
    def block_algebras(self):
        """One (BooleanAlgebra, embedding) per block, atoms in carrier-id order."""
        return tuple(_block_embedding(self.carrier, b) for b in self.blocks)

    def __eq__(self, other):
        if not isinstance(other, BlockedLattice):
            return NotImplemented
        return self.carrier == other.carrier and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.carrier, self.blocks))

    def __repr__(self):
        sizes = ",".join(str(len(b)) for b in self.blocks)
        return f"{type(self).__name__}(n={self.carrier.n}, blocks=[{sizes}])"


@dataclass(frozen=True, eq=False, repr=False)
class GluedLattice(BlockedLattice):
    injections: tuple = field(default=())
    provenance: tuple = field(default=())

    def __eq__(self, other):
        if not isinstance(other, GluedLattice):
            return NotImplemented
        return BlockedLattice.__eq__(self, other) and self.provenance == other.provenance

    __hash__ = BlockedLattice.__hash__


@lru_cache(maxsize=256)
def _glue_cached(algebras):
    carrier, embeddings = horizontal_sum([B.lattice for B in algebras])
    injections = tuple(LatticeHom(B.lattice, carrier, e) for B, e in zip(algebras, embeddings))
    blocks = tuple(frozenset(e) for e in embeddings)
    return GluedLattice(carrier, blocks, injections, algebras)


def glue_n(algebras):
    """Glue any number of Boolean algebras along their shared bounds."""
    algebras = tuple(algebras)
    if not algebras:
        raise BadSpec("glue_n needs at least one algebra")
    if not all(isinstance(B, BooleanAlgebra) for B in algebras):
        raise BadSpec("glue_n takes BooleanAlgebra values")
    return _glue_cached(algebras)


def glue(B1, B2):
    return glue_n((B1, B2))


def forget(L):
    """The two designated blocks as standalone algebras with their embeddings."""
    if len(L.blocks) != 2:
        raise BlockCount(f"expected exactly 2 blocks, got {len(L.blocks)}")
    return L.block_algebras


def proof_shape_witness(P):
    r"""First (a, b, c) with a proper in block 1, b != c proper in block 2 and
    a /\ (b \/ c) != (a /\ b) \/ (a /\ c), or None."""
    M, J = P.carrier.meet, P.carrier.join
    bounds = (P.carrier.bottom, P.carrier.top)
    first = [x for x in P.blocks[0] if x not in bounds]
    second = [x for x in P.blocks[1] if x not in bounds]
    for a in first:
        for b in second:
            for c in second:
                if b != c and M[a, J[b, c]] != J[M[a, b], M[a, c]]:
                    return (a, b, c)
    return None


def blocked_coproduct(A, B):
    """coproduct(A, B) as a blocked lattice whose blocks are the injection images."""
    C, i1, i2 = coproduct(A, B)
    return BlockedLattice(C.lattice, (i1.image(), i2.image()))


def algebra_of(lattice):
    """Recover the powerset algebra whose derived lattice is ``lattice``."""
    k = lattice.n.bit_length() - 1
    if k < 1 or 2 ** k != lattice.n or BooleanAlgebra(k).lattice != lattice:
        raise BlockMismatch("lattice is not a powerset algebra")
    return BooleanAlgebra(k)


def _check_provenance(glued, algebras, role):
    if glued.provenance != tuple(algebras):
        raise BlockMismatch(f"{role} glued lattice does not match the given homomorphisms")


def glue_hom(f1, f2, source=None, target=None):
    """The blockwise extension of (f1, f2) to glue(B1, B2) -> glue(B1', B2').

    The map is always built; whether it is a lattice homomorphism is read
    off its flags (``is_ortho_hom``) and :meth:`LatticeHom.violation`.
    """
    for f in (f1, f2):
        if not f.is_lattice_hom:
            raise BadSpec(f"{f} is not a Boolean homomorphism")
    srcs = (algebra_of(f1.source), algebra_of(f2.source))
    tgts = (algebra_of(f1.target), algebra_of(f2.target))
    P = source if source is not None else glue(*srcs)
    Q = target if target is not None else glue(*tgts)
    _check_provenance(P, srcs, "source")
    _check_provenance(Q, tgts, "target")
    m = [None] * P.carrier.n
    for f, i_src, i_tgt in zip((f1, f2), P.injections, Q.injections):
        for e, v in enumerate(f.map):
            m[i_src.map[e]] = i_tgt.map[v]
    return LatticeHom(P.carrier, Q.carrier, tuple(m))


@dataclass(frozen=True)
class CounterReport:
    """Why a blockwise candidate is not a homomorphism."""

    law: str
    witness: tuple
    detail: str
    candidate: tuple
    cocone: tuple = ()

    def to_dict(self):
        return {
            "law": self.law,
            "witness": list(self.witness),
            "detail": self.detail,
            "candidate": list(self.candidate),
            "cocone": [list(h) for h in self.cocone],
        }


def _carrier(X):
    return X.carrier if isinstance(X, BlockedLattice) else X


def blockwise_candidate(P, homs, X):
    """The unique element map u with u . i_j = h_j, if the h_j agree on bounds."""
    X = _carrier(X)
    if len(homs) != len(P.injections):
        raise BlockMismatch(f"{len(homs)} maps for {len(P.injections)} blocks")
    for B, h in zip(P.provenance, homs):
        if h.source != B.lattice:
            raise BlockMismatch("cocone leg does not start at the matching block")
        if h.target != X:
            raise BlockMismatch("cocone leg does not land in the codomain")
    u = [None] * P.carrier.n
    for B, h, inj in zip(P.provenance, homs, P.injections):
        for e, v in enumerate(h.map):
            x = inj.map[e]
            if u[x] is not None and u[x] != v:
                raise CoconeMismatch(f"cocone legs disagree at carrier element {x}")
            u[x] = v
    # every carrier element lies in some block, so u is total and forced
    assert None not in u
    return LatticeHom(P.carrier, X, tuple(u))


def mediate(P, h1, h2, X):
    """Mediating morphism P -> X for the cocone (h1, h2), or a CounterReport.

    A returned map is unique: the blocks cover P, so any u with
    u . i1 = h1 and u . i2 = h2 agrees with it everywhere.
    """
    u = blockwise_candidate(P, (h1, h2), X)
    v = u.violation()
    if v is not None:
        law, witness, detail = v
        return CounterReport(law, witness, detail, u.map, (h1.map, h2.map))
    return u


def certify_unique(P, u, homs):
    """u factors the cocone and is pinned down on every carrier element."""
    covered = set().union(*(set(b) for b in P.blocks))
    if covered != set(range(P.carrier.n)):
        return False
    return all(compose(u, inj) == h for inj, h in zip(P.injections, homs))


def _cocone_legs(B, X):
    """Boolean homs B -> X landing inside some block, deduplicated; each with
    the set of block indices containing its image."""
    legs = OrderedDict()
    for j, (C, emb) in enumerate(X.block_algebras):
        for f in enumerate_boolean_homs(B, C):
            h = compose(emb, f)
            legs.setdefault(h.map, h)
    out = []
    for h in legs.values():
        img = h.image()
        fits = frozenset(j for j, b in enumerate(X.blocks) if img <= set(b))
        out.append((h, fits))
    return out


def codomain_kind(X):
    if isinstance(X, GluedLattice):
        return "glued"
    return "boolean" if is_distributive(X.carrier) else "blocked"


def cocone_class(h1, fits1, h2, fits2):
    reflecting = "bound-reflecting" if h1.bound_reflecting and h2.bound_reflecting else "collapsing"
    separated = any(j != k for j in fits1 for k in fits2)
    return f"{reflecting}/{'separated' if separated else 'shared-block'}"


def universal_audit(B1, B2, corpus):
    """Run :func:`mediate` on every blockwise cocone into every corpus member.

    ``corpus`` is a sequence of (name, BlockedLattice).  Returns a plain,
    deterministically ordered dict.
    """
    P = glue(B1, B2)
    rows = []
    for name, X in corpus:
        kind = codomain_kind(X)
        legs1 = _cocone_legs(B1, X)
        legs2 = _cocone_legs(B2, X)
        for h1, fits1 in legs1:
            for h2, fits2 in legs2:
                result = mediate(P, h1, h2, X)
                row = {
                    "codomain": name,
                    "h1": list(h1.map),
                    "h2": list(h2.map),
                    "class": f"{kind}:{cocone_class(h1, fits1, h2, fits2)}",
                }
                if isinstance(result, CounterReport):
                    row.update(mediates=False, unique=None, witness=result.to_dict())
                else:
                    row.update(
                        mediates=True,
                        unique=certify_unique(P, result, (h1, h2)),
                        mediator=list(result.map),
                    )
                rows.append(row)
    summary = {}
    for row in rows:
        s = summary.setdefault(row["class"], {"total": 0, "mediated": 0, "failed": 0})
        s["total"] += 1
        s["mediated" if row["mediates"] else "failed"] += 1
    for s in summary.values():
        s["confirmed"] = s["failed"] == 0
    return {
        "sources": [B1.atoms, B2.atoms],
        "glued_size": P.carrier.n,
        "rows": rows,
        "summary": dict(sorted(summary.items())),
    }


def audit_corpus(bound):
    """Glued and coproduct codomains over powersets with 1..bound atoms."""
    corpus = []
    sizes = range(1, bound + 1)
    for c1 in sizes:
        for c2 in sizes:
            corpus.append((f"glue(2^{c1},2^{c2})", glue(powerset(c1), powerset(c2))))
    for c1 in sizes:
        for c2 in sizes:
            corpus.append((f"coproduct(2^{c1},2^{c2})", blocked_coproduct(powerset(c1), powerset(c2))))
    return corpus


def universal_audit_bound(bound):
    """universal_audit for every source pair with 1..bound atoms."""
    corpus = audit_corpus(bound)
    reports = []
    for a1 in range(1, bound + 1):
        for a2 in range(1, bound + 1):
            reports.append(universal_audit(powerset(a1), powerset(a2), corpus))
    return {"kind": "universal", "bound": bound, "reports": reports}
