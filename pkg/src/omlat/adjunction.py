"""Finite audit of the gluing/forgetting adjunction.

Hom-sets on the glued side are enumerated through block restrictions: a
morphism out of glue(B1, B2) is determined by what it does on each block,
so it suffices to try every pair of Boolean homs (f1, f2) into the target
blocks and keep the blockwise maps that are ortholattice homomorphisms.
"""

from dataclasses import dataclass

from .boolean import LatticeHom, compose, enumerate_boolean_homs, identity, powerset
from .errors import BlockMismatch, SizeLimit
from .gluing import CounterReport, blockwise_candidate, forget, glue, glue_hom, mediate

CLASSES = ("all", "bound-reflecting")
MAX_BOUND = 3


@dataclass(frozen=True)
class CtxHom:
    """A morphism of blocked lattices: an ortholattice hom carrying block j into block j."""

    source: object
    target: object
    hom: LatticeHom


@dataclass(frozen=True)
class HomSet:
    source: object
    target: object
    morphism_class: str
    morphisms: tuple

    def __len__(self):
        return len(self.morphisms)

    def __iter__(self):
        return iter(self.morphisms)


def _in_class(morphism_class, *homs):
    if morphism_class == "all":
        return True
    if morphism_class == "bound-reflecting":
        return all(h.bound_reflecting for h in homs)
    raise ValueError(f"unknown morphism class {morphism_class!r}")


def boolean_pairs(P, L, morphism_class="all"):
    """Hom(B1, C1) x Hom(B2, C2) restricted to the morphism class."""
    (C1, _), (C2, _) = forget(L)
    B1, B2 = P.provenance
    return [
        (f1, f2)
        for f1 in enumerate_boolean_homs(B1, C1)
        for f2 in enumerate_boolean_homs(B2, C2)
        if _in_class(morphism_class, f1, f2)
    ]


def enumerate_ctx_homs(P, L, morphism_class="all"):
    """All block-preserving ortholattice homs glue(B1, B2) -> L."""
    if len(P.blocks) != 2:
        raise BlockMismatch("source must be glued from exactly two algebras")
    (_, e1), (_, e2) = forget(L)
    found = []
    for f1, f2 in boolean_pairs(P, L, morphism_class):
        u = blockwise_candidate(P, (compose(e1, f1), compose(e2, f2)), L)
        if u.is_ortho_hom:
            found.append(CtxHom(P, L, u))
    return HomSet(P, L, morphism_class, tuple(found))


def phi(h):
    """Restrict a morphism out of glue(B1, B2) to its two blocks."""
    P, L = h.source, h.target
    out = []
    for (B, inj), (C, emb) in zip(zip(P.provenance, P.injections), forget(L)):
        back = {v: i for i, v in enumerate(emb.map)}
        try:
            m = tuple(back[h.hom.map[x]] for x in inj.map)
        except KeyError:
            raise BlockMismatch("morphism does not carry the block into its target block")
        out.append(LatticeHom(B.lattice, C.lattice, m))
    return tuple(out)


def phi_inverse_candidate(f1, f2, P, L):
    """Blockwise extension of (f1, f2) to a morphism P -> L, or a CounterReport."""
    (C1, e1), (C2, e2) = forget(L)
    B1, B2 = P.provenance
    if f1.source != B1.lattice or f2.source != B2.lattice:
        raise BlockMismatch("homomorphism sources do not match the glued blocks")
    if f1.target != C1.lattice or f2.target != C2.lattice:
        raise BlockMismatch("homomorphism targets do not match the codomain blocks")
    result = mediate(P, compose(e1, f1), compose(e2, f2), L.carrier)
    if isinstance(result, CounterReport):
        return CounterReport(result.law, result.witness, result.detail, result.candidate, (f1.map, f2.map))
    return CtxHom(P, L, result)


def compose_ctx(k, h):
    return CtxHom(h.source, k.target, compose(k.hom, h.hom))


def _key(pair):
    return tuple(f.map for f in pair)


def _cell(P, L, cls, sources, codomains, homsets):
    homs = homsets(P, L, cls)
    pairs = boolean_pairs(P, L, cls)
    images = [_key(phi(h)) for h in homs]
    injective = len(set(images)) == len(images)
    pair_keys = {_key(p) for p in pairs}
    surjective = set(images) == pair_keys
    bijection = injective and surjective

    counterexamples = []
    imaged = set(images)
    for f1, f2 in pairs:
        if _key((f1, f2)) in imaged:
            continue
        report = phi_inverse_candidate(f1, f2, P, L)
        if not isinstance(report, CounterReport):
            raise AssertionError("hom enumeration missed a valid extension")
        counterexamples.append(report.to_dict())

    right_inverse = all(
        phi_inverse_candidate(*phi(h), P, L) == h for h in homs
    )

    naturality = None
    squares = 0
    functor_failures = 0
    if bijection:
        naturality = True
        # post-composition with k: L -> L'
        for _, L2 in codomains:
            for k in homsets(L, L2, cls):
                k1, k2 = phi(k)
                for h in homs:
                    f1, f2 = phi(h)
                    squares += 1
                    if _key(phi(compose_ctx(k, h))) != _key((compose(k1, f1), compose(k2, f2))):
                        naturality = False
        # pre-composition with glue_hom(g1, g2) for (g1, g2): (B1', B2') -> (B1, B2)
        for S2 in sources:
            for g1 in enumerate_boolean_homs(S2[0], P.provenance[0]):
                for g2 in enumerate_boolean_homs(S2[1], P.provenance[1]):
                    if not _in_class(cls, g1, g2):
                        continue
                    G = glue_hom(g1, g2)
                    if not G.is_ortho_hom:
                        functor_failures += 1
                        continue
                    Gc = CtxHom(glue(*S2), P, G)
                    for h in homs:
                        f1, f2 = phi(h)
                        squares += 1
                        if _key(phi(compose_ctx(h, Gc))) != _key((compose(f1, g1), compose(f2, g2))):
                            naturality = False

    return {
        "source": [B.atoms for B in P.provenance],
        "codomain": None,
        "class": cls,
        "hom_count": len(homs),
        "pair_count": len(pairs),
        "injective": injective,
        "bijection": bijection,
        "right_inverse": right_inverse,
        "naturality": naturality,
        "squares_checked": squares,
        "functor_failures": functor_failures,
        "counterexamples": counterexamples,
    }


def triangle_identities(P, L):
    """Check both triangle identities at the source P = G(B1, B2) and at the
    codomain L, with unit and counit read off phi and its inverse."""
    B1, B2 = P.provenance
    # unit at (B1, B2) is phi(id on G(B1, B2))
    eta = phi(CtxHom(P, P, identity(P.carrier)))
    eps_P = phi_inverse_candidate(identity(B1.lattice), identity(B2.lattice), P, P)
    if isinstance(eps_P, CounterReport):
        first = False
    else:
        G_eta = glue_hom(*eta, source=P, target=P)
        first = compose(eps_P.hom, G_eta) == identity(P.carrier)
    (C1, _), (C2, _) = forget(L)
    GU = glue(C1, C2)
    eps_L = phi_inverse_candidate(identity(C1.lattice), identity(C2.lattice), GU, L)
    if isinstance(eps_L, CounterReport):
        second = False
    else:
        eta_U = phi(CtxHom(GU, GU, identity(GU.carrier)))
        U_eps = phi(eps_L)
        second = all(
            compose(a, b) == identity(b.source) for a, b in zip(U_eps, eta_U)
        )
    return first, second


def adjunction_audit(bound, classes=CLASSES):
    """Audit every (B1, B2) and glued codomain with 1..bound atoms per block.

    Returns a plain dict; identical inputs give identical output.
    """
    if bound > MAX_BOUND:
        raise SizeLimit(f"bound {bound} exceeds the audit limit {MAX_BOUND}")
    sizes = range(1, bound + 1)
    sources = [(powerset(a1), powerset(a2)) for a1 in sizes for a2 in sizes]
    codomains = [(f"glue(2^{c1},2^{c2})", glue(powerset(c1), powerset(c2))) for c1 in sizes for c2 in sizes]

    cache = {}

    def homsets(P, L, cls):
        key = (P, L, cls)
        if key not in cache:
            cache[key] = enumerate_ctx_homs(P, L, cls)
        return cache[key]

    cells = []
    for S in sources:
        P = glue(*S)
        for name, L in codomains:
            for cls in classes:
                cell = _cell(P, L, cls, sources, codomains, homsets)
                cell["codomain"] = name
                cells.append(cell)

    triangles = []
    for S in sources:
        P = glue(*S)
        for name, L in codomains:
            first, second = triangle_identities(P, L)
            triangles.append({
                "source": [B.atoms for B in S],
                "codomain": name,
                "at_source": first,
                "at_codomain": second,
            })

    summary = {}
    for cls in classes:
        mine = [c for c in cells if c["class"] == cls]
        summary[cls] = {
            "cells": len(mine),
            "bijection": sum(c["bijection"] for c in mine),
            "naturality": sum(c["naturality"] is True for c in mine),
            "counterexamples": sum(len(c["counterexamples"]) for c in mine),
        }
    return {
        "kind": "adjunction",
        "bound": bound,
        "cells": cells,
        "triangles": triangles,
        "summary": summary,
    }
