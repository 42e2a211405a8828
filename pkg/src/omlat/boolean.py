"""Powerset Boolean algebras, lattice homomorphisms and the Boolean coproduct.

An algebra P(X) with |X| = k has elements encoded as k-bit masks, so the
element id *is* the subset: meet is ``&``, join is ``|`` and the
complement is ``full ^ mask``.  Every finite Boolean algebra is isomorphic
to one of these, which is why only powersets are modelled.
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from .errors import BadSpec, SizeLimit, check_size
from .lattice import FiniteOrthoLattice, Verdict, lattice_from_tables

MAX_ATOMS = 12


@dataclass(frozen=True)
class BooleanAlgebra:
    atoms: int
    atom_labels: tuple = field(default=None, compare=False)

    def __post_init__(self):
        if self.atoms < 1:
            raise BadSpec("a powerset algebra needs at least one atom")
        if self.atoms > MAX_ATOMS:
            raise SizeLimit(f"{self.atoms} atoms exceeds the limit of {MAX_ATOMS}")
        check_size(2 ** self.atoms, "Boolean algebra")
        if self.atom_labels is not None:
            labels = tuple(str(a) for a in self.atom_labels)
            if len(labels) != self.atoms:
                raise BadSpec("one label per atom required")
            object.__setattr__(self, "atom_labels", labels)

    @property
    def size(self):
        return 2 ** self.atoms

    @property
    def full(self):
        return self.size - 1

    def atom_masks(self):
        return [1 << i for i in range(self.atoms)]

    def element_label(self, mask):
        names = self.atom_labels or tuple(str(i) for i in range(self.atoms))
        return "{" + ",".join(names[i] for i in range(self.atoms) if mask >> i & 1) + "}"

    @cached_property
    def lattice(self):
        """The derived ortholattice: inclusion order, set complement."""
        ids = np.arange(self.size)
        leq = (ids[:, None] & ~ids[None, :]) == 0
        meet = ids[:, None] & ids[None, :]
        join = ids[:, None] | ids[None, :]
        labels = [self.element_label(m) for m in range(self.size)]
        lat = lattice_from_tables(leq, 0, self.full, meet, join, labels)
        return FiniteOrthoLattice(lat, tuple(self.full ^ m for m in range(self.size)))

    def __repr__(self):
        return "𝟐" if self.atoms == 1 else f"2^{self.atoms}"


def two():
    """The two-element algebra {∅, {*}}."""
    return BooleanAlgebra(1, ("*",))


def powerset(k):
    return BooleanAlgebra(k)


_LAWS = ("bounds", "join", "meet", "ortho")


@dataclass(frozen=True)
class LatticeHom:
    """A total element map between finite ortholattices.

    Homomorphism properties are computed on first access and cached; the
    first failing law (in the order bounds, join, meet, ortho) is available
    from :meth:`violation` together with the lexicographically first pair.
    """

    source: FiniteOrthoLattice
    target: FiniteOrthoLattice
    map: tuple

    def __post_init__(self):
        m = tuple(int(v) for v in self.map)
        if len(m) != self.source.n:
            raise BadSpec(f"map has {len(m)} entries for {self.source.n} source elements")
        if any(v < 0 or v >= self.target.n for v in m):
            raise BadSpec("map leaves the target")
        object.__setattr__(self, "map", m)

    def __call__(self, x):
        return self.map[x]

    @cached_property
    def _violations(self):
        src, tgt = self.source, self.target
        f = np.asarray(self.map)
        out = {}
        if f[src.bottom] != tgt.bottom:
            out["bounds"] = ((src.bottom,), f"bottom maps to {f[src.bottom]}")
        elif f[src.top] != tgt.top:
            out["bounds"] = ((src.top,), f"top maps to {f[src.top]}")
        for law, s_tab, t_tab in (("join", src.join, tgt.join), ("meet", src.meet, tgt.meet)):
            bad = f[s_tab] != t_tab[f[:, None], f[None, :]]
            if bad.any():
                x, y = (int(v) for v in np.argwhere(bad)[0])
                op = "v" if law == "join" else "^"
                out[law] = (
                    (x, y),
                    f"f({x}{op}{y}) = {f[s_tab[x, y]]} but f({x}){op}f({y}) = {t_tab[f[x], f[y]]}",
                )
        so, to = np.asarray(src.ortho), np.asarray(tgt.ortho)
        bad = f[so] != to[f]
        if bad.any():
            x = int(np.flatnonzero(bad)[0])
            out["ortho"] = ((x,), f"f({x}') = {f[so[x]]} but f({x})' = {to[f[x]]}")
        return out

    @property
    def preserves_bounds(self):
        return "bounds" not in self._violations

    @property
    def preserves_join(self):
        return "join" not in self._violations

    @property
    def preserves_meet(self):
        return "meet" not in self._violations

    @property
    def preserves_ortho(self):
        return "ortho" not in self._violations

    @cached_property
    def bound_reflecting(self):
        bounds = {self.target.bottom, self.target.top}
        return all(
            (v in bounds) == (x in (self.source.bottom, self.source.top))
            for x, v in enumerate(self.map)
        )

    @property
    def is_lattice_hom(self):
        return self.preserves_bounds and self.preserves_join and self.preserves_meet

    @property
    def is_ortho_hom(self):
        return self.is_lattice_hom and self.preserves_ortho

    @property
    def flags(self):
        return {
            "preserves_meet": self.preserves_meet,
            "preserves_join": self.preserves_join,
            "preserves_bounds": self.preserves_bounds,
            "preserves_ortho": self.preserves_ortho,
            "bound_reflecting": self.bound_reflecting,
        }

    def violation(self, laws=_LAWS):
        """First failing law as (law, witness, detail), or None."""
        for law in laws:
            if law in self._violations:
                return (law,) + self._violations[law]
        return None

    def image(self):
        return frozenset(self.map)

    def __repr__(self):
        return f"LatticeHom({list(self.map)})"


def identity(L):
    return LatticeHom(L, L, tuple(range(L.n)))


def compose(g, f):
    """g after f."""
    if f.target != g.source:
        raise BadSpec("cannot compose: codomain of f is not the domain of g")
    return LatticeHom(f.source, g.target, tuple(g.map[v] for v in f.map))


def is_boolean_hom(h):
    """Bounds, meet and join preservation.  Complement preservation is then a
    consequence (complements are unique in a distributive lattice); it is
    re-checked here and reported in the detail."""
    v = h.violation(("bounds", "join", "meet"))
    if v is not None:
        law, witness, detail = v
        return Verdict("boolean-hom", False, witness, f"{law}: {detail}")
    if not h.preserves_ortho:
        return Verdict("boolean-hom", True, None, "complement NOT preserved")
    return Verdict("boolean-hom", True, None, "complements preserved")


def preimage_hom(A, B, phi):
    """The hom P(X) -> P(Y), S |-> phi^-1(S), for a function phi: Y -> X."""
    if len(phi) != B.atoms or any(not 0 <= p < A.atoms for p in phi):
        raise BadSpec("phi must be a function from the atoms of B to the atoms of A")
    masks = np.arange(A.size)
    image = np.zeros(A.size, dtype=np.int64)
    for y, x in enumerate(phi):
        image |= ((masks >> x) & 1) << y
    return LatticeHom(A.lattice, B.lattice, tuple(image.tolist()))


def enumerate_boolean_homs(A, B):
    """Every bounded-lattice hom P(X) -> P(Y), one per function Y -> X.

    Ordered by the function tuple (phi(0), ..., phi(|Y|-1)) lexicographically.
    """
    count = A.atoms ** B.atoms
    check_size(count, "hom set")
    return [preimage_hom(A, B, phi) for phi in product(range(A.atoms), repeat=B.atoms)]


def coproduct(A, B):
    """P(X) + P(Y) = P(X x Y) with i1(S) = S x Y and i2(T) = X x T.

    The pair (x, y) is atom ``x * |Y| + y``.
    """
    k = A.atoms * B.atoms
    if k > MAX_ATOMS:
        raise SizeLimit(f"coproduct would have 2^{k} elements")
    check_size(2 ** k, "coproduct")
    xl = A.atom_labels or tuple(str(i) for i in range(A.atoms))
    yl = B.atom_labels or tuple(str(i) for i in range(B.atoms))
    C = BooleanAlgebra(k, tuple(f"{x}{y}" for x in xl for y in yl))
    i1 = preimage_hom(A, C, [p // B.atoms for p in range(k)])
    i2 = preimage_hom(B, C, [p % B.atoms for p in range(k)])
    return C, i1, i2
