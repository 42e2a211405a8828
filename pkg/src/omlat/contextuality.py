"""Possibilistic empirical models, global sections, and the lattice dictionary.

A scenario is a cover of measurement contexts; an empirical model says,
for each context, which joint outcomes are possible.  A global section is
one outcome per measurement whose restriction to every context is possible.

The dictionary harness sets the sheaf-side predicate (no global section)
beside the lattice-side one (the glued event algebra is not distributive).
The two are computed by separate code paths and only compared at the end.
"""

from dataclasses import dataclass
from itertools import product
from math import prod

from .boolean import MAX_ATOMS, powerset
from .errors import BadSpec, SizeLimit, check_size
from .gluing import glue_n
from .lattice import Verdict, is_distributive


@dataclass(frozen=True)
class Scenario:
    measurements: tuple
    outcomes: tuple  # outcomes[i] is the outcome tuple of measurements[i]
    cover: tuple  # contexts as tuples of measurement labels

    def __post_init__(self):
        ms = tuple(self.measurements)
        if not ms:
            raise BadSpec("a scenario needs at least one measurement")
        if len(set(ms)) != len(ms):
            raise BadSpec("measurement labels must be distinct")
        outs = tuple(tuple(o) for o in self.outcomes)
        if len(outs) != len(ms) or any(not o or len(set(o)) != len(o) for o in outs):
            raise BadSpec("each measurement needs a nonempty set of distinct outcomes")
        cover = tuple(tuple(c) for c in self.cover)
        if not cover:
            raise BadSpec("cover is empty")
        seen = set()
        for c in cover:
            if not c or len(set(c)) != len(c):
                raise BadSpec(f"context {list(c)} is empty or repeats a measurement")
            if any(m not in ms for m in c):
                raise BadSpec(f"context {list(c)} names an unknown measurement")
            if frozenset(c) in seen:
                raise BadSpec(f"context {list(c)} appears twice")
            seen.add(frozenset(c))
        uncovered = set(ms) - set().union(*map(set, cover))
        if uncovered:
            raise BadSpec(f"measurements {sorted(map(str, uncovered))} lie in no context")
        object.__setattr__(self, "measurements", ms)
        object.__setattr__(self, "outcomes", outs)
        object.__setattr__(self, "cover", cover)

    def outcomes_of(self, m):
        return self.outcomes[self.measurements.index(m)]

    def joint_outcomes(self, context):
        return list(product(*(self.outcomes_of(m) for m in context)))


@dataclass(frozen=True)
class EmpiricalModel:
    scenario: Scenario
    supports: tuple  # supports[i]: frozenset of outcome tuples, ordered as cover[i]
    name: str = ""

    def __post_init__(self):
        sc = self.scenario
        sups = tuple(frozenset(tuple(a) for a in s) for s in self.supports)
        if len(sups) != len(sc.cover):
            raise BadSpec("one support per context required")
        for ctx, sup in zip(sc.cover, sups):
            if not sup:
                raise BadSpec(f"support of context {list(ctx)} is empty")
            allowed = set(sc.joint_outcomes(ctx))
            for a in sup:
                if a not in allowed:
                    raise BadSpec(f"assignment {list(a)} is not a joint outcome of {list(ctx)}")
        object.__setattr__(self, "supports", sups)

    def ordered_support(self, i):
        """Support of context i in the order of joint_outcomes."""
        return [a for a in self.scenario.joint_outcomes(self.scenario.cover[i]) if a in self.supports[i]]


@dataclass(frozen=True)
class SectionAssignment:
    values: tuple  # (measurement, outcome) pairs in scenario order

    def __getitem__(self, m):
        return dict(self.values)[m]

    def restrict(self, context):
        d = dict(self.values)
        return tuple(d[m] for m in context)

    def to_dict(self):
        return dict(self.values)


def _marginal(support, context, shared):
    pos = [context.index(m) for m in shared]
    return {tuple(a[p] for p in pos) for a in support}


def check_compatibility(M):
    """Pairwise agreement of support marginals on shared measurements."""
    cover = M.scenario.cover
    for i in range(len(cover)):
        for j in range(i + 1, len(cover)):
            shared = [m for m in cover[i] if m in cover[j]]
            if not shared:
                continue
            if _marginal(M.supports[i], cover[i], shared) != _marginal(M.supports[j], cover[j], shared):
                return Verdict(
                    "compatibility", False, (i, j),
                    f"contexts {i} and {j} disagree on {shared}",
                )
    return Verdict("compatibility", True)


def global_sections(M):
    """Every global section, by backtracking in scenario measurement order.

    A context is tested against its support as soon as its last
    measurement is assigned.
    """
    sc = M.scenario
    order = sc.measurements
    position = {m: i for i, m in enumerate(order)}
    closing = [[] for _ in order]  # contexts completed at each depth
    for ci, ctx in enumerate(sc.cover):
        closing[max(position[m] for m in ctx)].append(ci)
    found = []
    assignment = {}

    def extend(depth):
        if depth == len(order):
            found.append(SectionAssignment(tuple((m, assignment[m]) for m in order)))
            return
        m = order[depth]
        for o in sc.outcomes[depth]:
            assignment[m] = o
            if all(
                tuple(assignment[x] for x in sc.cover[ci]) in M.supports[ci]
                for ci in closing[depth]
            ):
                extend(depth + 1)
        del assignment[m]

    extend(0)
    return found


def scenario_to_contexts(S):
    """The classical event algebra of each context: the powerset of its joint outcomes."""
    out = []
    for ctx in S.cover:
        k = prod(len(S.outcomes_of(m)) for m in ctx)
        if k > MAX_ATOMS:
            raise SizeLimit(f"context {list(ctx)} has {k} joint outcomes; event algebra too large")
        check_size(2 ** k, "context event algebra")
        out.append(powerset(k))
    return out


@dataclass(frozen=True)
class DictionaryRow:
    name: str
    contexts: int
    sections: int
    has_global_section: bool
    glued_elements: int
    glued_distributive: bool
    witness: tuple
    agreement: bool

    @property
    def contextual(self):
        return not self.has_global_section

    @property
    def discrepancy(self):
        return not self.agreement

    def to_dict(self):
        return {
            "name": self.name,
            "contexts": self.contexts,
            "sections": self.sections,
            "has_global_section": self.has_global_section,
            "contextual": self.contextual,
            "glued_elements": self.glued_elements,
            "glued_distributive": self.glued_distributive,
            "distributivity_witness": None if self.witness is None else list(self.witness),
            "agreement": self.agreement,
            "discrepancy": self.discrepancy,
        }


def dictionary_harness(M):
    """Compare 'no global section' with 'glued event algebra not distributive'."""
    sections = len(global_sections(M))
    glued = glue_n(scenario_to_contexts(M.scenario))
    verdict = is_distributive(glued.carrier)
    contextual = sections == 0
    return DictionaryRow(
        name=M.name,
        contexts=len(M.scenario.cover),
        sections=sections,
        has_global_section=sections > 0,
        glued_elements=glued.carrier.n,
        glued_distributive=verdict.ok,
        witness=verdict.witness,
        agreement=contextual == (not verdict.ok),
    )


def _model(name, measurements, cover, rule, outcomes=(0, 1)):
    sc = Scenario(tuple(measurements), tuple(outcomes for _ in measurements), tuple(cover))
    supports = [
        frozenset(a for a in sc.joint_outcomes(ctx) if rule(ctx, a))
        for ctx in sc.cover
    ]
    return EmpiricalModel(sc, tuple(supports), name)


def _pr_rule(ctx, a):
    # a xor b = (setting of a) * (setting of b)
    (ma, mb), (oa, ob) = ctx, a
    return oa ^ ob == int(ma[1]) * int(mb[1])


BUILTIN_SECTIONS = {
    "deterministic-single": 1,
    "pr-style": 0,
    "odd-cycle": 0,
    "full-support": 8,
}


def builtin_scenarios():
    """Named desk-scale corpus; ``BUILTIN_SECTIONS`` holds the expected counts."""
    return [
        _model("deterministic-single", ["x", "y"], [("x", "y")], lambda c, a: a == (0, 1)),
        _model(
            "pr-style",
            ["a0", "a1", "b0", "b1"],
            [("a0", "b0"), ("a0", "b1"), ("a1", "b0"), ("a1", "b1")],
            _pr_rule,
        ),
        _model(
            "odd-cycle",
            ["a", "b", "c"],
            [("a", "b"), ("b", "c"), ("c", "a")],
            lambda c, a: a[0] != a[1],
        ),
        _model("full-support", ["x", "y", "z"], [("x", "y"), ("y", "z")], lambda c, a: True),
    ]


def builtin(name):
    for M in builtin_scenarios():
        if M.name == name:
            return M
    raise BadSpec(f"unknown builtin scenario {name!r}; choose from {sorted(BUILTIN_SECTIONS)}")
