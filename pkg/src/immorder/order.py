"""The immersion partial order on stable equivalence classes.

A stable class is recorded as an `ImmersionType`: the fundamental group
(trivial, finite cyclic, infinite cyclic, or free abelian of rank 4), the
orientation character w1, the universal-cover second Stiefel-Whitney
datum w2 (a degree-2 class symbol, or "inf" when the cover is not almost
spin), and the multiple c of the fundamental class that the manifold
realizes.  Two 4-manifolds with punctures immerse into each other exactly
according to a small set of rules in these invariants; `leq` decides the
order where the rules reach, `order_graph` assembles whole families into
a Hasse diagram (after quotienting by mutual immersability), and
`first_principles_leq_cyclic` re-derives the orientable cyclic chain by
enumerating group homomorphisms and their degree-2 pullback multipliers
instead of using the packaged rule.

Canonical representatives: odd torsion never obstructs immersions, so
cyclic orders are replaced by their 2-parts; spin types all collapse to
the 4-sphere class; orientable types that are not almost spin collapse to
the complex-projective-plane class; and the non-orientable infinite-cyclic
type with w2 = 0 is the twisted circle-times-3-sphere class.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from . import james
from .intalg import FgAbelianGroup


class InvalidType(ValueError):
    """The invariants do not describe a realizable stable class."""


class UndeterminedComparison(ValueError):
    """Equivalence query hit a pair the rules do not decide."""


class UndecidablePair(ValueError):
    """Graph construction hit a pair the rules do not decide."""


class UnsupportedPair(ValueError):
    """First-principles comparison outside the orientable cyclic family."""


GROUPS = ("trivial", "cyclic", "Z", "Z4")
_W2_INDEX = {"0": 0, "1": 1, "inf": 2, "e12": 3, "e12+e34": 4}


def _two_part(n: int) -> int:
    t = 1
    while n % 2 == 0:
        n //= 2
        t *= 2
    return t


@dataclass(frozen=True)
class ImmersionType:
    """Invariants (pi_1, w1, w2, c) of a stable class.

    `group` is one of "trivial", "cyclic", "Z", "Z4"; `n` the order for
    the cyclic family (None otherwise); `w1` in {0, 1}; `w2` one of
    "0", "1", "inf" (cyclic-type groups) or "0", "e12", "e12+e34", "inf"
    (rank-4 free abelian); `c` an integer naming a class in
    H_4(pi; Z^w1).  On construction, c is folded into the ambient group
    and replaced by the non-negative representative of its sign orbit,
    and membership in the realizable set of the family is enforced.
    """

    group: str
    n: int | None = None
    w1: int = 0
    w2: str = "0"
    c: int = 0

    def __post_init__(self) -> None:
        try:
            james._validate(self.group, self.n, self.w1, self.w2)
        except james.UnsupportedFamily as exc:
            raise InvalidType(str(exc)) from exc
        except ValueError as exc:
            raise InvalidType(str(exc)) from exc
        modulus = james.ambient_subgroup_modulus(self.group, self.n, self.w1)
        c = abs(self.c)
        if modulus:
            c %= modulus
        realizable = james.realizable_classes(self.group, self.n, self.w1, self.w2)
        if not realizable.subgroup.contains(c):
            kind = "realized" if realizable.determined else "realizable"
            raise InvalidType(
                f"class multiple {self.c} is not {kind} for this family "
                f"(allowed subgroup: {realizable.subgroup.pretty()})"
            )
        object.__setattr__(self, "c", c)

    def exponent(self) -> int:
        """v_2 of the cyclic order (canonical types: n = 2^exponent)."""
        if self.group != "cyclic":
            raise InvalidType("exponent is defined for cyclic types only")
        v = 0
        n = self.n
        while n % 2 == 0:
            n //= 2
            v += 1
        return v


S4 = ImmersionType("trivial", None, 0, "0", 0)
CP2 = ImmersionType("trivial", None, 0, "inf", 0)
S1XTS3 = ImmersionType("Z", None, 1, "0", 0)


def _sort_key(t: ImmersionType):
    return (GROUPS.index(t.group), t.n or 0, t.w1, _W2_INDEX[t.w2], t.c)


def canonicalize(t: ImmersionType) -> ImmersionType:
    """Canonical representative of the immersion-equivalence class of t.

    Idempotent.  Cyclic orders are replaced by their 2-parts (odd orders
    collapse to the trivial group); spin types become the 4-sphere class;
    orientable non-almost-spin types become the projective-plane class;
    the non-orientable infinite-cyclic type with w2 = 0 is already the
    twisted-product class.
    """
    group, n, w1, w2, c = t.group, t.n, t.w1, t.w2, t.c
    if group == "cyclic":
        n2 = _two_part(n)
        if n2 == 1:
            group, n = "trivial", None
        else:
            n = n2
    if w1 == 0 and w2 == "0":
        return S4
    if w1 == 0 and w2 == "inf":
        return CP2
    return ImmersionType(group, n, w1, w2, c)


@dataclass(frozen=True)
class LeqVerdict:
    """Outcome of a comparison: answer True/False/None with a rule trace."""

    answer: bool | None
    trace: tuple[str, ...]
    reason: str | None = None


def _verdict(answer: bool, rule: str) -> LeqVerdict:
    return LeqVerdict(answer=answer, trace=(rule,))


def _w1_lifts_integrally(t: ImmersionType) -> bool:
    """Whether w1 is the mod-2 reduction of an integral degree-1 class.

    H^1(pi; Z) is torsion-free; for finite cyclic groups it vanishes, so
    only the trivial character lifts, while for the infinite cyclic group
    every character lifts.
    """
    if t.w1 == 0:
        return True
    return t.group == "Z"


def leq(a: ImmersionType, b: ImmersionType) -> LeqVerdict:
    """Decide whether every manifold of class a immerses into one of class b.

    Returns answer None (with a reason) on pairs the rules do not cover:
    mixed cyclic/rank-4 pairs and the non-orientable infinite-cyclic type
    with w2 = inf.
    """
    a = canonicalize(a)
    b = canonicalize(b)
    if a == b:
        return _verdict(True, "equal-after-canonicalization")
    if a == S4:
        return _verdict(True, "s4-minimum")
    if b == S4:
        return _verdict(False, "into-s4-iff-spin")
    if b == CP2:
        return _verdict(a.w1 == 0, "into-cp2-iff-orientable")
    if a == CP2:
        return _verdict(b.w2 == "inf", "cp2-into-iff-not-almost-spin")
    if a == S1XTS3:
        return _verdict(b.w1 == 1, "s1xts3-into-iff-nonorientable")
    if b == S1XTS3:
        return _verdict(a.w2 == "0" and _w1_lifts_integrally(a), "into-s1xts3-iff-w2-zero-and-w1-lifts")
    if a.w1 == 1 and b.w1 == 0:
        return _verdict(False, "orientability-obstruction")
    if a.group == "cyclic" and b.group == "cyclic":
        if a.w1 == 0 and b.w1 == 0:
            # post-canonical orientable cyclic classes have w2 = "1"
            return _verdict(a.exponent() <= b.exponent(), "orientable-cyclic-exponent-chain")
        if a.w1 == 1 and b.w1 == 1:
            ka, kb = a.exponent(), b.exponent()
            if b.w2 == "0":
                return _verdict(a.w2 == "0" and ka >= kb, "nonorientable-target-w2-0")
            if b.w2 == "1" and b.c == 0:
                return _verdict(a.w2 == "0" and ka > kb, "nonorientable-target-w2-1-c0")
            if b.w2 == "1" and b.c == 1:
                return _verdict(
                    (a.w2 == "0" and ka > kb) or (a.w2 == "1" and ka == kb),
                    "nonorientable-target-w2-1-c1",
                )
            if b.w2 == "inf" and b.c == 0:
                return _verdict(a.c == 0 and ka >= kb, "nonorientable-target-w2-inf-c0")
            if b.w2 == "inf" and b.c == 1:
                return _verdict(ka >= kb and (ka == kb or a.c == 0), "nonorientable-target-w2-inf-c1")
        if a.w1 == 0 and b.w1 == 1:
            ans = (b.w2 == "1" and b.exponent() > a.exponent()) or b.w2 == "inf"
            return _verdict(ans, "orientable-into-nonorientable-cyclic")
    if a.group == "Z4" and b.group == "Z4":
        # post-canonical rank-4 types have w2 in {e12, e12+e34}
        if a.w2 == "e12":
            return _verdict(b.w2 != "0", "rank4-free-abelian-w2-classes")
        if a.w2 == "e12+e34":
            ans = b.w2 == "e12+e34" and _is_multiple(a.c, b.c)
            return _verdict(ans, "rank4-free-abelian-w2-classes")
    return LeqVerdict(answer=None, trace=(), reason="pair-not-covered")


def _is_multiple(x: int, y: int) -> bool:
    """Whether x = k*y for some integer k (so 0 is a multiple of every y)."""
    if y == 0:
        return x == 0
    return x % y == 0


def equivalent(a: ImmersionType, b: ImmersionType) -> bool:
    """Mutual immersability; raises when either direction is undetermined."""
    ab = leq(a, b)
    ba = leq(b, a)
    if ab.answer is None or ba.answer is None:
        raise UndeterminedComparison("equivalence undetermined for this pair")
    return ab.answer and ba.answer


def first_principles_leq_cyclic(l1: int, l2: int) -> LeqVerdict:
    """Re-derive M(l1) <= M(l2) for orientable almost-spin, non-spin cyclic
    classes by enumerating homomorphisms Z/l1 -> Z/l2 and asking for one
    whose degree-2 pullback multiplier l1*m/l2 is odd.

    Both orders must be even (the classes only exist there).
    """
    if l1 < 2 or l2 < 2 or l1 % 2 or l2 % 2:
        raise UnsupportedPair("both orders must be even and >= 2")
    ans = any((m * l1) % l2 == 0 and ((m * l1) // l2) % 2 == 1 for m in range(l2))
    return _verdict(ans, "first-principles-cyclic-hom-enumeration")


# ---------------------------------------------------------------------------
# graphs


def node_name(t: ImmersionType) -> str:
    """Deterministic identifier-safe node name for graph output."""
    if t == S4:
        return "S4"
    if t == CP2:
        return "CP2"
    if t == S1XTS3:
        return "S1xtS3"
    if t.group == "Z":
        return "S1xtS3_CP2"
    if t.group == "cyclic":
        if t.w1 == 0:
            return f"M_{t.exponent()}"
        tag = {"0": "0", "1": "1", "inf": "inf"}[t.w2]
        return f"N_{t.exponent()}_{tag}_{t.c}"
    tag = {"0": "0", "e12": "e12", "e12+e34": "e12e34", "inf": "inf"}[t.w2]
    return f"Z4_{tag}_{t.c}"


def node_label(t: ImmersionType) -> str:
    """Human-readable label."""
    if t == S4:
        return "S4"
    if t == CP2:
        return "CP2"
    if t == S1XTS3:
        return "S1xtS3"
    if t.group == "Z":
        return "S1xtS3#CP2"
    if t.group == "cyclic":
        if t.w1 == 0:
            return f"M({t.n})"
        return f"N({t.n},{t.w2},{t.c})"
    return f"Z4({t.w2},{t.c})"


@dataclass(frozen=True)
class OrderGraph:
    """Canonical class representatives plus the transitive reduction edges."""

    nodes: tuple[ImmersionType, ...]
    edges: tuple[tuple[str, str], ...]


def order_graph(types) -> OrderGraph:
    """Hasse diagram of the immersion order on the given types.

    Canonicalizes, quotients by mutual immersability, checks the partial-
    order axioms on the quotient, and reduces transitively.  Raises
    UndecidablePair if any required comparison is undetermined.
    """
    canon = sorted({canonicalize(t) for t in types}, key=_sort_key)
    rel: dict[tuple[ImmersionType, ImmersionType], bool] = {}
    for a in canon:
        for b in canon:
            v = leq(a, b)
            if v.answer is None:
                raise UndecidablePair(f"cannot compare {node_label(a)} and {node_label(b)}: {v.reason}")
            rel[(a, b)] = v.answer
    for a in canon:
        if not rel[(a, a)]:
            raise AssertionError(f"reflexivity failed at {node_label(a)}")
    for a in canon:
        for b in canon:
            if rel[(a, b)]:
                for c in canon:
                    if rel[(b, c)] and not rel[(a, c)]:
                        raise AssertionError(
                            f"transitivity failed: {node_label(a)} <= {node_label(b)} <= {node_label(c)}"
                        )
    groups: list[list[ImmersionType]] = []
    for t in canon:
        for cls in groups:
            if rel[(t, cls[0])] and rel[(cls[0], t)]:
                cls.append(t)
                break
        else:
            groups.append([t])
    reps = sorted((min(cls, key=_sort_key) for cls in groups), key=_sort_key)
    g = nx.DiGraph()
    g.add_nodes_from(reps)
    for a in reps:
        for b in reps:
            if a != b and rel[(a, b)]:
                if rel[(b, a)]:
                    raise AssertionError("antisymmetry failed on representatives")
                g.add_edge(a, b)
    if not nx.is_directed_acyclic_graph(g):
        raise AssertionError("strict order contains a cycle")
    reduced = nx.transitive_reduction(g)
    edges = tuple(sorted((node_name(u), node_name(v)) for u, v in reduced.edges))
    return OrderGraph(nodes=tuple(reps), edges=edges)


def emit_dot(graph: OrderGraph) -> str:
    """Render an order graph in DOT syntax (edges point up the order)."""
    lines = ["digraph immersion_order {", "  rankdir=BT;", "  node [shape=box];"]
    for t in graph.nodes:
        lines.append(f'  {node_name(t)} [label="{node_label(t)}"];')
    for u, v in graph.edges:
        lines.append(f'  {u} -> {v} [label="<"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_dot_edges(text: str) -> set[tuple[str, str]]:
    """Edge set of a DOT digraph as written by emit_dot (round-trip helper)."""
    import re

    edges = set()
    for m in re.finditer(r'^\s*"?([A-Za-z0-9_]+)"?\s*->\s*"?([A-Za-z0-9_]+)"?', text, re.MULTILINE):
        edges.add((m.group(1), m.group(2)))
    return edges


def cyclic_family(max_exp: int, combined: bool = False) -> list[ImmersionType]:
    """Standard families: the orientable cyclic chain, optionally combined
    with all non-orientable cyclic classes up to the same exponent."""
    if max_exp < 1:
        raise ValueError("max_exp must be >= 1")
    types = [S4, CP2]
    for m in range(1, max_exp + 1):
        types.append(ImmersionType("cyclic", 2**m, 0, "1", 0))
    if combined:
        for m in range(1, max_exp + 1):
            n = 2**m
            types.append(ImmersionType("cyclic", n, 1, "0", 0))
            for c in (0, 1):
                types.append(ImmersionType("cyclic", n, 1, "1", c))
                types.append(ImmersionType("cyclic", n, 1, "inf", c))
    return types
