"""Signed Gauss codes and the combinatorial diagrams they describe.

A code is one word per link component, e.g. ``O1-O2-U1-U2-``; components
are separated by ``/`` and a crossingless circle is written ``()``.

A :class:`Diagram` numbers the darts of crossing ``c`` as ``4*c + slot``
with slots in counterclockwise order.  The slot assignment follows from the
crossing sign::

    sign +1:  (under-in, over-out, under-out, over-in)
    sign -1:  (under-in, over-in,  under-out, over-out)

Edges run from the out-dart of one passage to the in-dart of the next
passage along the component.  All transforms act on the code and rebuild the
diagram, since a signed Gauss code determines the surface diagram.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

UNDER_IN, OVER_IN, UNDER_OUT, OVER_OUT = "ui", "oi", "uo", "oo"

SLOT_RULE = {
    +1: {UNDER_IN: 0, OVER_OUT: 1, UNDER_OUT: 2, OVER_IN: 3},
    -1: {UNDER_IN: 0, OVER_IN: 1, UNDER_OUT: 2, OVER_OUT: 3},
}


class GaussCodeError(ValueError):
    """Malformed or inconsistent Gauss code."""

    def __init__(self, message: str, position: int | None = None) -> None:
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


@dataclass(frozen=True)
class Token:
    over: bool
    label: int
    sign: int

    def __str__(self) -> str:
        return f"{'O' if self.over else 'U'}{self.label}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class GaussCode:
    components: tuple[tuple[Token, ...], ...]

    def __str__(self) -> str:
        return "/".join("".join(map(str, comp)) or "()" for comp in self.components)

    @property
    def labels(self) -> list[int]:
        return sorted({t.label for comp in self.components for t in comp})

    def normalized(self) -> "GaussCode":
        """Relabel crossings 1..n in order of first appearance."""
        relabel: dict[int, int] = {}
        for comp in self.components:
            for t in comp:
                relabel.setdefault(t.label, len(relabel) + 1)
        return GaussCode(
            tuple(
                tuple(Token(t.over, relabel[t.label], t.sign) for t in comp)
                for comp in self.components
            )
        )


_TOKEN_RE = re.compile(r"([OU])(\d+)([+-])")


def parse_code(text: str) -> GaussCode:
    """Parse and validate a code string (labels are normalized)."""
    text = text.strip()
    components = []
    pos = 0
    for chunk in text.split("/") if text else [""]:
        comp = []
        if chunk in ("", "()"):
            if chunk == "" and text:
                raise GaussCodeError("empty component; write () for a circle", pos)
        else:
            i = 0
            while i < len(chunk):
                m = _TOKEN_RE.match(chunk, i)
                if not m:
                    raise GaussCodeError(
                        f"expected token like O1+ but found {chunk[i:i + 4]!r}", pos + i
                    )
                comp.append(Token(m.group(1) == "O", int(m.group(2)), 1 if m.group(3) == "+" else -1))
                i = m.end()
        components.append(tuple(comp))
        pos += len(chunk) + 1
    code = GaussCode(tuple(components))
    _validate(code)
    return code.normalized()


def _validate(code: GaussCode) -> None:
    seen: dict[int, list[Token]] = {}
    for comp in code.components:
        for t in comp:
            if t.label <= 0:
                raise GaussCodeError(f"label {t.label} is not positive")
            seen.setdefault(t.label, []).append(t)
    for label, occ in sorted(seen.items()):
        if len(occ) != 2:
            raise GaussCodeError(f"label {label} occurs {len(occ)} times, expected 2")
        if occ[0].over == occ[1].over:
            kind = "Over" if occ[0].over else "Under"
            raise GaussCodeError(f"label {label} is {kind} at both occurrences")
        if occ[0].sign != occ[1].sign:
            raise GaussCodeError(f"label {label} has inconsistent signs")


@dataclass(frozen=True)
class EdgeInfo:
    tail: int  # out-dart
    head: int  # in-dart
    component: int
    position: int  # index of the token the edge leaves


class Diagram:
    """Immutable combinatorial diagram built from a normalized Gauss code."""

    def __init__(self, code: GaussCode) -> None:
        _validate(code)
        code = code.normalized()
        self.code = code
        n = len(code.labels)
        self.n = n
        signs = [0] * n
        for comp in code.components:
            for t in comp:
                signs[t.label - 1] = t.sign
        self.signs = tuple(signs)
        self.n_circles = sum(1 for comp in code.components if not comp)

        def dart(t: Token, incoming: bool) -> int:
            role = (OVER_IN if incoming else OVER_OUT) if t.over else (
                UNDER_IN if incoming else UNDER_OUT
            )
            c = t.label - 1
            return 4 * c + SLOT_RULE[signs[c]][role]

        partner = [-1] * (4 * n)
        edge_of = [-1] * (4 * n)
        component_of = [-1] * (4 * n)
        succ = [-1] * (4 * n)
        edges = []
        for ci, comp in enumerate(code.components):
            k = len(comp)
            for j, t in enumerate(comp):
                nxt = comp[(j + 1) % k]
                tail, head = dart(t, False), dart(nxt, True)
                e = len(edges)
                edges.append(EdgeInfo(tail, head, ci, j))
                partner[tail], partner[head] = head, tail
                edge_of[tail] = edge_of[head] = e
                din = dart(t, True)
                component_of[din] = component_of[tail] = ci
                succ[din] = tail
                succ[tail] = head
        self.partner = tuple(partner)
        self.edge_of = tuple(edge_of)
        self.component_of = tuple(component_of)
        self.succ = tuple(succ)
        self.edges = tuple(edges)

    # basic queries
    def __eq__(self, other: object) -> bool:
        return isinstance(other, Diagram) and str(self.code) == str(other.code)

    def __hash__(self) -> int:
        return hash(str(self.code))

    def __repr__(self) -> str:
        return f"Diagram({str(self.code)!r})"

    @property
    def num_components(self) -> int:
        return len(self.code.components)

    @property
    def num_darts(self) -> int:
        return 4 * self.n

    @property
    def num_edges(self) -> int:
        return 2 * self.n

    @staticmethod
    def crossing_of(dart: int) -> int:
        return dart >> 2

    @staticmethod
    def rot_succ(dart: int) -> int:
        return (dart & ~3) | ((dart + 1) & 3)

    def slot(self, crossing: int, role: str) -> int:
        return 4 * crossing + SLOT_RULE[self.signs[crossing]][role]

    @cached_property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @cached_property
    def n_minus(self) -> int:
        return self.n - self.n_plus


def parse_link(text: str) -> Diagram:
    """Parse a code string into a :class:`Diagram`."""
    return Diagram(parse_code(text))


def writhe(d: Diagram) -> int:
    return sum(d.signs)


def is_alternating_sequence(overs: Sequence[bool]) -> bool:
    """Cyclic over/under sequence strictly alternates (empty is vacuous)."""
    k = len(overs)
    return all(overs[i] != overs[(i + 1) % k] for i in range(k))


def is_alternating(d: Diagram) -> bool:
    return all(
        is_alternating_sequence([t.over for t in comp]) for comp in d.code.components
    )


def split_components(d: Diagram) -> list[list[int]]:
    """Partition link components into connected pieces of the diagram."""
    parent = list(range(d.num_components))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    first: dict[int, int] = {}
    for ci, comp in enumerate(d.code.components):
        for t in comp:
            if t.label in first:
                a, b = find(first[t.label]), find(ci)
                if a != b:
                    parent[max(a, b)] = min(a, b)
            else:
                first[t.label] = ci
    blocks: dict[int, list[int]] = {}
    for ci in range(d.num_components):
        blocks.setdefault(find(ci), []).append(ci)
    return [blocks[k] for k in sorted(blocks)]


def is_split(d: Diagram) -> bool:
    return len(split_components(d)) >= 2


# ---------------------------------------------------------------- transforms

def _rebuild(components: Iterable[Iterable[Token]]) -> Diagram:
    return Diagram(GaussCode(tuple(tuple(c) for c in components)))


def vertical_mirror(d: Diagram) -> Diagram:
    """Swap over and under at every crossing; signs negate."""
    return _rebuild(
        [Token(not t.over, t.label, -t.sign) for t in comp] for comp in d.code.components
    )


def horizontal_mirror(d: Diagram) -> Diagram:
    """Reflect the surface: rotations reverse, over/under kept, signs negate."""
    return _rebuild(
        [Token(t.over, t.label, -t.sign) for t in comp] for comp in d.code.components
    )


def r_parallel(d: Diagram, r: int) -> Diagram:
    """Blackboard r-parallel; copy ``i`` of a strand sits ``i`` steps to its left.

    Copies of component ``K`` appear in the output as ``K_1 .. K_r``
    consecutively.  Crossing ``c`` becomes crossings ``(c, i, j)`` between
    over-copy ``i`` and under-copy ``j``, all with the sign of ``c``.
    """
    if r < 1:
        raise ValueError("r must be a positive integer")
    if r == 1:
        return d
    label: dict[tuple[int, int, int], int] = {}

    def lab(c: int, i: int, j: int) -> int:
        return label.setdefault((c, i, j), len(label) + 1)

    out = []
    for comp in d.code.components:
        for i in range(1, r + 1):
            word = []
            for t in comp:
                asc = list(range(1, r + 1))
                if t.over:
                    order = asc[::-1] if t.sign > 0 else asc
                    word += [Token(True, lab(t.label, i, j), t.sign) for j in order]
                else:
                    order = asc if t.sign > 0 else asc[::-1]
                    word += [Token(False, lab(t.label, k, i), t.sign) for k in order]
            out.append(word)
    return _rebuild(out)


def _insert_after(d: Diagram, inserts: dict[tuple[int, int], list[Token]]) -> Diagram:
    comps = []
    for ci, comp in enumerate(d.code.components):
        word = []
        for j, t in enumerate(comp):
            word.append(t)
            word += inserts.get((ci, j), [])
        comps.append(word)
    return _rebuild(comps)


def _check_dart(d: Diagram, dart: int) -> None:
    if not 0 <= dart < d.num_darts:
        raise ValueError(f"dart {dart} out of range for {d.n} crossings")


def add_kink(d: Diagram, dart: int, sign: int, over_first: bool = True) -> Diagram:
    """Insert a curl of the given sign on the edge carrying ``dart``.

    The two passages of the new crossing are adjacent in the code, so the
    loop edge bounds a monogon face and the genus is unchanged.
    """
    _check_dart(d, dart)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    e = d.edges[d.edge_of[dart]]
    new = d.n + 1
    pair = [Token(over_first, new, sign), Token(not over_first, new, sign)]
    return _insert_after(d, {(e.component, e.position): pair})


def add_rm2(d: Diagram, dart1: int, dart2: int) -> Diagram:
    """Push the strand of ``dart1`` over the strand of ``dart2`` through a face.

    Both darts must lie on the boundary walk of one face and belong to
    different edges.  Two crossings of opposite sign are created.
    """
    from .surface import build_surface

    _check_dart(d, dart1)
    _check_dart(d, dart2)
    s = build_surface(d)
    if s.face_of[dart1] != s.face_of[dart2]:
        raise ValueError(f"darts {dart1} and {dart2} do not lie on a common face")
    e1, e2 = d.edges[d.edge_of[dart1]], d.edges[d.edge_of[dart2]]
    if d.edge_of[dart1] == d.edge_of[dart2]:
        raise ValueError("darts lie on the same edge")
    # faces are walked with the face on the right of the walk direction, so
    # the face sits right of an edge iff the walk enters via its tail dart
    face_left_1 = dart1 == e1.head
    face_left_2 = dart2 == e2.head
    a, b = d.n + 1, d.n + 2
    sign_a = 1 if face_left_2 else -1
    over = [Token(True, a, sign_a), Token(True, b, -sign_a)]
    unders = {a: Token(False, a, sign_a), b: Token(False, b, -sign_a)}
    order = (b, a) if face_left_1 == face_left_2 else (a, b)
    under = [unders[x] for x in order]
    return _insert_after(
        d, {(e1.component, e1.position): over, (e2.component, e2.position): under}
    )


def disjoint_union(*diagrams: Diagram) -> Diagram:
    comps = []
    offset = 0
    for d in diagrams:
        for comp in d.code.components:
            comps.append([Token(t.over, t.label + offset, t.sign) for t in comp])
        offset += d.n
    return _rebuild(comps)
