"""Brackets, Jones-Krushkal polynomials, the determinant, adequacy and reports."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .gauss import Diagram, is_alternating, is_split, split_components, writhe
from .linalg import int_det
from .poly import BracketPoly, TPoly
from .states import state_data, state_histogram
from .surface import (
    H1Presentation,
    RibbonSurface,
    build_surface,
    homology,
    is_checkerboard,
    is_reduced,
)


class NotCheckerboardError(ValueError):
    """Invariant only defined for checkerboard colorable diagrams."""


@dataclass(frozen=True, eq=False)
class Prepared:
    diagram: Diagram
    surface: RibbonSurface
    h1: H1Presentation


def prepare(d: Diagram) -> Prepared:
    s = build_surface(d)
    return Prepared(d, s, homology(s))


_HIST_CACHE: dict[str, Counter] = {}


def clear_cache() -> None:
    _HIST_CACHE.clear()


def histogram(p: Prepared, workers: int | None = None, max_crossings: int | None = None) -> Counter:
    key = str(p.diagram.code)
    if key not in _HIST_CACHE:
        _HIST_CACHE[key] = state_histogram(p.diagram, p.h1, workers, max_crossings)
    elif max_crossings is not None and p.diagram.n > max_crossings:
        state_histogram(p.diagram, p.h1, 1, max_crossings)  # raises
    return _HIST_CACHE[key]


def _sum(hist: Counter, shift_k: int = 0) -> BracketPoly:
    loop_powers: dict[int, BracketPoly] = {}
    out: dict[tuple[int, int], int] = {}
    for (ab, k, r), count in hist.items():
        kk = k - shift_k
        if kk < 0:
            raise NotCheckerboardError("a state has k(S) = 0")
        if kk not in loop_powers:
            loop_powers[kk] = BracketPoly.loop() ** kk
        for (e, _), c in loop_powers[kk].items():
            key = (e + ab, r)
            out[key] = out.get(key, 0) + c * count
    return BracketPoly(out)


def _prep(d, surface, h1) -> Prepared:
    if surface is None or h1 is None:
        return prepare(d)
    return Prepared(d, surface, h1)


def bracket(d: Diagram, surface=None, h1=None, *, workers=None, max_crossings=None) -> BracketPoly:
    """Homological Kauffman bracket as a state sum over all 2^n states."""
    return _sum(histogram(_prep(d, surface, h1), workers, max_crossings))


def jones_krushkal(d: Diagram, surface=None, h1=None, *, workers=None, max_crossings=None) -> TPoly:
    br = bracket(d, surface, h1, workers=workers, max_crossings=max_crossings)
    return br.normalize_writhe(writhe(d)).to_t()


def reduced_jk(d: Diagram, surface=None, h1=None, *, workers=None, max_crossings=None) -> TPoly:
    p = _prep(d, surface, h1)
    if not is_checkerboard(p.surface):
        raise NotCheckerboardError("reduced polynomial needs a checkerboard colorable diagram")
    hist = histogram(p, workers, max_crossings)
    return _sum(hist, shift_k=1).normalize_writhe(writhe(d)).to_t()


def jones(d: Diagram, surface=None, h1=None, *, workers=None, max_crossings=None) -> TPoly:
    """Usual Jones polynomial recovered from the unreduced polynomial."""
    jk = jones_krushkal(d, surface, h1, workers=workers, max_crossings=max_crossings)
    return jk.substitute_z_loop().divide_by_loop()


def coloring_matrix(d: Diagram) -> list[list[int]]:
    """Rows are crossings, columns are arcs (runs between under-passages)."""
    arc_of_token: dict[tuple[int, int], int] = {}
    m = 0
    for ci, comp in enumerate(d.code.components):
        unders = [j for j, t in enumerate(comp) if not t.over]
        if not unders:
            for j in range(len(comp)):
                arc_of_token[(ci, j)] = m
            m += 1
            continue
        # an under-passage token is labelled with the arc arriving at it
        k = len(comp)
        start = unders[0]
        for step in range(k):
            j = (start + 1 + step) % k
            if step and not comp[(j - 1) % k].over:
                m += 1
            arc_of_token[(ci, j)] = m
        m += 1
    rows = [[0] * m for _ in range(d.n)]
    for ci, comp in enumerate(d.code.components):
        k = len(comp)
        for j, t in enumerate(comp):
            c = t.label - 1
            if t.over:
                rows[c][arc_of_token[(ci, j)]] += 2
            else:
                # the arc ending here and the arc starting just after
                rows[c][arc_of_token[(ci, j)]] -= 1
                rows[c][arc_of_token[(ci, (j + 1) % k)]] -= 1
    return rows


def determinant(d: Diagram, surface=None) -> int:
    """|minor| of the coloring matrix with the last row and column deleted."""
    s = build_surface(d) if surface is None else surface
    if not is_checkerboard(s):
        raise NotCheckerboardError("determinant needs a checkerboard colorable diagram")
    if d.n == 0:
        if d.num_components == 1:
            return 1
        return 0
    rows = coloring_matrix(d)
    if len(rows[0]) > d.n:
        # an all-over component adds a column; rows sum to zero, so the
        # kernel has dimension >= 2 and every maximal minor vanishes
        return 0
    minor = [row[:-1] for row in rows[:-1]]
    return abs(int_det(minor))


def adequacy(d: Diagram, surface=None, h1=None) -> tuple[bool, bool]:
    p = _prep(d, surface, h1)
    full = (1 << d.n) - 1
    k_a = state_data(d, p.surface, p.h1, 0).k
    k_b = state_data(d, p.surface, p.h1, full).k
    a_ok = all(state_data(d, p.surface, p.h1, 1 << c).k <= k_a for c in range(d.n))
    b_ok = all(state_data(d, p.surface, p.h1, full ^ (1 << c)).k <= k_b for c in range(d.n))
    return a_ok, b_ok


@dataclass
class InvariantReport:
    name: str
    code: str
    n: int
    w: int
    genus: int
    components: int
    is_alternating: bool
    is_checkerboard: bool
    is_reduced: bool
    is_split: bool
    a_adequate: bool
    b_adequate: bool
    bracket: BracketPoly
    jk_unreduced: TPoly
    jk_reduced: TPoly | None
    jones: TPoly
    determinant: int | None
    span: int
    phi_unreduced: dict[int, TPoly] = field(default_factory=dict)
    phi_reduced: dict[int, TPoly] = field(default_factory=dict)

    @property
    def is_classical(self) -> bool:
        return self.genus == 0

    def as_dict(self) -> dict:
        def r(p):
            return None if p is None else p.render()

        return {
            "name": self.name,
            "code": self.code,
            "crossings": self.n,
            "writhe": self.w,
            "genus": self.genus,
            "components": self.components,
            "alternating": self.is_alternating,
            "checkerboard": self.is_checkerboard,
            "reduced": self.is_reduced,
            "split": self.is_split,
            "a_adequate": self.a_adequate,
            "b_adequate": self.b_adequate,
            "bracket": self.bracket.render(),
            "jk_unreduced": r(self.jk_unreduced),
            "jk_reduced": r(self.jk_reduced),
            "jones": r(self.jones),
            "determinant": self.determinant,
            "span": self.span,
            "phi_unreduced": {str(i): p.render() for i, p in self.phi_unreduced.items()},
            "phi_reduced": {str(i): p.render() for i, p in self.phi_reduced.items()},
        }


def report(d: Diagram, name: str = "", *, workers=None, max_crossings=None) -> InvariantReport:
    p = prepare(d)
    kw = dict(workers=workers, max_crossings=max_crossings)
    br = bracket(d, p.surface, p.h1, **kw)
    jk = br.normalize_writhe(writhe(d)).to_t()
    cb = is_checkerboard(p.surface)
    connected = len(split_components(d)) == 1
    red = reduced_jk(d, p.surface, p.h1, **kw) if cb else None
    a_ok, b_ok = adequacy(d, p.surface, p.h1)
    return InvariantReport(
        name=name,
        code=str(d.code),
        n=d.n,
        w=writhe(d),
        genus=p.surface.genus,
        components=d.num_components,
        is_alternating=is_alternating(d),
        is_checkerboard=cb,
        is_reduced=is_reduced(d, p.surface, p.h1),
        is_split=is_split(d),
        a_adequate=a_ok,
        b_adequate=b_ok,
        bracket=br,
        jk_unreduced=jk,
        jk_reduced=red,
        jones=jk.substitute_z_loop().divide_by_loop(),
        determinant=determinant(d, p.surface) if cb and connected else None,
        span=br.span(),
        phi_unreduced={i: jk.z_part(i) for i in jk.z_degrees()},
        phi_reduced={i: red.z_part(i) for i in red.z_degrees()} if red is not None else {},
    )
