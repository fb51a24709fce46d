"""End-to-end acceptance checks.

Each test records one PASS/FAIL line through ``conftest.record``; the lines
are printed together at the end of the run.  Expected polynomials are written
out here rather than read from the corpus metadata, so a metadata typo cannot
make a row agree with itself.
"""

import json
import os
import random
import subprocess
import sys
import time

from conftest import record
from surfjones.gauss import (
    add_kink,
    add_rm2,
    horizontal_mirror,
    is_alternating,
    is_split,
    r_parallel,
    split_components,
    vertical_mirror,
    writhe,
)
from surfjones.invariants import (
    adequacy,
    bracket,
    clear_cache,
    determinant,
    histogram,
    jones,
    jones_krushkal,
    prepare,
    reduced_jk,
    report,
)
from surfjones.poly import BracketPoly, TPoly
from surfjones.states import dual_state, enumerate_states, seifert_state, state_data
from surfjones.surface import build_surface, homology, is_checkerboard, is_reduced

D = "(-A^2-A^(-2))"
Z = TPoly({(0, 1): 1})

# published J~ (unreduced) rows
TABLE_UNREDUCED = {
    "2.1": "(-t^(-5/2)+t^(-3/2)+t^(-1))*z",
    "3.2": "(t^(-2)-t^(-1)+1-t+t^2)*z",
    "3.3": "-(t^(-3)+2*t^(-5/2)+2*t^(-2))*z-(t^(-5/2)+t^(-2)+t^(-3/2))*z^2",
    "3.4": "-(3*t^(-1)+2*t^(-1/2))*z-(t^(-3/2)+t^(-1/2)+1)*z^2",
}
# published J (reduced) rows
TABLE_REDUCED = {
    "3.5": "(t^(-3)-2*t^(-2))+(t^(-7/2)-t^(-5/2)-t^(-3/2))*z",
    "3.6": "-t^(-4)+t^(-3)+t^(-1)",
    "3.7": "(t^(-2)-t^(-1)-1)+(t^(-3/2)-2*t^(-1/2))*z",
    "4.85": "(3*t^(-2)+2*t^(-1))+(t^(-5/2)+6*t^(-3/2)+t^(-1/2))*z+(t^(-2)+2*t^(-1))*z^2",
    "4.86": "(-t^(-1)+2-2*t)+(-t^(-3/2)+t^(-1/2)-t^(3/2))*z",
    "4.89": "(t^(-4)+4*t^(-3))+(4*t^(-7/2)+4*t^(-5/2))*z+(2*t^(-3)+t^(-2))*z^2",
    "4.90": "5+(4*t^(-1/2)+4*t^(1/2))*z+(t^(-1)+1+t)*z^2",
    "4.98": "(t^(-1)+3+t)+(4*t^(-1/2)+4*t^(1/2))*z+3*z^2",
    "4.99": "(-t^(-1)+3-t)+(-t^(-3/2)+t^(-1/2)+t^(1/2)-t^(3/2))*z",
    "4.105": "(t^(-4)+t^(-3)-2*t^(-2)+t^(-1))+(2*t^(-7/2)-2*t^(-5/2))*z",
    "4.106": "(-t^(-3)+t^(-2)-1)+(-t^(-5/2)+2*t^(-3/2)-2*t^(-1/2))*z",
    "4.107": "(t^(-1)+3+t)+(4*t^(-1/2)+4*t^(1/2))*z+3*z^2",
    "4.108": "t^(-2)-t^(-1)+1-t+t^2",
}
ROW_31_CELL = "-(t^(-3/2)+2*t^(-1)+t^(1/2)+1)*z-(t^(-1)+2*t^(-1/2))*z^2"
ROW_31_WORKED = "-(t^(-3/2)+2*t^(-1)+t^(-1/2)+1)*z-(t^(-1)+2*t^(-1/2))*z^2"
ROW_31_MIRROR = "-(1+t^(1/2)+2*t+t^(3/2))*z-(2*t^(1/2)+t)*z^2"


def tp(s):
    return TPoly.parse(s)


def diagrams(corpus):
    return [(e.name, e.diagram) for e in corpus]


def reduced_alternating(d):
    s = build_surface(d)
    return d.n > 0 and is_alternating(d) and is_reduced(d, s, homology(s))


def k_ends(d, s, h):
    return state_data(d, s, h, 0).k, state_data(d, s, h, (1 << d.n) - 1).k


def bounds_hold(d):
    """Extreme-degree bounds from the all-A / all-B states, tight at adequate ends."""
    s = build_surface(d)
    h = homology(s)
    br = bracket(d, s, h)
    ka, kb = k_ends(d, s, h)
    a_ok, b_ok = adequacy(d, s, h)
    top, bot = d.n + 2 * ka, -d.n - 2 * kb
    ok = br.dmax() <= top and br.dmin() >= bot
    ok &= (br.dmax() == top) if a_ok else True
    ok &= (br.dmin() == bot) if b_ok else True
    return ok, (a_ok, b_ok)


def test_criterion_01_bracket_exactness(corpus):
    got = {
        "2.1": bracket(corpus.get("2.1").diagram),
        "hopf": bracket(corpus.get("hopf").diagram),
        "fourcomp": bracket(corpus.get("fourcomp").diagram),
    }
    want = {
        "2.1": BracketPoly.parse(f"A^2*{D}*z+2*z+A^(-2)*z"),
        "hopf": BracketPoly.parse("A*z+A^(-1)*z"),
        "fourcomp": BracketPoly.parse(f"A^4*{D}^2+4*A^2*{D}+6*{D}*z+4*A^(-2)*{D}+A^(-4)*{D}^2"),
    }
    bad = [k for k in want if got[k] != want[k]]
    record(1, not bad, "bracket of 2.1, virtual Hopf, four-component link" + (f"; mismatch {bad}" if bad else ""))
    assert not bad


def test_criterion_02_jones_krushkal_exactness(corpus):
    checks = {
        "2.1 J~": (jones_krushkal(corpus.get("2.1").diagram), "z*(-t^(-5/2)+t^(-3/2)+t^(-1))"),
        "hopf J~": (jones_krushkal(corpus.get("hopf").diagram), "z*(-t^(-1)-t^(-1/2))"),
        "borromean J": (reduced_jk(corpus.get("borromean3").diagram), "t-2*t^2-t^3-3*t^(5/2)*z"),
        "fourcomp J": (
            reduced_jk(corpus.get("fourcomp").diagram),
            "(-t^(-9/2)+3*t^(-7/2)+3*t^(-5/2)-t^(-3/2))+6*t^(-3)*z",
        ),
    }
    bad = [k for k, (g, w) in checks.items() if g != tp(w)]
    record(2, not bad, "4 worked polynomials" + (f"; mismatch {bad}" if bad else ""))
    assert not bad


def test_criterion_03_table_reproduction(corpus):
    bad = []
    for name, want in TABLE_UNREDUCED.items():
        got = jones_krushkal(corpus.get(name).diagram)
        if got != tp(want):
            bad.append(f"{name}: computed {got.render()}")
    for name, want in TABLE_REDUCED.items():
        got = reduced_jk(corpus.get(name).diagram)
        if got != tp(want):
            bad.append(f"{name}: computed {got.render()}")
    j31 = jones_krushkal(corpus.get("3.1").diagram)
    row31 = j31 == tp(ROW_31_WORKED) and j31 != tp(ROW_31_CELL)
    if not row31:
        bad.append(f"3.1: computed {j31.render()}")
    # the 3.1 cell differs from the worked example in one exponent sign
    flag = "FLAG 3.1 table cell has t^(1/2) where the worked example has t^(-1/2); matched the worked example"
    print(flag)
    rows = len(TABLE_UNREDUCED) + len(TABLE_REDUCED) + 1
    record(3, not bad, f"{rows - len(bad)}/{rows} rows; {flag}" + (f"; {'; '.join(bad)}" if bad else ""))
    assert not bad


def test_criterion_04_chain_links(corpus):
    bad = []
    for m in range(2, 7):
        want = tp(f"(-1)^{m - 1}*(t^(-1)+t^(-1/2))^{m - 1}*z")
        d = corpus.get(f"chain{m}").diagram
        if jones_krushkal(d) != want or d.num_components != m:
            bad.append(m)
    record(4, not bad, "chain links m=2..6" + (f"; mismatch m={bad}" if bad else ""))
    assert not bad


def test_criterion_05_span(corpus):
    seen, bad = 0, []
    for name, d in diagrams(corpus):
        if is_split(d) or not reduced_alternating(d):
            continue
        seen += 1
        g = build_surface(d).genus
        span = bracket(d).span()
        if span != 4 * d.n - 4 * g + 4:
            bad.append(f"{name} span={span}")
    record(5, seen > 0 and not bad, f"{seen} connected reduced alternating diagrams" + (f"; {bad}" if bad else ""))
    assert seen and not bad


def test_criterion_06_adequacy(corpus):
    seen, bad = 0, []
    for name, d in diagrams(corpus):
        if not reduced_alternating(d):
            continue
        seen += 1
        ok, flags = bounds_hold(d)
        if flags != (True, True) or not ok:
            bad.append(f"{name} {flags}")
    record(6, seen > 0 and not bad, f"{seen} reduced alternating diagrams adequate, bounds tight" + (f"; {bad}" if bad else ""))
    assert seen and not bad


def test_criterion_07_dual_states(corpus):
    # the lemma is stated for connected diagrams; a split diagram is checked
    # against the sum of the bounds over its p pieces, n + 2p
    seen, states, bad = 0, 0, []
    for name, d in diagrams(corpus):
        if d.n > 6:
            continue
        seen += 1
        p = max(1, len(split_components(d)))
        s = build_surface(d)
        sts = list(enumerate_states(d, s, homology(s)))
        states += len(sts)
        for st in sts:
            du = sts[dual_state(st.mask, d.n)]
            if st.size + du.size > d.n + 2 * p or st.k + du.k > d.n + 2 * p - 2 * s.genus:
                bad.append(f"{name}:{st.word()}")
    record(7, not bad, f"{seen} diagrams, {states} states, {len(bad)} violations")
    assert not bad


def test_criterion_08_bankwitz(corpus):
    seen, bad = 0, []
    for name, d in diagrams(corpus):
        s = build_surface(d)
        if d.n < 2 or is_split(d) or not is_checkerboard(s) or not reduced_alternating(d):
            continue
        seen += 1
        if determinant(d, s) < d.n:
            bad.append(name)
    split = corpus.get("trefoil_split").diagram
    split_det = determinant(split)
    ok = seen > 0 and not bad and is_split(split) and split_det == 0
    record(8, ok, f"det >= n on {seen} diagrams; split union det={split_det}" + (f"; {bad}" if bad else ""))
    assert ok


def test_criterion_09_mirror(corpus):
    bad = []
    for name, d in diagrams(corpus):
        inv = jones_krushkal(d).invert_t()
        if jones_krushkal(vertical_mirror(d)) != inv or jones_krushkal(horizontal_mirror(d)) != inv:
            bad.append(name)
    d31 = corpus.get("3.1").diagram
    printed = tp(ROW_31_MIRROR)
    ok31 = jones_krushkal(vertical_mirror(d31)) == printed == jones_krushkal(horizontal_mirror(d31))
    record(9, not bad and ok31, f"{len(corpus)} entries, 3.1 mirror value {'matches' if ok31 else 'differs'}")
    assert not bad and ok31


def test_criterion_10_specialization(corpus):
    bad = []
    for name in ("3.6", "4.108"):
        if jones(corpus.get(name).diagram) != tp(TABLE_REDUCED[name]):
            bad.append(name)
    seen = 0
    for name, d in diagrams(corpus):
        s = build_surface(d)
        if s.genus == 1 and not is_checkerboard(s):
            seen += 1
            if jones_krushkal(d) != Z * jones(d):
                bad.append(name)
    record(10, seen > 0 and not bad, f"classical rows 3.6, 4.108; J~ = z*V on {seen} non-checkerboard genus-1 entries")
    assert seen and not bad


def lemma_failures(d):
    """Seifert-state identities, even exponents after normalization, special form."""
    s = build_surface(d)
    h = homology(s)
    out = []
    st = state_data(d, s, h, seifert_state(d))
    if st.a - st.b != writhe(d):
        out.append("a-b")
    if (d.num_components - st.size - d.n) % 2:
        out.append("parity")
    norm = bracket(d, s, h).normalize_writhe(writhe(d))
    if any(e % 2 for (e, _), _c in norm.items()):
        out.append("even")
    if is_checkerboard(s):
        m = d.num_components
        red = reduced_jk(d, s, h)
        if any((q - 2 * (m + i + 1)) % 4 for (q, i), _c in red.items()):
            out.append("special")
    return out


def test_criterion_11_structural_lemmas(corpus):
    rng = random.Random(7)
    pool = [e.diagram for e in corpus if 0 < e.diagram.n <= 6]
    cases = 120
    bad = []
    for name, d in diagrams(corpus):
        bad += [f"{name} {f}" for f in lemma_failures(d)]
    kinks = 0
    for _ in range(cases):
        d = rng.choice(pool)
        sign = rng.choice((1, -1))
        k = add_kink(d, rng.randrange(d.num_darts), sign, rng.random() < 0.5)
        factor = BracketPoly({(3 * sign, 0): -1})
        if bracket(k) != factor * bracket(d) or writhe(k) != writhe(d) + sign:
            bad.append(f"kink {d.code}")
        bad += [f"kink {d.code} {f}" for f in lemma_failures(k)]
        kinks += 1
    moves = 0
    while moves < cases:
        d = rng.choice(pool)
        face = build_surface(d).faces
        walk = face[rng.randrange(len(face))]
        pairs = [(x, y) for x in walk for y in walk if d.edge_of[x] != d.edge_of[y]]
        if not pairs:
            continue
        m = add_rm2(d, *rng.choice(pairs))
        moves += 1
        if bracket(m) != bracket(d) or m.n != d.n + 2:
            bad.append(f"rm2 {d.code}")
        bad += [f"rm2 {d.code} {f}" for f in lemma_failures(m)]
    record(11, not bad, f"corpus plus {kinks} random curls and {moves} random RM2 moves" + (f"; {bad[:3]}" if bad else ""))
    assert not bad


def test_criterion_12_homology(corpus):
    states, bad = 0, []
    for name, d in diagrams(corpus):
        s = build_surface(d)
        h = homology(s)
        ok = h.dim == 2 * s.genus
        ok &= all(h.boundary1.apply(col) == 0 for col in h.boundary2.transpose().rows)
        for st in enumerate_states(d, s, h):
            states += 1
            ok &= all(h.is_cycle(c) for c in st.cycles) and st.r <= s.genus
        if not ok:
            bad.append(name)
    record(12, not bad, f"{len(corpus)} diagrams, {states} states" + (f"; {bad}" if bad else ""))
    assert not bad


def test_criterion_13_cabling(corpus):
    bad = []
    for name in ("2.1", "trefoil"):
        d = corpus.get(name).diagram
        d2 = r_parallel(d, 2)
        ok, flags2 = bounds_hold(d2)
        kept = all(b2 for b, b2 in zip(adequacy(d), flags2) if b)
        if not (ok and kept and d2.n == 4 * d.n):
            bad.append(f"{name} adequacy {flags2}")
    big = r_parallel(corpus.get("4.105").diagram, 2)
    start = time.perf_counter()
    jk = jones_krushkal(big)
    elapsed = time.perf_counter() - start
    ok16 = big.n == 16 and jk != TPoly() and elapsed < 300
    detail = f"cables of 2.1 (8) and trefoil (12) keep adequacy and bounds; 16-crossing cable in {elapsed:.1f}s"
    record(13, not bad and ok16, detail + (f"; {bad}" if bad else ""))
    assert not bad and ok16


def test_criterion_14_determinism(corpus):
    def dump(workers):
        clear_cache()
        return json.dumps([report(e.diagram, e.name, workers=workers).as_dict() for e in corpus], sort_keys=True)

    one, many = dump(1), dump(4)
    p = prepare(r_parallel(corpus.get("trefoil").diagram, 2))
    clear_cache()
    h1 = histogram(p, workers=1)
    clear_cache()
    h4 = histogram(p, workers=4)
    outs = []
    for w in ("1", "3"):
        env = dict(os.environ, SURFJONES_WORKERS=w)
        r = subprocess.run([sys.executable, "-m", "surfjones", "table", "-"], capture_output=True, env=env)
        outs.append(r.stdout)
    ok = one == many and h1 == h4 and outs[0] == outs[1] and outs[0]
    record(14, bool(ok), "corpus reports, 12-crossing histogram and CLI table identical across 1 and N workers")
    assert ok
