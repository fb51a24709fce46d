import pytest
from hypothesis import given

from strategies import codes_with_crossings, gauss_codes
from surfjones.gauss import (
    OVER_IN,
    OVER_OUT,
    UNDER_IN,
    UNDER_OUT,
    Diagram,
    GaussCodeError,
    add_kink,
    disjoint_union,
    horizontal_mirror,
    is_alternating,
    is_alternating_sequence,
    is_split,
    parse_code,
    parse_link,
    r_parallel,
    split_components,
    vertical_mirror,
    writhe,
)
from surfjones.surface import build_surface

TREFOIL = "O1+U2+O3+U1+O2+U3+"


def test_parse_virtual_trefoil():
    d = parse_link("O1-O2-U1-U2-")
    assert (d.n, d.num_components, writhe(d)) == (2, 1, -2)


def test_parse_empty_and_circle():
    for text in ("", "()"):
        d = parse_link(text)
        assert d.n == 0 and d.n_circles == 1 and writhe(d) == 0
        assert str(d.code) == "()"


def test_parse_classical_trefoil():
    d = parse_link(TREFOIL)
    assert d.n == 3 and writhe(d) == 3
    assert build_surface(d).genus == 0


def test_writhe_borromean_variant():
    assert writhe(parse_link("O1+U3+/U1+O2+/U2+O3+")) == 3


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("O1-O2-U1-", "expected 2"),
        ("O1-O2-U1-U2-O1-", "expected 2"),
        ("O1-U2-O2-U1+", "sign"),
        ("O1-O1-", "Over at both"),
        ("U1+U1+", "Under at both"),
        ("O1-X2-U1-", "position"),
        ("O1O2-", "position"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(GaussCodeError) as exc:
        parse_link(text)
    assert fragment in str(exc.value)


def test_syntax_error_reports_position():
    with pytest.raises(GaussCodeError) as exc:
        parse_link("O1-O2-Q1-U2-")
    assert exc.value.position == 6


def test_labels_normalized_in_first_appearance_order():
    d = parse_link("O7-O3-U7-U3-")
    assert str(d.code) == "O1-O2-U1-U2-"


@given(gauss_codes())
def test_parse_serialize_roundtrip(code):
    norm = str(Diagram(code).code)
    assert str(parse_link(norm).code) == norm
    assert str(parse_code(norm)) == norm


@given(gauss_codes())
def test_successor_cycles_match_components(code):
    d = Diagram(code)
    seen = set()
    cycles = 0
    for start in range(d.num_darts):
        if start in seen:
            continue
        x, comp = start, d.component_of[start]
        length = 0
        while True:
            seen.add(x)
            assert d.component_of[x] == comp
            x = d.succ[x]
            length += 1
            if x == start:
                break
        cycles += 1
        # an in-dart and an out-dart per passage
        assert length == 2 * len(d.code.components[comp])
    assert cycles == d.num_components - d.n_circles
    assert d.n_plus + d.n_minus == d.n


@given(codes_with_crossings())
def test_rotation_rule(code):
    d = Diagram(code)
    for e in d.edges:
        # edges leave an out-slot and arrive at an in-slot
        assert e.tail % 4 in (1, 2, 3) and e.head % 4 in (0, 1, 3)
    for c, s in enumerate(d.signs):
        slots = {role: d.slot(c, role) % 4 for role in (UNDER_IN, OVER_IN, UNDER_OUT, OVER_OUT)}
        want = (0, 1, 2, 3) if s > 0 else (0, 3, 2, 1)
        assert (slots[UNDER_IN], slots[OVER_OUT], slots[UNDER_OUT], slots[OVER_IN]) == want


def test_is_alternating_sequences():
    assert is_alternating_sequence([True, False] * 3)
    assert not is_alternating_sequence([True, True, False, False])
    assert is_alternating_sequence([])
    assert is_alternating(parse_link(TREFOIL))
    assert not is_alternating(parse_link("O1-O2-U1-U2-"))
    assert is_alternating(parse_link("()"))


def test_split_components():
    assert len(split_components(parse_link("O1-O2-U1-U2-"))) == 1
    two = disjoint_union(parse_link(TREFOIL), parse_link(TREFOIL))
    assert len(split_components(two)) == 2 and is_split(two)
    assert len(split_components(parse_link("O1-U2-/U1-O2-"))) == 1
    assert is_split(parse_link("O1-U1-/()"))


@given(gauss_codes())
def test_mirrors_are_involutions_negating_writhe(code):
    d = Diagram(code)
    for mirror in (vertical_mirror, horizontal_mirror):
        m = mirror(d)
        assert writhe(m) == -writhe(d)
        assert mirror(m).code == d.code


@given(gauss_codes(max_crossings=4))
def test_horizontal_mirror_keeps_genus(code):
    d = Diagram(code)
    assert build_surface(horizontal_mirror(d)).genus == build_surface(d).genus


@given(gauss_codes(max_crossings=3))
def test_r_parallel_counts(code):
    d = Diagram(code)
    assert r_parallel(d, 1) is d
    for r in (2, 3):
        p = r_parallel(d, r)
        assert p.n == r * r * d.n
        assert writhe(p) == r * r * writhe(d)
        assert p.num_components == r * d.num_components
        assert sorted(p.signs) == sorted(s for s in d.signs for _ in range(r * r))


def test_r_parallel_keeps_passage_pattern():
    d = parse_link("O1-O2-U1-U2-")
    p = r_parallel(d, 2)
    assert p.n == 8
    for comp in p.code.components:
        assert [t.over for t in comp] == [True, True, True, True, False, False, False, False]


def test_r_parallel_rejects_bad_r():
    with pytest.raises(ValueError):
        r_parallel(parse_link(TREFOIL), 0)


@given(codes_with_crossings(max_crossings=4))
def test_kink_counts(code):
    d = Diagram(code)
    for sign in (1, -1):
        k = add_kink(d, 0, sign)
        assert k.n == d.n + 1 and writhe(k) == writhe(d) + sign
        assert build_surface(k).genus == build_surface(d).genus


def test_kink_argument_checks():
    d = parse_link(TREFOIL)
    with pytest.raises(ValueError):
        add_kink(d, 99, 1)
    with pytest.raises(ValueError):
        add_kink(d, 0, 2)
