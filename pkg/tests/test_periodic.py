from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import (
    circulant_params_by_segment_count,
    grid_params_by_patch_count,
    normalized_coloring,
)
from perfcolor.coloring import Coloring, TwoColorParams, induced_parameters
from perfcolor.periodic import (
    BudgetExceededError,
    CirculantSpec,
    GridSpec,
    SearchStatus,
    _lattice_basis,
    circulant_enumerate,
    circulant_h,
    circulant_period_filter,
    circulant_quotient,
    grid_h,
    grid_reject_2color,
    offset_automorphisms,
    patch_search,
    periodic_coloring_canonical,
    torus_quotient,
    torus_search,
)
from perfcolor.ratmat import RationalMatrix


def params(b, c, r):
    return TwoColorParams(Fraction(b), Fraction(c), Fraction(r))


# --- circulant specs and h ------------------------------------------------------


def test_circulant_spec_validation():
    assert CirculantSpec.parse("4,1,2").ds == (1, 2, 4)
    assert CirculantSpec((1, 1, 2)).m == 3  # repeats kept
    with pytest.raises(ValueError):
        CirculantSpec((0, 1))


def test_circulant_h_examples():
    assert circulant_h(CirculantSpec((1, 2, 4)), 3) == 4
    assert circulant_h(CirculantSpec((1,)), 2) == 1
    assert circulant_h(CirculantSpec((1, 2)), 100) == 0


def test_circulant_h_counts_multiplicity():
    # D = {1,1}: left multiset {1,1,-1,-1}, right {3,1,3,1}; the value 1 has
    # multiplicity 2 on both sides, so min-multiplicity counting gives 2
    assert circulant_h(CirculantSpec((1, 1)), 2) == 2
    # D = {1,3}: {+-1,+-3} vs {2+-1,2+-3} = {3,1,5,-1}: values 1,3,-1 shared
    assert circulant_h(CirculantSpec((1, 3)), 2) == 3


@given(st.sets(st.integers(1, 6), min_size=1, max_size=4), st.integers(1, 14))
def test_circulant_h_reflection_symmetry(ds, t):
    # the intersected set is invariant under negating everything, so counting
    # {+-d} against {-t +- d} gives the same h
    spec = CirculantSpec(tuple(ds))
    left = {d for d in spec.ds} | {-d for d in spec.ds}
    plus = sorted((t + d, t - d) for d in spec.ds)
    minus = sorted((-t + d, -t - d) for d in spec.ds)
    h_plus = len(left & {v for pair in plus for v in pair})
    h_minus = len(left & {v for pair in minus for v in pair})
    assert circulant_h(spec, t) == h_plus == h_minus


# --- period filter ----------------------------------------------------------------


def test_period_filter_c124():
    spec = CirculantSpec((1, 2, 4))
    constraint = circulant_period_filter(spec, params(1, 1, 6), t_max=3)
    assert 3 in constraint.fired
    assert constraint.divides in (1, 3)


def test_period_filter_no_constraint():
    spec = CirculantSpec((1, 2, 4))
    constraint = circulant_period_filter(spec, params(3, 3, 6), t_max=8)
    assert constraint.fired == ()
    assert constraint.divides == 0
    assert constraint.satisfied_by(5)


def test_period_filter_single_distance():
    # D = {1}, (b,c) = (2,2): at t = 2, h = 1 and b+c = 4 > 4m - h = 3
    constraint = circulant_period_filter(CirculantSpec((1,)), params(2, 2, 2), t_max=2)
    assert 2 in constraint.fired


def test_period_filter_valency_check():
    with pytest.raises(ValueError):
        circulant_period_filter(CirculantSpec((1,)), params(1, 1, 4), t_max=3)


# --- circulant quotients -------------------------------------------------------------


def test_quotient_c124_period3():
    g = circulant_quotient(CirculantSpec((1, 2, 4)), 3)
    expected = RationalMatrix([[0, 3, 3], [3, 0, 3], [3, 3, 0]])
    assert g.adjacency == expected
    assert not g.simple


def test_quotient_is_cycle_for_large_period():
    g = circulant_quotient(CirculantSpec((1,)), 7)
    assert g.simple
    assert g.adjacency.row_sums() == (Fraction(2),) * 7
    assert g.adjacency[0, 1] == 1 and g.adjacency[0, 6] == 1


def test_quotient_loops():
    g = circulant_quotient(CirculantSpec((5,)), 5)
    assert g.adjacency == RationalMatrix([[2 if i == j else 0 for j in range(5)] for i in range(5)])


def test_quotient_row_sums_always_valency():
    for ds in [(1,), (1, 2), (2, 4), (1, 1, 3)]:
        spec = CirculantSpec(ds)
        for period in range(1, 7):
            g = circulant_quotient(spec, period)
            assert set(g.adjacency.row_sums()) == {Fraction(spec.valency)}


# --- circulant enumeration ------------------------------------------------------------


def test_enumerate_c124_period3():
    found = circulant_enumerate(CirculantSpec((1, 2, 4)), 3, 2)
    assert len(found) == 2
    mono, split = found
    assert mono.coloring == Coloring((1, 1, 1), 1)
    assert mono.s == RationalMatrix([[6]])
    assert split.coloring == Coloring((1, 1, 2), 2)
    assert {split.s[0, 1], split.s[1, 0]} == {Fraction(3), Fraction(6)}


def test_enumerate_alternating():
    found = circulant_enumerate(CirculantSpec((1,)), 2, 2)
    by_k = {e.coloring.k: e for e in found}
    assert by_k[2].s == RationalMatrix([[0, 2], [2, 0]])


def test_enumerate_representatives_are_canonical():
    found = circulant_enumerate(CirculantSpec((1, 2)), 6, 3)
    assert len(found) > 2
    for entry in found:
        colors = entry.coloring.colors
        rotations = {colors[s:] + colors[:s] for s in range(len(colors))}
        for rotation in rotations:
            assert colors <= normalized_coloring(rotation).colors


def test_enumerate_budget():
    with pytest.raises(BudgetExceededError):
        circulant_enumerate(CirculantSpec((1,)), 21, 2)


def _minimal_period(colors: tuple[int, ...]) -> int:
    n = len(colors)
    for p in range(1, n + 1):
        if n % p == 0 and colors == colors[p:] + colors[:p]:
            return p
    return n


@pytest.mark.parametrize("ds", [(1,), (1, 2), (1, 3)])
def test_period_filter_never_contradicts_enumeration(ds):
    # any (b,c) realized at true period P must satisfy every fired constraint
    spec = CirculantSpec(ds)
    for period in range(2, 7):
        for entry in circulant_enumerate(spec, period, 2):
            if entry.coloring.k != 2:
                continue
            true_period = _minimal_period(entry.coloring.colors)
            b, c = entry.s[0, 1], entry.s[1, 0]
            constraint = circulant_period_filter(spec, params(b, c, spec.valency), t_max=8)
            for t in constraint.fired:
                assert t % true_period == 0


# --- grid specs -----------------------------------------------------------------------


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(frozenset({(0, 0), (1, 0), (-1, 0)}))
    with pytest.raises(ValueError):
        GridSpec(frozenset({(1, 0)}))  # not closed under negation
    assert GridSpec.parse("1,0;0,1").offsets == GridSpec.square().offsets
    assert GridSpec.parse("1,0;0,1;1,-1").offsets == GridSpec.triangular().offsets
    assert GridSpec.square().valency == 4
    assert GridSpec.triangular().valency == 6


def test_grid_h_examples():
    assert grid_h(GridSpec.square(), (1, 1)) == (2, False)
    assert grid_h(GridSpec.triangular(), (1, 0)) == (2, True)
    assert grid_h(GridSpec.square(), (5, 5)) == (0, False)
    with pytest.raises(ValueError):
        grid_h(GridSpec.square(), (0, 0))


# --- torus quotients --------------------------------------------------------------------


def test_torus_large_is_simple_four_regular():
    g = torus_quotient(GridSpec.square(), (5, 5))
    assert g.simple
    assert set(g.adjacency.row_sums()) == {Fraction(4)}


def test_torus_single_vertex_loop():
    g = torus_quotient(GridSpec.square(), (1, 1))
    assert g.adjacency == RationalMatrix([[4]])


def test_torus_triangular_4x1_ring():
    g = torus_quotient(GridSpec.triangular(), (4, 1))
    expected = RationalMatrix(
        [
            [2, 2, 0, 2],
            [2, 2, 2, 0],
            [0, 2, 2, 2],
            [2, 0, 2, 2],
        ]
    )
    assert g.adjacency == expected


def test_lattice_basis_shapes():
    assert _lattice_basis([]) == []
    assert _lattice_basis([(2, 2), (3, 3)]) == [(1, 1)]
    assert _lattice_basis([(0, 3)]) == [(0, 3)]
    basis = _lattice_basis([(1, 1), (1, -1)])
    assert basis[0][0] * basis[1][1] == 2  # index-2 sublattice


# --- quotient soundness oracle ------------------------------------------------------------


@settings(max_examples=40)
@given(
    st.sampled_from([GridSpec.square(), GridSpec.triangular()]),
    st.integers(1, 4),
    st.integers(1, 4),
    st.data(),
)
def test_grid_quotient_matches_patch_counting(spec, p, q, data):
    raw = data.draw(st.lists(st.integers(1, 3), min_size=p * q, max_size=p * q))
    f = normalized_coloring(tuple(raw))
    quotient = torus_quotient(spec, (p, q))
    assert induced_parameters(quotient, f) == grid_params_by_patch_count(spec, (p, q), f)


@settings(max_examples=40)
@given(
    st.sampled_from([(1,), (1, 2), (1, 2, 4), (2, 3)]),
    st.integers(1, 6),
    st.data(),
)
def test_circulant_quotient_matches_segment_counting(ds, period, data):
    raw = data.draw(st.lists(st.integers(1, 3), min_size=period, max_size=period))
    f = normalized_coloring(tuple(raw))
    spec = CirculantSpec(ds)
    quotient = circulant_quotient(spec, period)
    assert induced_parameters(quotient, f) == circulant_params_by_segment_count(
        spec, period, f
    )


# --- torus search ---------------------------------------------------------------------------


def test_torus_search_triangular_22():
    outcome = torus_search(GridSpec.triangular(), (4, 1), (2, 2), find_all=True)
    assert outcome.status is SearchStatus.WITNESS
    assert Coloring((1, 1, 2, 2), 2) in outcome.witnesses
    quotient = torus_quotient(GridSpec.triangular(), (4, 1))
    target = params(2, 2, 6).matrix()
    for w in outcome.witnesses:
        assert induced_parameters(quotient, w) == target


def test_torus_search_square_43_no_witness():
    for periods in [(2, 2), (3, 3), (4, 4), (3, 4)]:
        outcome = torus_search(GridSpec.square(), periods, (4, 3), find_all=True)
        assert outcome.status is SearchStatus.INCONCLUSIVE
        assert outcome.witnesses == ()


def test_torus_search_single_vertex():
    outcome = torus_search(GridSpec.triangular(), (1, 1), (2, 2))
    assert outcome.status is SearchStatus.INCONCLUSIVE


def test_torus_search_budget():
    with pytest.raises(BudgetExceededError):
        torus_search(GridSpec.square(), (5, 5), (1, 1), budget=2**20)


def test_torus_search_checkerboard():
    outcome = torus_search(GridSpec.square(), (2, 2), (4, 4), find_all=True)
    assert outcome.status is SearchStatus.WITNESS


# --- patch search -----------------------------------------------------------------------------


def test_patch_search_square_43_rejected():
    outcome = patch_search(GridSpec.square(), (4, 3), (6, 6))
    assert outcome.status is SearchStatus.REJECTED
    assert outcome.stats.complete


def test_patch_rejection_is_monotone():
    smaller = patch_search(GridSpec.square(), (4, 3), (6, 6))
    larger = patch_search(GridSpec.square(), (4, 3), (7, 7))
    assert smaller.status is SearchStatus.REJECTED
    assert larger.status is SearchStatus.REJECTED


def test_patch_search_22_inconclusive():
    outcome = patch_search(GridSpec.triangular(), (2, 2), (6, 6))
    assert outcome.status is SearchStatus.INCONCLUSIVE
    assert outcome.stats.complete


def test_patch_search_needs_interior():
    with pytest.raises(ValueError):
        patch_search(GridSpec.square(), (1, 1), (2, 2))


def test_patch_search_budget_exhaustion():
    outcome = patch_search(GridSpec.square(), (4, 3), (8, 8), node_budget=50)
    assert outcome.status is SearchStatus.INCONCLUSIVE
    assert not outcome.stats.complete


def test_patch_search_matrix_target():
    s = params(4, 3, 4).matrix()
    outcome = patch_search(GridSpec.square(), s, (6, 6))
    assert outcome.status is SearchStatus.REJECTED


# --- grid rejection report ----------------------------------------------------------------------


def test_grid_reject_square_43():
    report = grid_reject_2color(GridSpec.square(), params(4, 3, 4))
    assert report.verdict.infeasible
    diag = {d.delta: d for d in report.per_delta}[(1, 1)]
    assert diag.verdict.infeasible
    assert (diag.verdict.lhs, diag.verdict.rhs) == (7, 6)
    assert set(report.monochromatic) == {(1, 1), (1, -1)}


def test_grid_reject_triangular_66_outright():
    report = grid_reject_2color(GridSpec.triangular(), params(6, 6, 6))
    assert report.verdict.infeasible
    assert any(d.adjacent and d.verdict.infeasible for d in report.per_delta)


def test_grid_reject_inside_window_feasible():
    report = grid_reject_2color(GridSpec.triangular(), params(3, 3, 6))
    assert report.verdict.feasible
    assert report.monochromatic == ()


def test_grid_reject_22_not_rejected():
    report = grid_reject_2color(GridSpec.triangular(), params(2, 2, 6))
    assert report.verdict.feasible


def test_grid_reject_finds_quotient_witness():
    # (4,4) on the square grid: diagonals are forced monochromatic, and the
    # index-2 quotient carries the checkerboard, so nothing is rejected
    report = grid_reject_2color(GridSpec.square(), params(4, 4, 4))
    assert report.verdict.feasible
    assert report.note is not None and "witness" in report.note


def test_grid_reject_rank_one_contradiction():
    # degenerate one-dimensional grid: +-1 along the x axis (an embedded path);
    # b+c = 4 > 3 = 2r - h at delta (2,0) forces period 2, so each vertex's two
    # neighbors form one monochromatic class of size 2 and odd b is impossible
    line = GridSpec(frozenset({(1, 0), (-1, 0)}))
    report = grid_reject_2color(line, params(1, 3, 2))
    assert report.verdict.infeasible
    assert "class sizes" in report.verdict.violated
    inconclusive = grid_reject_2color(line, params(2, 2, 2))
    assert inconclusive.verdict.status.value == "inconclusive"


def test_grid_reject_valency_check():
    with pytest.raises(ValueError):
        grid_reject_2color(GridSpec.square(), params(1, 1, 6))


# --- symmetries and canonical forms ---------------------------------------------------------------


def test_offset_automorphism_counts():
    assert len(offset_automorphisms(GridSpec.square())) == 8
    assert len(offset_automorphisms(GridSpec.triangular())) == 12


def test_canonical_form_identifies_rotated_stripes():
    tri = GridSpec.triangular()
    x_stripes = Coloring((1, 1, 2, 2), 2)  # on the (4,1) torus
    y_stripes = Coloring((1, 1, 2, 2), 2)  # on the (1,4) torus
    with_sym = {
        periodic_coloring_canonical(tri, (4, 1), x_stripes, modulus=4),
        periodic_coloring_canonical(tri, (1, 4), y_stripes, modulus=4),
    }
    assert len(with_sym) == 1
    translation_only = {
        periodic_coloring_canonical(tri, (4, 1), x_stripes, modulus=4, use_symmetries=False),
        periodic_coloring_canonical(tri, (1, 4), y_stripes, modulus=4, use_symmetries=False),
    }
    assert len(translation_only) == 2


def test_canonical_form_translation_invariant():
    tri = GridSpec.triangular()
    base = Coloring((1, 1, 2, 2), 2)
    shifted = Coloring((2, 1, 1, 2), 2)  # same stripes, phase moved by one
    assert periodic_coloring_canonical(
        tri, (4, 1), base, modulus=4, use_symmetries=False
    ) == periodic_coloring_canonical(tri, (4, 1), shifted, modulus=4, use_symmetries=False)


def test_canonical_form_modulus_check():
    with pytest.raises(ValueError):
        periodic_coloring_canonical(
            GridSpec.triangular(), (3, 1), Coloring((1, 2, 2), 2), modulus=4
        )
