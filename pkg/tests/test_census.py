import pytest
from hypothesis import given, strategies as st

from arcfloer import (
    EndCell,
    GradedDims,
    RuptureCell,
    TrunkCell,
    build_minimal_graph,
    classify,
    contact_components,
    euler_characteristic_c,
    hc_graded_dims,
    lefschetz_number,
    m_separating_refinement,
)


def census_for(curve, m):
    graph = m_separating_refinement(build_minimal_graph(curve), m)
    dec = classify(graph, m)
    return graph, contact_components(graph, dec, m)


# -- GradedDims ---------------------------------------------------------------


def test_graded_dims_basics():
    dims = GradedDims({3: 2, 5: 1})
    assert dims[3] == 2 and dims[4] == 0
    assert dims.shifted(2) == GradedDims({5: 2, 7: 1})
    assert (dims + GradedDims({3: 1})) == GradedDims({3: 3, 5: 1})
    assert dims.euler() == -2 - 1
    assert not GradedDims()
    assert GradedDims().to_json_dict() == {}


def test_graded_dims_rejects_negative():
    with pytest.raises(ValueError):
        GradedDims({0: -1})


@given(
    st.dictionaries(
        st.integers(min_value=-30, max_value=30),
        st.integers(min_value=0, max_value=9),
        max_size=8,
    ),
    st.integers(min_value=-10, max_value=10),
)
def test_graded_dims_shift_preserves_euler_parity(dims, shift):
    gd = GradedDims(dims)
    assert gd.shifted(shift).euler() == (-1) ** shift * gd.euler()


# -- census shapes ------------------------------------------------------------


def test_cusp_m6_census(corpus):
    graph, census = census_for(corpus["cusp"], 6)
    (cell,) = census
    assert isinstance(cell, RuptureCell)
    assert cell.copies == 1
    assert cell.euler_char == 6 * (2 - 3) + 2 + 3 == -1
    assert cell.punctures == 1
    assert cell.affine_dim == 7
    assert cell.genus == 1


def test_node_m2_census(corpus):
    graph, census = census_for(corpus["node"], 2)
    (cell,) = census
    assert isinstance(cell, TrunkCell)
    assert cell.copies == 1 and cell.affine_dim == 2


def test_cusp_m2_census_end_cell(corpus):
    graph, census = census_for(corpus["cusp"], 2)
    (cell,) = census
    assert isinstance(cell, EndCell)
    assert cell.copies == 2
    assert cell.affine_dim == 4 - 1 * 2 + 1 == 3


def test_cusp_m5_census_empty(corpus):
    graph, census = census_for(corpus["cusp"], 5)
    assert census == []


def test_tacnode_m4_census(corpus):
    graph, census = census_for(corpus["tacnode"], 4)
    (cell,) = census
    assert isinstance(cell, RuptureCell)
    assert cell.euler_char == -2 and cell.punctures == 2
    assert cell.affine_dim == 5 and cell.genus == 1


def test_twopair_m12_census(corpus):
    graph, census = census_for(corpus["twopair"], 12)
    (cell,) = census
    assert isinstance(cell, RuptureCell)
    assert cell.copies == 2
    assert cell.euler_char == -1 and cell.punctures == 1
    assert cell.affine_dim == 24 - 5 == 19


def test_node_m4_census_counts_all_dividing_multiplicities(corpus):
    # divisors with N in {2, 4, 4} all divide 4: three trunk cells, as the
    # jet-space elimination in test_jet_oracle.py confirms
    graph, census = census_for(corpus["node"], 4)
    assert [type(c) for c in census] == [TrunkCell] * 3
    assert sorted(c.affine_dim for c in census) == [4, 4, 4]
    assert hc_graded_dims(census) == GradedDims({9: 3, 10: 3})


def test_hc_dims_examples(corpus):
    graph, census = census_for(corpus["cusp"], 6)
    assert hc_graded_dims(census) == GradedDims({15: 2, 16: 1})
    graph, census = census_for(corpus["cusp"], 2)
    assert hc_graded_dims(census) == GradedDims({6: 2})
    assert hc_graded_dims([]) == GradedDims()


def test_euler_characteristic_examples():
    assert euler_characteristic_c(GradedDims({15: 2, 16: 1})) == -1
    assert euler_characteristic_c(GradedDims({9: 2, 10: 2})) == 0
    assert euler_characteristic_c(GradedDims()) == 0


def test_cell_dimension_coherence(corpus):
    # every census cell has total complex dimension 2m - m_E nu_E + 1
    # measured at its own divisor, bounded by the maximum over m-divisors
    for curve in corpus.values():
        for m in range(1, 31):
            graph, census = census_for(curve, m)
            dims = []
            for cell in census:
                if isinstance(cell, TrunkCell):
                    dims.append(cell.affine_dim + 1)
                elif isinstance(cell, EndCell):
                    dims.append(cell.affine_dim)
                else:
                    dims.append(cell.affine_dim + 1)
            if not dims:
                continue
            bound = max(
                2 * m - (m // graph.nodes[e].N) * graph.nodes[e].nu + 1
                for e in graph.exceptional_ids()
                if m % graph.nodes[e].N == 0
            )
            assert all(d <= bound for d in dims)


def test_rupture_cells_have_integral_genus(corpus):
    for curve in corpus.values():
        for m in range(1, 31):
            graph, census = census_for(curve, m)
            for cell in census:
                if isinstance(cell, RuptureCell):
                    assert cell.punctures >= 1
                    assert cell.euler_char <= 1
                    assert cell.genus >= 0


def test_emptiness_matches_m_divisors(corpus):
    for curve in corpus.values():
        for m in range(1, 31):
            graph, census = census_for(curve, m)
            has_m_divisor = any(
                m % graph.nodes[e].N == 0 for e in graph.exceptional_ids()
            )
            assert bool(census) == has_m_divisor


def test_euler_equals_lefschetz(corpus):
    for curve in corpus.values():
        for m in range(1, 31):
            graph, census = census_for(curve, m)
            assert euler_characteristic_c(hc_graded_dims(census)) == (
                lefschetz_number(graph, m)
            )
