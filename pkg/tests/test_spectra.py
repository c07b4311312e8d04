import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powergraph.graphs import complete_graph
from powergraph.groups import GroupParams
from powergraph.matrices import a_alpha, adjacency, rd_alpha, reciprocal_transmission
from powergraph.spectra import (
    BlockForm,
    BlockFormError,
    EigensolverError,
    Spectrum,
    a_alpha_closed_form,
    a_alpha_families,
    a_alpha_quotient_matrix,
    assemble_block_matrix,
    block_reduce,
    cluster_values,
    compare_spectra,
    quintic_roots,
    quintic_transcription_check,
    rd_alpha_closed_form,
    rd_quotient_transcription_check,
    sym_eigenvalues,
    sym_eigh,
    twin_eigenvalues,
)

P23 = GroupParams(2, 3)


def test_sym_eigenvalues_basics():
    assert np.allclose(sym_eigenvalues(np.diag([3.0, 1.0, 2.0])), [3, 2, 1])
    assert np.allclose(sym_eigenvalues(np.array([[0.0, 1.0], [1.0, 0.0]])), [1, -1])


def test_sym_eigenvalues_rejects_asymmetric():
    with pytest.raises(EigensolverError):
        sym_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        sym_eigenvalues(np.eye(2), tol=0.0)


def test_sym_eigh_reconstruction():
    rng = np.random.default_rng(7)
    m = rng.standard_normal((12, 12))
    m = (m + m.T) / 2
    values, vectors = sym_eigh(m, tol=1e-10)
    assert np.all(np.diff(values) <= 0)
    assert np.allclose(vectors @ np.diag(values) @ vectors.T, m, atol=1e-10)


def test_spectral_radius_bounds(family):
    _, graph, _ = family(2, 3)
    values = sym_eigenvalues(adjacency(graph))
    degrees = graph.degrees()
    assert degrees.mean() <= values[0] <= degrees.max()


def test_eigenvalue_count_and_trace(family):
    _, graph, _ = family(2, 3)
    for alpha in (0.0, 0.3, 1.0):
        m = a_alpha(graph, alpha)
        values = sym_eigenvalues(m)
        assert len(values) == graph.n
        assert abs(values.sum() - np.trace(m)) <= 1e-9 * max(1.0, abs(np.trace(m)))


def test_rd_trace_identity(family):
    _, graph, _ = family(2, 3)
    for alpha in (0.25, 0.75):
        m = rd_alpha(graph, alpha)
        values = sym_eigenvalues(m)
        rt_sum = np.diag(reciprocal_transmission(graph)).sum()
        assert abs(values.sum() - alpha * rt_sum) <= 1e-9 * max(1.0, rt_sum)


def test_twin_eigenvalue_lines(family):
    _, graph, _ = family(2, 3)
    alpha = 0.3
    lines = {(round(ln.value, 12), ln.multiplicity) for ln in twin_eigenvalues(graph, alpha).lines}
    assert (round(alpha, 12), 5) in lines            # pendant class
    assert (round(12 * alpha - 1, 12), 9) in lines   # rotation clique class
    assert (round(4 * alpha - 1, 12), 3) in lines    # the order-4 pairs


def test_minus_one_multiplicity_at_alpha_zero(family):
    _, graph, _ = family(2, 3)
    values = sym_eigenvalues(a_alpha(graph, 0.0))
    assert int(np.sum(np.abs(values + 1.0) < 1e-9)) >= 12


def test_a_alpha_family_values_at_half():
    fams = {(v, m) for v, m, _ in a_alpha_families(P23, 0.5)}
    assert fams == {(0.5, 5), (5.0, 9), (1.0, 3), (2.0, 2)}


@pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5, 0.75, 1.0])
def test_a_alpha_closed_form_matches_numeric(family, alpha):
    params, graph, _ = family(2, 3)
    closed = a_alpha_closed_form(params, alpha)
    numeric = sym_eigenvalues(a_alpha(graph, alpha))
    assert closed.total == graph.n
    assert np.abs(closed.values() - numeric).max() <= 1e-8


def test_quintic_root_sum_trace_identity(family):
    params, graph, _ = family(2, 3)
    alpha = 0.4
    quotient_sum = sym_eigenvalues(a_alpha_quotient_matrix(params, alpha)).sum()
    family_sum = sum(v * m for v, m, _ in a_alpha_families(params, alpha))
    trace = np.trace(a_alpha(graph, alpha))
    assert abs(quotient_sum - (trace - family_sum)) <= 1e-9 * max(1.0, abs(trace))


def test_quintic_transcription_matches_at_alpha_zero():
    check = quintic_transcription_check(P23, 0.0)
    assert check.matches
    assert check.diagnostic is None


def test_quintic_transcription_flags_published_typo():
    # the printed linear coefficient is off by 5 * 2^k p * alpha^3
    check = quintic_transcription_check(P23, 0.5)
    assert not check.matches
    assert "mismatch" in check.diagnostic


def test_quintic_roots_real_on_grid():
    for alpha in (0.0, 0.25, 0.5, 0.75, 1.0):
        assert not quintic_roots(P23, alpha).real_flagged


def test_quintic_roots_agree_with_quotient_where_transcription_holds():
    # at alpha = 0 the published polynomial is exact, so the two routes coincide
    roots = quintic_roots(P23, 0.0).roots
    quotient = sym_eigenvalues(a_alpha_quotient_matrix(P23, 0.0))
    assert np.abs(roots - quotient).max() <= 1e-6


# block reduction ----------------------------------------------------------


def test_block_reduce_degenerate_copy():
    form = BlockForm(u=[[1.0]], v=[[2.0]], x=[[5.0]], w=[[0.0]], copies=1)
    direct = sym_eigenvalues(assemble_block_matrix(form))
    assert np.allclose(block_reduce(form).values(), direct)


def test_block_reduce_k3():
    form = BlockForm(u=[[0.0]], v=[[1.0]], x=[[0.0]], w=[[1.0]], copies=2)
    assert np.array_equal(assemble_block_matrix(form), complete_graph(3).adj.astype(float))
    values = block_reduce(form).values()
    assert np.allclose(values, [2.0, -1.0, -1.0], atol=1e-12)


def test_block_reduce_random_forms():
    rng = np.random.default_rng(123)
    for _ in range(30):
        m1 = int(rng.integers(1, 5))
        m2 = int(rng.integers(1, 5))
        c = int(rng.integers(1, 7))
        sym = lambda m: (m + m.T) / 2
        form = BlockForm(
            u=sym(rng.standard_normal((m1, m1))),
            v=rng.standard_normal((m1, m2)),
            x=sym(rng.standard_normal((m2, m2))),
            w=sym(rng.standard_normal((m2, m2))),
            copies=c,
        )
        reduced = block_reduce(form).values()
        direct = sym_eigenvalues(assemble_block_matrix(form))
        assert np.abs(reduced - direct).max() <= 1e-9


@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 4), st.integers(0, 2**31 - 1))
@settings(max_examples=40, deadline=None)
def test_block_reduce_property(m1, m2, c, seed):
    rng = np.random.default_rng(seed)
    sym = lambda m: (m + m.T) / 2
    form = BlockForm(
        u=sym(rng.standard_normal((m1, m1))),
        v=rng.standard_normal((m1, m2)),
        x=sym(rng.standard_normal((m2, m2))),
        w=sym(rng.standard_normal((m2, m2))),
        copies=c,
    )
    reduced = block_reduce(form).values()
    direct = sym_eigenvalues(assemble_block_matrix(form))
    assert np.abs(reduced - direct).max() <= 1e-9


def test_block_form_validation():
    with pytest.raises(BlockFormError):
        BlockForm(u=[[0.0, 1.0], [0.0, 0.0]], v=[[1.0], [1.0]], x=[[0.0]], w=[[0.0]], copies=2)
    with pytest.raises(BlockFormError):
        BlockForm(u=[[0.0]], v=[[1.0]], x=[[0.0]], w=[[0.0]], copies=0)
    with pytest.raises(BlockFormError):
        BlockForm(u=[[0.0]], v=[[1.0, 2.0]], x=[[0.0]], w=[[0.0]], copies=2)


# reciprocal-distance closed form -------------------------------------------


@pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5, 0.75, 1.0])
def test_rd_alpha_closed_form_matches_numeric(family, alpha):
    params, graph, _ = family(2, 3)
    closed = rd_alpha_closed_form(params, alpha)
    numeric = sym_eigenvalues(rd_alpha(graph, alpha))
    assert np.abs(closed.values() - numeric).max() <= 1e-8


def test_rd_alpha_at_one_equals_transmissions(family):
    params, graph, _ = family(2, 3)
    closed = rd_alpha_closed_form(params, 1.0).values()
    rt = np.sort(np.diag(reciprocal_transmission(graph)))[::-1]
    assert np.array_equal(closed, rt)


def test_rd_alpha_total_at_2_5():
    assert rd_alpha_closed_form(GroupParams(2, 5), 0.5).total == 40


def test_rd_quotient_transcription_flags_published_diagonal():
    check = rd_quotient_transcription_check(P23, 0.5)
    assert not check.matches
    assert "diagonal" in check.diagnostic


# spectrum plumbing ----------------------------------------------------------


def test_compare_spectra_identical(family):
    params, _, _ = family(2, 3)
    s = a_alpha_closed_form(params, 0.25)
    match = compare_spectra(s, s, tol=0.0)
    assert match.ok and match.max_deviation == 0.0


def test_compare_spectra_detects_perturbation(family):
    params, _, _ = family(2, 3)
    s = a_alpha_closed_form(params, 0.25)
    lines = [(ln.value, ln.multiplicity, ln.source) for ln in s.lines]
    lines[0] = (lines[0][0] + 1e-3, lines[0][1], lines[0][2])
    perturbed = Spectrum.from_lines(lines)
    match = compare_spectra(s, perturbed, tol=1e-8)
    assert not match.ok and match.max_deviation >= 1e-3 - 1e-12


def test_compare_spectra_total_mismatch(family):
    params, _, _ = family(2, 3)
    s = a_alpha_closed_form(params, 0.25)
    short = Spectrum.from_lines([(1.0, 3, "numeric")])
    match = compare_spectra(s, short, tol=1e-8)
    assert not match.structural_ok


def test_clustering_recovers_multiplicities(family):
    params, graph, _ = family(2, 3)
    numeric = sym_eigenvalues(a_alpha(graph, 0.25))
    tol = 1e-6 * max(1.0, float(np.abs(numeric).max()))
    clustered = dict(cluster_values(numeric, tol))
    mults = sorted(clustered.values(), reverse=True)
    # families 5, 9, 3, 2 plus five simple quotient roots
    assert mults == [9, 5, 3, 2, 1, 1, 1, 1, 1]


def test_spectrum_json_round_trip(family):
    params, _, _ = family(2, 3)
    payload = a_alpha_closed_form(params, 0.5).to_json_dict()
    assert payload["total"] == 24
    assert sum(line["multiplicity"] for line in payload["lines"]) == 24
