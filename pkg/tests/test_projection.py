import pytest

from prelie import (
    DegreeCapError,
    DomainError,
    Section,
    TreeSum,
    all_sections,
    alpha,
    alpha_matrix,
    beta_matrix,
    count_tilde_b,
    default_section,
    enumerate_nonplanar,
    enumerate_planar,
    forget_planarity,
    parse_planar,
    parse_tree,
    psi_bar,
    psi_tilde,
    symmetry_factor,
)
from prelie.products import NONPLANAR
from prelie.projection import default_embedding, planar_embeddings


def tree_sum(*pairs):
    return TreeSum.make(NONPLANAR, [(parse_tree(t), c) for t, c in pairs])


# ---------------------------------------------------------------------------
# projection and fibers


def test_forget_planarity_examples():
    assert forget_planarity(parse_planar("((())())")) == parse_tree("(()(()))")
    assert forget_planarity(parse_planar("(()(()))")) == parse_tree("(()(()))")


def test_fiber_sizes_degree4():
    sizes = [len(planar_embeddings(t)) for t in enumerate_nonplanar(4)]
    assert sorted(sizes) == [1, 1, 1, 2]
    assert sum(sizes) == len(enumerate_planar(4))


def test_fibers_partition_planar_trees():
    for n in range(1, 8):
        seen = []
        for t in enumerate_nonplanar(n):
            fiber = planar_embeddings(t)
            assert all(forget_planarity(sigma) == t for sigma in fiber)
            seen.extend(fiber)
        assert sorted(seen, key=id) and len(seen) == len(set(seen))
        assert set(seen) == set(enumerate_planar(n))


# ---------------------------------------------------------------------------
# projected coefficients


def test_psi_bar_example():
    assert psi_bar(parse_planar("(()())")) == tree_sum(("(()())", 1), ("((()))", 1))


def test_alpha_cherry_spot_values():
    s = parse_tree("(()())")
    tau = parse_planar("(()())")
    assert count_tilde_b(s, tau) == 2
    assert symmetry_factor(s) == 2
    assert alpha(s, tau) == 1


def test_alpha_symmetry_normalization():
    for n in range(1, 6):
        for s in enumerate_nonplanar(n):
            sym = symmetry_factor(s)
            for tau in enumerate_planar(n):
                assert alpha(s, tau) * sym == count_tilde_b(s, tau)


def test_alpha_degree_mismatch():
    with pytest.raises(DomainError):
        alpha(parse_tree("()"), parse_planar("(())"))
    with pytest.raises(DegreeCapError):
        count_tilde_b(enumerate_nonplanar(9, 12)[0], enumerate_planar(9, 12)[0])


def test_alpha_matrix_columns_match_psi_bar():
    for n in range(1, 6):
        m = alpha_matrix(n)
        rows = [parse_tree(r) for r in m.row_basis]
        for col_name in m.col_basis:
            image = psi_bar(parse_planar(col_name))
            assert m.column(col_name) == tuple(image.coefficient(s) for s in rows)


def test_alpha_column_sums_match_planar_column_sums():
    # projecting preserves total coefficient mass per column
    from prelie import psi_matrix

    for n in range(1, 7):
        assert alpha_matrix(n).column_sums() == psi_matrix(n).column_sums()


# ---------------------------------------------------------------------------
# sections


def test_default_section_examples():
    s = parse_tree("(()(()))")
    assert default_embedding(s).serialize() == "((())())"
    sec = default_section(4)
    assert sec(s).serialize() == "((())())"
    assert sec(parse_tree("(()()())")).serialize() == "(()()())"


def test_section_round_trip_text():
    sec = default_section(3)
    text = sec.to_text()
    again = Section.from_text(text + "# trailing comment\n")
    assert dict(again.items()) == dict(sec.items())


def test_section_validation_errors():
    with pytest.raises(DomainError):
        Section({parse_tree("((()))"): parse_planar("(()())")})
    with pytest.raises(DomainError):
        Section.from_text("((())) -> ((()))\n")
    with pytest.raises(DomainError):
        default_section(3)(parse_tree("(()()())"))


def test_all_sections_degree4():
    secs = list(all_sections(4))
    assert len(secs) == 2
    star = parse_tree("(()(()))")
    images = {sec(star).serialize() for sec in secs}
    assert images == {"((())())", "(()(()))"}


def test_psi_tilde_leading_term():
    for n in range(1, 6):
        sec = default_section(n)
        for t in enumerate_nonplanar(n):
            image = psi_tilde(sec, t)
            assert image.coefficient(t) == 1


# ---------------------------------------------------------------------------
# base-change matrices


def test_beta_matrix_degree3():
    m = beta_matrix(default_section(3), 3)
    assert m.row_basis == ("((()))", "(()())")
    assert m.entries == ((1, 1), (0, 1))


def test_beta_matrix_degree4_default():
    m = beta_matrix(default_section(4), 4)
    assert m.row_basis == ("(((())))", "((()()))", "((())())", "(()()())")
    assert m.entries == (
        (1, 1, 1, 1),
        (0, 1, 0, 1),
        (0, 0, 1, 3),
        (0, 0, 0, 1),
    )


def test_beta_matrix_unipotent_for_every_section():
    for n in range(1, 6):
        for sec in all_sections(n):
            m = beta_matrix(sec, n)
            assert m.is_unipotent_upper_triangular()
            assert m.determinant() == 1


def test_beta_matrix_coverage_error():
    with pytest.raises(DomainError):
        beta_matrix(default_section(3), 4)
