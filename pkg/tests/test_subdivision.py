import math

import numpy as np
import pytest

from analytics.corpus import named_polytopes, section_corpus
from common.errors import DegenerateInput
from common.parameters import CORPUS_SEED, QUICK_SECTION_COUNTS, SECTION_COUNTS, SECTION_FAMILIES
from core.polytope import contains, cube, polytope_volume
from core.subdivision import (build_simplices, canonical_orthoscheme, chain_defect, covering_check,
                              enumerate_flags, is_orthoscheme, orthoscheme_defect, orthoscheme_from_b,
                              orthoscheme_from_edges)


@pytest.mark.parametrize("n, expected", [(1, 2), (2, 8), (3, 48), (4, 384)])
def test_cube_flag_count(n, expected):
    """[-1, 1]^n has 2^n n! flags."""
    assert len(enumerate_flags(cube(n))) == expected


def test_flags_descend_one_codimension_at_a_time(cube3):
    """Each flag runs P > facet > edge > vertex with nested vertex sets."""
    for flag in enumerate_flags(cube3):
        faces = [cube3.faces[i] for i in flag.faces]
        assert [f.codim for f in faces] == [0, 1, 2, 3]
        for outer, inner in zip(faces, faces[1:]):
            assert inner.vertex_ids < outer.vertex_ids


def test_hexagon_subdivision(hexagon):
    """Twelve congruent triangles of area sqrt 3 / 4."""
    triples = build_simplices(hexagon)
    assert len(triples) == 12
    assert not any(t.degenerate for t in triples)
    for t in triples:
        assert t.volume == pytest.approx(math.sqrt(3) / 4)


def test_cube_subdivision_tiles_the_cube(cube3):
    """48 simplices of volume 1/6 that cover [-1, 1]^3 without overlap."""
    triples = build_simplices(cube3)
    assert sum(t.volume for t in triples) == pytest.approx(8.0)
    report = covering_check(cube3, triples, sample_count=2000, seed=1)
    assert report.passed
    assert report.uncovered_hits == 0
    assert report.max_overlap_hits == 0


def test_missing_simplex_is_detected(cube3):
    """Dropping one simplex leaves sampled points uncovered and a volume gap."""
    triples = build_simplices(cube3)[1:]
    report = covering_check(cube3, triples, sample_count=4000, seed=1)
    assert not report.passed
    assert report.uncovered_hits > 0
    assert report.volume_gap == pytest.approx(1 / 6)


def test_degenerate_simplices_are_kept_and_flagged(lopsided_pentagon):
    """Two of ten flags collapse; the rest still tile the pentagon."""
    triples = build_simplices(lopsided_pentagon)
    assert len(triples) == 10
    assert sum(t.degenerate for t in triples) == 2
    live = [t for t in triples if not t.degenerate]
    assert sum(t.volume for t in live) == pytest.approx(polytope_volume(lopsided_pentagon))
    assert covering_check(lopsided_pentagon, triples, sample_count=3000, seed=5).passed


def test_b_chain_is_orthogonal(hexagon, lopsided_pentagon, cube3):
    """Consecutive feet of nested affine spans form a right-angled chain."""
    for P in (hexagon, lopsided_pentagon, cube3):
        for t in build_simplices(P):
            assert chain_defect(t) <= 1e-9


def test_cube_flag_gives_the_canonical_orthoscheme(cube3):
    """Every B of the cube is the orthoscheme with unit edges."""
    canonical = canonical_orthoscheme(3)
    for t in build_simplices(cube3)[:6]:
        o = orthoscheme_from_b(t)
        assert np.allclose(o.vertices, canonical.vertices, atol=1e-12)
        assert np.allclose(o.edge_lengths, 1.0)


def test_orthoscheme_from_b_rejects_degenerate_triples(lopsided_pentagon):
    """A collapsed flag simplex has no orthoscheme."""
    degenerate = next(t for t in build_simplices(lopsided_pentagon) if t.degenerate)
    with pytest.raises(DegenerateInput):
        orthoscheme_from_b(degenerate)


def test_orthoscheme_defect():
    """Edge-built orthoschemes pass; a skewed simplex does not."""
    o = orthoscheme_from_edges([2.0, 0.5, 1.5])
    assert orthoscheme_defect(o) <= 1e-12
    assert is_orthoscheme(o)
    skewed = orthoscheme_from_edges([1.0, 1.0])
    skewed.vertices[2] = [2.0, 1.0]
    assert not is_orthoscheme(skewed)


def test_canonical_orthoscheme_rejects_zero_dimension():
    """n must be positive."""
    with pytest.raises(ValueError):
        canonical_orthoscheme(0)


def _test_polytopes(hexagon, lopsided_pentagon):
    return [P for _, P in named_polytopes(seed=11)] + [hexagon, lopsided_pentagon, cube(4)]


def test_anchors_after_the_first_lie_in_the_facet(hexagon, lopsided_pentagon):
    """a_1..a_n all sit on the facet F_1 of their flag."""
    for P in _test_polytopes(hexagon, lopsided_pentagon):
        for t in build_simplices(P):
            facet = P.faces[t.flag.faces[1]]
            tight = P.normals[list(facet.active)] @ t.a[1:].T
            assert np.allclose(tight, P.offsets[list(facet.active)][:, None], atol=1e-9)
            assert contains(P, t.a[1:]).all()


def test_every_b_is_an_orthoscheme(hexagon, lopsided_pentagon):
    """In the adapted frame each B is lower triangular, right-angled and keeps its vertex norms."""
    for P in _test_polytopes(hexagon, lopsided_pentagon):
        checked = 0
        for t in build_simplices(P):
            if t.degenerate:
                continue
            try:
                o = orthoscheme_from_b(t)
            except DegenerateInput:
                continue
            assert is_orthoscheme(o)
            assert np.allclose(np.linalg.norm(o.vertices, axis=1), np.linalg.norm(t.b, axis=1), atol=1e-9)
            assert np.allclose(np.triu(o.vertices), 0.0, atol=1e-9)
            checked += 1
        assert checked > 0


def _assert_corpus_tiled(counts):
    for n, sizes in SECTION_FAMILIES.items():
        for N, index, P in section_corpus(n, sizes, counts[n], CORPUS_SEED + n):
            report = covering_check(P, build_simplices(P), sample_count=10_000, seed=index)
            assert report.passed, (n, N, index)
            assert report.uncovered_hits == 0 and report.max_overlap_hits == 0


def test_named_polytopes_are_tiled(hexagon, lopsided_pentagon):
    """Volume sum and 10^4 sample points for every hand-picked polytope."""
    for P in _test_polytopes(hexagon, lopsided_pentagon):
        report = covering_check(P, build_simplices(P), sample_count=10_000, seed=2)
        assert report.passed
        assert report.volume_gap <= 1e-8 * polytope_volume(P)


def test_quick_section_corpus_is_tiled():
    """The quick seeded corpus of sections, 10^4 sample points each."""
    _assert_corpus_tiled(QUICK_SECTION_COUNTS)


@pytest.mark.slow
def test_full_section_corpus_is_tiled():
    """The acceptance-size corpus."""
    _assert_corpus_tiled(SECTION_COUNTS)
