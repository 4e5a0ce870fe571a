import pytest

import corpus
import settings
from coxring import irrelevant_components
from errors import InputError
from fitting import (fitting_ideal, fitting_ladder, generation_obstruction, in_relevant_spectrum,
                     is_locally_free_rank, locally_free_rank_of_cokernel, satinv_compare,
                     saturated_fitting)
from freemod import FreeModule, GradedMatrix, Presentation, cyclic_presentation, module_presentation, zero_map
from groebner import Ideal, contains
from polynomial import parse_poly


def _matrix(cox, rows, source, target):
    ring = cox.ring
    return GradedMatrix(FreeModule(ring, tuple(source)), FreeModule(ring, tuple(target)),
                        [[parse_poly(s, ring) for s in row] for row in rows])


@pytest.fixture(scope="module")
def three_points_sheaf(p1p1):
    return corpus.three_points_presentation(p1p1)


def test_three_points_fitting_ideals(p1p1, three_points_sheaf):
    P = three_points_sheaf
    assert fitting_ideal(0, P).is_zero()
    assert fitting_ideal(1, P) == corpus.three_points(p1p1)
    assert fitting_ideal(2, P) == corpus.ideal_of(p1p1, ["x0", "x1", "y0", "y1"])
    assert fitting_ideal(3, P).is_unit()
    with pytest.raises(InputError):
        fitting_ideal(-1, P)


def test_three_points_saturated_ladder(p1p1, B_p1p1, three_points_sheaf):
    P = three_points_sheaf
    assert saturated_fitting(2, P, B_p1p1).is_unit()
    assert saturated_fitting(1, P, B_p1p1) == corpus.three_points(p1p1)
    assert saturated_fitting(0, P, B_p1p1).is_zero()
    assert is_locally_free_rank(P, B_p1p1) is None


def test_ladder_is_increasing(p1p1, B_p1p1, three_points_sheaf):
    ladder = fitting_ladder(three_points_sheaf, B_p1p1)
    assert len(ladder.entries) == 4
    for j in range(3):
        assert contains(ladder.fitting(j + 1), ladder.fitting(j))
        assert contains(ladder.saturated(j + 1), ladder.saturated(j))
    assert ladder.fitting(7).is_unit()
    out = ladder.to_schema("fitting", 0, locally_free_rank=None).model_dump(by_alias=True)
    assert out["entries"][3]["saturated"] == ["1"]
    assert fitting_ladder(three_points_sheaf, jmax=1).entries[1].saturated is None


def test_free_module_is_locally_free(p1p1, B_p1p1):
    target = FreeModule(p1p1.ring, ((0, 0), (1, 0)))
    P = Presentation(zero_map(FreeModule(p1p1.ring, ()), target))
    assert is_locally_free_rank(P, B_p1p1) == 2


def test_irrelevant_quotient_is_rank_zero(p1):
    B = irrelevant_components(p1)
    P = cyclic_presentation(corpus.ideal_of(p1, ["x0", "x1"]))
    assert is_locally_free_rank(P, B) == 0


def test_cokernel_rank_matches_fitting_test(p1):
    B = irrelevant_components(p1)
    row = _matrix(p1, [["x0", "x1"]], [(1,), (1,)], [(0,)])
    assert locally_free_rank_of_cokernel(row, B) == 0
    assert is_locally_free_rank(Presentation(row), B) == 0
    column = _matrix(p1, [["-x1"], ["x0"]], [(2,)], [(1,), (1,)])
    assert locally_free_rank_of_cokernel(column, B) == 1
    assert is_locally_free_rank(Presentation(column), B) == 1


def test_cokernel_rank_fails_at_points(B_p1p1, three_points_sheaf):
    assert locally_free_rank_of_cokernel(three_points_sheaf.matrix, B_p1p1) is None


def test_satinv_compare(p1, p1p1, B_p1p1, three_points_sheaf):
    I = corpus.three_points(p1p1)
    assert satinv_compare(three_points_sheaf, module_presentation(I), B_p1p1, 3)
    line = cyclic_presentation(corpus.ideal_of(p1p1, ["x0"]))
    padded = cyclic_presentation(corpus.ideal_of(p1p1, ["x0*y0", "x0*y1"]))
    assert satinv_compare(line, padded, B_p1p1, 1)
    other = cyclic_presentation(corpus.ideal_of(p1p1, ["x1"]))
    assert not satinv_compare(line, other, B_p1p1, 1)
    with pytest.raises(InputError):
        satinv_compare(line, cyclic_presentation(corpus.ideal_of(p1, ["x0"])), B_p1p1, 1)


def test_generation_obstruction(p1p1, B_p1p1, three_points_sheaf):
    P = three_points_sheaf
    point = corpus.ideal_of(p1p1, ["x0", "y0"])
    assert generation_obstruction(P, 1, point, B_p1p1)
    assert not generation_obstruction(P, 2, point, B_p1p1)
    elsewhere = corpus.ideal_of(p1p1, ["x1", "y1"])
    assert not generation_obstruction(P, 1, elsewhere, B_p1p1)
    result = generation_obstruction(P, 1, corpus.ideal_of(p1p1, ["x0", "x1"]), B_p1p1)
    assert not result.obstructed
    assert not result.q_saturated


def test_relevant_spectrum(p1p1, B_p1p1):
    I = corpus.three_points(p1p1)
    assert in_relevant_spectrum(corpus.ideal_of(p1p1, ["x0", "y0"]), I, B_p1p1)
    assert not in_relevant_spectrum(corpus.ideal_of(p1p1, ["x0", "x1"]), I, B_p1p1)
    assert not in_relevant_spectrum(corpus.ideal_of(p1p1, ["x1", "y1"]), I, B_p1p1)
    assert in_relevant_spectrum(corpus.ideal_of(p1p1, ["x1", "y1"]), Ideal.zero(p1p1.ring), B_p1p1)


def test_ladder_does_not_depend_on_worker_count(monkeypatch, B_p1p1, three_points_sheaf):
    dumps = []
    for workers in (1, 4):
        monkeypatch.setattr(settings, "WORKERS", workers)
        ladder = fitting_ladder(three_points_sheaf, B_p1p1)
        out = ladder.to_schema("fitting", 0, locally_free_rank=is_locally_free_rank(three_points_sheaf, B_p1p1))
        dumps.append(out.model_dump_json(by_alias=True))
    assert dumps[0] == dumps[1]
