from fractions import Fraction

import pytest

from core.errors import CapExceeded, PreconditionViolation
from core.oracles import (
    BICLIQUE_ORACLES,
    SEPARATOR_ORACLES,
    best_biclique,
    bipartite_biclique_oracle,
    exhaustive_biclique_oracle,
    pipeline_separator_oracle,
)
from core.separation import verify_cs_separator
from core.trigraph import Trigraph
from core.weights import BicliqueKind, verify_biclique
from utils.fixtures import fixture


def test_registries():
    assert set(BICLIQUE_ORACLES) == {"exhaustive", "bipartite"}
    assert set(SEPARATOR_ORACLES) == {"all-cuts", "pipeline"}


def test_best_biclique_of_c4(c4):
    b = best_biclique(c4)
    assert (b.x, b.y, b.kind, b.weight) == (0b0101, 0b1010, BicliqueKind.COMPLETE, 2)


def test_best_biclique_with_weights(c4):
    b = best_biclique(c4, [5, 1, 1, 1])
    assert verify_biclique(c4, b, [5, 1, 1, 1]) is None
    assert b.weight == 2


def test_best_biclique_cap():
    with pytest.raises(CapExceeded):
        best_biclique(Trigraph.empty(17))


def test_exhaustive_oracle_needs_a_strong_pair():
    with pytest.raises(PreconditionViolation):
        exhaustive_biclique_oracle(fixture("pair"), [1, 1], Fraction(1, 4))


def test_bipartite_oracle_splits_the_heavier_class(c6):
    b = bipartite_biclique_oracle(c6, [1] * 6, Fraction(1, 4))
    assert (b.x, b.y, b.kind) == (0b000101, 0b010000, BicliqueKind.ANTICOMPLETE)
    assert verify_biclique(c6, b, [1] * 6) is None


def test_bipartite_oracle_refuses_odd_cycles():
    with pytest.raises(PreconditionViolation):
        bipartite_biclique_oracle(fixture("K3"), [1, 1, 1], Fraction(1, 4))


def test_pipeline_separator_oracle(c6):
    assert verify_cs_separator(c6, pipeline_separator_oracle(c6))[0]
