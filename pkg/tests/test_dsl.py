import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latticeamp.dsl import parse_setup_dsl, render_setup_dsl
from latticeamp.errors import SetupSemanticError, SetupSyntaxError
from latticeamp.setups import Filter, LatticeSpec, Setup, SpacetimePoint as P, random_setup

EXAMPLE = "lattice M=8 tau=0.1\nsource x=3 t=0\nfilter t=2 holes=1,4\ndetect x=3 t=5"


def test_parse_example():
    lattice, setup = parse_setup_dsl(EXAMPLE)
    assert lattice == LatticeSpec(8, 0.1, "periodic")
    assert setup == Setup(P(3, 0), P(3, 5), (Filter(2, {1, 4}),))


def test_comments_and_blank_lines():
    text = "# a comment\n\nlattice M=8 tau=0.1 boundary=open  # trailing\n" + EXAMPLE.split("\n", 1)[1]
    lattice, _ = parse_setup_dsl(text)
    assert lattice.boundary == "open"


def test_empty_hole_list():
    with pytest.raises(SetupSyntaxError) as info:
        parse_setup_dsl("filter t=2 holes=")
    assert (info.value.line, info.value.column) == (1, 18)


@pytest.mark.parametrize("text, line, column", [
    ("lattice M=8 tau=0.1\nsourc x=1 t=0", 2, 1),
    ("lattice M=8 tau=0.1\nsource x=1 t", 2, 12),
    ("lattice M=8 tau=abc", 1, 17),
    ("lattice M=8 tau=0.1 spin=up", 1, 21),
    ("source x=1", 1, 11),
])
def test_syntax_error_locations(text, line, column):
    with pytest.raises(SetupSyntaxError) as info:
        parse_setup_dsl(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_duplicate_source():
    with pytest.raises(SetupSemanticError):
        parse_setup_dsl(EXAMPLE + "\nsource x=1 t=0")


def test_semantic_violations_collected():
    text = "lattice M=4 tau=1\nsource x=9 t=0\nfilter t=7 holes=5\ndetect x=1 t=3"
    with pytest.raises(SetupSemanticError) as info:
        parse_setup_dsl(text)
    assert len(info.value.violations) == 3


def test_filter_tick_collision():
    with pytest.raises(SetupSemanticError):
        parse_setup_dsl(EXAMPLE + "\nfilter t=2 holes=0")


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 9), st.integers(1, 7),
       st.sampled_from(["periodic", "open"]), st.floats(1e-3, 10))
def test_round_trip(seed, M, T, boundary, tau):
    lattice = LatticeSpec(M, tau, boundary)
    setup = random_setup(np.random.default_rng(seed), M, T)
    assert parse_setup_dsl(render_setup_dsl(lattice, setup)) == (lattice, setup)
