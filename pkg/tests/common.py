"""Shared strategies and helpers for the rt_surfaces tests."""
from __future__ import annotations

from hypothesis import strategies as st

from rt_surfaces.expression import (
    Add,
    Const,
    Cos,
    Exp,
    ExprNode,
    IntPow,
    Mul,
    Neg,
    Sin,
    Sub,
    Var,
    parse,
)
from rt_surfaces.jet import Jet2
from rt_surfaces.models import GeneratorPair

# Largest jet component accepted from random samples
SAMPLE_MAGNITUDE = 50.0


def pair(f: str, g: str) -> GeneratorPair:
    """Parse a generator pair from text."""
    return GeneratorPair(parse(f), parse(g))


def bounded(jet: Jet2, limit: float = SAMPLE_MAGNITUDE) -> bool:
    """Return True when every jet component is below limit in modulus."""
    return all(abs(c) < limit for c in (jet.v, jet.d1, jet.d2))


constants = st.complex_numbers(
    max_magnitude=2, allow_nan=False, allow_infinity=False
).map(lambda c: Const(complex(c)))

points = st.complex_numbers(max_magnitude=1, allow_nan=False, allow_infinity=False)


def _extend(children: st.SearchStrategy[ExprNode]) -> st.SearchStrategy[ExprNode]:
    return st.one_of(
        st.builds(Add, children, children),
        st.builds(Sub, children, children),
        st.builds(Mul, children, children),
        st.builds(Neg, children),
        st.builds(IntPow, children, st.integers(min_value=0, max_value=3)),
        st.builds(Exp, children),
        st.builds(Sin, children),
        st.builds(Cos, children),
    )


# Pole-free trees: no Div or Log, so every tree is entire
trees = st.recursive(st.one_of(constants, st.just(Var())), _extend, max_leaves=6)

# Generator data that keeps the Gauss map well away from degenerate
gauss_trees = st.one_of(
    st.just(parse("z")),
    st.just(parse("z^2 + 1")),
    st.just(parse("exp(z)")),
    st.just(parse("z^3/3 + z")),
    st.just(parse("sin(z) + 2*z")),
    st.builds(lambda c: Add(Var(), Mul(c, IntPow(Var(), 2))), constants),
)
