from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orientsign.divisor import (
    DivisorConfig,
    DivisorShape,
    FactorAction,
    conjugate_swap_monodromy,
    enumerate_configs,
    eval_bigres,
    eval_separating,
    eval_spin_case,
    is_adapted,
    is_adapted_bruteforce,
    renumbering_group_order,
    t_factor_from_reversals,
    validate_config,
    witness_config,
)
from orientsign.errors import (
    InvalidAction,
    InvalidDivisor,
    MissingFactor,
    NotSeparating,
    SpinHypothesisViolated,
)
from orientsign.pin import DiffeoClass, PinAction, SignedPermutation
from orientsign.topology import RealBundle, RealCurve, SpinClass, realizable_types

from strategies import curve_and_bundle, diffeos, pattern_perms, pin_actions

SPHERE = RealCurve(0, 1, True)


# -- adapted shapes ----------------------------------------------------------


def test_adapted_examples():
    c1 = RealCurve(1, 1, False)
    assert is_adapted(DivisorShape(1, 0, 0, 0), c1, RealBundle(1, 1, (1,)))
    assert is_adapted(DivisorShape(0, 0, 1, 1), RealCurve(1, 0, False), RealBundle(1, 0, ()))
    assert not is_adapted(DivisorShape(0, 0, 1, 0), c1, RealBundle(1, 1, (1,)))


def test_adapted_closed_form_matches_search():
    for g, k, sep in sorted(realizable_types(3)):
        c = RealCurve(g, k, sep)
        for w1 in product((0, 1), repeat=k):
            for d in range(-3, 4):
                if (d - sum(w1)) % 2:
                    continue
                b = RealBundle(1, d, w1)
                for shape in product(range(4), repeat=4):
                    s = DivisorShape(*shape)
                    expected = is_adapted_bruteforce(s, c, b)
                    assert is_adapted(s, c, b) == expected
                    witness = witness_config(s, c, b)
                    assert (witness is not None) == expected
                    if witness is not None:
                        validate_config(witness, s, c, b)


def test_enumerated_configs_are_valid():
    c, b = RealCurve(2, 3, True), RealBundle(2, 1, (1, 0, 0))
    shape = DivisorShape(2, 1, 0, 0)
    configs = list(enumerate_configs(shape, c, b))
    assert configs
    for cfg in configs:
        validate_config(cfg, shape, c, b)


def test_config_validation():
    c, b = RealCurve(2, 3, True), RealBundle(1, 1, (1, 0, 0))
    shape = DivisorShape(1, 0, 0, 0)
    validate_config(DivisorConfig((0,), (), 0, 0), shape, c, b)
    with pytest.raises(InvalidDivisor):
        validate_config(DivisorConfig((1,), (), 0, 0), shape, c, b)
    with pytest.raises(InvalidDivisor):
        validate_config(DivisorConfig((5,), (), 0, 0), shape, c, b)
    with pytest.raises(InvalidDivisor):
        DivisorShape(-1, 0, 0, 0)


@pytest.mark.parametrize("shape, order", [((0, 0, 0, 0), 1), ((2, 0, 0, 0), 2), ((0, 0, 2, 0), 8), ((1, 2, 1, 1), 8)])
def test_renumbering_group_order(shape, order):
    assert renumbering_group_order(DivisorShape(*shape)) == order


# -- general decomposition ---------------------------------------------------


def test_bigres_examples():
    assert eval_bigres(FactorAction(1, 1, 1, 1, 1), 1) == 1
    assert eval_bigres(FactorAction(1, -1, -1, 1, 1), 1) == 1
    assert eval_bigres(FactorAction(1, 1, 1, 1, -1), 2) == 1
    assert eval_bigres(FactorAction(1, 1, 1, 1, -1), 3) == -1
    with pytest.raises(MissingFactor):
        eval_bigres(FactorAction(pin_plus=1), 1)


def test_conjugate_swap():
    assert eval_bigres(conjugate_swap_monodromy(RealCurve(2, 1, False)), 1) == 1
    sep = conjugate_swap_monodromy(RealCurve(2, 3, True))
    assert (sep.d_factor, sep.rj_factor, eval_bigres(sep, 1)) == (1, -1, -1)
    assert conjugate_swap_monodromy(SPHERE, DivisorShape(1, 0, 0, 0)) == FactorAction(1, 1, 1, 1, 1)


def test_t_factor():
    assert t_factor_from_reversals([]) == 1
    assert t_factor_from_reversals([1, 0, 1, 1]) == -1
    with pytest.raises(InvalidAction):
        t_factor_from_reversals([2])


# -- separating evaluator ----------------------------------------------------


def test_separating_examples():
    assert eval_separating(SPHERE, RealBundle(1, 0, (0,))) == 1
    swap = DiffeoClass((0,), (1,), 1, True)
    assert eval_separating(SPHERE, RealBundle(1, 2, (0,)), diffeo=swap) == -1
    flip = SignedPermutation((0,), (-1,))
    assert eval_separating(SPHERE, RealBundle(1, 0, (0,)), orient=flip) == -1
    with pytest.raises(NotSeparating):
        eval_separating(RealCurve(1, 1, False), RealBundle(1, 0, (0,)))


@st.composite
def separating_pairs(draw):
    c, b = draw(curve_and_bundle(max_genus=5, separating=True))
    k = c.k

    def one():
        perm = draw(pattern_perms(b.w1))
        pin = draw(pin_actions(k, perm)) if b.rank > 1 else PinAction((0,) * k, perm)
        orient = SignedPermutation(perm, tuple(draw(st.lists(st.sampled_from((1, -1)), min_size=k, max_size=k))))
        return pin, draw(diffeos(c, perm)), orient

    return c, b, one(), one()


@settings(max_examples=300)
@given(separating_pairs())
def test_separating_is_multiplicative(data):
    c, b, (p1, d1, o1), (p2, d2, o2) = data
    lhs = eval_separating(c, b, p1.compose(p2), d1.compose(d2), o1.compose(o2))
    assert lhs == eval_separating(c, b, p1, d1, o1) * eval_separating(c, b, p2, d2, o2)


# -- Spin evaluator ----------------------------------------------------------


def test_spin_examples():
    b = RealBundle(1, 0, (0,))
    xi = SpinClass((1,))
    assert eval_spin_case(SPHERE, b, xi, semi_orient_flip=True) == -1
    torus = RealCurve(1, 1, False)
    assert eval_spin_case(torus, b, SpinClass((0,)), semi_orient_flip=True) == 1
    assert eval_spin_case(SPHERE, b, xi, h1w_action=SignedPermutation((0,), (-1,))) == -1
    with pytest.raises(SpinHypothesisViolated):
        eval_spin_case(torus, RealBundle(1, 1, (1,)), SpinClass((0,)))
    with pytest.raises(SpinHypothesisViolated):
        eval_spin_case(RealCurve(2, 0, False), RealBundle(1, 0, ()), SpinClass(()))


@st.composite
def spin_pairs(draw):
    c = draw(st.sampled_from([RealCurve(*t) for t in sorted(realizable_types(5)) if t[1] >= 1]))
    k = c.k
    xi = tuple(draw(st.lists(st.integers(0, 1), min_size=k - 1, max_size=k - 1)))
    xi = xi + (((c.genus + 1) - sum(xi)) % 2,)
    b = RealBundle(draw(st.integers(1, 3)), 2 * draw(st.integers(-3, 3)), (0,) * k)

    def one():
        perm = draw(pattern_perms(xi))
        pin = draw(pin_actions(k, perm)) if b.rank > 1 else PinAction((0,) * k, perm)
        return pin, draw(diffeos(c, perm)), draw(st.booleans())

    return c, b, SpinClass(xi), one(), one()


@settings(max_examples=300)
@given(spin_pairs())
def test_spin_is_multiplicative(data):
    c, b, xi, (p1, d1, s1), (p2, d2, s2) = data
    lhs = eval_spin_case(c, b, xi, p1.compose(p2), d1.compose(d2), s1 != s2)
    assert lhs == eval_spin_case(c, b, xi, p1, d1, s1) * eval_spin_case(c, b, xi, p2, d2, s2)


@given(st.lists(st.sampled_from((1, -1)), min_size=5, max_size=5), st.lists(st.sampled_from((1, -1)), min_size=5, max_size=5), st.integers(1, 4))
def test_bigres_is_multiplicative(x, y, rank):
    a, b = FactorAction(*x), FactorAction(*y)
    assert eval_bigres(a.compose(b), rank) == eval_bigres(a, rank) * eval_bigres(b, rank)
