from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orientsign.errors import (
    BadMultiplicity,
    GenusTooSmall,
    HypothesisViolated,
    InvalidModuliData,
    MissingPDClaim,
    NoPolarizingSection,
    NotSeparating,
    SpinHypothesisViolated,
)
from orientsign.moduli import (
    LoopMonodromy,
    ModuliData,
    Orientability,
    PolarisationComponent,
    PolarisationData,
    hypersurface_w1,
    l_r_from_points,
    moduli_sep_w1,
    moduli_spin_w1,
    orientable_predicate,
    polarized_w1,
    teich_orientation_sign,
    validate_moduli,
    validate_polarisation,
)
from orientsign.pin import DiffeoClass
from orientsign.topology import RealCurve

from strategies import diffeos, loops, moduli_data

SEP = RealCurve(2, 1, True)
TORUS = RealCurve(1, 1, False)
POL = PolarisationData((PolarisationComponent(1, True),), True, True, True)


def moduli(**kw) -> ModuliData:
    base = dict(half_dim=3, genus=2, marked=2, tau=(1, 0), c1d=2, curve_type=SEP)
    base.update(kw)
    return ModuliData(**base)


def test_teich():
    c = RealCurve(2, 1, False)
    assert teich_orientation_sign(DiffeoClass((0,), (0,), 1), c) == 1
    assert teich_orientation_sign(DiffeoClass((0,), (0,), -1), c) == -1
    with pytest.raises(GenusTooSmall):
        teich_orientation_sign(DiffeoClass((0,), (0,)), TORUS)


@given(st.sampled_from([RealCurve(3, 2, False), RealCurve(4, 3, True)]).flatmap(lambda c: st.tuples(st.just(c), diffeos(c), diffeos(c))))
def test_teich_is_multiplicative(data):
    c, d1, d2 = data
    assert teich_orientation_sign(d1.compose(d2), c) == teich_orientation_sign(d1, c) * teich_orientation_sign(d2, c)


def test_separating_examples():
    assert moduli_sep_w1(moduli(), LoopMonodromy()) == 0
    assert moduli_sep_w1(moduli(), LoopMonodromy(det_h1_minus=-1)) == 0
    assert moduli_sep_w1(moduli(half_dim=2), LoopMonodromy(det_h1_minus=-1)) == 1
    assert moduli_sep_w1(moduli(c1d=2, k_minus=0), LoopMonodromy(h_factor=-1)) == 1
    assert moduli_sep_w1(moduli(c1d=4), LoopMonodromy(h_factor=-1)) == 0
    with pytest.raises(NotSeparating):
        moduli_sep_w1(moduli(curve_type=RealCurve(2, 1, False)), LoopMonodromy())


def test_orientable_predicate():
    spin = ModuliData(2, 0, 3, (0, 2, 1), 0, RealCurve(0, 1, True), rx_spin=True)
    assert orientable_predicate(spin) is Orientability.ORIENTABLE
    assert orientable_predicate(moduli()) is Orientability.ORIENTABLE
    assert orientable_predicate(moduli(half_dim=2)) is Orientability.UNKNOWN
    assert orientable_predicate(moduli(tau=(0, 1))) is Orientability.UNKNOWN
    no_fixed = ModuliData(2, 0, 4, (1, 0, 3, 2), 0, RealCurve(0, 1, True), rx_spin=True)
    assert orientable_predicate(no_fixed) is Orientability.UNKNOWN


# factors the separating pairing never reads
IRRELEVANT = ("l_r", "semi_orient", "h1w", "t_d")


@st.composite
def trivialized_loops(draw, m: ModuliData) -> LoopMonodromy:
    """Loops whose factor signs are forced by the hypotheses that make ``m`` orientable.

    Genus 0 leaves no H^1, so its determinant is fixed; for odd ``n`` the
    determinant enters with an even exponent and stays free.
    """
    free = set(IRRELEVANT)
    if m.half_dim % 2 == 1:
        free.add("det_h1_minus")
    return LoopMonodromy(
        **{name: draw(st.sampled_from((1, -1))) if name in free else 1 for name in LoopMonodromy.__dataclass_fields__}
    )


@settings(max_examples=300)
@given(moduli_data(separating=True).filter(lambda m: orientable_predicate(m) is Orientability.ORIENTABLE).flatmap(
    lambda m: st.tuples(st.just(m), trivialized_loops(m))
))
def test_orientable_means_zero_on_trivialized_loops(data):
    m, loop = data
    assert moduli_sep_w1(m, loop) == 0


def test_spin_examples():
    m = ModuliData(2, 1, 1, (0,), 0, TORUS, re_eu_orientable=True)
    assert moduli_spin_w1(m, LoopMonodromy()) == 0
    assert moduli_spin_w1(m, LoopMonodromy(det_h1_minus=-1)) == 1
    assert moduli_spin_w1(m, LoopMonodromy(semi_orient=-1)) == 0
    g2 = ModuliData(2, 2, 1, (0,), 0, RealCurve(2, 1, False), re_eu_orientable=True)
    assert moduli_spin_w1(g2, LoopMonodromy(semi_orient=-1)) == 1
    with pytest.raises(SpinHypothesisViolated):
        moduli_spin_w1(ModuliData(2, 1, 1, (0,), 2, TORUS), LoopMonodromy())


def test_hypersurface_examples():
    m = ModuliData(6, 1, 1, (0,), 4, TORUS)
    assert hypersurface_w1(7, 4, m, LoopMonodromy(det_h1_minus=-1)) == 1
    assert hypersurface_w1(7, 8, m, LoopMonodromy(det_h1_minus=-1)) == 1
    assert hypersurface_w1(8, 5, m, LoopMonodromy(det_h1_minus=-1)) == 0
    with pytest.raises(HypothesisViolated, match="0 or 3 mod 4"):
        hypersurface_w1(5, 6, m, LoopMonodromy())
    with pytest.raises(HypothesisViolated, match="fix"):
        hypersurface_w1(7, 4, ModuliData(6, 1, 2, (1, 0), 4, TORUS), LoopMonodromy())
    with pytest.raises(HypothesisViolated, match="non-empty"):
        hypersurface_w1(7, 4, m, LoopMonodromy(), real_locus_nonempty=False)


def test_polarized_examples():
    m = ModuliData(3, 1, 1, (0,), 0, TORUS)
    assert polarized_w1(m, LoopMonodromy(), POL) == 0
    assert polarized_w1(m, LoopMonodromy(t_d=-1), POL) == 1
    assert polarized_w1(m, LoopMonodromy(det_h1_minus=-1, t_d=-1, pin_plus=-1), POL) == 0
    with pytest.raises(NoPolarizingSection):
        polarized_w1(m, LoopMonodromy(), PolarisationData(POL.components, True, True, False))


def test_polarisation_validation():
    validate_polarisation(POL)
    with pytest.raises(BadMultiplicity):
        validate_polarisation(PolarisationData((PolarisationComponent(2, True),), True, True, True))
    with pytest.raises(MissingPDClaim):
        validate_polarisation(PolarisationData(POL.components, False, True, True))
    with pytest.raises(MissingPDClaim):
        validate_polarisation(PolarisationData(POL.components, True, False, True))
    assert PolarisationData((PolarisationComponent(1, False),), True, True, True).stable_part == ()


def test_moduli_validation():
    with pytest.raises(InvalidModuliData):
        validate_moduli(moduli(half_dim=1))
    with pytest.raises(InvalidModuliData):
        validate_moduli(moduli(tau=(1, 2, 0), marked=3))
    with pytest.raises(InvalidModuliData):
        validate_moduli(moduli(c1d=1))
    with pytest.raises(InvalidModuliData):
        validate_moduli(moduli(k_minus=2))
    with pytest.raises(InvalidModuliData):
        validate_moduli(moduli(genus=3))
    with pytest.raises(InvalidModuliData):
        moduli_spin_w1(moduli(curve_type=RealCurve(2, 1, False)), LoopMonodromy(h_factor=-1))


def test_l_r_helper():
    assert l_r_from_points((0, 1), (0, 0)) == 1
    assert l_r_from_points((1, 0), (0, 0)) == -1
    assert l_r_from_points((0,), (1,)) == -1
    assert l_r_from_points((), (), pair_swaps=1) == -1


@settings(max_examples=200)
@given(moduli_data(separating=True), loops(), loops())
def test_separating_w1_is_additive(m, a, b):
    assert moduli_sep_w1(m, a.compose(b)) == (moduli_sep_w1(m, a) + moduli_sep_w1(m, b)) % 2


@settings(max_examples=200)
@given(moduli_data(spin=True), loops(separating=False), loops(separating=False))
def test_spin_w1_is_additive(m, a, b):
    assert moduli_spin_w1(m, a.compose(b)) == (moduli_spin_w1(m, a) + moduli_spin_w1(m, b)) % 2
