"""First Stiefel-Whitney pairings for real Teichmueller and moduli spaces.

A loop in a moduli space of real curves in a real symplectic manifold
``X`` (real dimension ``2n``) acts, through monodromy, on each line bundle
appearing in the factorisation of the relative orientation bundle.  A
:class:`LoopMonodromy` records those per-factor signs; the pairings below
multiply the relevant ones and report the result as a bit (``-1 -> 1``).
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from enum import Enum
from typing import Sequence

from .errors import (
    BadMultiplicity,
    GenusTooSmall,
    HypothesisViolated,
    InvalidAction,
    InvalidModuliData,
    MissingPDClaim,
    NoPolarizingSection,
    NotSeparating,
    ParityBroken,
    SpinHypothesisViolated,
)
from .pin import DiffeoClass, Factor, check_perm, check_sign, compose_perm, product_of, validate_diffeo
from .topology import RealCurve, validate_curve


def sign_to_bit(sign: int) -> int:
    return 0 if sign == 1 else 1


@dataclass(frozen=True)
class ModuliData:
    half_dim: int
    genus: int
    marked: int
    tau: tuple[int, ...]  # 0-based involution of the marked points
    c1d: int
    curve_type: RealCurve
    k_minus: int = 0
    rx_spin: bool = False
    re_eu_orientable: bool = False

    def __post_init__(self):
        object.__setattr__(self, "tau", tuple(self.tau))

    def tau_fixed_points(self) -> int:
        return sum(1 for i, j in enumerate(self.tau) if i == j)

    def tau_is_identity(self) -> bool:
        return self.tau == tuple(range(self.marked))


def validate_moduli(m: ModuliData) -> None:
    if not isinstance(m.half_dim, int) or m.half_dim < 2:
        raise InvalidModuliData(f"X must have real dimension 2n >= 4, got n={m.half_dim}")
    validate_curve(m.curve_type)
    if m.genus != m.curve_type.genus:
        raise InvalidModuliData(f"genus {m.genus} differs from the curve type's genus {m.curve_type.genus}")
    if len(m.tau) != m.marked:
        raise InvalidModuliData(f"tau permutes {len(m.tau)} points, but r={m.marked}")
    try:
        check_perm(m.tau, m.marked)
    except InvalidAction as exc:
        raise InvalidModuliData(str(exc)) from None
    if compose_perm(m.tau, m.tau) != tuple(range(m.marked)):
        raise InvalidModuliData("tau must be an involution")
    if not 0 <= m.k_minus <= m.curve_type.real_components:
        raise InvalidModuliData(f"k_minus={m.k_minus} must lie in 0..k={m.curve_type.real_components}")
    if (m.c1d + m.k_minus) % 2:
        raise InvalidModuliData(f"c1(X).d + k_minus = {m.c1d + m.k_minus} must be even")
    if m.re_eu_orientable and m.k_minus:
        raise InvalidModuliData("an orientable real part has no non-orientable components")


@dataclass(frozen=True)
class LoopMonodromy:
    """Monodromy sign of a loop on each line bundle of the factorisation."""

    pin_plus: int = 1
    det_h1_minus: int = 1
    o_x: int = 1
    r_w: int = 1
    h_factor: int = 1
    h0_minus: int = 1
    l_r: int = 1
    semi_orient: int = 1
    h1w: int = 1
    t_d: int = 1

    def __post_init__(self):
        for f in fields(self):
            check_sign(getattr(self, f.name), f.name)

    def compose(self, other: "LoopMonodromy") -> "LoopMonodromy":
        return LoopMonodromy(**{f.name: getattr(self, f.name) * getattr(other, f.name) for f in fields(self)})


def _check_loop(m: ModuliData, loop: LoopMonodromy) -> None:
    if not m.curve_type.separating and loop.h_factor != 1:
        raise InvalidModuliData("non-separating curves have no complex orientation line; h_factor must be 1")


def teich_orientation_sign(d: DiffeoClass, c: RealCurve) -> int:
    """Action of a diffeomorphism on orientations of the real Teichmueller space."""
    validate_curve(c)
    if c.genus < 2:
        raise GenusTooSmall(f"Teichmueller orientations need genus >= 2, got {c.genus}")
    validate_diffeo(c, d)
    return d.det_h1_minus


def separating_w1_factors(m: ModuliData, loop: LoopMonodromy) -> list[Factor]:
    """Factors over the separating component.

    ``r_w`` and ``h0_minus`` are both multiplied in; a caller whose ``r_w``
    already accounts for the permutation of non-orientable circles leaves
    ``h0_minus`` at 1.
    """
    validate_moduli(m)
    _check_loop(m, loop)
    if not m.curve_type.separating:
        raise NotSeparating("this pairing is defined on the separating component")
    if (m.c1d + m.k_minus) % 2:
        raise ParityBroken("c1(X).d + k_minus must be even")
    n, exponent = m.half_dim, (m.c1d + m.k_minus) // 2
    return [
        Factor(f"det H^1(Sigma,R)_-1, power n-1={n - 1}", loop.det_h1_minus ** (n - 1)),
        Factor("line R_w", loop.r_w),
        Factor("det H^0 of the non-orientable circles", loop.h0_minus),
        Factor(f"complex orientation line H, power (c1.d+k_minus)/2={exponent}", loop.h_factor**exponent),
        Factor("Pin+ structures of the real part of TX", loop.pin_plus),
        Factor("orientations of orientable real components of TX", loop.o_x),
    ]


def moduli_sep_w1(m: ModuliData, loop: LoopMonodromy) -> int:
    return sign_to_bit(product_of(separating_w1_factors(m, loop)))


class Orientability(str, Enum):
    ORIENTABLE = "orientable"
    UNKNOWN = "unknown"


def orientable_predicate(m: ModuliData) -> Orientability:
    """Sufficient conditions for orientability; never claims the converse."""
    validate_moduli(m)
    if m.rx_spin and m.genus == 0 and m.marked >= 3 and m.tau_fixed_points() >= 1:
        return Orientability.ORIENTABLE
    if m.half_dim % 2 == 1 and not m.tau_is_identity() and m.marked >= 2 and m.curve_type.separating:
        return Orientability.ORIENTABLE
    return Orientability.UNKNOWN


def spin_w1_factors(m: ModuliData, loop: LoopMonodromy) -> list[Factor]:
    validate_moduli(m)
    _check_loop(m, loop)
    if m.c1d % 2:
        raise SpinHypothesisViolated(f"c1(X).d = {m.c1d} is odd")
    if not m.re_eu_orientable:
        raise SpinHypothesisViolated("the real part of u*TX must be orientable")
    if m.curve_type.real_components < 1:
        raise SpinHypothesisViolated("the real locus is empty")
    n, g = m.half_dim, m.genus
    return [
        Factor(f"det H^1(Sigma,R)_-1, power n-1={n - 1}", loop.det_h1_minus ** (n - 1)),
        Factor("H^1 of the circles where w = 1", loop.h1w),
        Factor(f"semi-orientations from the Spin structure, power 1-g={1 - g}", loop.semi_orient ** ((1 - g) % 2)),
        Factor("Pin+ structures of the real part of TX", loop.pin_plus),
    ]


def moduli_spin_w1(m: ModuliData, loop: LoopMonodromy) -> int:
    return sign_to_bit(product_of(spin_w1_factors(m, loop)))


def check_hypersurface(big_n: int, delta: int, m: ModuliData, real_locus_nonempty: bool = True) -> None:
    validate_moduli(m)
    if big_n < 4:
        raise HypothesisViolated(f"N >= 4 required, got N={big_n}")
    if big_n % 4 not in (0, 3):
        raise HypothesisViolated(f"N = 0 or 3 mod 4 required, got N mod 4 = {big_n % 4}")
    if (delta - big_n - 1) % 4:
        raise HypothesisViolated(f"delta = N+1 mod 4 required, got delta={delta}, N={big_n}")
    if delta > big_n + 1:
        raise HypothesisViolated(f"delta <= N+1 required, got delta={delta}, N={big_n}")
    if delta < 1:
        raise HypothesisViolated(f"degree must be positive, got delta={delta}")
    if m.marked < 1:
        raise HypothesisViolated("at least one marked point required")
    if m.tau_fixed_points() < 1:
        raise HypothesisViolated("tau must fix at least one marked point")
    if not real_locus_nonempty:
        raise HypothesisViolated("the real locus of the hypersurface must be non-empty")


def hypersurface_factors(
    big_n: int, delta: int, m: ModuliData, loop: LoopMonodromy, real_locus_nonempty: bool = True
) -> list[Factor]:
    check_hypersurface(big_n, delta, m, real_locus_nonempty)
    return [
        Factor("tautological line L_r of the marked points", loop.l_r),
        Factor(f"det H^1(Sigma,R)_-1, power delta-1={delta - 1}", loop.det_h1_minus ** ((delta - 1) % 2)),
    ]


def hypersurface_w1(
    big_n: int, delta: int, m: ModuliData, loop: LoopMonodromy, real_locus_nonempty: bool = True
) -> int:
    """w1 of the moduli space of a smooth real hypersurface of degree ``delta`` in ``CP^N``."""
    return sign_to_bit(product_of(hypersurface_factors(big_n, delta, m, loop, real_locus_nonempty)))


@dataclass(frozen=True)
class PolarisationComponent:
    multiplicity: int
    conjugation_stable: bool


@dataclass(frozen=True)
class PolarisationData:
    components: tuple[PolarisationComponent, ...]
    claims_pd_c1: bool
    claims_pd_w1_rx: bool
    has_polarizing_section: bool

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def stable_part(self) -> tuple[PolarisationComponent, ...]:
        return tuple(comp for comp in self.components if comp.conjugation_stable)


def validate_polarisation(p: PolarisationData) -> None:
    """Structural checks only; the geometric claims are taken on trust."""
    for i, comp in enumerate(p.components):
        if comp.multiplicity not in (1, -1) or isinstance(comp.multiplicity, bool):
            raise BadMultiplicity(f"component {i + 1} has multiplicity {comp.multiplicity}, must be +1 or -1")
    if not p.claims_pd_c1:
        raise MissingPDClaim("a polarisation must be Poincare dual to c1(X)")
    if not p.claims_pd_w1_rx:
        raise MissingPDClaim("the real stable part must be Poincare dual to w1 of the real locus")


def polarized_factors(m: ModuliData, loop: LoopMonodromy, p: PolarisationData) -> list[Factor]:
    validate_moduli(m)
    validate_polarisation(p)
    if not p.has_polarizing_section:
        raise NoPolarizingSection("the polarisation must come with a polarizing section")
    n = m.half_dim
    return [
        Factor("Pin+ structures of the real part of TX", loop.pin_plus),
        Factor(f"det H^1(Sigma,R)_-1, power n-1={n - 1}", loop.det_h1_minus ** (n - 1)),
        Factor("line T_D of intersection points with the divisor", loop.t_d),
    ]


def polarized_w1(m: ModuliData, loop: LoopMonodromy, p: PolarisationData) -> int:
    return sign_to_bit(product_of(polarized_factors(m, loop, p)))


def l_r_from_points(
    real_point_perm: Sequence[int], real_point_reversals: Sequence[int], pair_swaps: int = 0
) -> int:
    """Monodromy of the tautological line from the motion of the marked points.

    Real marked points contribute the determinant of their signed
    permutation on the real tangent lines.  A conjugate pair contributes
    -1 each time the loop exchanges its two points, since the conjugation
    reverses the orientation of the tangent plane.
    """
    from .pin import SignedPermutation

    action = SignedPermutation(tuple(real_point_perm), tuple(-1 if r else 1 for r in real_point_reversals))
    return action.det_sign() * (-1) ** pair_swaps
