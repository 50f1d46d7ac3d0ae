"""Compatible divisors and the factorised sign evaluators.

A compatible divisor has the degree of the bundle and a real part
Poincare dual to ``w1`` of the real bundle.  Divisors of the shape
``(r_plus, r_minus, s_plus, s_minus)`` place ``r_plus`` positive and
``r_minus`` negative real points and ``s_plus``/``s_minus`` positive and
negative conjugate pairs.  Placements are tracked only by which real circle
each real point lies on; conjugate pairs live off the real locus and carry
no placement data.

The evaluators multiply the signs an automorphism induces on the tensor
factors of the determinant line:

* :func:`eval_bigres`: general decomposition, factor signs supplied;
* :func:`eval_separating`: separating curves, all factors computed;
* :func:`eval_spin_case`: even degree and orientable real part, relative to
  a real Spin structure.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from math import comb, factorial
from typing import Iterator, Sequence

from .errors import (
    InvalidAction,
    InvalidDivisor,
    MissingFactor,
    NotSeparating,
    ParityBroken,
    SearchTooLarge,
    SpinHypothesisViolated,
)
from .pin import (
    DEFAULT_MODEL,
    DiffeoClass,
    Factor,
    PinAction,
    PinModel,
    SignedPermutation,
    check_sign,
    perm_sign,
    product_of,
    preserves_pattern,
    restrict_perm,
    validate_diffeo,
    validate_pin_action,
)
from .topology import RealBundle, RealCurve, SpinClass, validate_bundle, validate_spin_class

SEARCH_LIMIT = 10**6


@dataclass(frozen=True)
class DivisorShape:
    r_plus: int
    r_minus: int
    s_plus: int
    s_minus: int

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise InvalidDivisor(f"{f.name} must be a nonnegative integer, got {v!r}")

    @property
    def degree(self) -> int:
        return self.r_plus - self.r_minus + 2 * (self.s_plus - self.s_minus)

    @property
    def real_points(self) -> int:
        return self.r_plus + self.r_minus


@dataclass(frozen=True)
class DivisorConfig:
    """Real points by the (0-based) circle they lie on, conjugate pairs by count."""

    real_plus: tuple[int, ...]
    real_minus: tuple[int, ...]
    conj_pairs_plus: int
    conj_pairs_minus: int

    def __post_init__(self):
        object.__setattr__(self, "real_plus", tuple(sorted(self.real_plus)))
        object.__setattr__(self, "real_minus", tuple(sorted(self.real_minus)))

    @property
    def shape(self) -> DivisorShape:
        return DivisorShape(len(self.real_plus), len(self.real_minus), self.conj_pairs_plus, self.conj_pairs_minus)


def validate_config(config: DivisorConfig, shape: DivisorShape, c: RealCurve, b: RealBundle) -> None:
    validate_bundle(c, b)
    if config.shape != shape:
        raise InvalidDivisor(f"configuration has shape {config.shape}, expected {shape}")
    k = c.real_components
    for idx in config.real_plus + config.real_minus:
        if not 0 <= idx < k:
            raise InvalidDivisor(f"real point on circle {idx + 1}, but the curve has {k} real circles")
    if shape.degree != b.degree:
        raise InvalidDivisor(f"divisor degree {shape.degree} differs from bundle degree {b.degree}")
    counts = [0] * k
    for idx in config.real_plus + config.real_minus:
        counts[idx] += 1
    for i, (n, bit) in enumerate(zip(counts, b.w1)):
        if n % 2 != bit:
            raise InvalidDivisor(f"circle {i + 1} carries {n} real points but w1 there is {bit}")


def is_adapted(shape: DivisorShape, c: RealCurve, b: RealBundle) -> bool:
    """Whether some compatible divisor has this shape.

    The degree must match, and the real points must be distributable so
    that each circle carries a number of them of the parity of ``w1``
    there: at least one on each non-orientable circle, the rest in pairs.
    The leftover ``r - k_minus`` is even automatically once the degree
    matches, since ``degree = r = k_minus mod 2``.
    """
    validate_bundle(c, b)
    if shape.degree != b.degree:
        return False
    r = shape.real_points
    if r < b.k_minus or (r - b.k_minus) % 2:
        return False
    return c.real_components > 0 or r == 0


def witness_config(shape: DivisorShape, c: RealCurve, b: RealBundle) -> DivisorConfig | None:
    """A compatible configuration of this shape, or None."""
    if not is_adapted(shape, c, b):
        return None
    placement = list(b.non_orientable_components())
    placement += [0] * (shape.real_points - len(placement))
    placement.sort()
    # any split of the points into signs works: parity only sees totals
    return DivisorConfig(
        tuple(placement[: shape.r_plus]), tuple(placement[shape.r_plus :]), shape.s_plus, shape.s_minus
    )


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_configs(shape: DivisorShape, c: RealCurve, b: RealBundle) -> Iterator[DivisorConfig]:
    """Every compatible configuration of this shape, by exhaustive search."""
    validate_bundle(c, b)
    k = c.real_components
    if k == 0:
        search = 1
    else:
        search = comb(shape.r_plus + k - 1, k - 1) * comb(shape.r_minus + k - 1, k - 1)
    if search > SEARCH_LIMIT:
        raise SearchTooLarge(f"{search} placements exceed the search limit {SEARCH_LIMIT}")
    if shape.degree != b.degree:
        return
    for plus in _compositions(shape.r_plus, k):
        for minus in _compositions(shape.r_minus, k):
            if all((p + m) % 2 == bit for p, m, bit in zip(plus, minus, b.w1)):
                yield DivisorConfig(
                    tuple(i for i, n in enumerate(plus) for _ in range(n)),
                    tuple(i for i, n in enumerate(minus) for _ in range(n)),
                    shape.s_plus,
                    shape.s_minus,
                )


def is_adapted_bruteforce(shape: DivisorShape, c: RealCurve, b: RealBundle) -> bool:
    return next(enumerate_configs(shape, c, b), None) is not None


def renumbering_group_order(shape: DivisorShape) -> int:
    """Order of the group renumbering the points of a divisor of this shape.

    Conjugate pairs are renumbered by the wreath product of swaps inside a
    pair with permutations of the pairs.
    """
    return (
        factorial(shape.r_plus)
        * factorial(shape.r_minus)
        * 2**shape.s_plus
        * factorial(shape.s_plus)
        * 2**shape.s_minus
        * factorial(shape.s_minus)
    )


@dataclass(frozen=True)
class FactorAction:
    """Signs induced on the tensor factors of the determinant line.

    ``None`` means "not supplied".  The first five are the factors of the
    general decomposition; the rest appear in the separating and Spin
    specialisations.
    """

    pin_plus: int | None = None
    d_factor: int | None = None
    rj_factor: int | None = None
    t_factor: int | None = None
    h1_minus: int | None = None
    o_factor: int | None = None
    h0_minus: int | None = None
    h_factor: int | None = None
    semi_orient: int | None = None
    h1w: int | None = None

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if v is not None:
                check_sign(v, f.name)

    def compose(self, other: "FactorAction") -> "FactorAction":
        values = {}
        for f in fields(self):
            a, b = getattr(self, f.name), getattr(other, f.name)
            values[f.name] = None if a is None or b is None else a * b
        return FactorAction(**values)


BIGRES_FACTORS = ("pin_plus", "d_factor", "rj_factor", "t_factor", "h1_minus")


def eval_bigres(fa: FactorAction, rank: int) -> int:
    missing = [name for name in BIGRES_FACTORS if getattr(fa, name) is None]
    if missing:
        raise MissingFactor(f"factor signs not supplied: {', '.join(missing)}")
    if not isinstance(rank, int) or rank < 1:
        raise InvalidAction(f"rank must be a positive integer, got {rank!r}")
    return fa.pin_plus * fa.d_factor * fa.rj_factor * fa.t_factor * fa.h1_minus**rank


def conjugate_swap_monodromy(c: RealCurve, shape: DivisorShape | None = None) -> FactorAction:
    """Factor signs along the loop exchanging the two points of a conjugate pair.

    The exchange is an odd permutation of the real span of the pair.  The
    principal bundle of polarised operators is non-orientable along it on a
    non-separating curve; on a separating curve that bundle is taken to be
    trivial.  Shapes without conjugate pairs have no such loop.
    """
    if shape is not None and shape.s_plus == 0 and shape.s_minus == 0:
        return FactorAction(1, 1, 1, 1, 1)
    return FactorAction(
        pin_plus=1,
        d_factor=1 if c.separating else -1,
        rj_factor=-1,
        t_factor=1,
        h1_minus=1,
    )


def t_factor_from_reversals(reversals: Sequence[int]) -> int:
    """Sign on the tensor product of cotangent lines at the positive real points.

    ``reversals[j]`` is 1 when the automorphism reverses the real locus at the
    j-th positive real point (compared with its image point).
    """
    sign = 1
    for bit in reversals:
        if bit not in (0, 1):
            raise InvalidAction("reversal bits must be 0/1")
        sign *= -1 if bit else 1
    return sign


def _pin_and_diffeo(c, b, pin, diffeo):
    k = c.real_components
    if pin is None:
        pin = PinAction.identity(k) if diffeo is None else PinAction((0,) * k, diffeo.component_perm)
    if diffeo is None:
        diffeo = DiffeoClass.identity(k)
    validate_pin_action(k, pin, b.w1)
    validate_diffeo(c, diffeo, b.w1)
    if pin.component_perm != diffeo.component_perm:
        raise InvalidAction("Pin action and diffeomorphism permute the components differently")
    return pin, diffeo


def separating_factors(
    c: RealCurve,
    b: RealBundle,
    pin: PinAction | None = None,
    diffeo: DiffeoClass | None = None,
    orient: SignedPermutation | None = None,
    model: PinModel = DEFAULT_MODEL,
) -> list[Factor]:
    """Factor signs for a separating curve.

    ``orient`` gives, for every real circle, the sign of the map from the
    real bundle over it to the real bundle over its image, relative to
    reference orientations; entries on non-orientable circles are ignored.
    """
    validate_bundle(c, b)
    if not c.separating:
        raise NotSeparating("this evaluator needs a separating curve")
    if (b.degree + b.k_minus) % 2:
        raise ParityBroken("degree + k_minus must be even")
    pin, diffeo = _pin_and_diffeo(c, b, pin, diffeo)
    k = c.real_components
    if orient is None:
        orient = SignedPermutation(diffeo.component_perm, (1,) * k)
    if len(orient.perm) != k:
        raise InvalidAction(f"orientation action has length {len(orient.perm)}, expected {k}")
    if orient.perm != diffeo.component_perm:
        raise InvalidAction("orientation action and diffeomorphism permute the components differently")
    plus, minus = b.orientable_components(), b.non_orientable_components()
    exponent = (b.degree + b.k_minus) // 2
    return [
        Factor("Pin+ torsor permutation", model.signature(k, pin)),
        Factor("orientations of the real bundle over orientable circles", orient.restrict(plus).det_sign()),
        Factor("det H^0 of the non-orientable circles", perm_sign(restrict_perm(diffeo.component_perm, minus))),
        Factor(f"det H^1(Sigma,R)_-1, power rank={b.rank}", diffeo.det_h1_minus**b.rank),
        Factor(
            f"complex orientations of the real locus, power (deg+k_minus)/2={exponent}",
            (-1 if diffeo.swaps_halves else 1) ** exponent,
        ),
    ]


def eval_separating(
    c: RealCurve,
    b: RealBundle,
    pin: PinAction | None = None,
    diffeo: DiffeoClass | None = None,
    orient: SignedPermutation | None = None,
    model: PinModel = DEFAULT_MODEL,
) -> int:
    return product_of(separating_factors(c, b, pin, diffeo, orient, model))


def spin_factors(
    c: RealCurve,
    b: RealBundle,
    xi: SpinClass,
    pin: PinAction | None = None,
    diffeo: DiffeoClass | None = None,
    semi_orient_flip: bool = False,
    h1w_action: SignedPermutation | None = None,
    model: PinModel = DEFAULT_MODEL,
) -> list[Factor]:
    """Factor signs relative to a real Spin structure with Stiefel-Whitney class ``xi``.

    ``h1w_action`` acts on the lines ``H^1`` of the circles where ``xi`` is
    1, listed in increasing order.  By default it is read off the
    diffeomorphism: a circle mapped with reversed orientation flips its line.
    """
    validate_bundle(c, b)
    if c.real_components < 1:
        raise SpinHypothesisViolated("the real locus is empty")
    if b.degree % 2:
        raise SpinHypothesisViolated(f"degree {b.degree} is odd")
    if any(b.w1):
        raise SpinHypothesisViolated("the real part of the bundle is not orientable")
    validate_spin_class(c, xi)
    pin, diffeo = _pin_and_diffeo(c, b, pin, diffeo)
    if not preserves_pattern(diffeo.component_perm, xi.w):
        raise InvalidAction("diffeomorphism does not preserve the Stiefel-Whitney class of the Spin structure")
    support = [i for i, bit in enumerate(xi.w) if bit]
    if h1w_action is None:
        h1w_action = diffeo.circle_action().restrict(support)
    elif len(h1w_action.perm) != len(support):
        raise InvalidAction(f"h1w action has length {len(h1w_action.perm)}, xi has {len(support)} set bits")
    g = c.genus
    return [
        Factor("Pin+ torsor permutation", model.signature(c.real_components, pin)),
        Factor(f"det H^1(Sigma,R)_-1, power rank={b.rank}", diffeo.det_h1_minus**b.rank),
        Factor(
            f"semi-orientation of the real bundle from xi, power 1-g={1 - g}",
            (-1 if semi_orient_flip else 1) ** ((1 - g) % 2),
        ),
        Factor("H^1 of the circles where w_xi = 1", h1w_action.det_sign()),
    ]


def eval_spin_case(
    c: RealCurve,
    b: RealBundle,
    xi: SpinClass,
    pin: PinAction | None = None,
    diffeo: DiffeoClass | None = None,
    semi_orient_flip: bool = False,
    h1w_action: SignedPermutation | None = None,
    model: PinModel = DEFAULT_MODEL,
) -> int:
    return product_of(spin_factors(c, b, xi, pin, diffeo, semi_orient_flip, h1w_action, model))
