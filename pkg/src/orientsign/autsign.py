"""Signs of automorphisms of a real bundle on the orientations of ``Det``.

The automorphism group is filtered as ``RSAut < RAut < RIso``:
automorphisms with trivial determinant, automorphisms lifting the identity
of the curve, and all automorphisms.  An :class:`AutClass` records the
homotopy-class data that the sign depends on:

* the action on Pin structures of the real part,
* the determinant part, as a word in the twist generators below,
* the underlying diffeomorphism of the curve.

Generators of the determinant part (automorphisms of a line bundle lifting
the identity):

``real_component``
    twist ``-exp(i pi t)`` across a tubular neighbourhood of one real circle;
``invariant_circle``
    the same twist along a conjugation-invariant circle disjoint from the
    real locus;
``conjugate_pair``
    a twist along a circle disjoint from its conjugate, extended by
    conjugation;
``minus_one``
    the constant automorphism ``-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    BadComponentIndex,
    InvalidAction,
    LevelMismatch,
    PermMismatch,
    RankNotOne,
    UnsupportedError,
)
from .pin import (
    DEFAULT_MODEL,
    DiffeoClass,
    Factor,
    PinAction,
    PinModel,
    diffeo_warnings,
    product_of,
    validate_diffeo,
    validate_pin_action,
)
from .topology import RealBundle, RealCurve, validate_bundle

LEVELS = ("rsaut", "raut", "riso")

REAL_COMPONENT = "real_component"
INVARIANT_CIRCLE = "invariant_circle"
CONJUGATE_PAIR = "conjugate_pair"
MINUS_ONE = "minus_one"
GENERATOR_KINDS = (REAL_COMPONENT, INVARIANT_CIRCLE, CONJUGATE_PAIR, MINUS_ONE)


@dataclass(frozen=True)
class DetGenerator:
    kind: str
    index: int | None = None  # 0-based real circle, real_component only

    def __post_init__(self):
        if self.kind not in GENERATOR_KINDS:
            raise InvalidAction(f"unknown generator {self.kind!r}")
        if (self.kind == REAL_COMPONENT) != (self.index is not None):
            raise InvalidAction("only real_component twists carry a component index")

    @classmethod
    def real_component(cls, index: int) -> "DetGenerator":
        return cls(REAL_COMPONENT, index)

    @classmethod
    def invariant_circle(cls) -> "DetGenerator":
        return cls(INVARIANT_CIRCLE)

    @classmethod
    def conjugate_pair(cls) -> "DetGenerator":
        return cls(CONJUGATE_PAIR)

    @classmethod
    def minus_one(cls) -> "DetGenerator":
        return cls(MINUS_ONE)


DetWord = tuple[DetGenerator, ...]


@dataclass(frozen=True)
class AutClass:
    level: str
    pin: PinAction
    det_word: DetWord = ()
    diffeo: DiffeoClass | None = None

    def __post_init__(self):
        if self.level not in LEVELS:
            raise LevelMismatch(f"level must be one of {LEVELS}, got {self.level!r}")
        object.__setattr__(self, "det_word", tuple(self.det_word))
        if self.diffeo is None:
            object.__setattr__(self, "diffeo", DiffeoClass.identity(self.pin.k))

    @classmethod
    def identity(cls, k: int, level: str = "rsaut") -> "AutClass":
        return cls(level, PinAction.identity(k))

    def compose(self, other: "AutClass") -> "AutClass":
        level = LEVELS[max(LEVELS.index(self.level), LEVELS.index(other.level))]
        return AutClass(
            level,
            self.pin.compose(other.pin),
            self.det_word + other.det_word,
            self.diffeo.compose(other.diffeo),
        )


def _check_generator(gen: DetGenerator, c: RealCurve) -> None:
    if gen.kind == REAL_COMPONENT and not (
        isinstance(gen.index, int) and 0 <= gen.index < c.real_components
    ):
        raise BadComponentIndex(f"real_component index {gen.index} out of range for k={c.real_components}")


def validate_aut(a: AutClass, c: RealCurve, b: RealBundle) -> list[str]:
    """Raise on inconsistent data; return warnings for data that cannot be checked."""
    validate_bundle(c, b)
    k = c.real_components
    validate_pin_action(k, a.pin, b.w1)
    validate_diffeo(c, a.diffeo, b.w1)
    for gen in a.det_word:
        _check_generator(gen, c)
    if a.level in ("rsaut", "raut"):
        if not a.diffeo.is_trivial():
            raise LevelMismatch(f"{a.level} automorphisms lift the identity; diffeo must be trivial")
        if a.pin.component_perm != tuple(range(k)):
            raise LevelMismatch(f"{a.level} automorphisms fix every real circle")
        if b.rank == 1 and any(a.pin.flips):
            # a nowhere-vanishing function on a circle is homotopic to a constant
            raise InvalidAction("on a line bundle an automorphism lifting the identity fixes every Pin structure")
    if a.level == "rsaut" and a.det_word:
        raise LevelMismatch("rsaut automorphisms have trivial determinant; det_word must be empty")
    if a.pin.component_perm != a.diffeo.component_perm:
        raise PermMismatch("Pin action and diffeomorphism permute the components differently")
    warnings = []
    if any(gen.kind == INVARIANT_CIRCLE for gen in a.det_word):
        warnings.append(
            "invariant_circle twist: existence of a conjugation-invariant circle off the real locus is not checked"
            + (" (none exists on a separating curve)" if c.separating else "")
        )
    warnings.extend(diffeo_warnings(c, a.diffeo))
    return warnings


def generator_sign(gen: DetGenerator, c: RealCurve, b: RealBundle) -> int:
    """Action of one generator on the orientations of ``Det`` of a line bundle."""
    if b.rank != 1:
        raise RankNotOne(f"generators act on line bundles, got rank {b.rank}")
    _check_generator(gen, c)
    if gen.kind == REAL_COMPONENT:
        return 1 if b.w1[gen.index] == 1 else -1
    if gen.kind == INVARIANT_CIRCLE:
        return -1
    if gen.kind == CONJUGATE_PAIR:
        return 1
    return 1 if (b.degree + 1 - c.genus) % 2 == 0 else -1


def word_sign(word: Sequence[DetGenerator], c: RealCurve, b: RealBundle) -> int:
    if b.rank != 1:
        raise RankNotOne(f"determinant words act on line bundles, got rank {b.rank}")
    sign = 1
    for gen in word:
        sign *= generator_sign(gen, c, b)
    return sign


def word_real_action(word: Sequence[DetGenerator], c: RealCurve) -> tuple[int, ...]:
    """Sign of the word's function on each real circle.

    ``real_component`` twists are -1 on their circle, ``minus_one`` is -1
    everywhere and the other generators are supported off the real locus.
    """
    signs = [1] * c.real_components
    for gen in word:
        _check_generator(gen, c)
        if gen.kind == REAL_COMPONENT:
            signs[gen.index] *= -1
        elif gen.kind == MINUS_ONE:
            signs = [-s for s in signs]
    return tuple(signs)


def _require_level(a: AutClass, allowed: tuple[str, ...]) -> None:
    if a.level not in allowed:
        raise LevelMismatch(f"expected level in {allowed}, got {a.level!r}")


def rsaut_sign(a: AutClass, c: RealCurve, b: RealBundle, model: PinModel = DEFAULT_MODEL) -> int:
    _require_level(a, ("rsaut",))
    validate_aut(a, c, b)
    return model.signature(c.real_components, a.pin)


def raut_sign(a: AutClass, c: RealCurve, b: RealBundle, model: PinModel = DEFAULT_MODEL) -> int:
    """Pin signature times the determinant word's action on ``Det(det N)``."""
    _require_level(a, ("rsaut", "raut"))
    validate_aut(a, c, b)
    return model.signature(c.real_components, a.pin) * word_sign(a.det_word, c, b.determinant())


def riso_sign(
    a: AutClass, c: RealCurve, b: RealBundle, line_sign: int, model: PinModel = DEFAULT_MODEL
) -> int:
    """Pin signature, times the determinant's action, times ``det(phi^*)**(rank - 1)``.

    ``line_sign`` is the action of the determinant automorphism on the
    orientations of ``Det(det N)``.
    """
    _require_level(a, ("riso",))
    validate_aut(a, c, b)
    if line_sign not in (1, -1):
        raise InvalidAction(f"line_sign must be 1 or -1, got {line_sign!r}")
    return model.signature(c.real_components, a.pin) * line_sign * a.diffeo.det_h1_minus ** (b.rank - 1)


def aut_sign(
    a: AutClass,
    c: RealCurve,
    b: RealBundle,
    line_sign: int | None = None,
    model: PinModel = DEFAULT_MODEL,
) -> int:
    """Dispatch on the level.  At ``riso`` level with no ``line_sign`` the
    determinant word supplies it, which requires a trivial diffeomorphism."""
    if a.level == "rsaut":
        return rsaut_sign(a, c, b, model)
    if a.level == "raut":
        return raut_sign(a, c, b, model)
    if line_sign is None:
        if not a.diffeo.is_trivial():
            raise UnsupportedError(
                "the determinant's action for a non-trivial diffeomorphism needs an explicit line_sign"
            )
        line_sign = word_sign(a.det_word, c, b.determinant())
    return riso_sign(a, c, b, line_sign, model)


def s_n_derived(
    word: Sequence[DetGenerator],
    word_pin: PinAction,
    c: RealCurve,
    b: RealBundle,
    model: PinModel = DEFAULT_MODEL,
) -> int:
    """The sign ``s_N`` of a word: its total action divided by its Pin signature."""
    if b.rank != 1:
        raise RankNotOne(f"s_N is defined on line bundles here, got rank {b.rank}")
    return word_sign(word, c, b) * model.signature(c.real_components, word_pin)


def explain_aut_sign(
    a: AutClass, c: RealCurve, b: RealBundle, line_sign: int | None = None, model: PinModel = DEFAULT_MODEL
) -> list[Factor]:
    total = aut_sign(a, c, b, line_sign, model)
    out = [Factor("Pin+ torsor permutation", model.signature(c.real_components, a.pin))]
    if a.level == "raut" or (a.level == "riso" and line_sign is None):
        for gen in a.det_word:
            label = gen.kind if gen.index is None else f"{gen.kind}[{gen.index + 1}]"
            out.append(Factor(f"determinant generator {label}", generator_sign(gen, c, b.determinant())))
    elif a.level == "riso":
        out.append(Factor("determinant action on Det(det N)", line_sign))
    if a.level == "riso":
        out.append(
            Factor(f"det H^1(Sigma,R)_-1, power rank-1={b.rank - 1}", a.diffeo.det_h1_minus ** (b.rank - 1))
        )
    if product_of(out) != total:
        raise AssertionError("factor table does not reproduce the total sign")
    return out
