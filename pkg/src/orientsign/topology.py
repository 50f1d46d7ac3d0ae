"""Topological types of real curves and real bundles, and real Spin counts.

A real curve is recorded by its genus ``g``, the number ``k`` of circles in
its real locus and whether the real locus disconnects the surface.  A real
bundle over it is recorded by rank, degree and the first Stiefel-Whitney
class of its real part, one bit per real circle.

Beyond ``0 <= k <= g + 1`` the validator enforces the classical bounds on
realizable types: a separating curve has ``k >= 1`` and ``k = g + 1 mod 2``;
a non-separating one has ``k <= g``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import (
    EmptyRealLocus,
    InvalidBundle,
    InvalidTopology,
    LengthMismatch,
    ParityMismatch,
    TooLarge,
)

MAX_COUNT_EXPONENT = 64
MAX_ENUMERATED_COMPONENTS = 20


@dataclass(frozen=True)
class RealCurve:
    genus: int
    real_components: int
    separating: bool

    @property
    def k(self) -> int:
        return self.real_components


@dataclass(frozen=True)
class RealBundle:
    rank: int
    degree: int
    w1: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "w1", tuple(self.w1))

    @property
    def k_minus(self) -> int:
        """Number of real circles over which the real part is non-orientable."""
        return sum(self.w1)

    @property
    def k_plus(self) -> int:
        return len(self.w1) - self.k_minus

    def orientable_components(self) -> list[int]:
        return [i for i, bit in enumerate(self.w1) if bit == 0]

    def non_orientable_components(self) -> list[int]:
        return [i for i, bit in enumerate(self.w1) if bit == 1]

    def determinant(self) -> "RealBundle":
        """The complex determinant line, whose real part has the same w1."""
        return RealBundle(1, self.degree, self.w1)


@dataclass(frozen=True)
class SpinClass:
    w: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(self.w))


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def validate_curve(c: RealCurve) -> None:
    g, k = c.genus, c.real_components
    if not _is_int(g) or not _is_int(k) or not isinstance(c.separating, bool):
        raise InvalidTopology("genus and real_components must be integers, separating a bool")
    if g < 0:
        raise InvalidTopology(f"genus must be nonnegative, got {g}")
    if not 0 <= k <= g + 1:
        raise InvalidTopology(f"need 0 <= k <= g+1, got k={k}, g={g}")
    if c.separating:
        if k < 1:
            raise InvalidTopology("a separating curve has a non-empty real locus (k >= 1)")
        if (k - g - 1) % 2:
            raise InvalidTopology(f"a separating curve needs k = g+1 mod 2, got k={k}, g={g}")
    elif k > g:
        raise InvalidTopology(f"a non-separating curve needs k <= g, got k={k}, g={g}")


def validate_bundle(c: RealCurve, b: RealBundle) -> None:
    validate_curve(c)
    if not _is_int(b.rank) or b.rank < 1:
        raise InvalidBundle(f"rank must be a positive integer, got {b.rank!r}")
    if not _is_int(b.degree):
        raise InvalidBundle(f"degree must be an integer, got {b.degree!r}")
    if any(bit not in (0, 1) or isinstance(bit, bool) for bit in b.w1):
        raise InvalidBundle(f"w1 must be a list of 0/1 bits, got {list(b.w1)}")
    if len(b.w1) != c.real_components:
        raise LengthMismatch(f"w1 has length {len(b.w1)} but the curve has {c.real_components} real components")
    if (b.k_minus - b.degree) % 2:
        raise ParityMismatch(f"sum of w1 bits ({b.k_minus}) and degree ({b.degree}) differ mod 2")


def realizable_types(max_genus: int) -> set[tuple[int, int, bool]]:
    """All valid ``(g, k, separating)`` triples with ``g <= max_genus``."""
    out = set()
    for g in range(max_genus + 1):
        for k in range(g + 2):
            for sep in (False, True):
                try:
                    validate_curve(RealCurve(g, k, sep))
                except InvalidTopology:
                    continue
                out.add((g, k, sep))
    return out


def _require_real_points(c: RealCurve) -> None:
    validate_curve(c)
    if c.real_components < 1:
        raise EmptyRealLocus("real Spin structures are counted only for a non-empty real locus")
    if c.genus + c.real_components > MAX_COUNT_EXPONENT:
        raise TooLarge(f"g + k = {c.genus + c.real_components} exceeds {MAX_COUNT_EXPONENT}")


def spin_count(c: RealCurve) -> int:
    _require_real_points(c)
    return 2 ** (c.genus + c.real_components - 1)


def spin_w_class_count(c: RealCurve) -> int:
    _require_real_points(c)
    return 2 ** (c.real_components - 1)


def spin_w_classes(c: RealCurve) -> list[SpinClass]:
    """Bit vectors ``w`` of length k whose bit sum is ``g + 1`` mod 2."""
    _require_real_points(c)
    k = c.real_components
    if k > MAX_ENUMERATED_COMPONENTS:
        raise TooLarge(f"refusing to enumerate 2^{k - 1} classes")
    target = (c.genus + 1) % 2
    return [SpinClass(w) for w in product((0, 1), repeat=k) if sum(w) % 2 == target]


def spin_count_per_class(c: RealCurve) -> int:
    return spin_count(c) // spin_w_class_count(c)


def validate_spin_class(c: RealCurve, xi: SpinClass) -> None:
    if len(xi.w) != c.real_components:
        raise LengthMismatch(f"Spin class has length {len(xi.w)}, curve has {c.real_components} components")
    if any(bit not in (0, 1) for bit in xi.w):
        raise InvalidBundle("Spin class bits must be 0/1")
    if (sum(xi.w) - c.genus - 1) % 2:
        raise ParityMismatch(f"Spin class bit sum must be g+1 = {c.genus + 1} mod 2")
