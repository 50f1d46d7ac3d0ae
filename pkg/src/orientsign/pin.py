"""Actions on Pin structures and on orientations of real components.

Permutations are tuples of 0-based images: ``perm[i]`` is where component
``i`` goes.  Bit vectors are tuples of 0/1.  Composition ``a.compose(b)``
means "apply ``b`` first, then ``a``".

An automorphism acts on the set of Pin structures of the real part by an
affine map ``x -> perm . x + flips`` where ``(perm . x)[perm[i]] = x[i]``.
Two readings of that set are supported:

``"product"``
    the ``2**k`` element torsor over ``(Z/2)**k`` (default);
``"components"``
    the disjoint union of the k two-element sets of Pin structures on each
    real circle, of size ``2*k``.

Both give a closed-form signature and a brute-force oracle that builds the
permutation explicitly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import permutations, product
from math import gcd
from typing import NamedTuple, Sequence

from .errors import InvalidAction, PermMismatch, TooLarge
from .topology import RealBundle, RealCurve

TORSOR_MODELS = ("product", "components")
MAX_BRUTEFORCE_K = 16


class Factor(NamedTuple):
    """One tensor factor of a determinant line and the sign acting on it."""

    name: str
    sign: int


def product_of(factors: Sequence[Factor]) -> int:
    out = 1
    for f in factors:
        out *= f.sign
    return out


# -- permutations ------------------------------------------------------------


def check_perm(perm: Sequence[int], n: int | None = None) -> tuple[int, ...]:
    perm = tuple(perm)
    if n is not None and len(perm) != n:
        raise InvalidAction(f"permutation has length {len(perm)}, expected {n}")
    if sorted(perm) != list(range(len(perm))):
        raise InvalidAction(f"{list(perm)} is not a permutation of 0..{len(perm) - 1}")
    return perm


def check_bits(bits: Sequence[int], n: int, what: str = "bit vector") -> tuple[int, ...]:
    bits = tuple(bits)
    if len(bits) != n:
        raise InvalidAction(f"{what} has length {len(bits)}, expected {n}")
    if any(b not in (0, 1) or isinstance(b, bool) for b in bits):
        raise InvalidAction(f"{what} must contain only 0/1, got {list(bits)}")
    return bits


def check_sign(s: int, what: str = "sign") -> int:
    if s not in (1, -1) or isinstance(s, bool):
        raise InvalidAction(f"{what} must be 1 or -1, got {s!r}")
    return s


def compose_perm(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """``p o q``: apply ``q`` first."""
    return tuple(p[q[i]] for i in range(len(q)))


def invert_perm(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def identity_perm(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def cycles(perm: Sequence[int]) -> list[list[int]]:
    """Cycle decomposition; each cycle starts at its smallest element."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = perm[i]
        out.append(cyc)
    return out


def perm_sign(perm: Sequence[int]) -> int:
    return -1 if (len(perm) - len(cycles(perm))) % 2 else 1


def perm_sign_by_inversions(perm: Sequence[int]) -> int:
    n = len(perm)
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def restrict_perm(perm: Sequence[int], subset: Sequence[int]) -> tuple[int, ...]:
    """Restriction to an invariant subset, relabelled as ``0..len(subset)-1``."""
    index = {c: pos for pos, c in enumerate(subset)}
    try:
        return tuple(index[perm[c]] for c in subset)
    except KeyError:
        raise InvalidAction(f"permutation {list(perm)} does not preserve {list(subset)}") from None


def preserves_pattern(perm: Sequence[int], bits: Sequence[int]) -> bool:
    return all(bits[perm[i]] == bits[i] for i in range(len(perm)))


@dataclass(frozen=True)
class SignedPermutation:
    """Permutation of lines together with the sign of each map line i -> line perm[i]."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "perm", check_perm(self.perm))
        signs = tuple(self.signs)
        if len(signs) != len(self.perm):
            raise InvalidAction("signed permutation: perm and signs differ in length")
        for s in signs:
            check_sign(s)
        object.__setattr__(self, "signs", signs)

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(identity_perm(n), (1,) * n)

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        perm = compose_perm(self.perm, other.perm)
        signs = tuple(other.signs[i] * self.signs[other.perm[i]] for i in range(len(other.perm)))
        return SignedPermutation(perm, signs)

    def restrict(self, subset: Sequence[int]) -> "SignedPermutation":
        return SignedPermutation(restrict_perm(self.perm, subset), tuple(self.signs[c] for c in subset))

    def det_sign(self) -> int:
        """Determinant of the induced map on the direct sum of the lines."""
        s = perm_sign(self.perm)
        for x in self.signs:
            s *= x
        return s


# -- automorphism data -------------------------------------------------------


@dataclass(frozen=True)
class PinAction:
    flips: tuple[int, ...]
    component_perm: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "flips", tuple(self.flips))
        object.__setattr__(self, "component_perm", tuple(self.component_perm))

    @classmethod
    def identity(cls, k: int) -> "PinAction":
        return cls((0,) * k, identity_perm(k))

    @property
    def k(self) -> int:
        return len(self.flips)

    def is_identity(self) -> bool:
        return not any(self.flips) and self.component_perm == identity_perm(self.k)

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        y = [0] * self.k
        for i, bit in enumerate(x):
            y[self.component_perm[i]] = bit
        return tuple(a ^ b for a, b in zip(y, self.flips))

    def compose(self, other: "PinAction") -> "PinAction":
        # (p, t) o (p', t') = (p p', t + p . t')
        perm = compose_perm(self.component_perm, other.component_perm)
        moved = [0] * self.k
        for i, bit in enumerate(other.flips):
            moved[self.component_perm[i]] = bit
        return PinAction(tuple(a ^ b for a, b in zip(self.flips, moved)), perm)


def validate_pin_action(k: int, a: PinAction, w1: Sequence[int] | None = None) -> None:
    check_bits(a.flips, k, "flips")
    check_perm(a.component_perm, k)
    if w1 is not None and not preserves_pattern(a.component_perm, w1):
        raise InvalidAction("component permutation does not preserve w1 of the bundle")


@dataclass(frozen=True)
class DiffeoClass:
    component_perm: tuple[int, ...]
    reverses_circle: tuple[int, ...]
    det_h1_minus: int = 1
    swaps_halves: bool = False

    def __post_init__(self):
        object.__setattr__(self, "component_perm", tuple(self.component_perm))
        object.__setattr__(self, "reverses_circle", tuple(self.reverses_circle))

    @classmethod
    def identity(cls, k: int) -> "DiffeoClass":
        return cls(identity_perm(k), (0,) * k, 1, False)

    @property
    def k(self) -> int:
        return len(self.component_perm)

    def is_trivial(self) -> bool:
        return self == DiffeoClass.identity(self.k)

    def compose(self, other: "DiffeoClass") -> "DiffeoClass":
        perm = compose_perm(self.component_perm, other.component_perm)
        rev = tuple(other.reverses_circle[i] ^ self.reverses_circle[other.component_perm[i]] for i in range(self.k))
        return DiffeoClass(perm, rev, self.det_h1_minus * other.det_h1_minus, self.swaps_halves != other.swaps_halves)

    def cycle_parities(self) -> list[tuple[list[int], int]]:
        """Each cycle of the component permutation with the XOR of its reversal bits."""
        out = []
        for cyc in cycles(self.component_perm):
            parity = 0
            for i in cyc:
                parity ^= self.reverses_circle[i]
            out.append((cyc, parity))
        return out

    def normalized(self) -> "DiffeoClass":
        """Same class with reversal parity carried by the first element of each cycle.

        Reversal bits depend on reference orientations of the circles; only
        their XOR along each cycle is intrinsic.
        """
        rev = [0] * self.k
        for cyc, parity in self.cycle_parities():
            rev[cyc[0]] = parity
        return DiffeoClass(self.component_perm, tuple(rev), self.det_h1_minus, self.swaps_halves)

    def circle_action(self) -> SignedPermutation:
        """Action on the lines H^1 of the real circles (a reversed circle flips its line)."""
        return SignedPermutation(self.component_perm, tuple(-1 if r else 1 for r in self.reverses_circle))


def validate_diffeo(c: RealCurve, d: DiffeoClass, w1: Sequence[int] | None = None) -> None:
    k = c.real_components
    check_perm(d.component_perm, k)
    check_bits(d.reverses_circle, k, "reverses_circle")
    check_sign(d.det_h1_minus, "det_h1_minus")
    if not isinstance(d.swaps_halves, bool):
        raise InvalidAction("swaps_halves must be a bool")
    if d.swaps_halves and not c.separating:
        raise InvalidAction("only a separating curve has two halves to swap")
    if w1 is not None and not preserves_pattern(d.component_perm, w1):
        raise InvalidAction("diffeomorphism does not preserve w1 of the bundle")


def diffeo_warnings(c: RealCurve, d: DiffeoClass) -> list[str]:
    """Soft topological checks.

    On a separating curve a diffeomorphism preserving the halves preserves
    the complex orientation of every real circle; one swapping them
    reverses it.  So the reversal parity of a cycle of length L must equal
    ``swaps_halves * L mod 2``.
    """
    if not c.separating:
        return []
    out = []
    for cyc, parity in d.cycle_parities():
        expected = int(d.swaps_halves) * (len(cyc) % 2)
        if parity != expected:
            out.append(
                f"cycle {[i + 1 for i in cyc]} has reversal parity {parity}; a separating curve "
                f"forces {expected} when swaps_halves={d.swaps_halves}"
            )
    return out


# -- signatures on the Pin torsor --------------------------------------------


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def _block_cycle_type(length: int, parity: int) -> dict[int, int]:
    """Cycle type of ``x -> shift(x) + parity*e_0`` on ``(Z/2)**length``.

    ``A^j`` has ``2**gcd(j, L)`` fixed points when ``parity == 0`` or
    ``j/gcd(j, L)`` is even, and none otherwise; Moebius inversion turns
    fixed-point counts into exact-period counts.
    """
    order = length if parity == 0 else 2 * length
    fixed = {}
    for j in _divisors(order):
        d = gcd(j, length)
        fixed[j] = 2**d if parity == 0 or (j // d) % 2 == 0 else 0
    out = {}
    for j in _divisors(order):
        exact = sum(_mobius(j // e) * fixed[e] for e in _divisors(j))
        if exact:
            out[j] = exact // j
    return out


def _product_cycle_type(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: Counter[int] = Counter()
    for la, na in a.items():
        for lb, nb in b.items():
            g = gcd(la, lb)
            out[la * lb // g] += na * nb * g
    return dict(out)


def _flip_parities(a: PinAction) -> list[tuple[int, int]]:
    """(cycle length, XOR of flips along it) per cycle of the component permutation."""
    out = []
    for cyc in cycles(a.component_perm):
        parity = 0
        for i in cyc:
            parity ^= a.flips[i]
        out.append((len(cyc), parity))
    return out


def torsor_cycle_type(k: int, a: PinAction, torsor: str = "product") -> dict[int, int]:
    """Cycle type ``{length: count}`` of the induced permutation of Pin structures."""
    validate_pin_action(k, a)
    if torsor == "product":
        result = {1: 1}
        for length, parity in _flip_parities(a):
            result = _product_cycle_type(result, _block_cycle_type(length, parity))
        return result
    if torsor == "components":
        out: Counter[int] = Counter()
        for length, parity in _flip_parities(a):
            if parity:
                out[2 * length] += 1
            else:
                out[length] += 2
        return dict(out)
    raise ValueError(f"unknown torsor model {torsor!r}")


def torsor_size(k: int, torsor: str = "product") -> int:
    return 2**k if torsor == "product" else 2 * k


def pin_signature(k: int, a: PinAction, torsor: str = "product") -> int:
    """Signature of the permutation of Pin structures, ``(-1)**(size - #cycles)``."""
    ncycles = sum(torsor_cycle_type(k, a, torsor).values())
    return -1 if (torsor_size(k, torsor) - ncycles) % 2 else 1


def _torsor_permutation(k: int, a: PinAction, torsor: str) -> list[int]:
    if torsor == "product":
        # bit i of the integer x is coordinate i
        images = [0] * (1 << k)
        bit_image = [1 << a.component_perm[i] for i in range(k)]
        for x in range(1, 1 << k):
            low = (x & -x).bit_length() - 1
            images[x] = images[x & (x - 1)] ^ bit_image[low]
        t = sum(bit << i for i, bit in enumerate(a.flips))
        return [y ^ t for y in images]
    if torsor == "components":
        # label 2*i + s is the Pin structure s on circle i
        perm = [0] * (2 * k)
        for i in range(k):
            j = a.component_perm[i]
            for s in (0, 1):
                perm[2 * i + s] = 2 * j + (s ^ a.flips[j])
        return perm
    raise ValueError(f"unknown torsor model {torsor!r}")


def pin_signature_bruteforce(k: int, a: PinAction, torsor: str = "product") -> int:
    """Enumerate the torsor, build the permutation, count transpositions."""
    if k > MAX_BRUTEFORCE_K:
        raise TooLarge(f"brute force limited to k <= {MAX_BRUTEFORCE_K}, got {k}")
    validate_pin_action(k, a)
    perm = _torsor_permutation(k, a, torsor)
    seen = bytearray(len(perm))
    transpositions = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = 1
            i = perm[i]
            length += 1
        transpositions += length - 1
    return -1 if transpositions % 2 else 1


@dataclass(frozen=True)
class PinModel:
    """Which reading of the Pin torsor to use and whether to force brute force."""

    torsor: str = "product"
    brute_force: bool = False

    def __post_init__(self):
        if self.torsor not in TORSOR_MODELS:
            raise ValueError(f"torsor must be one of {TORSOR_MODELS}, got {self.torsor!r}")

    def signature(self, k: int, a: PinAction) -> int:
        if k == 0:
            return 1
        if self.brute_force:
            return pin_signature_bruteforce(k, a, self.torsor)
        return pin_signature(k, a, self.torsor)


DEFAULT_MODEL = PinModel()


# -- orientations of non-orientable components --------------------------------


def _check_same_curve(d: DiffeoClass, b: RealBundle) -> None:
    if d.k != len(b.w1):
        raise InvalidAction(f"diffeomorphism acts on {d.k} components, bundle has {len(b.w1)}")
    if not preserves_pattern(d.component_perm, b.w1):
        raise InvalidAction("diffeomorphism does not preserve w1 of the bundle")


def sigma_minus_signature(d: DiffeoClass, b: RealBundle) -> int:
    """Signature on the 2*k_minus orientations of the circles where the real part is non-orientable.

    A cycle of circles contributes -1 exactly when it reverses orientation
    an odd number of times (its labels then form one cycle of even length).
    """
    _check_same_curve(d, b)
    sign = 1
    for cyc, parity in d.cycle_parities():
        if b.w1[cyc[0]] and parity:
            sign = -sign
    return sign


def sigma_minus_permutation(d: DiffeoClass, b: RealBundle) -> list[int]:
    """The permutation itself; label ``2*p + s`` is orientation s of the p-th non-orientable circle."""
    _check_same_curve(d, b)
    minus = b.non_orientable_components()
    pos = {c: p for p, c in enumerate(minus)}
    perm = [0] * (2 * len(minus))
    for p, c in enumerate(minus):
        target = pos[d.component_perm[c]]
        for s in (0, 1):
            perm[2 * p + s] = 2 * target + (s ^ d.reverses_circle[c])
    return perm


def sigma_minus_signature_bruteforce(d: DiffeoClass, b: RealBundle) -> int:
    return perm_sign_by_inversions(sigma_minus_permutation(d, b))


def pin_minus_signature(
    k: int, a: PinAction, d: DiffeoClass, b: RealBundle, model: PinModel = DEFAULT_MODEL
) -> int:
    """Signature on Pin^- structures, recovered from the Pin^+ one and the orientation permutation."""
    if tuple(a.component_perm) != tuple(d.component_perm):
        raise PermMismatch("Pin action and diffeomorphism permute the components differently")
    return model.signature(k, a) * sigma_minus_signature(d, b)


def realizable_signatures(k: int, torsor: str = "product") -> set[int]:
    """Signatures reached by some affine action of the torsor (k <= 4 by enumeration)."""
    out = set()
    for perm in permutations(range(k)):
        for flips in product((0, 1), repeat=k):
            out.add(pin_signature(k, PinAction(flips, perm), torsor) if k else 1)
    return out
