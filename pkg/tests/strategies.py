"""Hypothesis strategies for curves, bundles and automorphism data."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from orientsign.autsign import AutClass, DetGenerator
from orientsign.moduli import LoopMonodromy, ModuliData
from orientsign.pin import DiffeoClass, PinAction, compose_perm, identity_perm
from orientsign.topology import RealBundle, RealCurve, realizable_types

TYPES = sorted(realizable_types(6))
SIGNS = st.sampled_from((1, -1))
BITS = st.integers(0, 1)


@st.composite
def curves(draw, max_genus: int = 6, min_k: int = 0, separating: bool | None = None) -> RealCurve:
    pool = [t for t in TYPES if t[0] <= max_genus and t[1] >= min_k and (separating is None or t[2] == separating)]
    return RealCurve(*draw(st.sampled_from(pool)))


@st.composite
def bundles(draw, c: RealCurve, rank: int | None = None, degree_span: int = 8) -> RealBundle:
    w1 = tuple(draw(st.lists(BITS, min_size=c.k, max_size=c.k)))
    half = draw(st.integers(-degree_span, degree_span))
    r = rank if rank is not None else draw(st.integers(1, 4))
    return RealBundle(r, 2 * half + sum(w1) % 2, w1)


@st.composite
def curve_and_bundle(draw, max_genus: int = 6, min_k: int = 0, separating=None, rank=None):
    c = draw(curves(max_genus, min_k, separating))
    return c, draw(bundles(c, rank))


@st.composite
def pattern_perms(draw, bits) -> tuple[int, ...]:
    """A permutation preserving the 0/1 pattern ``bits``."""
    perm = list(range(len(bits)))
    for value in (0, 1):
        block = [i for i, b in enumerate(bits) if b == value]
        shuffled = draw(st.permutations(block))
        for src, dst in zip(block, shuffled):
            perm[src] = dst
    return tuple(perm)


@st.composite
def pin_actions(draw, k: int, perm=None) -> PinAction:
    if perm is None:
        perm = tuple(draw(st.permutations(range(k))))
    return PinAction(tuple(draw(st.lists(BITS, min_size=k, max_size=k))), perm)


@st.composite
def diffeos(draw, c: RealCurve, perm=None, consistent: bool = True) -> DiffeoClass:
    """Diffeomorphism data; on separating curves the reversal bits respect the halves when ``consistent``."""
    k = c.k
    if perm is None:
        perm = tuple(draw(st.permutations(range(k))))
    swaps = draw(st.booleans()) if c.separating else False
    if c.separating and consistent:
        rev = (int(swaps),) * k
    else:
        rev = tuple(draw(st.lists(BITS, min_size=k, max_size=k)))
    return DiffeoClass(perm, rev, draw(SIGNS), swaps)


@st.composite
def words(draw, c: RealCurve, max_size: int = 5):
    gens = [DetGenerator.conjugate_pair(), DetGenerator.minus_one()]
    gens += [DetGenerator.real_component(i) for i in range(c.k)]
    if not c.separating:
        gens.append(DetGenerator.invariant_circle())
    return tuple(draw(st.lists(st.sampled_from(gens), max_size=max_size)))


@st.composite
def raut_classes(draw, c: RealCurve, b: RealBundle) -> AutClass:
    k = c.k
    flips = (0,) * k if b.rank == 1 else tuple(draw(st.lists(BITS, min_size=k, max_size=k)))
    return AutClass("raut", PinAction(flips, identity_perm(k)), draw(words(c)))


@st.composite
def loops(draw, separating: bool = True) -> LoopMonodromy:
    values = {name: draw(SIGNS) for name in LoopMonodromy.__dataclass_fields__}
    if not separating:
        values["h_factor"] = 1
    return LoopMonodromy(**values)


def random_involution(rng: random.Random, r: int) -> tuple[int, ...]:
    points = list(range(r))
    rng.shuffle(points)
    tau = list(range(r))
    n_pairs = rng.randint(0, r // 2)
    for j in range(n_pairs):
        a, b = points[2 * j], points[2 * j + 1]
        tau[a], tau[b] = b, a
    assert compose_perm(tau, tau) == identity_perm(r)
    return tuple(tau)


@st.composite
def moduli_data(draw, separating: bool | None = None, spin: bool = False) -> ModuliData:
    c = draw(curves(5, min_k=1 if spin else 0, separating=separating))
    r = draw(st.integers(0, 6))
    tau = random_involution(random.Random(draw(st.integers(0, 2**32))), r)
    k_minus = 0 if spin else draw(st.integers(0, c.k))
    c1d = 2 * draw(st.integers(-5, 5)) + k_minus % 2
    return ModuliData(
        half_dim=draw(st.integers(2, 7)),
        genus=c.genus,
        marked=r,
        tau=tau,
        c1d=c1d,
        curve_type=c,
        k_minus=k_minus,
        rx_spin=draw(st.booleans()),
        re_eu_orientable=spin or (k_minus == 0 and draw(st.booleans())),
    )
