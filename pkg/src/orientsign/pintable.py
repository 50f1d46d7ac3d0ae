"""Intrinsic Pin actions of the determinant generators.

Each generator is supported near a set of real circles, so it can only flip
Pin structures there:

* a ``real_component`` twist may flip the Pin structure of its own circle;
* ``minus_one`` may flip every circle (all or none, by symmetry);
* ``invariant_circle`` and ``conjugate_pair`` twists avoid the real locus
  and flip nothing.

That leaves two unknown bits.  They are fixed by requiring the separating
evaluator, fed the generator's Pin action and its sign on each real circle,
to agree with the generator sign table on every separating curve type up
to a given genus.  The solution set is recomputed by :func:`derive_tables`
and the committed result lives in ``data/generator_pins.json``.

Run ``python -m orientsign.pintable`` to regenerate the file.
"""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass
from importlib import resources
from itertools import product
from pathlib import Path
from typing import Iterator, Sequence

from .autsign import (
    CONJUGATE_PAIR,
    INVARIANT_CIRCLE,
    MINUS_ONE,
    REAL_COMPONENT,
    AutClass,
    DetGenerator,
    raut_sign,
    word_real_action,
)
from .divisor import eval_separating
from .errors import UnsupportedError
from .pin import DEFAULT_MODEL, TORSOR_MODELS, PinAction, PinModel, SignedPermutation
from .topology import RealBundle, RealCurve, realizable_types

TABLE_FILE = "generator_pins.json"


@dataclass(frozen=True)
class GeneratorPinTable:
    real_component_own: int
    minus_one_all: int


def generator_pin(table: GeneratorPinTable, gen: DetGenerator, k: int) -> PinAction:
    flips = [0] * k
    if gen.kind == REAL_COMPONENT:
        flips[gen.index] = table.real_component_own
    elif gen.kind == MINUS_ONE:
        flips = [table.minus_one_all] * k
    return PinAction(tuple(flips), tuple(range(k)))


def word_pin(table: GeneratorPinTable, word: Sequence[DetGenerator], k: int) -> PinAction:
    out = PinAction.identity(k)
    for gen in word:
        out = generator_pin(table, gen, k).compose(out)
    return out


def candidate_tables() -> list[GeneratorPinTable]:
    return [GeneratorPinTable(a, b) for a, b in product((0, 1), repeat=2)]


def separating_scenarios(max_genus: int) -> Iterator[tuple[RealCurve, RealBundle]]:
    """Every separating type with ``g <= max_genus``, every w1, two degrees of each parity."""
    for g, k, sep in sorted(realizable_types(max_genus)):
        if not sep:
            continue
        c = RealCurve(g, k, True)
        for w1 in product((0, 1), repeat=k):
            parity = sum(w1) % 2
            for d in (parity - 2, parity, parity + 2):
                yield c, RealBundle(1, d, w1)


def generators_for(c: RealCurve) -> list[DetGenerator]:
    """Generators realisable on the curve.

    A conjugation-invariant circle off the real locus would have to lie in
    one half of a separating curve and in the other at once, so the
    ``invariant_circle`` twist is only offered on non-separating curves.
    """
    gens = [DetGenerator.real_component(i) for i in range(c.real_components)]
    gens += [DetGenerator.conjugate_pair(), DetGenerator.minus_one()]
    if not c.separating:
        gens.append(DetGenerator.invariant_circle())
    return gens


def words_for(c: RealCurve, max_length: int) -> Iterator[tuple[DetGenerator, ...]]:
    gens = generators_for(c)
    for length in range(max_length + 1):
        yield from product(gens, repeat=length)


def iter_failures(
    table: GeneratorPinTable, max_genus: int = 4, max_length: int = 2, model: PinModel = DEFAULT_MODEL
) -> Iterator[tuple[RealCurve, RealBundle, tuple[DetGenerator, ...], int, int]]:
    """Cases where the separating evaluator and the generator table disagree.

    Each entry is ``(curve, bundle, word, separating_sign, generator_sign)``.
    """
    for c, b in separating_scenarios(max_genus):
        k = c.real_components
        for word in words_for(c, max_length):
            lhs = eval_separating(
                c,
                b,
                pin=word_pin(table, word, k),
                orient=SignedPermutation(tuple(range(k)), word_real_action(word, c)),
                model=model,
            )
            rhs = raut_sign(AutClass("raut", PinAction.identity(k), word), c, b, model)
            if lhs != rhs:
                yield c, b, word, lhs, rhs


def derive_tables(
    max_genus: int = 4, max_length: int = 2, model: PinModel = DEFAULT_MODEL
) -> list[GeneratorPinTable]:
    """Every candidate table consistent on all separating types up to ``max_genus``."""
    return [t for t in candidate_tables() if next(iter_failures(t, max_genus, max_length, model), None) is None]


def load_table_document() -> dict:
    return json.loads(resources.files("orientsign.data").joinpath(TABLE_FILE).read_text(encoding="utf-8"))


def load_table() -> GeneratorPinTable:
    """The committed table; raises if the committed derivation was not unique."""
    doc = load_table_document()
    if len(doc["solutions"]) != 1:
        raise UnsupportedError("generator Pin actions are not determined; supply them explicitly")
    return GeneratorPinTable(**doc["solutions"][0])


def build_table_document(max_genus: int = 4, max_length: int = 2) -> dict:
    per_model = {t: derive_tables(max_genus, max_length, PinModel(t)) for t in TORSOR_MODELS}
    solutions = per_model[DEFAULT_MODEL.torsor]
    return {
        "unknowns": {
            "real_component_own": "flip of the Pin structure on the twisted circle",
            "minus_one_all": "flip of the Pin structure on every circle under -1",
        },
        "fixed_by_support": {INVARIANT_CIRCLE: "no flips", CONJUGATE_PAIR: "no flips"},
        "checked": {"max_genus": max_genus, "max_word_length": max_length},
        "solutions": [asdict(t) for t in solutions],
        "solutions_by_torsor_model": {name: [asdict(t) for t in sols] for name, sols in per_model.items()},
        "unique": len(solutions) == 1,
    }


def main(argv: Sequence[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description="Re-derive the generator Pin table")
    ap.add_argument("--max-genus", type=int, default=4)
    ap.add_argument("--max-length", type=int, default=2)
    ap.add_argument("--output", type=Path, default=None)
    args = ap.parse_args(argv)
    text = json.dumps(build_table_document(args.max_genus, args.max_length), indent=2, sort_keys=True) + "\n"
    if args.output is None:
        print(text, end="")
    else:
        args.output.write_text(text, encoding="utf-8")


if __name__ == "__main__":
    main()
