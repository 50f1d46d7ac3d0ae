"""JSON documents to and from the library's dataclasses.

Indices are 1-based on the wire (permutation images, circle indices,
marked points) and 0-based in Python.  Unknown keys are rejected so that
a misspelt field never silently falls back to a default.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .autsign import GENERATOR_KINDS, REAL_COMPONENT, AutClass, DetGenerator
from .divisor import FactorAction, DivisorConfig, DivisorShape
from .errors import MalformedInput, SchemaError
from .moduli import LoopMonodromy, ModuliData, PolarisationComponent, PolarisationData
from .pin import DiffeoClass, PinAction, SignedPermutation
from .topology import RealBundle, RealCurve, SpinClass


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError("a scenario must be a JSON object")
    return doc


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, ensure_ascii=False) + "\n"


# -- primitive readers -------------------------------------------------------


def _obj(value: Any, what: str, required: set[str], optional: set[str] = frozenset()) -> Mapping:
    if not isinstance(value, dict):
        raise SchemaError(f"{what} must be a JSON object")
    missing = required - value.keys()
    if missing:
        raise SchemaError(f"{what} is missing {', '.join(sorted(missing))}")
    extra = value.keys() - required - optional
    if extra:
        raise SchemaError(f"{what} has unknown keys {', '.join(sorted(extra))}")
    return value


def _int(value: Any, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"{what} must be an integer, got {value!r}")
    return value


def _bool(value: Any, what: str) -> bool:
    if not isinstance(value, bool):
        raise SchemaError(f"{what} must be true or false, got {value!r}")
    return value


def _int_list(value: Any, what: str) -> list[int]:
    if not isinstance(value, list):
        raise SchemaError(f"{what} must be a list")
    return [_int(v, f"{what}[{i + 1}]") for i, v in enumerate(value)]


def _from_one(values: list[int], what: str) -> tuple[int, ...]:
    # out-of-range values pass through; the library validators name them
    for v in values:
        if v < 1:
            raise SchemaError(f"{what} entries are 1-based, got {v}")
    return tuple(v - 1 for v in values)


def _to_one(values) -> list[int]:
    return [v + 1 for v in values]


# -- topology ----------------------------------------------------------------


def curve_from_json(value: Any) -> RealCurve:
    o = _obj(value, "curve", {"genus", "real_components", "separating"})
    return RealCurve(
        _int(o["genus"], "genus"), _int(o["real_components"], "real_components"), _bool(o["separating"], "separating")
    )


def curve_to_json(c: RealCurve) -> dict:
    return {"genus": c.genus, "real_components": c.real_components, "separating": c.separating}


def bundle_from_json(value: Any) -> RealBundle:
    o = _obj(value, "bundle", {"rank", "degree", "w1"})
    return RealBundle(_int(o["rank"], "rank"), _int(o["degree"], "degree"), tuple(_int_list(o["w1"], "w1")))


def bundle_to_json(b: RealBundle) -> dict:
    return {"rank": b.rank, "degree": b.degree, "w1": list(b.w1)}


def spin_class_from_json(value: Any) -> SpinClass:
    return SpinClass(tuple(_int_list(value, "xi")))


# -- pin ---------------------------------------------------------------------


def pin_from_json(value: Any) -> PinAction:
    o = _obj(value, "pin", {"flips", "component_perm"})
    return PinAction(
        tuple(_int_list(o["flips"], "flips")),
        _from_one(_int_list(o["component_perm"], "component_perm"), "component_perm"),
    )


def pin_to_json(a: PinAction) -> dict:
    return {"flips": list(a.flips), "component_perm": _to_one(a.component_perm)}


def diffeo_from_json(value: Any) -> DiffeoClass:
    o = _obj(value, "diffeo", {"component_perm", "reverses_circle"}, {"det_h1_minus", "swaps_halves"})
    return DiffeoClass(
        _from_one(_int_list(o["component_perm"], "component_perm"), "component_perm"),
        tuple(_int_list(o["reverses_circle"], "reverses_circle")),
        _int(o.get("det_h1_minus", 1), "det_h1_minus"),
        _bool(o.get("swaps_halves", False), "swaps_halves"),
    )


def diffeo_to_json(d: DiffeoClass) -> dict:
    return {
        "component_perm": _to_one(d.component_perm),
        "reverses_circle": list(d.reverses_circle),
        "det_h1_minus": d.det_h1_minus,
        "swaps_halves": d.swaps_halves,
    }


def signed_perm_from_json(value: Any, what: str) -> SignedPermutation:
    o = _obj(value, what, {"component_perm", "signs"})
    return SignedPermutation(
        _from_one(_int_list(o["component_perm"], f"{what}.component_perm"), f"{what}.component_perm"),
        tuple(_int_list(o["signs"], f"{what}.signs")),
    )


# -- automorphisms -----------------------------------------------------------


def generator_from_json(value: Any) -> DetGenerator:
    if not isinstance(value, dict) or "twist" not in value:
        raise SchemaError("det_word entries must be objects with a 'twist' key")
    kind = value["twist"]
    if kind not in GENERATOR_KINDS:
        raise SchemaError(f"unknown twist {kind!r}; expected one of {', '.join(GENERATOR_KINDS)}")
    if kind == REAL_COMPONENT:
        o = _obj(value, "real_component twist", {"twist", "index"})
        return DetGenerator(kind, _from_one([_int(o["index"], "index")], "index")[0])
    _obj(value, f"{kind} twist", {"twist"})
    return DetGenerator(kind)


def generator_to_json(gen: DetGenerator) -> dict:
    out = {"twist": gen.kind}
    if gen.index is not None:
        out["index"] = gen.index + 1
    return out


def aut_from_json(value: Any) -> AutClass:
    o = _obj(value, "automorphism", {"level", "pin"}, {"det_word", "diffeo"})
    word = o.get("det_word", [])
    if not isinstance(word, list):
        raise SchemaError("det_word must be a list")
    return AutClass(
        o["level"],
        pin_from_json(o["pin"]),
        tuple(generator_from_json(g) for g in word),
        diffeo_from_json(o["diffeo"]) if "diffeo" in o else None,
    )


def aut_to_json(a: AutClass) -> dict:
    return {
        "level": a.level,
        "pin": pin_to_json(a.pin),
        "det_word": [generator_to_json(g) for g in a.det_word],
        "diffeo": diffeo_to_json(a.diffeo),
    }


# -- divisors ----------------------------------------------------------------

SHAPE_KEYS = ("r_plus", "r_minus", "s_plus", "s_minus")
FACTOR_KEYS = tuple(FactorAction.__dataclass_fields__)


def shape_from_json(value: Any) -> DivisorShape:
    o = _obj(value, "shape", set(SHAPE_KEYS))
    return DivisorShape(*(_int(o[key], key) for key in SHAPE_KEYS))


def shape_to_json(s: DivisorShape) -> dict:
    return {key: getattr(s, key) for key in SHAPE_KEYS}


def config_from_json(value: Any) -> DivisorConfig:
    o = _obj(value, "config", {"real_plus", "real_minus", "conj_pairs_plus", "conj_pairs_minus"})
    return DivisorConfig(
        _from_one(_int_list(o["real_plus"], "real_plus"), "real_plus"),
        _from_one(_int_list(o["real_minus"], "real_minus"), "real_minus"),
        _int(o["conj_pairs_plus"], "conj_pairs_plus"),
        _int(o["conj_pairs_minus"], "conj_pairs_minus"),
    )


def config_to_json(cfg: DivisorConfig) -> dict:
    return {
        "real_plus": _to_one(cfg.real_plus),
        "real_minus": _to_one(cfg.real_minus),
        "conj_pairs_plus": cfg.conj_pairs_plus,
        "conj_pairs_minus": cfg.conj_pairs_minus,
    }


def factors_from_json(value: Any) -> FactorAction:
    o = _obj(value, "factors", set(), set(FACTOR_KEYS))
    return FactorAction(**{key: _int(v, key) for key, v in o.items()})


def factors_to_json(fa: FactorAction) -> dict:
    return {key: getattr(fa, key) for key in FACTOR_KEYS if getattr(fa, key) is not None}


# -- moduli ------------------------------------------------------------------

LOOP_KEYS = tuple(LoopMonodromy.__dataclass_fields__)


def moduli_from_json(value: Any) -> ModuliData:
    o = _obj(
        value,
        "moduli",
        {"half_dim", "marked", "tau", "c1d", "curve"},
        {"genus", "k_minus", "rx_spin", "re_eu_orientable"},
    )
    curve = curve_from_json(o["curve"])
    return ModuliData(
        half_dim=_int(o["half_dim"], "half_dim"),
        genus=_int(o.get("genus", curve.genus), "genus"),
        marked=_int(o["marked"], "marked"),
        tau=_from_one(_int_list(o["tau"], "tau"), "tau"),
        c1d=_int(o["c1d"], "c1d"),
        curve_type=curve,
        k_minus=_int(o.get("k_minus", 0), "k_minus"),
        rx_spin=_bool(o.get("rx_spin", False), "rx_spin"),
        re_eu_orientable=_bool(o.get("re_eu_orientable", False), "re_eu_orientable"),
    )


def moduli_to_json(m: ModuliData) -> dict:
    return {
        "half_dim": m.half_dim,
        "genus": m.genus,
        "marked": m.marked,
        "tau": _to_one(m.tau),
        "c1d": m.c1d,
        "curve": curve_to_json(m.curve_type),
        "k_minus": m.k_minus,
        "rx_spin": m.rx_spin,
        "re_eu_orientable": m.re_eu_orientable,
    }


def loop_from_json(value: Any) -> LoopMonodromy:
    o = _obj(value, "loop", set(), set(LOOP_KEYS))
    return LoopMonodromy(**{key: _int(v, key) for key, v in o.items()})


def loop_to_json(loop: LoopMonodromy) -> dict:
    return {key: getattr(loop, key) for key in LOOP_KEYS}


def polarisation_from_json(value: Any) -> PolarisationData:
    o = _obj(
        value, "polarisation", {"components", "claims_pd_c1", "claims_pd_w1_rx", "has_polarizing_section"}
    )
    if not isinstance(o["components"], list):
        raise SchemaError("polarisation components must be a list")
    comps = []
    for i, comp in enumerate(o["components"]):
        c = _obj(comp, f"polarisation component {i + 1}", {"multiplicity", "conjugation_stable"})
        comps.append(
            PolarisationComponent(
                _int(c["multiplicity"], "multiplicity"), _bool(c["conjugation_stable"], "conjugation_stable")
            )
        )
    return PolarisationData(
        tuple(comps),
        _bool(o["claims_pd_c1"], "claims_pd_c1"),
        _bool(o["claims_pd_w1_rx"], "claims_pd_w1_rx"),
        _bool(o["has_polarizing_section"], "has_polarizing_section"),
    )
