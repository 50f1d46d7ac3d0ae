"""``orientsign`` command-line front end.

Every invocation prints exactly one JSON document on standard output.
Failures print ``{"error": {"type": ..., "message": ...}}`` and exit with
1 (unreadable input), 2 (invalid data), 3 (hypothesis violated) or
4 (not computable from the data given).  Warnings go to standard error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Callable, Mapping, Sequence

from . import __version__, schema
from .autsign import aut_sign, explain_aut_sign, validate_aut
from .divisor import (
    conjugate_swap_monodromy,
    eval_bigres,
    is_adapted,
    is_adapted_bruteforce,
    separating_factors,
    spin_factors,
    validate_config,
    witness_config,
)
from .errors import InvalidTopology, MalformedInput, OrientSignError, SchemaError
from .moduli import (
    LoopMonodromy,
    hypersurface_factors,
    orientable_predicate,
    polarized_factors,
    separating_w1_factors,
    sign_to_bit,
    spin_w1_factors,
    teich_orientation_sign,
    validate_moduli,
    validate_polarisation,
)
from .pin import (
    TORSOR_MODELS,
    Factor,
    PinModel,
    diffeo_warnings,
    product_of,
    sigma_minus_signature,
    sigma_minus_signature_bruteforce,
    validate_diffeo,
    validate_pin_action,
)
from .topology import (
    RealCurve,
    spin_count,
    spin_count_per_class,
    spin_w_class_count,
    spin_w_classes,
    validate_bundle,
    validate_curve,
    validate_spin_class,
)

COMMENT_KEYS = {"description"}


class Context:
    def __init__(self, args: argparse.Namespace):
        self.explain: bool = args.explain
        self.oracle: bool = args.oracle
        self.model = PinModel(args.torsor, brute_force=args.oracle)
        self.warnings: list[str] = []


def _read(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from None
    return schema.loads(text)


def _keys(doc: Mapping, required: set[str], optional: set[str] = frozenset()) -> Mapping:
    return schema._obj(doc, "scenario", required, set(optional) | COMMENT_KEYS)


def _factor_table(factors: Sequence[Factor]) -> list[dict]:
    return [{"factor": f.name, "sign": f.sign} for f in factors]


def _sign_result(ctx: Context, factors: Sequence[Factor]) -> dict:
    out: dict[str, Any] = {"sign": product_of(factors)}
    if ctx.explain:
        out["explain"] = _factor_table(factors)
    return out


def _bit_result(ctx: Context, factors: Sequence[Factor]) -> dict:
    out: dict[str, Any] = {"w1_bit": sign_to_bit(product_of(factors))}
    if ctx.explain:
        out["explain"] = _factor_table(factors)
    return out


def _optional(doc: Mapping, key: str, reader: Callable):
    return reader(doc[key]) if key in doc else None


# -- validate ----------------------------------------------------------------

_VALIDATE_KEYS = {
    "bundle", "automorphism", "pin", "diffeo", "shape", "config", "xi", "factors",
    "moduli", "loop", "polarisation", "evaluator", "line_sign", "orient", "semi_orient_flip",
    "h1w_action", "rank", "conjugate_swap", "pairing", "real_locus_nonempty",
}


def cmd_validate(ctx: Context, doc: Mapping) -> dict:
    _keys(doc, set(), {"curve"} | _VALIDATE_KEYS)
    c = _optional(doc, "curve", schema.curve_from_json)
    b = _optional(doc, "bundle", schema.bundle_from_json)
    if c is not None:
        validate_curve(c)
    if b is not None:
        if c is None:
            raise SchemaError("a bundle needs a curve")
        validate_bundle(c, b)
    if "automorphism" in doc:
        if b is None:
            raise SchemaError("an automorphism needs a curve and a bundle")
        ctx.warnings += validate_aut(schema.aut_from_json(doc["automorphism"]), c, b)
    for key, reader in (("pin", schema.pin_from_json), ("diffeo", schema.diffeo_from_json)):
        if key in doc:
            if c is None:
                raise SchemaError(f"{key} needs a curve")
            obj = reader(doc[key])
            w1 = b.w1 if b is not None else None
            if key == "pin":
                validate_pin_action(c.real_components, obj, w1)
            else:
                validate_diffeo(c, obj, w1)
                ctx.warnings += diffeo_warnings(c, obj)
    if "xi" in doc:
        if c is None:
            raise SchemaError("xi needs a curve")
        validate_spin_class(c, schema.spin_class_from_json(doc["xi"]))
    if "shape" in doc:
        shape = schema.shape_from_json(doc["shape"])
        if "config" in doc:
            if b is None:
                raise SchemaError("a divisor configuration needs a curve and a bundle")
            validate_config(schema.config_from_json(doc["config"]), shape, c, b)
    if "factors" in doc:
        schema.factors_from_json(doc["factors"])
    if "moduli" in doc:
        validate_moduli(schema.moduli_from_json(doc["moduli"]))
    if "loop" in doc:
        schema.loop_from_json(doc["loop"])
    if "polarisation" in doc:
        validate_polarisation(schema.polarisation_from_json(doc["polarisation"]))
    return {"valid": True, "warnings": ctx.warnings}


# -- sign --------------------------------------------------------------------


def _sign_aut(ctx: Context, doc: Mapping) -> dict:
    _keys(doc, {"curve", "bundle", "automorphism"}, {"evaluator", "line_sign"})
    c, b = schema.curve_from_json(doc["curve"]), schema.bundle_from_json(doc["bundle"])
    a = schema.aut_from_json(doc["automorphism"])
    line_sign = _optional(doc, "line_sign", lambda v: schema._int(v, "line_sign"))
    ctx.warnings += validate_aut(a, c, b)
    if ctx.explain:
        return _sign_result(ctx, explain_aut_sign(a, c, b, line_sign, ctx.model))
    return {"sign": aut_sign(a, c, b, line_sign, ctx.model)}


def _sign_separating(ctx: Context, doc: Mapping) -> dict:
    _keys(doc, {"curve", "bundle", "evaluator"}, {"pin", "diffeo", "orient"})
    c, b = schema.curve_from_json(doc["curve"]), schema.bundle_from_json(doc["bundle"])
    diffeo = _optional(doc, "diffeo", schema.diffeo_from_json)
    if diffeo is not None:
        validate_curve(c)
        ctx.warnings += diffeo_warnings(c, diffeo)
    factors = separating_factors(
        c,
        b,
        pin=_optional(doc, "pin", schema.pin_from_json),
        diffeo=diffeo,
        orient=_optional(doc, "orient", lambda v: schema.signed_perm_from_json(v, "orient")),
        model=ctx.model,
    )
    return _sign_result(ctx, factors)


def _sign_spin(ctx: Context, doc: Mapping) -> dict:
    _keys(doc, {"curve", "bundle", "evaluator", "xi"}, {"pin", "diffeo", "semi_orient_flip", "h1w_action"})
    c, b = schema.curve_from_json(doc["curve"]), schema.bundle_from_json(doc["bundle"])
    factors = spin_factors(
        c,
        b,
        schema.spin_class_from_json(doc["xi"]),
        pin=_optional(doc, "pin", schema.pin_from_json),
        diffeo=_optional(doc, "diffeo", schema.diffeo_from_json),
        semi_orient_flip=schema._bool(doc.get("semi_orient_flip", False), "semi_orient_flip"),
        h1w_action=_optional(doc, "h1w_action", lambda v: schema.signed_perm_from_json(v, "h1w_action")),
        model=ctx.model,
    )
    return _sign_result(ctx, factors)


def _sign_bigres(ctx: Context, doc: Mapping) -> dict:
    _keys(doc, {"evaluator"}, {"factors", "rank", "curve", "bundle", "shape", "conjugate_swap"})
    if doc.get("conjugate_swap", False):
        if "factors" in doc:
            raise SchemaError("give either factors or conjugate_swap, not both")
        if "curve" not in doc:
            raise SchemaError("conjugate_swap needs a curve")
        c = schema.curve_from_json(doc["curve"])
        validate_curve(c)
        fa = conjugate_swap_monodromy(c, _optional(doc, "shape", schema.shape_from_json))
    elif "factors" in doc:
        fa = schema.factors_from_json(doc["factors"])
    else:
        raise SchemaError("bigres needs factors or conjugate_swap")
    if "rank" in doc:
        rank = schema._int(doc["rank"], "rank")
    elif "bundle" in doc:
        rank = schema.bundle_from_json(doc["bundle"]).rank
    else:
        raise SchemaError("bigres needs a rank or a bundle")
    sign = eval_bigres(fa, rank)
    factors = [
        Factor("Pin+ torsor permutation", fa.pin_plus),
        Factor("principal bundle of polarised operators", fa.d_factor),
        Factor("real span of the divisor points", fa.rj_factor),
        Factor("tangent lines at the positive real points", fa.t_factor),
        Factor(f"det H^1(Sigma,R)_-1, power rank={rank}", fa.h1_minus**rank),
    ]
    assert product_of(factors) == sign
    return _sign_result(ctx, factors)


def _sign_pin_minus(ctx: Context, doc: Mapping) -> dict:
    _keys(doc, {"curve", "bundle", "evaluator", "pin", "diffeo"})
    c, b = schema.curve_from_json(doc["curve"]), schema.bundle_from_json(doc["bundle"])
    pin, diffeo = schema.pin_from_json(doc["pin"]), schema.diffeo_from_json(doc["diffeo"])
    validate_bundle(c, b)
    validate_pin_action(c.real_components, pin, b.w1)
    validate_diffeo(c, diffeo, b.w1)
    if pin.component_perm != diffeo.component_perm:
        raise SchemaError("pin and diffeo permute the components differently")
    sigma = (sigma_minus_signature_bruteforce if ctx.oracle else sigma_minus_signature)(diffeo, b)
    factors = [
        Factor("Pin+ torsor permutation", ctx.model.signature(c.real_components, pin)),
        Factor("orientations of the non-orientable circles", sigma),
    ]
    return _sign_result(ctx, factors)


SIGN_EVALUATORS = {
    "aut": _sign_aut,
    "separating": _sign_separating,
    "spin": _sign_spin,
    "bigres": _sign_bigres,
    "pin_minus": _sign_pin_minus,
}


def cmd_sign(ctx: Context, doc: Mapping) -> dict:
    name = doc.get("evaluator", "aut")
    if name not in SIGN_EVALUATORS:
        raise SchemaError(f"unknown evaluator {name!r}; expected one of {', '.join(SIGN_EVALUATORS)}")
    return SIGN_EVALUATORS[name](ctx, doc)


# -- teich / moduli ----------------------------------------------------------


def cmd_teich(ctx: Context, doc: Mapping) -> dict:
    _keys(doc, {"curve", "diffeo"})
    c, d = schema.curve_from_json(doc["curve"]), schema.diffeo_from_json(doc["diffeo"])
    sign = teich_orientation_sign(d, c)
    ctx.warnings += diffeo_warnings(c, d)
    return _sign_result(ctx, [Factor("det H^1(Sigma,R)_-1", sign)])


def _moduli_and_loop(doc: Mapping):
    m = schema.moduli_from_json(doc["moduli"])
    loop = schema.loop_from_json(doc["loop"]) if "loop" in doc else LoopMonodromy()
    return m, loop


PAIRINGS = ("separating", "spin", "polarized", "orientability")


def cmd_moduli_w1(ctx: Context, doc: Mapping) -> dict:
    _keys(doc, {"moduli", "pairing"}, {"loop", "polarisation"})
    pairing = doc["pairing"]
    if pairing not in PAIRINGS:
        raise SchemaError(f"unknown pairing {pairing!r}; expected one of {', '.join(PAIRINGS)}")
    m, loop = _moduli_and_loop(doc)
    if pairing == "orientability":
        return {"orientability": orientable_predicate(m).value}
    if pairing == "separating":
        return _bit_result(ctx, separating_w1_factors(m, loop))
    if pairing == "spin":
        return _bit_result(ctx, spin_w1_factors(m, loop))
    if "polarisation" not in doc:
        raise SchemaError("the polarized pairing needs a polarisation")
    return _bit_result(ctx, polarized_factors(m, loop, schema.polarisation_from_json(doc["polarisation"])))


def cmd_hypersurface(ctx: Context, doc: Mapping, big_n: int, delta: int) -> dict:
    _keys(doc, {"moduli"}, {"loop", "real_locus_nonempty"})
    m, loop = _moduli_and_loop(doc)
    nonempty = schema._bool(doc.get("real_locus_nonempty", True), "real_locus_nonempty")
    return _bit_result(ctx, hypersurface_factors(big_n, delta, m, loop, nonempty))


# -- counting and divisors ---------------------------------------------------


def _curve_for_counting(genus: int, k: int, separating: bool | None) -> RealCurve:
    """The curve type to count on; counts do not depend on separation."""
    if separating is not None:
        return RealCurve(genus, k, separating)
    for sep in (False, True):
        c = RealCurve(genus, k, sep)
        try:
            validate_curve(c)
            return c
        except InvalidTopology:
            continue
    return RealCurve(genus, k, False)  # re-validated below to raise the right error


def cmd_spin_count(ctx: Context, genus: int, k: int, separating: bool | None) -> dict:
    c = _curve_for_counting(genus, k, separating)
    if ctx.oracle:
        count = len(spin_w_classes(c)) * spin_count_per_class(c)
    else:
        count = spin_count(c)
    out: dict[str, Any] = {"count": count}
    if ctx.explain:
        classes, per_class = spin_w_class_count(c), spin_count_per_class(c)
        assert classes * per_class == count
        out["explain"] = [
            {"factor": "Stiefel-Whitney classes w with sum g+1 mod 2", "count": classes},
            {"factor": "real Spin structures per class", "count": per_class},
        ]
    return out


def cmd_adapted(ctx: Context, doc: Mapping) -> dict:
    _keys(doc, {"curve", "bundle", "shape"}, {"config"})
    c, b = schema.curve_from_json(doc["curve"]), schema.bundle_from_json(doc["bundle"])
    shape = schema.shape_from_json(doc["shape"])
    if "config" in doc:
        validate_config(schema.config_from_json(doc["config"]), shape, c, b)
    adapted = (is_adapted_bruteforce if ctx.oracle else is_adapted)(shape, c, b)
    out: dict[str, Any] = {"adapted": adapted}
    if ctx.explain:
        witness = witness_config(shape, c, b)
        out["witness"] = None if witness is None else schema.config_to_json(witness)
    return out


# -- entry point -------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, suppress: bool) -> None:
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    p.add_argument("--explain", action="store_true", help="append the factor table", **kw)
    p.add_argument("--oracle", action="store_true", help="force the brute-force code paths", **kw)
    p.add_argument(
        "--torsor",
        choices=TORSOR_MODELS,
        help="reading of the Pin torsor (default: product)",
        **({"default": argparse.SUPPRESS} if suppress else {"default": "product"}),
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orientsign", description="Orientation signs for real Cauchy-Riemann operators")
    ap.add_argument("--version", action="version", version=f"orientsign {__version__}")
    _add_common(ap, suppress=False)
    sub = ap.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str, with_file: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        _add_common(p, suppress=True)
        if with_file:
            p.add_argument("file", help="JSON scenario file, or - for standard input")
        return p

    command("validate", "check a scenario file")
    command("sign", "sign of an automorphism on the orientations of Det")
    command("teich", "action of a diffeomorphism on Teichmueller orientations")
    command("moduli-w1", "first Stiefel-Whitney pairing of a loop in a moduli space")
    p = command("spin-count", "number of real Spin structures", with_file=False)
    p.add_argument("-g", "--genus", type=int, required=True)
    p.add_argument("-k", "--real-components", type=int, required=True)
    p.add_argument("--separating", action=argparse.BooleanOptionalAction, default=None)
    command("adapted", "whether a divisor shape is adapted to a bundle")
    p = command("hypersurface", "w1 pairing for real hypersurfaces of CP^N")
    p.add_argument("-N", dest="big_n", type=int, required=True)
    p.add_argument("-d", "--delta", type=int, required=True)
    return ap


def _dispatch(args: argparse.Namespace, ctx: Context) -> dict:
    if args.command == "spin-count":
        return cmd_spin_count(ctx, args.genus, args.real_components, args.separating)
    doc = _read(args.file)
    if args.command == "validate":
        return cmd_validate(ctx, doc)
    if args.command == "sign":
        return cmd_sign(ctx, doc)
    if args.command == "teich":
        return cmd_teich(ctx, doc)
    if args.command == "moduli-w1":
        return cmd_moduli_w1(ctx, doc)
    if args.command == "adapted":
        return cmd_adapted(ctx, doc)
    return cmd_hypersurface(ctx, doc, args.big_n, args.delta)


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    ctx = Context(args)
    try:
        result = _dispatch(args, ctx)
        code = 0
    except OrientSignError as exc:
        result = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        code = exc.exit_code
    for w in ctx.warnings:
        print(f"warning: {w}", file=stderr)
    stdout.write(schema.dumps(result))
    return code


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))
