"""Command-line entry point: run check suites and emit deterministic reports.

Exit codes: 0 all checks pass, 1 some check fails, 2 bad configuration,
3 some check is undecided within the isomorphism-search budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any, Callable

from recolle import catalog
from recolle.functorics import derived_left, derived_right
from recolle.recollement.axioms import verify_axioms
from recolle.recollement.bundle import Recollement
from recolle.recollement.comparison import (comparison_check, mv_bound_for, prehereditary_check,
                                            r_star_checks, semidirect_suite)
from recolle.recollement.extensions import (ext1_restriction_mono_check, ext_oracle_check,
                                            ext_pushforward_suite)
from recolle.recollement.linext import fiber_suite
from recolle.recollement.mt import mt_round_trip_suite
from recolle.recollement.mv import from_retraction, zero_adjunction
from recolle.recollement.sequences import check_sequences, check_snake
from recolle.recollement.vanishing import essential_image_suite, vanishing_suite
from recolle.repcat.category import iso_budget
from recolle.report import Check, Report, single

DEFAULT_SEED = 0xF2F2
CONFIG_ERROR = 2
EXAMPLES = ("quad-free", "quad-vect", "semidirect", "product")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    example: str = "quad-free"
    max_dim: tuple[int, ...] | None = None
    max_dim_aa: int | None = None
    seed: int = DEFAULT_SEED
    json_path: str | None = None
    fmt: str = "text"
    extended: bool = False
    functor: str = "i^*"
    obj: str | None = None
    degree: int = 1
    total: int | None = None

    def __post_init__(self) -> None:
        if self.max_dim is not None and (len(self.max_dim) != 2 or min(self.max_dim) < 0):
            raise ConfigError("--max-dim takes two non-negative integers")
        if self.max_dim_aa is not None and self.max_dim_aa < 0:
            raise ConfigError("--max-dim-aa must be non-negative")
        if self.degree < 0:
            raise ConfigError("--degree must be non-negative")
        if self.total is not None and self.total < 0:
            raise ConfigError("--total must be non-negative")
        if not 0 <= self.seed < 1 << 64:
            raise ConfigError("--seed must fit in 64 bits")


def bundle(name: str) -> Recollement:
    if name == "semidirect":
        return catalog.build_semidirect()
    if name == "product":
        return catalog.build_product()
    try:
        return catalog.example(name)
    except KeyError:
        raise ConfigError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}") from None


def _bounds(cfg: RunConfig, rec: Recollement) -> tuple[tuple[int, ...], tuple[int, ...]]:
    bound_a = tuple(cfg.max_dim) if cfg.max_dim is not None else rec.bound_a
    bound_a2 = (cfg.max_dim_aa,) * len(rec.a2.slots) if cfg.max_dim_aa is not None else rec.bound_a2
    return bound_a, bound_a2


def _budget(cfg: RunConfig, rec: Recollement | None = None) -> dict:
    out: dict[str, Any] = {"iso_search": iso_budget()}
    if rec is not None:
        bound_a, bound_a2 = _bounds(cfg, rec)
        out.update(example=cfg.example, max_dim=list(bound_a), max_dim_aa=list(bound_a2))
    return out


# ---- commands

def cmd_verify(cfg: RunConfig) -> Report:
    """Axioms, exact sequences and vanishing identities; ``--extended`` adds the rest."""
    rec = bundle(cfg.example)
    bound_a, bound_a2 = _bounds(cfg, rec)
    report = Report(f"verify {cfg.example}", seed=cfg.seed, budget=_budget(cfg, rec))
    report.extend(verify_axioms(rec, bound_a, bound_a2, seed=cfg.seed))
    report.extend(check_sequences(rec, bound_a, bound_a2))
    report.extend(check_snake(rec, bound_a2))
    report.extend(vanishing_suite(rec, bound_a2))
    if cfg.extended:
        report.extend(essential_image_suite(rec, bound_a))
        report.extend(mt_round_trip_suite(rec, bound_a, bound_a2))
        report.extend(fiber_suite(rec, bound_a))
        report.extend(ext_pushforward_suite(rec, bound_a))
        report.extend([ext1_restriction_mono_check(rec, bound_a)])
        report.extend(semidirect_suite(rec, bound_a, bound_a2))
    return report


def cmd_counterexample(cfg: RunConfig) -> Report:
    """The inclusion of the ``PH = 0`` diagrams as a comparison functor."""
    rec1, rec2 = catalog.build_rec_2_2(), catalog.build_rec_2_1()
    bound_a = tuple(cfg.max_dim) if cfg.max_dim is not None else (2, 2)
    report = Report("counterexample", seed=cfg.seed,
                    budget={"iso_search": iso_budget(), "max_dim": list(bound_a)})
    obj, cert = catalog.counterexample_witness()
    w = [catalog.QUAD_FREE.to_json(obj)]
    report.extend([
        single("counterexample witness satisfies the quad_free relations", cert["relations_hold"], witness=w),
        single("counterexample witness has PH nonzero", cert["PH_nonzero"], dims={"PH": cert["PH"]}),
        single("counterexample witness has no isomorph among quad_vect objects",
               not cert["isomorph_found"] and not cert["valid_in_quad_vect"],
               detail=f"{cert['candidates_scanned']} candidates scanned"),
    ])
    res = comparison_check(catalog.inclusion_functor(), rec1, rec2, bound_a)
    report.extend([
        single("counterexample inclusion commutes with the structural functors",
               res.commutes_with_structure is True, dims=res.to_json()),
        single("counterexample inclusion is not an equivalence at the budget",
               res.equivalence_at_budget is False, witness=res.witness),
    ])
    gap = _gap_check(bound_a)
    report.extend([gap])
    report.notes += [f"witness {obj!r}", f"PH = {cert['PH']}"] + _gap_lines(gap.dims)
    return report


def _gap_lines(table: dict[str, list[int]]) -> list[str]:
    lines = ["dims  quad_free  quad_vect"]
    lines += [f"{d:<5} {free:>9}  {vect:>9}" for d, (free, vect) in table.items()]
    return lines


def _gap_table(bound) -> dict[str, list[int]]:
    free = catalog.classify_iso_classes(catalog.QUAD_FREE, bound)
    vect = catalog.classify_iso_classes(catalog.QUAD_VECT, bound)
    return {",".join(map(str, d)): [free[d], vect.get(d, 0)] for d in sorted(free)}


def _gap_check(bound) -> Check:
    table = _gap_table(bound)
    if "2,1" not in table:
        return single("classify iso class counts quad_free against quad_vect", True,
                      detail="bound excludes dims (2,1)", dims=table)
    free, vect = table["2,1"]
    return single("classify quad_free has more iso classes than quad_vect at dims (2,1)",
                  free > vect, detail=f"{free} against {vect}", dims=table)


def cmd_classify(cfg: RunConfig) -> Report:
    bound = tuple(cfg.max_dim) if cfg.max_dim is not None else (2, 2)
    report = Report("classify", seed=cfg.seed, budget={"iso_search": iso_budget(), "max_dim": list(bound)})
    gap = _gap_check(bound)
    report.extend([gap])
    report.notes += _gap_lines(gap.dims)
    return report


def _glued_form(rec: Recollement):
    """``A(rN)`` of a bundle and the comparison ``E`` into it."""
    if rec is catalog.build_semidirect():
        return from_retraction(rec, zero_adjunction, catalog.coinvariants_adjunction)
    if rec is catalog.build_product():
        return from_retraction(rec, zero_adjunction, catalog.zero_right_adjunction)
    return catalog.build_mv_of(rec)


def cmd_mv(cfg: RunConfig) -> Report:
    """Glue along the retraction, verify the result, and test the characterization."""
    rec = bundle(cfg.example)
    bound_a, bound_a2 = _bounds(cfg, rec)
    mv, e = _glued_form(rec)
    mv_bound = mv_bound_for(rec, cfg.max_dim) if cfg.max_dim is not None else mv.bound_a
    report = Report(f"mv {cfg.example}", seed=cfg.seed, budget={**_budget(cfg, rec), "mv_max_dim": list(mv_bound)})
    report.extend(verify_axioms(mv, mv_bound, bound_a2, seed=cfg.seed))
    report.extend(r_star_checks(mv, bound_a=mv_bound))
    ph_rec, ph_mv = prehereditary_check(rec, bound_a2=bound_a2), prehereditary_check(mv, bound_a2=bound_a2)
    report.extend(ph_rec.checks + ph_mv.checks)
    report.extend([single("mv glued category is pre-hereditary", ph_mv.verdict, dims=ph_mv.l2_dims)])
    e_bound = mv_bound_for(rec, bound_a)
    res = comparison_check(e, rec, mv, bound_a, e_bound, bound_a2, prefix="mv comparison E")
    report.extend([single("mv comparison E commutes with the structural functors",
                          res.commutes_with_structure is True)])
    decided = res.equivalence_at_budget is not None
    verdict = str(res.equivalence_at_budget).lower() if decided else "undecided"
    report.extend([single("mv E is an equivalence iff the recollement is pre-hereditary",
                          decided and res.equivalence_at_budget == ph_rec.verdict,
                          detail=f"equivalence={verdict} prehereditary={str(ph_rec.verdict).lower()}",
                          witness=res.witness, dims=res.to_json())])
    return report


_DERIVED: dict[str, tuple[str, Callable[[Recollement], Any], str]] = {
    # name: (side, functor getter, source category attribute)
    "i^*": ("left", lambda r: r.i_up_star, "a"),
    "j_!": ("left", lambda r: r.j_low_shriek, "a2"),
    "i^!": ("right", lambda r: r.i_up_shriek, "a"),
    "j_*": ("right", lambda r: r.j_low_star, "a2"),
}


def cmd_derived(cfg: RunConfig) -> Report:
    """Dimensions per vertex of ``L_n F`` or ``R^n F`` at one object (default ``i_*F_2``)."""
    rec = bundle(cfg.example)
    if cfg.functor not in _DERIVED:
        raise ConfigError(f"unknown functor {cfg.functor!r}; choose from {', '.join(_DERIVED)}")
    side, getter, attr = _DERIVED[cfg.functor]
    functor, src = getter(rec), getattr(rec, attr)
    if cfg.obj is None:
        if attr != "a":
            raise ConfigError("--object is required for functors out of A''")
        obj = rec.i_low_star(catalog.space(1))
    else:
        obj = _parse_object(src, cfg.obj)
    value = (derived_left if side == "left" else derived_right)(functor, obj, cfg.degree)
    tgt = functor.target
    name = f"L{cfg.degree}{cfg.functor}" if side == "left" else f"R{cfg.degree}{cfg.functor}"
    report = Report(f"derived {cfg.example}", seed=cfg.seed, budget={"iso_search": iso_budget()})
    report.extend([single(f"derived {name}", True, detail=f"total dim {tgt.total_dim(value)}",
                          dims={"object": src.to_json(obj), "value": tgt.to_json(value)})])
    return report


def _parse_object(cat, raw: str):
    text = raw
    if raw.startswith("@"):
        try:
            with open(raw[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read {raw[1:]}: {exc}") from None
    try:
        data = json.loads(text)
        obj = cat.from_json(data)
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        raise ConfigError(f"cannot parse object: {exc}") from None
    if not cat.is_object(obj):
        raise ConfigError("object violates the relations of its category")
    return obj


def cmd_ext(cfg: RunConfig) -> Report:
    """Ext^1 against the Baer-class oracle, then pushforward and restriction checks."""
    rec = bundle(cfg.example)
    bound_a, _ = _bounds(cfg, rec)
    report = Report(f"ext {cfg.example}", seed=cfg.seed, budget=_budget(cfg, rec))
    report.extend([ext_oracle_check(catalog.SIGMA2, 4)])
    if rec.a in (catalog.QUAD_FREE, catalog.QUAD_VECT):
        report.extend([ext_oracle_check(rec.a, 3 if cfg.total is None else cfg.total)])
    report.extend(ext_pushforward_suite(rec, bound_a))
    report.extend([ext1_restriction_mono_check(rec, bound_a)])
    return report


COMMANDS: dict[str, Callable[[RunConfig], Report]] = {
    "verify": cmd_verify, "counterexample": cmd_counterexample, "mv": cmd_mv,
    "derived": cmd_derived, "ext": cmd_ext, "classify": cmd_classify,
}


# ---- argument handling

def _seed(raw: str) -> int:
    return int(raw, 0)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="recolle", description="Check recollements of GF(2) representation categories.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--example", default="quad-free", help=f"one of {', '.join(EXAMPLES)}")
    p.add_argument("--max-dim", nargs=2, type=int, metavar=("A", "B"), help="dimension bound on objects of A")
    p.add_argument("--max-dim-aa", type=int, metavar="N", help="dimension bound on objects of A''")
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--json", dest="json_path", metavar="PATH", help="write the JSON report here")
    p.add_argument("--format", dest="fmt", choices=("json", "text"), default="text")
    p.add_argument("--extended", action="store_true", help="verify: also run the remaining suites")
    p.add_argument("--functor", default="i^*", help="derived: one of i^*, j_!, i^!, j_*")
    p.add_argument("--object", dest="obj", help="derived: object as JSON, or @path")
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--total", type=int, help="ext: total dimension bound for the A oracle")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return CONFIG_ERROR if exc.code else 0
    try:
        cfg = RunConfig(**{k: (tuple(v) if k == "max_dim" and v is not None else v)
                           for k, v in vars(args).items()})
        report = COMMANDS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"recolle: {exc}", file=sys.stderr)
        return CONFIG_ERROR
    text = report.dumps()
    if cfg.json_path:
        try:
            with open(cfg.json_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"recolle: cannot write {cfg.json_path}: {exc}", file=sys.stderr)
            return CONFIG_ERROR
    sys.stdout.write(text if cfg.fmt == "json" else report.to_text())
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
