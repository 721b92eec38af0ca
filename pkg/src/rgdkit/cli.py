"""Command-line surface.

Subcommands: validate | group | residue | chambers | appendix | roots.
Exit codes: 0 success, 1 mathematical violation, 2 usage or I/O error.
Human-readable output goes to stdout; `--report PATH` additionally writes
machine-readable VIOLATION records.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from math import inf

from . import appendix, blueprints, chambers, groupforge, parabolics
from .coxeter import Word
from .errors import RgdError
from .galleries import min_gal
from .reports import Report, Violation
from .roots import depth, phi_w, residue_at


@dataclass
class RunConfig:
    blueprint: blueprints.Blueprint
    radius: int
    cap_galleries: int
    cap_group_bits: int
    report_path: str | None

    def __post_init__(self):
        if self.radius < 0:
            raise RgdError("radius must be >= 0")
        if self.cap_galleries <= 0 or self.cap_group_bits <= 0:
            raise RgdError("caps must be positive")


def _load_blueprint(args) -> blueprints.Blueprint:
    if args.builtin and args.blueprint:
        raise RgdError("give either --builtin or --blueprint, not both")
    if args.builtin:
        return blueprints.builtin(args.builtin)
    if args.blueprint:
        return blueprints.ingest_path(args.blueprint)
    raise RgdError("a blueprint is required (--builtin NAME or --blueprint PATH)")


def _parse_word(text: str, rank: int) -> Word:
    if text in ("e", ""):
        return ()
    try:
        word = tuple(int(x) - 1 for x in text.split("."))
    except ValueError as exc:
        raise RgdError(f"bad word {text!r}; expected dot-separated generators") from exc
    if any(not 0 <= x < rank for x in word):
        raise RgdError(f"generator out of range in {text!r}")
    return word


def _emit(reports: list[Report], path: str | None) -> int:
    for rep in reports:
        print(rep.to_text())
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            for rep in reports:
                for line in rep.machine_lines():
                    fh.write(line + "\n")
    return 0 if all(r.ok for r in reports) else 1


def cmd_validate(cfg: RunConfig) -> int:
    bp = cfg.blueprint
    reports = [
        blueprints.validate_cb1(bp, cfg.radius, cfg.cap_galleries),
        blueprints.validate_cb2(bp, cfg.cap_galleries),
        blueprints.validate_weyl(bp, cfg.radius, cfg.cap_galleries),
    ]
    cb3 = Report(f"CB3({bp.name}, r={cfg.radius})")
    for w in bp.cox.ball(cfg.radius):
        if len(w) > cfg.cap_group_bits:
            cb3.note(f"skipped w={w}: exceeds group bit cap")
            continue
        _, rep = groupforge.build_Uw(bp, w, cfg.cap_galleries)
        cb3.merge(rep)
    reports.append(cb3)
    return _emit(reports, cfg.report_path)


def cmd_group(cfg: RunConfig, word_text: str) -> int:
    bp = cfg.blueprint
    w = bp.cox.normal_form(_parse_word(word_text, bp.cox.rank))
    if len(w) > cfg.cap_group_bits:
        raise RgdError(f"l(w) = {len(w)} exceeds group bit cap {cfg.cap_group_bits}")
    pres, rep = groupforge.build_Uw(bp, w, cfg.cap_galleries)
    print(f"word: {word_text}  base gallery: {pres.gallery.label()}")
    print(f"order: {pres.order}")
    print(f"consistent: {pres.consistent}")
    print(f"cross-gallery: {'PASS' if rep.ok else 'FAIL'} ({len(min_gal(bp.cox, w, cfg.cap_galleries))} galleries)")
    if pres.consistent:
        series = groupforge.lower_central_series(pres)
        dims = [len(g).bit_length() - 1 for g in series]
        print(f"nilpotency class: {len(series) - 1}")
        print(f"lower central series dims: {dims}")
    return _emit([rep], cfg.report_path)


def cmd_residue(cfg: RunConfig, s: int) -> int:
    bp = cfg.blueprint
    cox = bp.cox
    reports = []
    print(f"residues on the wall of generator {s + 1}:")
    for t in range(cox.rank):
        if t == s or cox.matrix.m(s, t) == inf:
            continue
        R = residue_at(cox, (), tuple(sorted((s, t))))
        rg = parabolics.build_residue_group(bp, R, s)
        rep = parabolics.tau_on_residue(rg)
        ust = all(parabolics.ustausV_identity_check(rg, a) for a in rg.phi_r[1:])
        if not ust:
            rep.add(Violation(axiom="ustausV", gallery=rg.gallery.label(),
                              expected="equal", found="differs"))
        print(f"  {R.label()}: |U_R| = {rg.pres.order}, "
              f"tau^2/braid/hom: {'PASS' if rep.ok else 'FAIL'}, ustausV: {'PASS' if ust else 'FAIL'}")
        reports.append(rep)
    return _emit(reports, cfg.report_path)


def cmd_chambers(cfg: RunConfig, s: int, t: int, dump_adjacency: bool = False) -> int:
    bp = cfg.blueprint
    cs = chambers.build_CJ(bp, s, t)
    reports = [cs.build_report, chambers.verify_building(cs),
               chambers.verify_action(cs, s), chambers.verify_action(cs, t),
               chambers.braid_check(cs)]
    print(f"{len(cs.chambers)} chambers (m = {cs.m})")
    print(f"building: {'PASS' if reports[1].ok else 'FAIL'}")
    print(f"actions:  {'PASS' if reports[2].ok and reports[3].ok else 'FAIL'}")
    print(f"braid:    {'PASS' if reports[4].ok else 'FAIL'}")
    if dump_adjacency:
        for gen in (s, t):
            for a_idx, cell in enumerate(cs._adjacency()[gen]):
                for b_idx in sorted(cell):
                    if a_idx < b_idx:
                        print(f"edge {gen + 1} {cs.chambers[a_idx].label()} "
                              f"{cs.chambers[b_idx].label()}")
    return _emit(reports, cfg.report_path)


def cmd_appendix(cfg: RunConfig, s: int, t: int) -> int:
    bp = cfg.blueprint
    reports = [appendix.verify_identity_chains(bp, s, t)]
    if bp.cox.rank >= 3:
        reports.append(appendix.appendix_conjugation_check(bp, s, t, cfg.radius))
    return _emit(reports, cfg.report_path)


def cmd_roots(cfg: RunConfig) -> int:
    bp = cfg.blueprint
    cox = bp.cox
    seen = {}
    for w in cox.ball(cfg.radius):
        for rt in phi_w(cox, w):
            if rt.vec not in seen:
                seen[rt.vec] = rt
    roots = sorted(seen.values(), key=lambda r: (depth(cox, r), r.describe()))
    print(f"{len(roots)} positive roots within radius {cfg.radius}")
    for rt in roots:
        print(f"  depth {depth(cox, rt)}: {rt.describe()}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="rgdkit", description=__doc__)
    parser.add_argument("--blueprint", help="blueprint file path")
    parser.add_argument("--builtin", help="built-in blueprint name, e.g. rank2:m6lr")
    parser.add_argument("--radius", type=int, default=4)
    parser.add_argument("--cap-galleries", type=int, default=10_000)
    parser.add_argument("--cap-group-bits", type=int, default=24)
    parser.add_argument("--report", dest="report_path")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate")
    p_group = sub.add_parser("group")
    p_group.add_argument("word", help="dot-separated generators, e.g. 1.2.1")
    p_res = sub.add_parser("residue")
    p_res.add_argument("-s", type=int, required=True, help="generator (1-based)")
    p_ch = sub.add_parser("chambers")
    p_ch.add_argument("-s", type=int, required=True)
    p_ch.add_argument("-t", type=int, required=True)
    p_ch.add_argument("--dump-adjacency", action="store_true")
    p_ap = sub.add_parser("appendix")
    p_ap.add_argument("-s", type=int, required=True)
    p_ap.add_argument("-t", type=int, required=True)
    sub.add_parser("roots")

    args = parser.parse_args(argv)
    try:
        bp = _load_blueprint(args)
        cfg = RunConfig(bp, args.radius, args.cap_galleries, args.cap_group_bits,
                        args.report_path)
        if args.command == "validate":
            return cmd_validate(cfg)
        if args.command == "group":
            return cmd_group(cfg, args.word)
        if args.command == "residue":
            return cmd_residue(cfg, args.s - 1)
        if args.command == "chambers":
            return cmd_chambers(cfg, args.s - 1, args.t - 1, args.dump_adjacency)
        if args.command == "appendix":
            return cmd_appendix(cfg, args.s - 1, args.t - 1)
        if args.command == "roots":
            return cmd_roots(cfg)
        raise RgdError(f"unknown command {args.command}")
    except (RgdError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
