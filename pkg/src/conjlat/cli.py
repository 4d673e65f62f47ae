"""Command-line entry point.

Exit codes: 0 success, 1 failed verification or unknown predicate/suite,
2 invalid structure or unmet hypothesis, 3 unreadable document, 4 size guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Optional

from . import corpus, io
from .core import JoinSemilattice
from .distributivity import is_distributive, max_not_prime_witness
from .dlat import dlat_r1_isomorphism, free_dlat, overline_w, wl_lattice
from .errors import (
    LatticeError,
    ParseError,
    PreconditionFailed,
    SizeGuard,
    UnknownPredicate,
    UnknownSuite,
    ValidationError,
)
from .ideals import ideals_of, maximal_ideals, prime_ideals
from .pierce import conjunctivity_profile, is_ideally_conjunctive, r1, supercomplement_table
from .search import PREDICATES, get_predicate, run_conjectures, write_report
from .spectrum import spec_max
from .suites import fixed_checks, run_suite

SCHEMA = "conjlat.analysis/1"

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_PARSE, EXIT_GUARD = 0, 1, 2, 3, 4


def load_structure(source: str) -> JoinSemilattice:
    """A file path, or ``builtin:NAME`` for one of the shipped structures."""
    if source.startswith("builtin:"):
        return corpus.builtin(source[len("builtin:"):])
    return io.load(source)


def _names(L: JoinSemilattice, mask: int) -> list:
    return L.render(mask)


@dataclass
class AnalysisReport:
    structure: dict
    verdicts: dict
    distributivity_witness: Optional[list]
    ideals: list
    prime_ideals: list
    maximal_ideals: list
    max_not_prime: Optional[list]
    supercomplements: list
    r1: str
    spectrum: Optional[dict]
    dlat: Optional[dict] = None

    def to_dict(self) -> dict:
        return {"schema": SCHEMA, **asdict(self)}

    @classmethod
    def from_dict(cls, doc: dict) -> "AnalysisReport":
        if doc.get("schema") != SCHEMA:
            raise ParseError(f"expected schema {SCHEMA!r}", "$.schema")
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in doc.items() if k in known})


def spectrum_summary(L: JoinSemilattice) -> Optional[dict]:
    if L.n < 2:
        return None
    S = spec_max(L)
    return {
        "points": S.point_names(),
        "coz": {L.names[a]: [k for k in range(S.n_points) if S.coz[a] >> k & 1] for a in L.elements},
        "open_sets": len(S.topology),
        "t1": S.topology.is_t1,
        "discrete": S.topology.is_discrete,
        "coz_injective": S.injective,
    }


def dlat_summary(L: JoinSemilattice) -> dict:
    conj = conjunctivity_profile(L).overall
    out = {"dl_size": len(free_dlat(L))}
    if conj:
        wb = overline_w(L)
        iso = dlat_r1_isomorphism(L)
        out.update(
            wl_size=len(wb.wl),
            w_surjective=wb.surjective,
            w_injective=wb.injective,
            r1_quotient_size=iso.quotient_size,
            r1_isomorphism=iso.verdict,
        )
    return out


def analyze(L: JoinSemilattice, with_dlat: bool = False) -> AnalysisReport:
    dist = is_distributive(L)
    witness = max_not_prime_witness(L)
    return AnalysisReport(
        structure={
            "size": L.n,
            "names": list(L.names),
            "top": L.names[L.top],
            "bottom": None if L.bottom is None else L.names[L.bottom],
            "lattice": L.is_lattice,
        },
        verdicts={
            "conjunctive": conjunctivity_profile(L).overall,
            "ideally_conjunctive": is_ideally_conjunctive(L).overall,
            "distributive": dist.distributive,
        },
        distributivity_witness=None if dist.witness is None else [L.names[x] for x in dist.witness],
        ideals=[_names(L, I) for I in ideals_of(L)],
        prime_ideals=[_names(L, I) for I in prime_ideals(L)],
        maximal_ideals=[_names(L, I) for I in maximal_ideals(L)],
        max_not_prime=None if witness is None else _names(L, witness),
        supercomplements=[[L.names[a], _names(L, s)] for a, s in supercomplement_table(L)],
        r1=r1(L).render(),
        spectrum=spectrum_summary(L),
        dlat=dlat_summary(L) if with_dlat else None,
    )


def _set(names) -> str:
    return "{" + ",".join(names) + "}"


def _yes(flag) -> str:
    return "yes" if flag else "no"


def render_analysis(r: AnalysisReport) -> str:
    s = r.structure
    lines = [
        f"elements: {s['size']}  top: {s['top']}  bottom: {s['bottom'] or '-'}  lattice: {_yes(s['lattice'])}",
        f"conjunctive: {_yes(r.verdicts['conjunctive'])}",
        f"ideally conjunctive: {_yes(r.verdicts['ideally_conjunctive'])}",
        f"distributive: {_yes(r.verdicts['distributive'])}"
        + (f"  (fails at {', '.join(r.distributivity_witness)})" if r.distributivity_witness else ""),
        f"ideals ({len(r.ideals)}): " + " ".join(_set(i) for i in r.ideals),
        f"maximal ideals ({len(r.maximal_ideals)}): " + " ".join(_set(i) for i in r.maximal_ideals),
        f"prime ideals ({len(r.prime_ideals)}): " + " ".join(_set(i) for i in r.prime_ideals),
        "maximal ideal that is not prime: "
        + ("none" if r.max_not_prime is None else _set(r.max_not_prime)),
        f"R1: {r.r1}",
        "supercomplements:",
    ]
    lines += [f"  (1:{a}) = {_set(v)}" for a, v in r.supercomplements]
    if r.spectrum:
        sp = r.spectrum
        lines.append(
            f"Spec_Max: {len(sp['points'])} points, {sp['open_sets']} open sets, "
            f"T1: {_yes(sp['t1'])}, discrete: {_yes(sp['discrete'])}"
        )
    if r.dlat:
        lines.append("dL: " + ", ".join(f"{k}={v}" for k, v in r.dlat.items()))
    return "\n".join(lines)


def _emit(args, doc: dict, text: str):
    if args.json:
        print(json.dumps(doc, ensure_ascii=False, indent=2))
    else:
        print(text)


def cmd_analyze(args) -> int:
    r = analyze(load_structure(args.path), with_dlat=args.dlat)
    _emit(args, r.to_dict(), render_analysis(r))
    return EXIT_OK


def cmd_pierce(args) -> int:
    L = load_structure(args.path)
    rows = supercomplement_table(L)
    prof = conjunctivity_profile(L)
    doc = {
        "schema": "conjlat.pierce/1",
        "supercomplements": [[L.names[a], L.render(s)] for a, s in rows],
        "r1": r1(L).render(),
        "conjunctive": prof.overall,
        "formulations": list(prof.verdicts),
    }
    width = max(len(L.names[a]) for a, _ in rows)
    text = "\n".join(f"(1:{L.names[a]}){' ' * (width - len(L.names[a]))} = {L.render_set(s)}" for a, s in rows)
    text += f"\nR1: {doc['r1']}\nconjunctive: {_yes(prof.overall)}"
    _emit(args, doc, text)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    L = load_structure(args.path)
    S = spec_max(L)
    names = S.point_names()
    doc = {
        "schema": "conjlat.spectrum/1",
        "points": names,
        "coz": {L.names[a]: [k for k in range(S.n_points) if S.coz[a] >> k & 1] for a in L.elements},
        "opens": [[k for k in range(S.n_points) if O >> k & 1] for O in S.topology.sorted_opens()],
        "t1": S.topology.is_t1,
        "discrete": S.topology.is_discrete,
        "coz_injective": S.injective,
    }
    lines = [f"points ({len(names)}):"] + [f"  m{k} = {n}" for k, n in enumerate(names)]
    lines.append("coz:")
    for a in L.elements:
        lines.append(f"  coz {L.names[a]} = {{{','.join(f'm{k}' for k in doc['coz'][L.names[a]])}}}")
    lines.append(
        f"open sets: {len(S.topology)}  T1: {_yes(S.topology.is_t1)}  "
        f"discrete: {_yes(S.topology.is_discrete)}  coz injective: {_yes(S.injective)}"
    )
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_dlat(args) -> int:
    L = load_structure(args.path)
    doc = {"schema": "conjlat.dlat/1", **dlat_summary(L)}
    if args.hasse:
        dl = free_dlat(L)
        doc["dl_hasse"] = [[dl.semilattice.names[p], dl.semilattice.names[q]] for p, q in dl.hasse_edges()]
        if conjunctivity_profile(L).overall:
            wl = wl_lattice(L)
            doc["wl_hasse"] = [[wl.semilattice.names[p], wl.semilattice.names[q]] for p, q in wl.hasse_edges()]
    lines = [f"{k}: {v}" for k, v in doc.items() if k != "schema" and not k.endswith("hasse")]
    for key in ("dl_hasse", "wl_hasse"):
        if key in doc:
            lines.append(f"{key.split('_')[0]} Hasse edges:")
            lines += [f"  {p} -> {q}" for p, q in doc[key]]
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_verify(args) -> int:
    targets = list(args.targets)
    if args.builtin:
        suite = targets[0] if targets else "all"
        if len(targets) > 1:
            raise UnknownSuite("with --builtin give only the suite name")
        structures = [(name, corpus.builtin(name)) for name in corpus.DEFAULT_CORPUS]
    else:
        if not targets:
            raise ParseError("verify needs a structure path or --builtin")
        suite = targets[1] if len(targets) > 1 else "all"
        structures = [(Path(targets[0]).stem, load_structure(targets[0]))]
    rows = []
    for label, L in structures:
        rows.extend(run_suite(L, suite, label))
    if args.builtin and suite in ("all", "dlat"):
        rows.extend(fixed_checks())
    failed = sum(not r.passed for r in rows)
    doc = {
        "schema": "conjlat.verify/1",
        "suite": suite,
        "rows": [r.to_dict() for r in rows],
        "passed": len(rows) - failed,
        "failed": failed,
    }
    text = "\n".join(r.line() for r in rows) + f"\n{len(rows) - failed} passed, {failed} failed"
    _emit(args, doc, text)
    return EXIT_OK if failed == 0 else EXIT_FAIL


def cmd_search(args) -> int:
    pred = get_predicate(args.predicate)
    sizes = range(args.min_size, args.max_size + 1)
    report = run_conjectures([pred.id], sizes, seed=args.seed, random_samples=args.samples)[pred.id]
    if args.out:
        write_report(report, args.out)
    doc = report.to_dict()
    lines = [f"{pred.id}: {pred.description} ({pred.mode} search)"]
    if pred.note:
        lines.append(f"note: {pred.note}")
    for n, c in sorted(report.census.items()):
        lines.append(
            f"  n={n} [{report.sources[n]}] tested={c['tested']} "
            f"satisfied={c['satisfied']} violated={c['violated']}"
        )
    if report.tally:
        lines.append("  tally: " + ", ".join(f"{k}={v}" for k, v in report.tally.items()))
    lines.append(f"witnesses: {len(report.witnesses)}" + (f" written to {args.out}" if args.out else ""))
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    p = argparse.ArgumentParser(prog="conjlat", description="Finite join-semilattice analysis")
    p.add_argument("--json", action="store_true", default=False, help="machine-readable output")
    sub = p.add_subparsers(dest="verb", required=True)

    a = sub.add_parser("analyze", parents=[common], help="full report on one structure")
    a.add_argument("path", help="structure document, or builtin:NAME")
    a.add_argument("--dlat", action="store_true", help="include dL / wL sizes")
    a.set_defaults(func=cmd_analyze)

    for verb, func, helptext in (
        ("pierce", cmd_pierce, "supercomplement table and R1"),
        ("spectrum", cmd_spectrum, "maximal-ideal spectrum"),
        ("dlat", cmd_dlat, "free distributive lattice and wL"),
    ):
        s = sub.add_parser(verb, parents=[common], help=helptext)
        s.add_argument("path", help="structure document, or builtin:NAME")
        if verb == "dlat":
            s.add_argument("--hasse", action="store_true", help="emit Hasse edge lists")
        s.set_defaults(func=func)

    v = sub.add_parser("verify", parents=[common], help="run theorem suites")
    v.add_argument("targets", nargs="*", help="[PATH] [SUITE]; SUITE is pierce, spectrum, distributivity, dlat or all")
    v.add_argument("--builtin", action="store_true", help="run on the shipped corpus")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", parents=[common], help="conjecture census over small structures")
    s.add_argument("--predicate", required=True, help=f"one of: {', '.join(PREDICATES)}")
    s.add_argument("--max-size", type=int, default=6)
    s.add_argument("--min-size", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--samples", type=int, default=50, help="random structures per size above the exhaustive guard")
    s.add_argument("--out", help="directory for report.json and witness files")
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValidationError, PreconditionFailed) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SizeGuard as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (UnknownPredicate, UnknownSuite) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except LatticeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
