"""catdyn command line: validate and transform finite dynamical systems.

Exit codes: 0 success, 1 a law fails (the report is still printed),
2 the input could not be used.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .core import CategoryError, time_object_laws
from .derived import flat_adjoint, koopman_preflow, orbit, shift_flow, transfer_flow
from .documents import (
    InputError,
    SystemDocument,
    derived_document,
    endomap,
    flow_table,
    label,
    law_entry,
    read_document,
    system_laws,
)
from .dynamics import Flow, enriched_morphism_check, is_semiconjugacy, sharp_of_morphism, validate_flow
from .finset import FINSET, finset
from .states import (
    all_states,
    all_witnesses,
    induced_state,
    is_enriched_stationary,
    is_stationary,
    stationary_states,
)
from .subshift import subshift, theorem6_iso

DEFAULT_MAX_CARRIER = 10**6
COMMANDS = ("validate", "derive", "subshift", "orbits", "stationary", "export-dot")


class Refusal(Exception):
    """Raised for inputs that are well formed but too large to process."""


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="catdyn", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        c = sub.add_parser(name)
        c.add_argument("file")
        if name == "derive":
            c.add_argument("which", choices=("shift", "transfer", "koopman"))
            c.add_argument("--observable-codomain", type=int, default=2, metavar="N",
                           help="size of the observable codomain X for koopman (default 2)")
        c.add_argument("--max-carrier", type=int, default=None, metavar="N",
                       help="largest path-space size, counted in entries |T|*|Omega|^|T| "
                            "(default: $CATDYN_MAX_CARRIER or 10^6)")
        fmt = c.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
        fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
        c.set_defaults(fmt="json")
    return p


def _max_carrier(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get("CATDYN_MAX_CARRIER")
    if env is None:
        return DEFAULT_MAX_CARRIER
    try:
        return int(env)
    except ValueError:
        raise InputError(f"CATDYN_MAX_CARRIER must be an integer, got {env!r}") from None


def _check_cap(entries: int, cap: int, what: str) -> None:
    if entries > cap:
        raise Refusal(f"{what} has {entries} entries, above the cap of {cap}; "
                      "raise --max-carrier or CATDYN_MAX_CARRIER to proceed")


def _path_entries(doc: SystemDocument) -> int:
    n = len(doc.elements)
    return n * len(doc.states) ** n


def _all_hold(entries) -> bool:
    return all(e["holds"] is True for e in entries)


def _validated(doc: SystemDocument):
    """(flow, None) for a lawful system, else (None, failure report)."""
    laws, pf = system_laws(doc)
    entries = [law_entry(r) for r in laws]
    if pf is None or not _all_hold(entries):
        return None, {"system": doc.name, "laws": entries, "holds": False,
                      "error": "the system is not a valid flow"}
    return Flow(pf.time, pf.omega, pf.phi), None


# --------------------------------------------------------------------------
# commands


def cmd_validate(doc: SystemDocument, cap: int) -> dict:
    laws, pf = system_laws(doc)
    entries = [law_entry(r) for r in laws]
    if pf is None:
        for name in ("flow unit law", "flow composition law"):
            entries.append({"law": name, "holds": None, "counterexample": None,
                            "skipped": "monoid laws fail"})
    report = {"system": doc.name, "sizes": {"time": len(doc.elements), "omega": len(doc.states)},
              "laws": entries, "holds": _all_hold(entries)}
    if doc.morphisms and report["holds"]:
        # the hexagon materializes internal composition on [Ω,Ω]⊗[Ω,Ω]
        n = len(doc.states)
        maps = {}
        for key in sorted(doc.morphisms):
            h = endomap(doc, pf.omega, key)
            maps[key] = {"semiconjugacy": law_entry(is_semiconjugacy(h, pf, pf))}
            if n ** (2 * n) <= cap:
                hexagon = enriched_morphism_check(sharp_of_morphism(h), pf, pf)
                maps[key]["enriched_hexagon"] = law_entry(hexagon)
            else:
                maps[key]["enriched_hexagon"] = None
        report["morphisms"] = maps
    return report


def cmd_derive(doc: SystemDocument, cap: int, which: str, n_obs: int = 2) -> dict:
    f, bad = _validated(doc)
    if bad:
        return bad
    if which == "koopman":
        if n_obs < 1:
            raise InputError("--observable-codomain must be at least 1")
        _check_cap(len(doc.elements) * n_obs ** len(doc.states), cap, "the observable space")
        derived = koopman_preflow(f, finset(str(i) for i in range(n_obs)))
    else:
        _check_cap(_path_entries(doc), cap, "the path space")
        derived = shift_flow(f.time, f.omega) if which == "shift" else transfer_flow(f)
    monoid = [law_entry(r) for r in time_object_laws(f.time).parts]
    flow = [law_entry(r) for r in validate_flow(derived).parts]
    report = {"source": doc.name, "which": which, "carrier_size": FINSET.size(derived.omega),
              "system": derived_document(f"{doc.name}-{which}", doc, derived)}
    if which == "koopman":
        # only a pre-flow in general: action laws are observations, not requirements
        report.update(kind="pre-flow", laws=monoid, observed_laws=flow, holds=_all_hold(monoid))
    else:
        report.update(kind="flow", laws=monoid + flow, holds=_all_hold(monoid + flow))
    return report


def cmd_subshift(doc: SystemDocument, cap: int) -> dict:
    f, bad = _validated(doc)
    if bad:
        return bad
    _check_cap(_path_entries(doc), cap, "the path space")
    s = subshift(f)
    paths = s.inclusion.cod
    e_obj = s.equalizer.object

    def render(o, x):
        return label(paths, x) if o == e_obj else label(o, x)

    laws = [law_entry(r) for r in s.squares.parts + validate_flow(s.flow).parts]
    report = {"system": doc.name, "path_space_size": FINSET.size(paths),
              "size": FINSET.size(e_obj), "members": [label(paths, p) for p in s.members],
              "flow": flow_table(s.flow, render), "laws": laws}
    if f.time.monoid.is_commutative():
        iso, rep = theorem6_iso(f, s)
        t6 = {"applicable": True, "holds": bool(rep)}
        if iso is not None:
            t6["iso"] = {x: render(e_obj, FINSET.element_at(e_obj, j))
                         for x, j in zip(FINSET.carrier(f.omega), iso.payload)}
        laws.extend(law_entry(r) for r in rep.parts or (rep,))
    else:
        t6 = {"applicable": False, "reason": "time monoid is not commutative"}
    report["commutative_iso"] = t6
    report["holds"] = _all_hold(laws)
    return report


def cmd_orbits(doc: SystemDocument, cap: int) -> dict:
    f, bad = _validated(doc)
    if bad:
        return bad
    _check_cap(_path_entries(doc), cap, "the path space")
    paths = flat_adjoint(f).cod
    out = {}
    for x in FINSET.carrier(f.omega):
        pt = orbit(f, FINSET.point(f.omega, x))
        out[x] = label(paths, FINSET.element_at(paths, pt.payload[0]))
    return {"system": doc.name, "orbits": out, "holds": True}


def cmd_stationary(doc: SystemDocument, cap: int) -> dict:
    f, bad = _validated(doc)
    if bad:
        return bad
    n = len(doc.states)
    report = {"system": doc.name}
    if n ** n * n > cap:
        # the enriched cone needs internal composition on [Ω,Ω]⊗[1,Ω]
        report["stationary"] = [label(f.omega, s.element) for s in all_states(f.omega)
                                if is_stationary(f, s)]
        report["enriched_stationary"] = None
        report["holds"] = True
        return report
    found = [label(f.omega, s.element) for s in stationary_states(f)]
    enriched = [label(f.omega, induced_state(w).element)
                for w in all_witnesses(f.omega) if is_enriched_stationary(f, w)]
    report.update(stationary=found, enriched_stationary=enriched, holds=set(enriched) <= set(found))
    return report


def generators(doc: SystemDocument) -> list[str]:
    """Greedy generating set of the monoid, scanning elements in declared order."""
    reached = {doc.unit}
    gens: list[str] = []
    for t in doc.elements:
        if t in reached:
            continue
        gens.append(t)
        frontier = list(reached)
        while frontier:
            s = frontier.pop()
            for g in gens:
                u = doc.table[s][g]
                if u not in reached:
                    reached.add(u)
                    frontier.append(u)
    return gens


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def cmd_export_dot(doc: SystemDocument, cap: int) -> str:
    f, bad = _validated(doc)
    if bad:
        raise _LawFailure(bad)
    lines = [f"digraph {_dot_id(doc.name)} {{"]
    for k, g in enumerate(generators(doc)):
        lines.append(f"  subgraph {_dot_id(f'cluster_{k}')} {{")
        lines.append(f"    label={_dot_id('t = ' + g)};")
        for x in doc.states:
            lines.append(f"    {_dot_id(f'{g}:{x}')} [label={_dot_id(x)}];")
        for x in doc.states:
            y = doc.flow[g][x]
            lines.append(f"    {_dot_id(f'{g}:{x}')} -> {_dot_id(f'{g}:{y}')};")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


class _LawFailure(Exception):
    def __init__(self, report: dict):
        self.report = report


# --------------------------------------------------------------------------
# output


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def render_text(report: dict) -> str:
    lines = []
    for key in sorted(report):
        value = report[key]
        if key in ("laws", "observed_laws"):
            lines.append(f"{key}:")
            for e in value:
                status = {True: "PASS", False: "FAIL", None: "SKIP"}[e["holds"]]
                where = f" at {', '.join(e['counterexample'])}" if e["counterexample"] else ""
                lines.append(f"  {status} {e['law']}{where}")
        elif isinstance(value, (dict, list)):
            lines.append(f"{key}: {json.dumps(value, sort_keys=True, ensure_ascii=False)}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def run(argv: list[str] | None = None) -> tuple[int, str, str]:
    """Execute a command; returns (exit code, stdout text, stderr text)."""
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0), "", ""
    try:
        cap = _max_carrier(args.max_carrier)
        doc = read_document(args.file)
        if args.command == "export-dot":
            return 0, cmd_export_dot(doc, cap), ""
        if args.command == "derive":
            report = cmd_derive(doc, cap, args.which, args.observable_codomain)
        else:
            handler = {"validate": cmd_validate, "subshift": cmd_subshift, "orbits": cmd_orbits,
                       "stationary": cmd_stationary}[args.command]
            report = handler(doc, cap)
    except _LawFailure as e:
        report = e.report
    except (InputError, Refusal, CategoryError) as e:
        return 2, "", f"catdyn: {e}\n"
    report = {"command": args.command, **report}
    text = dumps(report) if args.fmt == "json" else render_text(report)
    return (0 if report["holds"] else 1), text, ""


def main(argv: list[str] | None = None) -> int:
    code, out, err = run(argv)
    sys.stdout.buffer.write(out.encode("utf-8"))
    sys.stdout.flush()
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
