"""Command-line interface.

Every subcommand is a thin wrapper over library calls: inputs are resolved
(bundled fixtures by bare name), the corresponding library function runs,
and the result is emitted as canonical JSON (or a table / DOT text).

Exit codes: 0 success, 1 validation or numerical failure, 2 violation of an
identity that two independent computations were expected to satisfy.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import selftest
from .characters import cached_character_table
from .classify import enumerate_records, report
from .errors import InconsistencyError, RepTowerError, ValidationError
from .groups import FiniteGroup, Subgroup, coset_system, generated_subgroup
from .imprimitivity import decompose
from .induction import build_sigma, induce, kernel
from .reps import ProjectiveRep, character, projective_kernel, trivial_rep
from .serialize import (
    canonical_dumps,
    complex_to_json,
    induced_to_json,
    load_algebra_file,
    load_group_file,
    load_rep_file,
    record_to_json,
    record_to_table,
    rep_to_json,
    resolve_input,
    subgroup_labels,
    system_to_json,
    tower_to_json,
)
from .towers import graph_to_adjacency, graph_to_dot, principal_graph, tower
from .groups import core


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; reserve 2 for identities
        _emit_error("usage", message)
        raise SystemExit(1)


def _emit_error(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": str(message)}) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="reptower", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, rep_flag=True):
        p.add_argument("--group", required=True, help="group JSON file or bundled fixture name")
        p.add_argument(
            "--subgroup",
            default="all",
            help="comma-separated element labels generating H, or 'all' for the whole group",
        )
        if rep_flag:
            p.add_argument(
                "--rep",
                default="trivial",
                help="representation JSON file (matrices keyed by element label) or 'trivial'",
            )
        p.add_argument("--nmax", type=int, default=6, help="tower depth cap")
        p.add_argument("--format", choices=("json", "table", "dot"), default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--out", help="write the artifact to this path instead of stdout")

    for name, helptext in (
        ("check", "verify the trivial-projective-kernel condition for (G, H, psi)"),
        ("induce", "induce psi from H up to G"),
        ("sigma", "build the canonical generator ind(conj(psi) (x) psi)"),
        ("tower", "intertwiner dimension towers of the canonical generator"),
        ("graph", "principal graph of the canonical generator"),
        ("report", "full classification record for (G, H, psi)"),
    ):
        add_common(sub.add_parser(name, help=helptext))

    enum = sub.add_parser("enumerate", help="records for all (H, degree-1 psi) candidates")
    enum.add_argument("--group", required=True)
    enum.add_argument("--rep", help="optional extra representation file for --subgroup")
    enum.add_argument("--subgroup", default="all", help="subgroup for the extra representation")
    enum.add_argument("--all-subgroups", action="store_true", help="do not reduce H up to conjugacy")
    enum.add_argument("--nmax", type=int, default=6)
    enum.add_argument("--format", choices=("json", "table"), default="json")
    enum.add_argument("--seed", type=int, default=0)
    enum.add_argument("--tol", type=float, default=1e-9)
    enum.add_argument("--out")

    dec = sub.add_parser("decompose", help="imprimitivity decomposition of (sigma, B)")
    dec.add_argument("--group", required=True)
    dec.add_argument("--rep", required=True, help="ordinary representation of G (sigma)")
    dec.add_argument("--algebra", required=True, help="JSON file with a spanning set of matrices")
    dec.add_argument("--format", choices=("json",), default="json")
    dec.add_argument("--seed", type=int, default=0)
    dec.add_argument("--tol", type=float, default=1e-6)
    dec.add_argument("--out")

    st = sub.add_parser("selftest", help="run the embedded verification corpus")
    st.add_argument("--seed", type=int, default=0)
    return parser


def _load_group(args) -> FiniteGroup:
    return load_group_file(resolve_input(args.group))


def _parse_subgroup(G: FiniteGroup, spec: str) -> Subgroup:
    if spec.strip().lower() == "all":
        return Subgroup(G, tuple(range(G.order)))
    names = [s.strip() for s in spec.split(",") if s.strip()]
    if not names:
        raise ValidationError("empty subgroup specification")
    gens = [G.index_of_label(name) for name in names]
    H = generated_subgroup(G, gens)
    return H


def _load_psi(args, H: Subgroup) -> ProjectiveRep:
    if args.rep is None or args.rep.strip().lower() == "trivial":
        return trivial_rep(H)
    return load_rep_file(resolve_input(args.rep), H)


def _validate_run_config(args) -> None:
    if getattr(args, "nmax", 1) < 1:
        raise ValidationError("--nmax must be positive")
    tol = getattr(args, "tol", 1e-9)
    if not 0 < tol <= 1e-3:
        raise ValidationError("--tol must lie in (0, 1e-3]")
    if getattr(args, "seed", 0) < 0:
        raise ValidationError("--seed must be nonnegative")


def _write(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_check(args) -> str:
    G = _load_group(args)
    H = _parse_subgroup(G, args.subgroup)
    psi = _load_psi(args, H)
    ker = projective_kernel(psi, restrict_to=core(G, H), tol=args.tol)
    payload = {
        "schema": 1,
        "subgroup": subgroup_labels(H),
        "normal_core": subgroup_labels(core(G, H)),
        "projective_kernel_on_core": subgroup_labels(ker),
        "condition_holds": ker.elements == (G.identity,),
    }
    return canonical_dumps(payload)


def _cmd_induce(args) -> str:
    G = _load_group(args)
    H = _parse_subgroup(G, args.subgroup)
    psi = _load_psi(args, H)
    ind = induce(psi, coset_system(G, H))
    payload = induced_to_json(ind)
    payload["character"] = [complex_to_json(v) for v in character(ind.total).values]
    return canonical_dumps(payload)


def _cmd_sigma(args) -> str:
    G = _load_group(args)
    H = _parse_subgroup(G, args.subgroup)
    psi = _load_psi(args, H)
    sig = build_sigma(H, psi)
    payload = induced_to_json(sig)
    payload["character"] = [complex_to_json(v) for v in character(sig.total).values]
    payload["kernel"] = subgroup_labels(kernel(sig.total))
    return canonical_dumps(payload)


def _cmd_tower(args) -> str:
    G = _load_group(args)
    H = _parse_subgroup(G, args.subgroup)
    psi = _load_psi(args, H)
    sig = build_sigma(H, psi)
    tw = tower(sig.total, n_max=args.nmax, seed=args.seed)
    return canonical_dumps(tower_to_json(tw))


def _cmd_graph(args) -> str:
    G = _load_group(args)
    H = _parse_subgroup(G, args.subgroup)
    psi = _load_psi(args, H)
    sig = build_sigma(H, psi)
    graph = principal_graph(sig.total, seed=args.seed)
    if args.format == "dot":
        return graph_to_dot(graph, cached_character_table(G, seed=args.seed))
    return canonical_dumps(graph_to_adjacency(graph))


def _cmd_report(args) -> str:
    G = _load_group(args)
    H = _parse_subgroup(G, args.subgroup)
    psi = _load_psi(args, H)
    label = "trivial" if args.rep.strip().lower() == "trivial" else args.rep
    rec = report(G, H, psi, psi_label=label, n_max=args.nmax, seed=args.seed)
    if args.format == "table":
        return record_to_table(rec)
    return canonical_dumps(record_to_json(rec))


def _cmd_enumerate(args) -> str:
    G = _load_group(args)
    extra = None
    if args.rep:
        H = _parse_subgroup(G, args.subgroup)
        psi = load_rep_file(resolve_input(args.rep), H)
        extra = [(H, psi, str(args.rep))]
    records = enumerate_records(
        G,
        n_max=args.nmax,
        seed=args.seed,
        extra_reps=extra,
        up_to_conjugacy=not args.all_subgroups,
    )
    if args.format == "table":
        return "".join(
            f"--- record {i}: {rec.label}\n{record_to_table(rec)}"
            for i, rec in enumerate(records)
        )
    return canonical_dumps([record_to_json(rec) for rec in records])


def _cmd_decompose(args) -> str:
    G = _load_group(args)
    sigma = load_rep_file(resolve_input(args.rep), G)
    algebra = load_algebra_file(resolve_input(args.algebra))
    system = decompose(sigma, algebra, seed=args.seed, tol=args.tol)
    return canonical_dumps(system_to_json(system))


COMMANDS = {
    "check": _cmd_check,
    "induce": _cmd_induce,
    "sigma": _cmd_sigma,
    "tower": _cmd_tower,
    "graph": _cmd_graph,
    "report": _cmd_report,
    "enumerate": _cmd_enumerate,
    "decompose": _cmd_decompose,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "selftest":
        return selftest.main(seed=args.seed)
    try:
        _validate_run_config(args)
        text = COMMANDS[args.command](args)
        _write(args, text)
        return 0
    except InconsistencyError as err:
        _emit_error("inconsistency", str(err))
        return 2
    except RepTowerError as err:
        _emit_error(type(err).__name__, str(err))
        return 1
    except FileNotFoundError as err:
        _emit_error("ValidationError", str(err))
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
