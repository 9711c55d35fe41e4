"""Command-line front end.

Exit codes: 0 success (``solve``: member), 1 non-member, 2 input error,
budget exhaustion or a failed ``--verify``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import reduce as rd
from . import smp
from .classify import check_pspace_triple, classify, find_nphard_triple, find_pspace_triple
from .rees import CATALOG_NAMES, ReesStructure, catalog
from .semigroup import FiniteSemigroup

EXIT_MEMBER = 0
EXIT_NON_MEMBER = 1
EXIT_ERROR = 2


class CliError(Exception):
    pass


def load_semigroup(ref):
    """Resolve a catalog name, a JSON file path, or a parsed JSON object.

    Returns ``(semigroup, rees_or_None, pspace_triple_or_None)``.
    """
    if isinstance(ref, str):
        path = Path(ref)
        if path.suffix == ".json" or path.is_file():
            try:
                ref = json.loads(path.read_text())
            except OSError as exc:
                raise CliError(f"cannot read {ref}: {exc}") from None
            except json.JSONDecodeError as exc:
                raise CliError(f"{ref}: invalid JSON ({exc})") from None
        else:
            try:
                entry = catalog(ref)
            except ValueError as exc:
                raise CliError(str(exc)) from None
            return entry.semigroup, entry.rees, entry.pspace_triple
    if isinstance(ref, dict):
        try:
            if "matrix" in ref:
                R = ReesStructure.from_json(ref)
                return R.semigroup, R, None
            return FiniteSemigroup.from_json(ref), None, None
        except (ValueError, KeyError, TypeError) as exc:
            raise CliError(f"bad semigroup description: {exc}") from None
    raise CliError(f"cannot interpret semigroup reference {ref!r}")


def load_instance(path: str):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot load instance {path}: {exc}") from None
    try:
        S, rees, _ = load_semigroup(data["semigroup"])
        inst = smp.SmpInstance(S, data["generators"], data["target"])
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise CliError(f"malformed instance: {exc}") from None
    if "n" in data and data["n"] != inst.n:
        raise CliError(f"declared n = {data['n']} but target has length {inst.n}")
    return inst, rees


def parse_elements(S: FiniteSemigroup, items) -> tuple[int, ...]:
    out = []
    for x in items:
        try:
            out.append(S.index(int(x)) if x.lstrip("-").isdigit() else S.index(x))
        except (KeyError, IndexError) as exc:
            raise CliError(str(exc)) from None
    return tuple(out)


def emit(args, payload: dict, text: str):
    out = json.dumps(payload, indent=2) if args.json else text
    if getattr(args, "out", None):
        Path(args.out).write_text(out + "\n")
    else:
        print(out)


# -- subcommands -------------------------------------------------------------


def cmd_solve(args) -> int:
    inst, rees = load_instance(args.instance)
    if rees is not None and not rees.adjoin_identity and rees.block is not None:
        word = smp.one_block_witness(inst, rees)
        payload = {"member": word is not None, "witness": word, "closure_size": 0, "method": "one_block"}
    else:
        try:
            res = smp.solve_closure(inst, args.budget)
        except smp.BudgetExceeded as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR
        payload = dict(res.to_json(), method="closure")
    if payload["member"]:
        text = "member\nwitness: " + " ".join(str(w) for w in payload["witness"])
    else:
        text = "not a member"
    if payload["method"] == "closure":
        text += f"\nclosure size: {payload['closure_size']}"
    emit(args, payload, text)
    return EXIT_MEMBER if payload["member"] else EXIT_NON_MEMBER


def cmd_classify(args) -> int:
    S, rees, _ = load_semigroup(args.semigroup)
    verdict = classify(S, rees)
    payload = verdict.to_json(S)
    ev = ", ".join(f"{k}={v}" for k, v in payload["evidence"].items())
    emit(args, payload, f"{verdict.klass.value}\nreason: {verdict.theorem}\nevidence: {ev}")
    return 0


def _instance_ref(args_semigroup: str, inst: smp.SmpInstance, lifted: bool):
    if not lifted and not Path(args_semigroup).is_file() and not args_semigroup.endswith(".json"):
        return catalog(args_semigroup).name
    return None


def _finish_reduce(args, inst, ref, expected: bool) -> int:
    payload = smp.instance_to_json(inst, ref)
    text = json.dumps(payload)
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
    else:
        print(text)
    if args.verify:
        try:
            res = smp.solve_closure(inst, args.budget)
        except smp.BudgetExceeded as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR
        if res.member != expected:
            print(f"verify FAILED: formula {expected}, membership {res.member}", file=sys.stderr)
            return EXIT_ERROR
        print(f"verified: formula {expected}, membership {res.member}", file=sys.stderr)
    return 0


def cmd_reduce_sat(args) -> int:
    try:
        F = rd.parse_dimacs(Path(args.formula).read_text())
    except (OSError, ValueError) as exc:
        raise CliError(f"cannot read formula: {exc}") from None
    S, _, _ = load_semigroup(args.semigroup)
    triple = parse_elements(S, args.triple) if args.triple else find_nphard_triple(S)
    if triple is None:
        raise CliError("semigroup has no triple with rs = st = s and s non-group")
    try:
        inst = rd.sat_to_smp(S, triple, F)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    ref = _instance_ref(args.semigroup, inst, False)
    return _finish_reduce(args, inst, ref, rd.satisfying_assignment(F) is not None)


def cmd_reduce_q3sat(args) -> int:
    try:
        F = rd.parse_q3sat(Path(args.formula).read_text())
    except (OSError, ValueError) as exc:
        raise CliError(f"cannot read formula: {exc}") from None
    S, _, known = load_semigroup(args.semigroup)
    if args.triple:
        triple = parse_elements(S, args.triple)
    else:
        triple = known or find_pspace_triple(S)
    if triple is None:
        raise CliError("semigroup has no (s, t, n) triple")
    if not check_pspace_triple(S, *triple):
        raise CliError("triple fails sts = s, s non-group, sn = s, tn = t")
    lift = args.lift
    if lift is None:
        lift = not rd.check_lemma_triple(S, *triple)
    try:
        inst = rd.q3sat_to_smp(S, triple, F, lift=lift)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    ref = _instance_ref(args.semigroup, inst, lift)
    return _finish_reduce(args, inst, ref, rd.eval_q3sat(F))


def cmd_greens(args) -> int:
    S, _, _ = load_semigroup(args.semigroup)
    g = S.greens
    payload = {}
    lines = [f"{S.size} elements"]
    for kind in "rljhd":
        classes = g.classes(kind)
        payload[kind.upper()] = [[S.name(x) for x in c] for c in classes]
        sizes = sorted((len(c) for c in classes), reverse=True)
        lines.append(f"{kind.upper()}-classes: {len(classes)}  sizes {sizes}")
    for c in g.classes("j"):
        lines.append("  J: " + " ".join(S.name(x) for x in c))
    emit(args, payload, "\n".join(lines))
    return 0


def cmd_shorten(args) -> int:
    word = [int(x) for tok in args.word for x in tok.split()]
    if not word:
        raise CliError("empty word")
    if args.k is not None and any(not (1 <= x <= args.k) for x in word):
        raise CliError(f"letters must lie in 1..{args.k}")
    short = smp.shorten_word(word)
    emit(args, {"word": word, "shortened": short}, " ".join(str(x) for x in short))
    return 0


def cmd_catalog(args) -> int:
    if not args.name:
        emit(args, {"names": list(CATALOG_NAMES)}, "\n".join(CATALOG_NAMES))
        return 0
    S, rees, triple = load_semigroup(args.name)
    payload = S.to_json()
    if rees is not None:
        payload["rees"] = rees.to_json()
    if triple is not None:
        payload["pspace_triple"] = list(triple)
    text = f"{args.name}: {S.size} elements\n" + "\n".join(
        S.name(a).ljust(8) + " ".join(S.name(x).ljust(6) for x in row) for a, row in enumerate(S.table.tolist())
    )
    emit(args, payload, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="subpower", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, out=True):
        sp.add_argument("--json", action="store_true", help="emit JSON instead of text")
        if out:
            sp.add_argument("--out", help="write the report to PATH")

    sp = sub.add_parser("solve", help="decide an SMP instance")
    sp.add_argument("instance")
    sp.add_argument("--budget", type=int, default=smp.DEFAULT_BUDGET)
    common(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("classify", help="complexity verdict for a semigroup")
    sp.add_argument("semigroup")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    for name, func, default_sg, help_ in (
        ("reduce-sat", cmd_reduce_sat, "brandt_b2", "SAT (DIMACS) to SMP"),
        ("reduce-q3sat", cmd_reduce_q3sat, "brandt_b2_1", "Q3SAT to SMP"),
    ):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("formula")
        sp.add_argument("--semigroup", default=default_sg)
        sp.add_argument("--triple", nargs=3, metavar="X", help="three element indices or names")
        sp.add_argument("--verify", action="store_true", help="check the equivalence by brute force")
        sp.add_argument("--budget", type=int, default=smp.DEFAULT_BUDGET)
        sp.add_argument("--out")
        if name == "reduce-q3sat":
            sp.add_argument("--lift", dest="lift", action="store_true", default=None)
            sp.add_argument("--no-lift", dest="lift", action="store_false")
        sp.set_defaults(func=func)

    sp = sub.add_parser("greens", help="Green's classes of a semigroup")
    sp.add_argument("semigroup")
    common(sp)
    sp.set_defaults(func=cmd_greens)

    sp = sub.add_parser("shorten", help="shorten a word over letters 1..k")
    sp.add_argument("word", nargs="+")
    sp.add_argument("--k", type=int)
    common(sp)
    sp.set_defaults(func=cmd_shorten)

    sp = sub.add_parser("catalog", help="list or print catalog semigroups")
    sp.add_argument("name", nargs="?")
    common(sp)
    sp.set_defaults(func=cmd_catalog)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "budget", 1) <= 0:
        print("error: budget must be positive", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
