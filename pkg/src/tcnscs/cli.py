"""Command-line interface.

Exit codes: 0 success, 1 domain failure (not displayed, infeasible, not a line
tree), 2 usage or parse error, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .codec import (DEFAULT_RESERVED, InstanceFile, parse_extended_newick, parse_newick,
                    render_symbols, split_symbols, write_extended_newick, write_newick)
from .construct import (DEFAULT_DISPLAY_BUDGET, construct_network, is_displayed,
                        line_tree_from_permutation, one_component_network,
                        permutation_from_line_tree)
from .errors import CapacityError, NotInImageError, TcnError, WitnessError
from .lts import Ordering, lineage_taxon_strings
from .model import hybridization_number, is_tree_child
from .reduction import (TwoScsInstance, check_end_to_end, encode_2scs, end_to_end_tcn_instance,
                        verify_equivalence)
from .scs import DEFAULT_STATE_BUDGET, scs
from .solver import DEFAULT_MAX_TAXA, assemble_supersequence, solve_line_trees_fast, \
    solve_min_tcn

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


def _emit(args, payload: dict, text: str):
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _read_instance(path: str) -> InstanceFile:
    if path == "-":
        return InstanceFile.from_json(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return InstanceFile.from_json(fh.read())


def _trees(args):
    if args.instance:
        inst = _read_instance(args.instance)
        trees = inst.parsed_trees()
        reserved = inst.reserved
    else:
        trees = [parse_newick(t) for t in args.trees]
        reserved = None
    if not trees:
        raise ValueError("no input trees given")
    return trees, reserved


def _pairs(values, flag):
    out = {}
    for item in values or ():
        key, sep, val = item.partition("=")
        if not sep:
            raise ValueError(f"{flag} expects TAXON=STRING, got {item!r}")
        out[key] = split_symbols(val)
    return out


def _two_scs(args) -> TwoScsInstance:
    if args.instance:
        inst = _read_instance(args.instance)
        strings, alphabet, budget = inst.parsed_strings(), inst.alphabet, inst.budget
    else:
        strings = [split_symbols(s) for s in args.strings]
        alphabet = split_symbols(args.alphabet) if args.alphabet else \
            sorted({c for s in strings for c in s})
        budget = None
    if args.budget is not None:
        budget = args.budget
    if budget is None:
        raise ValueError("a budget is required (--budget or the instance 'budget' key)")
    return TwoScsInstance(tuple(alphabet), tuple(strings), budget,
                          allow_universal=args.allow_universal)


# -- subcommands -------------------------------------------------------------------

def cmd_p2t(args):
    tree = line_tree_from_permutation(split_symbols(args.permutation), args.ell)
    text = write_newick(tree)
    _emit(args, {"permutation": args.permutation, "tree": text}, text)


def cmd_t2p(args):
    perm = render_symbols(permutation_from_line_tree(parse_newick(args.tree), args.ell))
    _emit(args, {"tree": args.tree, "permutation": perm}, perm)


def cmd_nq(args):
    q = split_symbols(args.string)
    alphabet = split_symbols(args.alphabet) if args.alphabet else None
    net = one_component_network(q, alphabet, args.ell)
    text = write_extended_newick(net)
    hn = hybridization_number(net)
    _emit(args, {"network": text, "hn": hn, "tree_child": is_tree_child(net)},
          f"{text}\nhn: {hn}")


def cmd_lts(args):
    tree = parse_newick(args.tree)
    ordering = Ordering(split_symbols(args.order))
    lts = {x: render_symbols(s) for x, s in lineage_taxon_strings(tree, ordering).items()}
    _emit(args, {"ordering": list(ordering.sequence), "lts": lts},
          "\n".join(f"{x}: {s}" for x, s in lts.items()))


def cmd_scs(args):
    if args.instance:
        inst = _read_instance(args.instance)
        strings, alphabet = inst.parsed_strings(), inst.alphabet
    else:
        strings = [split_symbols(s) for s in args.strings]
        alphabet = split_symbols(args.alphabet) if args.alphabet else None
    result = scs(strings, alphabet, heuristic=args.heuristic, budget=args.scs_states)
    text = render_symbols(result)
    _emit(args, {"scs": text, "length": len(result),
                 "mode": "heuristic" if args.heuristic else "exact"},
          f"{text}\nlength: {len(result)}")


def cmd_construct(args):
    ordering = Ordering(split_symbols(args.order))
    net = construct_network(ordering, _pairs(args.beta, "--beta"))
    text = write_extended_newick(net)
    hn = hybridization_number(net)
    _emit(args, {"network": text, "hn": hn}, f"{text}\nhn: {hn}")


def cmd_check_display(args):
    tree = parse_newick(args.tree)
    net = parse_extended_newick(args.network)
    shown = is_displayed(tree, net, args.display_budget)
    _emit(args, {"displayed": shown}, "displayed" if shown else "not displayed")
    if not shown:
        return EXIT_DOMAIN


def _report(args, report):
    payload = report.to_dict()
    text = (f"hn: {payload['hn']}\nordering: {' < '.join(payload['ordering'])}\n"
            f"network: {payload['network']}\nsearched: {payload['searched']}")
    _emit(args, payload, text)


def cmd_solve(args):
    trees, _ = _trees(args)
    _report(args, solve_min_tcn(trees, max_taxa=args.max_taxa, scs_budget=args.scs_states,
                                display_budget=args.display_budget))


def cmd_solve_fast(args):
    trees, reserved = _trees(args)
    _report(args, solve_line_trees_fast(trees, args.ell or reserved, scs_budget=args.scs_states,
                                        display_budget=args.display_budget))


def cmd_assemble_q(args):
    trees, reserved = _trees(args)
    ordering = Ordering(split_symbols(args.order))
    q = assemble_supersequence(trees, ordering, args.ell or reserved or DEFAULT_RESERVED,
                               _pairs(args.w, "--w"))
    text = render_symbols(q)
    _emit(args, {"q": text, "length": len(q)}, text)


def cmd_reduce(args):
    inst = _two_scs(args)
    enc = encode_2scs(inst)
    out = InstanceFile(alphabet=list(enc.alphabet),
                       strings=[render_symbols(p) for p in enc.permutations],
                       budget=enc.budget)
    sys.stdout.write(out.to_json())


def cmd_verify_reduction(args):
    report = verify_equivalence(_two_scs(args), args.scs_states)
    d = report.to_dict()
    _emit(args, d, "\n".join(f"{k}: {v}" for k, v in d.items()))
    if not report.agree:
        return EXIT_DOMAIN


def cmd_hardness_instance(args):
    inst = _two_scs(args)
    ell = args.ell or DEFAULT_RESERVED
    trees, q = end_to_end_tcn_instance(inst, ell)
    alphabet = list(encode_2scs(inst).alphabet) + [ell]
    if args.check:
        result = check_end_to_end(inst, ell, args.scs_states)
        _emit(args, result, "\n".join(f"{k}: {v}" for k, v in result.items()))
        return None if result["agree"] else EXIT_DOMAIN
    out = InstanceFile(alphabet=alphabet, reserved=ell,
                       trees=[write_newick(t) for t in trees], budget=q)
    sys.stdout.write(out.to_json())


def cmd_selftest(args):
    from .selftest import run_checks

    results = run_checks()
    if args.json:
        _emit(args, {"checks": [{"name": n, "ok": ok} for n, ok in results]}, "")
    else:
        for name, ok in results:
            sys.stdout.write(f"{'PASS' if ok else 'FAIL'}  {name}\n")
    if not all(ok for _, ok in results):
        return EXIT_DOMAIN


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--scs-states", type=int, default=DEFAULT_STATE_BUDGET,
                        help="lattice state budget of the exact SCS search")
    common.add_argument("--display-budget", type=int, default=DEFAULT_DISPLAY_BUDGET,
                        help="maximum number of reticulation selections in display checks")
    common.add_argument("--max-taxa", type=int, default=DEFAULT_MAX_TAXA,
                        help="ordering enumeration bound of the exact solver")

    parser = argparse.ArgumentParser(prog="tcnscs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("p2t", cmd_p2t, "line tree of a permutation (Newick)")
    p.add_argument("permutation")
    p.add_argument("--ell", default=DEFAULT_RESERVED)

    p = add("t2p", cmd_t2p, "permutation of a line tree")
    p.add_argument("tree")
    p.add_argument("--ell", default=DEFAULT_RESERVED)

    p = add("nq", cmd_nq, "one-component network of a string (extended Newick)")
    p.add_argument("string")
    p.add_argument("--alphabet")
    p.add_argument("--ell", default=DEFAULT_RESERVED)

    p = add("lts", cmd_lts, "lineage taxon strings of a tree under an ordering")
    p.add_argument("tree")
    p.add_argument("--order", required=True, help="taxa from smallest to largest")

    p = add("scs", cmd_scs, "shortest common supersequence")
    p.add_argument("strings", nargs="*")
    p.add_argument("--instance", help="InstanceFile path, '-' for stdin")
    p.add_argument("--alphabet", help="symbol order for tie-breaking")
    p.add_argument("--heuristic", action="store_true", help="majority-merge instead of exact")

    p = add("construct", cmd_construct, "tree-child network from an ordering and strings")
    p.add_argument("--order", required=True)
    p.add_argument("--beta", action="append", metavar="TAXON=STRING")

    p = add("check-display", cmd_check_display, "does a network display a tree")
    p.add_argument("tree")
    p.add_argument("network")

    for name, func, help_ in (("solve", cmd_solve, "exact minimum tree-child network"),
                              ("solve-fast", cmd_solve_fast, "optimum for line trees via SCS"),
                              ("assemble-q", cmd_assemble_q,
                               "supersequence read off one ordering")):
        p = add(name, func, help_)
        p.add_argument("trees", nargs="*", help="Newick trees")
        p.add_argument("--instance", help="InstanceFile path, '-' for stdin")
        if name != "solve":
            p.add_argument("--ell")
        if name == "assemble-q":
            p.add_argument("--order", required=True)
            p.add_argument("--w", action="append", metavar="TAXON=STRING",
                           help="override the SCS chosen for one taxon")

    for name, func, help_ in (("reduce", cmd_reduce, "encode 2-SCS as SCS on permutations"),
                              ("verify-reduction", cmd_verify_reduction,
                               "check both sides of the reduction exactly"),
                              ("hardness-instance", cmd_hardness_instance,
                               "line-tree TCN instance of a 2-SCS instance")):
        p = add(name, func, help_)
        p.add_argument("strings", nargs="*", help="length-2 strings, e.g. ab or x1.x2")
        p.add_argument("--instance", help="InstanceFile with 'strings' and 'budget'")
        p.add_argument("--alphabet")
        p.add_argument("--budget", type=int)
        p.add_argument("--allow-universal", action="store_true",
                       help="accept instances where a symbol occurs in every string")
        if name == "hardness-instance":
            p.add_argument("--ell")
            p.add_argument("--check", action="store_true",
                           help="solve the instance and compare with the 2-SCS answer")

    add("selftest", cmd_selftest, "golden checks on the worked examples")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        code = args.func(args)
    except CapacityError as exc:
        sys.stderr.write(f"capacity exceeded: {exc}\n")
        return EXIT_CAPACITY
    except (NotInImageError, WitnessError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except (TcnError, ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    return code or EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
