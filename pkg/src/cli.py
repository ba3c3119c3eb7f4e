#!/usr/bin/env python3
"""
Antipath Toolkit Command Line
Antipath Toolkit - oriented graph verification

Subcommands:
    solve   longest antipath / anticycle / directed path of one graph
    gen     write a graph of a named family
    rotate  run the rotation-based finder on one graph and print its trace
    verify  run a property campaign (or certify the X -> Y construction)
    search  look for counterexamples to the open path problems
    gbound  exact sweep of g(k) > k

Exit codes: 0 success, 1 counterexample or finding, 2 usage error,
3 I/O or resource-guard error.
"""

import argparse
import logging
import sys
from typing import List, Optional

import yaml

from antisolve import directed_path_length, longest_anticycle, longest_antipath, longest_directed_path
from core.campaign_runner import Campaign, CampaignRunner
from digraph_core import (
    OrientedGraph,
    format_code_token,
    format_graph_text,
    from_trit_code,
    parse_code_token,
    parse_graph_text,
    read_graph_file,
    write_graph_file,
)
from errors import (
    InvalidGraphError,
    InvalidWitnessError,
    PreconditionError,
    ResourceGuardError,
    TheoremCounterexampleError,
)
from generators import FAMILIES, FamilySpec, enumerate_all
from harness import PROPERTIES, SEARCH_TARGETS, Population, verify_construction_D
from rotation import find_long_structure, sweep_g_bound
from toolkit_config import ToolkitConfig, create_toolkit_config

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _add_graph_input(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument('--input', metavar='PATH', help="graph text file, '-' for standard input (default)")
    source.add_argument('--code', metavar='N:TRIT', help='inline graph as vertex count and trit code')


def _add_population(parser: argparse.ArgumentParser) -> None:
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument('--exhaustive', action='store_true', help='every labeled graph on --n vertices (default)')
    mode.add_argument('--samples', type=int, metavar='INT', help='number of seeded random graphs')
    parser.add_argument('--n', type=int, help='vertex count (smallest n when sampling with --nmax)')
    parser.add_argument('--nmax', type=int, help='sampled n cycles through [--n, --nmax]')
    parser.add_argument('--k', type=int, nargs='+', help='one or more k values')
    parser.add_argument('--p', type=float, help='arc probability of the random model')
    parser.add_argument('--seed', type=int, metavar='U64', help='base seed of the random model')
    parser.add_argument('--lo', type=int, default=0, help='first population index')
    parser.add_argument('--hi', type=int, help='end of the population index range (exclusive)')
    parser.add_argument('--out', metavar='PATH', help='JSON-lines record sink')
    parser.add_argument('--shards', type=int, help='number of index shards')
    parser.add_argument('--jobs', type=int, help='worker processes')
    parser.add_argument('--canonical', action=argparse.BooleanOptionalAction, default=None,
                        help='omit timestamps from records (default from config)')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='antipath', description='Antipath and anticycle verification toolkit')
    parser.add_argument('--config', metavar='PATH', help='toolkit configuration YAML')
    parser.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        help='overrides environment.log_level')
    subparsers = parser.add_subparsers(dest='command', required=True)

    solve = subparsers.add_parser('solve', help='longest antipath, anticycle or directed path')
    _add_graph_input(solve)
    solve.add_argument('--what', choices=['antipath', 'anticycle', 'dipath'], default='antipath')
    solve.set_defaults(handler=cmd_solve)

    gen = subparsers.add_parser('gen', help='write a graph of a named family')
    gen.add_argument('--family', required=True, metavar='NAME',
                     help=f"one of {', '.join(FAMILIES)}, or a full 'family:key=value,...' text")
    gen.add_argument('--n', type=int)
    gen.add_argument('--k', type=int)
    gen.add_argument('--copies', type=int)
    gen.add_argument('--p', type=float)
    gen.add_argument('--seed', type=int, metavar='U64')
    gen.add_argument('--out', metavar='PATH', help='graph text file (default standard output)')
    gen.set_defaults(handler=cmd_gen)

    rotate = subparsers.add_parser('rotate', help='rotation-based finder with its round trace')
    _add_graph_input(rotate)
    rotate.add_argument('--k', type=int, required=True)
    rotate.set_defaults(handler=cmd_rotate)

    verify = subparsers.add_parser('verify', help='run a property campaign')
    verify.add_argument('--property', required=True, choices=PROPERTIES + ('construction-d',))
    verify.add_argument('--kmax', type=int, help='largest k for construction-d')
    _add_population(verify)
    verify.set_defaults(handler=cmd_verify)

    search = subparsers.add_parser('search', help='counterexample search for the open path problems')
    search.add_argument('--target', required=True, choices=SEARCH_TARGETS)
    _add_population(search)
    search.set_defaults(handler=cmd_search)

    gbound = subparsers.add_parser('gbound', help='exact check of g(k) > k for k in [2, kmax]')
    gbound.add_argument('--kmax', type=int, required=True)
    gbound.set_defaults(handler=cmd_gbound)
    return parser


def _load_graph(args: argparse.Namespace, config: ToolkitConfig) -> OrientedGraph:
    max_n = config.get('guards', 'max_solve_n', 24)
    if args.code:
        n, code = parse_code_token(args.code)
        if n > max_n:
            raise ResourceGuardError(f"n={n} exceeds the solver guard n <= {max_n}")
        return from_trit_code(n, code)
    if args.input in (None, '-'):
        g = parse_graph_text(sys.stdin.read())
    else:
        g = read_graph_file(args.input)
    if g.n > max_n:
        raise ResourceGuardError(f"n={g.n} exceeds the solver guard n <= {max_n}")
    return g


def cmd_solve(args: argparse.Namespace, config: ToolkitConfig) -> int:
    g = _load_graph(args, config)
    if args.what == 'antipath':
        if g.n == 0:
            raise PreconditionError("the graph has no vertices")
        path = longest_antipath(g)
        print(f"length: {path.length}")
        print(f"witness: {' '.join(map(str, path.vertices))}")
        print(f"lead: {path.lead.value}")
    elif args.what == 'anticycle':
        cycle = longest_anticycle(g)
        print(f"length: {cycle.length if cycle else 0}")
        print(f"witness: {' '.join(map(str, cycle.vertices)) if cycle else 'none'}")
    else:
        vertices = longest_directed_path(g)
        print(f"length: {directed_path_length(vertices)}")
        print(f"witness: {' '.join(map(str, vertices)) if vertices else 'none'}")
    return EXIT_OK


def _family_spec(args: argparse.Namespace, config: ToolkitConfig) -> FamilySpec:
    if ':' in args.family:
        return FamilySpec.parse(args.family)
    p, seed = args.p, args.seed
    if args.family == 'random':
        p = config.get('random_model', 'p', 0.5) if p is None else p
        seed = config.get('random_model', 'seed', 0) if seed is None else seed
    return FamilySpec(args.family, n=args.n, k=args.k, copies=args.copies, p=p, seed=seed)


def cmd_gen(args: argparse.Namespace, config: ToolkitConfig) -> int:
    spec = _family_spec(args, config)
    if spec.family == 'enumerate':
        max_n = config.get('guards', 'max_exhaustive_n', 6)
        if spec.n > max_n:
            raise ResourceGuardError(f"enumerating n={spec.n} exceeds the guard n <= {max_n}")
        tokens = "".join(format_code_token(g) + "\n" for g in enumerate_all(spec.n))
        if args.out:
            with open(args.out, 'w', encoding='utf-8') as file:
                file.write(tokens)
        else:
            sys.stdout.write(tokens)
        return EXIT_OK
    g = spec.build()
    comment = f"family {spec.to_text()}\ncode {format_code_token(g)}"
    if args.out:
        write_graph_file(args.out, g, comment)
        logger.info(f"✅ Wrote {spec.to_text()} to {args.out}")
    else:
        sys.stdout.write(format_graph_text(g, comment))
    return EXIT_OK


def cmd_rotate(args: argparse.Namespace, config: ToolkitConfig) -> int:
    g = _load_graph(args, config)
    try:
        witness = find_long_structure(g, args.k)
    except TheoremCounterexampleError:
        print(f"no antipath or anticycle of length >= {args.k + 1}: {format_code_token(g)}")
        raise
    for step in witness.trace:
        print(f"trace: {step}")
    print(f"kind: {witness.kind}")
    print(f"strategy: {witness.strategy}")
    print(f"length: {witness.length}")
    print(f"witness: {' '.join(map(str, witness.vertices))}")
    if witness.lead:
        print(f"lead: {witness.lead.value}")
    return EXIT_OK


def _build_campaign(args: argparse.Namespace, config: ToolkitConfig, property_tag: str) -> Campaign:
    if args.n is None:
        raise PreconditionError("--n is required")
    if args.samples is not None:
        sampling = 'observation_sampling' if property_tag == 'observation' else 'random_model'
        population = Population(
            'sampled',
            args.n,
            n_max=args.nmax,
            samples=args.samples,
            seed=args.seed if args.seed is not None else config.get(sampling, 'seed', 0),
            p=args.p if args.p is not None else config.get('random_model', 'p', 0.5),
        )
    else:
        if args.nmax is not None:
            raise PreconditionError("--nmax only applies to sampled populations")
        population = Population('exhaustive', args.n)
    return Campaign(
        property_tag=property_tag,
        population=population,
        k_values=tuple(args.k or ()),
        lo=args.lo,
        hi=args.hi,
        shards=args.shards if args.shards is not None else config.get('campaign', 'shards', 1),
        jobs=args.jobs if args.jobs is not None else config.get('campaign', 'jobs', 1),
        sink=args.out,
        canonical=args.canonical if args.canonical is not None else config.get('campaign', 'canonical', True),
    )


def _runner(config: ToolkitConfig) -> CampaignRunner:
    return CampaignRunner(
        max_exhaustive_n=config.get('guards', 'max_exhaustive_n', 6),
        max_samples=config.get('guards', 'max_samples', 10_000_000),
        max_stein_k=config.get('guards', 'max_stein_k', 8),
    )


def _print_summary(summary, label: str) -> None:
    data = summary.to_dict()
    for key in ('property', 'k', 'inspected', 'records', 'hypothesis'):
        print(f"{key}: {data[key]}")
    print(f"{label}: {data['counterexamples']}")
    print(f"elapsed: {data['elapsed_seconds']}s")
    for record in summary.counterexamples:
        print(f"{label[:-1]}: {record.n}:{record.code} k={record.k} strategy={record.strategy}")


def cmd_verify(args: argparse.Namespace, config: ToolkitConfig) -> int:
    if args.property == 'construction-d':
        if args.kmax is None:
            raise PreconditionError("--kmax is required for construction-d")
        report = verify_construction_D(args.kmax)
        print(report.to_string(index=False))
        if args.out:
            report.to_json(args.out, orient='records', lines=True)
        return EXIT_OK if bool(report['passes'].all()) else EXIT_FINDING
    campaign = _build_campaign(args, config, args.property)
    summary = _runner(config).run(campaign).summary
    _print_summary(summary, 'counterexamples')
    return EXIT_FINDING if summary.counterexamples else EXIT_OK


def cmd_search(args: argparse.Namespace, config: ToolkitConfig) -> int:
    campaign = _build_campaign(args, config, args.target)
    summary = _runner(config).run(campaign).summary
    _print_summary(summary, 'findings')
    return EXIT_FINDING if summary.counterexamples else EXIT_OK


def cmd_gbound(args: argparse.Namespace, config: ToolkitConfig) -> int:
    sweep = sweep_g_bound(args.kmax)
    print(f"checked: {sweep.checked}")
    print(f"failures: {len(sweep.failures)}")
    print(f"min margin: {sweep.min_margin} at k={sweep.min_margin_k}")
    return EXIT_OK if sweep.passed else EXIT_FINDING


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, dispatch, and map errors to exit codes.

    Returns:
        0, 1, 2 or 3 as described in the module docstring
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    try:
        config = create_toolkit_config(args.config)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except yaml.YAMLError as e:
        print(f"error: bad configuration file: {e}", file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(level=args.log_level or config.log_level, format=config.log_format, stream=sys.stderr)

    try:
        return args.handler(args, config)
    except TheoremCounterexampleError as e:
        print(f"counterexample: {e}", file=sys.stderr)
        return EXIT_FINDING
    except (PreconditionError, InvalidGraphError, InvalidWitnessError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceGuardError as e:
        print(f"resource guard: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_RESOURCE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
