'''Command line interface over all of the package's operations.

Structured results go to stdout as one line of JSON with exact
rationals rendered as "p/q" strings; words and generated files are
plain text.  Exit codes: 0 on success, 1 for domain errors (a single
"error: ..." line on stderr), 2 for usage errors.  Every command is
deterministic; --threads is accepted for symmetry with batch drivers
but computations run sequentially.
'''

import argparse
import json
import os
import sys
from typing import List, Optional

from monoflag.certificates import (
    read_certificate,
    read_published_certificate,
    read_solver_solution,
    round_solution,
    variable_count,
    verification_report,
    verify_certificate,
    write_certificate,
)
from monoflag.constructions import (
    alternating_word,
    bucketed_word,
    folded_word,
    proper_form_word,
)
from monoflag.flags import default_types, enumerate_flags
from monoflag.hspoly import format_poly, generate_hs, minimize_simplex
from monoflag.oracle import brute_min
from monoflag.sdp import (
    assemble_problem,
    parse_sdpa_sparse,
    problem_from_parsed,
    write_sdpa_sparse,
)
from monoflag.wordgraphs import enumerate_word_graphs, representative_words
from monoflag.words import (
    count_monotone,
    format_word,
    monotone_density,
    parse_word,
)


def _emit(data: dict) -> None:
    print(json.dumps(data, separators=(',', ':')))


def _cmd_count(args) -> int:
    word = parse_word(args.word)
    counts = count_monotone(word, args.k)
    _emit({
        'word': format_word(word),
        'k': args.k,
        'nondecreasing': counts.nondecreasing,
        'nonincreasing': counts.nonincreasing,
        'constant': counts.constant,
        'total': counts.total,
        'density': str(monotone_density(word, args.k)),
    })
    return 0


def _cmd_construct(args) -> int:
    if args.kind == 'alternating':
        word = alternating_word(args.n)
    elif args.kind == 'proper':
        word = proper_form_word(args.n, args.y)
    elif args.kind == 'folded':
        if args.x is not None:
            point = tuple(float(t) for t in args.x.split(','))
        else:
            point = minimize_simplex(generate_hs(args.s)).point
        word = folded_word(args.s, point, args.n)
    else:
        perm = tuple(int(t) for t in args.perm.split(','))
        word = bucketed_word(perm, args.s)
    print(format_word(word))
    return 0


def _cmd_hs(args) -> int:
    poly = generate_hs(args.s)
    print(format_poly(poly))
    if args.minimize:
        best = minimize_simplex(poly)
        _emit({
            'point': list(best.point),
            'value': best.value,
            'gradient_norm': best.gradient_norm_at_point,
            'active_constraints': sorted(best.active_constraints),
        })
    return 0


def _cmd_graphs(args) -> int:
    if args.table2:
        counts = {}
        for l in range(2, args.l + 1):
            counts[str(l)] = len(enumerate_word_graphs(args.s, l))
        _emit({'s': args.s, 'counts': counts})
        return 0
    graphs = enumerate_word_graphs(args.s, args.l)
    if args.count_only:
        print(len(graphs))
        return 0
    words = representative_words(args.s, args.l)
    for g, w in zip(graphs, words):
        print('%s %s' % (''.join(str(c) for c in g.colors), format_word(w)))
    return 0


def _cmd_flags(args) -> int:
    types = default_types(args.s)
    sizes = [len(enumerate_flags(types[i], 4 if i == 0 else 5, args.s))
             for i in range(len(types))]
    _emit({'s': args.s, 'sizes': sizes})
    return 0


def _cmd_gen_sdp(args) -> int:
    problem = assemble_problem(args.s, l=args.l)
    write_sdpa_sparse(problem, args.out)
    _emit({
        's': problem.s,
        'l': problem.l,
        'm': problem.m,
        'blocks': list(problem.block_sizes),
        'variables': variable_count(problem),
        'out': args.out,
    })
    return 0


def _block_sizes(args):
    if args.problem is not None:
        return parse_sdpa_sparse(args.problem).block_sizes
    return assemble_problem(args.s, l=args.l).block_sizes


def _cmd_round(args) -> int:
    solution = read_solver_solution(args.solution, _block_sizes(args))
    cert = round_solution(solution, args.D, s=args.s)
    write_certificate(cert, args.out)
    _emit({
        's': cert.s,
        'D': cert.denominator,
        'blocks': list(cert.block_orders) + [len(cert.slack)],
        'min_diagonal': cert.min_diagonal,
        'out': args.out,
    })
    return 0


def _read_any_certificate(path: str, s: int, denominator: int):
    with open(path) as fh:
        head = fh.read(9)
    if head.startswith('MONOCERT'):
        return read_certificate(path)
    return read_published_certificate(path, s, denominator)


def _cmd_verify(args) -> int:
    if args.problem is not None:
        problem = problem_from_parsed(parse_sdpa_sparse(args.problem),
                                      args.s)
    else:
        problem = assemble_problem(args.s, l=args.l)
    cert = _read_any_certificate(args.cert, args.s, args.D)
    result = verify_certificate(problem, cert)
    _emit(verification_report(cert, result))
    return 0


def _cmd_brute(args) -> int:
    count, winners = brute_min(args.s, args.k, args.n, cap=args.cap)
    _emit({
        's': args.s,
        'k': args.k,
        'n': args.n,
        'min_count': count,
        'density': str(monotone_density(winners[0], args.k)),
        'minimizers': [format_word(w) for w in winners],
    })
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='monoflag',
        description='Monotone subword densities: exact counts, extremal '
                    'constructions, flag SDP generation, and certificate '
                    'verification.')
    parser.add_argument('--threads', type=int,
                        default=os.cpu_count() or 1,
                        help='accepted for compatibility; results never '
                             'depend on it')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('count', help='count monotone k-subwords of a word')
    p.add_argument('--word', required=True)
    p.add_argument('--k', type=int, required=True)
    p.set_defaults(run=_cmd_count)

    p = sub.add_parser('construct', help='print an extremal word')
    kinds = p.add_subparsers(dest='kind', required=True)
    q = kinds.add_parser('alternating')
    q.add_argument('--n', type=int, required=True)
    q = kinds.add_parser('proper')
    q.add_argument('--n', type=int, required=True)
    q.add_argument('--y', type=int, required=True)
    q = kinds.add_parser('folded')
    q.add_argument('--s', type=int, required=True)
    q.add_argument('--n', type=int, required=True)
    q.add_argument('--x', help='comma-separated block fractions; '
                               'defaults to the h_s minimizer')
    q = kinds.add_parser('bucketed')
    q.add_argument('--perm', required=True,
                   help='comma-separated permutation of 1..n')
    q.add_argument('--s', type=int, required=True)
    p.set_defaults(run=_cmd_construct)

    p = sub.add_parser('hs', help='print h_s, optionally minimized')
    p.add_argument('--s', type=int, required=True)
    p.add_argument('--minimize', action='store_true')
    p.set_defaults(run=_cmd_hs)

    p = sub.add_parser('graphs', help='enumerate word graphs')
    p.add_argument('--s', type=int, required=True)
    p.add_argument('--l', type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument('--count-only', action='store_true')
    group.add_argument('--table2', action='store_true',
                       help='counts for every length from 2 up to --l')
    p.set_defaults(run=_cmd_graphs)

    p = sub.add_parser('flags', help='sizes of the nine standard flag lists')
    p.add_argument('--s', type=int, required=True)
    p.set_defaults(run=_cmd_flags)

    p = sub.add_parser('gen-sdp', help='write the SDPA sparse program')
    p.add_argument('--s', type=int, required=True)
    p.add_argument('--l', type=int, default=7)
    p.add_argument('--out', required=True)
    p.set_defaults(run=_cmd_gen_sdp)

    p = sub.add_parser('round',
                       help='round a solver solution to a certificate')
    p.add_argument('--solution', required=True)
    p.add_argument('--D', type=int, default=1000000)
    p.add_argument('--out', required=True)
    p.add_argument('--s', type=int, required=True)
    p.add_argument('--l', type=int, default=7)
    p.add_argument('--problem',
                   help='.dat-s file fixing the block structure; '
                        'assembled from --s/--l when omitted')
    p.set_defaults(run=_cmd_round)

    p = sub.add_parser('verify', help='verify a certificate exactly')
    p.add_argument('--cert', required=True)
    p.add_argument('--s', type=int, required=True)
    p.add_argument('--l', type=int, default=7)
    p.add_argument('--problem',
                   help='.dat-s file the certificate was produced for; '
                        'assembled from --s/--l when omitted')
    p.add_argument('--D', type=int, default=1000000,
                   help='denominator assumed for certificates whose '
                        'format does not record it')
    p.set_defaults(run=_cmd_verify)

    p = sub.add_parser('brute', help='exhaustive minimum at small n')
    p.add_argument('--s', type=int, required=True)
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--cap', type=int, default=20000000)
    p.set_defaults(run=_cmd_brute)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print('error: --threads must be positive', file=sys.stderr)
        return 1
    try:
        return args.run(args)
    except (ValueError, ArithmeticError, OSError) as exc:
        print('error: %s' % exc, file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
