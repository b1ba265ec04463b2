###############################################################################
# IMPORTS
###############################################################################

import argparse
import json
import logging
import os
import re
import sys
from contextlib import nullcontext
from fractions import Fraction

from src.config.base_config import base_params
from src.config.exp_config import campaign_params
from src.models.binding import binding_number
from src.models.graph import CapacityError, Graph6ParseError, JoinFamilySpec, build_family, members, parse_graph6
from src.models.identities import threshold_order
from src.models.matching import TUTTE_CAP, deficiency, max_matching, tutte_witness
from src.models.report import EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, VerificationReport, plain
from src.models.spectral import (
    ConvergenceError,
    NotSymmetricError,
    Partition,
    alpha_matrix,
    is_equitable,
    quotient,
    quotient_largest_eigenvalue,
    spectral_radius,
)
from src.models.verifier import (
    TheoremParams,
    scan_corpus,
    verify_edge_deletion,
    verify_extremal_hypotheses,
    verify_extremal_ordering,
    verify_identities,
    verify_interlacing,
    verify_perfect_matching_oracle,
    verify_vertex_transfer,
)

logger = logging.getLogger(__name__)

WORKERS_ENV = 'ALPHA_SPECTRA_WORKERS'

_RATIONAL = re.compile(r'^\s*\d+(\s*/\s*\d+)?\s*$')

###############################################################################
# ARGUMENT TYPES
###############################################################################

def _alpha(text, exact):
    if exact and not _RATIONAL.match(text):
        raise argparse.ArgumentTypeError(f"alpha must be an exact rational p/q, got {text!r}")
    try:
        value = Fraction(text.replace(' ', ''))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"cannot parse alpha {text!r}")
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"alpha must lie in [0, 1], got {text!r}")
    return value


def exact_alpha(text):
    return _alpha(text, exact=True)


def any_alpha(text):
    # Decimals are accepted here; Fraction keeps them exact.
    return _alpha(text, exact=False)


def family(text):
    try:
        return JoinFamilySpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def default_workers():
    value = os.environ.get(WORKERS_ENV)
    if value is None:
        return base_params['workers']
    if not value.isdigit() or int(value) < 1:
        raise ValueError(f"{WORKERS_ENV} must be a positive integer, got {value!r}")
    return int(value)

###############################################################################
# PARSER
###############################################################################

def _add_graph_source(parser, allow_family=True):
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--graph6', help="graph6 encoding of the graph")
    if allow_family:
        source.add_argument('--family', type=family, help="join family as s,n1,...,nq")


def _add_output(parser):
    parser.add_argument('--format', choices=('json', 'text'), default='json')
    parser.add_argument('--output', help="write to this path instead of standard output")


def build_parser():
    parser = argparse.ArgumentParser(prog='alpha-spectra', description="A_alpha spectra, binding numbers and matchings.")
    parser.add_argument('--verbose', action='store_true', help="log progress to standard error")
    parser.add_argument('--workers', type=int, default=None, help=f"worker processes (default: ${WORKERS_ENV} or 1)")
    commands = parser.add_subparsers(dest='command', required=True)

    radius = commands.add_parser('radius', help="A_alpha spectral radius")
    _add_graph_source(radius)
    radius.add_argument('--alpha', type=any_alpha, required=True)
    radius.add_argument('--tol', type=float, default=1e-10)
    _add_output(radius)

    bind = commands.add_parser('bind', help="exact binding number")
    _add_graph_source(bind)
    _add_output(bind)

    matching = commands.add_parser('matching', help="maximum matching and Tutte witness")
    _add_graph_source(matching)
    _add_output(matching)

    quotient_cmd = commands.add_parser('quotient', help="quotient matrix of a join family")
    quotient_cmd.add_argument('--family', type=family, required=True)
    quotient_cmd.add_argument('--alpha', type=exact_alpha, required=True)
    _add_output(quotient_cmd)

    threshold = commands.add_parser('threshold', help="smallest order the theorem covers for alpha")
    threshold.add_argument('--alpha', type=exact_alpha, required=True)
    _add_output(threshold)

    verify = commands.add_parser('verify', help="verification campaigns")
    campaigns = verify.add_subparsers(dest='campaign', required=True)
    for name in campaign_params:
        sub = campaigns.add_parser(name)
        sub.add_argument('--strict', action='store_true', help="exit 3 when any claim is inconclusive")
        _add_output(sub)

    campaigns.choices['extremal'].add_argument('--n', type=int)
    campaigns.choices['extremal'].add_argument('--alpha', type=exact_alpha)
    campaigns.choices['extremal'].add_argument('--grid', action='store_true',
                                               help="run every configured order and alpha")
    campaigns.choices['lemmas'].add_argument('--trials', type=int)
    campaigns.choices['lemmas'].add_argument('--seed', type=int)
    campaigns.choices['scan'].add_argument('--alpha', type=exact_alpha)
    campaigns.choices['scan'].add_argument('--input', help="graph6 file (default: standard input)")

    return parser

###############################################################################
# COMMANDS
###############################################################################

def _graph(args):
    if getattr(args, 'family', None) is not None:
        return build_family(args.family)
    return parse_graph6(args.graph6)


def run_radius(args):
    g = _graph(args)
    m = alpha_matrix(g, args.alpha)
    out = {'n': g.n, 'alpha': args.alpha, 'radius': float(f"{spectral_radius(m, args.tol):.12g}")}
    if args.family is not None:
        q = quotient(m, Partition(args.family.cells))
        out['quotient_radius'] = float(f"{quotient_largest_eigenvalue(q):.12g}")
    return out


def run_bind(args):
    result = binding_number(_graph(args), workers=args.workers)
    return {'binding_number': result.value, 'witness': members(result.witness)}


def run_matching(args):
    g = _graph(args)
    m = max_matching(g)
    out = {'size': m.size, 'perfect': m.is_perfect, 'deficiency': deficiency(g), 'pairs': m.pairs()}
    if g.n <= TUTTE_CAP:
        witness = tutte_witness(g)
        out['tutte_witness'] = None if witness is None else {'s': members(witness.s), 'odd_count': witness.odd_count}
    return out


def run_quotient(args):
    m = alpha_matrix(build_family(args.family), args.alpha)
    cells = Partition(args.family.cells)
    q = quotient(m, cells)
    return {
        'cell_sizes': list(cells.sizes),
        'matrix': q.entries,
        'equitable': is_equitable(m, cells),
        'largest_eigenvalue': quotient_largest_eigenvalue(q),
    }


def run_threshold(args):
    return {'alpha': args.alpha, 'threshold': threshold_order(args.alpha)}

###############################################################################
# CAMPAIGNS
###############################################################################

def _merged(name, params, reports):
    out = VerificationReport(name, params)
    for report in reports:
        out.merge(report)
    return out


def run_identities(args, parameters):
    return verify_identities(parameters['grid_step'], parameters['orders'], parameters['alpha_grid'])


def run_extremal(args, parameters):
    if args.grid:
        points = [(n, a) for n in parameters['orders'] for a in parameters['alpha_grid']]
    else:
        points = [(args.n or parameters['n'], parameters['alpha'] if args.alpha is None else args.alpha)]

    reports = []
    for n, a in points:
        params = TheoremParams(n, a, parameters['tol'], parameters['margin'], parameters['agreement_tol'])
        # Grid points below n(alpha) are checked and flagged, not rejected.
        reports.append(verify_extremal_ordering(params, workers=args.workers, enforce_threshold=not args.grid))
    for n in sorted({n for n, _ in points}):
        if n <= parameters['oracle_cap']:
            reports.append(verify_extremal_hypotheses(n, workers=args.workers))
        else:
            logger.warning(f"Skipping hypothesis checks for n = {n} above the oracle cap")

    if len(reports) == 1:
        return reports[0]
    return _merged('extremal', {'points': [[n, a] for n, a in points]}, reports)


def run_lemmas(args, parameters):
    trials = args.trials or parameters['trials']
    seed = parameters['seed'] if args.seed is None else args.seed
    small = min(trials, parameters['interlacing_trials'])

    reports = [
        verify_perfect_matching_oracle(trials, seed, parameters['oracle_order']),
        verify_vertex_transfer(trials, seed, parameters['transfer_alphas'], parameters['transfer_max_order'],
                               parameters['transfer_margin'], workers=args.workers),
        verify_interlacing(small, seed, parameters['orders'], parameters['alpha_grid']),
        verify_edge_deletion(small, seed, margin=parameters['transfer_margin']),
    ]
    return _merged('lemmas', {'trials': trials, 'seed': seed}, reports)


def run_scan(args, parameters):
    alpha = parameters['alpha'] if args.alpha is None else args.alpha
    source = open(args.input, 'rb') if args.input else nullcontext(sys.stdin.buffer)
    with source as stream:
        return scan_corpus(stream, alpha, workers=args.workers, cap=parameters['oracle_cap'])


CAMPAIGNS = {
    'identities': run_identities,
    'extremal': run_extremal,
    'lemmas': run_lemmas,
    'scan': run_scan,
}

COMMANDS = {
    'radius': run_radius,
    'bind': run_bind,
    'matching': run_matching,
    'quotient': run_quotient,
    'threshold': run_threshold,
}

###############################################################################
# OUTPUT
###############################################################################

def _format_value(value):
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(plain(value))


def render(result, fmt):
    if isinstance(result, VerificationReport):
        if fmt == 'json':
            return result.to_jsonl()
        text = result.to_text()
        if result.claims:
            text += result.status_table().to_string() + '\n'
        return text

    if fmt == 'json':
        return json.dumps(plain(result)) + '\n'
    return ''.join(f"{key}: {_format_value(value)}\n" for key, value in result.items())


def run(args):
    if args.command != 'verify':
        return COMMANDS[args.command](args)

    details = campaign_params[args.campaign]
    logger.info(f"Retrieving campaign details: {details['name']}")
    return CAMPAIGNS[args.campaign](args, details['parameters'])

###############################################################################
# MAIN
###############################################################################

def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format='%(asctime)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )

    try:
        if args.workers is None:
            args.workers = default_workers()
        if args.workers < 1:
            raise ValueError(f"--workers must be positive, got {args.workers}")
        result = run(args)
    except (CapacityError, ConvergenceError, NotSymmetricError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    except (Graph6ParseError, ValueError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE

    output = open(args.output, 'w', encoding='utf-8') if args.output else nullcontext(sys.stdout)
    with output as stream:
        stream.write(render(result, args.format))

    if isinstance(result, VerificationReport):
        return result.exit_status(strict=args.strict)
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
