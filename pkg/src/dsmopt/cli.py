"""Command-line front end: ``dsmopt certify|simulate|attack|sweep``.

Exit codes: 0 success (certificate applicable / attack PASS), 2 negative
outcome (not applicable / attack FAIL), 1 runtime error, 64 usage or
config error.
"""
import argparse
import csv
import json
import logging
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import numpy as np

from .adc import ADC_NAMES, GreedyAdc, make_adc
from .adversary import LOWER_BOUND_TOL, attack
from .certify import certify
from .config import ConfigError, load_config
from .ensembles import ADVERSARIAL
from .errors import DsmError
from .lti import extract_delay
from .performance import awai, closed_loop

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2, 64

log = logging.getLogger('dsmopt')


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return 'true' if v else 'false'
    if v is None:
        return ''
    if isinstance(v, (int, np.integer)):
        return str(v)
    v = float(v)
    if math.isinf(v):
        return 'inf' if v > 0 else '-inf'
    return '%.17g' % v


def _write_csv(path, header, rows):
    with open(path, 'w', newline='', encoding='utf-8') as fh:
        writer = csv.writer(fh, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _write_json(path, obj):
    with open(path, 'w', encoding='utf-8') as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write('\n')


def _jsonable(v):
    if isinstance(v, float) and math.isinf(v):
        return 'inf' if v > 0 else '-inf'
    return v


def write_trace(path, quant, r, u, w, q):
    """CSV trace n,r,u,w,q; every row is rechecked before writing."""
    for n in range(len(r)):
        if not abs(r[n]) <= 1.0:
            raise DsmError(f"trace row {n}: |r| = {abs(r[n])!r} > 1")
        if not quant.contains(u[n]):
            raise DsmError(f"trace row {n}: u = {u[n]!r} not a quantizer level")
    _write_csv(path, ['n', 'r', 'u', 'w', 'q'],
               zip(range(len(r)), r, u, w, q))


def _prepare(cfg):
    filt = extract_delay(cfg.filter)
    return filt, cfg.quantizer, cfg.phi_function


def cmd_certify(cfg, out):
    filt, quant, phi = _prepare(cfg)
    cert = certify(cfg.filter, quant, phi)
    doc = cert.to_dict()
    doc['filter'] = cfg.filter_name
    text = json.dumps(doc, indent=2, sort_keys=True)
    print(text)
    if out:
        _write_json(os.path.join(out, 'certificate.json'), doc)
    return EXIT_OK if cert.applicable else EXIT_NEGATIVE


def _run_input(cfg, adc, filt):
    member = cfg.input_sequence()
    if member is ADVERSARIAL:
        return attack(adc, filt, cfg.delta, cfg.horizon).r
    return member


def cmd_simulate(cfg, out):
    filt, quant, phi = _prepare(cfg)
    adc = make_adc(cfg.adc, filt, quant)
    r = _run_input(cfg, adc, filt)
    u, w, q = closed_loop(adc, filt, r)
    est = awai(q, phi, cfg.window)
    summary = {
        'filter': cfg.filter_name, 'adc': cfg.adc, 'ensemble': cfg.ensemble,
        'delta': cfg.delta, 'levels': _jsonable(float(cfg.levels)),
        'phi': cfg.phi, 'horizon': cfg.horizon,
        'awai_full_mean': est.full_mean, 'awai_suffix_mean': est.suffix_mean,
        'awai_max_window_mean': est.max_window_mean, 'window': est.window,
        'max_abs_q': float(np.abs(q).max()), 'max_abs_u': float(np.abs(u).max()),
        'bound_cb_delta_half': abs(filt.cb) * cfg.delta / 2.0,
    }
    print(json.dumps(summary, indent=2, sort_keys=True))
    if out:
        write_trace(os.path.join(out, 'trace.csv'), quant, r, u, w, q)
        _write_json(os.path.join(out, 'summary.json'), summary)
    return EXIT_OK


def cmd_attack(cfg, out, target):
    filt, quant, phi = _prepare(cfg)
    adc = make_adc(target, filt, quant)
    res = attack(adc, filt, cfg.delta, cfg.horizon)
    verdict = 'PASS' if res.passed else 'FAIL'
    report = {
        'target': target, 'filter': cfg.filter_name, 'delta': cfg.delta,
        'levels': _jsonable(float(cfg.levels)), 'horizon': cfg.horizon,
        'min_abs_q': res.min_abs_q, 'max_abs_q': float(np.abs(res.q[1:]).max()),
        'bound': res.bound, 'tolerance': LOWER_BOUND_TOL, 'verdict': verdict,
    }
    print(json.dumps(report, indent=2, sort_keys=True))
    if out:
        w = res.r - res.u
        write_trace(os.path.join(out, 'attack.csv'), quant, res.r, res.u, w, res.q[:-1])
        _write_json(os.path.join(out, 'verdict.json'), report)
    return EXIT_OK if res.passed else EXIT_NEGATIVE


def sweep_row(cfg, value):
    """One sweep grid point: (value, beta, applicable, optimal, empirical J)."""
    point = replace(cfg, **{cfg.sweep_param: value})
    filt, quant, phi = _prepare(point)
    cert = certify(point.filter, quant, phi)
    res = attack(GreedyAdc(filt, quant), filt, point.delta, point.horizon)
    j = awai(res.q[:-1], phi, point.window).suffix_mean
    return (value, cert.beta, cert.applicable, cert.optimal_value, j)


def cmd_sweep(cfg, out, jobs=1):
    if not cfg.sweep_param or not cfg.sweep_values:
        raise ConfigError("sweep needs a [sweep] section with a nonempty values list")
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        rows = list(pool.map(lambda v: sweep_row(cfg, v), cfg.sweep_values))
    header = [cfg.sweep_param, 'beta', 'applicable', 'optimal_value', 'empirical_j']
    if out:
        _write_csv(os.path.join(out, 'sweep.csv'), header, rows)
    writer = csv.writer(sys.stdout, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog='dsmopt', description='Greedy delta-sigma ADC certification and simulation.')
    sub = parser.add_subparsers(dest='command', required=True)
    for name in ('certify', 'simulate', 'attack', 'sweep'):
        p = sub.add_parser(name)
        p.add_argument('--config', required=True, help='experiment config (INI)')
        p.add_argument('--out', help='output directory')
        p.add_argument('--seed', type=int, help='override ensemble seed')
        p.add_argument('--horizon', type=int, help='override horizon N')
        if name == 'attack':
            p.add_argument('--target', required=True, help='one of ' + ', '.join(ADC_NAMES))
        if name == 'sweep':
            p.add_argument('--jobs', type=int, default=1, help='parallel grid points')
    parser.add_argument('-v', '--verbose', action='store_true')
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse already printed the message; --help exits with 0
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        cfg = load_config(args.config).with_overrides(args.seed, args.horizon)
        if args.command == 'attack' and args.target not in ADC_NAMES:
            raise ConfigError(f"unknown target {args.target!r}; expected one of {ADC_NAMES}")
        if args.out:
            os.makedirs(args.out, exist_ok=True)
        if args.command == 'certify':
            return cmd_certify(cfg, args.out)
        if args.command == 'simulate':
            return cmd_simulate(cfg, args.out)
        if args.command == 'attack':
            return cmd_attack(cfg, args.out, args.target)
        return cmd_sweep(cfg, args.out, args.jobs)
    except ConfigError as exc:
        print(f"dsmopt: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DsmError, ValueError, OSError) as exc:
        log.debug('run failed', exc_info=True)
        print(f"dsmopt: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
