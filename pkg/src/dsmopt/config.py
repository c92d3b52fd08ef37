"""Experiment configuration files (INI style).

Example::

    [filter]
    preset = dsm2            ; or give a, b, c:
    # a = 2 -1; 1 0          ; rows separated by ';'
    # b = 1 0
    # c = 1 0

    [quantizer]
    delta = 0.5
    levels = 4               ; integer or inf

    [run]
    phi = abs                ; abs | square
    horizon = 100000
    window = 1000            ; optional, defaults to ceil(horizon/2)
    adc = greedy             ; greedy | dsm-loop | classical-dsm1 | memoryless

    [ensemble]
    kind = iid-uniform       ; zeros | constant | iid-uniform | sinusoid | adversarial
    seed = 42
    value = 0.3              ; constant
    frequency = 0.01         ; sinusoid, cycles per sample
    amplitude = 0.9          ; sinusoid

    [sweep]
    param = delta            ; delta | levels
    values = 0.25, 0.5, 1.0
"""
import configparser
import math
import re
from dataclasses import dataclass, replace

import numpy as np

from . import ensembles
from .adc import ADC_NAMES
from .lti import StateSpace, dsm1_filter, dsm2_filter
from .performance import PhiFunction
from .quantizer import UniformQuantizer

__all__ = ['ConfigError', 'ExperimentConfig', 'load_config', 'parse_config',
           'PRESETS', 'ENSEMBLE_KINDS']

PRESETS = {'dsm1': dsm1_filter, 'dsm2': dsm2_filter}
ENSEMBLE_KINDS = ('zeros', 'constant', 'iid-uniform', 'sinusoid', 'adversarial')
U64_MAX = (1 << 64) - 1


class ConfigError(ValueError):
    """Malformed or out-of-range configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    filter: StateSpace
    filter_name: str
    delta: float
    levels: float
    phi: str = 'abs'
    horizon: int = 100_000
    window: int | None = None
    adc: str = 'greedy'
    ensemble: str = 'iid-uniform'
    seed: int = 0
    value: float = 0.0
    frequency: float = 0.01
    amplitude: float = 1.0
    sweep_param: str | None = None
    sweep_values: tuple = ()

    @property
    def quantizer(self):
        return UniformQuantizer(self.delta, self.levels)

    @property
    def phi_function(self):
        return PhiFunction.from_name(self.phi)

    def input_sequence(self):
        """Open-loop input for this config, or ``ensembles.ADVERSARIAL``."""
        n = self.horizon
        if self.ensemble == 'zeros':
            return ensembles.zeros(n)
        if self.ensemble == 'constant':
            return ensembles.constant(self.value, n)
        if self.ensemble == 'iid-uniform':
            return ensembles.iid_uniform(self.seed, n)
        if self.ensemble == 'sinusoid':
            return ensembles.sinusoid(self.frequency, self.amplitude, n)
        return ensembles.ADVERSARIAL

    def with_overrides(self, seed=None, horizon=None):
        cfg = self
        if seed is not None:
            if not 0 <= seed <= U64_MAX:
                raise ConfigError(f"seed {seed} is not an unsigned 64-bit integer")
            cfg = replace(cfg, seed=seed)
        if horizon is not None:
            if horizon < 1:
                raise ConfigError(f"horizon must be positive, got {horizon}")
            cfg = replace(cfg, horizon=horizon)
        if cfg.window is not None and cfg.window > cfg.horizon:
            raise ConfigError(f"window {cfg.window} exceeds horizon {cfg.horizon}")
        return cfg


def _numbers(text):
    parts = [p for p in re.split(r'[\s,]+', text.strip()) if p]
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise ConfigError(f"bad number list {text!r}") from exc


def _matrix(text):
    return [_numbers(row) for row in text.split(';') if row.strip()]


def _get(section, key, conv, default=None, required=False):
    if section is None or key not in section:
        if required:
            raise ConfigError(f"missing required field {key!r}")
        return default
    raw = section[key]
    try:
        return conv(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value for {key!r}: {raw!r}") from exc


def _levels(text):
    text = text.strip().lower()
    if text in ('inf', 'infinity'):
        return math.inf
    value = int(text)
    if value < 1:
        raise ValueError(text)
    return value


def _filter(section):
    if section is None:
        raise ConfigError("missing [filter] section")
    if 'preset' in section:
        name = section['preset'].strip()
        if name not in PRESETS:
            raise ConfigError(f"unknown preset {name!r}; expected one of {sorted(PRESETS)}")
        return PRESETS[name](), name
    for key in 'abc':
        if key not in section:
            raise ConfigError(f"[filter] needs a preset or all of a, b, c (missing {key!r})")
    try:
        filt = StateSpace(_matrix(section['a']), _numbers(section['b']),
                          _numbers(section['c']))
    except ValueError as exc:
        raise ConfigError(f"invalid filter matrices: {exc}") from exc
    return filt, 'custom'


def parse_config(text):
    """Parse and validate config text; raises :class:`ConfigError`."""
    cp = configparser.ConfigParser(inline_comment_prefixes=(';', '#'))
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc
    sec = lambda name: cp[name] if cp.has_section(name) else None

    filt, name = _filter(sec('filter'))
    quant = sec('quantizer')
    if quant is None:
        raise ConfigError("missing [quantizer] section")
    delta = _get(quant, 'delta', float, required=True)
    levels = _get(quant, 'levels', _levels, required=True)
    if not (math.isfinite(delta) and delta > 0):
        raise ConfigError(f"delta must be positive, got {delta}")

    run = sec('run')
    phi = _get(run, 'phi', str.strip, 'abs')
    if phi not in ('abs', 'square'):
        raise ConfigError(f"phi must be 'abs' or 'square', got {phi!r}")
    horizon = _get(run, 'horizon', int, 100_000)
    window = _get(run, 'window', int)
    adc = _get(run, 'adc', str.strip, 'greedy')
    if adc not in ADC_NAMES:
        raise ConfigError(f"unknown adc {adc!r}; expected one of {ADC_NAMES}")
    if horizon < 1:
        raise ConfigError(f"horizon must be positive, got {horizon}")
    if window is not None and not 1 <= window <= horizon:
        raise ConfigError(f"window must be in [1, horizon], got {window}")

    ens = sec('ensemble')
    kind = _get(ens, 'kind', str.strip, 'iid-uniform')
    if kind not in ENSEMBLE_KINDS:
        raise ConfigError(f"unknown ensemble kind {kind!r}; expected one of {ENSEMBLE_KINDS}")
    seed = _get(ens, 'seed', int, 0)
    if not 0 <= seed <= U64_MAX:
        raise ConfigError(f"seed {seed} is not an unsigned 64-bit integer")
    value = _get(ens, 'value', float, 0.0)
    frequency = _get(ens, 'frequency', float, 0.01)
    amplitude = _get(ens, 'amplitude', float, 1.0)
    if not -1.0 <= value <= 1.0:
        raise ConfigError(f"constant value {value} outside [-1, 1]")
    if not 0.0 <= amplitude <= 1.0:
        raise ConfigError(f"amplitude {amplitude} outside [0, 1]")
    if not np.isfinite(frequency):
        raise ConfigError("frequency must be finite")

    sweep = sec('sweep')
    param, values = None, ()
    if sweep is not None:
        param = _get(sweep, 'param', str.strip, required=True)
        if param in ('M', 'm'):
            param = 'levels'
        if param not in ('delta', 'levels'):
            raise ConfigError(f"sweep param must be 'delta' or 'levels', got {param!r}")
        conv = float if param == 'delta' else _levels
        raw = [p for p in re.split(r'[\s,]+', sweep.get('values', '').strip()) if p]
        try:
            values = tuple(conv(p) for p in raw)
        except ValueError as exc:
            raise ConfigError(f"bad sweep values {sweep.get('values')!r}") from exc
        if param == 'delta' and any(not (math.isfinite(v) and v > 0) for v in values):
            raise ConfigError("sweep delta values must be positive")

    return ExperimentConfig(
        filter=filt, filter_name=name, delta=delta, levels=levels, phi=phi,
        horizon=horizon, window=window, adc=adc, ensemble=kind, seed=seed,
        value=value, frequency=frequency, amplitude=amplitude,
        sweep_param=param, sweep_values=values)


def load_config(path):
    try:
        with open(path, encoding='utf-8') as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)
