# -*- coding: utf-8 -*-
"""
Monte Carlo bit error rate of square orthogonal codes over flat Rayleigh
fading.

Each codeword sees one channel H (n_t x n_r, i.i.d. unit-variance complex
Gaussian entries), the receiver knows H and detects every symbol separately:
because the equivalent real channel of an orthogonal code has orthogonal
columns, matched filtering followed by nearest-point decisions is maximum
likelihood.

Power convention: dispersion matrices are scaled to unit Gram and the
codeword by sqrt(p / k), so the average power per antenna per slot is 1 for
every code. The noise variance per receive antenna is
N0 = n_t * 10 ** (-snr_db / 10).

Randomness: trials are cut into blocks of `block_size` codewords and block b
draws from ``numpy.random.SeedSequence(seed, spawn_key=(b,))``. Error counts
are integers summed over blocks, so results do not depend on how many
worker threads ran the blocks.

"""

import csv
import io
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from aodkit.codes import SymbolicCode, coefficient_arrays, fixture
from aodkit.errors import ConsistencyError
from aodkit.power import resolve_constellations, describe_constellations

ORTHOGONALITY_TOL = 1e-9

class SimConfig:
    """
    Arguments of one BER run.

    Parameters
    ----------
    code : SymbolicCode or str
        A code or a catalog name.
    constellations : str, Constellation or sequence, optional
        As accepted by `aodkit.power.power_report`. Default 'qpsk'.
    n_r : int, optional
        Receive antennas. Default 1.
    snr_grid_db : sequence of float, optional
        SNR points in dB.
    trials : int, optional
        Codewords per SNR point.
    seed : int, optional
        Seed in [0, 2**64).
    block_size : int, optional
        Codewords per random stream block.
    check_every : int, optional
        Every `check_every`-th channel draw of a block has its equivalent
        channel checked for orthogonality; 0 disables the check.

    Raises
    ------
    ValueError
        Invalid trials, n_r, SNR values, seed or block size.

    """

    def __init__(self, code, constellations='qpsk', n_r=1, snr_grid_db=(10.0,),
                 trials=1000, seed=0, block_size=1000, check_every=100):
        if isinstance(code, str):
            code = fixture(code)
        if not isinstance(code, SymbolicCode):
            raise TypeError(f'code must be a SymbolicCode or a name, got {code!r}')
        snr_grid_db = tuple(float(s) for s in snr_grid_db)
        if not snr_grid_db or not all(math.isfinite(s) for s in snr_grid_db):
            raise ValueError(f'SNR values must be finite, got {snr_grid_db}')
        if trials < 1:
            raise ValueError(f'trials must be >= 1, got {trials}')
        if n_r < 1:
            raise ValueError(f'n_r must be >= 1, got {n_r}')
        if block_size < 1:
            raise ValueError(f'block_size must be >= 1, got {block_size}')
        if not 0 <= seed < 2 ** 64:
            raise ValueError(f'seed must be a 64-bit unsigned integer, got {seed}')
        self.code = code
        self.constellations = resolve_constellations(constellations, code.k)
        self.n_r = n_r
        self.snr_grid_db = snr_grid_db
        self.trials = trials
        self.seed = seed
        self.block_size = block_size
        self.check_every = check_every

    @property
    def bits_per_codeword(self):
        return sum(c.bits_per_symbol for c in self.constellations)

    def blocks(self):
        """(block index, number of trials) pairs covering all trials."""
        full, rest = divmod(self.trials, self.block_size)
        out = [(b, self.block_size) for b in range(full)]
        if rest:
            out.append((full, rest))
        return out

@dataclass(frozen=True)
class BerPoint:
    snr_db: float
    trials: int
    bit_errors: int
    ber: float
    std_err: float

@dataclass(frozen=True)
class BerResult:
    code: str
    seed: int
    constellation_spec: str
    points: tuple

    def bers(self):
        return [p.ber for p in self.points]

    def to_delimited(self, delimiter=','):
        buf = io.StringIO()
        writer = csv.writer(buf, delimiter=delimiter, lineterminator='\n')
        writer.writerow(['snr_db', 'trials', 'bit_errors', 'ber', 'std_err',
                         'code', 'seed'])
        for p in self.points:
            writer.writerow([f'{p.snr_db:g}', p.trials, p.bit_errors,
                             f'{p.ber:.6e}', f'{p.std_err:.6e}', self.code, self.seed])
        return buf.getvalue()

def unit_dispersion(code):
    """
    Coefficient arrays of a code scaled so every dispersion matrix has unit
    Gram, as float arrays (AR, AI) of shape (k, p, n_t).
    """
    ar, ai = coefficient_arrays(code)
    def unit(mats):
        out = np.empty_like(mats)
        for i, m in enumerate(mats):
            c = np.real(np.trace(m.conj().T @ m)) / m.shape[1]
            if c <= 0:
                raise ConsistencyError(f'{code.label or "code"} has an empty '
                                       f'dispersion matrix for x{i + 1}')
            out[i] = m / math.sqrt(c)
        return out
    return unit(ar), unit(ai)

def _equivalent(ar, ai, h):
    """Stacked real equivalent channel, columns ordered x1R, x1I, x2R, ..."""
    cols = []
    for a, b in zip(ar, ai):
        for m in (a, b):
            v = (m @ h).reshape(-1)
            cols.append(np.concatenate([v.real, v.imag]))
    return np.stack(cols, axis=1)

def _check_orthogonal(eq, h, tol, label):
    energy = float(np.sum(np.abs(h) ** 2))
    gram = eq.T @ eq
    err = np.max(np.abs(gram - energy * np.eye(gram.shape[0])))
    if err > tol * max(1.0, energy):
        raise ConsistencyError(f'equivalent channel of {label or "code"} is not '
                               f'orthogonal (max Gram error {err:.3g})')

def equivalent_channel(code, h, tol=ORTHOGONALITY_TOL):
    """
    Real matrix mapping the stacked symbol parts to the stacked received
    signal.

    Parameters
    ----------
    code : SymbolicCode
    h : array_like
        n_t x n_r complex channel.
    tol : float, optional
        Allowed deviation of the column Gram from ||h||^2 I, relative to
        max(1, ||h||^2).

    Returns
    -------
    numpy.ndarray
        Shape (2 p n_r, 2k). Column 2i is vec(A_i h), column 2i+1 is
        vec(j B_i h), each as [real parts, imaginary parts], with unit Gram
        dispersion matrices.

    Raises
    ------
    ConsistencyError
        Columns are not orthogonal with equal norms.

    """
    h = np.asarray(h, dtype=complex)
    if h.ndim == 1:
        h = h.reshape(-1, 1)
    if h.shape[0] != code.n_t:
        raise ValueError(f'channel has {h.shape[0]} transmit rows, code has '
                         f'{code.n_t} antennas')
    ar, ai = unit_dispersion(code)
    eq = _equivalent(ar, ai, h)
    _check_orthogonal(eq, h, tol, code.label)
    return eq

def _hamming_table(labels):
    arr = np.array(labels)
    return (arr[:, None, :] != arr[None, :, :]).sum(axis=2)

class _Context:
    """Arrays shared by all blocks of one run."""

    def __init__(self, cfg):
        code = cfg.code
        self.cfg = cfg
        self.ar, self.ai = unit_dispersion(code)
        self.gamma = math.sqrt(code.p / code.k)
        self.points = [c.complex_points() for c in cfg.constellations]
        self.distances = [_hamming_table(c.labels) for c in cfg.constellations]
        self.n0 = [code.n_t * 10 ** (-snr / 10) for snr in cfg.snr_grid_db]

    def run_block(self, block, size):
        cfg = self.cfg
        code = cfg.code
        rng = np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(block,)))
        shape = (size, code.n_t, cfg.n_r)
        h = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)
        idx = np.stack([rng.integers(0, len(p), size=size) for p in self.points], axis=1)
        xs = np.stack([p[idx[:, i]] for i, p in enumerate(self.points)], axis=1)
        nshape = (size, code.p, cfg.n_r)
        noise = (rng.standard_normal(nshape) + 1j * rng.standard_normal(nshape)) / math.sqrt(2)

        if cfg.check_every:
            for b in range(0, size, cfg.check_every):
                _check_orthogonal(_equivalent(self.ar, self.ai, h[b]), h[b],
                                  ORTHOGONALITY_TOL, code.label)

        g = self.gamma * (np.einsum('bk,kpn->bpn', xs.real, self.ar)
                          + np.einsum('bk,kpn->bpn', xs.imag, self.ai))
        signal = g @ h
        ur = self.gamma * np.einsum('kpn,bnr->bkpr', self.ar, h)
        ui = self.gamma * np.einsum('kpn,bnr->bkpr', self.ai, h)
        energy = self.gamma ** 2 * np.sum(np.abs(h) ** 2, axis=(1, 2))

        errors = []
        for n0 in self.n0:
            y = signal + math.sqrt(n0) * noise
            zr = np.einsum('bkpr,bpr->bk', ur.conj(), y).real
            zi = np.einsum('bkpr,bpr->bk', ui.conj(), y).real
            est = (zr + 1j * zi) / energy[:, None]
            count = 0
            for i, pts in enumerate(self.points):
                det = np.argmin(np.abs(est[:, i, None] - pts[None, :]) ** 2, axis=1)
                count += int(self.distances[i][idx[:, i], det].sum())
            errors.append(count)
        return errors

def run_ber(cfg, workers=1):
    """
    Simulate every SNR point of a configuration.

    Parameters
    ----------
    cfg : SimConfig
    workers : int, optional
        Threads running blocks concurrently. Results are identical for any
        value.

    Returns
    -------
    BerResult

    Raises
    ------
    ConsistencyError
        A sampled equivalent channel is not orthogonal.

    Examples
    --------
    >>> cfg = SimConfig('G4', snr_grid_db=[200], trials=50, seed=1)
    >>> run_ber(cfg).points[0].bit_errors
    0

    """
    ctx = _Context(cfg)
    blocks = cfg.blocks()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_block = list(pool.map(lambda bs: ctx.run_block(*bs), blocks))
    else:
        per_block = [ctx.run_block(b, size) for b, size in blocks]
    totals = np.sum(np.array(per_block, dtype=np.int64), axis=0)
    total_bits = cfg.trials * cfg.bits_per_codeword
    points = []
    for snr, errs in zip(cfg.snr_grid_db, totals.tolist()):
        ber = errs / total_bits
        points.append(BerPoint(snr, cfg.trials, errs, ber,
                               math.sqrt(ber * (1 - ber) / total_bits)))
    return BerResult(cfg.code.label, cfg.seed,
                     describe_constellations(cfg.constellations), tuple(points))

def average_codeword_energy(code, constellations='qpsk', max_tuples=10 ** 6):
    """
    Mean of sum_{t,m} |G[t, m]|^2 over all symbol tuples after the
    simulator's normalization; p * n_t for an orthogonal code.
    """
    consts = resolve_constellations(constellations, code.k)
    count = math.prod(len(c) for c in consts)
    if count > max_tuples:
        warnings.warn(f'averaging over {count} tuples; this may be slow')
    ar, ai = unit_dispersion(code)
    gamma = math.sqrt(code.p / code.k)
    grids = np.meshgrid(*[c.complex_points() for c in consts], indexing='ij')
    xs = np.stack([g.reshape(-1) for g in grids], axis=1)
    g = gamma * (np.einsum('bk,kpn->bpn', xs.real, ar)
                 + np.einsum('bk,kpn->bpn', xs.imag, ai))
    return float(np.mean(np.sum(np.abs(g) ** 2, axis=(1, 2))))

def snr_grid(text):
    """
    Parse 'start:step:stop' (stop included) or a comma list into SNR values.

    >>> snr_grid('0:6:12')
    [0.0, 6.0, 12.0]

    """
    if ':' in text:
        try:
            start, step, stop = (float(v) for v in text.split(':'))
        except ValueError:
            raise ValueError(f'SNR range must be start:step:stop, got {text!r}') from None
        if step <= 0 or stop < start:
            raise ValueError(f'empty SNR range {text!r}')
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [start + i * step for i in range(n)]
    return [float(v) for v in text.split(',') if v.strip()]
