"""Logical-qubit observables under global and local Gaussian dephasing.

The dephased density matrix is never materialized: dephasing is diagonal,
so an operator expectation only pairs basis states (a, a ^ x_mask), each
damped by a factor depending on the magnetization difference (global
noise) or the Hamming distance (local noise) of the pair.

The Monte Carlo oracle averages pure-state expectations over explicitly
sampled phase trajectories; the accumulated phase of delta-correlated
Gaussian noise over time t is Normal(0, gamma*t). Samples are drawn from
a counter-based stream keyed by (seed, sample index), so partitioned
evaluation reproduces the serial result bit for bit.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import ndtri

from . import pauli
from .engine import LogicalSet, codeword_zero
from .lattice import CodeSpec
from .pauli import PauliOperator, apply, multiply
from .states import PureState

KINDS = ("global", "local")
REALNESS_TOL = 1e-10


@dataclass(frozen=True)
class NoiseModel:
    """Dephasing kind, strength gamma = <B(0)^2>, and an exponent multiplier.

    convention rescales the decay exponent (and the Monte Carlo phase
    variance to match); the default 1 is the first-principles engine.
    """

    kind: str
    gamma: float
    convention: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.gamma < 0:
            raise ValueError("gamma must be nonnegative")
        if self.convention <= 0:
            raise ValueError("convention must be positive")


@dataclass(frozen=True)
class ObservableRecord:
    """One sample of logical Bloch coordinates and leakage expectations."""

    t: float
    r_x: float
    r_y: float
    r_z: float
    p_x: float
    p_y: float
    p_z: float
    se_r_x: Optional[float] = None
    se_r_y: Optional[float] = None
    se_r_z: Optional[float] = None
    se_p_x: Optional[float] = None
    se_p_y: Optional[float] = None
    se_p_z: Optional[float] = None

    def values(self) -> Tuple[float, ...]:
        return (self.r_x, self.r_y, self.r_z, self.p_x, self.p_y, self.p_z)

    def errors(self) -> Tuple[Optional[float], ...]:
        return (
            self.se_r_x,
            self.se_r_y,
            self.se_r_z,
            self.se_p_x,
            self.se_p_y,
            self.se_p_z,
        )


def magnetization(index: int, n: int) -> int:
    """2*(number of 0 bits) - n for a computational basis index."""
    return n - 2 * int(index).bit_count()


def decoherence_factor(a: int, b: int, model: NoiseModel, t: float, n: int) -> float:
    """Damping of the (a, b) density-matrix element after time t."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    gt = model.convention * model.gamma * t
    if model.kind == "global":
        dm = magnetization(a, n) - magnetization(b, n)
        return math.exp(-dm * dm * gt / 8.0)
    dn = int(a ^ b).bit_count()
    return math.exp(-dn * gt / 2.0)


def prepare_logical_state(
    theta: float, phi: float, zero_l: PureState, one_l: PureState
) -> PureState:
    """cos(theta/2)|0_L> + e^{i phi} sin(theta/2)|1_L>."""
    if zero_l.n != one_l.n:
        raise ValueError("basis states act on different qubit counts")
    for s in (zero_l, one_l):
        if abs(s.norm() - 1.0) > 1e-12:
            raise ValueError("basis states must be normalized")
    if abs(zero_l.inner(one_l)) > 1e-12:
        raise ValueError("basis states must be orthogonal")
    amps = (
        math.cos(theta / 2.0) * zero_l.amplitudes
        + np.exp(1j * phi) * math.sin(theta / 2.0) * one_l.amplitudes
    )
    return PureState(zero_l.n, amps)


def dephased_pauli_expectation(
    state: PureState, op: PauliOperator, model: NoiseModel, t: float
) -> complex:
    """Tr[rho' op] for the dephased density matrix of state, in O(2^n)."""
    if op.n != state.n:
        raise ValueError("operator and state qubit counts differ")
    if t < 0:
        raise ValueError("t must be nonnegative")
    n = state.n
    psi = state.amplitudes
    idx = np.arange(1 << n, dtype=np.uint64)
    flipped = idx ^ np.uint64(op.x_mask)
    signs = 1.0 - 2.0 * (
        np.bitwise_count(idx & np.uint64(op.z_mask)).astype(np.int64) & 1
    )
    gt = model.convention * model.gamma * t
    if model.kind == "global":
        pops = np.bitwise_count(idx).astype(np.int64)
        mvals = n - 2 * pops
        dm = mvals[flipped] - mvals
        factors = np.exp(-(dm.astype(np.float64) ** 2) * gt / 8.0)
    else:
        dn = int(op.x_mask).bit_count()
        factors = math.exp(-dn * gt / 2.0)
    terms = np.conj(psi[flipped]) * signs * psi * factors
    return complex((1j) ** op.phase * terms.sum())


def code_space_operator(
    code: CodeSpec, normalization: str = "paper"
) -> List[Tuple[float, PauliOperator]]:
    """Expansion of prod_i (I + P_i) into 2^m weighted Pauli terms.

    normalization 'paper' divides by 2^n, 'projector' by 2^m (the latter
    makes the operator an idempotent projector).
    """
    if normalization not in ("paper", "projector"):
        raise ValueError("normalization must be 'paper' or 'projector'")
    m = code.m
    if m > 16:
        raise ValueError(f"expansion of 2^{m} terms is too large")
    coeff = 2.0 ** (-code.n) if normalization == "paper" else 2.0 ** (-m)
    terms = []
    for picks in itertools.product((0, 1), repeat=m):
        term = pauli.identity(code.n)
        for pick, s in zip(picks, code.stabilizers):
            if pick:
                term = multiply(term, s)
        terms.append((coeff, term))
    return terms


def _frame_operators(
    code: CodeSpec, logicals: LogicalSet, pair_index: int
) -> Tuple[PauliOperator, PauliOperator, PauliOperator]:
    """(Xbar, Ybar, Zbar) for the designated pair, with Ybar = i*Zbar*Xbar."""
    xbar, zbar = logicals.pairs[pair_index]
    prod = multiply(zbar, xbar)
    ybar = PauliOperator(prod.n, prod.x_mask, prod.z_mask, prod.phase + 1)
    return xbar, ybar, zbar


def _observable_terms(
    code: CodeSpec, logicals: LogicalSet, pair_index: int
) -> List[List[Tuple[complex, PauliOperator]]]:
    """Pauli expansions of the six observables (r_x, r_y, r_z, p_x, p_y, p_z)."""
    xbar, ybar, zbar = _frame_operators(code, logicals, pair_index)
    pc_terms = code_space_operator(code, "paper")
    observables: List[List[Tuple[complex, PauliOperator]]] = []
    for lbar in (xbar, ybar, zbar):
        observables.append([(1.0 + 0j, lbar)])
    for lbar in (xbar, ybar, zbar):
        observables.append([(c + 0j, multiply(lbar, term)) for c, term in pc_terms])
    return observables


def _real_or_raise(value: complex, what: str) -> float:
    if abs(value.imag) > REALNESS_TOL:
        raise ValueError(f"{what} has imaginary part {value.imag:.3e}")
    return value.real


def bloch_and_leakage(
    code: CodeSpec,
    logicals: LogicalSet,
    theta: float,
    phi: float,
    model: NoiseModel,
    t_grid: Sequence[float],
    pair_index: int = 0,
) -> List[ObservableRecord]:
    """Analytic-factor engine: Bloch coordinates and leakage on a time grid."""
    zero_l = codeword_zero(code)
    xbar = logicals.pairs[pair_index][0]
    one_l = apply(xbar, zero_l)
    state = prepare_logical_state(theta, phi, zero_l, one_l)
    observables = _observable_terms(code, logicals, pair_index)
    names = ("r_x", "r_y", "r_z", "p_x", "p_y", "p_z")
    records = []
    for t in t_grid:
        vals = []
        for name, terms in zip(names, observables):
            total = sum(
                c * dephased_pauli_expectation(state, op, model, t)
                for c, op in terms
            )
            vals.append(_real_or_raise(total, name))
        records.append(ObservableRecord(t, *vals))
    return records


def closed_form(
    kind: str, theta: float, phi: float, gamma: float, t: float
) -> ObservableRecord:
    """The published closed-form observables for the single unit cell."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    st, ct = math.sin(theta), math.cos(theta)
    cp, sp = math.cos(phi), math.sin(phi)
    e2 = math.exp(-2.0 * gamma * t)
    e8 = math.exp(-8.0 * gamma * t)
    if kind == "global":
        return ObservableRecord(
            t=t,
            r_x=0.5 * (1.0 + e2) * st * cp,
            r_y=-0.5 * (1.0 + e2) * st * sp,
            r_z=ct,
            p_x=(3.0 + 4.0 * e2 + e8) / 32.0 * st * cp,
            p_y=-(3.0 + 4.0 * e2 + e8) / 32.0 * st * sp,
            p_z=(1.0 + 9.0 * ct - 4.0 * e2 * (1.0 - ct) + 3.0 * e8 * (1.0 + ct)) / 64.0,
        )
    return ObservableRecord(
        t=t,
        r_x=e2 * st * cp,
        r_y=-e2 * st * sp,
        r_z=ct,
        p_x=(e2 + e8) / 8.0 * st * cp,
        p_y=-(e2 + e8) / 8.0 * st * sp,
        p_z=(1.0 + 3.0 * e8) / 16.0 * ct,
    )


# --- Monte Carlo oracle -------------------------------------------------------


class _McContext:
    """Support-restricted sampling context for one (code, logical frame).

    Every observable preserves the union of the |0_L> and |1_L> supports,
    so trajectories are tracked on those ~2^(m_x + 1) basis states only.
    """

    def __init__(self, code: CodeSpec, logicals: LogicalSet, pair_index: int = 0):
        self.n = code.n
        zero_l = codeword_zero(code)
        xbar = logicals.pairs[pair_index][0]
        one_l = apply(xbar, zero_l)
        support = np.flatnonzero(
            (np.abs(zero_l.amplitudes) > 1e-14) | (np.abs(one_l.amplitudes) > 1e-14)
        ).astype(np.uint64)
        self.support = support
        pos = {int(a): i for i, a in enumerate(support)}
        b = np.stack(
            [zero_l.amplitudes[support], one_l.amplitudes[support]]
        )  # (2, S)
        observables = _observable_terms(code, logicals, pair_index)
        s_count = len(support)
        # C[obs][j][k][p, q]: contribution of conj(u_p) u_q to <b_j|U' O U|b_k>
        self.coeff: List[List[List[np.ndarray]]] = []
        for terms in observables:
            per_obs = [
                [np.zeros((s_count, s_count), dtype=np.complex128) for _ in range(2)]
                for _ in range(2)
            ]
            for c, op in terms:
                ph = (1j) ** op.phase
                for q_in, a in enumerate(support.tolist()):
                    out = a ^ op.x_mask
                    p_out = pos.get(out)
                    if p_out is None:
                        raise AssertionError("observable leaves the tracked support")
                    sign = -1.0 if (a & op.z_mask).bit_count() & 1 else 1.0
                    factor = c * ph * sign
                    for j in range(2):
                        for k in range(2):
                            per_obs[j][k][p_out, q_in] += (
                                factor * np.conj(b[j, p_out]) * b[k, q_in]
                            )
            self.coeff.append(per_obs)
        # diagonal noise couplings on the support
        pops = np.bitwise_count(support).astype(np.int64)
        self.half_magnetization = (self.n - 2 * pops) / 2.0  # (S,)
        bits = (support[None, :] >> np.arange(self.n, dtype=np.uint64)[:, None]) & np.uint64(1)
        self.half_spin = (1.0 - 2.0 * bits.astype(np.float64)) / 2.0  # (n, S)

    def words_per_sample(self, kind: str) -> int:
        return 1 if kind == "global" else self.n

    def phase_matrix(
        self, model: NoiseModel, t: float, seed: int, start: int, count: int
    ) -> np.ndarray:
        """U[s, p] = diagonal evolution factor at support index p for sample s."""
        w = self.words_per_sample(model.kind)
        bitgen = np.random.Philox(key=seed)
        bitgen.advance(start * w)
        gen = np.random.Generator(bitgen)
        uniforms = gen.random((count, w))
        np.clip(uniforms, 1e-300, 1.0 - 1e-16, out=uniforms)
        scale = math.sqrt(model.convention * model.gamma * t) if t > 0 else 0.0
        normals = ndtri(uniforms) * scale
        if model.kind == "global":
            angle = normals[:, 0:1] * self.half_magnetization[None, :]
        else:
            angle = normals @ self.half_spin
        return np.exp(-1j * angle)


def _batch_moments(
    ctx: _McContext,
    model: NoiseModel,
    t: float,
    seed: int,
    start: int,
    count: int,
    points: Sequence[Tuple[float, float]],
) -> np.ndarray:
    """(len(points), 6, 2) array of per-batch [sum v, sum v^2]."""
    u = ctx.phase_matrix(model, t, seed, start, count)
    uc = np.conj(u)
    t_jk = np.empty((6, 2, 2, count), dtype=np.complex128)
    for o in range(6):
        for j in range(2):
            for k in range(2):
                v = u @ ctx.coeff[o][j][k].T  # (count, S)
                t_jk[o, j, k] = (uc * v).sum(axis=1)
    out = np.empty((len(points), 6, 2))
    for ip, (theta, phi) in enumerate(points):
        c0 = math.cos(theta / 2.0)
        c1 = complex(np.exp(1j * phi)) * math.sin(theta / 2.0)
        w00 = c0 * c0
        w01 = c0 * c1
        w10 = np.conj(c1) * c0
        w11 = abs(c1) ** 2
        for o in range(6):
            v = (
                w00 * t_jk[o, 0, 0]
                + w01 * t_jk[o, 0, 1]
                + w10 * t_jk[o, 1, 0]
                + w11 * t_jk[o, 1, 1]
            ).real
            out[ip, o, 0] = v.sum()
            out[ip, o, 1] = (v * v).sum()
    return out


def monte_carlo_grid(
    code: CodeSpec,
    logicals: LogicalSet,
    points: Sequence[Tuple[float, float]],
    model: NoiseModel,
    t: float,
    samples: int,
    seed: int,
    pair_index: int = 0,
    threads: int = 1,
    batch_size: int = 1 << 16,
) -> List[ObservableRecord]:
    """Monte Carlo means and standard errors for several (theta, phi) points.

    One common set of phase trajectories serves every point; results are
    bit-identical for any thread count or batch partitioning.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    ctx = _McContext(code, logicals, pair_index)
    starts = list(range(0, samples, batch_size))

    def run(start: int) -> np.ndarray:
        return _batch_moments(
            ctx, model, t, seed, start, min(batch_size, samples - start), points
        )

    if threads <= 1:
        partials = [run(s) for s in starts]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(run, starts))
    total = np.zeros((len(points), 6, 2))
    for part in partials:  # fixed batch order => deterministic reduction
        total += part
    records = []
    for ip in range(len(points)):
        means = total[ip, :, 0] / samples
        if samples > 1:
            var = (total[ip, :, 1] - samples * means**2) / (samples - 1)
            ses = np.sqrt(np.maximum(var, 0.0) / samples)
        else:
            ses = np.zeros(6)
        records.append(ObservableRecord(t, *means.tolist(), *ses.tolist()))
    return records


def monte_carlo_oracle(
    code: CodeSpec,
    logicals: LogicalSet,
    theta: float,
    phi: float,
    model: NoiseModel,
    t: float,
    samples: int,
    seed: int,
    pair_index: int = 0,
    threads: int = 1,
) -> ObservableRecord:
    """Trajectory-averaged observables with standard errors at one point."""
    return monte_carlo_grid(
        code,
        logicals,
        [(theta, phi)],
        model,
        t,
        samples,
        seed,
        pair_index=pair_index,
        threads=threads,
    )[0]


# --- sweep CSV ----------------------------------------------------------------

SWEEP_COLUMNS = (
    "t,gamma,theta,phi,kind,source,"
    "r_x,r_y,r_z,p_x,p_y,p_z,se_r_x,se_r_y,se_r_z,se_p_x,se_p_y,se_p_z"
)


def format_float(value: float) -> str:
    """Shortest decimal that round-trips the double."""
    return repr(float(value))


def sweep_row(
    record: ObservableRecord,
    gamma: float,
    theta: float,
    phi: float,
    kind: str,
    source: str,
) -> str:
    fields = [
        format_float(record.t),
        format_float(gamma),
        format_float(theta),
        format_float(phi),
        kind,
        source,
    ]
    fields += [format_float(v) for v in record.values()]
    fields += ["" if e is None else format_float(e) for e in record.errors()]
    return ",".join(fields)
