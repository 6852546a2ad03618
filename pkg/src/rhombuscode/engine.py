"""Codewords, logical operator synthesis/verification, and code distance.

Distance is computed by two independent routes:

* a symplectic search over sign-free Paulis (zero syndrome, outside the
  stabilizer group), and
* an error-discrimination oracle that evaluates the codeword matrix
  M_ij = <psi_i|E|psi_j> over explicit codeword amplitudes and flags any
  E for which M is not a scalar multiple of the identity.

Both must agree; verification never trusts declared parameters.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import gf2, pauli
from .lattice import CodeSpec
from .pauli import PauliOperator, apply, commutes, multiply, to_string, weight
from .states import PureState

KL_TOL = 1e-10
EXHAUSTIVE_COSET_CAP = 1 << 20


@dataclass(frozen=True)
class LogicalSet:
    """Pairs of anticommuting logical representatives, one pair per encoded qubit."""

    pairs: Tuple[Tuple[PauliOperator, PauliOperator], ...]
    certified_minimal: bool = True

    @property
    def k(self) -> int:
        return len(self.pairs)


@dataclass
class VerificationReport:
    commuting: bool
    rank: int
    k: int
    distance: Optional[int] = None
    witness: Optional[str] = None
    logical_violations: List[str] = field(default_factory=list)
    degenerate: List[str] = field(default_factory=list)

    @property
    def logicals_ok(self) -> bool:
        return not self.logical_violations and not self.degenerate

    def to_json(self) -> str:
        doc = {
            "commuting": self.commuting,
            "rank": self.rank,
            "k": self.k,
            "distance": self.distance,
            "witness": self.witness,
            "logical_violations": self.logical_violations + self.degenerate,
        }
        return json.dumps(doc, indent=2) + "\n"


def _symplectic_rows(code: CodeSpec) -> List[int]:
    return [pauli.symplectic_vector(s) for s in code.stabilizers]


def stabilizer_rank(code: CodeSpec) -> int:
    """GF(2) rank of the stabilizer generators in symplectic form."""
    return gf2.rank(_symplectic_rows(code), 2 * code.n)


def require_independent(code: CodeSpec) -> int:
    """Return k = n - m, raising when the generators are dependent."""
    r = stabilizer_rank(code)
    if r != code.m:
        raise ValueError(
            f"dependent stabilizer generators: rank {r} < count {code.m}"
        )
    return code.n - r


# --- codewords --------------------------------------------------------------


def codeword_zero(code: CodeSpec) -> PureState:
    """Normalized projection of |0...0> onto the code space.

    For the CSS codes built here this is the equal superposition over the
    X-stabilizer-group orbit of the all-zeros string.
    """
    require_independent(code)
    state = PureState.basis(code.n, 0)
    for s in code.stabilizers:
        projected = PureState(code.n, state.amplitudes + apply(s, state).amplitudes)
        if projected.norm() < 1e-9:
            raise ValueError(
                f"projector (I + {to_string(s)}) annihilates the seed state"
            )
        state = projected
    return state.normalized()


def logical_basis_state(
    code: CodeSpec, logicals: LogicalSet, bits: str
) -> PureState:
    """Apply the X-logicals selected by bits (bits[i] pairs with pairs[i])."""
    if len(bits) != logicals.k:
        raise ValueError(f"bit string length {len(bits)} != k = {logicals.k}")
    op = pauli.identity(code.n)
    for bit, (xbar, _) in zip(bits, logicals.pairs):
        if bit == "1":
            op = multiply(op, xbar)
        elif bit != "0":
            raise ValueError("bits must be a 0/1 string")
    return apply(op, codeword_zero(code))


# --- logical-set verification and synthesis ---------------------------------


def verify_logical_set(code: CodeSpec, logicals: LogicalSet) -> VerificationReport:
    """Check commutation with stabilizers, pairwise anticommutation, and
    flag representatives lying inside the stabilizer group."""
    rows = _symplectic_rows(code)
    rank = gf2.rank(rows, 2 * code.n)
    report = VerificationReport(
        commuting=all(
            commutes(a, b)
            for a, b in itertools.combinations(code.stabilizers, 2)
        ),
        rank=rank,
        k=code.n - rank,
    )
    pairs = logicals.pairs
    for i, (xbar, zbar) in enumerate(pairs, start=1):
        for name, op in (("Xbar", xbar), ("Zbar", zbar)):
            for s in code.stabilizers:
                if not commutes(op, s):
                    report.logical_violations.append(
                        f"{name}{i}={to_string(op)} anticommutes with stabilizer {to_string(s)}"
                    )
            if gf2.in_span(pauli.symplectic_vector(op), rows, 2 * code.n):
                report.degenerate.append(
                    f"{name}{i}={to_string(op)} lies in the stabilizer group"
                )
    for i in range(len(pairs)):
        for j in range(len(pairs)):
            want_anti = i == j
            got_anti = not commutes(pairs[i][0], pairs[j][1])
            if got_anti != want_anti:
                verb = "commutes" if want_anti else "anticommutes"
                report.logical_violations.append(
                    f"Xbar{i + 1} {verb} with Zbar{j + 1}"
                )
        for j in range(i + 1, len(pairs)):
            if not commutes(pairs[i][0], pairs[j][0]):
                report.logical_violations.append(
                    f"Xbar{i + 1} anticommutes with Xbar{j + 1}"
                )
            if not commutes(pairs[i][1], pairs[j][1]):
                report.logical_violations.append(
                    f"Zbar{i + 1} anticommutes with Zbar{j + 1}"
                )
    return report


def _quotient_basis(kernel: List[int], modulus: List[int], n_cols: int) -> List[int]:
    """Basis vectors of kernel that are independent modulo span(modulus)."""
    reduced, pivots = gf2.row_reduce(modulus, n_cols)
    reduced = list(reduced)
    pivots = list(pivots)
    out = []
    for v in kernel:
        rem = gf2.reduce_against(v, reduced, pivots)
        if rem:
            out.append(v)
            # extend the echelon basis with the new vector
            pc = (rem & -rem).bit_length() - 1
            reduced.append(rem)
            pivots.append(pc)
            order = sorted(range(len(pivots)), key=lambda t: pivots[t])
            reduced = [reduced[t] for t in order]
            pivots = [pivots[t] for t in order]
    return out


def _min_weight_coset_rep(mask: int, group_rows: List[int]) -> int:
    """Lowest-weight (then lexicographically smallest) element of mask + span(rows)."""
    best = mask
    best_w = best.bit_count()
    for r in range(1, 1 << len(group_rows)):
        v = mask
        sel = r
        while sel:
            j = (sel & -sel).bit_length() - 1
            v ^= group_rows[j]
            sel &= sel - 1
        w = v.bit_count()
        if w < best_w or (w == best_w and v < best):
            best, best_w = v, w
    return best


def find_logical_set(code: CodeSpec, minimize: bool = True) -> LogicalSet:
    """Deterministic CSS logical-pair synthesis.

    X representatives come from ker(H_Z) modulo rowspace(H_X) and Z
    representatives from ker(H_X) modulo rowspace(H_Z); the Z basis is
    then re-mixed over GF(2) so the pairing matrix is the identity.
    Representatives are weight-minimized over their stabilizer coset when
    the exhaustive scan is affordable.
    """
    if code.n > 24:
        raise ValueError("logical synthesis is capped at n <= 24")
    k = require_independent(code)
    h_x = [s.x_mask for s in code.stabilizers if s.is_x_type() and not s.is_identity()]
    h_z = [s.z_mask for s in code.stabilizers if s.is_z_type() and not s.is_identity()]

    lx = _quotient_basis(gf2.nullspace(h_z, code.n), h_x, code.n)
    lz = _quotient_basis(gf2.nullspace(h_x, code.n), h_z, code.n)
    if len(lx) != k or len(lz) != k:
        raise ValueError("logical space dimension mismatch (non-CSS input?)")

    pairing = [
        sum(((lx[i] & lz[j]).bit_count() & 1) << j for j in range(k))
        for i in range(k)
    ]
    inv = gf2.invert(pairing, k)
    lz_paired = []
    for i in range(k):
        v = 0
        for j in range(k):
            if (inv[j] >> i) & 1:
                v ^= lz[j]
        lz_paired.append(v)

    certified = True
    if minimize:
        if (1 << len(h_x)) * k <= EXHAUSTIVE_COSET_CAP:
            lx = [_min_weight_coset_rep(v, h_x) for v in lx]
            lz_paired = [_min_weight_coset_rep(v, h_z) for v in lz_paired]
        else:
            certified = False

    pairs = tuple(
        (PauliOperator(code.n, x_mask=x), PauliOperator(code.n, z_mask=z))
        for x, z in zip(lx, lz_paired)
    )
    result = LogicalSet(pairs, certified_minimal=certified)
    report = verify_logical_set(code, result)
    if not report.logicals_ok:
        raise AssertionError(
            "internal error: synthesized logicals fail verification: "
            + "; ".join(report.logical_violations + report.degenerate)
        )
    return result


# --- distance ---------------------------------------------------------------


def _candidate_paulis(support: Sequence[int], n: int) -> Iterable[PauliOperator]:
    for letters in itertools.product("XYZ", repeat=len(support)):
        x = z = 0
        for q, letter in zip(support, letters):
            bit = 1 << q
            if letter in ("X", "Y"):
                x |= bit
            if letter in ("Z", "Y"):
                z |= bit
        yield PauliOperator(n, x, z, 0)


def _scan_weight(
    code: CodeSpec,
    w: int,
    first_qubits: Sequence[int],
) -> Optional[PauliOperator]:
    """First zero-syndrome non-stabilizer of weight w whose lowest support
    qubit lies in first_qubits, in deterministic candidate order."""
    rows = _symplectic_rows(code)
    n = code.n
    # per-(qubit, letter) syndrome bitmask over the stabilizer list
    syndrome = {}
    for q in range(n):
        for letter, (hx, hz) in (("X", (1, 0)), ("Y", (1, 1)), ("Z", (0, 1))):
            op = PauliOperator(n, (1 << q) * hx, (1 << q) * hz)
            syndrome[(q, letter)] = sum(
                (0 if commutes(op, s) else 1) << i
                for i, s in enumerate(code.stabilizers)
            )
    for q0 in first_qubits:
        for rest in itertools.combinations(range(q0 + 1, n), w - 1):
            support = (q0,) + rest
            for letters in itertools.product("XYZ", repeat=w):
                syn = 0
                for q, letter in zip(support, letters):
                    syn ^= syndrome[(q, letter)]
                if syn:
                    continue
                x = z = 0
                for q, letter in zip(support, letters):
                    bit = 1 << q
                    if letter in ("X", "Y"):
                        x |= bit
                    if letter in ("Z", "Y"):
                        z |= bit
                vec = x | (z << n)
                if not gf2.in_span(vec, rows, 2 * n):
                    return PauliOperator(n, x, z, 0)
    return None


def distance_symplectic(
    code: CodeSpec, w_max: int, threads: int = 1
) -> Tuple[Optional[int], Optional[PauliOperator]]:
    """Minimum weight of a zero-syndrome Pauli outside the stabilizer group.

    Returns (distance, witness) or (None, None) when no witness of weight
    <= w_max exists. The result is independent of the thread count.
    """
    if w_max < 1:
        raise ValueError("w_max must be >= 1")
    require_independent(code)
    for w in range(1, w_max + 1):
        if threads <= 1:
            hit = _scan_weight(code, w, range(code.n))
            if hit is not None:
                return w, hit
        else:
            chunks = [list(range(code.n))[i::threads] for i in range(threads)]
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(
                    pool.map(lambda ch: _scan_weight(code, w, ch), chunks)
                )
            hits = [r for r in results if r is not None]
            if hits:
                # the serial winner is some chunk's first hit; candidate
                # order is (support, letters) lexicographic in every chunk
                best = min(hits, key=_letter_rank)
                return w, best
    return None, None


def _letter_rank(op: PauliOperator) -> Tuple:
    support = sorted(
        q for q in range(op.n) if (op.x_mask | op.z_mask) >> q & 1
    )
    order = {"X": 0, "Y": 1, "Z": 2}
    letters = []
    for q in support:
        has_x = op.x_mask >> q & 1
        has_z = op.z_mask >> q & 1
        letters.append(order["Y" if has_x and has_z else "X" if has_x else "Z"])
    return (tuple(support), tuple(letters))


# --- error-discrimination (codeword matrix) oracle ---------------------------


class _SparseCodewords:
    """All 2^k codewords of a CSS code as X-group cosets with uniform amplitude."""

    def __init__(self, code: CodeSpec, logicals: LogicalSet):
        if code.n > 20:
            raise ValueError("codeword-matrix oracle is capped at n <= 20")
        require_independent(code)
        x_gens = [s.x_mask for s in code.stabilizers if s.is_x_type()]
        orbit = np.array([0], dtype=np.uint64)
        for g in x_gens:
            orbit = np.concatenate([orbit, orbit ^ np.uint64(g)])
        orbit = np.sort(orbit)
        if len(set(orbit.tolist())) != len(orbit):
            raise ValueError("codeword basis not orthonormal (dependent X stabilizers)")
        self.k = logicals.k
        self.supports = []
        self.coset_of = {}
        for bits in range(1 << self.k):
            shift = 0
            for i in range(self.k):
                if (bits >> i) & 1:
                    xbar = logicals.pairs[i][0]
                    if not xbar.is_x_type():
                        raise ValueError("oracle requires X-type logical representatives")
                    shift ^= xbar.x_mask
            supp = np.sort(orbit ^ np.uint64(shift))
            rep = int(supp[0])
            if rep in self.coset_of:
                raise ValueError("codeword basis not orthonormal (coset collision)")
            self.coset_of[rep] = bits
            self.supports.append(supp)
        self.amp = 1.0 / np.sqrt(len(orbit))

    def violates_kl(self, op: PauliOperator, tol: float = KL_TOL) -> bool:
        """True iff M_ij = <psi_i|op|psi_j> is not a scalar multiple of I."""
        x = np.uint64(op.x_mask)
        z = np.uint64(op.z_mask)
        diag = np.zeros(1 << self.k, dtype=np.complex128)
        for j, supp in enumerate(self.supports):
            mapped = supp ^ x
            target = self.coset_of.get(int(mapped.min()))
            signs = 1.0 - 2.0 * (np.bitwise_count(supp & z).astype(np.int64) & 1)
            value = (1j) ** op.phase * self.amp**2 * signs.sum()
            if target != j:
                # off-diagonal mass, or leakage out of the code space
                if target is not None and abs(value) > tol:
                    return True
                diag[j] = 0.0
            else:
                diag[j] = value
        return bool(np.max(np.abs(diag - diag[0])) > tol)


def distance_kl_oracle(
    code: CodeSpec, logicals: LogicalSet, w_max: int
) -> Tuple[Optional[int], Optional[PauliOperator]]:
    """Distance from the first weight at which some Pauli E breaks the
    scalar-identity structure of the codeword matrix."""
    if w_max < 1:
        raise ValueError("w_max must be >= 1")
    words = _SparseCodewords(code, logicals)
    for w in range(1, w_max + 1):
        for support in itertools.combinations(range(code.n), w):
            for cand in _candidate_paulis(support, code.n):
                if words.violates_kl(cand):
                    return w, cand
    return None, None


# --- end-to-end verification -------------------------------------------------


def verify_code(
    code: CodeSpec,
    w_max: int = 4,
    use_kl: bool = False,
    threads: int = 1,
) -> VerificationReport:
    """Full report: commutativity, rank/k, logical set, distance.

    Uses the code's own logical pairs when present, otherwise synthesizes
    a set when n permits. The codeword-matrix oracle, when requested,
    must agree exactly with the symplectic search.
    """
    rows = _symplectic_rows(code)
    rank = gf2.rank(rows, 2 * code.n)
    report = VerificationReport(
        commuting=all(
            commutes(a, b) for a, b in itertools.combinations(code.stabilizers, 2)
        ),
        rank=rank,
        k=code.n - rank,
    )
    logicals = None
    if code.logical_pairs is not None:
        logicals = LogicalSet(code.logical_pairs)
    elif code.n <= 24:
        logicals = find_logical_set(code)
    if logicals is not None:
        sub = verify_logical_set(code, logicals)
        report.logical_violations = sub.logical_violations
        report.degenerate = sub.degenerate
    d, witness = distance_symplectic(code, w_max, threads=threads)
    report.distance = d
    report.witness = to_string(witness) if witness is not None else None
    if use_kl:
        if code.n > 20:
            raise ValueError("codeword-matrix oracle requires n <= 20")
        kl_logicals = logicals
        if kl_logicals is None or not all(
            x.is_x_type() for x, _ in kl_logicals.pairs
        ):
            kl_logicals = find_logical_set(code)
        d_kl, _ = distance_kl_oracle(code, kl_logicals, w_max)
        if d_kl != d:
            raise AssertionError(
                f"distance methods disagree: symplectic {d} vs codeword-matrix {d_kl}"
            )
    return report
