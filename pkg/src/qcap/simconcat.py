"""Monte Carlo simulation of the concatenated-code decoder in (z, v)
coordinates, plus the exact type-sum upper bound on average infidelity.

A concatenated code with N inner blocks never needs to be materialized:
conditioned on the inner syndromes z = (z_1..z_N), an error is equivalent,
block by block, to its logical label v = (v_1..v_N), and the pair (z_j, v_j)
of one block is distributed exactly like the (row, column) index of the
inner code's probability array.  Decoding searches the candidates v'
with the observed outer syndrome (a coset of perp(C_out), of size d^{kN+K})
for the one whose joint type with z has minimum conditional entropy; the
decoded block succeeds iff v_hat - v lands in C_out.

Entropy comparisons between types are resolved exactly: for counts c the
quantity N*H_c differs from a constant by -log(prod c^c), so candidate
order and tie handling reduce to integer comparisons of prod c^c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._util import GuardError, ValidationError, wilson_interval
from .channels import PauliChannel
from .codes import StabilizerCode
from .exponent import compositions, count_types
from .gf import index_to_digits
from .spectra import ProbabilityArray, probability_array
from .symplectic import (
    Subspace,
    nullspace,
    random_isotropic_basis,
    rref,
    solve_affine_multi,
    symplectic_dual,
)

_SEARCH_GUARD = 1 << 24


# ---------------------------------------------------------------------------
# configuration and report


@dataclass(frozen=True)
class SimConfig:
    """One decoder experiment: an inner code, an outer code over the inner
    logical labels (explicit, or None for a seeded random draw), and the
    channel/trial bookkeeping."""

    inner: StabilizerCode
    outer: StabilizerCode | Subspace | None
    N: int
    K: int
    channel: PauliChannel
    trials: int
    seed: int
    resample_outer: bool = False
    record_trace: bool = False

    def __post_init__(self):
        k, N, K = self.inner.k, self.N, self.K
        if k < 1:
            raise ValidationError("inner code needs k >= 1")
        if N < 1:
            raise ValidationError("need at least one outer block")
        if not 0 <= K <= k * N:
            raise ValidationError(f"K must lie in [0, kN] = [0, {k * N}]")
        if self.trials < 1:
            raise ValidationError("trials must be >= 1")
        if self.channel.d != self.inner.d:
            raise ValidationError("channel and inner code moduli differ")
        sub = self.outer_subspace()
        if sub is not None:
            if sub.ambient != 2 * k * N:
                raise ValidationError(
                    f"outer ambient {sub.ambient} != 2kN = {2 * k * N}")
            if sub.dim != k * N - K:
                raise ValidationError(
                    f"outer dimension {sub.dim} != kN - K = {k * N - K}")

    def outer_subspace(self) -> Subspace | None:
        if self.outer is None:
            return None
        return self.outer.subspace if isinstance(self.outer, StabilizerCode) else self.outer


@dataclass(frozen=True)
class SimReport:
    failures: int
    trials: int
    failure_rate: float
    wilson_low: float
    wilson_high: float
    trace: tuple | None = None

    def as_dict(self) -> dict:
        return {
            "failures": self.failures,
            "trials": self.trials,
            "failure_rate": self.failure_rate,
            "wilson_low": self.wilson_low,
            "wilson_high": self.wilson_high,
        }


# ---------------------------------------------------------------------------
# error sampling


def sample_error(array: ProbabilityArray, N: int, rng: np.random.Generator
                 ) -> tuple[np.ndarray, np.ndarray]:
    """N i.i.d. draws from the inner probability array, one per outer block.

    Returns (z_indices, v_indices): row and column indices in the array's
    mixed-radix order.
    """
    flat = array.table.ravel()
    cdf = np.cumsum(flat)
    cdf[-1] = 1.0
    draws = np.searchsorted(cdf, rng.random(N), side="right")
    return draws // array.cols, draws % array.cols


# ---------------------------------------------------------------------------
# outer-code decoding context


@lru_cache(maxsize=8)
def _sorted_ntz(q: int) -> np.ndarray:
    """Number-of-trailing-zeros sequence for a 2^b Gray-code walk."""
    t = np.arange(1, q, dtype=np.uint64)
    out = np.zeros(q - 1, dtype=np.int64)
    shift = t.copy()
    while True:
        odd = (shift & 1).astype(bool)
        if odd.all():
            break
        out[~odd] += 1
        shift = shift >> 1
        shift[odd] = 1
    out.setflags(write=False)
    return out


@lru_cache(maxsize=8)
def _row_offsets(q: int, m: int) -> np.ndarray:
    out = np.arange(q, dtype=np.int64)[:, None] * m
    out.setflags(write=False)
    return out


class _OuterContext:
    """Per-outer-code machinery: syndrome map, candidate coset enumeration,
    and membership tests, specialized to bit packing when d = 2."""

    def __init__(self, outer: Subspace | np.ndarray, d: int, k: int, N: int):
        self.d = d
        self.k = k
        self.N = N
        self.length = 2 * k * N
        gens = outer.basis if isinstance(outer, Subspace) else np.asarray(outer, dtype=np.int64)
        gens = gens.reshape(-1, self.length)  # (kN-K, 2kN)
        self.n_checks = gens.shape[0]
        self.search_size = d ** (self.length - self.n_checks)
        if self.search_size > _SEARCH_GUARD:
            raise GuardError(
                f"decoder search set d^(kN+K) = {self.search_size} exceeds 2^24")
        if self.n_checks:
            self.dual = np.array([symplectic_dual(g, d) for g in gens]) % d
            self.perp_basis = nullspace(self.dual, d, self.length)
            # representatives y_i with <g'_i, y_j> = delta_ij give a particular
            # solution v0 = sigma @ reps for any target syndrome
            reps = solve_affine_multi(self.dual, np.eye(self.n_checks, dtype=np.int64), d)
            if reps is None:
                raise ValidationError("outer generators are degenerate")
            self.reps = reps
        else:
            self.dual = np.zeros((0, self.length), dtype=np.int64)
            self.perp_basis = np.eye(self.length, dtype=np.int64)
            self.reps = np.zeros((0, self.length), dtype=np.int64)
        self.member_rref, self.member_pivots = rref(gens, d) if gens.shape[0] else (gens, [])
        self._packed = None
        if d == 2:
            weights = (1 << np.arange(self.length, dtype=np.uint64))
            basis_packed = (self.perp_basis.astype(np.uint64) @ weights)
            flips = _sorted_ntz(1 << self.perp_basis.shape[0]) if self.perp_basis.shape[0] else None
            self._packed = (weights, basis_packed, flips)
        else:
            dim = self.perp_basis.shape[0]
            self._combos = index_to_digits(np.arange(self.search_size), d, dim)

    def syndrome(self, v_digits: np.ndarray) -> np.ndarray:
        return (self.dual @ v_digits) % self.d

    def contains(self, v_digits: np.ndarray) -> bool:
        v = v_digits % self.d
        for r, pc in enumerate(self.member_pivots):
            if v[pc] != 0:
                v = (v - v[pc] * self.member_rref[r]) % self.d
        return not v.any()

    def candidate_symbols(self, sigma: np.ndarray) -> tuple[np.ndarray, object]:
        """Per-block logical symbols of every v' with syndrome sigma.

        Returns (symbols (Q x N), handle) where the handle recovers digit
        vectors of individual candidates via `candidate_digits`.
        """
        d, k, N = self.d, self.k, self.N
        v0 = (sigma @ self.reps) % d if self.n_checks else np.zeros(self.length, dtype=np.int64)
        if self._packed is not None:
            weights, basis_packed, flips = self._packed
            start = np.uint64(v0.astype(np.uint64) @ weights)
            if basis_packed.size:
                seq = np.concatenate([[start], basis_packed[flips]]).astype(np.uint64)
                elems = np.bitwise_xor.accumulate(seq)
            else:
                elems = np.array([start], dtype=np.uint64)
            mask = np.uint64((1 << (2 * k)) - 1)
            syms = np.empty((elems.size, N), dtype=np.int64)
            for j in range(N):
                syms[:, j] = ((elems >> np.uint64(2 * k * j)) & mask).astype(np.int64)
            return syms, elems
        cands = (v0[None, :] + self._combos @ self.perp_basis) % d
        syms = np.empty((cands.shape[0], N), dtype=np.int64)
        dpow = d ** np.arange(2 * k, dtype=np.int64)
        for j in range(N):
            syms[:, j] = cands[:, 2 * k * j:2 * k * (j + 1)] @ dpow
        return syms, cands

    def candidate_digits(self, handle, idx: int) -> np.ndarray:
        if self._packed is not None:
            word = int(handle[idx])
            return np.array([(word >> b) & 1 for b in range(self.length)], dtype=np.int64)
        return handle[idx].astype(np.int64)


def _clogc_table(n: int) -> np.ndarray:
    c = np.arange(n + 1, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = c * np.log(c)
    t[0] = 0.0
    return t


def decode_min_conditional_entropy(inner: StabilizerCode, outer: Subspace | StabilizerCode,
                                   z_indices: np.ndarray, sigma: np.ndarray
                                   ) -> np.ndarray:
    """The syndrome-compatible candidate v' minimizing the conditional type
    entropy H(type of [z, v'] | type of z); ties go to the lexicographically
    smallest candidate digit vector.

    Returns the column indices of the decoded logical labels, one per block.
    """
    sub = outer.subspace if isinstance(outer, StabilizerCode) else outer
    ctx = _OuterContext(sub, inner.d, inner.k, len(z_indices))
    return _decode_ctx(inner, ctx, np.asarray(z_indices), np.asarray(sigma))


def _decode_ctx(inner: StabilizerCode, ctx: _OuterContext, z_indices: np.ndarray,
                sigma: np.ndarray) -> np.ndarray:
    rows = inner.d ** (inner.n - inner.k)
    cols = inner.d ** (2 * inner.k)
    N = len(z_indices)
    syms, handle = ctx.candidate_symbols(sigma)
    q = syms.shape[0]
    m = rows * cols
    joint = z_indices[None, :] * cols + syms
    flat = (_row_offsets(q, m) + joint).ravel()
    counts = np.bincount(flat, minlength=q * m).reshape(q, m)
    table = _clogc_table(N)
    scores = -table[counts].sum(axis=1)  # minimizing this minimizes H(joint type)
    best = scores.min()
    ties = np.flatnonzero(scores == best)
    if ties.size > 1:
        digit_rows = [tuple(ctx.candidate_digits(handle, int(i))) for i in ties]
        winner = int(ties[min(range(ties.size), key=lambda j: digit_rows[j])])
    else:
        winner = int(ties[0])
    return syms[winner]


# ---------------------------------------------------------------------------
# simulation


def simulate(cfg: SimConfig) -> SimReport:
    """Run the decoder experiment; fully reproducible from cfg.seed.

    Per trial: draw (or reuse) the outer code, sample the per-block
    (syndrome, logical) labels from the inner array, decode by minimum
    conditional type entropy within the observed outer-syndrome coset, and
    count a failure when the decoded and true labels differ by a vector
    outside C_out.
    """
    inner = cfg.inner
    d, k, N, K = inner.d, inner.k, cfg.N, cfg.K
    arr = probability_array(inner, cfg.channel)
    cols = arr.cols

    fixed_sub = cfg.outer_subspace()
    if fixed_sub is None and not cfg.resample_outer:
        fixed_sub = sample_self_orthogonal_outer(d, k, N, K, (cfg.seed, 0, 2))
    fixed_ctx = _OuterContext(fixed_sub, d, k, N) if fixed_sub is not None else None

    col_digits = index_to_digits(np.arange(cols), d, 2 * k)
    failures = 0
    trace = [] if cfg.record_trace else None
    for t in range(cfg.trials):
        rng = np.random.default_rng((cfg.seed, t))
        if fixed_ctx is not None:
            ctx = fixed_ctx
        else:
            basis = random_isotropic_basis(d, 2 * k * N, k * N - K,
                                           np.random.default_rng((cfg.seed, t, 1)))
            ctx = _OuterContext(basis, d, k, N)
        z_idx, v_idx = sample_error(arr, N, rng)
        v_digits = col_digits[v_idx].ravel()
        sigma = ctx.syndrome(v_digits)
        v_hat = _decode_ctx(inner, ctx, z_idx, sigma)
        diff = (col_digits[v_hat].ravel() - v_digits) % d
        ok = ctx.contains(diff)
        if not ok:
            failures += 1
        if trace is not None:
            trace.append({"trial": t, "failure": not ok,
                          "z": z_idx.tolist(), "v": v_idx.tolist(),
                          "v_hat": v_hat.tolist()})
    low, high = wilson_interval(failures, cfg.trials)
    return SimReport(failures, cfg.trials, failures / cfg.trials, low, high,
                     tuple(trace) if trace is not None else None)


def sample_self_orthogonal_outer(d: int, k: int, N: int, K: int, seed) -> Subspace:
    """A uniform self-orthogonal outer code of dimension kN - K in F_d^{2kN}."""
    from .symplectic import sample_self_orthogonal

    return sample_self_orthogonal(d, 2 * k * N, k * N - K, seed)


# ---------------------------------------------------------------------------
# exact ensemble-average fidelity bound


def _entropy_keys(counts: np.ndarray, pow_table: list[int]) -> list[int]:
    """prod c^c per row, as exact integers; larger key = smaller entropy."""
    keys = []
    for row in counts:
        acc = 1
        for c in row:
            if c > 1:
                acc *= pow_table[c]
        keys.append(acc)
    return keys


def _binom_table(n: int) -> np.ndarray:
    tab = np.zeros((n + 1, n + 1))
    for a in range(n + 1):
        for b in range(a + 1):
            tab[a, b] = math.comb(a, b)
    return tab


def _multinomials(counts: np.ndarray, totals: np.ndarray, binom: np.ndarray) -> np.ndarray:
    """Exact multinomial coefficients (as floats) row by row: counts rows sum
    to the matching entry of totals."""
    rem = totals.astype(np.int64).copy()
    out = np.ones(counts.shape[0])
    for j in range(counts.shape[1]):
        out *= binom[rem, counts[:, j]]
        rem -= counts[:, j]
    return out


def fidelity_bound_exact(inner: StabilizerCode, N: int, K: int, channel: PauliChannel,
                         *, max_types: int = 10_000_000) -> float:
    """Exact evaluation of the type-grouped upper bound on the ensemble
    average infidelity 1 - Fbar of the concatenated code.

    Every joint type T of [z, v] sequences contributes its probability times
    min{ #competitors * d^-(kN-K), 1 }, where the competitors are the v'
    sharing z whose joint type has conditional entropy <= that of T (ties
    included, resolved by exact integer keys).
    """
    d, n, k = inner.d, inner.n, inner.k
    if not 0 <= K <= k * N:
        raise ValidationError(f"K must lie in [0, kN] = [0, {k * N}]")
    ntypes = count_types(d, n, k, N)
    if ntypes > max_types:
        raise GuardError(f"{ntypes} joint types exceed the guard {max_types}")
    arr = probability_array(inner, channel)
    rows, cols = arr.rows, arr.cols
    m = rows * cols
    flat = arr.table.ravel()

    types = compositions(N, m).astype(np.int64)
    binom = _binom_table(N)
    # exact probability of observing each type: multinomial * prod p^count
    multis = _multinomials(types, np.full(types.shape[0], N), binom)
    ptype = multis * np.power(flat[None, :], types).prod(axis=1)

    by_row = types.reshape(-1, rows, cols)
    zcounts = by_row.sum(axis=2)
    # shell size: for one fixed z of the type's z-marginal, the number of v
    # with this joint type is a product of per-row multinomials
    shells = np.ones(types.shape[0])
    for s in range(rows):
        shells *= _multinomials(by_row[:, s, :], zcounts[:, s], binom)

    pow_table = [c**c for c in range(N + 1)]
    keys = _entropy_keys(types, pow_table)

    groups: dict[bytes, list[int]] = {}
    for idx in range(types.shape[0]):
        groups.setdefault(zcounts[idx].tobytes(), []).append(idx)

    competitors = np.zeros(types.shape[0])
    for members in groups.values():
        members.sort(key=lambda i: keys[i], reverse=True)
        run_start = 0
        cum = 0.0
        while run_start < len(members):
            run_end = run_start
            while run_end < len(members) and keys[members[run_end]] == keys[members[run_start]]:
                run_end += 1
            run_total = cum + sum(shells[i] for i in members[run_start:run_end])
            for i in members[run_start:run_end]:
                competitors[i] = run_total
            cum = run_total
            run_start = run_end

    scale = float(d) ** (K - k * N)
    return math.fsum(float(ptype[i]) * min(float(competitors[i]) * scale, 1.0)
                     for i in range(types.shape[0]) if ptype[i] > 0.0)


def fidelity_bound_brute(inner: StabilizerCode, N: int, K: int, channel: PauliChannel,
                         *, max_sequences: int = 1 << 20) -> float:
    """The same bound evaluated without type grouping: a direct sum over all
    [z, v] sequences, counting competitor sequences one by one."""
    d, n, k = inner.d, inner.n, inner.k
    if not 0 <= K <= k * N:
        raise ValidationError(f"K must lie in [0, kN] = [0, {k * N}]")
    arr = probability_array(inner, channel)
    rows, cols = arr.rows, arr.cols
    m = rows * cols
    total = m**N
    if total > max_sequences:
        raise GuardError(f"{total} sequences exceed the guard {max_sequences}")
    flat = arr.table.ravel()

    seqs = index_to_digits(np.arange(total), m, N)
    probs = flat[seqs].prod(axis=1)
    zseqs = seqs // cols

    pow_table = [c**c for c in range(N + 1)]
    keys = []
    for row in seqs:
        counts = np.bincount(row, minlength=m)
        acc = 1
        for c in counts:
            if c > 1:
                acc *= pow_table[c]
        keys.append(acc)

    groups: dict[bytes, list[int]] = {}
    for idx in range(total):
        groups.setdefault(zseqs[idx].tobytes(), []).append(idx)

    scale = float(d) ** (K - k * N)
    bound_terms = []
    for members in groups.values():
        members.sort(key=lambda i: keys[i], reverse=True)
        run_start = 0
        cum = 0
        while run_start < len(members):
            run_end = run_start
            while run_end < len(members) and keys[members[run_end]] == keys[members[run_start]]:
                run_end += 1
            cum += run_end - run_start
            for i in members[run_start:run_end]:
                bound_terms.append(probs[i] * min(cum * scale, 1.0))
            run_start = run_end
    return math.fsum(bound_terms)
