"""Walsh-Hadamard transforms in natural and sequency order.

All 1D transforms carry the orthonormal 1/sqrt(N) factor, so each of them is
its own inverse. The hybrid transform reproduces the classical-quantum scheme:
the first component is shifted so that every natural-order coefficient is
positive, the coefficients are read back from simulated measurement
probabilities, and the shift is removed again.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np


class TransformOrder(enum.Enum):
    NATURAL = "natural"
    SEQUENCY = "sequency"


class MeasurementKind(enum.Enum):
    EXACT = "exact"
    SHOTS = "shots"


@dataclass(frozen=True)
class MeasurementModel:
    """How qubit measurement is simulated.

    ``EXACT`` returns the Born-rule probabilities directly. ``SHOTS`` draws
    ``shots`` samples from that distribution with a generator seeded from
    ``seed`` and returns the empirical frequencies.
    """

    kind: MeasurementKind = MeasurementKind.EXACT
    shots: int = 1024
    seed: int = 0

    def __post_init__(self):
        if self.kind is MeasurementKind.SHOTS:
            if self.shots < 1:
                raise ValueError(f"shot count must be positive, got {self.shots}")
            if not 0 <= self.seed < 2**64:
                raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")

    @classmethod
    def exact(cls) -> "MeasurementModel":
        return cls(MeasurementKind.EXACT)

    @classmethod
    def sampled(cls, shots: int, seed: int = 0) -> "MeasurementModel":
        return cls(MeasurementKind.SHOTS, shots, seed)


@dataclass(frozen=True)
class HybridConfig:
    epsilon: float = 1.0
    model: MeasurementModel = field(default_factory=MeasurementModel.exact)

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")


def _log2_length(n: int) -> int:
    if n < 2 or n & (n - 1):
        raise ValueError(f"length must be a power of two >= 2, got {n}")
    return n.bit_length() - 1


def _as_signal(v) -> np.ndarray:
    a = np.asarray(v, dtype=np.float64)
    if a.ndim == 0:
        raise ValueError("expected a vector, got a scalar")
    _log2_length(a.shape[-1])
    if not np.all(np.isfinite(a)):
        raise ValueError("signal contains NaN or Inf")
    return a


def fwht_natural(v) -> np.ndarray:
    """Orthonormal Walsh-Hadamard transform in natural (Hadamard) order.

    Works along the last axis, so a stack of vectors is transformed row by row.
    """
    a = _as_signal(v)
    lead = a.shape[:-1]
    n = a.shape[-1]
    h = 1
    while h < n:
        a = a.reshape(*lead, -1, 2, h)
        x = a[..., 0, :]
        y = a[..., 1, :]
        a = np.stack((x + y, x - y), axis=-2)
        h *= 2
    return a.reshape(*lead, n) / math.sqrt(n)


def sequency_to_natural_index(j: int, n: int) -> int:
    """Natural-order row holding the Walsh function of sequency ``j``.

    Gray-code ``j`` then reverse its ``n`` bits.
    """
    if not 0 <= j < (1 << n):
        raise ValueError(f"index {j} out of range for {n} bits")
    g = j ^ (j >> 1)
    p = 0
    for _ in range(n):
        p = (p << 1) | (g & 1)
        g >>= 1
    return p


def sequency_permutation(n: int) -> np.ndarray:
    """Array ``perm`` with ``perm[j] = sequency_to_natural_index(j, n)``."""
    return np.array([sequency_to_natural_index(j, n) for j in range(1 << n)], dtype=np.intp)


def wht_sequency(v) -> np.ndarray:
    a = fwht_natural(v)
    perm = sequency_permutation(_log2_length(a.shape[-1]))
    return a[..., perm]


def natural_matrix(n: int) -> np.ndarray:
    """Unnormalized natural-order matrix with entries (-1)^(j.k)."""
    size = 1 << n
    return np.array(
        [[(-1) ** bin(j & k).count("1") for k in range(size)] for j in range(size)],
        dtype=np.int64,
    )


def sequency_matrix(n: int) -> np.ndarray:
    """Unnormalized sequency-order matrix, built entry by entry from the bit formula.

    Entry (j, k) is (-1)^sum_r k_{n-1-r} (j_r xor j_{r+1}) with j_n = 0.
    Deliberately does not go through the permutation used by ``wht_sequency``.
    """
    size = 1 << n

    def bit(x, i):
        return (x >> i) & 1

    out = np.empty((size, size), dtype=np.int64)
    for j in range(size):
        for k in range(size):
            e = sum(bit(k, n - 1 - r) * (bit(j, r) ^ bit(j, r + 1)) for r in range(n))
            out[j, k] = -1 if e & 1 else 1
    return out


def simulate_measurement(state, model: MeasurementModel, rng: np.random.Generator | None = None) -> np.ndarray:
    """Apply H^{(x)n} to a normalized real state and measure every qubit.

    Returns the probability of each basis outcome, either exactly or as
    empirical shot frequencies.
    """
    psi = _as_signal(state)
    if psi.ndim != 1:
        raise ValueError("state must be one-dimensional")
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"state is not normalized (norm {norm!r})")
    probs = fwht_natural(psi) ** 2
    if model.kind is MeasurementKind.EXACT:
        return probs
    if rng is None:
        rng = np.random.default_rng(model.seed)
    counts = rng.multinomial(model.shots, probs / probs.sum())
    return counts / model.shots


def hybrid_wht(a, cfg: HybridConfig | None = None, rng: np.random.Generator | None = None) -> np.ndarray:
    """Sequency-order WHT of a real vector through simulated measurement.

    With the exact model this agrees with ``wht_sequency`` to rounding error.
    Under shots the coefficients carry sampling noise.
    """
    cfg = cfg or HybridConfig()
    a = _as_signal(a)
    if a.ndim != 1:
        raise ValueError("hybrid_wht expects a single vector")
    n_len = a.size
    n = _log2_length(n_len)

    b0 = cfg.epsilon + float(np.sum(np.abs(a)))
    shifted = a.copy()
    shifted[0] = b0
    c = float(np.linalg.norm(shifted))
    p = simulate_measurement(shifted / c, cfg.model, rng)
    delta = (b0 - a[0]) / math.sqrt(n_len)
    u = c * np.sqrt(p) - delta
    return u[sequency_permutation(n)]


def _stream_generators(model: MeasurementModel, stream: int, count: int):
    if model.kind is MeasurementKind.EXACT:
        return [None] * count
    seq = np.random.SeedSequence(model.seed, spawn_key=(stream,))
    return [np.random.default_rng(child) for child in seq.spawn(count)]


def wht2d(x, cfg: HybridConfig | None = None, stream: int = 0) -> np.ndarray:
    """2D sequency WHT: hybrid transform of every column, then every row.

    Exact-model output is an involution, so the same call inverts it.
    ``stream`` selects an independent family of shot generators; callers that
    run several 2D transforms on one config give each call its own stream.
    """
    cfg = cfg or HybridConfig()
    out = np.array(x, dtype=np.float64)
    if out.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {out.shape}")
    rows, cols = out.shape
    _log2_length(rows)
    _log2_length(cols)
    if not np.all(np.isfinite(out)):
        raise ValueError("matrix contains NaN or Inf")

    if cfg.model.kind is MeasurementKind.EXACT:
        # Column-then-row hybrid transforms with exact probabilities, batched.
        return _hybrid_exact_batch(_hybrid_exact_batch(out.T, cfg.epsilon).T, cfg.epsilon)

    gens = _stream_generators(cfg.model, stream, rows + cols)
    for j in range(cols):
        out[:, j] = hybrid_wht(out[:, j], cfg, gens[j])
    for i in range(rows):
        out[i, :] = hybrid_wht(out[i, :], cfg, gens[cols + i])
    return out


def _hybrid_exact_batch(m: np.ndarray, epsilon: float) -> np.ndarray:
    # Same steps as hybrid_wht with the exact model, applied to each row of m.
    n_len = m.shape[1]
    b0 = epsilon + np.abs(m).sum(axis=1)
    shifted = m.copy()
    shifted[:, 0] = b0
    c = np.linalg.norm(shifted, axis=1)
    p = fwht_natural(shifted / c[:, None]) ** 2
    delta = (b0 - m[:, 0]) / math.sqrt(n_len)
    u = c[:, None] * np.sqrt(p) - delta[:, None]
    return u[:, sequency_permutation(_log2_length(n_len))]


def operation_counts(n_len: int) -> dict[str, int]:
    """Rough operation counts for one length-``n_len`` transform.

    ``fwht`` counts butterfly additions of the classical transform. The hybrid
    entries count the classical pre/post-processing and, separately, the
    O(N log N) work the simulator spends standing in for the Hadamard layer.
    """
    n = _log2_length(n_len)
    return {
        "fwht": n_len * n,
        "hybrid_classical": 4 * n_len,
        "hybrid_simulated_gates": n_len * n,
        "hadamard_gates": n,
    }
