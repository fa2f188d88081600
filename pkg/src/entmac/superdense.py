"""Superdense coding over a pre-shared |beta_00> pair.

Alice encodes a classical bitpair into her half of the pair with one of
{I, Z, X, iY}, hands the qubit to Bob, and Bob's Bell-basis measurement
recovers the bitpair exactly: the four encoded states are the four
orthogonal Bell states. Two bits per protocol use, deterministically.

The qubit handover is modeled as lossless and instantaneous; only the
encode -> joint state -> measure pipeline is simulated.
"""

from __future__ import annotations

from dataclasses import dataclass
from concurrent.futures import ThreadPoolExecutor

from .qubit import (
    PAULI_I,
    PAULI_IY,
    PAULI_X,
    PAULI_Z,
    BellIndex,
    PauliOp,
    QubitId,
    TwoQubitState,
    apply_single_qubit,
    bell_state,
    measure_bell,
)
from .rng import RandomSource
from .stats import RunStats

#: classical bits delivered per protocol use
BITS_PER_USE = 2


@dataclass(frozen=True)
class Dibit:
    """The classical bitpair (A1, A2) Alice wants to send."""

    a1: int
    a2: int

    def __post_init__(self):
        if self.a1 not in (0, 1) or self.a2 not in (0, 1):
            raise ValueError(f"dibit components must be 0 or 1, got ({self.a1}, {self.a2})")


_ENCODING = {
    (0, 0): PAULI_I,
    (0, 1): PAULI_Z,
    (1, 0): PAULI_X,
    (1, 1): PAULI_IY,
}


def encode(d: Dibit) -> PauliOp:
    """Encoder alphabet: 00 -> I, 01 -> Z, 10 -> X, 11 -> iY."""
    return _ENCODING[(d.a1, d.a2)]


def channel_state_after_encoding(d: Dibit) -> TwoQubitState:
    """Joint state at Bob once Alice's encoded qubit arrives: |beta_{a1 a2}>."""
    return apply_single_qubit(bell_state(BellIndex(0, 0)), encode(d), QubitId.A)


def roundtrip(d: Dibit, rng: RandomSource) -> Dibit:
    """Encode, hand over, Bell-measure. Always returns the input dibit.

    The pre-measurement state is an exact Bell basis element, so the
    measurement outcome cannot depend on the RandomSource draw.
    """
    idx = measure_bell(channel_state_after_encoding(d), rng)
    return Dibit(idx.k, idx.l)


def trial_successes(n_trials: int, seed: int) -> list[int]:
    """Per-trial success indicators for one contiguous seeded chunk."""
    rng = RandomSource(seed)
    values = []
    for _ in range(n_trials):
        d = Dibit(rng.next_bit(), rng.next_bit())
        values.append(1 if roundtrip(d, rng) == d else 0)
    return values


def _trial_chunk(n_trials: int, seed: int) -> int:
    return sum(trial_successes(n_trials, seed))


def count_successes(n_trials: int, rng: RandomSource, workers: int = 1) -> int:
    """Total roundtrip successes over n_trials uniformly random dibits."""
    from . import _kernels

    if n_trials < 1:
        raise ValueError(f"n_trials must be >= 1, got {n_trials}")
    plan = _kernels.chunk_plan(rng.next_u64(), n_trials)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(lambda sc: _trial_chunk(sc[1], sc[0]), plan))
    else:
        counts = [_trial_chunk(count, seed) for seed, count in plan]
    return sum(counts)


def simulate(n_trials: int, rng: RandomSource, workers: int = 1) -> RunStats:
    """Roundtrip a uniformly random dibit per trial; per-trial success stats.

    Runs through the statevector engine every trial. The mean is exactly 1.0
    unless the engine is broken, which is the point of simulating it.
    """
    successes = count_successes(n_trials, rng, workers=workers)
    return RunStats.from_two_valued(n_trials, successes, lo=0.0, hi=1.0)
