"""Classical slotted-Aloha reference: analytic throughput and a seeded
M-user slot simulator.

All M users share one transmit probability p (the cooperative setting). A
slot delivers its packet iff exactly one user transmitted, so the per-slot
success probability is q = p * (1 - p)^(M - 1), the total throughput is
M * q packets per slot, and the throughput-maximizing strategy is p = 1/M,
giving (1 - 1/M)^(M - 1), which falls to 1/e as M grows. With one-bit
slots, packets per slot and bits per slot coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from concurrent.futures import ThreadPoolExecutor

from .rng import RandomSource
from .stats import RunStats


@dataclass(frozen=True)
class AlohaParams:
    """User count M and per-user, per-slot transmit probability p."""

    m: int
    p: float

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"user count must be an integer >= 1, got {self.m!r}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"transmit probability must be in [0, 1], got {self.p!r}")


@dataclass(frozen=True)
class AlohaSlotResult:
    """One slot: how many users transmitted and whether the slot succeeded."""

    transmitters: int
    success: bool

    def __post_init__(self):
        if self.success != (self.transmitters == 1):
            raise ValueError("success must hold exactly when one user transmitted")


def success_probability(params: AlohaParams) -> float:
    """Per-user success probability q = p * (1 - p)^(M - 1)."""
    return params.p * (1.0 - params.p) ** (params.m - 1)


def total_throughput(params: AlohaParams) -> float:
    """Expected delivered packets per slot over all users: M * p * (1 - p)^(M - 1)."""
    return params.m * params.p * (1.0 - params.p) ** (params.m - 1)


def optimal_p(m: int) -> float:
    """Throughput-maximizing common transmit probability, 1/M."""
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"user count must be an integer >= 1, got {m!r}")
    return 1.0 / m


def max_throughput(m: int) -> float:
    """Throughput at p = 1/M: (1 - 1/M)^(M - 1); equals 1 for a lone user."""
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"user count must be an integer >= 1, got {m!r}")
    if m == 1:
        return 1.0
    return (1.0 - 1.0 / m) ** (m - 1)


def run_slot(params: AlohaParams, rng: RandomSource) -> AlohaSlotResult:
    """Simulate one slot: each user transmits independently with probability p."""
    transmitters = 0
    for _ in range(params.m):
        if rng.next_float() < params.p:
            transmitters += 1
    return AlohaSlotResult(transmitters=transmitters, success=transmitters == 1)


def simulate(params: AlohaParams, n_slots: int, rng: RandomSource, workers: int = 1) -> RunStats:
    """Seeded Monte Carlo estimate of the per-slot success indicator.

    The run is split into fixed-size chunks with seeds derived from one draw
    off ``rng``; per-chunk success counts are integers, so the result is
    identical for any worker count (and for either simulation backend).
    """
    from . import _kernels

    if n_slots < 1:
        raise ValueError(f"n_slots must be >= 1, got {n_slots}")
    plan = _kernels.chunk_plan(rng.next_u64(), n_slots)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(
                pool.map(lambda sc: _kernels.aloha_tally(params.m, params.p, sc[1], sc[0]), plan)
            )
    else:
        counts = [_kernels.aloha_tally(params.m, params.p, count, seed) for seed, count in plan]
    return RunStats.from_two_valued(n_slots, sum(counts), lo=0.0, hi=1.0)
