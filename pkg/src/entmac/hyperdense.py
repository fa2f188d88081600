"""Two-party hyperdense coding: measurement-conditioned access to one shared
classical slot.

Alice holds bits (A1, A2), Bob holds (B1, B2), and they share a |beta_00>
pair consumed in this slot. Each party measures its half in the
computational basis; entanglement guarantees both see the same bit c. A
party transmits its second bit iff its first bit equals c, so the slot-end
channel state (idle, a single transmission, or a collision) tells each
party whether the peer's first bit matched c:

  * collision  -> peer sent, so peer_first = c; both payloads are lost
  * idle       -> peer stayed silent, so peer_first = NOT c
  * single, from peer -> peer_first = c and the payload is peer_second
  * single, from self -> peer stayed silent, so peer_first = NOT c

Both first bits therefore always arrive (carried by the presence pattern),
and one second bit arrives whenever exactly one party transmits. Over the
eight equally likely (A1, B1, c) scenarios the slot delivers
(2+2+3+3+3+3+2+2)/8 = 2.5 bits on average, 1.25 per direction.

Both parties are assumed to observe the three-way slot outcome, including a
transmitter detecting that its own transmission collided.
"""

from __future__ import annotations

from dataclasses import dataclass
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import Optional, Protocol

from .qubit import BellIndex, QubitId, bell_state, measure_qubit
from .rng import RandomSource
from .stats import RunStats


class Party(Enum):
    ALICE = "alice"
    BOB = "bob"


class ChannelState(Enum):
    """Three-way slot outcome visible to both parties."""

    IDLE = "idle"
    SINGLE = "single"
    COLLISION = "collision"

    @property
    def table_label(self) -> str:
        """Label used in the scenario table output."""
        return {"idle": "Unused", "single": "Transm.", "collision": "Collision"}[self.value]


class ProtocolViolationError(RuntimeError):
    """A party's own actions contradict the observed channel state."""


class PairCorrelationError(RuntimeError):
    """The two halves of a shared pair measured to different bits."""


@dataclass(frozen=True)
class PartyBits:
    """The two classical bits one party wants to deliver this slot."""

    first: int
    second: int

    def __post_init__(self):
        if self.first not in (0, 1) or self.second not in (0, 1):
            raise ValueError(f"party bits must be 0 or 1, got ({self.first}, {self.second})")


@dataclass(frozen=True)
class SharedOutcome:
    """The common measurement result c (identical at both parties)."""

    c: int

    def __post_init__(self):
        if self.c not in (0, 1):
            raise ValueError(f"shared outcome must be 0 or 1, got {self.c}")


@dataclass(frozen=True)
class ChannelObservation:
    """Slot-end channel state; Single carries the payload bit and its sender."""

    state: ChannelState
    payload: Optional[int] = None
    sender: Optional[Party] = None

    def __post_init__(self):
        if self.state is ChannelState.SINGLE:
            if self.payload is None or self.sender is None:
                raise ValueError("a single transmission needs a payload and a sender")
        elif self.payload is not None or self.sender is not None:
            raise ValueError(f"{self.state.value} channel cannot carry a payload")

    @classmethod
    def idle(cls) -> "ChannelObservation":
        return cls(ChannelState.IDLE)

    @classmethod
    def collision(cls) -> "ChannelObservation":
        return cls(ChannelState.COLLISION)

    @classmethod
    def single(cls, payload: int, sender: Party) -> "ChannelObservation":
        return cls(ChannelState.SINGLE, payload=payload, sender=sender)


@dataclass(frozen=True)
class DecodedView:
    """What one party learns about the peer's bits at slot end."""

    peer_first: int
    peer_second: Optional[int] = None


@dataclass(frozen=True)
class SlotOutcome:
    """Full record of one protocol slot."""

    scenario_index: int  # 1..8, position in the canonical (A1, B1, c) order
    alice: PartyBits
    bob: PartyBits
    c: int
    a_sent: Optional[int]
    b_sent: Optional[int]
    channel: ChannelObservation
    alice_view: DecodedView
    bob_view: DecodedView
    delivered_to_alice: dict
    delivered_to_bob: dict
    k: int


def decide_send(own: PartyBits, c: SharedOutcome) -> Optional[int]:
    """Transmit the second bit iff the first bit equals the measured c."""
    return own.second if own.first == c.c else None


def resolve_channel(a_tx: Optional[int], b_tx: Optional[int]) -> ChannelObservation:
    """Slot-end channel state from the two (optional) transmissions."""
    if a_tx is not None and b_tx is not None:
        return ChannelObservation.collision()
    if a_tx is None and b_tx is None:
        return ChannelObservation.idle()
    if a_tx is not None:
        return ChannelObservation.single(a_tx, Party.ALICE)
    return ChannelObservation.single(b_tx, Party.BOB)


def decode(
    own_sent: Optional[int], c: SharedOutcome, obs: ChannelObservation, self_id: Party
) -> DecodedView:
    """Recover the peer's first bit (always) and second bit (when it arrived).

    Raises ProtocolViolationError when the observation is impossible given
    this party's own action.
    """
    i_sent = own_sent is not None
    if obs.state is ChannelState.IDLE and i_sent:
        raise ProtocolViolationError("I transmitted but the channel reads idle")
    if obs.state is ChannelState.COLLISION and not i_sent:
        raise ProtocolViolationError("collision observed although I stayed silent")
    if obs.state is ChannelState.SINGLE:
        if i_sent and obs.sender is not self_id:
            raise ProtocolViolationError("I transmitted but the channel credits the peer alone")
        if not i_sent and obs.sender is self_id:
            raise ProtocolViolationError("channel credits me although I stayed silent")

    if obs.state is ChannelState.COLLISION:
        # peer transmitted, so peer_first matched c; its payload was lost
        return DecodedView(peer_first=c.c)
    if obs.state is ChannelState.IDLE:
        # peer stayed silent, so peer_first differs from c
        return DecodedView(peer_first=1 - c.c)
    if obs.sender is self_id:
        return DecodedView(peer_first=1 - c.c)
    return DecodedView(peer_first=c.c, peer_second=obs.payload)


def run_slot(alice: PartyBits, bob: PartyBits, c: SharedOutcome) -> SlotOutcome:
    """One full slot: both send decisions, channel resolution, both decodes."""
    a_tx = decide_send(alice, c)
    b_tx = decide_send(bob, c)
    obs = resolve_channel(a_tx, b_tx)
    alice_view = decode(a_tx, c, obs, Party.ALICE)
    bob_view = decode(b_tx, c, obs, Party.BOB)

    delivered_to_bob = {"A1": bob_view.peer_first}
    if bob_view.peer_second is not None:
        delivered_to_bob["A2"] = bob_view.peer_second
    delivered_to_alice = {"B1": alice_view.peer_first}
    if alice_view.peer_second is not None:
        delivered_to_alice["B2"] = alice_view.peer_second

    return SlotOutcome(
        scenario_index=1 + 4 * alice.first + 2 * bob.first + c.c,
        alice=alice,
        bob=bob,
        c=c.c,
        a_sent=a_tx,
        b_sent=b_tx,
        channel=obs,
        alice_view=alice_view,
        bob_view=bob_view,
        delivered_to_alice=delivered_to_alice,
        delivered_to_bob=delivered_to_bob,
        k=len(delivered_to_alice) + len(delivered_to_bob),
    )


def enumerate_scenarios() -> list[SlotOutcome]:
    """The eight equally likely scenarios, ordered by (A1, B1, c).

    Payload bits do not affect the channel state, the delivered-bit labels
    or K, so they are fixed to 0 here.
    """
    return [
        run_slot(PartyBits(a1, 0), PartyBits(b1, 0), SharedOutcome(c))
        for a1 in (0, 1)
        for b1 in (0, 1)
        for c in (0, 1)
    ]


def expected_bits_analytic() -> float:
    """Expected delivered bits per slot: mean of K over the eight scenarios."""
    scenarios = enumerate_scenarios()
    return sum(s.k for s in scenarios) / len(scenarios)


def expected_bits_per_direction() -> dict[str, float]:
    """Expected delivered bits per slot, split by direction."""
    scenarios = enumerate_scenarios()
    n = len(scenarios)
    return {
        "alice_to_bob": sum(len(s.delivered_to_bob) for s in scenarios) / n,
        "bob_to_alice": sum(len(s.delivered_to_alice) for s in scenarios) / n,
    }


class PairSource(Protocol):
    """Supplier of the shared per-slot bit c."""

    kind: str

    def draw(self, rng: RandomSource) -> int: ...


class QubitPairSource:
    """Draw c by preparing |beta_00> and measuring the two halves.

    The halves are measured by two separate single-qubit measurements, in
    keeping with the protocol's distributed operation; their agreement is
    checked every draw.
    """

    kind = "qubit"

    def draw_pair(self, rng: RandomSource) -> tuple[int, int]:
        state = bell_state(BellIndex(0, 0))
        c_a, collapsed = measure_qubit(state, QubitId.A, rng)
        c_b, _ = measure_qubit(collapsed, QubitId.B, rng)
        return c_a, c_b

    def draw(self, rng: RandomSource) -> int:
        c_a, c_b = self.draw_pair(rng)
        if c_a != c_b:
            raise PairCorrelationError(f"half-pair measurements disagree: {c_a} vs {c_b}")
        return c_a


class CoinPairSource:
    """Draw c from a fair coin, bypassing the statevector engine.

    Statistically indistinguishable from the qubit path; useful to separate
    protocol-logic faults from quantum-engine faults.
    """

    kind = "coin"

    def draw(self, rng: RandomSource) -> int:
        return rng.next_bit()


@dataclass(frozen=True)
class HyperdenseStats:
    """Monte Carlo result: total delivered bits per slot and the two directions."""

    total: RunStats
    alice_to_bob: RunStats
    bob_to_alice: RunStats
    channel_counts: dict  # collision / idle / single_alice / single_bob


def simulate(
    n_slots: int,
    rng: RandomSource,
    source: Optional[PairSource] = None,
    workers: int = 1,
) -> HyperdenseStats:
    """Seeded Monte Carlo over protocol slots with uniform source bits.

    Per slot: draw A1, A2, B1, B2, obtain c from ``source`` (the qubit path
    by default), run the slot, and tally the channel outcome. K is 3 exactly
    when the slot carried a single transmission, so integer channel tallies
    determine every statistic; results are identical for any worker count
    and either backend.
    """
    from . import _kernels

    if n_slots < 1:
        raise ValueError(f"n_slots must be >= 1, got {n_slots}")
    if source is None:
        source = QubitPairSource()
    plan = _kernels.chunk_plan(rng.next_u64(), n_slots)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            tallies = list(
                pool.map(lambda sc: _kernels.hyperdense_tally(sc[1], sc[0], source), plan)
            )
    else:
        tallies = [_kernels.hyperdense_tally(count, seed, source) for seed, count in plan]

    collision = sum(t[0] for t in tallies)
    idle = sum(t[1] for t in tallies)
    single_alice = sum(t[2] for t in tallies)
    single_bob = sum(t[3] for t in tallies)
    n_single = single_alice + single_bob

    return HyperdenseStats(
        total=RunStats.from_two_valued(n_slots, n_single, lo=2.0, hi=3.0),
        alice_to_bob=RunStats.from_two_valued(n_slots, single_alice, lo=1.0, hi=2.0),
        bob_to_alice=RunStats.from_two_valued(n_slots, single_bob, lo=1.0, hi=2.0),
        channel_counts={
            "collision": collision,
            "idle": idle,
            "single_alice": single_alice,
            "single_bob": single_bob,
        },
    )
