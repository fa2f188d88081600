"""Campaign runner: validated configs, seeded protocol runs, the three-way
comparison report, and the scenario table, serialized as text, JSON or CSV.

Reproducibility contract: a campaign's output is a pure function of its
config. Every protocol draws from its own labeled child stream of the
master seed, so runs are byte-identical across repetitions, worker counts
and backends, and changing one protocol's sample count cannot shift
another protocol's stream.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Optional

from . import aloha as aloha_mod
from . import hyperdense as hd
from . import superdense as sd
from .rng import RandomSource, derive_seed
from .stats import RunStats

DEFAULT_SLOTS = 1_000_000
DEFAULT_SEED = 42

PROTOCOLS = ("aloha", "superdense", "hyperdense", "compare")
FORMATS = ("json", "csv", "text")
C_SOURCES = ("qubit", "coin")

_MAX_SEED = (1 << 64) - 1


class ConfigError(ValueError):
    """Invalid campaign configuration; carries the offending field name."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass
class CampaignConfig:
    protocol: str
    n_slots: int = DEFAULT_SLOTS
    seed: int = DEFAULT_SEED
    m: int = 2  # aloha only
    p: Optional[float] = None  # aloha only; defaults to 1/M
    c_source: str = "qubit"  # hyperdense only
    output_format: str = "text"

    def validate(self) -> None:
        if self.protocol not in PROTOCOLS:
            raise ConfigError("protocol", f"must be one of {PROTOCOLS}, got {self.protocol!r}")
        if not isinstance(self.n_slots, int) or self.n_slots < 1:
            raise ConfigError("n_slots", f"must be an integer >= 1, got {self.n_slots!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed <= _MAX_SEED:
            raise ConfigError("seed", f"must be a 64-bit unsigned integer, got {self.seed!r}")
        if not isinstance(self.m, int) or self.m < 1:
            raise ConfigError("m", f"must be an integer >= 1, got {self.m!r}")
        if self.p is not None and not (
            isinstance(self.p, (int, float)) and 0.0 <= self.p <= 1.0
        ):
            raise ConfigError("p", f"must be in [0, 1], got {self.p!r}")
        if self.c_source not in C_SOURCES:
            raise ConfigError("c_source", f"must be one of {C_SOURCES}, got {self.c_source!r}")
        if self.output_format not in FORMATS:
            raise ConfigError(
                "output_format", f"must be one of {FORMATS}, got {self.output_format!r}"
            )

    def resolved_p(self) -> float:
        return self.p if self.p is not None else 1.0 / self.m


def _protocol_stream(seed: int, protocol: str) -> RandomSource:
    return RandomSource(derive_seed(seed, protocol))


@dataclass
class CampaignResult:
    protocol: str
    config: dict
    analytic: dict
    empirical: RunStats
    directions: Optional[dict] = None  # hyperdense: direction RunStats
    channel_counts: Optional[dict] = None
    slots: Optional[list] = field(default=None, repr=False)  # raw per-slot log

    def to_json_dict(self) -> dict:
        out = {
            "protocol": self.protocol,
            "config": self.config,
            "analytic": self.analytic,
            "empirical": self.empirical.as_dict(),
        }
        if self.directions is not None:
            out["empirical_directions"] = {
                name: stats.as_dict() for name, stats in self.directions.items()
            }
        if self.channel_counts is not None:
            out["channel_counts"] = self.channel_counts
        return out

    def render(self, output_format: str) -> str:
        return _render(self.to_json_dict(), output_format, _campaign_text)


def run_campaign(cfg: CampaignConfig, workers: int = 1, keep_slots: bool = False):
    """Run one campaign; returns a CampaignResult (or ComparisonReport).

    ``workers`` and ``keep_slots`` affect scheduling and logging only, never
    the reported numbers.
    """
    cfg.validate()
    if cfg.protocol == "compare":
        return compare(cfg.n_slots, cfg.seed, workers=workers)

    stream = _protocol_stream(cfg.seed, cfg.protocol)
    slots = _collect_slots(cfg, stream) if keep_slots else None

    if cfg.protocol == "aloha":
        params = aloha_mod.AlohaParams(cfg.m, cfg.resolved_p())
        empirical = aloha_mod.simulate(params, cfg.n_slots, stream, workers=workers)
        return CampaignResult(
            protocol="aloha",
            config={"n_slots": cfg.n_slots, "seed": cfg.seed, "m": cfg.m, "p": params.p},
            analytic={
                "success_probability": aloha_mod.success_probability(params),
                "total_throughput": aloha_mod.total_throughput(params),
                "optimal_p": aloha_mod.optimal_p(cfg.m),
                "max_throughput": aloha_mod.max_throughput(cfg.m),
            },
            empirical=empirical,
            slots=slots,
        )

    if cfg.protocol == "superdense":
        empirical = sd.simulate(cfg.n_slots, stream, workers=workers)
        return CampaignResult(
            protocol="superdense",
            config={"n_slots": cfg.n_slots, "seed": cfg.seed},
            analytic={"success_rate": 1.0, "bits_per_slot": float(sd.BITS_PER_USE)},
            empirical=empirical,
            slots=slots,
        )

    # hyperdense
    source = hd.QubitPairSource() if cfg.c_source == "qubit" else hd.CoinPairSource()
    result = hd.simulate(cfg.n_slots, stream, source=source, workers=workers)
    per_direction = hd.expected_bits_per_direction()
    return CampaignResult(
        protocol="hyperdense",
        config={"n_slots": cfg.n_slots, "seed": cfg.seed, "c_source": cfg.c_source},
        analytic={
            "expected_bits_per_slot": hd.expected_bits_analytic(),
            "expected_bits_alice_to_bob": per_direction["alice_to_bob"],
            "expected_bits_bob_to_alice": per_direction["bob_to_alice"],
        },
        empirical=result.total,
        directions={
            "alice_to_bob": result.alice_to_bob,
            "bob_to_alice": result.bob_to_alice,
        },
        channel_counts=result.channel_counts,
        slots=slots,
    )


def _collect_slots(cfg: CampaignConfig, stream: RandomSource) -> list:
    """Raw per-slot log, replayed from the same streams the tallies use."""
    from . import _kernels
    from ._kernels import pure

    plan = _kernels.chunk_plan(RandomSource(stream.seed).next_u64(), cfg.n_slots)
    slots: list = []
    if cfg.protocol == "aloha":
        for seed, count in plan:
            slots.extend(pure.aloha_slot_values(cfg.m, cfg.resolved_p(), count, seed))
    elif cfg.protocol == "superdense":
        for seed, count in plan:
            slots.extend(sd.trial_successes(count, seed))
    else:
        source = hd.QubitPairSource() if cfg.c_source == "qubit" else hd.CoinPairSource()
        for seed, count in plan:
            slots.extend(pure.hyperdense_outcomes(count, seed, source))
    return slots


@dataclass
class ComparisonReport:
    """Three-way report: hyperdense vs superdense vs slotted-Aloha (M=2)."""

    n_slots: int
    seed: int
    analytic: dict
    hyperdense: hd.HyperdenseStats
    superdense_bits: RunStats
    aloha_m2: RunStats

    def to_json_dict(self) -> dict:
        return {
            "protocol": "compare",
            "config": {"n_slots": self.n_slots, "seed": self.seed},
            "analytic": self.analytic,
            "empirical": {
                "hyperdense_total": self.hyperdense.total.as_dict(),
                "hyperdense_alice_to_bob": self.hyperdense.alice_to_bob.as_dict(),
                "hyperdense_bob_to_alice": self.hyperdense.bob_to_alice.as_dict(),
                "superdense_per_slot": self.superdense_bits.as_dict(),
                "aloha_m2_total": self.aloha_m2.as_dict(),
            },
        }

    def render(self, output_format: str) -> str:
        return _render(self.to_json_dict(), output_format, _compare_text)


def compare(n_slots: int, seed: int, workers: int = 1) -> ComparisonReport:
    """Run the three protocols on non-overlapping derived streams.

    Each protocol uses the same labeled stream it gets in a standalone
    campaign with the same master seed, so the numbers agree between
    ``compare`` and individual runs.
    """
    if n_slots < 1:
        raise ConfigError("n_slots", f"must be an integer >= 1, got {n_slots!r}")

    hyper = hd.simulate(
        n_slots, _protocol_stream(seed, "hyperdense"), source=hd.QubitPairSource(),
        workers=workers,
    )

    sd_stream = _protocol_stream(seed, "superdense")
    sd_successes = sd.count_successes(n_slots, sd_stream, workers=workers)
    superdense_bits = RunStats.from_two_valued(n_slots, sd_successes, lo=0.0, hi=2.0)

    params = aloha_mod.AlohaParams(2, aloha_mod.optimal_p(2))
    aloha_stats = aloha_mod.simulate(params, n_slots, _protocol_stream(seed, "aloha"),
                                     workers=workers)

    per_direction = hd.expected_bits_per_direction()
    return ComparisonReport(
        n_slots=n_slots,
        seed=seed,
        analytic={
            "hyperdense_total": hd.expected_bits_analytic(),
            "hyperdense_per_direction": per_direction["alice_to_bob"],
            "superdense_per_slot": float(sd.BITS_PER_USE),
            "aloha_m2_total": aloha_mod.max_throughput(2),
            "aloha_limit": math.exp(-1.0),
        },
        hyperdense=hyper,
        superdense_bits=superdense_bits,
        aloha_m2=aloha_stats,
    )


def scenario_rows() -> list[dict]:
    """The eight-scenario table as serializable row dicts."""
    rows = []
    for s in hd.enumerate_scenarios():
        delivered = sorted(list(s.delivered_to_bob) + list(s.delivered_to_alice))
        rows.append(
            {
                "l": s.scenario_index,
                "a1": s.alice.first,
                "b1": s.bob.first,
                "c": s.c,
                "alice_sends": "A2" if s.a_sent is not None else "-",
                "bob_sends": "B2" if s.b_sent is not None else "-",
                "channel": s.channel.state.table_label,
                "delivered": ",".join(delivered),
                "k": s.k,
            }
        )
    return rows


TABLE_CSV_HEADER = ["l", "a1", "b1", "c", "alice_sends", "bob_sends", "channel", "delivered", "k"]


def enumerate_table(output_format: str = "text") -> str:
    """Serialize the eight-scenario table in the requested format."""
    if output_format not in FORMATS:
        raise ConfigError("output_format", f"must be one of {FORMATS}, got {output_format!r}")
    rows = scenario_rows()
    k_sum = sum(r["k"] for r in rows)

    if output_format == "json":
        obj = {
            "rows": rows,
            "k_sum": k_sum,
            "expected_bits_per_slot": k_sum / len(rows),
        }
        return json.dumps(obj, indent=2) + "\n"

    if output_format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(TABLE_CSV_HEADER)
        for r in rows:
            writer.writerow([_csv_value(r[key]) for key in TABLE_CSV_HEADER])
        return buf.getvalue()

    lines = [
        "Hyperdense coding: the eight equally likely slot scenarios",
        "",
        f"{'l':>2} {'A1':>3} {'B1':>3} {'CaCb':>5} {'Alice':>6} {'Bob':>6} "
        f"{'channel':>10} {'delivered':>12} {'K':>2}",
    ]
    for r in rows:
        cacb = "00" if r["c"] == 0 else "11"
        lines.append(
            f"{r['l']:>2} {r['a1']:>3} {r['b1']:>3} {cacb:>5} {r['alice_sends']:>6} "
            f"{r['bob_sends']:>6} {r['channel']:>10} {r['delivered']:>12} {r['k']:>2}"
        )
    lines.append("")
    lines.append(f"sum K = {k_sum}, expected bits per slot = {k_sum / len(rows)}")
    return "\n".join(lines) + "\n"


def _csv_value(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _flatten(obj, prefix: str = "") -> list[tuple[str, object]]:
    if isinstance(obj, dict):
        out = []
        for key, value in obj.items():
            out.extend(_flatten(value, f"{prefix}.{key}" if prefix else str(key)))
        return out
    if isinstance(obj, (list, tuple)):
        out = []
        for i, value in enumerate(obj):
            out.extend(_flatten(value, f"{prefix}.{i}"))
        return out
    return [(prefix, obj)]


def _render(json_dict: dict, output_format: str, text_fn) -> str:
    if output_format == "json":
        return json.dumps(json_dict, indent=2) + "\n"
    if output_format == "csv":
        protocol = json_dict["protocol"]
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["protocol", "statistic", "value"])
        for path, value in _flatten(json_dict):
            if path == "protocol":
                continue
            writer.writerow([protocol, path, _csv_value(value)])
        return buf.getvalue()
    if output_format == "text":
        return text_fn(json_dict)
    raise ConfigError("output_format", f"must be one of {FORMATS}, got {output_format!r}")


def _stats_line(s: dict) -> str:
    lo, hi = s["ci95"]
    return (
        f"mean={s['mean']:.6f}  std_error={s['std_error']:.3e}  "
        f"ci95=[{lo:.6f}, {hi:.6f}]  n={s['n']}"
    )


def _campaign_text(obj: dict) -> str:
    lines = [f"protocol: {obj['protocol']}"]
    cfg = obj["config"]
    lines.append("config: " + ", ".join(f"{k}={v}" for k, v in cfg.items()))
    lines.append("analytic:")
    for key, value in obj["analytic"].items():
        lines.append(f"  {key} = {value}")
    lines.append("empirical: " + _stats_line(obj["empirical"]))
    if "empirical_directions" in obj:
        for name, s in obj["empirical_directions"].items():
            lines.append(f"  {name}: " + _stats_line(s))
    if "channel_counts" in obj:
        counts = obj["channel_counts"]
        lines.append("channel: " + ", ".join(f"{k}={v}" for k, v in counts.items()))
    return "\n".join(lines) + "\n"


def _compare_text(obj: dict) -> str:
    ana = obj["analytic"]
    emp = obj["empirical"]
    cfg = obj["config"]
    lines = [
        f"Protocol comparison ({cfg['n_slots']} slots per protocol, seed {cfg['seed']})",
        "",
        f"hyperdense {ana['hyperdense_total']} bits/slot "
        f"({ana['hyperdense_per_direction']} per direction) "
        f"vs superdense {ana['superdense_per_slot']} "
        f"vs slotted-Aloha {ana['aloha_m2_total']} (M=2)",
        "",
        f"{'protocol':<26} {'analytic':>10}   empirical",
        f"{'hyperdense total':<26} {ana['hyperdense_total']:>10} "
        f"  {_stats_line(emp['hyperdense_total'])}",
        f"{'hyperdense alice->bob':<26} {ana['hyperdense_per_direction']:>10} "
        f"  {_stats_line(emp['hyperdense_alice_to_bob'])}",
        f"{'hyperdense bob->alice':<26} {ana['hyperdense_per_direction']:>10} "
        f"  {_stats_line(emp['hyperdense_bob_to_alice'])}",
        f"{'superdense':<26} {ana['superdense_per_slot']:>10} "
        f"  {_stats_line(emp['superdense_per_slot'])}",
        f"{'slotted-Aloha (M=2)':<26} {ana['aloha_m2_total']:>10} "
        f"  {_stats_line(emp['aloha_m2_total'])}",
        "",
        f"slotted-Aloha M->inf limit: 1/e = {ana['aloha_limit']}",
    ]
    return "\n".join(lines) + "\n"
