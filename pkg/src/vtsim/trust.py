"""Per-vehicle trust records and the update rule applied by the trust
authority agent.

Trust is a scalar in [0, 1] blended from three factors:

  * a direct component moved by reward/penalty deltas per scored event,
  * recommendations from neighbours (trust-weighted mean of reported
    values), falling back to the direct component when absent,
  * the fraction of valid outcomes in a bounded history window, falling
    back to the direct component while the window is empty.

Only the ATA mutates records; RSUs merely report observations. A vehicle
whose trust falls below the eviction threshold is evicted for the rest of
the run.
"""

from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Deque, Dict, Iterable, Sequence, Tuple

from .errors import DuplicateRecord, SubjectMismatch, UnregisteredVehicle


class TrustEventKind(str, Enum):
    VALID_MESSAGE = "valid_message"
    INVALID_MESSAGE = "invalid_message"
    PACKET_DROP_OBSERVED = "packet_drop_observed"
    AUTH_FAILURE = "auth_failure"


#: event kinds that move the direct component down
PENALTY_KINDS = frozenset(
    {
        TrustEventKind.INVALID_MESSAGE,
        TrustEventKind.PACKET_DROP_OBSERVED,
        TrustEventKind.AUTH_FAILURE,
    }
)


@dataclass(frozen=True)
class TrustConfig:
    initial_trust: float = 0.5
    reward_delta: float = 0.05
    penalty_delta: float = 0.2
    eviction_threshold: float = 0.3
    w_direct: float = 0.6
    w_recommend: float = 0.2
    w_history: float = 0.2
    history_window: int = 20

    def problems(self):
        out = []
        if not 0.0 < self.eviction_threshold < 1.0:
            out.append("eviction_threshold must lie in (0, 1)")
        if not 0.0 < self.reward_delta <= 1.0:
            out.append("reward_delta must lie in (0, 1]")
        if not 0.0 < self.penalty_delta <= 1.0:
            out.append("penalty_delta must lie in (0, 1]")
        if not 0.0 <= self.initial_trust <= 1.0:
            out.append("initial_trust must lie in [0, 1]")
        weights = (self.w_direct, self.w_recommend, self.w_history)
        if min(weights) < 0.0:
            out.append("trust weights must be non-negative")
        if abs(sum(weights) - 1.0) > 1e-9:
            out.append("trust weights must sum to 1")
        if self.history_window < 1:
            out.append("history_window must be >= 1")
        return out


@dataclass(frozen=True)
class TrustEvent:
    subject: str
    kind: TrustEventKind
    reporter: str
    time: float


@dataclass
class TrustRecord:
    vehicle_id: str
    trust: float
    direct: float
    reward_points: int = 0
    interactions: int = 0
    history: Deque[bool] = field(default_factory=deque)
    last_update: float = 0.0


def _clamp(x: float) -> float:
    return 0.0 if x < 0.0 else 1.0 if x > 1.0 else x


def compute_trust(direct: float,
                  recommendations: Sequence[Tuple[float, float]],
                  history: Iterable[bool],
                  config: TrustConfig) -> float:
    """Blend direct experience, recommendations, and history into [0, 1].

    recommendations is a sequence of (recommender_trust, reported_value)
    pairs; each reported value is weighted by its recommender's own trust.
    """
    total_weight = sum(t for t, _ in recommendations)
    if total_weight > 0.0:
        rec_term = sum(t * v for t, v in recommendations) / total_weight
    else:
        rec_term = direct
    outcomes = list(history)
    hist_term = sum(outcomes) / len(outcomes) if outcomes else direct
    blended = (config.w_direct * direct
               + config.w_recommend * rec_term
               + config.w_history * hist_term)
    return _clamp(blended)


def apply_event(record: TrustRecord, event: TrustEvent, config: TrustConfig,
                recommendations: Sequence[Tuple[float, float]] = ()) -> TrustRecord:
    """Score one observation and return the updated record (input untouched)."""
    if event.subject != record.vehicle_id:
        raise SubjectMismatch(
            f"event subject {event.subject} != record {record.vehicle_id}")
    valid = event.kind == TrustEventKind.VALID_MESSAGE
    if valid:
        direct = _clamp(record.direct + config.reward_delta)
    else:
        direct = _clamp(record.direct - config.penalty_delta)
    history = deque(record.history, maxlen=config.history_window)
    history.append(valid)
    return replace(
        record,
        direct=direct,
        trust=compute_trust(direct, recommendations, history, config),
        reward_points=record.reward_points + (1 if valid else 0),
        interactions=record.interactions + 1,
        history=history,
        last_update=event.time,
    )


def is_trusted(record: TrustRecord, config: TrustConfig) -> bool:
    """Threshold test; the boundary value itself still counts as trusted."""
    return record.trust >= config.eviction_threshold


class TrustLedger:
    """The ATA's single-writer store of all trust records in a run."""

    def __init__(self, config: TrustConfig, registered_ids: Iterable[str] = ()):
        self.config = config
        self.registered = set(registered_ids)
        self.records: Dict[str, TrustRecord] = {}

    def register(self, vehicle_id: str):
        self.registered.add(vehicle_id)

    def init_trust(self, vehicle_id: str) -> TrustRecord:
        if vehicle_id not in self.registered:
            raise UnregisteredVehicle(f"{vehicle_id} is not registered")
        if vehicle_id in self.records:
            # existing records are never overwritten
            raise DuplicateRecord(f"record for {vehicle_id} already exists")
        record = TrustRecord(
            vehicle_id=vehicle_id,
            trust=self.config.initial_trust,
            direct=self.config.initial_trust,
            history=deque(maxlen=self.config.history_window),
        )
        self.records[vehicle_id] = record
        return record

    def apply(self, event: TrustEvent,
              recommendations: Sequence[Tuple[float, float]] = ()) -> TrustRecord:
        if event.subject not in self.registered:
            raise UnregisteredVehicle(f"{event.subject} is not registered")
        record = self.records.get(event.subject)
        if record is None:
            record = self.init_trust(event.subject)
        updated = apply_event(record, event, self.config, recommendations)
        self.records[event.subject] = updated
        return updated

    def get(self, vehicle_id: str) -> TrustRecord:
        try:
            return self.records[vehicle_id]
        except KeyError:
            raise UnregisteredVehicle(f"no record for {vehicle_id}") from None

    def trusted(self, vehicle_id: str) -> bool:
        return is_trusted(self.get(vehicle_id), self.config)
