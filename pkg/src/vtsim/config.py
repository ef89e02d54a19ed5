"""Scenario configuration: a flat key=value file mirrored one-to-one onto
ScenarioConfig fields, plus validation with per-field diagnostics.

File format: UTF-8 text, one `key = value` pair per line, `#` starts a
comment. Lists use `;` between items and `,` within an item, e.g.
`rsu_positions = 250,500; 750,500`.
"""

from dataclasses import dataclass, field, fields, replace
from typing import Optional, Tuple

from .curve import SCAN_LIMIT, CurveParams, CurvePoint, derive_order, get_profile
from .errors import ConfigInvalid, InvalidCurve, SingularCurve
from .trust import TrustConfig


@dataclass(frozen=True)
class ScenarioConfig:
    area_width_m: float = 1000.0
    area_height_m: float = 1000.0
    duration_s: float = 150.0
    n_vehicles: int = 31
    rsu_positions: Tuple[Tuple[float, float], ...] = ((250.0, 500.0), (750.0, 500.0))
    malicious_count: int = 3
    malicious_ids: Tuple[str, ...] = ()  # explicit ids win over the count
    drop_p: float = 0.8
    bogus_p: float = 0.5
    detect_p: float = 0.9
    fp_p: float = 0.0
    speed_min_mps: float = 5.0
    speed_max_mps: float = 15.0
    radio_range_m: float = 250.0
    msg_interval_s: float = 1.0
    data_interval_s: float = 1.0
    data_payload_bytes: int = 256
    link_rate_bps: float = 6_000_000.0
    hop_latency_s: float = 0.001
    channel_delay_s: float = 0.005
    dsdv_interval_s: float = 1.0
    mobility_tick_s: float = 0.1
    traffic_start_s: float = 2.0
    traffic_stop_margin_s: float = 2.0
    max_hops: int = 32
    sample_interval_s: float = 5.0
    bandwidth_window_s: float = 5.0
    seed: int = 1
    eviction_enabled: bool = True
    curve: str = "desk"
    curve_q: Optional[int] = None
    curve_a: Optional[int] = None
    curve_b: Optional[int] = None
    curve_gx: Optional[int] = None
    curve_gy: Optional[int] = None
    curve_n: Optional[int] = None
    trust: TrustConfig = field(default_factory=TrustConfig)

    def vehicle_ids(self) -> Tuple[str, ...]:
        width = max(2, len(str(self.n_vehicles)))
        return tuple(f"v{i:0{width}d}" for i in range(1, self.n_vehicles + 1))

    def rsu_ids(self) -> Tuple[str, ...]:
        return tuple(f"rsu{i}" for i in range(1, len(self.rsu_positions) + 1))

    def validate(self) -> "ScenarioConfig":
        problems = []
        if self.n_vehicles < 1:
            problems.append("n_vehicles: must be >= 1")
        if self.duration_s <= 0:
            problems.append("duration_s: must be > 0")
        if self.area_width_m <= 0 or self.area_height_m <= 0:
            problems.append("area: both dimensions must be > 0")
        if not self.rsu_positions:
            problems.append("rsu_positions: at least one RSU required")
        if self.malicious_ids:
            unknown = set(self.malicious_ids) - set(self.vehicle_ids())
            if unknown:
                problems.append(f"malicious_ids: unknown ids {sorted(unknown)}")
        elif not 0 <= self.malicious_count <= self.n_vehicles:
            problems.append("malicious_count: must lie in [0, n_vehicles]")
        for name in ("drop_p", "bogus_p", "detect_p", "fp_p"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                problems.append(f"{name}: must lie in [0, 1]")
        if self.speed_min_mps < 0 or self.speed_max_mps < self.speed_min_mps:
            problems.append("speed range: need 0 <= speed_min_mps <= speed_max_mps")
        for name in ("radio_range_m", "msg_interval_s", "data_interval_s",
                     "link_rate_bps", "dsdv_interval_s", "mobility_tick_s",
                     "sample_interval_s", "bandwidth_window_s"):
            if getattr(self, name) <= 0:
                problems.append(f"{name}: must be > 0")
        for name in ("hop_latency_s", "channel_delay_s", "traffic_start_s"):
            if getattr(self, name) < 0:
                problems.append(f"{name}: must be >= 0")
        if self.data_payload_bytes < 1:
            problems.append("data_payload_bytes: must be >= 1")
        if self.max_hops < 1:
            problems.append("max_hops: must be >= 1")
        in_flight = (self.max_hops
                     * (self.hop_latency_s + self.data_payload_bytes / self.link_rate_bps)
                     + 2 * self.channel_delay_s)
        if self.traffic_stop_margin_s < in_flight:
            problems.append(
                f"traffic_stop_margin_s: must be >= {in_flight:.3f} so packets "
                "in flight settle before the run ends")
        problems.extend(f"trust: {p}" for p in self.trust.problems())
        try:
            self.curve_params()
        except (ConfigInvalid, InvalidCurve, SingularCurve) as exc:
            problems.append(f"curve: {exc}")
        if problems:
            raise ConfigInvalid(problems)
        return self

    def curve_params(self) -> CurveParams:
        if self.curve != "custom":
            return get_profile(self.curve)
        missing = [k for k in ("curve_q", "curve_a", "curve_b", "curve_gx", "curve_gy")
                   if getattr(self, k) is None]
        if missing:
            raise ConfigInvalid([f"custom curve: missing {', '.join(missing)}"])
        n = self.curve_n
        if n is None:
            if self.curve_q >= SCAN_LIMIT:
                raise ConfigInvalid(
                    ["custom curve: curve_n required when q exceeds the scan limit"])
            n = derive_order(self.curve_q, self.curve_a, self.curve_b,
                             self.curve_gx, self.curve_gy)
        params = CurveParams(q=self.curve_q, a=self.curve_a, b=self.curve_b,
                             G=CurvePoint(self.curve_gx, self.curve_gy),
                             n=n, name="custom")
        return params.validate()

    def to_flat_dict(self) -> dict:
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "trust":
                out["trust_initial"] = value.initial_trust
                out["trust_reward"] = value.reward_delta
                out["trust_penalty"] = value.penalty_delta
                out["trust_threshold"] = value.eviction_threshold
                out["trust_w_direct"] = value.w_direct
                out["trust_w_recommend"] = value.w_recommend
                out["trust_w_history"] = value.w_history
                out["trust_history_window"] = value.history_window
            elif f.name == "rsu_positions":
                out[f.name] = "; ".join(f"{x:g},{y:g}" for x, y in value)
            elif f.name == "malicious_ids":
                out[f.name] = ",".join(value)
            elif value is not None:
                out[f.name] = value
        return out


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_positions(text: str):
    positions = []
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        sx, sy = item.split(",")
        positions.append((float(sx), float(sy)))
    return tuple(positions)


def _parse_ids(text: str):
    return tuple(item.strip() for item in text.split(",") if item.strip())


# key -> (target field path, converter)
_TRUST_KEYS = {
    "trust_initial": "initial_trust",
    "trust_reward": "reward_delta",
    "trust_penalty": "penalty_delta",
    "trust_threshold": "eviction_threshold",
    "trust_w_direct": "w_direct",
    "trust_w_recommend": "w_recommend",
    "trust_w_history": "w_history",
}

_CONVERTERS = {
    "area_width_m": float, "area_height_m": float, "duration_s": float,
    "n_vehicles": int, "rsu_positions": _parse_positions,
    "malicious_count": int, "malicious_ids": _parse_ids,
    "drop_p": float, "bogus_p": float, "detect_p": float, "fp_p": float,
    "speed_min_mps": float, "speed_max_mps": float, "radio_range_m": float,
    "msg_interval_s": float, "data_interval_s": float,
    "data_payload_bytes": int, "link_rate_bps": float,
    "hop_latency_s": float, "channel_delay_s": float,
    "dsdv_interval_s": float, "mobility_tick_s": float,
    "traffic_start_s": float, "traffic_stop_margin_s": float,
    "max_hops": int, "sample_interval_s": float, "bandwidth_window_s": float,
    "seed": int, "eviction_enabled": _parse_bool, "curve": str.strip,
    "curve_q": int, "curve_a": int, "curve_b": int,
    "curve_gx": int, "curve_gy": int, "curve_n": int,
}


def apply_settings(config: ScenarioConfig, settings: dict) -> ScenarioConfig:
    """Overlay string key=value settings onto a config; collects bad keys
    and unparsable values into one ConfigInvalid."""
    problems = []
    plain = {}
    trust_kwargs = {}
    for key, raw in settings.items():
        raw = raw.strip() if isinstance(raw, str) else raw
        if key in _TRUST_KEYS or key == "trust_history_window":
            try:
                if key == "trust_history_window":
                    trust_kwargs["history_window"] = int(raw)
                else:
                    trust_kwargs[_TRUST_KEYS[key]] = float(raw)
            except ValueError as exc:
                problems.append(f"{key}: {exc}")
        elif key in _CONVERTERS:
            try:
                plain[key] = _CONVERTERS[key](raw)
            except (ValueError, TypeError) as exc:
                problems.append(f"{key}: {exc}")
        else:
            problems.append(f"{key}: unknown configuration key")
    if problems:
        raise ConfigInvalid(problems)
    if trust_kwargs:
        plain["trust"] = replace(config.trust, **trust_kwargs)
    return replace(config, **plain)


def parse_config_text(text: str, base: ScenarioConfig | None = None) -> ScenarioConfig:
    settings = {}
    problems = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            problems.append(f"line {lineno}: expected key = value")
            continue
        key, value = stripped.split("=", 1)
        settings[key.strip()] = value.strip()
    if problems:
        raise ConfigInvalid(problems)
    return apply_settings(base or ScenarioConfig(), settings)


def load_config(path, base: ScenarioConfig | None = None) -> ScenarioConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config_text(fh.read(), base)
