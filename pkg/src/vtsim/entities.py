"""Protocol roles wired together by the simulator.

Four parties, mirroring the deployment the simulator models:

  TrustedAuthority  off-line registrar; issues every keypair before the
                    clock starts and owns the public directory
  VehicleUnit       on-board unit: authenticates to RSUs, encrypts and
                    submits safety messages
  RoadsideUnit      fixed infrastructure: challenge-response gatekeeper,
                    decrypts submissions, runs the plausibility check, and
                    relays observations to the trust agent
  TrustAgent        regional authority owning all trust records; the only
                    writer of trust state, and the party that evicts

Separation of duty is deliberate: RSUs never touch trust arithmetic, they
only consult the agent's published eviction set before forwarding.
"""

from dataclasses import dataclass, field
from enum import Enum
from random import Random
from typing import Callable, Dict, List, Optional, Set, Tuple

from . import ecc
from .curve import CurveParams, CurvePoint
from .errors import (
    DecryptionGarbage,
    DuplicateRegistration,
    NoSession,
    OutOfRange,
    UnknownVehicle,
)
from .mobility import in_range
from .trust import TrustConfig, TrustEvent, TrustEventKind, TrustLedger, TrustRecord, is_trusted

Position = Tuple[float, float]


@dataclass(frozen=True)
class RegistrationRecord:
    entity_id: str
    role: str  # OBU | RSU | ATA
    keypair: ecc.KeyPair
    registered_at: float


@dataclass
class SafetyMessage:
    origin: str
    seq: int
    payload: bytes
    timestamp: float
    #: ground-truth marker used only by the simulated plausibility check
    bogus: bool = False


@dataclass(frozen=True)
class Envelope:
    """Ciphertext in flight from an OBU to an RSU, plus simulation-only
    ground truth that protocol logic must never read."""

    origin: str
    rsu_id: str
    seq: int
    blocks: Tuple[ecc.CipherPair, ...]
    sent_at: float
    bogus: bool


class SessionState(str, Enum):
    CHALLENGED = "challenged"
    VERIFIED = "verified"
    FAILED = "failed"


@dataclass
class AuthSession:
    rsu_id: str
    vehicle_id: str
    challenge: int
    state: SessionState
    started_at: float


@dataclass(frozen=True)
class EvictionNotice:
    vehicle_id: str
    time: float


class TrustedAuthority:
    """Issues keypairs off-line and keeps the registration directory."""

    def __init__(self, params: CurveParams, rng: Random):
        self.params = params
        self.rng = rng
        self.directory: Dict[str, RegistrationRecord] = {}
        self._by_public: Dict[CurvePoint, str] = {}

    def register(self, entity_id: str, role: str,
                 registered_at: float = 0.0) -> RegistrationRecord:
        if entity_id in self.directory:
            raise DuplicateRegistration(f"{entity_id} already registered")
        record = RegistrationRecord(
            entity_id=entity_id,
            role=role,
            keypair=ecc.keygen(self.params, self.rng),
            registered_at=registered_at,
        )
        self.directory[entity_id] = record
        self._by_public[record.keypair.public] = entity_id
        return record

    def is_registered(self, entity_id: str) -> bool:
        return entity_id in self.directory

    def lookup_public(self, public: CurvePoint) -> Optional[RegistrationRecord]:
        entity_id = self._by_public.get(public)
        return self.directory[entity_id] if entity_id is not None else None

    def public_key(self, entity_id: str) -> CurvePoint:
        return self.directory[entity_id].keypair.public


class VehicleUnit:
    """OBU side of the protocol: per-RSU sessions and encrypted submissions."""

    def __init__(self, vehicle_id: str, keypair: ecc.KeyPair, params: CurveParams):
        self.vehicle_id = vehicle_id
        self.keypair = keypair
        self.params = params
        self.sessions: Dict[str, AuthSession] = {}
        self.next_seq = 0

    def respond(self, challenge_point: CurvePoint) -> CurvePoint:
        return ecc.auth_respond(self.keypair.private, challenge_point, self.params)

    def verified_with(self, rsu_id: str) -> bool:
        session = self.sessions.get(rsu_id)
        return session is not None and session.state == SessionState.VERIFIED

    def send_safety(self, rsu_id: str, rsu_public: CurvePoint, payload: bytes,
                    rng: Random, now: float, bogus: bool = False) -> Envelope:
        """Chunk, embed, and encrypt a safety payload for one RSU.

        Requires a verified session; EncodingFailure from the embedding
        search propagates to the caller.
        """
        if not self.verified_with(rsu_id):
            raise NoSession(f"{self.vehicle_id} has no verified session with {rsu_id}")
        blocks = ecc.encrypt_bytes(payload, rsu_public, self.params, rng)
        envelope = Envelope(
            origin=self.vehicle_id,
            rsu_id=rsu_id,
            seq=self.next_seq,
            blocks=tuple(blocks),
            sent_at=now,
            bogus=bogus,
        )
        self.next_seq += 1
        return envelope

    def drop_session(self, rsu_id: str):
        self.sessions.pop(rsu_id, None)


class RoadsideUnit:
    """Authentication gatekeeper and observation relay for one road segment."""

    def __init__(self, rsu_id: str, keypair: ecc.KeyPair, position: Position,
                 params: CurveParams, authority: TrustedAuthority,
                 radio_range: float, detect_p: float = 0.9, fp_p: float = 0.0):
        self.rsu_id = rsu_id
        self.keypair = keypair
        self.position = position
        self.params = params
        self.authority = authority
        self.radio_range = radio_range
        self.detect_p = detect_p
        self.fp_p = fp_p
        self.sessions: Dict[str, AuthSession] = {}

    def authenticate(self, vehicle_public: CurvePoint,
                     responder: Callable[[CurvePoint], CurvePoint],
                     vehicle_position: Position, now: float,
                     rng: Random) -> Tuple[AuthSession, Optional[TrustEvent]]:
        """Run the challenge-response handshake with a vehicle in range.

        Returns the session and, on failure, the AuthFailure observation
        destined for the trust agent.
        """
        record = self.authority.lookup_public(vehicle_public)
        if record is None:
            raise UnknownVehicle("public key not in the registration directory")
        if not in_range(self.position[0], self.position[1],
                        vehicle_position[0], vehicle_position[1], self.radio_range):
            raise OutOfRange(f"{record.entity_id} outside {self.rsu_id} radio range")
        challenge, challenge_point = ecc.auth_challenge(self.params, rng)
        session = AuthSession(
            rsu_id=self.rsu_id,
            vehicle_id=record.entity_id,
            challenge=challenge,
            state=SessionState.CHALLENGED,
            started_at=now,
        )
        response = responder(challenge_point)
        if ecc.auth_verify(response, challenge, vehicle_public, self.params):
            session.state = SessionState.VERIFIED
            event = None
        else:
            session.state = SessionState.FAILED
            event = TrustEvent(
                subject=record.entity_id,
                kind=TrustEventKind.AUTH_FAILURE,
                reporter=self.rsu_id,
                time=now,
            )
        self.sessions[record.entity_id] = session
        return session, event

    def ingest_and_forward(self, envelope: Envelope, session: AuthSession,
                           now: float, rng: Random) -> Tuple[SafetyMessage, TrustEvent]:
        """Decrypt a submission, score its plausibility, and emit the
        observation to forward to the trust agent.

        Framing failures are scored as invalid messages rather than raised:
        a vehicle that sends garbage earns a penalty.
        """
        if session.state != SessionState.VERIFIED:
            raise NoSession(f"session with {session.vehicle_id} not verified")
        garbage = False
        try:
            payload = ecc.decrypt_bytes(list(envelope.blocks),
                                        self.keypair.private, self.params)
        except DecryptionGarbage:
            payload = b""
            garbage = True
        message = SafetyMessage(
            origin=session.vehicle_id,
            seq=envelope.seq,
            payload=payload,
            timestamp=now,
            bogus=envelope.bogus,
        )
        if garbage:
            suspicious = True
        elif envelope.bogus:
            suspicious = rng.random() < self.detect_p
        else:
            suspicious = rng.random() < self.fp_p
        kind = TrustEventKind.INVALID_MESSAGE if suspicious else TrustEventKind.VALID_MESSAGE
        event = TrustEvent(subject=session.vehicle_id, kind=kind,
                           reporter=self.rsu_id, time=now)
        return message, event

    def observe_packet_drop(self, relay_id: str, now: float) -> TrustEvent:
        """Observation of a relay dropping a data packet inside coverage."""
        return TrustEvent(subject=relay_id, kind=TrustEventKind.PACKET_DROP_OBSERVED,
                          reporter=self.rsu_id, time=now)


class TrustAgent:
    """ATA: the single writer of trust records and source of evictions."""

    def __init__(self, agent_id: str, config: TrustConfig,
                 registered_ids=(), eviction_enabled: bool = True):
        self.agent_id = agent_id
        self.ledger = TrustLedger(config, registered_ids)
        self.eviction_enabled = eviction_enabled
        #: published set consulted by RSUs before forwarding
        self.evicted: Set[str] = set()
        self.eviction_log: List[EvictionNotice] = []

    def process(self, message: Optional[SafetyMessage],
                event: TrustEvent) -> Tuple[TrustRecord, Optional[EvictionNotice]]:
        """Score one observation; returns the updated record and an
        eviction notice when trust first falls below the threshold."""
        record = self.ledger.apply(event)
        notice = None
        if (self.eviction_enabled
                and event.subject not in self.evicted
                and not is_trusted(record, self.ledger.config)):
            self.evicted.add(event.subject)
            notice = EvictionNotice(vehicle_id=event.subject, time=event.time)
            self.eviction_log.append(notice)
        return record, notice
