"""EC key agreement, message embedding, ElGamal encryption, and
challenge-response authentication.

All randomness comes from caller-supplied random.Random instances so that
every protocol run is reproducible from a scenario seed.

Scheme summary (standard EC-ElGamal over the curve layer):
  keygen      private d in [1, n), public P = d*G
  ECDH        K = a*P_B = b*P_A, key bytes from K.x
  encrypt     C = (k*G, P_m + k*P_B) with fresh ephemeral k
  decrypt     P_m = C2 - d*C1
  auth        RSU sends c*G, vehicle returns d*(c*G), RSU checks c*P_vehicle

Byte strings are framed into fixed-width blocks (see encrypt_bytes): an
explicit length-prefix block followed by payload chunks in little-endian
block order, each chunk embedded into a point by expansion-factor search.
"""

from dataclasses import dataclass
from random import Random
from typing import List, Sequence

from .curve import (
    IDENTITY,
    CurveParams,
    CurvePoint,
    is_on_curve,
    point_add,
    point_sub,
    scalar_mul,
    sqrt_mod,
)
from .errors import (
    DecryptionGarbage,
    DegenerateSharedSecret,
    EncodingFailure,
    IdentityPoint,
    InvalidChallenge,
    InvalidEphemeral,
    InvalidPeerKey,
    MessageOutOfRange,
)


@dataclass(frozen=True)
class KeyPair:
    private: int
    public: CurvePoint


@dataclass(frozen=True)
class CipherPair:
    """Two-point ciphertext: c1 = k*G, c2 = P_m + k*P_receiver."""

    c1: CurvePoint
    c2: CurvePoint

    def __str__(self):
        return f"{self.c1};{self.c2}"

    @classmethod
    def parse(cls, text: str) -> "CipherPair":
        s1, s2 = text.strip().split(";")
        return cls(CurvePoint.parse(s1), CurvePoint.parse(s2))


@dataclass(frozen=True)
class SharedSecret:
    point: CurvePoint
    key_bytes: bytes


@dataclass(frozen=True)
class EncodedBlock:
    point: CurvePoint
    payload_bits: int


def default_expansion(params: CurveParams) -> int:
    """Expansion factor for message embedding: 4 on toy curves, 16 otherwise."""
    return 4 if params.q < 4096 else 16


def payload_bits(params: CurveParams, kappa: int) -> int:
    """Bits per embedded block: floor(log2(q / kappa))."""
    return (params.q // kappa).bit_length() - 1


def keygen(params: CurveParams, rng: Random) -> KeyPair:
    private = rng.randrange(1, params.n)
    return KeyPair(private, scalar_mul(private, params.G, params))


def ecdh_shared(my_private: int, peer_public: CurvePoint, params: CurveParams) -> SharedSecret:
    """Shared secret my_private * peer_public; both sides derive the same point."""
    if peer_public.is_identity or not is_on_curve(peer_public, params):
        raise InvalidPeerKey(f"peer key {peer_public} rejected")
    point = scalar_mul(my_private % params.n, peer_public, params)
    if point.is_identity:
        # only reachable when n is composite and the scalars share factors
        raise DegenerateSharedSecret("shared point is the identity")
    width = (params.q.bit_length() + 7) // 8
    return SharedSecret(point, point.x.to_bytes(width, "big"))


def encode_message(m: int, params: CurveParams, kappa: int) -> EncodedBlock:
    """Embed integer m into a point with x in [m*kappa, m*kappa + kappa).

    Picks the smallest offset j whose x-coordinate has a square rhs
    (Euler criterion via sqrt_mod), and the smaller of the two roots.
    Fails with probability about 2^-kappa.
    """
    if not 0 <= m < params.q // kappa:
        raise MessageOutOfRange(f"m={m} not in [0, {params.q // kappa})")
    q, a, b = params.q, params.a, params.b
    for j in range(kappa):
        x = m * kappa + j
        y = sqrt_mod(x * x * x + a * x + b, q)
        if y is not None:
            return EncodedBlock(CurvePoint(x, min(y, q - y)), payload_bits(params, kappa))
    raise EncodingFailure(f"no embeddable x in window for m={m}")


def decode_message(block: EncodedBlock, kappa: int) -> int:
    if block.point.is_identity:
        raise IdentityPoint("cannot decode the identity")
    return block.point.x // kappa


def elgamal_encrypt(pm: CurvePoint, receiver_public: CurvePoint, k: int,
                    params: CurveParams) -> CipherPair:
    """Ciphertext (k*G, pm + k*receiver_public) for ephemeral k in [1, n)."""
    if not 1 <= k < params.n:
        raise InvalidEphemeral(f"ephemeral {k} not in [1, {params.n})")
    if receiver_public.is_identity or not is_on_curve(receiver_public, params):
        raise InvalidPeerKey(f"receiver key {receiver_public} rejected")
    c1 = scalar_mul(k, params.G, params)
    c2 = point_add(pm, scalar_mul(k, receiver_public, params), params)
    return CipherPair(c1, c2)


def elgamal_decrypt(ct: CipherPair, receiver_private: int, params: CurveParams) -> CurvePoint:
    """Recover pm as c2 - receiver_private * c1."""
    return point_sub(ct.c2, scalar_mul(receiver_private, ct.c1, params), params)


# -- byte-string framing ---------------------------------------------------------

def bytes_to_blocks(payload: bytes, params: CurveParams, kappa: int) -> List[int]:
    """Length-prefix block followed by payload chunks, least significant first."""
    bits = payload_bits(params, kappa)
    limit = (1 << bits) - 1
    if len(payload) > limit:
        raise MessageOutOfRange(f"payload of {len(payload)} bytes exceeds {limit}")
    total = int.from_bytes(payload, "little")
    nblocks = -(-len(payload) * 8 // bits)
    mask = (1 << bits) - 1
    return [len(payload)] + [(total >> (i * bits)) & mask for i in range(nblocks)]


def blocks_to_bytes(blocks: Sequence[int], params: CurveParams, kappa: int) -> bytes:
    bits = payload_bits(params, kappa)
    if not blocks:
        raise DecryptionGarbage("empty block stream")
    length = blocks[0]
    expected = -(-length * 8 // bits)
    if length > (1 << bits) - 1 or len(blocks) - 1 != expected:
        raise DecryptionGarbage(
            f"length prefix {length} inconsistent with {len(blocks) - 1} blocks")
    total = 0
    for i, chunk in enumerate(blocks[1:]):
        total |= chunk << (i * bits)
    if total.bit_length() > length * 8:
        raise DecryptionGarbage("padding bits set above declared length")
    return total.to_bytes(length, "little")


def encrypt_bytes(payload: bytes, receiver_public: CurvePoint, params: CurveParams,
                  rng: Random, kappa: int | None = None) -> List[CipherPair]:
    """Frame, embed, and ElGamal-encrypt a byte string block by block."""
    kappa = kappa or default_expansion(params)
    out = []
    for m in bytes_to_blocks(payload, params, kappa):
        pm = encode_message(m, params, kappa).point
        k = rng.randrange(1, params.n)
        out.append(elgamal_encrypt(pm, receiver_public, k, params))
    return out


def decrypt_bytes(pairs: Sequence[CipherPair], receiver_private: int,
                  params: CurveParams, kappa: int | None = None) -> bytes:
    kappa = kappa or default_expansion(params)
    blocks = []
    for ct in pairs:
        pm = elgamal_decrypt(ct, receiver_private, params)
        if pm.is_identity:
            raise DecryptionGarbage("block decrypted to the identity")
        blocks.append(decode_message(EncodedBlock(pm, payload_bits(params, kappa)), kappa))
    return blocks_to_bytes(blocks, params, kappa)


# -- challenge-response authentication ----------------------------------------------

def auth_challenge(params: CurveParams, rng: Random):
    """Fresh challenge scalar c in [1, n) and its public point c*G."""
    c = rng.randrange(1, params.n)
    return c, scalar_mul(c, params.G, params)


def auth_respond(vehicle_private: int, challenge_point: CurvePoint,
                 params: CurveParams) -> CurvePoint:
    """Prover side: returns private * challenge_point."""
    if not is_on_curve(challenge_point, params):
        raise InvalidChallenge(f"challenge {challenge_point} is off-curve")
    return scalar_mul(vehicle_private % params.n, challenge_point, params)


def auth_verify(response: CurvePoint, challenge_scalar: int,
                vehicle_public: CurvePoint, params: CurveParams) -> bool:
    """Accept iff response == challenge_scalar * vehicle_public."""
    return response == scalar_mul(challenge_scalar % params.n, vehicle_public, params)
