"""Protocol-level crypto tests: key agreement, embedding, ElGamal, auth."""

import math
import random

import pytest

from vtsim.curve import DESK, IDENTITY, TINY23, CurvePoint, enumerate_points, is_on_curve, point_add
from vtsim.ecc import (
    CipherPair,
    EncodedBlock,
    auth_challenge,
    auth_respond,
    auth_verify,
    blocks_to_bytes,
    bytes_to_blocks,
    decode_message,
    decrypt_bytes,
    default_expansion,
    ecdh_shared,
    elgamal_decrypt,
    elgamal_encrypt,
    encode_message,
    encrypt_bytes,
    keygen,
    payload_bits,
)
from vtsim.errors import (
    DecryptionGarbage,
    DegenerateSharedSecret,
    EncodingFailure,
    IdentityPoint,
    InvalidChallenge,
    InvalidEphemeral,
    InvalidPeerKey,
    MessageOutOfRange,
)

TINY_POINTS, _ = enumerate_points(23, 1, 1)


def repeated_add(k, p, params):
    acc = IDENTITY
    for _ in range(k):
        acc = point_add(acc, p, params)
    return acc


# -- keygen ----------------------------------------------------------------------

def test_keygen_deterministic_under_seed():
    a = keygen(TINY23, random.Random(99))
    b = keygen(TINY23, random.Random(99))
    assert a == b


def test_keygen_outputs_valid():
    rng = random.Random(1)
    for _ in range(50):
        kp = keygen(TINY23, rng)
        assert 1 <= kp.private < TINY23.n
        assert is_on_curve(kp.public, TINY23)
        assert not kp.public.is_identity
        assert kp.public == repeated_add(kp.private, TINY23.G, TINY23)


def test_keygen_private_one_gives_generator():
    class Fixed:
        def randrange(self, lo, hi):
            return 1

    kp = keygen(TINY23, Fixed())
    assert kp.public == TINY23.G


# -- ECDH --------------------------------------------------------------------------

def test_ecdh_private_one_returns_peer_key():
    kp = keygen(DESK, random.Random(5))
    assert ecdh_shared(1, kp.public, DESK).point == kp.public


def test_ecdh_agreement_hundred_seeded_pairs():
    rng = random.Random(2024)
    for _ in range(100):
        a = keygen(DESK, rng)
        b = keygen(DESK, rng)
        sa = ecdh_shared(a.private, b.public, DESK)
        sb = ecdh_shared(b.private, a.public, DESK)
        assert sa.point == sb.point
        assert sa.key_bytes == sb.key_bytes


def test_ecdh_rejects_identity_peer():
    with pytest.raises(InvalidPeerKey):
        ecdh_shared(5, IDENTITY, TINY23)


def test_ecdh_rejects_off_curve_peer():
    with pytest.raises(InvalidPeerKey):
        ecdh_shared(5, CurvePoint(1, 1), TINY23)


def test_ecdh_degenerate_on_composite_order():
    # tiny23 has n = 28; scalars 4 and 7 multiply to the group order
    pub7 = repeated_add(7, TINY23.G, TINY23)
    with pytest.raises(DegenerateSharedSecret):
        ecdh_shared(4, pub7, TINY23)


def test_ecdh_key_bytes_width_tracks_modulus():
    kp = keygen(DESK, random.Random(8))
    shared = ecdh_shared(kp.private, keygen(DESK, random.Random(9)).public, DESK)
    assert len(shared.key_bytes) == (DESK.q.bit_length() + 7) // 8


# -- message embedding ---------------------------------------------------------------

def test_expansion_defaults():
    assert default_expansion(TINY23) == 4
    assert default_expansion(DESK) == 16


def test_payload_bits_formula():
    assert payload_bits(TINY23, 4) == math.floor(math.log2(23 / 4))
    assert payload_bits(DESK, 16) == math.floor(math.log2(DESK.q / 16))
    assert payload_bits(DESK, 16) == 16


def test_encode_decode_exhaustive_tiny():
    for m in range(23 // 4):
        block = encode_message(m, TINY23, 4)
        assert is_on_curve(block.point, TINY23)
        assert block.point.y <= 23 - block.point.y  # smaller root chosen
        assert decode_message(block, 4) == m


def test_encode_decode_randomized_desk():
    rng = random.Random(31)
    top = DESK.q // 16
    for _ in range(2000):
        m = rng.randrange(top)
        block = encode_message(m, DESK, 16)
        assert is_on_curve(block.point, DESK)
        assert decode_message(block, 16) == m


def test_encode_out_of_range():
    with pytest.raises(MessageOutOfRange):
        encode_message(23 // 4, TINY23, 4)
    with pytest.raises(MessageOutOfRange):
        encode_message(-1, TINY23, 4)


def test_decode_identity_rejected():
    with pytest.raises(IdentityPoint):
        decode_message(EncodedBlock(IDENTITY, 2), 4)


def test_decode_ignores_root_choice():
    block = encode_message(3, TINY23, 4)
    mirrored = EncodedBlock(CurvePoint(block.point.x, 23 - block.point.y), 2)
    assert decode_message(mirrored, 4) == decode_message(block, 4)


# -- ElGamal --------------------------------------------------------------------------

def test_encrypt_matches_repeated_addition_oracle():
    # fixed pm, receiver key, and ephemeral; expectations from the k-fold-add oracle
    pm = CurvePoint(3, 10)
    priv_b = 5
    pub_b = repeated_add(priv_b, TINY23.G, TINY23)
    k = 7
    ct = elgamal_encrypt(pm, pub_b, k, TINY23)
    assert ct.c1 == repeated_add(k, TINY23.G, TINY23)
    assert ct.c2 == point_add(pm, repeated_add(k, pub_b, TINY23), TINY23)


def test_encrypt_identity_plaintext():
    pub_b = repeated_add(5, TINY23.G, TINY23)
    ct = elgamal_encrypt(IDENTITY, pub_b, 7, TINY23)
    assert ct.c2 == repeated_add(7, pub_b, TINY23)


def test_round_trip_exhaustive_tiny():
    priv_b = 11
    pub_b = repeated_add(priv_b, TINY23.G, TINY23)
    for pm in TINY_POINTS:
        for k in range(1, TINY23.n):
            ct = elgamal_encrypt(pm, pub_b, k, TINY23)
            assert elgamal_decrypt(ct, priv_b, TINY23) == pm


def test_identity_round_trips_to_identity():
    pub_b = repeated_add(9, TINY23.G, TINY23)
    ct = elgamal_encrypt(IDENTITY, pub_b, 3, TINY23)
    assert elgamal_decrypt(ct, 9, TINY23).is_identity


def test_wrong_private_key_changes_plaintext():
    priv_b = 11
    pub_b = repeated_add(priv_b, TINY23.G, TINY23)
    pm = CurvePoint(0, 1)
    k = 5
    ct = elgamal_encrypt(pm, pub_b, k, TINY23)
    for wrong in range(1, TINY23.n):
        if wrong == priv_b:
            continue
        # mismatch guaranteed whenever k*(priv_b - wrong)*G is not the identity
        if repeated_add(k * (priv_b - wrong) % TINY23.n, TINY23.G, TINY23).is_identity:
            continue
        assert elgamal_decrypt(ct, wrong, TINY23) != pm


def test_invalid_ephemeral_rejected():
    pub_b = repeated_add(5, TINY23.G, TINY23)
    for k in (0, TINY23.n, -3):
        with pytest.raises(InvalidEphemeral):
            elgamal_encrypt(CurvePoint(0, 1), pub_b, k, TINY23)


def test_encrypt_rejects_bad_receiver_key():
    with pytest.raises(InvalidPeerKey):
        elgamal_encrypt(CurvePoint(0, 1), CurvePoint(2, 2), 3, TINY23)


# -- framing and multi-block messages ----------------------------------------------------

def test_block_framing_round_trip_desk():
    rng = random.Random(515)
    for _ in range(200):
        payload = rng.randbytes(rng.randrange(0, 60))
        blocks = bytes_to_blocks(payload, DESK, 16)
        assert blocks[0] == len(payload)
        assert blocks_to_bytes(blocks, DESK, 16) == payload


def test_block_framing_round_trip_tiny():
    for payload in (b"", b"\x00", b"a", b"ab", b"\xff\xff\xff"):
        assert blocks_to_bytes(bytes_to_blocks(payload, TINY23, 4), TINY23, 4) == payload


def test_framing_rejects_oversize_payload():
    with pytest.raises(MessageOutOfRange):
        bytes_to_blocks(b"x" * 4, TINY23, 4)  # 2-bit blocks cap length at 3


def test_deframing_rejects_inconsistent_length():
    blocks = bytes_to_blocks(b"hello", DESK, 16)
    with pytest.raises(DecryptionGarbage):
        blocks_to_bytes(blocks[:-1], DESK, 16)
    with pytest.raises(DecryptionGarbage):
        blocks_to_bytes([], DESK, 16)


def test_encrypt_decrypt_bytes_round_trip():
    rng = random.Random(77)
    receiver = keygen(DESK, rng)
    for _ in range(50):
        payload = rng.randbytes(rng.randrange(0, 48))
        ct = encrypt_bytes(payload, receiver.public, DESK, rng)
        assert decrypt_bytes(ct, receiver.private, DESK) == payload


def test_empty_payload_single_block():
    rng = random.Random(4)
    receiver = keygen(DESK, rng)
    ct = encrypt_bytes(b"", receiver.public, DESK, rng)
    assert len(ct) == 1
    assert decrypt_bytes(ct, receiver.private, DESK) == b""


def test_repeated_encryption_uses_fresh_ephemerals():
    rng = random.Random(42)
    receiver = keygen(DESK, rng)
    first = encrypt_bytes(b"same payload", receiver.public, DESK, rng)
    second = encrypt_bytes(b"same payload", receiver.public, DESK, rng)
    assert [c.c1 for c in first] != [c.c1 for c in second]


def test_truncated_ciphertext_fails_framing():
    rng = random.Random(8)
    receiver = keygen(DESK, rng)
    ct = encrypt_bytes(b"payload bytes", receiver.public, DESK, rng)
    with pytest.raises(DecryptionGarbage):
        decrypt_bytes(ct[:-1], receiver.private, DESK)


def test_cipher_pair_parse_round_trip():
    rng = random.Random(3)
    receiver = keygen(DESK, rng)
    (ct,) = encrypt_bytes(b"", receiver.public, DESK, rng)
    assert CipherPair.parse(str(ct)) == ct


# -- challenge-response authentication -----------------------------------------------------

def test_challenge_reproducible_and_valid():
    c1 = auth_challenge(TINY23, random.Random(12))
    c2 = auth_challenge(TINY23, random.Random(12))
    assert c1 == c2
    c, point = c1
    assert c != 0
    assert is_on_curve(point, TINY23)


def test_honest_response_accepted_hundred_trials():
    rng = random.Random(6)
    for _ in range(100):
        kp = keygen(DESK, rng)
        c, cpoint = auth_challenge(DESK, rng)
        resp = auth_respond(kp.private, cpoint, DESK)
        assert auth_verify(resp, c, kp.public, DESK)


def test_soundness_exhaustive_tiny_unit_challenges():
    # with composite n = 28 only unit challenges separate all key pairs
    for priv in range(1, TINY23.n):
        pub = repeated_add(priv, TINY23.G, TINY23)
        for c in range(1, TINY23.n):
            if math.gcd(c, TINY23.n) != 1:
                continue
            cpoint = repeated_add(c, TINY23.G, TINY23)
            for candidate in range(1, TINY23.n):
                resp = auth_respond(candidate, cpoint, TINY23)
                assert auth_verify(resp, c, pub, TINY23) == (candidate == priv)


def test_nonunit_challenge_collision_exists_on_composite_order():
    # documents why unit challenges matter on tiny23: c=2 cannot tell
    # private keys 14 apart
    c = 2
    cpoint = repeated_add(c, TINY23.G, TINY23)
    pub = repeated_add(3, TINY23.G, TINY23)
    resp = auth_respond(3 + 14, cpoint, TINY23)
    assert auth_verify(resp, c, pub, TINY23)


def test_identity_response_rejected():
    kp = keygen(DESK, random.Random(10))
    c, _ = auth_challenge(DESK, random.Random(11))
    assert not auth_verify(IDENTITY, c, kp.public, DESK)


def test_tampered_response_rejected():
    rng = random.Random(13)
    kp = keygen(TINY23, rng)
    c, cpoint = auth_challenge(TINY23, rng)
    good = auth_respond(kp.private, cpoint, TINY23)
    for other in TINY_POINTS:
        if other != good:
            assert not auth_verify(other, c, kp.public, TINY23)


def test_off_curve_challenge_rejected():
    with pytest.raises(InvalidChallenge):
        auth_respond(5, CurvePoint(1, 1), TINY23)
