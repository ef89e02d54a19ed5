"""Exception types shared across the package."""


class VtsimError(Exception):
    """Base class for all domain errors raised by vtsim."""


# -- field / curve arithmetic ------------------------------------------------

class ZeroInverse(VtsimError):
    """Modular inverse of zero requested."""


class CurveTooLarge(VtsimError):
    """Curve modulus exceeds the exhaustive-scan limit."""


class SingularCurve(VtsimError):
    """4a^3 + 27b^2 == 0 (mod q); the curve has no group law."""


class InvalidCurve(VtsimError):
    """Curve parameters fail a structural check (bad prime, G off curve...)."""


# -- encryption / key agreement ----------------------------------------------

class MessageOutOfRange(VtsimError):
    """Plaintext integer does not fit the embeddable range for the curve."""


class EncodingFailure(VtsimError):
    """No curve point found for the message within the expansion window."""


class IdentityPoint(VtsimError):
    """Operation requires an affine point but got the identity."""


class InvalidPeerKey(VtsimError):
    """Peer public key is off-curve or the identity."""


class DegenerateSharedSecret(VtsimError):
    """Key agreement landed on the identity (composite-order curves only)."""


class InvalidEphemeral(VtsimError):
    """Ephemeral scalar outside [1, n)."""


class InvalidChallenge(VtsimError):
    """Challenge point is off-curve."""


# -- trust bookkeeping ---------------------------------------------------------

class UnregisteredVehicle(VtsimError):
    """Vehicle id is not in the registration directory."""


class DuplicateRecord(VtsimError):
    """A trust record for this vehicle already exists; never overwritten."""


class SubjectMismatch(VtsimError):
    """Trust event subject does not match the record it is applied to."""


# -- entities / protocol -------------------------------------------------------

class DuplicateRegistration(VtsimError):
    """Entity id already registered with the trusted authority."""


class UnknownVehicle(VtsimError):
    """Public key does not belong to any registered vehicle."""


class OutOfRange(VtsimError):
    """Peer is outside radio range."""


class NoSession(VtsimError):
    """Vehicle has no verified session with the target RSU."""


class DecryptionGarbage(VtsimError):
    """Decrypted block stream fails framing checks."""


# -- configuration -------------------------------------------------------------

class ConfigInvalid(VtsimError):
    """Scenario configuration rejected; carries per-field diagnostics."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))
