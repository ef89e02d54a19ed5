"""vtsim: deterministic VANET trust simulator with an ECC core.

Vehicles (OBUs) authenticate to roadside units over an elliptic-curve
challenge-response, encrypt safety messages with EC-ElGamal, and a trust
authority agent scores behaviour and evicts misbehaving vehicles. A
discrete-event engine drives mobility, DSDV routing, and metrics.
"""

__version__ = "0.1.0"

from .curve import BACKEND_NAME

__all__ = ["BACKEND_NAME", "__version__"]
