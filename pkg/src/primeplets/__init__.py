"""Classification and search of generalized twin, triplet and regular prime
multiplets, with special-form scans and prime-producing polynomials."""

__version__ = "0.1.0"

from .prime_engine import PrimalityVerdict, Status, is_prime, isprime, primes_up_to
from .twins import ClassLabel, TwinPair, classify_twin, enumerate_twins, residue_signature
from .triplets import Triplet, classify_triplet, enumerate_triplets, singlet_check
from .multiplets import RegularMultiplet, extend_regular, find_regular
from .polynomials import PolySpec, prime_run, search_polys

__all__ = [
    "PrimalityVerdict", "Status", "is_prime", "isprime", "primes_up_to",
    "ClassLabel", "TwinPair", "classify_twin", "enumerate_twins", "residue_signature",
    "Triplet", "classify_triplet", "enumerate_triplets", "singlet_check",
    "RegularMultiplet", "extend_regular", "find_regular",
    "PolySpec", "prime_run", "search_polys",
]
