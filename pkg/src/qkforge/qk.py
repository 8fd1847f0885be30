"""The degree-doubling transform and the rational map behind it.

For a monic degree-n polynomial f over F_p and a nonzero multiplier k, the
transform substitutes y = k(x + 1/x) and clears denominators:

    transform(f, k) = (x/k)^n * f(k(x + 1/x)),

a monic degree-2n polynomial with constant term 1 whose coefficient tuple is
palindromic.  Roots of the transform are exactly the preimages of the roots of
f under the degree-2 map theta(x) = k(x + 1/x) on the projective line.

Multipliers fall into named classes, each defined by a quadratic congruence:

    C1:  4k^2 - 1 = 0        (k = 1/2 or -1/2)
    C2:  4k^2 + 1 = 0        (exists iff p = 1 mod 4)
    C3:  2k^2 + k + 1 = 0    (exists iff -7 is a square mod p)
    C3-: 2k^2 - k + 1 = 0    (negatives of the C3 multipliers)

The classes are pairwise disjoint for every odd prime; the classifier still
reports every match defensively.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalConsistencyError, UnsupportedPrimeError, UsageError
from .extfield import ExtField, FqElem, min_poly_of_element
from .ffpoly import Poly, _mul_raw, inv_mod, is_irreducible, is_prime, sqrt_mod_p

CLASS_NAMES = ("C1", "C2", "C3", "C3-")
GENERIC = "Generic"


class _Infinity:
    """The point at infinity on the projective line; a singleton."""

    _instance = None

    def __new__(cls) -> "_Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"


INFINITY = _Infinity()


def _check_odd_prime(p: int) -> None:
    if p == 2 or not is_prime(p):
        raise UsageError(f"p must be an odd prime, got {p}")


def _check_k(k: int, p: int) -> int:
    k %= p
    if k == 0:
        raise UsageError("the multiplier k must be nonzero mod p")
    return k


def theta_eval(x, k: int):
    """theta(x) = k(x + 1/x) on the projective line; 0 and infinity map to
    infinity.  x is a field element or INFINITY."""
    if x is INFINITY:
        return INFINITY
    if not isinstance(x, FqElem):
        raise UsageError(f"expected a field element or INFINITY, got {type(x).__name__}")
    k = _check_k(k, x.field.p)
    if x.is_zero:
        return INFINITY
    return (x + x.inverse()) * k


def qk_transform(f: Poly, k: int) -> Poly:
    """The transform (x/k)^n * f(k(x + 1/x)) for monic f of degree n >= 1.

    Expanding f = sum a_i y^i gives sum a_i k^(i-n) x^(n-i) (x^2+1)^i, which
    the loop below accumulates in O(n^2) coefficient operations.
    """
    p = f.p
    k = _check_k(k, p)
    if f.degree < 1:
        raise UsageError("transform requires a polynomial of degree >= 1")
    if not f.is_monic:
        raise UsageError("transform requires a monic polynomial")
    n = f.degree
    kinv = inv_mod(k, p)
    out = [0] * (2 * n + 1)
    pw = [1]  # (x^2+1)^i, updated incrementally
    for i, a in enumerate(f.coeffs):
        if a:
            c = a * pow(kinv, n - i, p) % p
            base = n - i
            for j, w in enumerate(pw):
                out[base + j] = (out[base + j] + c * w) % p
        if i < n:
            pw = _mul_raw(pw, [1, 0, 1], p)
    return Poly(tuple(out), p)


def is_palindromic(f: Poly) -> bool:
    """True when the coefficient tuple reads the same in both directions."""
    return bool(f.coeffs) and f.coeffs == tuple(reversed(f.coeffs))


@dataclass(frozen=True)
class KClass:
    """Classification result for a multiplier: the first matching class name
    (or 'Generic'), the witness k, and every satisfied class predicate."""

    name: str
    k: int
    matches: tuple[str, ...]


def _class_matches(p: int, k: int) -> tuple[str, ...]:
    out = []
    if (4 * k * k - 1) % p == 0:
        out.append("C1")
    if p % 4 == 1 and (4 * k * k + 1) % p == 0:
        out.append("C2")
    if p % 7 in (1, 2, 4):
        if (2 * k * k + k + 1) % p == 0:
            out.append("C3")
        if (2 * k * k - k + 1) % p == 0:
            out.append("C3-")
    return tuple(out)


def classify_k(p: int, k: int) -> KClass:
    """Classify k mod p, checking C1, C2, C3, C3- in that order.

    Class membership includes the congruence condition on p (C2 needs
    p = 1 mod 4; C3/C3- need p in {1,2,4} mod 7, which excludes p = 7).
    The classes are disjoint for odd p, but every match is reported."""
    _check_odd_prime(p)
    k = _check_k(k, p)
    matches = _class_matches(p, k)
    return KClass(matches[0] if matches else GENERIC, k, matches)


_CONGRUENCE_HINT = {
    "C2": "C2 requires p = 1 (mod 4)",
    "C3": "C3 requires p = 1, 2, or 4 (mod 7)",
    "C3-": "C3- requires p = 1, 2, or 4 (mod 7)",
}


def find_k(p: int, class_name: str) -> list[int]:
    """All multipliers of the given class mod p, sorted ascending.

    Raises UnsupportedPrimeError, naming the required congruence, when no
    such multiplier exists at p."""
    _check_odd_prime(p)
    inv2 = inv_mod(2, p)
    if class_name == "C1":
        roots = {inv2, p - inv2}
    elif class_name == "C2":
        if p % 4 != 1:
            raise UnsupportedPrimeError(f"p={p}: {_CONGRUENCE_HINT['C2']}, got p = {p % 4} (mod 4)")
        r = sqrt_mod_p(p - 1, p)
        if r is None:
            raise InternalConsistencyError(f"-1 must be a square mod {p}")
        roots = {r * inv2 % p, (p - r) * inv2 % p}
    elif class_name in ("C3", "C3-"):
        if p % 7 not in (1, 2, 4):
            raise UnsupportedPrimeError(
                f"p={p}: {_CONGRUENCE_HINT[class_name]}, got p = {p % 7} (mod 7)"
            )
        s = sqrt_mod_p(-7 % p, p)
        if s is None:
            raise InternalConsistencyError(f"-7 must be a square mod {p}")
        inv4 = inv_mod(4, p)
        if class_name == "C3":
            roots = {(-1 + s) * inv4 % p, (-1 - s) * inv4 % p}
        else:
            roots = {(1 + s) * inv4 % p, (1 - s) * inv4 % p}
    else:
        raise UsageError(f"unknown multiplier class {class_name!r}; expected one of {CLASS_NAMES}")
    return sorted(roots)


def min_poly_theta(f: Poly, k: int) -> Poly:
    """Minimal polynomial over F_p of theta(alpha) for a root alpha of the
    monic irreducible f.  Rejects f = x, whose root maps to infinity."""
    p = f.p
    k = _check_k(k, p)
    if f.degree < 1:
        raise UsageError("need a polynomial of degree >= 1")
    f = f.monic()
    if f.coefficient(0) == 0:
        raise UsageError("the root 0 maps to infinity and has no minimal polynomial")
    if not is_irreducible(f):
        raise UsageError("minimal-polynomial computation requires an irreducible input")
    field = ExtField(f, assume_irreducible=True)
    beta = theta_eval(field.gen(), k)
    return min_poly_of_element(beta)
