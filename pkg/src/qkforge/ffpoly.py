"""Dense univariate polynomial arithmetic over odd prime fields F_p.

Polynomials are immutable value objects: ascending coefficient tuples with
every coefficient reduced mod p and no trailing zeros (the zero polynomial has
an empty tuple).  Hot paths (modular exponentiation, irreducibility testing,
equal-degree factorization) work on raw coefficient lists internally.

Two performance tricks keep everything exact but fast in pure Python:

* multiplication beyond a small cutoff uses Kronecker substitution — pack the
  coefficients into one big integer, multiply once, unpack — which rides the
  interpreter's native big-int multiplication;
* reduction mod a fixed monic modulus (ModulusContext) uses a precomputed
  power-series inverse of the reversed modulus, so each reduction costs two
  multiplications instead of a long division.

Both are cross-checked against schoolbook implementations in the test suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import InternalConsistencyError, MalformedInputError, UsageError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every n below 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def inv_mod(a: int, p: int) -> int:
    try:
        return pow(a, -1, p)
    except ValueError:
        raise UsageError(f"{a} is not invertible mod {p}") from None


def legendre(a: int, p: int) -> int:
    """Quadratic-residue character of a mod p: 1, -1, or 0 for a ≡ 0."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else 1


def sqrt_mod_p(a: int, p: int) -> int | None:
    """Canonical square root of a mod p, or None for a non-residue.

    The canonical root is the smaller of the two, i.e. the one lying in
    [0, (p-1)/2].  p must be an odd prime.
    """
    if not is_prime(p) or p == 2:
        raise UsageError(f"modulus must be an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while legendre(z, p) != -1:
            z += 1
        m, c = s, pow(z, q, p)
        t, r = pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            t2, i = t, 0
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t = t * c % p
            r = r * b % p
    return min(r, p - r)


# ---------------------------------------------------------------------------
# raw coefficient-list kernels (ascending order, trimmed, entries in [0, p))
# ---------------------------------------------------------------------------

_KRONECKER_CUTOFF = 16


def _trim(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _add_raw(a: list[int], b: list[int], p: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _trim(out)


def _sub_raw(a: list[int], b: list[int], p: int) -> list[int]:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def _school_mul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([c % p for c in out])


def _kron_mul(a: list[int], b: list[int], p: int) -> list[int]:
    # Pack coefficients into slots wide enough that no column sum collides.
    bound = min(len(a), len(b)) * (p - 1) * (p - 1) + 1
    width = (bound.bit_length() + 7) // 8
    abig = int.from_bytes(b"".join(c.to_bytes(width, "little") for c in a), "little")
    bbig = int.from_bytes(b"".join(c.to_bytes(width, "little") for c in b), "little")
    out_len = len(a) + len(b) - 1
    raw = (abig * bbig).to_bytes(width * out_len, "little")
    return _trim(
        [
            int.from_bytes(raw[i * width : (i + 1) * width], "little") % p
            for i in range(out_len)
        ]
    )


def _mul_raw(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    if min(len(a), len(b)) <= _KRONECKER_CUTOFF:
        return _school_mul(a, b, p)
    return _kron_mul(a, b, p)


def _divmod_raw(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise UsageError("polynomial division by zero")
    if len(a) < len(b):
        return [], list(a)
    r = list(a)
    db = len(b) - 1
    lead_inv = inv_mod(b[-1], p)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = c * lead_inv % p
            q[i - db] = c
            for j, bj in enumerate(b):
                r[i - db + j] = (r[i - db + j] - c * bj) % p
    return _trim(q), _trim(r[:db])


def _gcd_raw(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _divmod_raw(a, b, p)[1]
    if a:
        lead_inv = inv_mod(a[-1], p)
        a = [c * lead_inv % p for c in a]
    return a


def _eval_raw(cs: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = (acc * x + c) % p
    return acc


# ---------------------------------------------------------------------------
# Poly value type
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Poly:
    """Immutable polynomial over F_p; coefficients ascending, reduced, trimmed."""

    coeffs: tuple[int, ...]
    p: int

    def __post_init__(self) -> None:
        p = self.p
        if p < 3 or p % 2 == 0 or not is_prime(p):
            raise UsageError(f"coefficient modulus must be an odd prime, got {p}")
        cs = [c % p for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors -------------------------------------------------------

    @classmethod
    def of(cls, coeffs, p: int) -> "Poly":
        return cls(tuple(coeffs), p)

    @classmethod
    def zero(cls, p: int) -> "Poly":
        return cls((), p)

    @classmethod
    def one(cls, p: int) -> "Poly":
        return cls((1,), p)

    @classmethod
    def x(cls, p: int) -> "Poly":
        return cls((0, 1), p)

    @classmethod
    def constant(cls, c: int, p: int) -> "Poly":
        return cls((c,), p)

    # -- basic queries -------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if not self.coeffs:
            raise UsageError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "Poly":
        if self.is_zero:
            raise UsageError("cannot normalize the zero polynomial")
        if self.is_monic:
            return self
        inv = inv_mod(self.leading, self.p)
        return Poly(tuple(c * inv % self.p for c in self.coeffs), self.p)

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    # -- arithmetic ----------------------------------------------------------

    def _check_same_field(self, other: "Poly") -> None:
        if self.p != other.p:
            raise UsageError(f"mixed moduli: {self.p} vs {other.p}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check_same_field(other)
        return Poly(tuple(_add_raw(list(self.coeffs), list(other.coeffs), self.p)), self.p)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check_same_field(other)
        return Poly(tuple(_sub_raw(list(self.coeffs), list(other.coeffs), self.p)), self.p)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c % self.p for c in self.coeffs), self.p)

    def __mul__(self, other):
        if isinstance(other, int):
            return Poly(tuple(c * other % self.p for c in self.coeffs), self.p)
        self._check_same_field(other)
        return Poly(tuple(_mul_raw(list(self.coeffs), list(other.coeffs), self.p)), self.p)

    __rmul__ = __mul__

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check_same_field(other)
        q, r = _divmod_raw(list(self.coeffs), list(other.coeffs), self.p)
        return Poly(tuple(q), self.p), Poly(tuple(r), self.p)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        return _eval_raw(list(self.coeffs), x, self.p)

    def __str__(self) -> str:
        return format_poly(self)


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    return divmod(a, b)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (gcd(0, 0) = 0)."""
    a._check_same_field(b)
    return Poly(tuple(_gcd_raw(list(a.coeffs), list(b.coeffs), a.p)), a.p)


# ---------------------------------------------------------------------------
# reduction context and modular exponentiation
# ---------------------------------------------------------------------------


class ModulusContext:
    """Arithmetic mod a fixed monic modulus, with precomputed fast reduction.

    Below a degree cutoff, reduction is plain long division.  Above it, the
    context precomputes the power-series inverse of the reversed modulus by
    Newton iteration; reducing a product then costs two multiplications.
    """

    _NEWTON_CUTOFF = 48

    def __init__(self, modulus: Poly):
        if modulus.degree < 1:
            raise UsageError("modulus must have degree >= 1")
        if not modulus.is_monic:
            modulus = modulus.monic()
        self.modulus = modulus
        self.p = modulus.p
        self.n = modulus.degree
        self._m = list(modulus.coeffs)
        self._inv_rev: list[int] | None = None
        if self.n >= self._NEWTON_CUTOFF:
            self._inv_rev = self._newton_inverse(self.n)

    def _newton_inverse(self, target: int) -> list[int]:
        p = self.p
        f = self._m[::-1]  # reversed modulus; constant term 1 since monic
        g = [1]
        prec = 1
        while prec < target:
            prec = min(2 * prec, target)
            fg = _mul_raw(f[:prec], g, p)[:prec]
            corr = [(-c) % p for c in fg] + [0] * (prec - len(fg))
            corr[0] = (corr[0] + 2) % p
            g = _mul_raw(g, _trim(corr), p)[:prec]
        return g

    def reduce(self, c: list[int]) -> list[int]:
        c = _trim(list(c))
        n = self.n
        if len(c) <= n:
            return c
        d = len(c) - 1
        if self._inv_rev is None or d > 2 * n - 2:
            return _divmod_raw(c, self._m, self.p)[1]
        p = self.p
        ell = d - n + 1  # number of quotient coefficients
        crev = c[::-1][:ell]
        qrev = _mul_raw(crev, self._inv_rev[:ell], p)[:ell]
        qrev += [0] * (ell - len(qrev))
        q = qrev[::-1]
        qm = _mul_raw(_trim(q), self._m, p)
        qm += [0] * (n - len(qm))
        return _trim([(c[i] - qm[i]) % p for i in range(n)])

    def mulmod(self, a: list[int], b: list[int]) -> list[int]:
        return self.reduce(_mul_raw(a, b, self.p))

    def powmod(self, base: list[int], e: int) -> list[int]:
        if e < 0:
            raise UsageError("negative exponent")
        result = [1]
        acc = self.reduce(list(base))
        while e:
            if e & 1:
                result = self.mulmod(result, acc)
            e >>= 1
            if e:
                acc = self.mulmod(acc, acc)
        return result


def poly_mod_pow(base: Poly, e: int, modulus: Poly) -> Poly:
    """base**e mod modulus, with a non-negative (possibly huge) integer e."""
    base._check_same_field(modulus)
    ctx = ModulusContext(modulus)
    return Poly(tuple(ctx.powmod(list(base.coeffs), e)), base.p)


# ---------------------------------------------------------------------------
# irreducibility and equal-degree factorization
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def is_irreducible(f: Poly) -> bool:
    """Rabin's test: f of degree n is irreducible over F_p iff x^(p^n) ≡ x
    mod f and gcd(x^(p^(n/r)) - x, f) = 1 for every prime r dividing n."""
    n = f.degree
    if n < 1:
        raise UsageError("irreducibility is undefined for constants")
    if n == 1:
        return True
    f = f.monic()
    p = f.p
    ctx = ModulusContext(f)
    checkpoints = {n // r for r in _prime_factors(n)}
    fx = list(f.coeffs)
    y = [0, 1]
    for j in range(1, n + 1):
        y = ctx.powmod(y, p)
        if j in checkpoints:
            g = _gcd_raw(_sub_raw(y, [0, 1], p), fx, p)
            if g != [1]:
                return False
    return y == [0, 1]


def equal_degree_factorize(f: Poly, d: int, seed: int = 0) -> list[Poly]:
    """Split monic squarefree f whose irreducible factors all have degree d.

    Classic randomized equal-degree splitting for odd p, driven by a seeded
    PRNG so results are reproducible.  Factors come back sorted ascending by
    coefficient tuple.  Inputs that violate the equal-degree precondition are
    detected (a factor of the wrong degree emerges) and rejected.
    """
    if d < 1:
        raise UsageError(f"factor degree must be positive, got {d}")
    if f.is_zero or f.degree < 1:
        raise UsageError("cannot factor a constant")
    f = f.monic()
    p = f.p
    if f.degree % d != 0:
        raise MalformedInputError(
            f"degree {f.degree} is not a multiple of the factor degree {d}"
        )
    rng = random.Random(seed)
    exponent = (p**d - 1) // 2
    out: list[list[int]] = []

    def split(g: list[int]) -> None:
        dg = len(g) - 1
        if dg % d != 0:
            raise MalformedInputError(
                f"a factor of degree {dg} emerged; input violates the "
                f"equal-degree-{d} precondition"
            )
        if dg == d:
            out.append(g)
            return
        ctx = ModulusContext(Poly(tuple(g), p))
        for _ in range(128):
            a = _trim([rng.randrange(p) for _ in range(dg)])
            if not a or len(a) == 1:
                continue
            h = _gcd_raw(a, g, p)
            if len(h) - 1 == 0:
                b = ctx.powmod(a, exponent)
                b = _sub_raw(b, [1], p)
                if not b:
                    continue
                h = _gcd_raw(b, g, p)
            if 0 < len(h) - 1 < dg:
                q, r = _divmod_raw(g, h, p)
                if r:
                    raise InternalConsistencyError("gcd does not divide its input")
                split(h)
                split(q)
                return
        raise MalformedInputError(
            "failed to split after 128 attempts; input likely violates the "
            "equal-degree precondition"
        )

    split(list(f.coeffs))
    out.sort()
    return [Poly(tuple(g), p) for g in out]


def smallest_irreducible(p: int, n: int) -> Poly:
    """Lexicographically smallest monic irreducible of degree n over F_p."""
    if n < 1:
        raise UsageError("degree must be positive")
    if n == 1:
        return Poly.x(p)
    for idx in range(p**n):
        digits = []
        v = idx
        for _ in range(n):
            digits.append(v % p)
            v //= p
        cand = Poly(tuple(digits + [1]), p)
        if is_irreducible(cand):
            return cand
    raise InternalConsistencyError(f"no irreducible of degree {n} over F_{p}")


def random_irreducible(p: int, n: int, rng: random.Random) -> Poly:
    """Uniform-ish random monic irreducible of degree n (rejection sampling)."""
    if n < 1:
        raise UsageError("degree must be positive")
    while True:
        cand = Poly(tuple(rng.randrange(p) for _ in range(n)) + (1,), p)
        if is_irreducible(cand):
            return cand


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------


def format_poly(f: Poly) -> str:
    """Comma-separated ascending coefficients; '0' for the zero polynomial."""
    if f.is_zero:
        return "0"
    return ",".join(str(c) for c in f.coeffs)


def format_poly_human(f: Poly, var: str = "x") -> str:
    """Readable descending form, e.g. 'x^5+3*x+51'."""
    if f.is_zero:
        return "0"
    terms = []
    for e in range(f.degree, -1, -1):
        c = f.coefficient(e)
        if c == 0:
            continue
        if e == 0:
            terms.append(str(c))
        elif e == 1:
            terms.append(var if c == 1 else f"{c}*{var}")
        else:
            terms.append(f"{var}^{e}" if c == 1 else f"{c}*{var}^{e}")
    return "+".join(terms)


def parse_poly(text: str, p: int) -> Poly:
    """Parse either coefficient-list form ('51,3,0,0,0,1', ascending) or the
    human form ('x^5+3*x+51'); coefficients are reduced mod p."""
    s = text.strip()
    if not s:
        raise MalformedInputError("empty polynomial")
    if all(ch.isdigit() or ch in ",- " for ch in s):
        try:
            return Poly(tuple(int(tok) for tok in s.split(",")), p)
        except ValueError:
            raise MalformedInputError(f"bad coefficient list: {text!r}") from None
    compact = s.replace(" ", "").replace("**", "^").replace("*", "")
    if not compact or compact[0] not in "+-x0123456789":
        raise MalformedInputError(f"cannot parse polynomial: {text!r}")
    coeffs: dict[int, int] = {}
    i = 0
    sign = 1
    if compact[0] in "+-":
        sign = -1 if compact[0] == "-" else 1
        i = 1
    while i < len(compact):
        j = i
        while j < len(compact) and compact[j] not in "+-":
            j += 1
        term = compact[i:j]
        if not term:
            raise MalformedInputError(f"cannot parse polynomial: {text!r}")
        num = ""
        k = 0
        while k < len(term) and term[k].isdigit():
            num += term[k]
            k += 1
        if k == len(term):
            c, e = int(num), 0
        elif term[k] == "x":
            c = int(num) if num else 1
            rest = term[k + 1 :]
            if not rest:
                e = 1
            elif rest.startswith("^") and rest[1:].isdigit():
                e = int(rest[1:])
            else:
                raise MalformedInputError(f"cannot parse term {term!r} in {text!r}")
        else:
            raise MalformedInputError(f"cannot parse term {term!r} in {text!r}")
        coeffs[e] = coeffs.get(e, 0) + sign * c
        if j < len(compact):
            sign = -1 if compact[j] == "-" else 1
        i = j + 1
    deg = max(coeffs)
    return Poly(tuple(coeffs.get(e, 0) for e in range(deg + 1)), p)
