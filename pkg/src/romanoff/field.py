"""Exact arithmetic in GF(q) for q = p^e.

Extension fields are built over a canonical modulus: among all monic
irreducible degree-e polynomials over GF(p), the one whose low coefficient
vector (c_0, ..., c_{e-1}), read as a base-p integer with c_0 least
significant, is smallest.  This makes every construction reproducible
without external polynomial tables.

Elements are carried as packed integers in [0, q): the base-p value of the
coefficient vector of the representative.  For prime fields that is just the
residue itself.  `FieldElement` is a thin immutable wrapper used at API
boundaries; hot loops work on the packed integers through the `*_i` methods.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .intarith import factorize, is_prime_trial, prime_factors

DEFAULT_MAX_Q = 2**20

# Extension fields up to this order keep flat add/mul lookup tables.
_TABLE_LIMIT = 256


class FieldError(ValueError):
    pass


# ---------------------------------------------------------------------------
# GF(p)[t] helpers on plain coefficient lists, used only to find and apply the
# canonical extension modulus.  Coefficients are ints in [0, p), lowest first.
# ---------------------------------------------------------------------------


def _gfp_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _gfp_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    acc = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                acc[i + j] += ai * bj
    n = len(m) - 1
    for i in range(len(acc) - 1, n - 1, -1):
        c = acc[i] % p
        if c:
            off = i - n
            for j in range(n):
                acc[off + j] -= c * m[j]
        acc[i] = 0
    return _gfp_trim([v % p for v in acc[:n]])


def _gfp_powmod_xq(h: list[int], q: int, m: list[int], p: int) -> list[int]:
    """h^q mod m by square-and-multiply."""
    result = [1]
    base = h
    k = q
    while k:
        if k & 1:
            result = _gfp_mulmod(result, base, m, p)
        k >>= 1
        if k:
            base = _gfp_mulmod(base, base, m, p)
    return result


def _gfp_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p) if b[-1] != 1 else 1
    q = [0] * max(len(a) - db, 0)
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        c = r[-1] * inv_lead % p
        q[shift] = c
        for j, bj in enumerate(b):
            r[shift + j] = (r[shift + j] - c * bj) % p
        _gfp_trim(r)
    return q, r


def _gfp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        _, r = _gfp_divmod(a, b, p)
        a, b = b, r
    if a:
        inv_lead = pow(a[-1], p - 2, p)
        a = [v * inv_lead % p for v in a]
    return a


def _gfp_is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test over GF(p) for the modulus search."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    h = list(x)
    checkpoints = {n // ell for ell in prime_factors(n)}
    for j in range(1, n + 1):
        h = _gfp_powmod_xq(h, p, f, p)
        if j in checkpoints:
            diff = list(h)
            while len(diff) < 2:
                diff.append(0)
            diff[1] = (diff[1] - 1) % p
            if len(_gfp_gcd(_gfp_trim(diff), f, p)) != 1:
                return False
    diff = list(h)
    while len(diff) < 2:
        diff.append(0)
    diff[1] = (diff[1] - 1) % p
    return not _gfp_trim(diff)


@lru_cache(maxsize=None)
def _canonical_modulus(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree e over GF(p) in base-p order."""
    for m in range(p**e):
        coeffs = []
        v = m
        for _ in range(e):
            coeffs.append(v % p)
            v //= p
        candidate = coeffs + [1]
        if _gfp_is_irreducible(candidate, p):
            return tuple(candidate)
    raise FieldError(f"no irreducible of degree {e} over GF({p})")  # pragma: no cover


# ---------------------------------------------------------------------------
# Field specification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """The finite field GF(p^e), immutable and shareable across workers."""

    p: int
    e: int
    modulus: tuple[int, ...] | None  # full coefficient vector, None when e == 1

    @cached_property
    def q(self) -> int:
        return self.p**self.e

    # -- packed element tuples ------------------------------------------------

    def _digits(self, a: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.e):
            out.append(a % p)
            a //= p
        return tuple(out)

    def _pack(self, digits) -> int:
        a = 0
        for d in reversed(tuple(digits)):
            a = a * self.p + d
        return a

    @cached_property
    def _tables(self) -> tuple[list[int], list[int], list[int]] | None:
        """(add, mul, inv) flat tables for small extension fields."""
        if self.e == 1 or self.q > _TABLE_LIMIT:
            return None
        q, p = self.q, self.p
        digits = [self._digits(a) for a in range(q)]
        add = [0] * (q * q)
        mul = [0] * (q * q)
        mod = list(self.modulus)
        for a in range(q):
            da = digits[a]
            for b in range(q):
                db = digits[b]
                add[a * q + b] = self._pack((x + y) % p for x, y in zip(da, db))
                mul[a * q + b] = self._pack(
                    _gfp_mulmod(_gfp_trim(list(da)), _gfp_trim(list(db)), mod, p)
                    + [0] * self.e
                )
        inv = [0] * q
        for a in range(1, q):
            inv[a] = self._pow_i_nocache(a, self.q - 2, mul)
        return add, mul, inv

    def _pow_i_nocache(self, a: int, k: int, mul: list[int]) -> int:
        q = self.q
        result = 1
        base = a
        while k:
            if k & 1:
                result = mul[result * q + base]
            k >>= 1
            if k:
                base = mul[base * q + base]
        return result

    # -- arithmetic on packed integers ---------------------------------------

    def add_i(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        t = self._tables
        if t is not None:
            return t[0][a * self.q + b]
        p = self.p
        return self._pack((x + y) % p for x, y in zip(self._digits(a), self._digits(b)))

    def sub_i(self, a: int, b: int) -> int:
        return self.add_i(a, self.neg_i(b))

    def neg_i(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        p = self.p
        return self._pack((-x) % p for x in self._digits(a))

    def mul_i(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        t = self._tables
        if t is not None:
            return t[1][a * self.q + b]
        prod = _gfp_mulmod(
            _gfp_trim(list(self._digits(a))),
            _gfp_trim(list(self._digits(b))),
            list(self.modulus),
            self.p,
        )
        return self._pack(prod + [0] * self.e)

    def inv_i(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("division by zero in GF(q)")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        t = self._tables
        if t is not None:
            return t[2][a]
        return self.pow_i(a, self.q - 2)

    def pow_i(self, a: int, k: int) -> int:
        """a^k with the convention 0^0 = 1 (needed for g^0 in h + g^k)."""
        if k < 0:
            raise ValueError("negative exponent")
        result = 1
        base = a
        while k:
            if k & 1:
                result = self.mul_i(result, base)
            k >>= 1
            if k:
                base = self.mul_i(base, base)
        return result

    # -- public element API ---------------------------------------------------

    def element(self, value) -> "FieldElement":
        """Build an element from a packed int or a coefficient sequence."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, int):
            if self.e == 1:
                return FieldElement(self, value % self.p)
            if not 0 <= value < self.q:
                raise FieldError(f"packed value {value} out of range for GF({self.q})")
            return FieldElement(self, value)
        digits = [int(v) % self.p for v in value]
        if len(digits) > self.e:
            raise FieldError("coefficient vector longer than extension degree")
        digits += [0] * (self.e - len(digits))
        return FieldElement(self, self._pack(digits))

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self):
        """All q elements in packed order."""
        for a in range(self.q):
            yield FieldElement(self, a)

    def render_element(self, a: int) -> str:
        """Packed int -> canonical string; extension elements print in `t`."""
        if self.e == 1:
            return str(a % self.p)
        digits = self._digits(a)
        terms = []
        for j in range(self.e - 1, -1, -1):
            d = digits[j]
            if d == 0:
                continue
            if j == 0:
                terms.append(str(d))
            else:
                tpow = "t" if j == 1 else f"t^{j}"
                terms.append(tpow if d == 1 else f"{d}*{tpow}")
        return "+".join(terms) if terms else "0"

    def describe(self) -> str:
        if self.e == 1:
            return f"GF({self.q})"
        mod_terms = []
        for j in range(self.e, -1, -1):
            c = self.modulus[j]
            if c == 0:
                continue
            if j == 0:
                mod_terms.append(str(c))
            else:
                tpow = "t" if j == 1 else f"t^{j}"
                mod_terms.append(tpow if c == 1 else f"{c}*{tpow}")
        return f"GF({self.q}) = GF({self.p})[t]/({'+'.join(mod_terms)})"

    def __str__(self) -> str:
        return f"q={self.q}"

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, e={self.e})"


@dataclass(frozen=True)
class FieldElement:
    """Immutable value in GF(q); `i` is the packed representative."""

    spec: FieldSpec
    i: int

    @property
    def rep(self):
        """Canonical representative: int for prime fields, digit tuple otherwise."""
        return self.i if self.spec.e == 1 else self.spec._digits(self.i)

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement) or other.spec != self.spec:
            raise FieldError("operands belong to different fields")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.add_i(self.i, other.i))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.sub_i(self.i, other.i))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.mul_i(self.i, other.i))

    def __truediv__(self, other):
        self._check(other)
        return FieldElement(self.spec, self.spec.mul_i(self.i, self.spec.inv_i(other.i)))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg_i(self.i))

    def __pow__(self, k: int):
        if self.i == 0 and k == 0:
            return FieldElement(self.spec, 1)  # 0^0 = 1 by convention
        return FieldElement(self.spec, self.spec.pow_i(self.i, k))

    def inv(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv_i(self.i))

    def __bool__(self) -> bool:
        return self.i != 0

    def __str__(self) -> str:
        return self.spec.render_element(self.i)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def field_new(p: int, e: int = 1, max_q: int = DEFAULT_MAX_Q) -> FieldSpec:
    """Construct GF(p^e) with the canonical minimal modulus.

    Raises FieldError("not prime") for composite p and
    FieldError("field too large") when p^e exceeds `max_q`.
    """
    if e < 1:
        raise FieldError("extension degree must be >= 1")
    if not is_prime_trial(p):
        raise FieldError(f"{p} is not prime")
    if p**e > max_q:
        raise FieldError(f"field too large: {p}^{e} > {max_q}")
    modulus = None if e == 1 else _canonical_modulus(p, e)
    return FieldSpec(p=p, e=e, modulus=modulus)


def field_from_q(q: int, max_q: int = DEFAULT_MAX_Q) -> FieldSpec:
    """Build GF(q) from a prime power, e.g. from the text form "q=4"."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    fac = factorize(q)
    if len(fac) != 1:
        raise FieldError(f"{q} is not a prime power")
    p, e = fac[0]
    return field_new(p, e, max_q=max_q)


def parse_field(text: str, max_q: int = DEFAULT_MAX_Q) -> FieldSpec:
    """Parse the "q=<prime power>" text form."""
    s = text.strip()
    if s.startswith("q="):
        s = s[2:]
    try:
        q = int(s)
    except ValueError:
        raise FieldError(f"cannot parse field spec {text!r}") from None
    return field_from_q(q, max_q=max_q)
