"""Dense univariate polynomials over GF(q).

Coefficients are stored lowest-degree-first as packed field integers (see
`field.FieldSpec`), with no trailing zeros; the zero polynomial has an empty
coefficient tuple and degree -inf.  The canonical total order on polynomials
used everywhere (enumeration, factor sorting, the field modulus search) is
the base-q integer value of the coefficient vector, constant term least
significant.

Irreducibility is Rabin's test; factorization is squarefree decomposition
(with p-th-root extraction when the derivative vanishes), then distinct-degree
and equal-degree splitting.  Equal-degree splitting draws randomness from a
generator seeded by a 64-bit content hash of the input, so factorizations are
reproducible run-to-run.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from functools import lru_cache
from math import lcm

from .field import FieldElement, FieldError, FieldSpec
from .intarith import factorize, prime_factors

NEG_INF = float("-inf")

DEFAULT_ENUM_CAP = 10**8


class PolyError(ValueError):
    pass


class EnumerationCapError(PolyError):
    pass


class PolyParseError(PolyError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# ---------------------------------------------------------------------------
# Raw kernels on coefficient tuples
# ---------------------------------------------------------------------------


def _trim(c: list[int]) -> tuple[int, ...]:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _add_raw(spec: FieldSpec, a, b):
    if len(a) < len(b):
        a, b = b, a
    add = spec.add_i
    out = list(a)
    for i, v in enumerate(b):
        out[i] = add(out[i], v)
    return _trim(out)


def _neg_raw(spec: FieldSpec, a):
    neg = spec.neg_i
    return tuple(neg(v) for v in a)


def _sub_raw(spec: FieldSpec, a, b):
    return _add_raw(spec, a, _neg_raw(spec, b))


def _mul_raw(spec: FieldSpec, a, b):
    if not a or not b:
        return ()
    if spec.e == 1:
        p = spec.p
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return _trim([v % p for v in out])
    mul = spec.mul_i
    add = spec.add_i
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = add(out[i + j], mul(ai, bj))
    return _trim(out)


def _divmod_raw(spec: FieldSpec, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    mul = spec.mul_i
    sub = spec.sub_i
    inv_lead = spec.inv_i(b[-1])
    r = list(a)
    db = len(b) - 1
    quo = [0] * (len(a) - db)
    top = len(r)
    while top - 1 >= db:
        if r[top - 1] == 0:
            top -= 1
            continue
        shift = top - 1 - db
        c = mul(r[top - 1], inv_lead)
        quo[shift] = c
        for j in range(db + 1):
            if b[j]:
                r[shift + j] = sub(r[shift + j], mul(c, b[j]))
        top -= 1
    return _trim(quo), _trim(r[:db])


def _monic_raw(spec: FieldSpec, a):
    if not a or a[-1] == 1:
        return a
    inv_lead = spec.inv_i(a[-1])
    mul = spec.mul_i
    return tuple(mul(v, inv_lead) for v in a)


def _gcd_raw(spec: FieldSpec, a, b):
    while b:
        _, r = _divmod_raw(spec, a, b)
        a, b = b, r
    return _monic_raw(spec, a)


def _powmod_raw(spec: FieldSpec, g, k: int, f):
    if len(f) < 2:
        raise PolyError("powmod modulus must have degree >= 1")
    result = (1,)
    _, base = _divmod_raw(spec, g, f)
    while k:
        if k & 1:
            result = _divmod_raw(spec, _mul_raw(spec, result, base), f)[1]
        k >>= 1
        if k:
            base = _divmod_raw(spec, _mul_raw(spec, base, base), f)[1]
    return result


def _pow_raw(spec: FieldSpec, g, k: int):
    result = (1,)
    base = g
    while k:
        if k & 1:
            result = _mul_raw(spec, result, base)
        k >>= 1
        if k:
            base = _mul_raw(spec, base, base)
    return result


def _eval_raw(spec: FieldSpec, c, a: int) -> int:
    if not c:
        return 0
    mul = spec.mul_i
    add = spec.add_i
    acc = c[-1]
    for i in range(len(c) - 2, -1, -1):
        acc = add(mul(acc, a), c[i])
    return acc


def _derivative_raw(spec: FieldSpec, c):
    p = spec.p
    mul = spec.mul_i
    out = []
    for k in range(1, len(c)):
        kmod = k % p
        out.append(mul(c[k], kmod) if kmod != 1 else c[k])
    return _trim(out)


def _key(c) -> tuple:
    """Canonical sort key: base-q integer order of the coefficient vector."""
    return (len(c), tuple(reversed(c)))


# ---------------------------------------------------------------------------
# Poly
# ---------------------------------------------------------------------------


class Poly:
    """Immutable dense polynomial over a FieldSpec."""

    __slots__ = ("spec", "c")

    def __init__(self, spec: FieldSpec, coeffs=()):
        packed = []
        for v in coeffs:
            if isinstance(v, FieldElement):
                if v.spec != spec:
                    raise FieldError("coefficient from a different field")
                packed.append(v.i)
            else:
                iv = int(v)
                if spec.e == 1:
                    iv %= spec.p
                elif not 0 <= iv < spec.q:
                    raise FieldError(f"packed coefficient {iv} out of range")
                packed.append(iv)
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "c", _trim(packed))

    @classmethod
    def _make(cls, spec: FieldSpec, c: tuple) -> "Poly":
        """Internal fast path: c must already be a normalized tuple."""
        self = object.__new__(cls)
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "c", c)
        return self

    @classmethod
    def zero(cls, spec: FieldSpec) -> "Poly":
        return cls._make(spec, ())

    @classmethod
    def one(cls, spec: FieldSpec) -> "Poly":
        return cls._make(spec, (1,))

    @classmethod
    def x(cls, spec: FieldSpec) -> "Poly":
        return cls._make(spec, (0, 1))

    @classmethod
    def monomial(cls, spec: FieldSpec, degree: int, coeff: int = 1) -> "Poly":
        if coeff == 0:
            return cls.zero(spec)
        return cls._make(spec, (0,) * degree + (coeff,))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- structure ------------------------------------------------------------

    @property
    def degree(self):
        """Degree; float('-inf') for the zero polynomial."""
        return len(self.c) - 1 if self.c else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.c

    @property
    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    @property
    def lc(self) -> int:
        """Leading coefficient as a packed int (0 for the zero polynomial)."""
        return self.c[-1] if self.c else 0

    def leading_coefficient(self) -> FieldElement:
        return FieldElement(self.spec, self.lc)

    def coeffs(self) -> tuple[FieldElement, ...]:
        """Coefficients lowest-first as field elements."""
        return tuple(FieldElement(self.spec, v) for v in self.c)

    def coefficient(self, k: int) -> FieldElement:
        v = self.c[k] if 0 <= k < len(self.c) else 0
        return FieldElement(self.spec, v)

    def monic(self) -> "Poly":
        return Poly._make(self.spec, _monic_raw(self.spec, self.c))

    def evaluate(self, a) -> FieldElement:
        packed = a.i if isinstance(a, FieldElement) else int(a)
        return FieldElement(self.spec, _eval_raw(self.spec, self.c, packed))

    def derivative(self) -> "Poly":
        return Poly._make(self.spec, _derivative_raw(self.spec, self.c))

    # -- ring operations --------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldError("polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        return Poly._make(self.spec, _add_raw(self.spec, self.c, other.c))

    def __sub__(self, other):
        self._check(other)
        return Poly._make(self.spec, _sub_raw(self.spec, self.c, other.c))

    def __neg__(self):
        return Poly._make(self.spec, _neg_raw(self.spec, self.c))

    def __mul__(self, other):
        self._check(other)
        return Poly._make(self.spec, _mul_raw(self.spec, self.c, other.c))

    def __divmod__(self, other):
        self._check(other)
        q, r = _divmod_raw(self.spec, self.c, other.c)
        return Poly._make(self.spec, q), Poly._make(self.spec, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        return Poly._make(self.spec, _pow_raw(self.spec, self.c, k))

    def scale(self, a) -> "Poly":
        """Multiply by a field element."""
        packed = a.i if isinstance(a, FieldElement) else int(a)
        mul = self.spec.mul_i
        return Poly._make(self.spec, _trim([mul(v, packed) for v in self.c]))

    # -- equality / ordering -----------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Poly) and self.spec == other.spec and self.c == other.c
        )

    def __hash__(self):
        return hash((self.spec, self.c))

    def sort_key(self) -> tuple:
        return _key(self.c)

    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f"Poly({self.spec}, {render_poly(self)!r})"


def norm(f: Poly) -> int:
    """|f| = q^deg(f); rejects the zero polynomial."""
    if f.is_zero:
        raise PolyError("norm of the zero polynomial is undefined")
    return f.spec.q ** (len(f.c) - 1)


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    a._check(b)
    if a.is_zero and b.is_zero:
        raise PolyError("gcd(0, 0) is undefined")
    return Poly._make(a.spec, _gcd_raw(a.spec, a.c, b.c))


def powmod(g: Poly, k: int, f: Poly) -> Poly:
    """g^k mod f by square-and-multiply; f must have degree >= 1."""
    g._check(f)
    if k < 0:
        raise ValueError("negative exponent")
    return Poly._make(g.spec, _powmod_raw(g.spec, g.c, k, f.c))


# ---------------------------------------------------------------------------
# Irreducibility (Rabin) and the trial-division oracle
# ---------------------------------------------------------------------------


def _rabin_raw(spec: FieldSpec, f) -> bool:
    n = len(f) - 1
    q = spec.q
    x = (0, 1)
    h = x
    checkpoints = {n // ell for ell in prime_factors(n)}
    for j in range(1, n + 1):
        h = _powmod_raw(spec, h, q, f)
        if j in checkpoints:
            d = _gcd_raw(spec, _sub_raw(spec, h, x), f)
            if d != (1,):
                return False
    return h == x


def is_irreducible(f: Poly) -> bool:
    """Rabin's irreducibility test (with a root screen for small fields)."""
    spec = f.spec
    c = _monic_raw(spec, f.c)
    n = len(c) - 1
    if n < 1:
        raise PolyError("irreducibility is undefined for constants")
    if n == 1:
        return True
    if spec.q <= 64:
        for a in range(spec.q):
            if _eval_raw(spec, c, a) == 0:
                return False
    return _rabin_raw(spec, c)


def is_irreducible_trial(f: Poly) -> bool:
    """Independent oracle: trial division by all monic polynomials of lower
    degree.  Exponentially slow; for tests only."""
    spec = f.spec
    c = _monic_raw(spec, f.c)
    n = len(c) - 1
    if n < 1:
        raise PolyError("irreducibility is undefined for constants")
    for d in range(1, n // 2 + 1):
        for m in range(spec.q**d):
            divisor = _index_to_monic(spec, d, m)
            if not _divmod_raw(spec, c, divisor)[1]:
                return False
    return True


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def _index_to_monic(spec: FieldSpec, n: int, m: int) -> tuple:
    """m-th monic polynomial of degree n in base-q coefficient order."""
    q = spec.q
    coeffs = []
    for _ in range(n):
        coeffs.append(m % q)
        m //= q
    coeffs.append(1)
    return tuple(coeffs)


def enumerate_monic(spec: FieldSpec, n: int, cap: int = DEFAULT_ENUM_CAP):
    """All q^n monic polynomials of degree n in base-q coefficient order."""
    if n < 0:
        raise PolyError("degree must be nonnegative")
    total = spec.q**n
    if total > cap:
        raise EnumerationCapError(
            f"enumeration of {total} monic polynomials exceeds cap {cap}"
        )
    for m in range(total):
        yield Poly._make(spec, _index_to_monic(spec, n, m))


def enumerate_monic_irreducible(spec: FieldSpec, n: int, cap: int = DEFAULT_ENUM_CAP):
    """Monic irreducibles of degree n: enumerate_monic filtered by is_irreducible.

    For prime fields with a large enough universe the Rabin filter runs through
    a vectorized batch kernel; the result is identical to the scalar filter.
    """
    if n < 1:
        raise PolyError("degree must be >= 1")
    total = spec.q**n
    if total > cap:
        raise EnumerationCapError(
            f"enumeration of {total} monic polynomials exceeds cap {cap}"
        )
    if n == 1:
        for m in range(spec.q):
            yield Poly._make(spec, (m, 1))
        return
    if spec.q <= 64 and total >= 4096:
        from ._rabin_batch import batch_irreducible_indices

        for m in batch_irreducible_indices(spec, n):
            yield Poly._make(spec, _index_to_monic(spec, n, m))
        return
    for m in range(total):
        c = _index_to_monic(spec, n, m)
        f = Poly._make(spec, c)
        if is_irreducible(f):
            yield f


@lru_cache(maxsize=None)
def monic_irreducibles(spec: FieldSpec, n: int) -> tuple[Poly, ...]:
    """Cached tuple of all monic irreducibles of degree n, canonical order."""
    return tuple(enumerate_monic_irreducible(spec, n))


@lru_cache(maxsize=None)
def monic_irreducible_keys(spec: FieldSpec, n: int) -> frozenset:
    """Cached set of coefficient tuples of monic irreducibles of degree n."""
    return frozenset(f.c for f in monic_irreducibles(spec, n))


# ---------------------------------------------------------------------------
# Factorization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """unit * prod(factor^multiplicity) with monic irreducible factors."""

    unit: FieldElement
    factors: tuple[tuple[Poly, int], ...]

    def expand(self) -> Poly:
        spec = self.unit.spec
        out = Poly._make(spec, (self.unit.i,)) if self.unit.i else Poly.zero(spec)
        for p, k in self.factors:
            out = out * p**k
        return out

    def distinct_degrees(self) -> tuple[int, ...]:
        return tuple(sorted({len(p.c) - 1 for p, _ in self.factors}))

    def __str__(self) -> str:
        parts = []
        if self.unit.i != 1:
            u = str(self.unit)
            parts.append(f"({u})" if "+" in u else u)
        for p, k in self.factors:
            s = render_poly(p)
            if len([v for v in p.c if v]) > 1:
                s = f"({s})"
            parts.append(s if k == 1 else f"{s}^{k}")
        return " * ".join(parts) if parts else "1"


def _content_seed(spec: FieldSpec, c: tuple) -> int:
    payload = repr((spec.p, spec.e, spec.modulus, c)).encode()
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "big")


def _pth_root_raw(spec: FieldSpec, c: tuple) -> tuple:
    """For c with vanishing derivative, c(x) = v(x)^p; returns v."""
    p = spec.p
    inv_frob = spec.p ** (spec.e - 1)  # a -> a^(p^(e-1)) inverts x -> x^p on GF(q)
    out = []
    for k in range(0, len(c), p):
        out.append(spec.pow_i(c[k], inv_frob) if spec.e > 1 else c[k])
    return _trim(out)


def _squarefree_parts(spec: FieldSpec, c: tuple) -> list[tuple[tuple, int]]:
    """Monic c -> [(squarefree monic part, multiplicity)], parts coprime."""
    n = len(c) - 1
    if n < 1:
        return []
    deriv = _derivative_raw(spec, c)
    if not deriv:
        root = _pth_root_raw(spec, c)
        return [(g, m * spec.p) for g, m in _squarefree_parts(spec, root)]
    out: list[tuple[tuple, int]] = []
    cofactor = _gcd_raw(spec, c, deriv)
    w = _divmod_raw(spec, c, cofactor)[0]
    i = 1
    while len(w) > 1:
        y = _gcd_raw(spec, w, cofactor)
        z = _divmod_raw(spec, w, y)[0]
        if len(z) > 1:
            out.append((z, i))
        w = y
        cofactor = _divmod_raw(spec, cofactor, y)[0]
        i += 1
    if len(cofactor) > 1:
        root = _pth_root_raw(spec, cofactor)
        out.extend((g, m * spec.p) for g, m in _squarefree_parts(spec, root))
    return out


def _distinct_degree(spec: FieldSpec, c: tuple) -> list[tuple[tuple, int]]:
    """Monic squarefree c -> [(product of degree-d factors, d)]."""
    out = []
    q = spec.q
    x = (0, 1)
    h = _divmod_raw(spec, x, c)[1]
    rest = c
    d = 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = _powmod_raw(spec, h, q, rest)
        g = _gcd_raw(spec, _sub_raw(spec, h, x), rest)
        if g != (1,):
            out.append((g, d))
            rest = _divmod_raw(spec, rest, g)[0]
            h = _divmod_raw(spec, h, rest)[1]
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def _equal_degree_split(spec: FieldSpec, c: tuple, d: int, rng: random.Random) -> list:
    """Monic squarefree c, all factors of degree d -> list of the factors."""
    n = len(c) - 1
    if n == d:
        return [c]
    q = spec.q
    while True:
        h = _trim([rng.randrange(q) for _ in range(n)])
        if len(h) - 1 < 1:
            continue
        g = _gcd_raw(spec, h, c)
        if 1 <= len(g) - 1 < n:
            split = g
        elif spec.p == 2:
            # char 2: absolute trace map T(h) = sum h^(2^i), i < d*e
            t = ()
            u = _divmod_raw(spec, h, c)[1]
            for _ in range(d * spec.e):
                t = _add_raw(spec, t, u)
                u = _divmod_raw(spec, _mul_raw(spec, u, u), c)[1]
            split = _gcd_raw(spec, t, c)
        else:
            t = _powmod_raw(spec, h, (q**d - 1) // 2, c)
            split = _gcd_raw(spec, _sub_raw(spec, t, (1,)), c)
        if 1 <= len(split) - 1 < n:
            rest = _divmod_raw(spec, c, split)[0]
            return _equal_degree_split(spec, split, d, rng) + _equal_degree_split(
                spec, rest, d, rng
            )


def factor(f: Poly) -> Factorization:
    """Full factorization into monic irreducibles times a unit."""
    spec = f.spec
    if f.is_zero:
        raise PolyError("cannot factor the zero polynomial")
    unit = FieldElement(spec, f.lc)
    c = _monic_raw(spec, f.c)
    rng = random.Random(_content_seed(spec, f.c))
    found: list[tuple[tuple, int]] = []
    for part, mult in _squarefree_parts(spec, c):
        for prod, d in _distinct_degree(spec, part):
            for irr in _equal_degree_split(spec, prod, d, rng):
                found.append((irr, mult))
    found.sort(key=lambda t: _key(t[0]))
    return Factorization(
        unit=unit,
        factors=tuple((Poly._make(spec, ct), m) for ct, m in found),
    )


def moebius(f: Poly) -> int:
    """Polynomial Moebius function on monic polynomials."""
    if not f.is_monic:
        raise PolyError("moebius requires a monic polynomial")
    if len(f.c) == 1:
        return 1  # f = 1
    if not is_squarefree(f):
        return 0
    return -1 if len(factor(f).factors) % 2 else 1


def is_squarefree(f: Poly) -> bool:
    if f.is_zero:
        raise PolyError("squarefreeness is undefined for zero")
    if len(f.c) == 1:
        return True
    c = _monic_raw(f.spec, f.c)
    return _gcd_raw(f.spec, c, _derivative_raw(f.spec, c)) == (1,)


# ---------------------------------------------------------------------------
# Multiplicative order
# ---------------------------------------------------------------------------


def order_mod(g: Poly, f: Poly) -> int:
    """Least ell >= 1 with g^ell = 1 mod f, for monic squarefree f coprime to g."""
    g._check(f)
    spec = f.spec
    if not f.is_monic or len(f.c) < 2:
        raise PolyError("order modulus must be monic of degree >= 1")
    if not is_squarefree(f):
        raise PolyError("order modulus must be squarefree")
    if _gcd_raw(spec, f.c, g.c) != (1,):
        raise PolyError("not invertible: gcd(f, g) != 1")
    exponent = lcm(*(spec.q**d - 1 for d in factor(f).distinct_degrees()))
    g_red = _divmod_raw(spec, g.c, f.c)[1]
    if _powmod_raw(spec, g_red, exponent, f.c) != (1,):
        raise AssertionError("group exponent violated")  # pragma: no cover
    order = exponent
    for p in prime_factors(exponent):
        while order % p == 0 and _powmod_raw(spec, g_red, order // p, f.c) == (1,):
            order //= p
    return order


def order_mod_naive(g: Poly, f: Poly) -> int:
    """Oracle: least ell by successive multiplication.  For tests only."""
    g._check(f)
    spec = f.spec
    if _gcd_raw(spec, f.c, g.c) != (1,):
        raise PolyError("not invertible: gcd(f, g) != 1")
    g_red = _divmod_raw(spec, g.c, f.c)[1]
    acc = g_red
    ell = 1
    while acc != (1,):
        acc = _divmod_raw(spec, _mul_raw(spec, acc, g_red), f.c)[1]
        ell += 1
    return ell


# ---------------------------------------------------------------------------
# Parsing and rendering
# ---------------------------------------------------------------------------


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
        elif ch in "xt":
            tokens.append(("sym", ch, i))
            i += 1
        elif ch in "+-*^()":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise PolyParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens, spec: FieldSpec):
        self.tokens = tokens
        self.pos = 0
        self.spec = spec

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.take()
        if tok[0] != kind:
            raise PolyParseError(f"expected {kind!r}", tok[2])
        return tok

    def parse(self) -> dict[int, int]:
        """Returns {x-degree: packed coefficient}."""
        acc: dict[int, int] = {}
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        self._term(acc, sign)
        while self.peek()[0] != "end":
            tok = self.take()
            if tok[0] not in "+-":
                raise PolyParseError("expected '+' or '-'", tok[2])
            self._term(acc, -1 if tok[0] == "-" else 1)
        return acc

    def _term(self, acc: dict[int, int], sign: int) -> None:
        spec = self.spec
        coeff = 1
        xdeg = None
        while True:
            kind, val, pos = self.peek()
            if kind == "int":
                self.take()
                if val >= spec.p:
                    raise PolyParseError(
                        f"coefficient {val} out of range for characteristic {spec.p}",
                        pos,
                    )
                coeff = spec.mul_i(coeff, val)
            elif kind == "sym" and val == "t":
                self.take()
                coeff = spec.mul_i(coeff, self._t_power(pos))
            elif kind == "sym" and val == "x":
                self.take()
                if xdeg is not None:
                    raise PolyParseError("more than one x factor in a term", pos)
                xdeg = 1
                if self.peek()[0] == "^":
                    self.take()
                    xdeg = self.expect("int")[1]
            elif kind == "(":
                self.take()
                coeff = spec.mul_i(coeff, self._paren_poly())
            else:
                raise PolyParseError("expected a term", pos)
            if self.peek()[0] == "*":
                self.take()
                continue
            kind = self.peek()[0]
            if kind in ("+", "-", "end", ")"):
                break
            # adjacency without '*' is a syntax error
            raise PolyParseError("expected '*', '+', '-' or end", self.peek()[2])
        if sign < 0:
            coeff = spec.neg_i(coeff)
        d = xdeg if xdeg is not None else 0
        acc[d] = spec.add_i(acc.get(d, 0), coeff)

    def _t_power(self, pos: int) -> int:
        spec = self.spec
        if spec.e == 1:
            raise PolyParseError("symbol 't' is only valid in extension fields", pos)
        j = 1
        if self.peek()[0] == "^":
            self.take()
            j = self.expect("int")[1]
        if j >= spec.e:
            raise PolyParseError(
                f"t exponent {j} exceeds extension degree {spec.e - 1}", pos
            )
        return spec._pack([0] * j + [1] + [0] * (spec.e - j - 1))

    def _paren_poly(self) -> int:
        """Parenthesized polynomial in t, evaluated to a packed element."""
        spec = self.spec
        total = 0
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        while True:
            coeff = 1
            while True:
                kind, val, pos = self.peek()
                if kind == "int":
                    self.take()
                    if val >= spec.p:
                        raise PolyParseError(
                            f"coefficient {val} out of range for characteristic {spec.p}",
                            pos,
                        )
                    coeff = spec.mul_i(coeff, val)
                elif kind == "sym" and val == "t":
                    self.take()
                    coeff = spec.mul_i(coeff, self._t_power(pos))
                elif kind == "sym" and val == "x":
                    raise PolyParseError("'x' not allowed inside coefficient", pos)
                else:
                    raise PolyParseError("expected a coefficient term", pos)
                if self.peek()[0] == "*":
                    self.take()
                    continue
                break
            if sign < 0:
                coeff = spec.neg_i(coeff)
            total = spec.add_i(total, coeff)
            kind, _, pos = self.take()
            if kind == ")":
                return total
            if kind not in "+-":
                raise PolyParseError("expected '+', '-' or ')'", pos)
            sign = -1 if kind == "-" else 1


def parse_poly(text: str, spec: FieldSpec) -> Poly:
    """Parse the polynomial grammar; see render_poly for the canonical form."""
    parser = _Parser(_tokenize(text), spec)
    acc = parser.parse()
    if not acc:
        raise PolyParseError("empty polynomial", 0)
    top = max(acc)
    coeffs = [acc.get(k, 0) for k in range(top + 1)]
    return Poly._make(spec, _trim(coeffs))


def _render_coeff(spec: FieldSpec, v: int) -> tuple[str, bool]:
    """Packed coefficient -> (text, needs_star).  Assumes v not in {0, 1}."""
    if spec.e == 1:
        return str(v), True
    digits = spec._digits(v)
    nonzero = [(j, d) for j, d in enumerate(digits) if d]
    if len(nonzero) == 1:
        j, d = nonzero[0]
        if j == 0:
            return str(d), True
        tpow = "t" if j == 1 else f"t^{j}"
        if d == 1:
            return tpow, True
    return f"({spec.render_element(v)})", True


def render_poly(f: Poly) -> str:
    """Canonical form: descending powers, '+' separators, unit coefficients
    and zero terms omitted, zero rendered as "0"."""
    spec = f.spec
    if f.is_zero:
        return "0"
    parts = []
    for k in range(len(f.c) - 1, -1, -1):
        v = f.c[k]
        if v == 0:
            continue
        xpow = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if k == 0:
            parts.append(spec.render_element(v))
        elif v == 1:
            parts.append(xpow)
        else:
            coeff, _ = _render_coeff(spec, v)
            parts.append(f"{coeff}*{xpow}")
    return "+".join(parts)
