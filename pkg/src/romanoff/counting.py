"""Exact brute-force computation of the shifted-power counting quantities.

All counts are computed by explicit enumeration over the relevant polynomial
sets and exact integer/rational arithmetic:

* ``count_irreducible``     -- number of monic irreducibles of degree n,
* ``romanoff_count``        -- R(n,g,q), monic f of degree n with f = h + g^k,
* ``romanoff_count_all``    -- the variant over arbitrary leading coefficients,
* ``pair_count_A``          -- irreducible pairs (h, h+f),
* ``diff_count_B``          -- ordered power differences g^k1 - g^k2 = f,
* ``rep_count_C``           -- representations f = h + g^k with delta*k < n,
* ``verify_double_count``   -- the exact double-counting identity
                               sum C^2 = sum A*B plus its consequences.

Representation sums h + g^k with delta*k = n whose leading terms cancel or
add to a non-monic result are excluded from R by definition; the number of
such discarded sums is recorded on the report rather than silently dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil

from .field import FieldSpec
from .intarith import divisors, moebius_int
from .poly import (
    EnumerationCapError,
    Poly,
    PolyError,
    _add_raw,
    _key,
    _mul_raw,
    _sub_raw,
    monic_irreducible_keys,
    monic_irreducibles,
    render_poly,
)

DEFAULT_COUNT_CAP = 10**7


class CountingIdentityError(AssertionError):
    """An exact identity that must hold by double counting failed."""


def count_irreducible(n: int, spec: FieldSpec) -> int:
    """I_q(n) via the integer Moebius formula, with exact sanity bounds.

    Asserts that the divisor sum is divisible by n and that the strict
    sandwich q^n - 2*q^(n/2) < n*I_q(n) <= q^n holds (the middle term
    compared by squaring, so everything stays in integers).
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    q = spec.q
    total = sum(moebius_int(n // d) * q**d for d in divisors(n))
    if total % n:
        raise AssertionError(f"divisor sum {total} not divisible by {n}")
    count = total // n
    qn = q**n
    if n * count > qn:
        raise AssertionError("upper sandwich bound violated")
    t = qn - n * count
    if t * t >= 4 * qn:
        raise AssertionError("lower sandwich bound violated")
    return count


@lru_cache(maxsize=None)
def all_irreducibles(spec: FieldSpec, n: int) -> tuple[Poly, ...]:
    """Irreducibles of degree n with every nonzero leading coefficient."""
    monics = monic_irreducibles(spec, n)
    out = []
    for a in range(1, spec.q):
        for h in monics:
            out.append(_mul_raw(spec, h.c, (a,)) if a != 1 else h.c)
    out.sort(key=_key)
    return tuple(Poly._make(spec, c) for c in out)


@lru_cache(maxsize=None)
def all_irreducible_keys(spec: FieldSpec, n: int) -> frozenset:
    return frozenset(f.c for f in all_irreducibles(spec, n))


@dataclass(frozen=True)
class RomanoffInstance:
    """One parameter point (q, n, g) with delta = deg g >= 1."""

    spec: FieldSpec
    g: Poly
    n: int

    def __post_init__(self):
        if self.g.spec != self.spec:
            raise PolyError("g defined over a different field")
        if self.g.is_zero or len(self.g.c) < 2:
            raise PolyError("g must have degree >= 1")
        if self.n < 1:
            raise ValueError("n must be >= 1")

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def delta(self) -> int:
        return len(self.g.c) - 1

    @property
    def k_count(self) -> int:
        """Number of exponents with delta*k < n, i.e. ceil(n/delta)."""
        return ceil(self.n / self.delta)

    def power_tuples(self, include_boundary: bool) -> list[tuple]:
        """Coefficient tuples of g^k for delta*k < n (plus delta*k = n when
        include_boundary is set)."""
        spec = self.spec
        limit = self.n if include_boundary else self.n - 1
        powers = []
        cur = (1,)
        k = 0
        while k * self.delta <= limit:
            powers.append(cur)
            cur = _mul_raw(spec, cur, self.g.c)
            k += 1
        return powers

    def check_cap(self, cap: int) -> None:
        if self.q**self.n > cap:
            raise EnumerationCapError(
                f"instance needs q^n = {self.q**self.n} > cap {cap}"
            )


def _monic_representables(inst: RomanoffInstance, cap: int) -> tuple[set, int]:
    """Distinct monic degree-n sums h + g^k (k*delta <= n) and the number of
    discarded degree-dropped or non-monic boundary sums."""
    inst.check_cap(cap)
    spec = inst.spec
    n = inst.n
    reps: set = set()
    excluded = 0
    for gk in inst.power_tuples(include_boundary=True):
        for h in monic_irreducibles(spec, n):
            s = _add_raw(spec, h.c, gk)
            if len(s) == n + 1 and s[-1] == 1:
                reps.add(s)
            else:
                excluded += 1
    return reps, excluded


def romanoff_count(inst: RomanoffInstance, cap: int = DEFAULT_COUNT_CAP):
    """R(n,g,q) and the proportion r = R / q^n as an exact rational."""
    reps, _ = _monic_representables(inst, cap)
    R = len(reps)
    return R, Fraction(R, inst.q**inst.n)


def romanoff_count_all(inst: RomanoffInstance, cap: int = DEFAULT_COUNT_CAP):
    """The arbitrary-leading-coefficient count and proportion
    (R~, r~ = R~ / ((q-1) q^n))."""
    inst.check_cap(cap)
    spec = inst.spec
    n = inst.n
    reps: set = set()
    for gk in inst.power_tuples(include_boundary=True):
        for h in all_irreducibles(spec, n):
            s = _add_raw(spec, h.c, gk)
            if len(s) == n + 1:
                reps.add(s)
    R_tilde = len(reps)
    return R_tilde, Fraction(R_tilde, (inst.q - 1) * inst.q**inst.n)


def pair_count_A(f: Poly, n: int) -> int:
    """A(f,n): monic irreducible h of degree n with h + f also irreducible."""
    spec = f.spec
    if not f.is_zero and len(f.c) - 1 >= n:
        raise ValueError("pair_count_A requires deg f < n")
    keys = monic_irreducible_keys(spec, n)
    fc = f.c
    return sum(1 for h in monic_irreducibles(spec, n) if _add_raw(spec, h.c, fc) in keys)


def pair_count_A_tilde(f: Poly, n: int) -> int:
    """The variant with h and h + f irreducible of any leading coefficient."""
    spec = f.spec
    if not f.is_zero and len(f.c) - 1 >= n:
        raise ValueError("pair_count_A_tilde requires deg f < n")
    keys = all_irreducible_keys(spec, n)
    fc = f.c
    return sum(1 for h in all_irreducibles(spec, n) if _add_raw(spec, h.c, fc) in keys)


def diff_count_B(f: Poly, inst: RomanoffInstance) -> int:
    """B(f,n): ordered pairs (k1,k2), delta*k_i < n, with g^k1 - g^k2 = f."""
    spec = inst.spec
    powers = inst.power_tuples(include_boundary=False)
    fc = f.c
    return sum(
        1 for p1 in powers for p2 in powers if _sub_raw(spec, p1, p2) == fc
    )


def rep_count_C(f: Poly, inst: RomanoffInstance) -> int:
    """C(f,n): pairs (h,k) with h + g^k = f, h monic irreducible, delta*k < n."""
    spec = inst.spec
    if len(f.c) - 1 != inst.n:
        return 0
    keys = monic_irreducible_keys(spec, inst.n)
    fc = f.c
    return sum(
        1
        for gk in inst.power_tuples(include_boundary=False)
        if _sub_raw(spec, fc, gk) in keys
    )


def rep_count_C_tilde(f: Poly, inst: RomanoffInstance) -> int:
    """C~(f,n): as rep_count_C with h irreducible of any leading coefficient."""
    spec = inst.spec
    if len(f.c) - 1 != inst.n:
        return 0
    keys = all_irreducible_keys(spec, inst.n)
    fc = f.c
    return sum(
        1
        for gk in inst.power_tuples(include_boundary=False)
        if _sub_raw(spec, fc, gk) in keys
    )


@dataclass(frozen=True)
class DoubleCountSums:
    """Support sums of the solution-counting identity, monic and tilde."""

    sum_C: int
    sum_C2: int
    sum_AB: int
    sum_B: int
    epsilon_support: int
    sum_C_tilde: int
    sum_C2_tilde: int
    sum_AB_tilde: int


def double_count_sums(inst: RomanoffInstance, cap: int = DEFAULT_COUNT_CAP) -> DoubleCountSums:
    """Compute sum_f C(f,n)^2, sum_f A(f,n)B(f,n) and companions exactly.

    The AB sum iterates only over realized differences g^k1 - g^k2 (at most
    ceil(n/delta)^2 polynomials); the C sums iterate over the h + g^k images.
    """
    inst.check_cap(cap)
    spec = inst.spec
    n = inst.n
    powers = inst.power_tuples(include_boundary=False)

    monics = monic_irreducibles(spec, n)
    monic_keys = monic_irreducible_keys(spec, n)
    c_counts: dict = {}
    for gk in powers:
        for h in monics:
            s = _add_raw(spec, h.c, gk)
            c_counts[s] = c_counts.get(s, 0) + 1
    sum_C = sum(c_counts.values())
    sum_C2 = sum(v * v for v in c_counts.values())

    b_counts: dict = {}
    for p1 in powers:
        for p2 in powers:
            d = _sub_raw(spec, p1, p2)
            b_counts[d] = b_counts.get(d, 0) + 1
    sum_B = sum(b_counts.values())

    def a_of(d: tuple) -> int:
        return sum(1 for h in monics if _add_raw(spec, h.c, d) in monic_keys)

    sum_AB = sum(a_of(d) * b for d, b in b_counts.items())

    alls = all_irreducibles(spec, n)
    all_keys = all_irreducible_keys(spec, n)
    ct_counts: dict = {}
    for gk in powers:
        for h in alls:
            s = _add_raw(spec, h.c, gk)
            ct_counts[s] = ct_counts.get(s, 0) + 1
    sum_Ct = sum(ct_counts.values())
    sum_Ct2 = sum(v * v for v in ct_counts.values())

    def a_tilde_of(d: tuple) -> int:
        return sum(1 for h in alls if _add_raw(spec, h.c, d) in all_keys)

    sum_AtB = sum(a_tilde_of(d) * b for d, b in b_counts.items())

    return DoubleCountSums(
        sum_C=sum_C,
        sum_C2=sum_C2,
        sum_AB=sum_AB,
        sum_B=sum_B,
        epsilon_support=len(c_counts),
        sum_C_tilde=sum_Ct,
        sum_C2_tilde=sum_Ct2,
        sum_AB_tilde=sum_AtB,
    )


@dataclass(frozen=True)
class CountReport:
    """Exact counts and identity sums for one instance."""

    q: int
    n: int
    delta: int
    g: str
    R: int
    r: Fraction
    R_tilde: int
    r_tilde: Fraction
    sum_C: int
    sum_C2: int
    sum_AB: int
    epsilon_support: int
    excluded_sums: int

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "delta": self.delta,
            "g": self.g,
            "R": self.R,
            "r_num": self.r.numerator,
            "r_den": self.r.denominator,
            "R_tilde": self.R_tilde,
            "r_tilde_num": self.r_tilde.numerator,
            "r_tilde_den": self.r_tilde.denominator,
            "sum_C": self.sum_C,
            "sum_C2": self.sum_C2,
            "sum_AB": self.sum_AB,
            "epsilon_support": self.epsilon_support,
            "excluded_sums": self.excluded_sums,
        }


def verify_double_count(inst: RomanoffInstance, cap: int = DEFAULT_COUNT_CAP) -> CountReport:
    """Compute a full CountReport and assert every exact identity.

    Raises CountingIdentityError if any of the following fails:
    sum C^2 = sum A*B (and the tilde analogue), sum C = I_q(n)*ceil(n/delta),
    sum B = ceil(n/delta)^2, epsilon-support = R, the Cauchy-Schwarz
    consequence R * sum C^2 >= (sum C)^2 (and its tilde analogue), and the
    elementary upper bounds R <= I_q(n)(1 + floor(n/delta)).
    """
    spec = inst.spec
    n, delta, q = inst.n, inst.delta, inst.q
    sums = double_count_sums(inst, cap)
    reps, excluded = _monic_representables(inst, cap)
    R = len(reps)
    r = Fraction(R, q**n)
    R_tilde, r_tilde = romanoff_count_all(inst, cap)
    count_n = count_irreducible(n, spec)
    k_count = inst.k_count

    def need(cond: bool, label: str) -> None:
        if not cond:
            raise CountingIdentityError(
                f"{label} failed for q={q} n={n} g={render_poly(inst.g)}"
            )

    need(sums.sum_C == count_n * k_count, "sum C = I_q(n) * ceil(n/delta)")
    need(sums.sum_B == k_count * k_count, "sum B = ceil(n/delta)^2")
    need(sums.sum_C2 == sums.sum_AB, "sum C^2 = sum A*B")
    need(sums.sum_C_tilde == (q - 1) * sums.sum_C, "sum C~ = (q-1) sum C")
    need(sums.sum_C2_tilde == sums.sum_AB_tilde, "sum C~^2 = sum A~*B")
    need(sums.epsilon_support == R, "epsilon support = R")
    if sums.sum_C2 > 0:
        need(R * sums.sum_C2 >= sums.sum_C**2, "Cauchy-Schwarz R >= (sum C)^2/sum C^2")
    if sums.sum_C2_tilde > 0:
        need(
            R_tilde * sums.sum_C2_tilde >= sums.sum_C_tilde**2,
            "Cauchy-Schwarz R~ >= (sum C~)^2/sum C~^2",
        )
    need(R <= count_n * (1 + n // delta), "R <= I_q(n)(1 + floor(n/delta))")
    need(
        R_tilde <= (q - 1) * count_n * (1 + n // delta),
        "R~ <= (q-1) I_q(n)(1 + floor(n/delta))",
    )

    return CountReport(
        q=q,
        n=n,
        delta=delta,
        g=render_poly(inst.g),
        R=R,
        r=r,
        R_tilde=R_tilde,
        r_tilde=r_tilde,
        sum_C=sums.sum_C,
        sum_C2=sums.sum_C2,
        sum_AB=sums.sum_AB,
        epsilon_support=sums.epsilon_support,
        excluded_sums=excluded,
    )
