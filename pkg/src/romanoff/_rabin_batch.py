"""Vectorized Rabin irreducibility filter for monic polynomials over small GF(q).

This is a batch implementation of exactly the predicate `poly.is_irreducible`
computes: a root screen, then x^(q^n) = x mod f together with
gcd(x^(q^(n/ell)) - x, f) = 1 for every prime ell dividing n.  All arithmetic
is exact int64 integer arithmetic: prime fields use direct modular arithmetic
with deferred reduction, extension fields use flat add/mul lookup tables.
The scalar implementation remains the reference; the two are compared in the
test suite.
"""

from __future__ import annotations

import numpy as np

from .field import FieldSpec
from .intarith import prime_factors

_CHUNK = 1 << 15


class _PrimeKernel:
    """Deferred-mod arithmetic for GF(p); coefficients are residues."""

    def __init__(self, spec: FieldSpec):
        self.p = spec.p

    def prepare_modulus(self, F):
        return F

    def mulmod(self, A, B, Fx, n: int):
        p = self.p
        rows = A.shape[0]
        P = np.zeros((rows, 2 * n - 1), dtype=np.int64)
        for i in range(n):
            ai = A[:, i]
            for j in range(n):
                P[:, i + j] += ai * B[:, j]
        for i in range(2 * n - 2, n - 1, -1):
            c = P[:, i] % p
            P[:, i - n : i + 1] -= c[:, None] * Fx
        return P[:, :n] % p

    def roots_alive(self, F, n: int):
        p = self.p
        alive = np.ones(F.shape[0], dtype=bool)
        for a in range(p):
            val = F[:, n].copy()
            for i in range(n - 1, -1, -1):
                val = (val * a + F[:, i]) % p
            alive &= val != 0
        return alive


class _TableKernel:
    """Lookup-table arithmetic for small extension fields; coefficients are
    packed element indices, always fully reduced."""

    def __init__(self, spec: FieldSpec):
        q = spec.q
        self.q = q
        add, mul, _ = spec._tables
        self.ADD = np.array(add, dtype=np.int64)
        self.MUL = np.array(mul, dtype=np.int64)
        neg = np.array([spec.neg_i(a) for a in range(q)], dtype=np.int64)
        self.NEG = neg

    def prepare_modulus(self, F):
        # negated low part of f, so reduction becomes x^n -> sum NF_j x^j
        return self.NEG[F[:, :-1]]

    def mulmod(self, A, B, NF, n: int):
        q, ADD, MUL = self.q, self.ADD, self.MUL
        rows = A.shape[0]
        P = np.zeros((rows, 2 * n - 1), dtype=np.int64)
        for i in range(n):
            ai_q = A[:, i] * q
            for j in range(n):
                P[:, i + j] = ADD[P[:, i + j] * q + MUL[ai_q + B[:, j]]]
        for i in range(2 * n - 2, n - 1, -1):
            c_q = P[:, i] * q
            for j in range(n):
                P[:, i - n + j] = ADD[P[:, i - n + j] * q + MUL[c_q + NF[:, j]]]
        return P[:, :n]

    def roots_alive(self, F, n: int):
        q, ADD, MUL = self.q, self.ADD, self.MUL
        alive = np.ones(F.shape[0], dtype=bool)
        for a in range(q):
            val = F[:, n].copy()
            for i in range(n - 1, -1, -1):
                val = ADD[MUL[val * q + a] * q + F[:, i]]
            alive &= val != 0
        return alive


def _pow_q(kernel, A, Fx, n: int, q: int):
    """Rowwise A^q mod f by square-and-multiply on the exponent bits."""
    bits = bin(q)[2:]
    R = A
    for bit in bits[1:]:
        R = kernel.mulmod(R, R, Fx, n)
        if bit == "1":
            R = kernel.mulmod(R, A, Fx, n)
    return R


def _scalar_gcd_is_one(spec: FieldSpec, a: tuple, b: tuple) -> bool:
    from .poly import _gcd_raw, _sub_raw, _trim

    x = (0, 1)
    diff = _sub_raw(spec, _trim(list(a)), x)
    if not diff:
        return False
    return _gcd_raw(spec, diff, _trim(list(b))) == (1,)


def batch_irreducible_indices(spec: FieldSpec, n: int):
    """Yield base-q low-coefficient indices of monic irreducibles of degree n,
    ascending.  Requires q <= 64 and n >= 2."""
    q = spec.q
    kernel = _PrimeKernel(spec) if spec.e == 1 else _TableKernel(spec)
    total = q**n
    checkpoints = sorted({n // ell for ell in prime_factors(n)})
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        m = np.arange(start, stop, dtype=np.int64)
        rows = m.shape[0]
        F = np.empty((rows, n + 1), dtype=np.int64)
        v = m.copy()
        for i in range(n):
            F[:, i] = v % q
            v //= q
        F[:, n] = 1

        # root screen: a root in GF(q) means a linear factor (n >= 2)
        alive = kernel.roots_alive(F, n)
        if not alive.any():
            continue

        sub = np.flatnonzero(alive)
        Fs = F[sub]
        Fx = kernel.prepare_modulus(Fs)
        X = np.zeros((sub.shape[0], n), dtype=np.int64)
        X[:, 1] = 1
        cur = X
        snapshots = {}
        for j in range(1, n + 1):
            cur = _pow_q(kernel, cur, Fx, n, q)
            if j in checkpoints:
                snapshots[j] = cur.copy()
        passed = np.flatnonzero((cur == X).all(axis=1))

        for k in passed:
            f_row = tuple(int(t) for t in Fs[k])
            ok = True
            for j in checkpoints:
                snap = tuple(int(t) for t in snapshots[j][k])
                if not _scalar_gcd_is_one(spec, snap, f_row):
                    ok = False
                    break
            if ok:
                yield int(m[sub[k]])
