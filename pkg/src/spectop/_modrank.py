"""Incremental matrix rank over a large prime field.

Columns arrive one at a time; each is reduced against the pivot rows found
so far (in insertion order, which is sound because every stored pivot row
was itself fully reduced before being kept, so it has zeros at all earlier
pivot positions).  Arithmetic is Montgomery multiplication on uint64 inside
a numba kernel; without numba the same elimination runs on Python integers.

Primes are 62 bits so a false low rank from an unlucky prime has
probability at most dim/2^62 per run; rank can only be under-, never
over-reported.
"""
from __future__ import annotations

import numpy as np

from .seeding import trial_rng

try:
    from numba import njit

    HAVE_NUMBA = True
except Exception:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime_u64(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 2^64."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(bits: int = 62, seed: int = 0) -> int:
    rng = trial_rng(seed)
    lo, hi = 1 << (bits - 1), 1 << bits
    while True:
        cand = int(rng.integers(lo, hi, dtype=np.uint64)) | 1
        if is_prime_u64(cand):
            return cand


_U0 = np.uint64(0)
_U1 = np.uint64(1)
_U2 = np.uint64(2)
_U32 = np.uint64(32)
_MASK = np.uint64(0xFFFFFFFF)


@njit(cache=True)
def _mont_mul(a, b, p, pprime):
    # full 128-bit product via 32-bit limbs
    a0 = a & _MASK
    a1 = a >> _U32
    b0 = b & _MASK
    b1 = b >> _U32
    ll = a0 * b0
    lh = a0 * b1
    hl = a1 * b0
    mid = (ll >> _U32) + (lh & _MASK) + (hl & _MASK)
    lo = (ll & _MASK) | ((mid & _MASK) << _U32)
    hi = a1 * b1 + (lh >> _U32) + (hl >> _U32) + (mid >> _U32)
    # REDC: m = lo * p' mod 2^64; t = (ab + m p) / 2^64
    m = lo * pprime
    m0 = m & _MASK
    m1 = m >> _U32
    p0 = p & _MASK
    p1 = p >> _U32
    ll2 = m0 * p0
    lh2 = m0 * p1
    hl2 = m1 * p0
    mid2 = (ll2 >> _U32) + (lh2 & _MASK) + (hl2 & _MASK)
    mp_hi = m1 * p1 + (lh2 >> _U32) + (hl2 >> _U32) + (mid2 >> _U32)
    carry = _U1 if lo != _U0 else _U0
    t = hi + mp_hi + carry
    if t >= p:
        t -= p
    return t


@njit(cache=True)
def _mont_pow(a, e, p, pprime, one):
    result = one
    base = a
    while e > _U0:
        if e & _U1:
            result = _mont_mul(result, base, p, pprime)
        base = _mont_mul(base, base, p, pprime)
        e >>= _U1
    return result


@njit(cache=True)
def _reduce_column(col, rows, pos, npiv, p, pprime, one):
    n = col.shape[0]
    for k in range(npiv):
        r = pos[k]
        c = col[r]
        if c == _U0:
            continue
        row = rows[k]
        for i in range(r, n):
            ri = row[i]
            if ri == _U0:
                continue
            t = _mont_mul(c, ri, p, pprime)
            ci = col[i]
            if ci >= t:
                col[i] = ci - t
            else:
                col[i] = ci + (p - t)
    j = -1
    for i in range(n):
        if col[i] != _U0:
            j = i
            break
    if j < 0:
        return -1
    inv = _mont_pow(col[j], p - _U2, p, pprime, one)
    for i in range(j, n):
        if col[i] != _U0:
            col[i] = _mont_mul(col[i], inv, p, pprime)
    return j


class _NumbaCore:
    def __init__(self, n_rows: int, p: int):
        self.n = n_rows
        self.p = np.uint64(p)
        self.pprime = np.uint64((-pow(p, -1, 1 << 64)) % (1 << 64))
        self.one = np.uint64((1 << 64) % p)  # Montgomery image of 1
        self._p_int = p
        self._rows = np.zeros((16, n_rows), dtype=np.uint64)
        self._pos = np.zeros(16, dtype=np.int64)
        self.rank = 0

    def _to_mont(self, x: int) -> np.uint64:
        return np.uint64(((x % self._p_int) << 64) % self._p_int)

    def add_column(self, idx, vals) -> bool:
        col = np.zeros(self.n, dtype=np.uint64)
        for i, v in zip(idx, vals):
            col[int(i)] = self._to_mont(int(v))
        j = _reduce_column(col, self._rows, self._pos, self.rank, self.p, self.pprime, self.one)
        if j < 0:
            return False
        if self.rank == self._rows.shape[0]:
            grown = np.zeros((2 * self.rank, self.n), dtype=np.uint64)
            grown[: self.rank] = self._rows
            self._rows = grown
            self._pos = np.concatenate([self._pos, np.zeros(self.rank, dtype=np.int64)])
        self._rows[self.rank] = col
        self._pos[self.rank] = j
        self.rank += 1
        return True


class _PythonCore:
    def __init__(self, n_rows: int, p: int):
        self.n = n_rows
        self.p = p
        self._rows: list = []
        self._pos: list = []
        self.rank = 0

    def add_column(self, idx, vals) -> bool:
        p = self.p
        col = [0] * self.n
        for i, v in zip(idx, vals):
            col[int(i)] = int(v) % p
        for j, row in zip(self._pos, self._rows):
            c = col[j]
            if c:
                for i in range(j, self.n):
                    if row[i]:
                        col[i] = (col[i] - c * row[i]) % p
        piv = next((i for i in range(self.n) if col[i]), -1)
        if piv < 0:
            return False
        inv = pow(col[piv], -1, p)
        for i in range(piv, self.n):
            col[i] = col[i] * inv % p
        self._rows.append(col)
        self._pos.append(piv)
        self.rank += 1
        return True


def make_core(n_rows: int, p: int, engine: str = "auto"):
    if engine == "auto":
        engine = "numba" if HAVE_NUMBA else "python"
    if engine == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba engine requested but numba is unavailable")
        return _NumbaCore(n_rows, p)
    if engine == "python":
        return _PythonCore(n_rows, p)
    raise ValueError(f"unknown engine {engine!r}")
