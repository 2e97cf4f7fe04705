"""Exact arithmetic in GF(p^e).

Elements are represented as integers in ``0 .. p^e - 1``: the element
``sum(c_i * root^i)`` is encoded as ``sum(c_i * p^i)``, where ``root`` is the
canonical root of the construction modulus.  Zero encodes to 0 and, for prime
fields, the encoding is the usual residue.

A field is built from the lexicographically smallest monic irreducible
polynomial of the requested degree whose canonical root is primitive, so the
same ``(p, e)`` always yields the same tables and the same primitive element
``xi``.  Multiplication runs through exp/log tables; addition is digit-wise
mod p (plain XOR in characteristic 2).
"""

from __future__ import annotations

import numpy as np

ORDER_CAP = 1 << 16

# Full q x q add/mul tables are only worth their memory for small fields.
_TABLE_CAP = 256


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _digits(code: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(code % p)
        code //= p
    return out


class FieldCtx:
    """A concrete finite field GF(p^e) with precomputed arithmetic tables.

    Instances are immutable after construction and safe to share between
    threads.  Use :func:`build_field` instead of calling this directly.
    """

    def __init__(self, p: int, e: int, modulus: tuple[int, ...], exp: list[int]):
        self.p = p
        self.e = e
        self.order = p**e
        self.modulus = modulus  # (c_0, ..., c_{e-1}) of x^e + c_{e-1}x^{e-1} + ... + c_0
        q = self.order

        # exp[i] = xi^i for 0 <= i < q-1, doubled so exp[i+j] works directly.
        self._exp = np.array(exp + exp, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        for i, v in enumerate(exp):
            log[v] = i
        self._log = log
        self.xi = exp[1] if q > 2 else 1

        # Digit tables for additive structure.
        pows = p ** np.arange(e, dtype=np.int64)
        codes = np.arange(q, dtype=np.int64)
        self._digit = (codes[:, None] // pows[None, :]) % p  # (q, e)
        self._pows = pows

        neg = ((-self._digit) % p) @ pows
        self._neg = neg.astype(np.int64)
        inv = np.zeros(q, dtype=np.int64)
        inv[exp] = self._exp[(q - 1 - log[exp]) % (q - 1)]
        self._inv = inv

        if q <= _TABLE_CAP:
            a = codes[:, None]
            b = codes[None, :]
            dig = (self._digit[a] + self._digit[b]) % p
            self._add_table = (dig @ pows).astype(np.int64)
            mt = np.zeros((q, q), dtype=np.int64)
            nz = exp
            la = log[nz]
            mt[np.ix_(nz, nz)] = self._exp[(la[:, None] + la[None, :]) % (q - 1)]
            self._mul_table = mt
        else:
            self._add_table = None
            self._mul_table = None

    def __repr__(self) -> str:
        return f"FieldCtx(GF({self.p}^{self.e}))" if self.e > 1 else f"FieldCtx(GF({self.p}))"

    # -- scalar operations ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return int(self._add_table[a, b])
        return int(((self._digit[a] + self._digit[b]) % self.p) @ self._pows)

    def neg(self, a: int) -> int:
        return int(self._neg[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return int(self._inv[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return int(self._exp[(int(self._log[a]) * k) % (self.order - 1)])

    def xi_pow(self, k: int) -> int:
        return int(self._exp[k % (self.order - 1)])

    def elements(self) -> range:
        return range(self.order)

    # -- vectorized operations (numpy arrays of codes) --------------------

    def add_vec(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.p == 2:
            return x ^ y
        if self.e == 1:
            return (x + y) % self.p
        if self._add_table is not None:
            return self._add_table[x, y]
        dig = (self._digit[x] + self._digit[y]) % self.p
        return dig @ self._pows

    def neg_vec(self, x):
        return self._neg[np.asarray(x, dtype=np.int64)]

    def sub_vec(self, x, y):
        return self.add_vec(x, self._neg[np.asarray(y, dtype=np.int64)])

    def mul_vec(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        x, y = np.broadcast_arrays(x, y)
        out = np.zeros(x.shape, dtype=np.int64)
        nz = (x != 0) & (y != 0)
        if nz.any():
            out[nz] = self._exp[(self._log[x[nz]] + self._log[y[nz]]) % (self.order - 1)]
        return out

    def scale_vec(self, c: int, x):
        x = np.asarray(x, dtype=np.int64)
        if c == 0:
            return np.zeros_like(x)
        if c == 1:
            return x.copy()
        out = np.zeros_like(x)
        nz = x != 0
        out[nz] = self._exp[(int(self._log[c]) + self._log[x[nz]]) % (self.order - 1)]
        return out

    def pow_vec(self, x, k: int):
        x = np.asarray(x, dtype=np.int64)
        if k == 0:
            return np.ones_like(x)
        out = np.zeros_like(x)
        nz = x != 0
        out[nz] = self._exp[(self._log[x[nz]] * k) % (self.order - 1)]
        return out

    def dot(self, u, v) -> int:
        w = self.mul_vec(u, v)
        acc = 0
        for t in w.ravel():
            acc = self.add(acc, int(t))
        return acc


_FIELD_CACHE: dict[tuple[int, int], FieldCtx] = {}


def _try_modulus(p: int, e: int, coeffs: list[int]) -> list[int] | None:
    """Return the exp table if x is a unit of full order mod the candidate.

    A full-order x certifies both irreducibility of the modulus and
    primitivity of its canonical root, so a single scan settles the search.
    """
    q = p**e
    val = [0] * e
    val[0] = 1  # the constant 1
    exp = []
    for step in range(q - 1):
        code = 0
        for i in range(e - 1, -1, -1):
            code = code * p + val[i]
        if code == 0:
            return None
        if code == 1 and step > 0:
            return None
        exp.append(code)
        # multiply by x, reduce by x^e = -(c_{e-1}x^{e-1} + ... + c_0)
        carry = val[e - 1]
        for i in range(e - 1, 0, -1):
            val[i] = (val[i - 1] - carry * coeffs[i]) % p
        val[0] = (-carry * coeffs[0]) % p
    code = 0
    for i in range(e - 1, -1, -1):
        code = code * p + val[i]
    if code != 1:
        return None
    return exp


def build_field(p: int, e: int = 1) -> FieldCtx:
    """Construct GF(p^e) deterministically.

    The modulus is the lexicographically smallest monic irreducible degree-e
    polynomial over GF(p) (coefficients ordered constant term first) whose
    canonical root is a generator of the multiplicative group.
    """
    key = (p, e)
    if key in _FIELD_CACHE:
        return _FIELD_CACHE[key]
    if not _is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if e < 1:
        raise ValueError(f"extension degree must be positive, got {e}")
    if p**e > ORDER_CAP:
        raise ValueError(f"field order {p**e} exceeds cap {ORDER_CAP}")

    for n in range(p**e):
        coeffs = _digits(n, p, e)
        exp = _try_modulus(p, e, coeffs)
        if exp is not None:
            ctx = FieldCtx(p, e, tuple(coeffs), exp)
            _FIELD_CACHE[key] = ctx
            return ctx
    raise RuntimeError(f"no primitive modulus found for GF({p}^{e})")  # pragma: no cover


def build_field_of_order(q: int) -> FieldCtx:
    """Construct the field with exactly q elements (q a prime power)."""
    for p in range(2, q + 1):
        if not _is_prime(p):
            continue
        e = 0
        n = q
        while n % p == 0:
            n //= p
            e += 1
        if n == 1 and e >= 1:
            return build_field(p, e)
        if q % p == 0:
            break
    raise ValueError(f"{q} is not a prime power")


def _subfield_degree(ctx_big: FieldCtx, q: int) -> int:
    """Extension degree s with q^s = |ctx_big|, or raise if q is no subfield."""
    p = ctx_big.p
    a = 0
    n = q
    while n > 1 and n % p == 0:
        n //= p
        a += 1
    if n != 1 or a == 0 or ctx_big.e % a != 0:
        raise ValueError(f"GF({q}) is not a subfield of GF({ctx_big.p}^{ctx_big.e})")
    return ctx_big.e // a


def subfield_membership(ctx_big: FieldCtx, q: int, x: int) -> bool:
    """True iff x lies in the subfield GF(q) of ctx_big, i.e. x^q = x."""
    _subfield_degree(ctx_big, q)
    return ctx_big.pow(x, q) == x


def subfield_basis(ctx_big: FieldCtx, q: int) -> list[int]:
    """A GF(q)-basis {1, xi, ..., xi^(s-1)} of GF(q^s)."""
    s = _subfield_degree(ctx_big, q)
    return [ctx_big.xi_pow(i) for i in range(s)]


def embed_table(small: FieldCtx, big: FieldCtx) -> np.ndarray:
    """Map of element codes of ``small`` to codes of its image inside ``big``.

    The image of small.xi is the root of small's modulus with the least code,
    which pins the embedding deterministically.
    """
    if small.p != big.p or big.e % small.e != 0:
        raise ValueError("no embedding: incompatible characteristics or degrees")
    q = small.order
    table = np.zeros(q, dtype=np.int64)
    if small.e == 1:
        # Prime subfield: constants have identical codes in both fields.
        return np.arange(q, dtype=np.int64)
    # Find the least root of small's modulus inside big.
    root = None
    for y in range(1, big.order):
        acc = big.pow(y, small.e)
        ypow = 1
        for c in small.modulus:
            acc = big.add(acc, big.mul(c, ypow))
            ypow = big.mul(ypow, y)
        if acc == 0:
            root = y
            break
    if root is None:  # pragma: no cover
        raise RuntimeError("modulus has no root in the extension")
    for code in range(q):
        val = 0
        ypow = 1
        for c in _digits(code, small.p, small.e):
            val = big.add(val, big.mul(c, ypow))
            ypow = big.mul(ypow, root)
        table[code] = val
    return table


def retract_table(small: FieldCtx, big: FieldCtx) -> np.ndarray:
    """Inverse of :func:`embed_table`: big codes -> small codes, -1 outside."""
    emb = embed_table(small, big)
    table = np.full(big.order, -1, dtype=np.int64)
    table[emb] = np.arange(small.order)
    return table


def coords_table(small: FieldCtx, big: FieldCtx) -> np.ndarray:
    """Coordinates of every element of big over the basis {1, xi, .., xi^(s-1)}.

    Returns an array of shape (|big|, s) of small-field codes c_t with
    x = sum_t embed(c_t) * xi^t for every big code x.
    """
    s = _subfield_degree(big, small.order)
    emb = embed_table(small, big)
    q = small.order
    table = np.full((big.order, s), -1, dtype=np.int64)
    combos = np.indices([q] * s).reshape(s, -1).T  # (q^s, s) small codes
    vals = np.zeros(combos.shape[0], dtype=np.int64)
    for t in range(s):
        vals = big.add_vec(vals, big.scale_vec(big.xi_pow(t), emb[combos[:, t]]))
    table[vals] = combos
    if (table < 0).any():  # pragma: no cover
        raise RuntimeError("coordinate table incomplete")
    return table
