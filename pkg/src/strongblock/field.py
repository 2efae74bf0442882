"""Exact arithmetic in GF(p^m) using exponent representation and Zech logarithms.

Elements are integer codes: code 0 is the zero element, and code c in
[1, order-1] denotes g^(c-1) where g is the root of the (primitive) modulus.
With this encoding, multiplication is index addition and addition is a single
Zech table lookup, which keeps the exhaustive incidence scans cheap.  All
operations come in scalar and numpy-vectorized flavours.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
from sympy import factorint, isprime

from .errors import (
    DependentBasis,
    FieldTooLarge,
    NonPrimeP,
    NonPrimitiveModulus,
    NotADivisor,
    ReducibleModulus,
)

DEFAULT_ORDER_CAP = 1 << 25

# Fields are immutable, so identical build requests share one instance.
_FIELD_CACHE: dict = {}


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p), coefficients low-to-high as python tuples


def _poly_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _poly_mulmod(a, b, mod, p):
    """(a*b) mod `mod` over GF(p); `mod` monic."""
    m = len(mod) - 1
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            res[i + j] = (res[i + j] + ai * bj) % p
    for deg in range(len(res) - 1, m - 1, -1):
        lead = res[deg]
        if lead:
            res[deg] = 0
            for j in range(m + 1):
                res[deg - m + j] = (res[deg - m + j] - lead * mod[j]) % p
    return _poly_trim(res[:m] + [0] * max(0, m - len(res)))


def _poly_powmod(a, e, mod, p):
    result = (1,)
    base = a
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    return _poly_trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                       for i in range(n)])


def _poly_mod(a, b, p):
    """Remainder of a divided by b over GF(p); b nonzero."""
    a = list(_poly_trim(a))
    b = _poly_trim(b)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        lead = a[-1]
        if lead:
            f = lead * inv_lead % p
            shift = len(a) - len(b)
            for j, cj in enumerate(b):
                a[shift + j] = (a[shift + j] - f * cj) % p
        a.pop()
    return _poly_trim(a)


def _poly_gcd(a, b, p):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _is_irreducible(mod, p):
    """Rabin's test for a monic polynomial over GF(p)."""
    m = len(mod) - 1
    if m == 1:
        return True
    x = (0, 1)
    for ell in factorint(m):
        h = _poly_powmod(x, p ** (m // ell), mod, p)
        if len(_poly_gcd(_poly_sub(h, x, p), mod, p)) > 1:
            return False
    h = _poly_powmod(x, p ** m, mod, p)
    return not _poly_sub(h, x, p)


def _is_primitive(mod, p):
    """True iff x generates the multiplicative group modulo the monic `mod`.

    A positive answer certifies irreducibility too: a reducible modulus has a
    unit group of order strictly below p^m - 1.
    """
    m = len(mod) - 1
    group = p ** m - 1
    x = (0, 1)
    if _poly_powmod(x, group, mod, p) != (1,):
        return False
    for ell in factorint(group):
        if _poly_powmod(x, group // ell, mod, p) == (1,):
            return False
    return True


def _smallest_primitive_poly(p, m):
    """Monic primitive polynomial of degree m with the smallest packed value.

    Candidates are ordered by the base-p integer of their coefficient sequence
    (low-to-high digits), which makes the default modulus deterministic.
    """
    for packed in range(p ** m):
        coeffs = []
        v = packed
        for _ in range(m):
            v, rem = divmod(v, p)
            coeffs.append(rem)
        mod = tuple(coeffs) + (1,)
        if mod[0] == 0:
            continue
        if _is_primitive(mod, p):
            return mod
    raise AssertionError("no primitive polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# table construction


def _build_tables_char2(poly, m):
    poly_int = sum(c << i for i, c in enumerate(poly))
    order = 1 << m
    exp = np.empty(order - 1, dtype=np.int64)
    x = 1
    high = order
    mask = order - 1
    for i in range(order - 1):
        exp[i] = x
        x <<= 1
        if x & high:
            x ^= poly_int
            x &= mask
    log = np.full(order, -1, dtype=np.int64)
    log[exp] = np.arange(order - 1)
    zech = log[exp ^ 1]
    return exp, log, zech


def _build_tables_odd(poly, p, m):
    order = p ** m
    exp = np.empty(order - 1, dtype=np.int64)
    coeffs = [0] * m
    coeffs[0] = 1
    pw = [p ** i for i in range(m)]
    for i in range(order - 1):
        exp[i] = sum(c * w for c, w in zip(coeffs, pw))
        lead = coeffs[m - 1]
        coeffs = [0] + coeffs[:-1]
        if lead:
            for j in range(m):
                coeffs[j] = (coeffs[j] - lead * poly[j]) % p
    log = np.full(order, -1, dtype=np.int64)
    log[exp] = np.arange(order - 1)
    # 1 + g^i changes only the constant digit, mod p
    c0 = exp % p
    bumped = exp - c0 + (c0 + 1) % p
    zech = log[bumped]
    return exp, log, zech


def _cache_dir():
    return os.environ.get("STRONGBLOCK_CACHE_DIR")


def _load_or_build_tables(p, m, modulus):
    cache = _cache_dir()
    fname = None
    if cache:
        tag = "gf_%d_%d_%s" % (p, m, "_".join(str(c) for c in modulus))
        fname = os.path.join(cache, tag + ".npz")
        if os.path.exists(fname):
            data = np.load(fname)
            return data["exp"], data["log"], data["zech"]
    if p == 2:
        exp, log, zech = _build_tables_char2(modulus, m)
    else:
        exp, log, zech = _build_tables_odd(modulus, p, m)
    if fname:
        os.makedirs(cache, exist_ok=True)
        np.savez(fname, exp=exp, log=log, zech=zech)
    return exp, log, zech


# ---------------------------------------------------------------------------


class Field:
    """Immutable handle for GF(p^m); safe for concurrent shared reads."""

    def __init__(self, p, m, modulus, exp, log, zech):
        self.p = p
        self.m = m
        self.order = p ** m
        self.group_order = self.order - 1
        self.modulus = tuple(modulus)
        self.exp = exp
        self.log = log
        self.zech = zech
        self.zero = 0
        self.one = 1
        # exponent of -1 is (order-1)/2 in odd characteristic
        self.neg_one = 1 if p == 2 else self.group_order // 2 + 1
        self._coord_maps = {}
        self._subfields = {}

    # -- construction ------------------------------------------------------

    @staticmethod
    def build(p, m, modulus=None, order_cap=DEFAULT_ORDER_CAP):
        """Build GF(p^m) with a verified-primitive modulus.

        Defaults to the primitive polynomial with the smallest packed
        coefficient value, so identical parameters give identical fields.
        """
        if not isprime(p):
            raise NonPrimeP("p = %r is not prime" % (p,))
        if m < 1:
            raise ValueError("extension degree must be positive")
        if p ** m > order_cap:
            raise FieldTooLarge("order %d exceeds cap %d" % (p ** m, order_cap))
        if modulus is not None:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree m")
            if not _is_irreducible(modulus, p):
                raise ReducibleModulus("modulus %r factors over GF(%d)" % (modulus, p))
            if not _is_primitive(modulus, p):
                raise NonPrimitiveModulus(
                    "modulus %r is irreducible but not primitive" % (modulus,))
        key = (p, m, modulus)
        if key in _FIELD_CACHE:
            return _FIELD_CACHE[key]
        mod = modulus if modulus is not None else _smallest_primitive_poly(p, m)
        exp, log, zech = _load_or_build_tables(p, m, mod)
        f = Field(p, m, mod, exp, log, zech)
        _FIELD_CACHE[key] = f
        return f

    # -- element codecs ----------------------------------------------------

    def from_exp(self, i):
        """Code of g^i."""
        return i % self.group_order + 1

    def exp_of(self, c):
        if c == 0:
            raise ZeroDivisionError("zero has no exponent")
        return c - 1

    def from_int(self, v):
        """Code of the element whose polynomial coefficients pack to v."""
        if v == 0:
            return 0
        return int(self.log[v]) + 1

    def elem_str(self, c):
        return "0" if c == 0 else "g^%d" % (c - 1)

    def parse_elem(self, s):
        s = s.strip()
        if s == "0":
            return 0
        if s.startswith("g^"):
            return self.from_exp(int(s[2:]))
        raise ValueError("cannot parse field element %r" % (s,))

    def meta(self):
        """Serializable field description (modulus low-to-high)."""
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    # -- scalar arithmetic -------------------------------------------------

    def add(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        z = self.zech[(b - a) % self.group_order]
        if z < 0:
            return 0
        return (a - 1 + z) % self.group_order + 1

    def neg(self, a):
        return self.mul(a, self.neg_one)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return (a + b - 2) % self.group_order + 1

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverting zero")
        return -(a - 1) % self.group_order + 1

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverting zero")
            return 0 if e else 1
        return (a - 1) * e % self.group_order + 1

    # -- vectorized arithmetic on numpy code arrays ------------------------

    def add_vec(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        d = (b - a) % self.group_order
        z = self.zech[d]
        out = (a - 1 + z) % self.group_order + 1
        out = np.where(z < 0, 0, out)
        out = np.where(a == 0, b, out)
        out = np.where(b == 0, np.where(a == 0, 0, a), out)
        return out

    def mul_vec(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = (a + b - 2) % self.group_order + 1
        return np.where((a == 0) | (b == 0), 0, out)

    def neg_vec(self, a):
        return self.mul_vec(a, np.full_like(np.asarray(a), self.neg_one))

    def inv_vec(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverting zero")
        return -(a - 1) % self.group_order + 1

    # -- subfields ---------------------------------------------------------

    def subfield_stride(self, d):
        """Exponent stride of GF(p^d) inside this field.

        The nonzero subfield elements are exactly the powers g^(j*s); each
        claimed member is verified against the Frobenius fixed-point test.
        """
        if d < 1 or self.m % d != 0:
            raise NotADivisor("%d does not divide %d" % (d, self.m))
        s = self.group_order // (self.p ** d - 1)
        exps = np.arange(self.p ** d - 1, dtype=np.int64) * s
        if np.any((exps * self.p ** d) % self.group_order != exps):
            raise AssertionError("Frobenius test failed for subfield degree %d" % d)
        return s

    def subfield(self, d):
        """Embedded-subfield view GF(p^d), generated by gamma = g^stride.

        Returns a :class:`SubfieldMap` whose `sub` field uses the minimal
        polynomial of gamma as modulus, so small-field exponent j corresponds
        to big-field exponent j*stride.
        """
        if d in self._subfields:
            return self._subfields[d]
        s = self.subfield_stride(d)
        if d == self.m:
            sm = SubfieldMap(self, self, d, 1)
            self._subfields[d] = sm
            return sm
        gamma = self.from_exp(s)
        # minimal polynomial of gamma: product of (x - gamma^(p^t))
        poly = [self.one]  # coefficients in this field, low-to-high
        conj = gamma
        for _ in range(d):
            new = [0] * (len(poly) + 1)
            for i, c in enumerate(poly):
                new[i + 1] = self.add(new[i + 1], c)
                new[i] = self.add(new[i], self.mul(self.neg(conj), c))
            poly = new
            conj = self.pow(conj, self.p)
        coeffs = []
        for c in poly:
            v = 0 if c == 0 else int(self.exp[c - 1])
            if v >= self.p:
                raise AssertionError("minimal polynomial coefficient outside GF(p)")
            coeffs.append(v)
        sub = Field.build(self.p, d, tuple(coeffs))
        sm = SubfieldMap(self, sub, d, s)
        self._subfields[d] = sm
        return sm

    # -- coordinates over a subfield ---------------------------------------

    def coord_map(self, d, basis=None):
        """Coordinate map of this field over its subfield GF(p^d).

        `basis` is a sequence of m/d codes of this field, independent over the
        subfield; defaults to the polynomial basis (1, g, g^2, ...).
        """
        key = (d, tuple(basis) if basis is not None else None)
        if key in self._coord_maps:
            return self._coord_maps[key]
        sm = self.subfield(d)
        e = self.m // d
        if basis is None:
            basis = tuple(self.from_exp(i) if i else self.one for i in range(e))
        else:
            basis = tuple(int(b) for b in basis)
            if len(basis) != e:
                raise DependentBasis("basis must have %d elements" % e)
        cm = CoordinateMap(self, sm, basis)
        self._coord_maps[key] = cm
        return cm

    # -- misc --------------------------------------------------------------

    def digits(self, codes):
        """Polynomial coefficient digits (low-to-high) of an array of codes."""
        codes = np.asarray(codes, dtype=np.int64)
        packed = np.where(codes == 0, 0, self.exp[np.maximum(codes - 1, 0)])
        out = np.empty(codes.shape + (self.m,), dtype=np.int64)
        for i in range(self.m):
            packed, out[..., i] = np.divmod(packed, self.p)
        return out

    def __repr__(self):
        return "Field(GF(%d^%d), modulus=%s)" % (self.p, self.m, list(self.modulus))


@dataclass(frozen=True)
class SubfieldMap:
    """Embedding of a small field into a big one via exponent stride."""

    parent: Field
    sub: Field
    d: int
    stride: int

    def to_parent(self, codes):
        codes = np.asarray(codes, dtype=np.int64)
        return np.where(codes == 0, 0, (codes - 1) * self.stride + 1)

    def from_parent(self, codes):
        codes = np.asarray(codes, dtype=np.int64)
        exps = codes - 1
        if np.any((codes != 0) & (exps % self.stride != 0)):
            raise ValueError("element not in subfield")
        return np.where(codes == 0, 0, exps // self.stride + 1)


def _matrix_inverse_mod_p(mat, p):
    """Inverse of a square integer matrix mod p, or None if singular."""
    n = mat.shape[0]
    a = mat % p
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    for col in range(n):
        pivot = None
        for row in range(col, n):
            if aug[row, col] % p:
                pivot = row
                break
        if pivot is None:
            return None
        if pivot != col:
            aug[[col, pivot]] = aug[[pivot, col]]
        inv = pow(int(aug[col, col]), p - 2, p)
        aug[col] = aug[col] * inv % p
        for row in range(n):
            if row != col and aug[row, col]:
                aug[row] = (aug[row] - aug[row, col] * aug[col]) % p
    return aug[:, n:]


class CoordinateMap:
    """Coordinates of big-field elements over a subfield, for a fixed basis."""

    def __init__(self, parent, sm, basis):
        self.parent = parent
        self.submap = sm
        self.basis = basis
        p, m, d = parent.p, parent.m, sm.d
        e = m // d
        gamma = parent.from_exp(sm.stride)
        # columns (i,t): GF(p)-digits of basis_i * gamma^t
        cols = np.empty((m, m), dtype=np.int64)
        for i in range(e):
            for t in range(d):
                prod = parent.mul(basis[i], parent.pow(int(gamma), t))
                cols[:, i * d + t] = parent.digits(np.array([prod]))[0]
        inv = _matrix_inverse_mod_p(cols, p)
        if inv is None:
            raise DependentBasis("basis %r is dependent over GF(%d^%d)" % (basis, p, d))
        self._inv = inv
        self._e, self._d = e, d
        self._pw = np.array([p ** t for t in range(d)], dtype=np.int64)

    def coords(self, codes):
        """(N, m/d) array of subfield codes with sum(c_i * basis_i) = code."""
        codes = np.atleast_1d(np.asarray(codes, dtype=np.int64))
        dig = self.parent.digits(codes)  # (N, m)
        u = dig @ self._inv.T % self.parent.p  # (N, m), grouped (i, t)
        u = u.reshape(codes.shape[0], self._e, self._d)
        packed = (u * self._pw).sum(axis=2)
        sub = self.submap.sub
        out = np.where(packed == 0, 0, sub.log[packed] + 1)
        return out

    def recompose(self, coords):
        """Inverse of :meth:`coords`; used as the round-trip oracle."""
        coords = np.atleast_2d(np.asarray(coords, dtype=np.int64))
        big = self.submap.to_parent(coords)
        acc = np.zeros(coords.shape[0], dtype=np.int64)
        for i, b in enumerate(self.basis):
            acc = self.parent.add_vec(acc, self.parent.mul_vec(big[:, i], b))
        return acc
