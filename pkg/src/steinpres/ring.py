"""Commutative rings used as coefficient rings for the presentations.

Three kinds are supported:

* ``Z/n``
* ``GF(p^k)`` given by an irreducible polynomial over ``F_p``
* the symbolic Laurent ring ``Z[r^{+-1}; t, u]`` (unit variables may carry
  negative exponents, polynomial variables may not)

Every ring value has a unique canonical, hashable representative so that
generator symbols ``X_i(t)`` can be compared and sorted.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


class InvalidDescriptor(ValueError):
    pass


class InfiniteRing(ValueError):
    pass


class WrongCharacteristic(ValueError):
    pass


class NotAUnit(ArithmeticError):
    pass


@dataclass(frozen=True)
class RingDescriptor:
    """kind is "zmod", "gf" or "laurent".

    zmod:    n
    gf:      p, modulus (monic coefficients, low degree first)
    laurent: unit_vars, poly_vars
    """

    kind: str
    n: int = 0
    p: int = 0
    modulus: tuple[int, ...] = ()
    unit_vars: tuple[str, ...] = ()
    poly_vars: tuple[str, ...] = ()

    def text(self) -> str:
        if self.kind == "zmod":
            return f"z/{self.n}"
        if self.kind == "gf":
            k = len(self.modulus) - 1
            if k == 1:
                return f"gf{self.p}"
            return f"gf{self.p ** k}={_poly_text(self.modulus, 'x')}"
        return f"laurent({','.join(self.unit_vars)};{','.join(self.poly_vars)})"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _prime_power(q: int) -> tuple[int, int] | None:
    for p in range(2, q + 1):
        if q % p == 0:
            if not _is_prime(p):
                return None
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return None


# ---------------------------------------------------------------------------
# polynomials over F_p, coefficient tuples low degree first


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a: list[int], m: tuple[int, ...], p: int) -> list[int]:
    a = [x % p for x in a]
    _trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mc) % p
        _trim(a)
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Brute-force factor search: no monic factor of degree 1..k/2."""
    k = len(modulus) - 1
    if k < 1 or modulus[-1] % p == 0:
        return False
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            cand = tuple(low) + (1,)
            if not _poly_mod(list(modulus), cand, p):
                return False
    return True


def first_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible polynomial of degree k."""
    for low in itertools.product(range(p), repeat=k):
        cand = tuple(reversed(low)) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise InvalidDescriptor(f"no irreducible polynomial of degree {k} over F_{p}")


def _poly_text(c, var: str) -> str:
    terms = []
    for d in range(len(c) - 1, -1, -1):
        a = c[d]
        if a == 0:
            continue
        if d == 0:
            terms.append(str(a))
        else:
            mono = var if d == 1 else f"{var}^{d}"
            terms.append(mono if a == 1 else f"{a}*{mono}")
    return "+".join(terms) if terms else "0"


# ---------------------------------------------------------------------------


class Ring:
    """Common interface. Values are canonical hashable objects."""

    descriptor: RingDescriptor
    is_finite: bool = True
    characteristic: int = 0

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def fmt(self, a) -> str:
        return str(a)

    def sort_key(self, a):
        return a

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def pow(self, a, e: int):
        if e < 0:
            a = self.inv(a)
            e = -e
        out = self.one()
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def elements(self) -> list:
        raise InfiniteRing(f"{self.name} is infinite")

    def units(self) -> list:
        """Invertible elements in canonical order."""
        return [a for a in self.elements() if self.is_unit(a)]

    @property
    def name(self) -> str:
        return self.descriptor.text()

    @property
    def order(self) -> int:
        raise InfiniteRing(f"{self.name} is infinite")

    def __repr__(self):
        return f"<ring {self.name}>"

    def __eq__(self, other):
        return isinstance(other, Ring) and other.descriptor == self.descriptor

    def __hash__(self):
        return hash(self.descriptor)


class ZmodN(Ring):
    def __init__(self, n: int):
        if n < 2:
            raise InvalidDescriptor(f"Z/n needs n >= 2, got {n}")
        self.n = n
        self.characteristic = n
        self.descriptor = RingDescriptor("zmod", n=n)

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def from_int(self, n):
        return n % self.n

    def is_unit(self, a):
        from math import gcd

        return gcd(a, self.n) == 1

    def inv(self, a):
        if not self.is_unit(a):
            raise NotAUnit(f"{a} is not a unit of Z/{self.n}")
        return pow(a, -1, self.n)

    def elements(self):
        return list(range(self.n))

    @property
    def order(self):
        return self.n

    def linear_embedding(self):
        return self.n, 1, lambda a: np.array([[a]], dtype=np.int64)


class GaloisField(Ring):
    """GF(p^k) = F_p[x]/(modulus). Values are ints: sum c_i p^i."""

    def __init__(self, p: int, modulus: tuple[int, ...]):
        if not _is_prime(p):
            raise InvalidDescriptor(f"{p} is not prime")
        modulus = tuple(c % p for c in modulus)
        if not modulus or modulus[-1] != 1:
            raise InvalidDescriptor("modulus must be monic")
        if not is_irreducible(modulus, p):
            raise InvalidDescriptor(f"{_poly_text(modulus, 'x')} is reducible over F_{p}")
        self.p = p
        self.k = len(modulus) - 1
        self.q = p**self.k
        self.modulus = modulus
        self.characteristic = p
        self.descriptor = RingDescriptor("gf", p=p, modulus=modulus)
        self._mul = lru_cache(maxsize=None)(self._mul_raw)

    def _coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, c) -> int:
        v = 0
        for x in reversed(list(c) + [0] * (self.k - len(c))):
            v = v * self.p + x % self.p
        return v

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        ca, cb = self._coeffs(a), self._coeffs(b)
        return self._encode([x + y for x, y in zip(ca, cb)])

    def neg(self, a):
        return self._encode([-x for x in self._coeffs(a)])

    def _mul_raw(self, a, b):
        prod = _poly_mul(_trim(self._coeffs(a)), _trim(self._coeffs(b)), self.p)
        return self._encode(_poly_mod(prod, self.modulus, self.p))

    def mul(self, a, b):
        if a > b:
            a, b = b, a
        return self._mul(a, b)

    def from_int(self, n):
        return n % self.p

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise NotAUnit("0 is not invertible")
        return self.pow(a, self.q - 2)

    def elements(self):
        return list(range(self.q))

    @property
    def order(self):
        return self.q

    def gen(self):
        """The class of x."""
        return self._encode([0, 1]) if self.k > 1 else 0

    def fmt(self, a):
        if self.k == 1:
            return str(a)
        return _poly_text(self._coeffs(a), "x")

    def linear_embedding(self):
        """Regular representation GF(p^k) -> M_k(F_p) (multiplication matrices)."""
        basis = [self._encode([0] * i + [1]) for i in range(self.k)]

        @lru_cache(maxsize=None)
        def embed(a):
            m = np.zeros((self.k, self.k), dtype=np.int64)
            for j, b in enumerate(basis):
                m[:, j] = self._coeffs(self.mul(a, b))
            return m

        return self.p, self.k, embed


class LaurentRing(Ring):
    """Z[unit vars^{+-1}; poly vars].

    Values are tuples of (exponent tuple, coefficient) sorted by exponent,
    with no zero coefficients.
    """

    is_finite = False

    def __init__(self, unit_vars=("r",), poly_vars=("t", "u")):
        names = tuple(unit_vars) + tuple(poly_vars)
        if len(set(names)) != len(names) or not all(re.fullmatch(r"[a-z]\w*", v) for v in names):
            raise InvalidDescriptor(f"bad variable names {names}")
        self.unit_vars = tuple(unit_vars)
        self.poly_vars = tuple(poly_vars)
        self.vars = names
        self.nunit = len(self.unit_vars)
        self.descriptor = RingDescriptor("laurent", unit_vars=self.unit_vars, poly_vars=self.poly_vars)
        self._zero_exp = (0,) * len(names)

    def _norm(self, d: dict):
        return tuple(sorted((e, c) for e, c in d.items() if c))

    def zero(self):
        return ()

    def one(self):
        return ((self._zero_exp, 1),)

    def var(self, name: str):
        i = self.vars.index(name)
        e = [0] * len(self.vars)
        e[i] = 1
        return ((tuple(e), 1),)

    def from_int(self, n):
        return ((self._zero_exp, n),) if n else ()

    def add(self, a, b):
        d = dict(a)
        for e, c in b:
            d[e] = d.get(e, 0) + c
        return self._norm(d)

    def neg(self, a):
        return tuple((e, -c) for e, c in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        d: dict = {}
        for e1, c1 in a:
            for e2, c2 in b:
                e = tuple(x + y for x, y in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return self._norm(d)

    def scale(self, a, n: int):
        if n == 0:
            return ()
        return tuple((e, c * n) for e, c in a)

    def is_unit(self, a):
        if len(a) != 1:
            return False
        e, c = a[0]
        return c in (1, -1) and all(x == 0 for x in e[self.nunit:])

    def inv(self, a):
        if not self.is_unit(a):
            raise NotAUnit(f"{self.fmt(a)} is not a unit")
        e, c = a[0]
        return ((tuple(-x for x in e), c),)

    def fmt(self, a):
        if not a:
            return "0"
        parts = []
        for e, c in reversed(a):
            mono = "*".join(v if x == 1 else f"{v}^{x}" for v, x in zip(self.vars, e) if x)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return "+".join(parts).replace("+-", "-")


def make_ring(d: RingDescriptor) -> Ring:
    if d.kind == "zmod":
        return ZmodN(d.n)
    if d.kind == "gf":
        return GaloisField(d.p, d.modulus)
    if d.kind == "laurent":
        return LaurentRing(d.unit_vars, d.poly_vars)
    raise InvalidDescriptor(f"unknown ring kind {d.kind!r}")


_POLY_TERM = re.compile(r"^(?:(\d+)\*?)?(x(?:\^(\d+))?)?$")


def _parse_poly(text: str, p: int) -> tuple[int, ...]:
    coeffs: dict[int, int] = {}
    for term in text.replace(" ", "").replace("-", "+-").split("+"):
        if not term:
            continue
        sign = 1
        if term.startswith("-"):
            sign, term = -1, term[1:]
        m = _POLY_TERM.match(term)
        if not m or not (m.group(1) or m.group(2)):
            raise InvalidDescriptor(f"bad polynomial term {term!r}")
        c = int(m.group(1)) if m.group(1) else 1
        deg = 0 if not m.group(2) else int(m.group(3) or 1)
        coeffs[deg] = coeffs.get(deg, 0) + sign * c
    k = max(coeffs)
    return tuple(coeffs.get(i, 0) % p for i in range(k + 1))


def parse_ring(text: str) -> RingDescriptor:
    """Ring DSL: z/4, gf2, gf8=x^3+x+1, laurent(r;t,u).

    gf<q> without a polynomial picks the lexicographically first monic
    irreducible polynomial of the right degree.
    """
    s = text.strip().lower().replace(" ", "")
    m = re.fullmatch(r"z/(\d+)", s)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise InvalidDescriptor(f"Z/n needs n >= 2: {text!r}")
        return RingDescriptor("zmod", n=n)
    m = re.fullmatch(r"gf(\d+)(?:=(.+))?", s)
    if m:
        q = int(m.group(1))
        pk = _prime_power(q)
        if pk is None:
            raise InvalidDescriptor(f"{q} is not a prime power")
        p, k = pk
        if m.group(2):
            modulus = _parse_poly(m.group(2), p)
            if len(modulus) - 1 != k:
                raise InvalidDescriptor(f"polynomial degree {len(modulus) - 1} does not match q = {q}")
        elif k == 1:
            modulus = (0, 1)
        else:
            modulus = first_irreducible(p, k)
        if not is_irreducible(modulus, p):
            raise InvalidDescriptor(f"{_poly_text(modulus, 'x')} is reducible over F_{p}")
        return RingDescriptor("gf", p=p, modulus=modulus)
    m = re.fullmatch(r"laurent\(([\w,]*);([\w,]*)\)", s)
    if m:
        uv = tuple(v for v in m.group(1).split(",") if v)
        pv = tuple(v for v in m.group(2).split(",") if v)
        LaurentRing(uv, pv)  # validates names
        return RingDescriptor("laurent", unit_vars=uv, poly_vars=pv)
    raise InvalidDescriptor(f"cannot parse ring {text!r}")


def ring_from_text(text: str) -> Ring:
    return make_ring(parse_ring(text))


def units(R: Ring) -> list:
    if not R.is_finite:
        raise InfiniteRing(f"{R.name} is infinite")
    return R.units()


def _additive_span(R: Ring, gens) -> set:
    """Additive subgroup generated by gens (finite R)."""
    span = {R.zero()}
    frontier = [R.zero()]
    gens = [g for g in set(gens) if g != R.zero()]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = R.add(a, g)
                if b not in span:
                    span.add(b)
                    nxt.append(b)
        frontier = nxt
    return span


def ideal(R: Ring, gens) -> set:
    """Ideal generated by gens: additive span of all products r*g, saturated."""
    elems = R.elements()
    current = _additive_span(R, gens)
    while True:
        prods = {R.mul(r, g) for r in elems for g in current}
        nxt = _additive_span(R, prods | current)
        if nxt == current:
            return current
        current = nxt


def has_tiny_quotient(R: Ring, q: int) -> bool:
    """True iff R surjects onto F_q, q in {2, 3}."""
    if q not in (2, 3):
        raise ValueError("q must be 2 or 3")
    if not R.is_finite:
        raise InfiniteRing(f"{R.name} is infinite")
    gens = {R.from_int(q)}
    for x in R.elements():
        gens.add(R.sub(R.pow(x, q), x))
    return R.one() not in ideal(R, gens)


def frobenius_sqrt(R: Ring, v):
    """The unique w with w^p = v in a finite field of characteristic 2 or 3."""
    if not isinstance(R, GaloisField) or R.p not in (2, 3):
        raise WrongCharacteristic(f"{R.name} is not a finite field of characteristic 2 or 3")
    return R.pow(v, R.q // R.p)
