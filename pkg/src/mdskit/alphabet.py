"""
Finite abelian-group alphabets with symbols encoded as dense indices 0..q-1.

Three kinds are supported:

* ``cyclic(q)``            -- Z_q, index = residue.
* ``product(q1, q2, ...)`` -- Z_q1 x Z_q2 x ..., mixed radix with the first
  factor least significant.
* ``field(p, m, poly)``    -- GF(p^m), index = sum c_i p^i for the polynomial
  basis 1, x, ..., x^(m-1) modulo ``poly``.

The symbol 0 is the additive identity for every kind.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product as iproduct
from typing import Sequence


class AlphabetError(ValueError):
    """Invalid alphabet specification or out-of-range symbol."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, m) with q = p**m, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while q % p:
        p += 1
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    return (p, m) if r == 1 else None


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient lists low degree first

def _poly_mod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = list(a)
    df = len(f) - 1
    lead_inv = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] % p
        if c:
            c = c * lead_inv % p
            shift = len(a) - 1 - df
            for i, fi in enumerate(f):
                a[shift + i] = (a[shift + i] - c * fi) % p
        a.pop()
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = [c % p for c in poly]
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    m = len(poly) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    for deg in range(1, m // 2 + 1):
        for low in iproduct(range(p), repeat=deg):
            g = list(low) + [1]
            rem = _poly_mod(poly, g, p)
            if not any(rem):
                return False
    return True


@lru_cache(maxsize=None)
def default_polynomial(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree m, ordered by sum c_i p^i.

    Gives x^2+x+1 for GF(4), x^3+x+1 for GF(8), x^4+x+1 for GF(16),
    x^2+1 for GF(9).
    """
    if m == 1:
        return (0, 1)
    for idx in range(p ** m):
        low = [(idx // p ** i) % p for i in range(m)]
        if low[0] == 0:
            continue
        cand = tuple(low) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise AlphabetError(f"no irreducible polynomial of degree {m} over GF({p})")


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlphabetSpec:
    """Declarative description of an alphabet.

    ``kind`` is ``"cyclic"``, ``"product"`` or ``"field"``.  ``orders`` holds
    the cyclic factor orders (one entry for cyclic), ``p``/``m``/``poly``
    describe a field; ``poly`` is a coefficient tuple c0..cm, or None for the
    default table.
    """

    kind: str
    orders: tuple[int, ...] = ()
    p: int = 0
    m: int = 0
    poly: tuple[int, ...] | None = None

    @classmethod
    def cyclic(cls, q: int) -> "AlphabetSpec":
        return cls("cyclic", (q,))

    @classmethod
    def product(cls, *orders: int) -> "AlphabetSpec":
        return cls("product", tuple(orders))

    @classmethod
    def field(cls, p: int, m: int = 1, poly: Sequence[int] | None = None) -> "AlphabetSpec":
        return cls("field", (), p, m, tuple(poly) if poly is not None else None)

    @property
    def order(self) -> int:
        if self.kind == "field":
            return self.p ** self.m
        q = 1
        for o in self.orders:
            q *= o
        return q

    def __str__(self) -> str:
        return format_alphabet_spec(self)


_FIELD_RE = re.compile(r"^(\d+)(?:\^(\d+))?(?::poly=([\d,\s]+))?$")


def parse_alphabet_spec(text: str) -> AlphabetSpec:
    """Parse ``cyclic:<q>``, ``product:<q1>x<q2>x...`` or
    ``field:<p>^<m>[:poly=<c0,...,cm>]``."""
    text = text.strip()
    kind, sep, rest = text.partition(":")
    if not sep:
        raise AlphabetError(f"malformed alphabet spec {text!r}")
    kind = kind.strip().lower()
    try:
        if kind == "cyclic":
            return AlphabetSpec.cyclic(int(rest))
        if kind == "product":
            return AlphabetSpec.product(*(int(x) for x in rest.lower().split("x")))
        if kind == "field":
            mt = _FIELD_RE.match(rest.strip())
            if not mt:
                raise AlphabetError(f"malformed field spec {text!r}")
            p = int(mt.group(1))
            m = int(mt.group(2)) if mt.group(2) else 1
            poly = None
            if mt.group(3):
                poly = tuple(int(c) for c in mt.group(3).split(","))
            return AlphabetSpec.field(p, m, poly)
    except ValueError as exc:
        if isinstance(exc, AlphabetError):
            raise
        raise AlphabetError(f"malformed alphabet spec {text!r}") from exc
    raise AlphabetError(f"unknown alphabet kind {kind!r}")


def format_alphabet_spec(spec: AlphabetSpec) -> str:
    if spec.kind == "cyclic":
        return f"cyclic:{spec.orders[0]}"
    if spec.kind == "product":
        return "product:" + "x".join(str(o) for o in spec.orders)
    s = f"field:{spec.p}^{spec.m}"
    if spec.poly is not None:
        s += ":poly=" + ",".join(str(c) for c in spec.poly)
    return s


def default_alphabet_spec(q: int, field: bool = False) -> AlphabetSpec:
    """GF(q) when ``field`` is set (q must be a prime power), else Z_q."""
    if field:
        pm = prime_power(q)
        if pm is None:
            raise AlphabetError(f"q={q} is not a prime power; no field of that order")
        return AlphabetSpec.field(*pm)
    return AlphabetSpec.cyclic(q)


# ---------------------------------------------------------------------------

class Alphabet:
    """An immutable abelian group on 0..q-1, optionally a field."""

    def __init__(self, spec: AlphabetSpec):
        self.spec = spec
        if spec.kind in ("cyclic", "product"):
            if not spec.orders or any(o < 2 for o in spec.orders):
                raise AlphabetError(f"group factor orders must be >= 2, got {spec.orders}")
            if spec.kind == "cyclic" and len(spec.orders) != 1:
                raise AlphabetError("cyclic alphabet takes exactly one order")
            self.radices = tuple(spec.orders)
            self.poly = None
        elif spec.kind == "field":
            if not is_prime(spec.p):
                raise AlphabetError(f"field characteristic {spec.p} is not prime")
            if spec.m < 1:
                raise AlphabetError(f"field degree must be >= 1, got {spec.m}")
            poly = spec.poly if spec.poly is not None else default_polynomial(spec.p, spec.m)
            poly = tuple(c % spec.p for c in poly)
            if len(poly) != spec.m + 1 or poly[-1] == 0:
                raise AlphabetError(f"polynomial {poly} does not have degree {spec.m}")
            if spec.m > 1 and not is_irreducible(poly, spec.p):
                raise AlphabetError(f"polynomial {poly} is reducible over GF({spec.p})")
            self.radices = (spec.p,) * spec.m
            self.poly = poly
        else:
            raise AlphabetError(f"unknown alphabet kind {spec.kind!r}")
        self.q = spec.order
        if self.q < 2:
            raise AlphabetError("alphabet order must be >= 2")
        self.is_field = spec.kind == "field"
        self._xor = self.is_field and spec.p == 2
        if self.is_field:
            self._build_log_tables()

    @classmethod
    def from_string(cls, text: str) -> "Alphabet":
        return cls(parse_alphabet_spec(text))

    def __repr__(self) -> str:
        return f"Alphabet({format_alphabet_spec(self.spec)!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.spec_string == other.spec_string

    def __hash__(self) -> int:
        return hash(self.spec_string)

    @property
    def spec_string(self) -> str:
        # normalise the default polynomial so equal alphabets compare equal
        spec = self.spec
        if self.is_field and spec.poly is None:
            spec = AlphabetSpec.field(spec.p, spec.m, self.poly)
        return format_alphabet_spec(spec)

    # mixed-radix digits ---------------------------------------------------

    def digits(self, a: int) -> tuple[int, ...]:
        self._check(a)
        out = []
        for r in self.radices:
            out.append(a % r)
            a //= r
        return tuple(out)

    def from_digits(self, ds: Sequence[int]) -> int:
        a, mult = 0, 1
        for d, r in zip(ds, self.radices):
            a += (d % r) * mult
            mult *= r
        return a

    def _digits_add(self, a: int, b: int) -> int:
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def _digits_neg(self, a: int) -> int:
        return self.from_digits([-x for x in self.digits(a)])

    def _check(self, a) -> None:
        if not (0 <= a < self.q):
            raise AlphabetError(f"symbol {a} out of range for q={self.q}")

    # group ------------------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if self.spec.kind == "cyclic":
            return (a + b) % self.q
        if self._xor:
            return a ^ b
        return self._digits_add(a, b)

    def neg(self, a: int) -> int:
        self._check(a)
        if self.spec.kind == "cyclic":
            return -a % self.q
        if self._xor:
            return a
        return self._digits_neg(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    @cached_property
    def add_table(self) -> list[list[int]]:
        return [[self.add(a, b) for b in range(self.q)] for a in range(self.q)]

    @cached_property
    def neg_table(self) -> list[int]:
        return [self.neg(a) for a in range(self.q)]

    # field ------------------------------------------------------------------

    def _poly_mul(self, a: int, b: int) -> int:
        p, m = self.spec.p, self.spec.m
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        red = _poly_mod(prod, self.poly, p) if m > 1 else [prod[0] % p]
        return self.from_digits((red + [0] * m)[:m])

    def _build_log_tables(self) -> None:
        q = self.q
        for g in range(2, q) if q > 2 else [1]:
            exp = [1]
            x = g
            while x != 1 and len(exp) < q:
                exp.append(x)
                x = self._poly_mul(x, g)
            if len(exp) == q - 1 and x == 1:
                break
        else:
            raise AlphabetError(f"no primitive element; modulus {self.poly} not irreducible")
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        self._exp = exp
        self._log = log
        self.primitive = exp[1] if q > 2 else 1

    def _need_field(self) -> None:
        if not self.is_field:
            raise AlphabetError(f"{self!r} is not a field")

    def mul(self, a: int, b: int) -> int:
        self._need_field()
        self._check(a)
        self._check(b)
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        self._need_field()
        self._check(a)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[-self._log[a] % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    @cached_property
    def mul_table(self) -> list[list[int]]:
        self._need_field()
        return [[self.mul(a, b) for b in range(self.q)] for a in range(self.q)]
