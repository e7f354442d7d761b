"""Small binary fields GF(2^m) with log/antilog tables.

Elements are ints ``0 .. q-1`` read as polynomials in the generator ``g``
over F_2 (bit ``i`` is the coefficient of ``g^i``), so addition is XOR.
The defining polynomials are primitive, hence ``g`` generates the unit group.

Only the inclusions F_2 ⊂ F_4 ⊂ F_16 and F_4 ⊂ F_64 exist; F_16 is not a
subfield of F_64 (4 does not divide 6).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

# bit masks of primitive polynomials, including the leading term
PRIMITIVE = {1: 0b11, 2: 0b111, 4: 0b10011, 6: 0b1000011}


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class Field:
    m: int
    modulus: int
    exp: tuple[int, ...] = field(repr=False)
    log: tuple[int, ...] = field(repr=False)

    @property
    def q(self) -> int:
        return 1 << self.m

    @property
    def order(self) -> int:
        return self.q - 1

    def elements(self) -> range:
        return range(self.q)

    def add(self, x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self.exp[(self.log[x] + self.log[y]) % self.order]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.exp[-self.log[x] % self.order]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, k: int) -> int:
        if k == 0:
            return 1
        if x == 0:
            return 0
        return self.exp[self.log[x] * k % self.order]

    def frob(self, x: int) -> int:
        return self.mul(x, x)

    def sqrt(self, x: int) -> int:
        # squaring is bijective; x^(q/2) is its inverse
        return self.pow(x, self.q // 2)

    def power_of_generator(self, k: int) -> int:
        return self.exp[k % self.order]

    def name(self) -> str:
        return f"F{self.q}"


@lru_cache(maxsize=None)
def gf(m: int) -> Field:
    """GF(2^m) for m in {1, 2, 4, 6}."""
    if m not in PRIMITIVE:
        raise FieldError(f"GF(2^{m}) is not part of the tower")
    poly = PRIMITIVE[m]
    q = 1 << m
    exp = []
    x = 1
    for _ in range(q - 1):
        exp.append(x)
        x <<= 1
        if x & q:
            x ^= poly
    if len(set(exp)) != q - 1:
        raise FieldError(f"modulus {bin(poly)} is not primitive")
    log = [0] * q
    for i, v in enumerate(exp):
        log[v] = i
    return Field(m, poly, tuple(exp), tuple(log))


def by_order(q: int) -> Field:
    m = q.bit_length() - 1
    if 1 << m != q:
        raise FieldError(f"{q} is not a power of 2")
    return gf(m)


F2, F4, F16, F64 = gf(1), gf(2), gf(4), gf(6)


@lru_cache(maxsize=None)
def embedding(small: Field, big: Field) -> tuple[int, ...]:
    """Images of the elements of ``small`` in ``big`` (a ring homomorphism).

    The generator of ``small`` goes to ``h^((|big|-1)/(|small|-1))`` for the
    generator ``h`` of ``big``; this element satisfies the minimal
    polynomial of the small generator, which is checked.
    """
    if big.m % small.m:
        raise FieldError(f"{small.name()} is not a subfield of {big.name()}")
    if small.m == 1:
        return (0, 1)
    k = big.order // small.order
    img = [0] * small.q
    for i in range(small.order):
        img[small.exp[i]] = big.power_of_generator(i * k)
    # the minimal polynomial of g over F_2 must vanish at the image
    root = img[2]
    acc = 0
    for bit in range(small.m + 1):
        if small.modulus >> bit & 1:
            acc ^= big.pow(root, bit)
    if acc:
        raise FieldError("embedding does not respect the defining polynomial")
    return tuple(img)


def subfield_elements(small: Field, big: Field) -> frozenset[int]:
    return frozenset(embedding(small, big))


def is_homomorphism(small: Field, big: Field) -> bool:
    e = embedding(small, big)
    return all(e[small.mul(x, y)] == big.mul(e[x], e[y]) and e[x ^ y] == e[x] ^ e[y]
               for x in small.elements() for y in small.elements())
