r"""
Arithmetic of levels and roots of unity.

A root of unity of level ``N`` is always stored as an exponent residue
``m`` mod ``N`` with respect to a fixed primitive root ``zeta_N``; no
algebraic numbers are ever formed.  Multiplication of roots is addition
of exponents, division is subtraction, and the Galois group acts by
multiplying exponents by units.

For the special levels ``N = q p^M`` with ``p in {2, 3}`` and ``q = 6 - p``
this module also provides the set ``nu_N = {zeta^m : m = 1 mod q}``, the
valuation, the subgroups ``U(n) = mu_{p^n}`` of ``mu_{N/q}``, the sets
``Lambda_c(x)`` and the Galois group ``Gal(Q(zeta_N)/Q(zeta_q))``.

EXAMPLES::

    >>> lv = make_level(9)
    >>> lv.phi, lv.nu_count, lv.special_form
    (6, 1, (3, 3, 1))
    >>> [e.exponent for e in nu_elements(lv)]
    [1, 4, 7]
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional


def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Trial-division factorization, sorted by prime."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def p_adic_order(m: int, p: int) -> int:
    if m == 0:
        raise ValueError("order of 0 is infinite")
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def _special_form(n: int) -> Optional[tuple[int, int, int]]:
    for p, q in ((2, 4), (3, 3)):
        if n % q:
            continue
        rest, m = n // q, 0
        while rest % p == 0:
            rest //= p
            m += 1
        if rest == 1:
            return (p, q, m)
    return None


@dataclass(frozen=True)
class Level:
    """A level ``N`` together with the arithmetic data used everywhere else.

    ``special_form`` is ``(p, q, M)`` when ``N = q * p**M`` with
    ``p in (2, 3)`` and ``q = 6 - p``, and ``None`` otherwise.
    """

    N: int
    factorization: tuple[tuple[int, int], ...]
    phi: int
    nu_count: int
    special_form: Optional[tuple[int, int, int]] = None

    @property
    def is_special(self) -> bool:
        return self.special_form is not None

    @property
    def p(self) -> int:
        return self._special()[0]

    @property
    def q(self) -> int:
        return self._special()[1]

    @property
    def M(self) -> int:
        return self._special()[2]

    def _special(self):
        if self.special_form is None:
            raise ValueError(
                f"level N={self.N} is not of the form q*p^M with p in {{2,3}}, q=6-p"
            )
        return self.special_form

    def root(self, m: int) -> "UnityRoot":
        return UnityRoot(m % self.N, self.N)


@lru_cache(maxsize=None)
def make_level(N: int) -> Level:
    """Build the :class:`Level` for ``N``; rejects ``N < 1``."""
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"level must be a positive integer, got {N!r}")
    fac = factorize(N) if N > 1 else ()
    phi = 1
    for p, e in fac:
        phi *= p ** (e - 1) * (p - 1)
    return Level(N, fac, phi, len(fac), _special_form(N))


def require_special(lv: Level) -> tuple[int, int, int]:
    return lv._special()


@dataclass(frozen=True, order=True)
class UnityRoot:
    """``zeta_N ** exponent``; the group law is addition of exponents mod N."""

    exponent: int
    N: int = field(compare=False)

    def __post_init__(self):
        if not 0 <= self.exponent < self.N:
            object.__setattr__(self, "exponent", self.exponent % self.N)

    def __mul__(self, other: "UnityRoot") -> "UnityRoot":
        _check_same(self, other)
        return UnityRoot((self.exponent + other.exponent) % self.N, self.N)

    def __truediv__(self, other: "UnityRoot") -> "UnityRoot":
        _check_same(self, other)
        return UnityRoot((self.exponent - other.exponent) % self.N, self.N)

    def __pow__(self, k: int) -> "UnityRoot":
        return UnityRoot((self.exponent * k) % self.N, self.N)

    def inverse(self) -> "UnityRoot":
        return UnityRoot((-self.exponent) % self.N, self.N)

    @property
    def is_one(self) -> bool:
        return self.exponent == 0

    def order(self) -> int:
        return self.N // gcd(self.exponent, self.N)

    def __repr__(self):
        return f"zeta_{self.N}^{self.exponent}"


def _check_same(a: UnityRoot, b: UnityRoot):
    if a.N != b.N:
        raise ValueError(f"roots of unity of different levels {a.N} and {b.N}")


def as_exponent(lv: Level, x) -> int:
    """Accept a :class:`UnityRoot` or a bare exponent and return the residue."""
    if isinstance(x, UnityRoot):
        if x.N != lv.N:
            raise ValueError(f"root of level {x.N} used at level {lv.N}")
        return x.exponent
    return int(x) % lv.N


def valuation(lv: Level, x) -> int:
    """p-adic order of the exponent of ``x != 1``.

    >>> valuation(make_level(27), 9)
    2
    >>> valuation(make_level(8), 6)
    1
    """
    p, _, _ = require_special(lv)
    m = as_exponent(lv, x)
    if m == 0:
        raise ValueError("valuation of 1 is undefined")
    return p_adic_order(m, p)


def nu_exponents(lv: Level) -> list[int]:
    _, q, _ = require_special(lv)
    return list(range(1, lv.N, q))


def nu_elements(lv: Level) -> list[UnityRoot]:
    """``nu_N`` in ascending exponent order (``N/q`` elements)."""
    return [lv.root(m) for m in nu_exponents(lv)]


def small_roots_exponents(lv: Level) -> list[int]:
    """Exponents of ``mu_{N/q}``, i.e. the multiples of ``q``."""
    _, q, _ = require_special(lv)
    return list(range(0, lv.N, q))


def in_small_roots(lv: Level, x) -> bool:
    _, q, _ = require_special(lv)
    return as_exponent(lv, x) % q == 0


def subgroup_U(lv: Level, n: int) -> list[UnityRoot]:
    """``U(n) = mu_{p^n}`` inside ``mu_N`` for ``0 <= n <= M``."""
    p, _, M = require_special(lv)
    if not 0 <= n <= M:
        raise ValueError(f"n must lie in [0, {M}], got {n}")
    step = lv.N // p**n
    return [lv.root(step * i) for i in range(p**n)]


def lambda_exponents(lv: Level, c: int, x) -> list[int]:
    p, _, _ = require_special(lv)
    if c not in (1, -1):
        raise ValueError("c must be +1 or -1")
    m = as_exponent(lv, x)
    if m == 0:
        raise ValueError("Lambda_c(1) is undefined")
    k = c * p ** p_adic_order(m, p)
    return [e for e in nu_exponents(lv) if (e * k - m) % lv.N == 0]


def lambda_set(lv: Level, c: int, x) -> list[UnityRoot]:
    """``{eps in nu_N : eps^(c p^v(x)) = x}`` for ``x != 1``.

    Defined on all of ``mu_N`` minus 1, which the explicit inverse of
    ``W -> Y`` needs; callers working mod p only pass ``x`` in ``mu_{N/q}``.

    >>> [e.exponent for e in lambda_set(make_level(9), 1, 3)]
    [1, 4, 7]
    >>> lambda_set(make_level(9), -1, 3)
    []
    """
    return [lv.root(e) for e in lambda_exponents(lv, c, x)]


# --- Galois group ------------------------------------------------------------


@dataclass(frozen=True, order=True)
class GaloisElement:
    """``sigma_a : zeta^m -> zeta^(a m)`` with ``a = 1 mod q``."""

    unit: int
    N: int = field(compare=False)

    def __call__(self, x):
        if isinstance(x, UnityRoot):
            return UnityRoot((self.unit * x.exponent) % self.N, self.N)
        return (self.unit * x) % self.N

    def __mul__(self, other: "GaloisElement") -> "GaloisElement":
        return GaloisElement((self.unit * other.unit) % self.N, self.N)

    def inverse(self) -> "GaloisElement":
        return GaloisElement(pow(self.unit, -1, self.N), self.N)

    def order(self) -> int:
        k, a = 1, self.unit
        while a % self.N != 1 % self.N:
            a = a * self.unit % self.N
            k += 1
        return k

    def __repr__(self):
        return f"sigma_{self.unit}"


def galois_group(lv: Level) -> list[GaloisElement]:
    """``Gal(Q(zeta_N)/Q(zeta_q))`` as the units ``a = 1 mod q``, ascending."""
    _, q, _ = require_special(lv)
    N = lv.N
    return [GaloisElement(a % N, N) for a in range(1, N + 1, q) if gcd(a, N) == 1]


def galois_subgroup(lv: Level, n: int) -> list[GaloisElement]:
    """The unique subgroup of order ``p^n`` (the group is cyclic of order ``p^M``)."""
    p, _, M = require_special(lv)
    if not 0 <= n <= M:
        raise ValueError(f"n must lie in [0, {M}], got {n}")
    return [g for g in galois_group(lv) if (p**n) % g.order() == 0]


class GroupAlgebraElement:
    """Finitely supported ``G -> scalars`` with convolution product."""

    def __init__(self, coeffs: dict | None = None):
        self.coeffs = {g: c for g, c in (coeffs or {}).items() if c}

    @classmethod
    def basis(cls, g: GaloisElement, one=1):
        return cls({g: one})

    def __add__(self, other):
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) + c
        return GroupAlgebraElement(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return GroupAlgebraElement({g: c * v for g, v in self.coeffs.items()})

    def __mul__(self, other):
        out: dict = {}
        for g, a in self.coeffs.items():
            for h, b in other.coeffs.items():
                gh = g * h
                out[gh] = out.get(gh, 0) + a * b
        return GroupAlgebraElement(out)

    def augmentation(self):
        return sum(self.coeffs.values(), 0)

    def act(self, x) -> dict:
        """Linear action on a root of unity; returns ``{exponent: coefficient}``."""
        out: dict = {}
        for g, c in self.coeffs.items():
            y = g(x)
            key = y.exponent if isinstance(y, UnityRoot) else y
            out[key] = out.get(key, 0) + c
        return {k: v for k, v in out.items() if v}

    def __eq__(self, other):
        return isinstance(other, GroupAlgebraElement) and self.coeffs == other.coeffs

    def __repr__(self):
        return " + ".join(f"{c}*{g!r}" for g, c in sorted(self.coeffs.items())) or "0"


# --- unit group (Z/N)^x, used for character decompositions -------------------


@dataclass(frozen=True)
class UnitGroup:
    """``(Z/N)^x`` written as a product of cyclic groups.

    ``gens[i]`` has order ``orders[i]``; ``log[a]`` is the exponent vector of
    the unit ``a``.  ``exponent`` is the lcm of the orders.
    """

    N: int
    gens: tuple[int, ...]
    orders: tuple[int, ...]
    elements: tuple[int, ...]
    log: dict
    exponent: int

    @property
    def order(self) -> int:
        return len(self.elements)


def _primitive_root_prime_power(p: int, e: int) -> int:
    pe = p**e
    phi = pe // p * (p - 1)
    primes = [r for r, _ in factorize(phi)] if phi > 1 else []
    for g in range(2, pe):
        if gcd(g, p) != 1:
            continue
        if all(pow(g, phi // r, pe) != 1 for r in primes):
            return g
    return 1


def _crt_lift(residue: int, modulus: int, N: int) -> int:
    """Unit mod N that is ``residue`` mod ``modulus`` and 1 mod ``N/modulus``."""
    other = N // modulus
    # modulus and other are coprime
    inv = pow(modulus, -1, other) if other > 1 else 0
    x = residue + modulus * (((1 - residue) * inv) % other) if other > 1 else residue
    return x % N


@lru_cache(maxsize=None)
def unit_group(N: int) -> UnitGroup:
    gens: list[int] = []
    orders: list[int] = []
    for p, e in (factorize(N) if N > 1 else ()):
        pe = p**e
        if p == 2:
            if e == 1:
                continue
            if e == 2:
                local = [(3, 2)]
            else:
                local = [(pe - 1, 2), (5, 2 ** (e - 2))]
        else:
            local = [(_primitive_root_prime_power(p, e), pe // p * (p - 1))]
        for g, o in local:
            gens.append(_crt_lift(g, pe, N))
            orders.append(o)
    log: dict = {}
    elements = []
    # enumerate products of generator powers
    vecs = [()]
    vals = [1 % N]
    for g, o in zip(gens, orders):
        nv, nvals = [], []
        for v, a in zip(vecs, vals):
            x = a
            for k in range(o):
                nv.append(v + (k,))
                nvals.append(x)
                x = x * g % N
        vecs, vals = nv, nvals
    for v, a in zip(vecs, vals):
        log[a] = v
        elements.append(a)
    expo = 1
    for o in orders:
        expo = expo * o // gcd(expo, o)
    return UnitGroup(N, tuple(gens), tuple(orders), tuple(sorted(elements)), log, expo)


def euler_phi(N: int) -> int:
    return make_level(N).phi
