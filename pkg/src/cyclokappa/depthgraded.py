r"""
The depth-graded combinatorial model.

Symbols ``[[eps_1..eps_d; l_1..l_d]]`` of ``X^{(x)d}`` are :class:`BiSeq`
tuples of exponents and non-negative integers.  A vector is a plain dict
``BiSeq -> coefficient``; coefficients are ints/Fractions over ``Q`` or
ints reduced mod ``p``.

``Y_{l+1}`` is the quotient of the ``N``-dimensional span of ``<x; l>``
(``x`` running over exponents mod ``N``) by the depth-one relations.  An
element of ``Y`` is a dict keyed by pairs ``(x, l)``; after
:func:`y_reduce` only basis exponents occur.

For special levels ``N = q p^M`` the sub-space ``W`` spanned by symbols
with every ``eps_i`` in ``nu_N`` maps isomorphically onto ``Y``
(:func:`theta_cap` is the inverse).  ``E_d`` is the resulting
endomorphism of ``W^{(x)d}`` and ``E_d_modp`` its reduction mod ``p``,
written through ``theta`` on ``mu_{N/q}``.

EXAMPLES::

    >>> lv = make_level(9)
    >>> u = BiSeq((1, 4), (0, 0))
    >>> img = E_d_modp(lv, {u: 1})
    >>> sorted((s.eps, c) for s, c in img.items())
    [((1, 1), 2), ((1, 7), 2), ((4, 1), 1), ((4, 4), 1), ((4, 7), 1)]
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from typing import Iterable, NamedTuple, Optional

from .cyclotomic import (
    Level,
    as_exponent,
    divisors,
    lambda_exponents,
    make_level,
    nu_exponents,
    p_adic_order,
    require_special,
    small_roots_exponents,
    subgroup_U,
)
from .exactlinalg import (
    GF,
    QQ,
    Field,
    NotNilpotent,
    QuotientPresentation,
    SparseMat,
    SparseVec,
    add_into,
    in_span,
    is_invertible,
    nilpotency_index,
    quotient,
    rank,
)


class BiSeq(NamedTuple):
    """``[[eps_1..eps_d; l_1..l_d]]`` with the ``eps_i`` stored as exponents."""

    eps: tuple
    ls: tuple

    @property
    def d(self) -> int:
        return len(self.eps)

    @property
    def weight(self) -> int:
        return len(self.eps) + sum(self.ls)


def biseq(eps: Iterable, ls: Optional[Iterable] = None, N: Optional[int] = None) -> BiSeq:
    """Convenience constructor accepting UnityRoots or exponents."""
    eps = tuple(e.exponent if hasattr(e, "exponent") else int(e) for e in eps)
    if N is not None:
        eps = tuple(e % N for e in eps)
    ls = tuple(ls) if ls is not None else (0,) * len(eps)
    if len(ls) != len(eps) or not eps:
        raise ValueError("eps and ls must be nonempty and of equal length")
    if any(l < 0 for l in ls):
        raise ValueError("ls must be non-negative")
    return BiSeq(eps, ls)


def compositions(total: int, parts: int):
    """Tuples of ``parts`` non-negative integers summing to ``total``, lex order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


class XSpaceIndexer:
    """Bijective index of the symbols of ``(X^{(x)d})_k``.

    ``alphabet="mu"`` uses every exponent mod ``N``; ``"nu"`` restricts to
    ``nu_N`` (the space ``W``).  Order is lexicographic in ``(ls, eps)``.
    """

    def __init__(self, lv: Level, d: int, k: int, alphabet: str = "mu"):
        if d < 1 or k < d:
            raise ValueError(f"need k >= d >= 1, got k={k}, d={d}")
        self.level, self.d, self.k, self.alphabet = lv, d, k, alphabet
        if alphabet == "mu":
            letters = list(range(lv.N))
        elif alphabet == "nu":
            letters = nu_exponents(lv)
        else:
            raise ValueError(f"unknown alphabet {alphabet!r}")
        self.symbols = [
            BiSeq(eps, ls)
            for ls in compositions(k - d, d)
            for eps in product(letters, repeat=d)
        ]
        self.index = {s: i for i, s in enumerate(self.symbols)}

    def __len__(self):
        return len(self.symbols)

    def coords(self, v: dict) -> dict:
        return {self.index[s]: c for s, c in v.items()}


# --- Y ----------------------------------------------------------------------------


def y_relations(N: int, l: int) -> list[dict]:
    """Relations (i)-(iii) among ``<x; l>``, indexed by the exponent ``x``."""
    rels = []
    if l == 0:
        rels.append({0: 1})
    sign = (-1) ** l
    for a in range(N):
        r: dict = {}
        add_into(r, {a: 1}, 1)
        add_into(r, {(-a) % N: 1}, -sign)
        if r:
            rels.append(r)
    for M in divisors(N):
        step = N // M
        Ml = M**l
        for a in range(N):
            aM = a * M % N
            if aM == 0 and l == 0:
                continue
            r = {aM: 1}
            for j in range(M):
                add_into(r, {(a + j * step) % N: 1}, -Ml)
            if r:
                rels.append(r)
    return rels


class YSpace:
    """Presentations of ``Y_{l+1}`` for each ``l``, built lazily."""

    def __init__(self, lv: Level):
        self.level = lv
        self._pres: dict[int, QuotientPresentation] = {}

    def presentation(self, l: int) -> QuotientPresentation:
        pres = self._pres.get(l)
        if pres is None:
            N = self.level.N
            pres = quotient(N, y_relations(N, l), QQ)
            self._pres[l] = pres
        return pres

    def basis(self, l: int) -> list[int]:
        return self.presentation(l).basis

    def dim(self, k: int) -> int:
        """``dim Y_k`` (weight ``k = l + 1``)."""
        return self.presentation(k - 1).dim

    def reduce_symbol(self, x: int, l: int) -> dict:
        """Class of ``<x; l>`` as a dict ``{(b, l): coeff}`` over basis exponents."""
        v = self.presentation(l).rewrite[x % self.level.N]
        return {(b, l): c for b, c in v.entries.items()}


@lru_cache(maxsize=None)
def y_space(N: int) -> YSpace:
    return YSpace(make_level(N))


def y_reduce(lv: Level, x, l: int) -> SparseVec:
    """Class of ``<x; l>`` in the canonical basis of ``Y_{l+1}``.

    >>> y_reduce(make_level(7), 0, 0)
    SparseVec({}, QQ)
    >>> y_reduce(make_level(5), 4, 0).items()
    [(1, 1)]
    """
    pres = y_space(lv.N).presentation(l)
    return pres.rewrite[as_exponent(lv, x)]


def expected_dim_Y(lv: Level, k: int) -> int:
    """``phi/2 + nu - 1`` for ``k = 1`` and ``phi/2`` otherwise (``N >= 3``)."""
    if lv.N < 3:
        raise ValueError("dimension formula is stated for N >= 3")
    return lv.phi // 2 + (lv.nu_count - 1 if k == 1 else 0)


# --- Theta ----------------------------------------------------------------------


def theta_cap(lv: Level, x, l: int) -> dict:
    """Inverse of ``W -> Y`` on the class of ``<x; l>`` (exact rationals).

    >>> lv = make_level(9)
    >>> sorted((s.eps, c) for s, c in theta_cap(lv, 3, 0).items())
    [((1,), 1), ((4,), 1), ((7,), 1)]
    >>> set(theta_cap(lv, 0, 2).values())
    {Fraction(-81, 4)}
    """
    p, _, _ = require_special(lv)
    N = lv.N
    m = as_exponent(lv, x)
    out: dict = {}
    if m == 0:
        if l == 0:
            return out
        c = Fraction(N**l + (-N) ** l, 1 - p**l)
        if c:
            for e in nu_exponents(lv):
                out[BiSeq((e,), (l,))] = c
        return out
    pv = p ** (p_adic_order(m, p) * l)
    for c in (1, -1):
        coeff = c**l * pv
        for e in lambda_exponents(lv, c, m):
            add_into(out, {BiSeq((e,), (l,)): coeff}, 1)
    return out


def _check_small(lv: Level, x) -> int:
    _, q, _ = require_special(lv)
    m = as_exponent(lv, x)
    if m % q:
        raise ValueError(f"zeta^{m} is not in mu_(N/q)")
    return m


@lru_cache(maxsize=None)
def _theta_small_cached(N: int, m: int) -> tuple:
    lv = make_level(N)
    p, _, _ = require_special(lv)
    out: dict = {}
    if m:
        for c in (1, -1):
            for e in lambda_exponents(lv, c, m):
                add_into(out, {e: 1}, 1, p)
    return tuple(sorted(out.items()))


def theta_small(lv: Level, x) -> dict:
    """``theta(x)`` mod ``p`` for ``x`` in ``mu_{N/q}``; keys are depth-one BiSeqs.

    >>> sorted((s.eps, c) for s, c in theta_small(make_level(9), 3).items())
    [((1,), 1), ((4,), 1), ((7,), 1)]
    >>> theta_small(make_level(8), 4)
    {}
    """
    m = _check_small(lv, x)
    return {BiSeq((e,), (0,)): c for e, c in _theta_small_cached(lv.N, m)}


@lru_cache(maxsize=None)
def _theta_tilde_cached(N: int, m: int) -> tuple:
    if m:
        return _theta_small_cached(N, m)
    lv = make_level(N)
    p, _, _ = require_special(lv)
    out: dict = {}
    for y in small_roots_exponents(lv):
        add_into(out, dict(_theta_small_cached(N, y)), -1, p)
    return tuple(sorted(out.items()))


def theta_tilde(lv: Level, x) -> dict:
    """``theta~(x)``: ``theta(x)`` for ``x != 1``, ``-sum theta(y)`` over ``mu_{N/q}`` at 1.

    >>> sorted((s.eps, c) for s, c in theta_tilde(make_level(9), 0).items())
    [((1,), 1), ((4,), 1), ((7,), 1)]
    >>> theta_tilde(make_level(8), 0)
    {}
    """
    m = _check_small(lv, x)
    return {BiSeq((e,), (0,)): c for e, c in _theta_tilde_cached(lv.N, m)}


# --- D_d ----------------------------------------------------------------------------


def D_raw_terms(u: BiSeq):
    """Terms ``(coeff, (x, r), rest)`` of ``D_d(u)`` with unreduced Y symbols.

    ``rest`` is ``None`` for ``d = 1``.  Exponent arithmetic is not reduced
    mod ``N`` here; callers reduce.
    """
    eps, ls = u.eps, u.ls
    d = len(eps)
    if d == 1:
        yield 1, (eps[0], ls[0]), None
        return
    # leading term
    yield 1, (eps[0] - eps[1], ls[0]), BiSeq(eps[1:], ls[1:])
    # middle left cuts, i = 2..d-1 (0-based j = i-1)
    for j in range(1, d - 1):
        lp, li = ls[j - 1], ls[j]
        e_rest = eps[:j] + eps[j + 1 :]
        for r in range(li, lp + li + 1):
            c = (-1) ** (r - li) * comb(r, li)
            l_rest = ls[: j - 1] + (lp + li - r,) + ls[j + 1 :]
            yield c, (eps[j] - eps[j + 1], r), BiSeq(e_rest, l_rest)
    # right cuts, i = 1..d-1
    for j in range(d - 1):
        li, ln = ls[j], ls[j + 1]
        e_rest = eps[: j + 1] + eps[j + 2 :]
        for r in range(li, li + ln + 1):
            c = -((-1) ** li) * comb(r, li)
            l_rest = ls[:j] + (li + ln - r,) + ls[j + 2 :]
            yield c, (eps[j + 1] - eps[j], r), BiSeq(e_rest, l_rest)
    # trailing term
    lp, ld = ls[-2], ls[-1]
    for r in range(ld, lp + ld + 1):
        c = (-1) ** (r - ld) * comb(r, ld)
        yield c, (eps[-1], r), BiSeq(eps[:-1], ls[:-2] + (lp + ld - r,))


def _norm(u: BiSeq, N: int) -> BiSeq:
    return BiSeq(tuple(e % N for e in u.eps), u.ls)


def D_d(lv: Level, v: dict) -> dict:
    """``D_d`` on an element of ``X^{(x)d}``; keys ``((x, r), rest_BiSeq)``.

    The Y slot is reduced into the basis of ``Y_{r+1}``.  For ``d = 1`` the
    key is ``((x, l), None)``.

    At ``N = 3`` the class of ``<zeta; 2>`` is ``-4/9 <1; 2>``:

    >>> D_d(make_level(3), {BiSeq((1,), (2,)): 1})
    {((0, 2), None): Fraction(-4, 9)}
    """
    N = lv.N
    Y = y_space(N)
    out: dict = {}
    for u, a in v.items():
        for c, (x, r), rest in D_raw_terms(u):
            rest = _norm(rest, N) if rest is not None else None
            for yk, yc in Y.reduce_symbol(x, r).items():
                add_into(out, {(yk, rest): yc}, a * c)
    return out


@lru_cache(maxsize=200_000)
def _d_iter_symbol(N: int, u: BiSeq) -> tuple:
    Y = y_space(N)
    out: dict = {}
    for c, (x, r), rest in D_raw_terms(u):
        head = Y.reduce_symbol(x, r)
        if not head:
            continue
        if rest is None:
            tail = {(): 1}
        else:
            tail = dict(_d_iter_symbol(N, _norm(rest, N)))
        for hk, hc in head.items():
            for tk, tc in tail.items():
                add_into(out, {(hk,) + tk: 1}, c * hc * tc)
    return tuple(out.items())


def D_d_iter(lv: Level, v: dict) -> dict:
    """Full iteration ``X^{(x)d} -> Y^{(x)d}``; keys are tuples of ``(x, l)``.

    >>> lv = make_level(7)
    >>> D_d_iter(lv, {BiSeq((2, 2), (0, 0)): 1})
    {((2, 0), (2, 0)): 1}
    """
    weights = {u.weight for u in v}
    if len(weights) > 1:
        raise ValueError("D_d_iter expects a weight-homogeneous input")
    out: dict = {}
    for u, a in v.items():
        add_into(out, dict(_d_iter_symbol(lv.N, _norm(u, lv.N))), a)
    return out


class YTensorIndexer:
    """Index of the basis of ``(Y^{(x)d})_k``: tuples of ``(b, l)``."""

    def __init__(self, lv: Level, d: int, k: int):
        Y = y_space(lv.N)
        self.symbols = []
        for ls in compositions(k - d, d):
            for bs in product(*[Y.basis(l) for l in ls]):
                self.symbols.append(tuple(zip(bs, ls)))
        self.index = {s: i for i, s in enumerate(self.symbols)}

    def __len__(self):
        return len(self.symbols)


# --- E_d over Q and mod p --------------------------------------------------------------


def _require_nu(lv: Level, v: dict):
    _, q, _ = require_special(lv)
    for u in v:
        if any(e % q != 1 % q for e in u.eps):
            raise ValueError(f"{u} has an entry outside nu_N")


def E_d(lv: Level, v: dict) -> dict:
    """``E_d = iota o D_d`` on ``W^{(x)d}`` with exact rational coefficients."""
    _require_nu(lv, v)
    N = lv.N
    out: dict = {}
    for u, a in v.items():
        for c, (x, r), rest in D_raw_terms(u):
            th = theta_cap(lv, x % N, r)
            if rest is None:
                for w, tc in th.items():
                    add_into(out, {w: 1}, a * c * tc)
                continue
            rest = _norm(rest, N)
            for w, tc in th.items():
                key = BiSeq(rest.eps + w.eps, rest.ls + w.ls)
                add_into(out, {key: 1}, a * c * tc)
    return out


def reduce_mod_p(v: dict, p: int) -> dict:
    """Reduce a p-integral rational vector mod ``p``."""
    F = GF(p)
    out = {}
    for k, c in v.items():
        c = F(c)
        if c:
            out[k] = c
    return out


def is_p_integral(v: dict, p: int) -> bool:
    return all(Fraction(c).denominator % p for c in v.values())


def _append(u_eps, u_ls, th: dict, coeff, out: dict, p: int):
    for w, tc in th.items():
        add_into(out, {BiSeq(u_eps + w.eps, u_ls + w.ls): 1}, coeff * tc, p)


def E_d_modp(lv: Level, v: dict) -> dict:
    """``E_d`` reduced mod ``p``, evaluated through ``theta`` directly."""
    _require_nu(lv, v)
    p, _, _ = require_special(lv)
    N = lv.N
    out: dict = {}
    for u, a in v.items():
        eps, ls = u.eps, u.ls
        d = len(eps)
        if d == 1:
            add_into(out, {u: 1}, a, p)
            continue
        for j in range(d - 1):
            if ls[j]:
                continue
            l_rest = ls[:j] + ls[j + 1 :]
            _append(eps[:j] + eps[j + 1 :], l_rest, theta_small(lv, (eps[j] - eps[j + 1]) % N), a, out, p)
            _append(eps[: j + 1] + eps[j + 2 :], l_rest, theta_small(lv, (eps[j + 1] - eps[j]) % N), -a, out, p)
        lp, ld = ls[-2], ls[-1]
        for r in range(ld, lp + ld + 1):
            c = (-1) ** (r - ld) * comb(r, ld)
            key = BiSeq(eps, ls[:-2] + (lp + ld - r, r))
            add_into(out, {key: 1}, a * c, p)
    return out


def op_L(lv: Level, i: int, v: dict) -> dict:
    """``L~_i`` (1-based ``i``): delete slot ``i`` and append ``theta~(eps_i/eps_{i+1})``."""
    p, _, _ = require_special(lv)
    out: dict = {}
    for u, a in v.items():
        d = u.d
        if not 1 <= i < d:
            raise IndexError(f"L~_{i} needs 1 <= i < d = {d}")
        j = i - 1
        if u.ls[j]:
            continue
        th = theta_tilde(lv, (u.eps[j] - u.eps[j + 1]) % lv.N)
        _append(u.eps[:j] + u.eps[j + 1 :], u.ls[:j] + u.ls[j + 1 :], th, a, out, p)
    return out


def op_R(lv: Level, i: int, v: dict) -> dict:
    """``R~_i``: delete ``eps_{i+1}`` and ``l_i``, append ``theta~(eps_{i+1}/eps_i)``.

    >>> lv = make_level(729)
    >>> r = op_R(lv, 1, {BiSeq((1, 100), (0, 0)): 1})
    >>> sorted(s.eps[1] for s in r) == [70 + 81 * i for i in range(9)]
    True
    """
    p, _, _ = require_special(lv)
    out: dict = {}
    for u, a in v.items():
        d = u.d
        if not 1 <= i < d:
            raise IndexError(f"R~_{i} needs 1 <= i < d = {d}")
        j = i - 1
        if u.ls[j]:
            continue
        th = theta_tilde(lv, (u.eps[j + 1] - u.eps[j]) % lv.N)
        _append(u.eps[: j + 1] + u.eps[j + 2 :], u.ls[:j] + u.ls[j + 1 :], th, a, out, p)
    return out


def op_S(lv: Level, v: dict) -> dict:
    """``S``: the trailing binomial sum with ``r`` from ``l_d + 1``."""
    p, _, _ = require_special(lv)
    out: dict = {}
    for u, a in v.items():
        if u.d < 2:
            continue
        lp, ld = u.ls[-2], u.ls[-1]
        for r in range(ld + 1, lp + ld + 1):
            c = (-1) ** (r - ld) * comb(r, ld)
            add_into(out, {BiSeq(u.eps, u.ls[:-2] + (lp + ld - r, r)): 1}, a * c, p)
    return out


def galois_act(lv: Level, a: int, v: dict) -> dict:
    """Diagonal action ``sigma_a`` on every ``eps`` entry."""
    N = lv.N
    return {BiSeq(tuple(e * a % N for e in u.eps), u.ls): c for u, c in v.items()}


# --- checkers ------------------------------------------------------------------------


def decomposition_check(lv: Level, k: int, d: int) -> bool:
    """``E_d - id == sum L~_i - sum R~_i + S`` on every basis vector of ``(W^{(x)d})_k``."""
    p, _, _ = require_special(lv)
    for u in XSpaceIndexer(lv, d, k, "nu").symbols:
        v = {u: 1}
        lhs = E_d_modp(lv, v)
        add_into(lhs, v, -1, p)
        rhs = op_S(lv, v)
        for i in range(1, d):
            add_into(rhs, op_L(lv, i, v), 1, p)
            add_into(rhs, op_R(lv, i, v), -1, p)
        if lhs != rhs:
            return False
    return True


def unipotence_check(lv: Level, k: int, d: int):
    """Nilpotency index of ``(E_d)_k - id`` over ``F_p``, or ``NotNilpotent``."""
    p, _, _ = require_special(lv)
    idx = XSpaceIndexer(lv, d, k, "nu")

    def apply(i):
        u = idx.symbols[i]
        img = E_d_modp(lv, {u: 1})
        add_into(img, {u: 1}, -1, p)
        return idx.coords(img)

    return nilpotency_index(apply, len(idx), GF(p))


def surjectivity_check(lv: Level, k: int, d: int, method: str = "auto") -> int:
    """Cokernel dimension of ``(X^{(x)d})_k -> (Y^{(x)d})_k``; 0 iff P(N,k,d)."""
    cod = YTensorIndexer(lv, d, k)
    if len(cod) == 0:
        return 0
    rows = set()
    for u in XSpaceIndexer(lv, d, k, "mu").symbols:
        img = dict(_d_iter_symbol(lv.N, u))
        if img:
            rows.add(tuple(sorted((cod.index[s], c) for s, c in img.items())))
    m = SparseMat.from_rows([dict(r) for r in sorted(rows)], len(cod))
    return len(cod) - rank(m, method)


def stability_check(lv: Level, k: int, d: int) -> bool:
    """``D_d(W^{(x)d}) ⊂ Y (x) W^{(x)(d-1)}`` on every basis symbol."""
    _, q, _ = require_special(lv)
    for u in XSpaceIndexer(lv, d, k, "nu").symbols:
        for (_, rest) in D_d(lv, {u: 1}):
            if rest is not None and any(e % q != 1 % q for e in rest.eps):
                return False
    return True


def bijectivity_matrix(lv: Level, k: int, d: int):
    dom = XSpaceIndexer(lv, d, k, "nu")
    cod = YTensorIndexer(lv, d, k)
    rows = []
    for u in dom.symbols:
        img = D_d_iter(lv, {u: 1})
        rows.append({cod.index[s]: c for s, c in img.items()})
    return SparseMat.from_rows(rows, len(cod)), dom, cod


def basis_bijectivity_check(lv: Level, k: int, d: int) -> bool:
    """``D_d^iter : (W^{(x)d})_k -> (Y^{(x)d})_k`` is square and invertible,
    and ``W`` is stable under ``D_d``."""
    require_special(lv)
    m, dom, cod = bijectivity_matrix(lv, k, d)
    if len(dom) != len(cod) or not is_invertible(m):
        return False
    return stability_check(lv, k, d)


def theta_sum_failures(lv: Level) -> list[tuple[int, int]]:
    """Pairs ``(x, n)`` where ``sum_{eta in U(n)} theta~(eta x)`` is not in ``A(n+1)``.

    ``A(n) = span{sum_{eta in U(n)} [[eta eps]] : eps in nu_N}`` over ``F_p``
    and ``A(n) = 0`` for ``n > M``.
    """
    p, _, M = require_special(lv)
    N = lv.N
    F = GF(p)
    bad = []
    for x in small_roots_exponents(lv):
        for n in range(M + 1):
            s: dict = {}
            for eta in subgroup_U(lv, n):
                for u, c in theta_tilde(lv, (eta.exponent + x) % N).items():
                    add_into(s, {u.eps[0]: c}, 1, p)
            if n + 1 > M:
                ok = not s
            else:
                span = []
                for e in nu_exponents(lv):
                    v: dict = {}
                    for eta in subgroup_U(lv, n + 1):
                        add_into(v, {(eta.exponent + e) % N: 1}, 1, p)
                    span.append(v)
                ok = in_span(span, s, F)
            if not ok:
                bad.append((x, n))
    return bad


__all__ = [
    "theta_sum_failures",
    "bijectivity_matrix",
    "BiSeq",
    "biseq",
    "compositions",
    "XSpaceIndexer",
    "YTensorIndexer",
    "YSpace",
    "y_space",
    "y_relations",
    "y_reduce",
    "expected_dim_Y",
    "theta_cap",
    "theta_small",
    "theta_tilde",
    "D_raw_terms",
    "D_d",
    "D_d_iter",
    "E_d",
    "E_d_modp",
    "reduce_mod_p",
    "is_p_integral",
    "op_L",
    "op_R",
    "op_S",
    "galois_act",
    "decomposition_check",
    "unipotence_check",
    "surjectivity_check",
    "stability_check",
    "basis_bijectivity_check",
    "NotNilpotent",
]
