r"""
Exact sparse linear algebra over ``Q`` and prime fields.

Vectors are finitely supported maps ``index -> scalar``.  Internally every
routine works on plain ``dict`` rows; :class:`SparseVec` and
:class:`SparseMat` are the thin public containers.

Rank over ``Q`` is computed by fraction-free sparse elimination on
integer rows (rows with rational entries are scaled by the lcm of their
denominators first, which does not change the rank).  Pivots are chosen
by a deterministic Markowitz-lite rule: the shortest remaining row
first (ties broken by row index), and inside it the column occurring in
the fewest remaining rows (ties broken by column index).

EXAMPLES::

    >>> rank(SparseMat.from_rows([[1, 2], [2, 4]]))
    1
    >>> rank(SparseMat.from_rows([[1, 1], [1, -1]], field=GF(2)))
    1
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .cyclotomic import is_prime


# --- fields -----------------------------------------------------------------


def _qq(x):
    """Rationals are kept as ``int`` whenever the denominator is 1."""
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


class Field:
    """Coefficient field tag.  ``p`` is ``None`` for the rationals."""

    p: Optional[int] = None

    def __init__(self, p: Optional[int] = None):
        if p is not None and not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    def __call__(self, x):
        """Coerce an int or Fraction into this field."""
        p = self.p
        if p is None:
            return _qq(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def inv(self, x):
        if self.p is None:
            return _qq(1 / Fraction(x))
        return pow(x, -1, self.p)

    def normalize(self, x):
        return x % self.p if self.p is not None else _qq(x)

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field()


@lru_cache(maxsize=None)
def GF(p: int) -> Field:
    return Field(p)


# --- containers ---------------------------------------------------------------


class SparseVec:
    """Finitely supported ``index -> nonzero scalar``; iteration is by index."""

    __slots__ = ("entries", "field")

    def __init__(self, entries=None, field: Field = QQ):
        self.field = field
        ent = {}
        for k, v in (entries.items() if isinstance(entries, dict) else (entries or ())):
            v = field(v)
            if v:
                ent[int(k)] = v
        self.entries = ent

    @classmethod
    def _raw(cls, entries: dict, field: Field) -> "SparseVec":
        v = cls.__new__(cls)
        v.entries = entries
        v.field = field
        return v

    def items(self):
        return sorted(self.entries.items())

    def __iter__(self):
        return iter(sorted(self.entries))

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries.get(i, 0)

    def __bool__(self):
        return bool(self.entries)

    def __eq__(self, other):
        if isinstance(other, SparseVec):
            return self.entries == other.entries
        if isinstance(other, dict):
            return self.entries == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __add__(self, other: "SparseVec") -> "SparseVec":
        out = dict(self.entries)
        add_into(out, other.entries, 1, self.field.p)
        return SparseVec._raw(out, self.field)

    def __sub__(self, other: "SparseVec") -> "SparseVec":
        out = dict(self.entries)
        add_into(out, other.entries, -1, self.field.p)
        return SparseVec._raw(out, self.field)

    def scale(self, c) -> "SparseVec":
        c = self.field(c)
        if not c:
            return SparseVec._raw({}, self.field)
        p = self.field.p
        if p is None:
            return SparseVec._raw({k: c * v for k, v in self.entries.items()}, self.field)
        return SparseVec._raw({k: c * v % p for k, v in self.entries.items()}, self.field)

    def __repr__(self):
        return f"SparseVec({dict(self.items())}, {self.field!r})"


def add_into(target: dict, src: dict, c, p: Optional[int] = None) -> dict:
    """``target += c * src`` in place, dropping zeros."""
    if p is None:
        for k, v in src.items():
            nv = target.get(k, 0) + c * v
            if nv:
                target[k] = nv
            else:
                target.pop(k, None)
    else:
        for k, v in src.items():
            nv = (target.get(k, 0) + c * v) % p
            if nv:
                target[k] = nv
            else:
                target.pop(k, None)
    return target


@dataclass
class SparseMat:
    rows: list
    ncols: int
    field: Field = QQ

    @classmethod
    def from_rows(cls, rows: Sequence, ncols: Optional[int] = None, field: Field = QQ):
        """Build from dense lists, dicts, or :class:`SparseVec` rows."""
        out = []
        width = 0
        for r in rows:
            if isinstance(r, SparseVec):
                ent = r.entries
            elif isinstance(r, dict):
                ent = r
            else:
                ent = {i: v for i, v in enumerate(r) if v}
                width = max(width, len(r))
            out.append(SparseVec(ent, field))
            if ent:
                width = max(width, max(ent) + 1)
        ncols = width if ncols is None else ncols
        m = cls(out, ncols, field)
        m.check()
        return m

    def check(self):
        for r in self.rows:
            for k in r.entries:
                if not 0 <= k < self.ncols:
                    raise IndexError(f"column {k} out of range for ncols={self.ncols}")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def transpose(self) -> "SparseMat":
        cols: list[dict] = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for k, v in r.entries.items():
                cols[k][i] = v
        return SparseMat([SparseVec._raw(c, self.field) for c in cols], len(self.rows), self.field)

    def apply(self, v: dict) -> dict:
        """``M v`` for a column vector ``v`` given as a dict."""
        p = self.field.p
        out = {}
        for i, r in enumerate(self.rows):
            s = 0
            for k, c in r.entries.items():
                if k in v:
                    s += c * v[k]
            if p is not None:
                s %= p
            if s:
                out[i] = s
        return out


# --- sparse elimination -----------------------------------------------------


def _integer_row(row: dict) -> dict:
    dens = [v.denominator for v in row.values() if isinstance(v, Fraction)]
    if not dens:
        return {k: int(v) for k, v in row.items()}
    m = lcm(*dens)
    return {k: int(v * m) for k, v in row.items()}


def _content_reduce(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        for k in row:
            row[k] //= g
    return row


def eliminate(rows: Iterable[dict], p: Optional[int] = None, record: bool = False):
    """Sparse Gaussian elimination; returns ``(rank, pivots)``.

    With ``p`` set the arithmetic is mod ``p``; otherwise rows must be
    integral and updates are fraction-free (``a*r_j - b*r_i`` followed by
    division by the row content).  When ``record`` is true, ``pivots`` is
    the list of ``(row_index, column, pivot_row)`` in elimination order;
    each recorded pivot row vanishes on all earlier pivot columns.
    """
    live: dict[int, dict] = {}
    for i, r in enumerate(rows):
        if p is not None:
            r = {k: v % p for k, v in r.items() if v % p}
        else:
            r = {k: v for k, v in r.items() if v}
        if r:
            live[i] = r
    cols: dict[int, set] = {}
    for i, r in live.items():
        for k in r:
            s = cols.get(k)
            if s is None:
                cols[k] = {i}
            else:
                s.add(i)
    heap = [(len(r), i) for i, r in live.items()]
    heapq.heapify(heap)
    rank = 0
    pivots = []
    while heap:
        ln, i = heapq.heappop(heap)
        r = live.get(i)
        if r is None or len(r) != ln:
            continue
        c = min(r, key=lambda k: (len(cols[k]), k))
        del live[i]
        for k in r:
            cols[k].discard(i)
        rank += 1
        if record:
            pivots.append((i, c, dict(r)))
        a = r[c]
        others = cols.pop(c)
        if p is not None:
            inv = pow(a, -1, p)
        for j in sorted(others):
            rj = live[j]
            b = rj[c]
            if p is not None:
                f = b * inv % p
                for k, v in r.items():
                    nv = (rj.get(k, 0) - f * v) % p
                    if nv:
                        if k not in rj:
                            cols[k].add(j)
                        rj[k] = nv
                    elif k in rj:
                        del rj[k]
                        if k != c:
                            cols[k].discard(j)
            else:
                g = gcd(a, b)
                ma, mb = a // g, b // g
                if ma != 1:
                    for k in rj:
                        rj[k] *= ma
                for k, v in r.items():
                    nv = rj.get(k, 0) - mb * v
                    if nv:
                        if k not in rj:
                            cols[k].add(j)
                        rj[k] = nv
                    elif k in rj:
                        del rj[k]
                        if k != c:
                            cols[k].discard(j)
                _content_reduce(rj)
            if rj:
                heapq.heappush(heap, (len(rj), j))
            else:
                del live[j]
    return rank, pivots


MODULAR_THRESHOLD = 20_000  # total nonzeros above which QQ rank tries the modular path


def fast_primes(count: int = 2, avoid: int = 1, start: int = 1 << 20, modulus: int = 1):
    """The ``count`` smallest primes above ``start`` that are ``1 mod modulus``
    and do not divide ``avoid``."""
    out = []
    k = start // modulus + 1
    while len(out) < count:
        n = k * modulus + 1
        if avoid % n and is_prime(n):
            out.append(n)
        k += 1
    return out


def _rows_of(m: SparseMat) -> list[dict]:
    return [r.entries for r in m.rows]


def rank(m: SparseMat, method: str = "auto") -> int:
    """Exact rank of ``m`` over its field.

    ``method`` is ``"fraction_free"``, ``"modular"`` or ``"auto"`` (rationals
    only; prime-field matrices are always eliminated mod p).  The modular
    route finds pivots mod two primes above ``2**20``, requires them to agree,
    and then certifies over ``Q`` that the remaining rows reduce to zero
    against the candidate pivot rows; any disagreement falls back to full
    fraction-free elimination.
    """
    p = m.field.p
    if p is not None:
        return eliminate(_rows_of(m), p)[0]
    rows = [_integer_row(r) for r in _rows_of(m)]
    if method == "auto":
        nnz = sum(len(r) for r in rows)
        method = "modular" if nnz > MODULAR_THRESHOLD else "fraction_free"
    if method == "fraction_free":
        return eliminate(rows)[0]
    if method != "modular":
        raise ValueError(f"unknown rank method {method!r}")
    r = _certified_modular_rank(rows)
    return r if r is not None else eliminate(rows)[0]


DENSE_MAX_ENTRIES = 40_000_000
DENSE_MIN_DENSITY = 0.005


def to_dense_mod(rows: Sequence[dict], ncols: int, p: int) -> np.ndarray:
    F = GF(p)
    A = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        for k, v in r.items():
            A[i, k] = F(v)
    return A


def modular_rank(rows: Sequence[dict], ncols: int, p: int) -> int:
    """Rank mod ``p``; dense blocked elimination when the matrix is dense enough."""
    rows = [r for r in rows if r]
    size = len(rows) * ncols
    nnz = sum(len(r) for r in rows)
    if size and size <= DENSE_MAX_ENTRIES and nnz >= DENSE_MIN_DENSITY * size and len(rows) > 200 and 257 * p * p < 1 << 53:
        return dense_rank_mod(to_dense_mod(rows, ncols, p), p)
    F = GF(p)
    return eliminate([{k: F(v) for k, v in r.items()} for r in rows], p)[0]


def _certified_modular_rank(rows: list[dict]) -> Optional[int]:
    l1, l2 = fast_primes(2)
    ncols = max((max(r) + 1 for r in rows if r), default=0)
    r1 = modular_rank(rows, ncols, l1)
    r2 = modular_rank(rows, ncols, l2)
    if r1 != r2:
        return None
    # the rank mod a prime never exceeds the rank over Q
    if r1 == min(sum(1 for r in rows if r), ncols):
        return r1
    r1, piv1 = eliminate(rows, l1, record=True)
    chosen = [i for i, _, _ in piv1]
    # exact echelon of the candidate pivot rows
    r_exact, piv = eliminate([rows[i] for i in chosen], None, record=True)
    if r_exact != r1:
        return None
    echelon = [(c, pr) for _, c, pr in piv]
    chosen_set = set(chosen)
    for i, row in enumerate(rows):
        if i in chosen_set or not row:
            continue
        if reduce_against(dict(row), echelon):
            return None
    return r1


def reduce_against(row: dict, echelon: list, p: Optional[int] = None) -> dict:
    """Reduce ``row`` by a triangular list of ``(pivot_column, pivot_row)``.

    Over ``Q`` the arithmetic is fraction-free and the result is only
    meaningful up to a nonzero scalar (zero-ness is exact).
    """
    for c, pr in echelon:
        b = row.get(c)
        if not b:
            continue
        a = pr[c]
        if p is not None:
            add_into(row, pr, -b * pow(a, -1, p) % p, p)
        else:
            g = gcd(a, b)
            ma, mb = a // g, b // g
            if ma != 1:
                for k in row:
                    row[k] *= ma
            add_into(row, pr, -mb)
            _content_reduce(row)
        if not row:
            break
    return row


def is_invertible(m: SparseMat) -> bool:
    """Square and invertible over its field.

    Over ``Q`` a full rank mod one prime certifies invertibility; only a
    deficient modular rank triggers exact elimination.
    """
    if m.nrows != m.ncols:
        return False
    if m.ncols == 0:
        return True
    rows = _rows_of(m)
    if m.field.p is not None:
        return modular_rank(rows, m.ncols, m.field.p) == m.ncols
    for ell in fast_primes(3):
        try:
            if modular_rank(rows, m.ncols, ell) == m.ncols:
                return True
            break
        except ZeroDivisionError:
            continue
    return rank(m, "fraction_free") == m.ncols


def cokernel_dim(m: SparseMat, method: str = "auto") -> int:
    """``ncols - rank``: the codimension of the row span."""
    return m.ncols - rank(m, method)


# --- reduced echelon, kernels, quotients -------------------------------------


def rref(rows: Iterable[dict], field: Field = QQ, pivot: str = "min"):
    """Fully reduced row echelon form as ``{pivot_column: row}``.

    Each stored row has coefficient 1 at its pivot column and no entries in
    other pivot columns.  ``pivot="max"`` chooses the largest column of a
    row as its pivot, ``"min"`` the smallest.
    """
    p = field.p
    choose = max if pivot == "max" else min
    piv: dict[int, dict] = {}
    for r in rows:
        v = {k: field(c) for k, c in r.items()}
        v = {k: c for k, c in v.items() if c}
        for c in [k for k in v if k in piv]:
            if c in v:
                add_into(v, piv[c], -v[c], p)
        # entries introduced by reduction only touch non-pivot columns
        if not v:
            continue
        c = choose(v)
        inv = field.inv(v[c])
        v = {k: field.normalize(x * inv) for k, x in v.items()}
        for pc, pr in piv.items():
            b = pr.get(c)
            if b:
                add_into(pr, v, -b, p)
        piv[c] = v
    return piv


def kernel_basis(m: SparseMat) -> list[SparseVec]:
    """Basis of ``{x : m x = 0}``, one vector per free column.

    >>> [v.items() for v in kernel_basis(SparseMat.from_rows([[1, 1]]))]
    [[(0, -1), (1, 1)]]
    """
    field = m.field
    piv = rref(_rows_of(m), field)
    out = []
    p = field.p
    for f in range(m.ncols):
        if f in piv:
            continue
        v = {f: field(1)}
        for c, row in piv.items():
            x = row.get(f)
            if x:
                v[c] = field.normalize(-x)
        out.append(SparseVec._raw(v, field))
    return out


def in_span(vectors: Sequence[dict], target: dict, field: Field = QQ) -> bool:
    piv = rref(vectors, field)
    v = {k: field(c) for k, c in target.items()}
    v = {k: c for k, c in v.items() if c}
    for c in [k for k in v if k in piv]:
        if c in v:
            add_into(v, piv[c], -v[c], field.p)
    return not v


@dataclass
class QuotientPresentation:
    """``F^ambient_dim`` modulo the row span of ``relations``.

    ``basis`` is the sorted list of surviving ambient indices and
    ``rewrite[i]`` expresses ambient index ``i`` in terms of them.
    """

    ambient_dim: int
    relations: SparseMat
    basis: list[int]
    rewrite: list[SparseVec]

    def __post_init__(self):
        self.position = {b: j for j, b in enumerate(self.basis)}
        self._coords = [
            {self.position[k]: c for k, c in v.entries.items()} for v in self.rewrite
        ]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, i: int) -> dict:
        """Rewrite of ambient index ``i`` in basis positions ``0..dim-1``."""
        return self._coords[i]

    def reduce(self, v: dict) -> SparseVec:
        """Class of an ambient vector, supported on ``basis``."""
        p = self.relations.field.p
        out: dict = {}
        for k, c in v.items():
            add_into(out, self.rewrite[k].entries, c, p)
        return SparseVec._raw(out, self.relations.field)


def quotient(ambient_dim: int, relations: Sequence, field: Field = QQ) -> QuotientPresentation:
    """Deterministic presentation of a quotient space.

    Each relation is pivoted on its largest surviving index, so the
    smallest indices survive as the basis.

    >>> qp = quotient(2, [{0: 1, 1: -1}])
    >>> qp.basis, qp.rewrite[1].items()
    ([0], [(0, 1)])
    """
    rel = SparseMat.from_rows(list(relations), ambient_dim, field)
    piv = rref(_rows_of(rel), field, pivot="max")
    basis = [i for i in range(ambient_dim) if i not in piv]
    rewrite = []
    for i in range(ambient_dim):
        if i in piv:
            v = {k: field.normalize(-c) for k, c in piv[i].items() if k != i}
        else:
            v = {i: field(1)}
        rewrite.append(SparseVec._raw(v, field))
    return QuotientPresentation(ambient_dim, rel, basis, rewrite)


# --- nilpotency ---------------------------------------------------------------


class _NotNilpotent:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "NotNilpotent"

    def __bool__(self):
        return False


NotNilpotent = _NotNilpotent()


def operator_matrix(apply: Callable[[int], dict], dim: int, field: Field = QQ) -> list[dict]:
    """Columns ``apply(i)`` for ``i < dim``, coerced into ``field``."""
    cols = []
    for i in range(dim):
        img = apply(i)
        if isinstance(img, SparseVec):
            img = img.entries
        col = {}
        for k, c in img.items():
            c = field(c)
            if c:
                if not 0 <= k < dim:
                    raise IndexError(f"operator maps basis vector {i} outside the space")
                col[k] = c
        cols.append(col)
    return cols


def nilpotency_index(apply: Callable[[int], dict], dim: int, field: Field = QQ):
    """Least ``n`` with ``T^n = 0``, or :data:`NotNilpotent`.

    ``apply(i)`` returns the image of the ``i``-th basis vector as a dict.
    The zero space gives index 0.

    >>> nilpotency_index(lambda i: {}, 5)
    1
    >>> nilpotency_index(lambda i: {i - 1: 1} if i else {}, 3)
    3
    """
    if dim == 0:
        return 0
    cols = operator_matrix(apply, dim, field)
    if field.p is not None:
        return _nilpotency_mod_p(cols, dim, field.p)
    power = [dict(c) for c in cols]  # columns of T^n
    n = 1
    while any(power):
        if n >= dim:
            return NotNilpotent
        nxt = []
        for col in power:
            out: dict = {}
            for k, c in col.items():
                add_into(out, cols[k], c)
            nxt.append(out)
        power = nxt
        n += 1
    return n


def _nilpotency_mod_p(cols: list[dict], dim: int, p: int):
    import scipy.sparse as sp

    r, c, d = [], [], []
    for j, col in enumerate(cols):
        for i, v in col.items():
            r.append(i)
            c.append(j)
            d.append(v)
    T = sp.csr_matrix((np.array(d, dtype=np.int64), (r, c)), shape=(dim, dim))
    P = T.copy()
    n = 1
    while P.nnz:
        if n >= dim:
            return NotNilpotent
        P = (T @ P).tocsr()
        P.data %= p
        P.eliminate_zeros()
        n += 1
    return n


# --- dense modular rank ----------------------------------------------------------


def dense_rank_mod(A, p: int, block: int = 256) -> int:
    """Rank of an integer matrix mod ``p`` by blocked elimination.

    Arithmetic is done in float64 on integers of absolute value below
    ``p`` (reduced with ``fmod``, so signs are allowed).  Inside a panel of
    ``block`` columns entries are reduced lazily; they stay below
    ``p + block * p**2 < 2**53``, so every operation is exact.  Trailing
    columns are updated with one matrix product per panel.
    """
    if (block + 1) * p * p >= 1 << 53:
        raise ValueError(f"prime {p} too large for exact float64 blocks of {block}")
    A = np.array(np.asarray(A, dtype=np.int64) % p, dtype=np.float64)
    fp = float(p)
    rank = 0
    while A.shape[1] and A.shape[0]:
        b = min(block, A.shape[1])
        panel = A[:, :b].copy()
        n = panel.shape[0]
        order = np.arange(n)
        L = np.zeros((n, b))
        kb = 0
        for j in range(b):
            if kb == n:
                break
            colj = np.fmod(panel[kb:, j], fp)
            panel[kb:, j] = colj
            nz = np.flatnonzero(colj)
            if nz.size == 0:
                continue
            piv = kb + nz[0]
            if piv != kb:
                panel[[kb, piv]] = panel[[piv, kb]]
                L[[kb, piv]] = L[[piv, kb]]
                order[[kb, piv]] = order[[piv, kb]]
            prow = np.fmod(panel[kb, j:], fp)
            panel[kb, j:] = prow
            inv = float(pow(int(prow[0]) % p, -1, p))
            m = np.fmod(panel[kb + 1 :, j] * inv, fp)
            L[kb + 1 :, kb] = m
            if j + 1 < b:
                panel[kb + 1 :, j + 1 :] -= np.outer(m, prow[1:])
            panel[kb + 1 :, j] = 0.0
            kb += 1
        rank += kb
        rest = A[order, b:]
        if kb and rest.shape[1]:
            top = rest[:kb]
            # forward substitution with the unit lower triangle L[:kb, :kb]
            for t in range(1, kb):
                top[t] = np.fmod(top[t] - np.fmod(L[t, :t] @ top[:t], fp), fp)
            bottom = rest[kb:]
            if bottom.shape[0]:
                bottom = np.fmod(bottom - np.fmod(L[kb:, :kb] @ top, fp), fp)
            A = bottom
        else:
            A = rest[kb:]
    return rank
