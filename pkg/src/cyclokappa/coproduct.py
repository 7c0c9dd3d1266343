r"""
Goncharov's coproduct on formal iterated-integral symbols.

A letter is either ``ZERO`` (the letter 0) or an exponent ``m`` standing
for ``zeta_N^m``.  Only two normal-form rules are used: a word with empty
middle is the unit 1, and a word whose middle is nonempty and entirely 0
vanishes.  No shuffle, reversal or path-composition identities are
applied, so all comparisons are syntactic.

Products in the left slot are :class:`SymbolMonomial` (sorted tuples of
words); the unit is the empty tuple.  A tensor is a dict mapping a tuple
of slots to a coefficient, each slot being a monomial; for ``Delta`` the
right slot holds at most one word.

EXAMPLES::

    >>> w = parse_word("I(e1; e2, e3; e4)", 5)
    >>> print(render_tensor(goncharov_coproduct(w)))
    1 ⊗ I(e1; e2, e3; e4)
    + I(e1; e2; e3) ⊗ I(e1; e3; e4)
    + I(e2; e3; e4) ⊗ I(e1; e2; e4)
    + I(e1; e2, e3; e4) ⊗ 1
"""
from __future__ import annotations

import re
from itertools import combinations
from math import comb
from typing import NamedTuple, Optional

from .exactlinalg import add_into

ZERO = None


class IIWord(NamedTuple):
    """``I(a0; middle; a_end)``; letters are ``ZERO`` or exponents."""

    a0: Optional[int]
    middle: tuple
    a_end: Optional[int]

    @property
    def weight(self) -> int:
        return len(self.middle)

    @property
    def depth(self) -> int:
        return sum(1 for a in self.middle if a is not ZERO)

    def sort_key(self):
        return (self.weight,) + tuple(_lkey(a) for a in (self.a0,) + self.middle + (self.a_end,))

    def __str__(self):
        mid = ", ".join(_lstr(a) for a in self.middle)
        return f"I({_lstr(self.a0)}; {mid}; {_lstr(self.a_end)})" if mid else f"I({_lstr(self.a0)}; ; {_lstr(self.a_end)})"


def _lkey(a):
    return -1 if a is ZERO else a


def _lstr(a) -> str:
    if a is ZERO:
        return "0"
    return "1" if a == 0 else f"e{a}"


SymbolMonomial = tuple  # sorted tuple of IIWord; () is the unit
ONE: SymbolMonomial = ()


def monomial(*words: IIWord) -> SymbolMonomial:
    return tuple(sorted(words, key=IIWord.sort_key))


def mono_weight(m: SymbolMonomial) -> int:
    return sum(w.weight for w in m)


def mono_depth(m: SymbolMonomial) -> int:
    return sum(w.depth for w in m)


def normalize(w: IIWord) -> dict:
    """Normal form as an algebra element ``{monomial: coeff}``.

    >>> normalize(parse_word("I(0; ; 1)", 4))
    {(): 1}
    >>> normalize(parse_word("I(0; 0, 0; 1)", 4))
    {}
    """
    if not w.middle:
        return {ONE: 1}
    if all(a is ZERO for a in w.middle):
        return {}
    return {(w,): 1}


def _mul_monomials(a: SymbolMonomial, b: SymbolMonomial) -> SymbolMonomial:
    return monomial(*a, *b)


def normalize_product(words) -> Optional[SymbolMonomial]:
    """Product of normalized words, or ``None`` if it vanishes."""
    out = []
    for w in words:
        n = normalize(w)
        if not n:
            return None
        (m,) = n
        out.extend(m)
    return monomial(*out)


def goncharov_coproduct(w: IIWord) -> dict:
    """``Delta(w)`` as ``{(left_monomial, right_monomial): coeff}``."""
    a = (w.a0,) + tuple(w.middle) + (w.a_end,)
    k = len(w.middle)
    out: dict = {}
    for l in range(k + 1):
        for sub in combinations(range(1, k + 1), l):
            idx = (0,) + sub + (k + 1,)
            left = normalize_product(
                IIWord(a[idx[j]], a[idx[j] + 1 : idx[j + 1]], a[idx[j + 1]]) for j in range(l + 1)
            )
            if left is None:
                continue
            right = normalize_product([IIWord(a[0], tuple(a[i] for i in sub), a[k + 1])])
            if right is None:
                continue
            add_into(out, {(left, right): 1}, 1)
    return out


def coproduct_monomial(m: SymbolMonomial) -> dict:
    """``Delta`` extended multiplicatively to a monomial."""
    out = {(ONE, ONE): 1}
    for w in m:
        nxt: dict = {}
        dw = goncharov_coproduct(w)
        for (l1, r1), c1 in out.items():
            for (l2, r2), c2 in dw.items():
                add_into(nxt, {(_mul_monomials(l1, l2), _mul_monomials(r1, r2)): 1}, c1 * c2)
        out = nxt
    return out


def coassociativity_defect(w: IIWord) -> dict:
    """``(Delta (x) id) Delta(w) - (id (x) Delta) Delta(w)``; empty when coassociative."""
    out: dict = {}
    for (left, right), c in goncharov_coproduct(w).items():
        for (a, b), c2 in coproduct_monomial(left).items():
            add_into(out, {(a, b, right): 1}, c * c2)
        for (b, r), c2 in coproduct_monomial(right).items():
            add_into(out, {(left, b, r): 1}, -c * c2)
    return out


# --- depth-leading formula ----------------------------------------------------------


def canonical_shape(w: IIWord, N: int):
    """Return ``(eps_1..eps_{d+1}, l_0..l_d)`` for
    ``I(0; {0}^l0, eps_1, {0}^l1, ..., eps_d, {0}^ld; eps_{d+1})``."""
    if w.a0 is not ZERO or w.a_end is ZERO:
        raise ValueError(f"{w} is not of the shape I(0; ...; eps)")
    eps, ls = [], [0]
    for a in w.middle:
        if a is ZERO:
            ls[-1] += 1
        else:
            eps.append(a % N)
            ls.append(0)
    eps.append(w.a_end % N)
    return tuple(eps), tuple(ls)


def word_from_shape(eps, ls, end) -> IIWord:
    mid: list = [ZERO] * ls[0]
    for e, l in zip(eps, ls[1:]):
        mid.append(e)
        mid.extend([ZERO] * l)
    return IIWord(ZERO, tuple(mid), end)


def depth_leading_coproduct(w: IIWord, N: int) -> dict:
    """Explicit right-hand side of the depth-leading coproduct formula.

    Left factors always have the shape ``I(0; x, {0}^r; 1)``.

    >>> t = depth_leading_coproduct(parse_word("I(0; e1; e2)", 5), 5)
    >>> print(render_tensor(t))
    1 ⊗ I(0; e1; e2)
    + I(0; e4; 1) ⊗ 1
    """
    allz = normalize(w)
    if not allz:
        return {}
    eps, ls = canonical_shape(w, N)
    d = len(eps) - 1
    out: dict = {(ONE, (w,)): 1}
    end = eps[d]
    for i in range(1, d + 1):
        li, lp = ls[i], ls[i - 1]
        for r in range(li, lp + li + 1):
            c = (-1) ** (r - li) * comb(r, li)
            left = IIWord(ZERO, ((eps[i - 1] - eps[i]) % N,) + (ZERO,) * r, 0)
            new_eps = eps[: i - 1] + eps[i:d]
            new_ls = ls[: i - 1] + (lp + li - r,) + ls[i + 1 :]
            right = normalize_product([word_from_shape(new_eps, new_ls, end)])
            if right is not None:
                add_into(out, {((left,), right): 1}, c)
    for i in range(1, d):
        li, ln = ls[i], ls[i + 1]
        for r in range(li, li + ln + 1):
            c = -((-1) ** li) * comb(r, li)
            left = IIWord(ZERO, ((eps[i] - eps[i - 1]) % N,) + (ZERO,) * r, 0)
            new_eps = eps[:i] + eps[i + 1 : d]
            new_ls = ls[:i] + (li + ln - r,) + ls[i + 2 :]
            right = normalize_product([word_from_shape(new_eps, new_ls, end)])
            if right is not None:
                add_into(out, {((left,), right): 1}, c)
    return out


# --- text ----------------------------------------------------------------------------


class WordParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(I)|(\()|(\))|(;)|(,)|(e\d+)|(\d+))")


def parse_word(text: str, N: int) -> IIWord:
    """Parse ``I(a0; a1, ..., ak; a_end)``.

    Letters are ``0`` (the letter zero), ``1`` (``zeta^0``) and ``eK``
    (``zeta_N^K`` with ``0 <= K < N``).

    >>> parse_word("I(0; e1, 0, e3; 1)", 4)
    IIWord(a0=None, middle=(1, None, 3), a_end=0)
    """
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            while text[pos].isspace():
                pos += 1
            raise WordParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        toks.append((m.lastindex, m.group(m.lastindex), start))
        pos = m.end()
    toks.append((0, "", len(text)))
    it = iter(toks)
    cur = next(it)

    def expect(kind, what):
        nonlocal cur
        if cur[0] != kind:
            raise WordParseError(f"expected {what}", cur[2])
        tok = cur
        cur = next(it)
        return tok

    def letter():
        nonlocal cur
        kind, val, at = cur
        if kind == 6:
            K = int(val[1:])
            if not 0 <= K < N:
                raise WordParseError(f"letter {val} is not in mu_{N}", at)
            cur = next(it)
            return K
        if kind == 7:
            if val == "0":
                cur = next(it)
                return ZERO
            if val == "1":
                cur = next(it)
                return 0
            raise WordParseError(f"letter {val} is not 0, 1 or eK", at)
        raise WordParseError("expected a letter", at)

    expect(1, "'I'")
    expect(2, "'('")
    a0 = letter()
    expect(4, "';'")
    middle = []
    if cur[0] != 4:
        middle.append(letter())
        while cur[0] == 5:
            cur = next(it)
            middle.append(letter())
    expect(4, "';'")
    a_end = letter()
    expect(3, "')'")
    if cur[0] != 0:
        raise WordParseError("trailing input", cur[2])
    return IIWord(a0, tuple(middle), a_end)


def render_monomial(m: SymbolMonomial) -> str:
    return " ".join(str(w) for w in m) if m else "1"


def _term_key(item):
    slots, _ = item
    return tuple(tuple(w.sort_key() for w in s) for s in slots)


def render_tensor(t: dict) -> str:
    """Canonical text, terms sorted by slot keys; ``0`` for the empty tensor."""
    if not t:
        return "0"
    lines = []
    for n, (slots, c) in enumerate(sorted(t.items(), key=_term_key)):
        body = " ⊗ ".join(render_monomial(s) for s in slots)
        if c == 1:
            s = body
        elif c == -1:
            s = "-" + body
        else:
            s = f"{c}*{body}"
        if n:
            s = "- " + s[1:] if s.startswith("-") else "+ " + s
        lines.append(s)
    return "\n".join(lines)
