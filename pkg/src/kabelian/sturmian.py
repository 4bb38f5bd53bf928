"""Structural tools for Sturmian words: special factors, swaps, the sorted
factor chain, and the classification of k-Abelian equivalent pairs of
length ``2k``."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .equivalence import INF, K, abelian_vector, signature_key
from .words import (
    Alphabet, Word, WordLike, as_word, balanced_symbols, coerce, factor_set,
)


class StructuralError(RuntimeError):
    """A pair of equivalent words did not have the predicted shape."""


@dataclass
class SpecialFactorReport:
    n: int
    right_special: set[Word] = field(default_factory=set)
    left_special: set[Word] = field(default_factory=set)

    @property
    def bispecial(self) -> set[Word]:
        return self.right_special & self.left_special


def special_factors(prefix: WordLike, n: int) -> SpecialFactorReport:
    prefix = as_word(prefix)
    if n < 0 or n + 1 > len(prefix):
        raise ValueError(f"window of length {len(prefix)} is too short for n = {n}")
    right: dict[tuple, set] = {}
    left: dict[tuple, set] = {}
    for f in factor_set(prefix.symbols, n + 1):
        right.setdefault(f[:-1], set()).add(f[-1])
        left.setdefault(f[1:], set()).add(f[0])
    report = SpecialFactorReport(n)
    report.right_special = {prefix.with_symbols(u) for u, ext in right.items() if len(ext) > 1}
    report.left_special = {prefix.with_symbols(u) for u, ext in left.items() if len(ext) > 1}
    return report


def swap(w: WordLike, i: int) -> Word:
    """Exchange the ``01`` at positions ``i, i+1`` (1-based) into ``10``, or for
    ``i = |w|`` turn a final ``0`` into ``1``."""
    w = as_word(w)
    if w.alphabet.size != 2:
        raise ValueError("swap is defined on binary words")
    s, n = list(w.symbols), len(w)
    if 1 <= i < n and s[i - 1] == 0 and s[i] == 1:
        s[i - 1], s[i] = 1, 0
    elif i == n and n >= 1 and s[-1] == 0:
        s[-1] = 1
    else:
        raise ValueError(f"swap {i} is undefined on {w}")
    return w.with_symbols(s)


def _swap_index(u: tuple, v: tuple) -> int:
    n = len(u)
    hits = []
    for i in range(1, n + 1):
        s = list(u)
        if i < n and s[i - 1] == 0 and s[i] == 1:
            s[i - 1], s[i] = 1, 0
        elif i == n and s[-1] == 0:
            s[-1] = 1
        else:
            continue
        if tuple(s) == v:
            hits.append(i)
    if len(hits) != 1:
        raise ValueError(f"consecutive factors are not related by a unique swap ({hits})")
    return hits[0]


@dataclass(frozen=True)
class FactorChain:
    n: int
    factors: tuple[Word, ...]
    sigma: tuple[int, ...]


def factor_chain(prefix: WordLike, n: int) -> FactorChain:
    """Sorted length-``n`` factors ``u_1 < ... < u_{n+1}`` and the swap
    indices ``sigma`` with ``u_{i+1} = swap_{sigma(i)}(u_i)``."""
    prefix = as_word(prefix)
    if prefix.alphabet.size != 2:
        raise ValueError("factor chains are defined for binary words")
    fs = sorted(factor_set(prefix.symbols, n))
    if len(fs) != n + 1:
        raise ValueError(f"expected {n + 1} factors of length {n}, found {len(fs)}")
    sigma = tuple(_swap_index(fs[i], fs[i + 1]) for i in range(n))
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"swap indices {sigma} are not a permutation")
    return FactorChain(n, tuple(prefix.with_symbols(f) for f in fs), sigma)


@dataclass(frozen=True)
class EquivalentPair:
    u: Word
    v: Word
    x: Word

    def as_dict(self) -> dict:
        return {"u": str(self.u), "v": str(self.v), "x": str(self.x)}


def classify_length_2k_pairs(m: int, k: int, budget: int = 10_000_000) -> list[EquivalentPair]:
    """All unordered pairs ``u < v`` of distinct k-Abelian equivalent words of
    length ``2k`` over ``m`` letters, each checked to be ``x a b x~`` /
    ``x b a x~`` with ``x`` right special in a Sturmian word.

    "Right special in a Sturmian word" is tested as: ``u``, ``v``, ``xa`` and
    ``xb`` are all balanced and use at most two letters.
    """
    if k < 1 or m < 1:
        raise ValueError("m and k must be positive")
    if m ** (2 * k) > budget:
        raise ValueError(f"{m}^{2 * k} words exceed the budget of {budget}")
    alphabet = Alphabet.of_size(m)
    classes: dict[tuple, list[tuple]] = {}
    for w in product(range(m), repeat=2 * k):
        classes.setdefault(signature_key(w, k), []).append(w)
    pairs = []
    for members in classes.values():
        for i, u in enumerate(members):
            for v in members[i + 1:]:
                x = _decompose(u, v, k)
                pairs.append(EquivalentPair(Word(alphabet, u), Word(alphabet, v), Word(alphabet, x)))
    pairs.sort(key=lambda p: (p.u.symbols, p.v.symbols))
    return pairs


def _decompose(u: tuple, v: tuple, k: int) -> tuple:
    x = u[:k - 1]
    xr = tuple(reversed(x))
    a, b = u[k - 1], u[k]
    shaped = (
        a != b and v[:k - 1] == x and v[k - 1] == b and v[k] == a
        and u[k + 1:] == xr and v[k + 1:] == xr
    )
    if not shaped:
        raise StructuralError(f"pair {u} / {v} is not of the form x ab x~ / x ba x~")
    if not all(balanced_symbols(w) for w in (u, v, x + (a,), x + (b,))):
        raise StructuralError(f"pair {u} / {v}: x = {x} is not right special in a Sturmian word")
    return x


def same_sturmian_equivalence(u: WordLike, v: WordLike, k: K, prefix: WordLike) -> bool:
    """k-Abelian equivalence of two factors of one Sturmian word, decided by
    Abelian equivalence plus a shared prefix and suffix of length
    ``min(|u|, k - 1)``."""
    u, v, prefix = coerce(u, v, prefix)
    have = factor_set(prefix.symbols, len(u)) | factor_set(prefix.symbols, len(v))
    for w in (u, v):
        if w.symbols not in have:
            raise ValueError(f"{w} is not a factor of the given prefix")
    if len(u) != len(v):
        return False
    n = len(u)
    j = n if k == INF else min(n, int(k) - 1)
    a, b = u.symbols, v.symbols
    return (
        abelian_vector(a, u.alphabet.size) == abelian_vector(b, u.alphabet.size)
        and a[:j] == b[:j]
        and a[n - j:] == b[n - j:]
    )
