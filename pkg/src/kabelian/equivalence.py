"""k-Abelian equivalence of finite words.

The production decision uses the class signature: word length, the prefix of
length ``k - 1`` and the counts of all factors of length exactly ``k``. Equal
length-``k`` counts together with equal ``(k-1)``-prefixes force equal counts
of every shorter factor, so the signature is a complete invariant. The slower
definitional check (counts of every factor of length at most ``k``) is kept
as an oracle.

``k`` is a positive int or :data:`INF`; ``INF``-equivalence is equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Sequence, Union

from .words import Alphabet, Word, WordLike, coerce, count_table, occurrences

INF = math.inf
K = Union[int, float]


def parse_k(text: str | int | float) -> K:
    if isinstance(text, (int, float)):
        k = text
    elif text.strip().lower() in ("inf", "infinity", "+inf", "oo"):
        return INF
    else:
        k = int(text)
    if k != INF and (k < 1 or int(k) != k):
        raise ValueError(f"k must be a positive integer or 'inf', got {text!r}")
    return k if k == INF else int(k)


def k_label(k: K) -> str | int:
    return "inf" if k == INF else int(k)


def _check_k(k: K) -> None:
    if k != INF and (not isinstance(k, int) or k < 1):
        raise ValueError(f"k must be a positive integer or INF, got {k!r}")


def signature_key(seq: Sequence[int], k: K) -> tuple:
    """Hashable class key of a raw symbol tuple; the hot-loop form of
    :func:`signature`."""
    seq = tuple(seq)
    n = len(seq)
    if k == INF or n <= k - 1:
        return (n, seq, ())
    counts = tuple(sorted(count_table(seq, k).items())) if n >= k else ()
    return (n, seq[:k - 1], counts)


@dataclass(frozen=True)
class ClassSignature:
    k: K
    word_length: int
    prefix: tuple[int, ...]
    counts: tuple[tuple[tuple[int, ...], int], ...]
    alphabet: Alphabet

    def describe(self) -> dict:
        names = self.alphabet.symbols
        sep = "" if self.alphabet.single_char else ","
        fmt = lambda t: sep.join(names[s] for s in t)  # noqa: E731
        return {
            "k": k_label(self.k),
            "length": self.word_length,
            "prefix": fmt(self.prefix),
            "counts": {fmt(t): c for t, c in self.counts},
        }


def signature(w: WordLike, k: K) -> ClassSignature:
    (w,) = coerce(w)
    _check_k(k)
    n, pre, counts = signature_key(w.symbols, k)
    return ClassSignature(k, n, pre, counts, w.alphabet)


@dataclass(frozen=True)
class KSpectrum:
    k: K
    word_length: int
    prefix: Word
    suffix: Word
    counts_k: dict  # factor tuple -> count; factors that do not occur are omitted


def spectrum(w: WordLike, k: K) -> KSpectrum:
    (w,) = coerce(w)
    _check_k(k)
    n = len(w)
    if k == INF:
        return KSpectrum(k, n, w, w, {})
    j = min(n, k - 1)
    counts = dict(sorted(count_table(w.symbols, k).items())) if n >= k else {}
    return KSpectrum(k, n, w[:j], w[n - j:], counts)


def k_abelian_equivalent(u: WordLike, v: WordLike, k: K) -> bool:
    u, v = coerce(u, v)
    _check_k(k)
    if len(u) != len(v):
        return False
    return signature_key(u.symbols, k) == signature_key(v.symbols, k)


def _candidate_lengths(u: Word, v: Word, k: K) -> range:
    longest = max(len(u), len(v))
    top = longest if k == INF else min(int(k), longest)
    return range(1, top + 1)


def k_abelian_equivalent_definitional(u: WordLike, v: WordLike, k: K) -> bool:
    """Brute-force oracle: compare ``|u|_x`` and ``|v|_x`` for every
    non-empty ``x`` of length at most ``k`` by direct scanning."""
    u, v = coerce(u, v)
    m = u.alphabet.size
    for j in _candidate_lengths(u, v, k):
        for x in product(range(m), repeat=j):
            xw = u.with_symbols(x)
            if occurrences(u, xw) != occurrences(v, xw):
                return False
    return True


def definitional_key(w: Word, k: int) -> tuple:
    """Vector of ``|w|_x`` over all ``x`` in ``A^{<=k}`` (lexicographic),
    computed by direct scanning. Oracle only."""
    m = w.alphabet.size
    out = []
    for j in range(1, k + 1):
        for x in product(range(m), repeat=j):
            out.append(occurrences(w, w.with_symbols(x)))
    return tuple(out)


def distinguishing_factor(u: WordLike, v: WordLike, k: K) -> Word | None:
    """Shortest (then lexicographically least) ``x`` with ``|x| <= k`` and
    ``|u|_x != |v|_x``; ``None`` when ``u ~k v``."""
    u, v = coerce(u, v)
    _check_k(k)
    for j in _candidate_lengths(u, v, k):
        cu, cv = count_table(u.symbols, j), count_table(v.symbols, j)
        diff = [x for x in set(cu) | set(cv) if cu[x] != cv[x]]
        if diff:
            return u.with_symbols(min(diff))
    return None


def abelian_vector(seq: Sequence[int], m: int) -> tuple[int, ...]:
    counts = [0] * m
    for s in seq:
        counts[s] += 1
    return tuple(counts)


def r_k_key(seq: Sequence[int], k: K, m: int) -> tuple:
    """Class key of the relation R_k: Parikh vector plus the ``k - 1`` prefix
    and suffix; words shorter than ``k - 1`` are their own class."""
    seq = tuple(seq)
    n = len(seq)
    if k == INF or n < k - 1:
        return (n, seq)
    j = int(k) - 1
    return (n, abelian_vector(seq, m), seq[:j], seq[n - j:])


def r_k_equivalent(u: WordLike, v: WordLike, k: K) -> bool:
    u, v = coerce(u, v)
    _check_k(k)
    m = u.alphabet.size
    return r_k_key(u.symbols, k, m) == r_k_key(v.symbols, k, m)


def characterizations_agree(u: WordLike, v: WordLike, k: int) -> bool:
    """Evaluate the six equivalent conditions on a pair with equal
    length-``k`` factor counts and report whether they all agree."""
    u, v = coerce(u, v)
    if k == INF or not isinstance(k, int) or k < 1:
        raise ValueError("characterizations need a finite positive k")
    if len(u) < k - 1 or len(v) < k - 1:
        raise ValueError("both words need length at least k - 1")
    if count_table(u.symbols, k) != count_table(v.symbols, k):
        raise ValueError("words must have equal counts of every length-k factor")

    a, b = u.symbols, v.symbols
    m = u.alphabet.size
    j = k - 1

    def same_counts(length: int) -> bool:
        return all(
            occurrences(u, u.with_symbols(s)) == occurrences(v, v.with_symbols(s))
            for s in product(range(m), repeat=length)
        )

    def pref(t, i):
        return t[:i]

    def suff(t, i):
        return t[len(t) - i:] if i else ()

    conditions = [
        all(same_counts(i) for i in range(1, j + 1)),
        same_counts(j) if j else True,
        pref(a, j) == pref(b, j) and suff(a, j) == suff(b, j),
        pref(a, j) == pref(b, j),
        suff(a, j) == suff(b, j),
        any(pref(a, i) == pref(b, i) and suff(a, j - i) == suff(b, j - i) for i in range(j + 1)),
    ]
    return all(conditions) or not any(conditions)
