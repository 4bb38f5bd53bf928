"""k-Abelian powers and (k, B)-balance of word prefixes.

Positions are 0-based indices into the analysed prefix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from .complexity import k_complexity
from .equivalence import INF, K, k_label, signature_key
from .words import Word, WordLike, as_word


@dataclass(frozen=True)
class PositionSet:
    """A set of positions: everything, an arithmetic progression
    ``start + step*j``, a residue class, or an explicit finite set."""

    kind: str = "all"
    start: int = 0
    step: int = 1
    members: frozenset[int] = field(default_factory=frozenset)

    def __contains__(self, i: int) -> bool:
        if i < 0:
            return False
        if self.kind == "all":
            return True
        if self.kind == "ap":
            return i >= self.start and (i - self.start) % self.step == 0
        if self.kind == "mod":
            return i % self.step == self.start % self.step
        return i in self.members

    def mask(self, length: int) -> np.ndarray:
        idx = np.arange(length)
        if self.kind == "all":
            return np.ones(length, dtype=bool)
        if self.kind == "ap":
            return (idx >= self.start) & ((idx - self.start) % self.step == 0)
        if self.kind == "mod":
            return idx % self.step == self.start % self.step
        out = np.zeros(length, dtype=bool)
        for i in self.members:
            if 0 <= i < length:
                out[i] = True
        return out

    def density(self, window: int) -> float:
        return float(self.mask(window).mean()) if window else 0.0

    @classmethod
    def everything(cls) -> "PositionSet":
        return cls("all")

    @classmethod
    def progression(cls, start: int, step: int) -> "PositionSet":
        if step < 1 or start < 0:
            raise ValueError("progressions need start >= 0 and step >= 1")
        return cls("ap", start, step)

    @classmethod
    def residue(cls, r: int, modulus: int) -> "PositionSet":
        if modulus < 1:
            raise ValueError("modulus must be positive")
        return cls("mod", r % modulus, modulus)

    @classmethod
    def finite(cls, members: Iterable[int]) -> "PositionSet":
        return cls("set", members=frozenset(int(i) for i in members))

    @classmethod
    def parse(cls, spec: str) -> "PositionSet":
        """``all``, ``ap:START,STEP``, ``mod:R,M``, ``set:1,2,3`` or ``set:@path``."""
        spec = spec.strip()
        if spec == "all":
            return cls.everything()
        kind, _, body = spec.partition(":")
        if kind == "ap":
            a, d = (int(x) for x in body.split(","))
            return cls.progression(a, d)
        if kind == "mod":
            r, mod = (int(x) for x in body.split(","))
            return cls.residue(r, mod)
        if kind == "set":
            if body.startswith("@") or Path(body).is_file():
                text = Path(body.lstrip("@")).read_text()
            else:
                text = body
            return cls.finite(int(t) for t in text.replace(",", " ").split())
        raise ValueError(f"unrecognised position set {spec!r}")


@dataclass(frozen=True)
class PowerWitness:
    start: int
    block_length: int
    exponent: int
    k: K
    blocks: tuple[Word, ...]

    def as_dict(self) -> dict:
        return {
            "start": self.start, "block_length": self.block_length,
            "N": self.exponent, "k": k_label(self.k),
            "blocks": [str(b) for b in self.blocks],
        }


def is_k_power(w: WordLike, N: int, k: K) -> bool:
    """Whether ``w`` splits into ``N`` equal-length, pairwise ``~k`` blocks."""
    w = as_word(w)
    if N < 2:
        raise ValueError("a power needs N >= 2 blocks")
    if len(w) % N:
        raise ValueError(f"N = {N} does not divide |w| = {len(w)}")
    ell = len(w) // N
    s = w.symbols
    first = signature_key(s[:ell], k)
    return all(signature_key(s[j * ell:(j + 1) * ell], k) == first for j in range(1, N))


def _window_keys(seq: np.ndarray, m: int, k: int, ell: int) -> np.ndarray:
    """One row per window of length ``ell`` (``ell >= k``): the code of its
    ``(k-1)``-prefix followed by its counts of every length-``k`` factor."""
    L = len(seq)
    weights = m ** np.arange(k - 1, -1, -1, dtype=np.int64)
    grams = np.lib.stride_tricks.sliding_window_view(seq, k) @ weights
    onehot = np.zeros((len(grams) + 1, m ** k), dtype=np.int32)
    onehot[np.arange(1, len(grams) + 1), grams] = 1
    cum = np.cumsum(onehot, axis=0)
    starts = np.arange(L - ell + 1)
    counts = cum[starts + ell - k + 1] - cum[starts]
    if k > 1:
        pre = np.lib.stride_tricks.sliding_window_view(seq, k - 1)[starts] @ weights[1:]
    else:
        pre = np.zeros(len(starts), dtype=np.int64)
    return np.column_stack([pre, counts])


def _window_ids(symbols: tuple, k: K, ell: int) -> np.ndarray:
    ids: dict = {}
    out = [ids.setdefault(signature_key(symbols[i:i + ell], k), len(ids))
           for i in range(len(symbols) - ell + 1)]
    return np.array(out, dtype=np.int64)[:, None]


def _window_words(seq: np.ndarray, ell: int) -> np.ndarray:
    return np.lib.stride_tricks.sliding_window_view(seq, ell)


def find_power(
    prefix: WordLike, k: K, N: int, D: PositionSet | None = None, l_max: int = 200,
) -> PowerWitness | None:
    """Least ``(ell, i)`` such that the ``N`` blocks of length ``ell`` starting
    at ``i`` are pairwise ``~k`` and ``i, i+ell, ..., i+N*ell`` all lie in ``D``.

    A bounded search: ``None`` only means nothing was found up to ``l_max``.
    """
    prefix = as_word(prefix)
    if N < 1:
        raise ValueError("N must be positive")
    if D is None:
        D = PositionSet.everything()
    L = len(prefix)
    if l_max * N > L:
        raise ValueError(f"l_max * N = {l_max * N} exceeds the prefix length {L}")
    seq = np.array(prefix.symbols, dtype=np.int64)
    m = prefix.alphabet.size
    inD = D.mask(L + 1)
    for ell in range(1, l_max + 1):
        count = L - N * ell + 1  # admissible starts
        if count <= 0:
            break
        if k == INF or ell <= 2 * k - 1:
            # ~k on words of length <= 2k-1 is equality
            keys = _window_words(seq, ell)
        elif m ** k <= 4096:
            keys = _window_keys(seq, m, int(k), ell)
        else:
            keys = _window_ids(prefix.symbols, k, ell)
        starts = np.arange(count)
        ok = np.ones(count, dtype=bool)
        for j in range(N + 1):
            ok &= inD[starts + j * ell]
        for j in range(1, N):
            ok &= (keys[starts + j * ell] == keys[starts]).all(axis=1)
        hits = np.flatnonzero(ok)
        if len(hits):
            i = int(hits[0])
            blocks = tuple(prefix[i + j * ell:i + (j + 1) * ell] for j in range(N))
            return PowerWitness(i, ell, N, k, blocks)
    return None


@dataclass(frozen=True)
class BalanceReport:
    k: K
    B: int
    witness: tuple[Word, Word, Word] | None  # (u, v, x) with | |u|_x - |v|_x | = B
    window: int

    def as_dict(self) -> dict:
        w = None if self.witness is None else [str(t) for t in self.witness]
        return {"k": k_label(self.k), "B": self.B, "witness": w, "window": self.window}


def balance_bound(prefix: WordLike, k: int) -> BalanceReport:
    """Least ``B`` such that the prefix is (k, B)-balanced on its own factors."""
    prefix = as_word(prefix)
    if k == INF or k < 1:
        raise ValueError("balance needs a finite positive k")
    L = len(prefix)
    seq = np.array(prefix.symbols, dtype=np.int64)
    m = prefix.alphabet.size
    best, witness = 0, None
    for j in range(1, min(k, L) + 1):
        grams = _window_words(seq, j) @ (m ** np.arange(j - 1, -1, -1, dtype=np.int64))
        for code in np.unique(grams):
            occ = np.concatenate([[0], np.cumsum(grams == code)])
            for ell in range(j, L + 1):
                starts = np.arange(L - ell + 1)
                counts = occ[starts + ell - j + 1] - occ[starts]
                hi, lo = int(counts.argmax()), int(counts.argmin())
                spread = int(counts[hi] - counts[lo])
                if spread > best:
                    best = spread
                    x = prefix.with_symbols(_decode(int(code), m, j))
                    witness = (prefix[hi:hi + ell], prefix[lo:lo + ell], x)
    return BalanceReport(k, best, witness, L)


def _decode(code: int, m: int, j: int) -> tuple[int, ...]:
    out = []
    for _ in range(j):
        code, r = divmod(code, m)
        out.append(r)
    return tuple(reversed(out))


def balance_complexity_link(prefix: WordLike, k: int, n_max: int | None = None) -> bool:
    """Check ``P^(k)(n) <= (B+1)^K`` on the prefix, ``K = Card(A^{<=k})``.

    ``n`` ranges over ``1..n_max`` (default: up to 64, capped by the prefix).
    """
    prefix = as_word(prefix)
    B = balance_bound(prefix, k).B
    m = prefix.alphabet.size
    K_ = sum(m ** j for j in range(k + 1))
    limit = (B + 1) ** K_
    if n_max is None:
        n_max = min(len(prefix), 64)
    return all(k_complexity(prefix, k, n) <= limit for n in range(1, n_max + 1))
