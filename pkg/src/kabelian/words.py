"""Finite words over an ordered alphabet.

Symbols are stored as small integer indices into an :class:`Alphabet`, so a
word is essentially a tuple of ints tagged with the alphabet it lives in.
Most functions here accept either a :class:`Word` or a plain string; strings
are parsed against the alphabet of any :class:`Word` argument, or against an
alphabet inferred from the strings themselves.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence, Union

Symbols = tuple[int, ...]


class AlphabetMismatch(ValueError):
    """Raised when words over different alphabets are combined."""


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.symbols:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"alphabet symbols are not distinct: {self.symbols}")

    @property
    def size(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise AlphabetMismatch(
                f"symbol {symbol!r} is not in alphabet {self.symbols}"
            ) from None

    @classmethod
    def of_size(cls, m: int) -> "Alphabet":
        """The alphabet ``0, 1, ..., m-1`` (letters ``a..z`` beyond ten)."""
        if m < 1:
            raise ValueError("alphabet size must be positive")
        if m <= 10:
            return cls(tuple(str(i) for i in range(m)))
        if m <= 26:
            return cls(tuple(chr(ord("a") + i) for i in range(m)))
        return cls(tuple(f"s{i}" for i in range(m)))

    @property
    def single_char(self) -> bool:
        return all(len(s) == 1 for s in self.symbols)


BINARY = Alphabet(("0", "1"))


@dataclass(frozen=True)
class Word:
    alphabet: Alphabet
    symbols: Symbols

    def __post_init__(self) -> None:
        m = self.alphabet.size
        if any(not 0 <= s < m for s in self.symbols):
            raise AlphabetMismatch("word contains symbols outside its alphabet")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.alphabet, self.symbols[item])
        return self.symbols[item]

    def __add__(self, other: "Word | str") -> "Word":
        a, b = coerce(self, other)
        return Word(a.alphabet, a.symbols + b.symbols)

    def __lt__(self, other: "Word") -> bool:
        _same_alphabet(self, other)
        return self.symbols < other.symbols

    def __str__(self) -> str:
        names = self.alphabet.symbols
        sep = "" if self.alphabet.single_char else ","
        return sep.join(names[s] for s in self.symbols)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def with_symbols(self, symbols: Iterable[int]) -> "Word":
        return Word(self.alphabet, tuple(symbols))


WordLike = Union[Word, str]


def parse_word(text: str, alphabet: Alphabet | None = None, sep: str | None = None) -> Word:
    """Parse ``text`` into a word.

    With ``sep`` the text is split on it (multi-character symbols); otherwise
    every character is one symbol. The alphabet defaults to the sorted set of
    symbols that occur.
    """
    text = text.strip()
    if sep:
        parts = [p.strip() for p in text.split(sep)] if text else []
    else:
        parts = list(text)
    if alphabet is None:
        alphabet = infer_alphabet(parts)
    return Word(alphabet, tuple(alphabet.index(p) for p in parts))


def infer_alphabet(symbols: Iterable[str]) -> Alphabet:
    """Sorted set of the symbols seen; anything within ``{0, 1}`` is binary."""
    letters = sorted(set(symbols))
    if set(letters) <= {"0", "1"}:
        return BINARY
    return Alphabet(tuple(letters))


def _same_alphabet(*words: Word) -> Alphabet:
    alpha = words[0].alphabet
    for w in words[1:]:
        if w.alphabet != alpha:
            raise AlphabetMismatch(
                f"alphabets differ: {alpha.symbols} vs {w.alphabet.symbols}"
            )
    return alpha


def coerce(*items: WordLike, alphabet: Alphabet | None = None) -> tuple[Word, ...]:
    """Turn a mix of words and strings into words over one common alphabet."""
    explicit = [w for w in items if isinstance(w, Word)]
    if explicit:
        alpha = _same_alphabet(*explicit)
        if alphabet is not None and alphabet != alpha:
            raise AlphabetMismatch("declared alphabet differs from the words' alphabet")
    elif alphabet is not None:
        alpha = alphabet
    else:
        alpha = infer_alphabet("".join(items))  # type: ignore[arg-type]
    return tuple(w if isinstance(w, Word) else parse_word(w, alpha) for w in items)


def as_word(w: WordLike, alphabet: Alphabet | None = None) -> Word:
    return coerce(w, alphabet=alphabet)[0]


def all_words(alphabet: Alphabet | int, n: int) -> Iterable[Word]:
    """Every word of length ``n`` in lexicographic order."""
    if isinstance(alphabet, int):
        alphabet = Alphabet.of_size(alphabet)
    for t in product(range(alphabet.size), repeat=n):
        yield Word(alphabet, t)


# -- tuple-level kernels (used by the hot loops elsewhere) ---------------------

def count_table(seq: Sequence[int], n: int) -> Counter:
    """Occurrence counts of every length-``n`` factor, one sliding pass."""
    if n <= 0:
        raise ValueError("factor length must be positive")
    seq = tuple(seq)
    return Counter(seq[i:i + n] for i in range(len(seq) - n + 1))


def factor_set(seq: Sequence[int], n: int) -> set[Symbols]:
    seq = tuple(seq)
    return {seq[i:i + n] for i in range(len(seq) - n + 1)}


def balanced_symbols(seq: Sequence[int]) -> bool:
    """Balance test on a raw sequence using at most two distinct symbols.

    Equal-length windows may differ by at most one in the count of the
    first symbol; prefix sums make each window length a single pass.
    """
    seq = tuple(seq)
    letters = set(seq)
    if len(letters) > 2:
        return False
    if len(letters) < 2:
        return True
    a = min(letters)
    pref = [0]
    for s in seq:
        pref.append(pref[-1] + (s == a))
    n = len(seq)
    for length in range(1, n):
        counts = [pref[i + length] - pref[i] for i in range(n - length + 1)]
        if max(counts) - min(counts) > 1:
            return False
    return True


# -- public operations ---------------------------------------------------------

def occurrences(w: WordLike, x: WordLike) -> int:
    """Number of (possibly overlapping) occurrences of ``x`` in ``w``."""
    w, x = coerce(w, x)
    if len(x) == 0:
        raise ValueError("cannot count occurrences of the empty word")
    s, t, n = w.symbols, x.symbols, len(x)
    return sum(1 for i in range(len(s) - n + 1) if s[i:i + n] == t)


def reverse(w: WordLike) -> Word:
    w = as_word(w)
    return w.with_symbols(reversed(w.symbols))


def factors(w: WordLike, n: int) -> set[Word]:
    """Distinct factors of length ``n``; empty when ``n > |w|``."""
    w = as_word(w)
    if n < 0:
        raise ValueError("factor length must be non-negative")
    if n > len(w):
        return set()
    if n == 0:
        return {w.with_symbols(())}
    return {w.with_symbols(f) for f in factor_set(w.symbols, n)}


def is_balanced(w: WordLike) -> bool:
    w = as_word(w)
    if w.alphabet.size != 2:
        raise ValueError("balance is defined here for binary alphabets only")
    return balanced_symbols(w.symbols)


def prefix(w: Word, n: int) -> Word:
    return w[:n]


def suffix(w: Word, n: int) -> Word:
    return w[len(w) - n:] if n > 0 else w[:0]
