"""Deterministic prefixes of infinite words.

Three families: lower mechanical words with rational slope (exact integer
arithmetic), fixed points of prolongable morphisms, and ultimately periodic
words ``U V V V ...``. A :class:`WordStream` bundles one of these with its
parameters and knows how long a window must be before every factor of a
given length is guaranteed to have shown up.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from .words import BINARY, Alphabet, Word, WordLike, coerce, factor_set, infer_alphabet


@dataclass(frozen=True)
class Morphism:
    alphabet: Alphabet
    images: tuple[tuple[int, ...], ...]  # images[a] = image of symbol a

    def __post_init__(self) -> None:
        if len(self.images) != self.alphabet.size:
            raise ValueError("a morphism needs exactly one image per symbol")
        if any(len(img) == 0 for img in self.images):
            raise ValueError("morphism images must be non-empty")

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, str], alphabet: Alphabet | None = None) -> "Morphism":
        if alphabet is None:
            alphabet = infer_alphabet(list(mapping) + list("".join(mapping.values())))
        missing = [a for a in alphabet.symbols if a not in mapping]
        if missing:
            raise ValueError(f"morphism has no image for {missing}")
        images = tuple(
            tuple(alphabet.index(c) for c in mapping[a]) for a in alphabet.symbols
        )
        return cls(alphabet, images)

    def apply(self, seq: Sequence[int]) -> tuple[int, ...]:
        out: list[int] = []
        for s in seq:
            out.extend(self.images[s])
        return tuple(out)

    def is_prolongable(self, seed: int) -> bool:
        img = self.images[seed]
        return len(img) >= 2 and img[0] == seed


FIBONACCI = Morphism(BINARY, ((0, 1), (0,)))
THUE_MORSE = Morphism(BINARY, ((0, 1), (1, 0)))


def _check_slope(p: int, q: int) -> tuple[int, int]:
    if q <= 0 or not 0 < p < q:
        raise ValueError(f"slope {p}/{q} is not in (0, 1)")
    g = gcd(p, q)
    return p // g, q // g


def mechanical_symbols(p: int, q: int, rho: int, start: int, stop: int) -> tuple[int, ...]:
    return tuple(
        ((i + 1) * p + rho) // q - (i * p + rho) // q for i in range(start, stop)
    )


def mechanical(p: int, q: int, rho: int = 0, length: int = 0) -> Word:
    """Length-``length`` prefix of the lower mechanical word of slope ``p/q``.

    ``s_i = floor(((i+1)p + rho)/q) - floor((ip + rho)/q)``. The word has period
    ``q``, so it is a faithful stand-in for a Sturmian word only for factor
    lengths up to :func:`mechanical_valid_length`.
    """
    p, q = _check_slope(p, q)
    return Word(BINARY, mechanical_symbols(p, q, rho, 0, length))


def mechanical_valid_length(p: int, q: int) -> int:
    """Largest ``n`` with ``n + 1`` distinct factors of length ``n`` (``q - 1``)."""
    _, q = _check_slope(p, q)
    return q - 1


def convergent(cf: Sequence[int]) -> Fraction:
    """Value of the finite continued fraction ``[a0; a1, a2, ...]``."""
    if not cf:
        raise ValueError("empty continued fraction")
    value = Fraction(cf[-1])
    for a in reversed(cf[:-1]):
        value = a + 1 / value
    return value


def morphic(mu: Morphism, seed: int | str, length: int) -> Word:
    """Length-``length`` prefix of the fixed point of ``mu`` starting at ``seed``."""
    if isinstance(seed, str):
        seed = mu.alphabet.index(seed)
    if not mu.is_prolongable(seed):
        raise ValueError("morphism is not prolongable on the seed symbol")
    return Word(mu.alphabet, _morphic_symbols(mu, seed, length))


def _morphic_symbols(mu: Morphism, seed: int, length: int) -> tuple[int, ...]:
    current: tuple[int, ...] = (seed,)
    while len(current) < length:
        nxt = mu.apply(current)
        if len(nxt) == len(current):
            raise ValueError("morphism iterates stopped growing")
        current = nxt
    return current[:length]


def ultimately_periodic(pre: WordLike, period: WordLike, length: int) -> Word:
    """Length-``length`` prefix of ``pre period period period ...``."""
    u, v = coerce(pre, period)
    if len(v) == 0:
        raise ValueError("the period must be non-empty")
    return Word(v.alphabet, _up_symbols(u.symbols, v.symbols, length))


def _up_symbols(u: Sequence[int], v: Sequence[int], length: int) -> tuple[int, ...]:
    out = list(u[:length])
    while len(out) < length:
        out.extend(v)
    return tuple(out[:length])


@dataclass(frozen=True)
class WordStream:
    """An infinite word given by a generator kind and its parameters.

    kind is ``"mechanical"`` (``p``, ``q``, ``rho``), ``"morphic"``
    (``morphism``, ``seed``) or ``"ultimately-periodic"`` (``pre``,
    ``period``).
    """

    kind: str
    alphabet: Alphabet
    params: dict = field(default_factory=dict, compare=False, hash=False)
    name: str = ""

    def prefix(self, length: int) -> Word:
        return Word(self.alphabet, self._symbols(length))

    def _symbols(self, length: int) -> tuple[int, ...]:
        p = self.params
        if self.kind == "mechanical":
            return mechanical_symbols(p["p"], p["q"], p["rho"], 0, length)
        if self.kind == "morphic":
            return _morphic_symbols(p["morphism"], p["seed"], length)
        if self.kind == "ultimately-periodic":
            return _up_symbols(p["pre"], p["period"], length)
        raise ValueError(f"unknown stream kind {self.kind!r}")

    @property
    def sturmian_bound(self) -> int | None:
        """Largest factor length at which the stream behaves like a Sturmian
        word; ``None`` when no bound applies (genuinely aperiodic morphic words,
        or words that are not claimed to be Sturmian)."""
        if self.kind == "mechanical":
            return self.params["q"] - 1
        return None

    def covered(self, window: int, n: int) -> bool:
        """Whether a prefix of length ``window`` contains every factor of
        length ``n`` of the infinite word."""
        if n > window:
            return False
        p = self.params
        if self.kind == "mechanical":
            return window >= p["q"] + n - 1
        if self.kind == "ultimately-periodic":
            return window >= len(p["pre"]) + len(p["period"]) + n - 1
        # morphic: saturation of the factor set across two successive iterates
        seq = self._symbols(window)
        longer = p["morphism"].apply(seq)
        if len(longer) <= len(seq):
            longer = self._symbols(2 * window)
        return len(factor_set(seq, n)) == len(factor_set(longer, n))

    def coverage(self, window: int, n_max: int) -> list[bool]:
        return [self.covered(window, n) for n in range(n_max + 1)]


def mechanical_stream(p: int, q: int, rho: int = 0) -> WordStream:
    p, q = _check_slope(p, q)
    return WordStream("mechanical", BINARY, {"p": p, "q": q, "rho": rho}, f"mech:{p}/{q}:{rho}")


def morphic_stream(mu: Morphism, seed: int | str, name: str = "") -> WordStream:
    if isinstance(seed, str):
        seed = mu.alphabet.index(seed)
    if not mu.is_prolongable(seed):
        raise ValueError("morphism is not prolongable on the seed symbol")
    return WordStream("morphic", mu.alphabet, {"morphism": mu, "seed": seed}, name or "morphic")


def periodic_stream(pre: WordLike, period: WordLike, alphabet: Alphabet | None = None) -> WordStream:
    u, v = coerce(pre, period, alphabet=alphabet)
    if len(v) == 0:
        raise ValueError("the period must be non-empty")
    return WordStream(
        "ultimately-periodic", v.alphabet,
        {"pre": u.symbols, "period": v.symbols}, f"up:U={u},V={v}",
    )


def fibonacci_stream() -> WordStream:
    return morphic_stream(FIBONACCI, 0, "fib")


def thue_morse_stream() -> WordStream:
    return morphic_stream(THUE_MORSE, 0, "tm")


_MECH = re.compile(r"^mech:(\d+)/(\d+)(?::(-?\d+))?$")
_MECH_CF = re.compile(r"^mechcf:([\d,]+)(?::(-?\d+))?$")


def parse_stream(spec: str) -> WordStream:
    """Parse a stream spec string.

    Accepted forms: ``fib``, ``tm``, ``mech:P/Q[:RHO]``,
    ``mechcf:A0,A1,...[:RHO]`` (slope = the continued fraction's value),
    ``morphic:0=01,1=0[:seed=0]``, ``up:U=...,V=...``.
    """
    spec = spec.strip()
    if spec in ("fib", "fibonacci"):
        return fibonacci_stream()
    if spec in ("tm", "thue-morse"):
        return thue_morse_stream()
    if m := _MECH.match(spec):
        return mechanical_stream(int(m[1]), int(m[2]), int(m[3] or 0))
    if m := _MECH_CF.match(spec):
        frac = convergent([int(a) for a in m[1].split(",") if a])
        return mechanical_stream(frac.numerator, frac.denominator, int(m[2] or 0))
    if spec.startswith("morphic:"):
        body = spec[len("morphic:"):]
        parts = body.split(":")
        mapping: dict[str, str] = {}
        for item in parts[0].split(","):
            if "=" not in item:
                raise ValueError(f"bad morphism rule {item!r} in {spec!r}")
            a, img = item.split("=", 1)
            mapping[a] = img
        seed = next(iter(mapping))
        for extra in parts[1:]:
            key, _, val = extra.partition("=")
            if key != "seed" or not val:
                raise ValueError(f"bad morphic option {extra!r}")
            seed = val
        mu = Morphism.from_mapping(mapping)
        return morphic_stream(mu, seed, spec)
    if spec.startswith("up:"):
        fields = dict(item.split("=", 1) for item in spec[3:].split(",") if "=" in item)
        if set(fields) - {"U", "V"} or "V" not in fields:
            raise ValueError(f"bad ultimately periodic spec {spec!r}")
        return periodic_stream(fields.get("U", ""), fields["V"])
    raise ValueError(f"unrecognised word spec {spec!r}")
