"""k-Abelian complexity of infinite words, measured on finite prefixes.

Every value computed from a window is a lower bound for the infinite word's
value. A profile therefore carries a per-``n`` validity flag: ``True`` when
the stream guarantees that all its length-``n`` factors already occur in the
window. The periodicity alarm only looks at valid entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .equivalence import INF, K, k_label, r_k_key, signature_key
from .generators import WordStream
from .words import Word, WordLike, as_word, factor_set


def q(k: K, n: int) -> int:
    """``n + 1`` up to ``n = 2k - 1``, then constant ``2k``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if k == INF or n <= 2 * k - 1:
        return n + 1
    return 2 * int(k)


def _factors_for(prefix: Word, n: int) -> set:
    if n > len(prefix):
        raise ValueError(f"factor length {n} exceeds prefix length {len(prefix)}")
    if n == 0:
        return {()}
    return factor_set(prefix.symbols, n)


def k_complexity(prefix: WordLike, k: K, n: int) -> int:
    """Number of k-Abelian classes among the length-``n`` factors of ``prefix``."""
    prefix = as_word(prefix)
    return len({signature_key(f, k) for f in _factors_for(prefix, n)})


def r_complexity(prefix: WordLike, k: K, n: int) -> int:
    """Number of R_k classes among the length-``n`` factors of ``prefix``."""
    prefix = as_word(prefix)
    m = prefix.alphabet.size
    return len({r_k_key(f, k, m) for f in _factors_for(prefix, n)})


@dataclass
class ComplexityProfile:
    k: K
    n_max: int
    window: int
    values: dict[int, int] = field(default_factory=dict)
    r_values: dict[int, int] = field(default_factory=dict)
    validity: dict[int, bool] = field(default_factory=dict)

    def rows(self) -> list[dict]:
        return [
            {"n": n, "value": self.values[n], "r_value": self.r_values[n],
             "q": q(self.k, n), "valid": self.validity[n]}
            for n in range(1, self.n_max + 1)
        ]


def default_window(stream: WordStream, n_max: int) -> int:
    """A window long enough for every factor of length up to ``n_max``."""
    p = stream.params
    if stream.kind == "mechanical":
        return p["q"] + n_max
    if stream.kind == "ultimately-periodic":
        return len(p["pre"]) + len(p["period"]) + n_max
    window = 64
    while window < 16 * (n_max + 1) or not stream.covered(window, n_max):
        window *= 2
        if window > 1 << 22:
            raise ValueError("could not find a window covering all factors")
    return window


def complexity_profile(
    source: WordStream | WordLike, k: K, n_max: int, window: int | None = None
) -> ComplexityProfile:
    """Profile of ``n -> P^(k)(n)`` (and the R_k variant) for ``1 <= n <= n_max``.

    A plain word is taken at face value: all its entries are flagged valid.
    """
    if isinstance(source, WordStream):
        if window is None:
            window = default_window(source, n_max)
        prefix = source.prefix(window)
        valid = lambda n: source.covered(window, n)  # noqa: E731
    else:
        prefix = as_word(source)
        window = len(prefix)
        valid = lambda n: True  # noqa: E731
    if n_max > window:
        raise ValueError(f"n_max = {n_max} exceeds the window length {window}")
    prof = ComplexityProfile(k, n_max, window)
    for n in range(1, n_max + 1):
        prof.values[n] = k_complexity(prefix, k, n)
        prof.r_values[n] = r_complexity(prefix, k, n)
        prof.validity[n] = valid(n)
    return prof


def periodicity_alarm(profile: ComplexityProfile) -> int | None:
    """Least valid ``n0`` with ``P^(k)(n0) < q(k, n0)``, or ``None``.

    A hit proves the word ultimately periodic; silence proves nothing.
    """
    for n in sorted(profile.values):
        if n >= 1 and profile.validity.get(n) and profile.values[n] < q(profile.k, n):
            return n
    return None


@dataclass
class SturmianCheck:
    stream: str
    k_max: int
    n_max: int
    window: int
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {"stream": self.stream, "k_max": self.k_max, "n_max": self.n_max,
                "window": self.window, "ok": self.ok, "violations": self.violations}


def sturmian_profile_check(
    stream: WordStream, k_max: int, n_max: int,
    window: int | None = None, include_infinite: bool = True,
) -> SturmianCheck:
    """Compare ``P^(k)(n)`` with ``q(k, n)`` for ``k <= k_max`` and ``n <= n_max``."""
    if stream.alphabet.size != 2:
        raise ValueError("Sturmian checks need a binary stream")
    bound = stream.sturmian_bound
    if bound is not None and n_max > bound:
        raise ValueError(f"n_max = {n_max} exceeds the stream's Sturmian bound {bound}")
    if window is None:
        window = default_window(stream, n_max)
    prefix = stream.prefix(window)
    ks: list[K] = list(range(1, k_max + 1)) + ([INF] if include_infinite else [])
    report = SturmianCheck(stream.name, k_max, n_max, window)
    for n in range(1, n_max + 1):
        if not stream.covered(window, n):
            raise ValueError(f"window {window} does not cover all factors of length {n}")
        for k in ks:
            got = k_complexity(prefix, k, n)
            if got != q(k, n):
                report.violations.append(
                    {"k": k_label(k), "n": n, "value": got, "q": q(k, n)}
                )
    return report
