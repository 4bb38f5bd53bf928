"""Flow functions on ``A^k`` and the multigraph they induce on ``A^{k-1}``.

A word ``w`` of length ``n >= k - 1`` gives the flow ``f_w(t) = |w|_t`` on
``A^k`` together with its endpoints ``s1 = pref_{k-1}(w)`` and
``s2 = suff_{k-1}(w)``. Reading ``w`` is walking an Eulerian path from ``s1``
to ``s2`` in the multigraph with ``f(t)`` parallel edges
``t[:-1] -> t[1:]``. Two words with the same endpoints are k-Abelian
equivalent iff their flows coincide, so counting realizable flows counts
classes.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .equivalence import signature_key
from .words import Alphabet, Word, WordLike, as_word, count_table

Tup = tuple[int, ...]

DEFAULT_BUDGET = 50_000_000


class BudgetExceeded(RuntimeError):
    """The search space is larger than the configured node budget."""


def default_budget() -> int:
    raw = os.environ.get("KABELIAN_BUDGET")
    if raw:
        value = int(raw)
        if value <= 0:
            raise ValueError("KABELIAN_BUDGET must be positive")
        return value
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class FlowFunction:
    k: int
    alphabet: Alphabet
    counts: tuple[tuple[Tup, int], ...]  # sorted, zero entries dropped
    s1: Tup
    s2: Tup

    @classmethod
    def make(cls, k: int, alphabet: Alphabet | int, counts: Mapping, s1, s2) -> "FlowFunction":
        if isinstance(alphabet, int):
            alphabet = Alphabet.of_size(alphabet)
        if k < 1:
            raise ValueError("k must be a positive integer")
        norm: dict[Tup, int] = {}
        for t, c in counts.items():
            t = _as_tuple(t, alphabet)
            if len(t) != k:
                raise ValueError(f"flow key {t} does not have length {k}")
            if c < 0:
                raise ValueError("flow values must be non-negative")
            if c:
                norm[t] = norm.get(t, 0) + int(c)
        s1, s2 = _as_tuple(s1, alphabet), _as_tuple(s2, alphabet)
        if len(s1) != k - 1 or len(s2) != k - 1:
            raise ValueError(f"endpoints must have length {k - 1}")
        return cls(k, alphabet, tuple(sorted(norm.items())), s1, s2)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)

    def as_dict(self) -> dict[Tup, int]:
        return dict(self.counts)

    def value(self, t: Tup) -> int:
        return self.as_dict().get(t, 0)

    def describe(self) -> dict:
        fmt = lambda t: "".join(self.alphabet.symbols[s] for s in t)  # noqa: E731
        return {
            "k": self.k,
            "counts": {fmt(t): c for t, c in self.counts},
            "s1": fmt(self.s1),
            "s2": fmt(self.s2),
        }


def _as_tuple(x, alphabet: Alphabet) -> Tup:
    if isinstance(x, Word):
        return x.symbols
    if isinstance(x, str):
        return tuple(alphabet.index(c) for c in x)
    return tuple(x)


@dataclass
class DeBruijnGraph:
    k: int
    indeg: Counter = field(default_factory=Counter)
    outdeg: Counter = field(default_factory=Counter)
    edges: dict = field(default_factory=dict)  # k-tuple -> multiplicity

    @classmethod
    def of(cls, f: FlowFunction) -> "DeBruijnGraph":
        g = cls(f.k)
        for t, c in f.counts:
            g.edges[t] = c
            g.outdeg[t[:-1]] += c
            g.indeg[t[1:]] += c
        return g

    def vertices(self) -> set[Tup]:
        return {v for v, d in (self.indeg + self.outdeg).items() if d > 0}


def correction(s: Tup, s1: Tup, s2: Tup) -> int:
    """``indeg(s) - outdeg(s)`` required at ``s`` for a path ``s1 -> s2``."""
    if s1 == s2:
        return 0
    if s == s1:
        return -1
    if s == s2:
        return 1
    return 0


class _DisjointSet:
    def __init__(self) -> None:
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _connected(edges: Iterable[Tup], start: Tup) -> bool:
    """All edge endpoints, plus ``start``, lie in a single component."""
    ds = _DisjointSet()
    ds.find(start)
    for t in edges:
        ds.union(t[:-1], t[1:])
    roots = {ds.find(v) for v in ds.parent}
    return len(roots) == 1


def _realizable(counts: Mapping[Tup, int], s1: Tup, s2: Tup) -> bool:
    indeg: Counter = Counter()
    outdeg: Counter = Counter()
    live = []
    for t, c in counts.items():
        if c < 0:
            return False
        if c:
            live.append(t)
            outdeg[t[:-1]] += c
            indeg[t[1:]] += c
    if not live:
        return s1 == s2
    for s in set(indeg) | set(outdeg) | {s1, s2}:
        if indeg[s] - outdeg[s] != correction(s, s1, s2):
            return False
    # s1 must carry an edge: a balanced cycle elsewhere is not reachable from it
    if outdeg[s1] == 0:
        return False
    return _connected(live, s1)


def build_flow(w: WordLike, k: int) -> FlowFunction:
    w = as_word(w)
    if k < 1:
        raise ValueError("k must be a positive integer")
    if len(w) < k - 1:
        raise ValueError(f"word of length {len(w)} is shorter than k - 1 = {k - 1}")
    counts = count_table(w.symbols, k) if len(w) >= k else {}
    j = k - 1
    return FlowFunction.make(k, w.alphabet, counts, w.symbols[:j], w.symbols[len(w) - j:])


def is_realizable(f: FlowFunction) -> bool:
    """Whether some word has flow ``f`` and endpoints ``f.s1``, ``f.s2``."""
    return _realizable(f.as_dict(), f.s1, f.s2)


def realize(f: FlowFunction) -> Word:
    """Lexicographically least word whose flow is ``f``.

    Builds the Eulerian path greedily, always taking the smallest outgoing
    letter whose removal leaves a realizable remainder.
    """
    remaining = Counter(f.as_dict())
    if not _realizable(remaining, f.s1, f.s2):
        raise ValueError("flow function is not realizable by any word")
    m = f.alphabet.size
    cur = f.s1
    out = list(f.s1)
    for _ in range(f.total):
        for a in range(m):
            t = cur + (a,)
            if remaining[t] <= 0:
                continue
            remaining[t] -= 1
            if _realizable(remaining, t[1:], f.s2):
                cur = t[1:]
                out.append(a)
                break
            remaining[t] += 1
        else:  # pragma: no cover - excluded by the realizability check
            raise AssertionError("greedy Eulerian walk got stuck")
    return Word(f.alphabet, tuple(out))


# -- enumeration -----------------------------------------------------------------

class _FlowSpace:
    """Precomputed layout of ``A^k`` for the depth-first flow enumeration."""

    def __init__(self, m: int, k: int) -> None:
        self.m, self.k = m, k
        self.edges: list[Tup] = list(product(range(m), repeat=k))
        self.vertices: list[Tup] = list(product(range(m), repeat=k - 1))
        vid = {v: i for i, v in enumerate(self.vertices)}
        self.src = [vid[t[:-1]] for t in self.edges]
        self.dst = [vid[t[1:]] for t in self.edges]
        last = [-1] * len(self.vertices)
        for i in range(len(self.edges)):
            last[self.src[i]] = max(last[self.src[i]], i)
            last[self.dst[i]] = max(last[self.dst[i]], i)
        # vertices whose incident edges are all assigned once edge i is
        self.closing: list[list[int]] = [[] for _ in self.edges]
        for v, i in enumerate(last):
            self.closing[i].append(v)
        self.vid = vid


def enumerate_flows(
    m: int, k: int, n: int, s1: Tup, s2: Tup, budget: int | None = None
) -> Iterator[FlowFunction]:
    """Every realizable flow of total ``n - k + 1`` with endpoints ``s1, s2``.

    Edges are assigned in lexicographic order. An edge that completes a
    vertex has its value forced by that vertex's degree balance, and the
    last edge takes whatever total remains; connectivity is checked at the
    leaves.
    """
    space = _FlowSpace(m, k)
    alphabet = Alphabet.of_size(m)
    for values in _flow_values(space, n - k + 1, tuple(s1), tuple(s2), budget):
        counts = {t: c for t, c in zip(space.edges, values) if c}
        yield FlowFunction(k, alphabet, tuple(sorted(counts.items())), tuple(s1), tuple(s2))


def _flow_values(space: _FlowSpace, total: int, s1: Tup, s2: Tup, budget: int | None):
    if total < 0:
        return
    if budget is None:
        budget = default_budget()
    E = len(space.edges)
    need = [correction(v, s1, s2) for v in space.vertices]
    bal = [0] * len(space.vertices)  # indeg - outdeg so far
    vals = [0] * E
    src, dst, closing, edges = space.src, space.dst, space.closing, space.edges
    start = space.vid[s1]
    nodes = 0

    def leaf_ok() -> bool:
        live = [edges[i] for i in range(E) if vals[i]]
        if not live:
            return s1 == s2
        return any(vals[i] for i in range(E) if src[i] == start) and _connected(live, s1)

    def rec(i: int, rem: int):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"flow enumeration exceeded {budget} nodes")
        if i == E:
            if rem == 0 and leaf_ok():
                yield tuple(vals)
            return
        a, b = src[i], dst[i]
        coef = {}
        for v in closing[i]:
            c = (v == b) - (v == a)
            coef[v] = c
        forced = None
        for v, c in coef.items():
            if c:
                num = need[v] - bal[v]
                if num % c:
                    return
                val = num // c
                if forced is not None and forced != val:
                    return
                forced = val
        if i == E - 1:
            if forced is not None and forced != rem:
                return
            forced = rem
        choices = range(rem + 1) if forced is None else (
            (forced,) if 0 <= forced <= rem else ()
        )
        for val in choices:
            bal[a] -= val
            bal[b] += val
            if all(bal[v] == need[v] for v in closing[i]):
                vals[i] = val
                yield from rec(i + 1, rem - val)
                vals[i] = 0
            bal[a] += val
            bal[b] -= val

    yield from rec(0, total)


def _count_pair(args) -> int:
    m, k, n, s1, s2, budget = args
    space = _FlowSpace(m, k)
    return sum(1 for _ in _flow_values(space, n - k + 1, s1, s2, budget))


def count_classes_flow(
    m: int, k: int, n: int, budget: int | None = None, workers: int = 1
) -> int:
    """Number of k-Abelian classes of ``A^n`` (``|A| = m``) by counting
    realizable flows over all endpoint pairs."""
    if m < 1 or k < 1:
        raise ValueError("m and k must be positive")
    if n < k - 1:
        raise ValueError("flow counting needs n >= k - 1")
    if budget is None:
        budget = default_budget()
    verts = list(product(range(m), repeat=k - 1))
    jobs = [(m, k, n, s1, s2, budget) for s1 in verts for s2 in verts]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return sum(pool.map(_count_pair, jobs))
    return sum(_count_pair(j) for j in jobs)


def count_classes_bruteforce(m: int, k: int, n: int, budget: int | None = None) -> int:
    """Number of k-Abelian classes of ``A^n`` by bucketing every word."""
    if budget is None:
        budget = default_budget()
    if m ** n > budget:
        raise BudgetExceeded(f"{m}^{n} words exceed the budget of {budget}")
    return len({signature_key(w, k) for w in product(range(m), repeat=n)})


@dataclass(frozen=True)
class CensusRow:
    m: int
    k: int
    n: int
    class_count: int
    method: str

    def as_dict(self) -> dict:
        return {"m": self.m, "k": self.k, "n": self.n, "count": self.class_count, "method": self.method}


def census(
    m: int, k: int, ns: Sequence[int], method: str = "flow",
    budget: int | None = None, workers: int = 1,
) -> list[CensusRow]:
    """Class counts for each ``n``; ``method`` is ``flow``, ``bruteforce`` or ``both``."""
    methods = {"flow": ["flow-enumeration"], "bruteforce": ["bruteforce"],
               "both": ["bruteforce", "flow-enumeration"]}
    if method not in methods:
        raise ValueError(f"unknown census method {method!r}")
    rows = []
    for n in ns:
        for name in methods[method]:
            if name == "bruteforce":
                c = count_classes_bruteforce(m, k, n, budget)
            else:
                c = count_classes_flow(m, k, n, budget, workers)
            rows.append(CensusRow(m, k, n, c, name))
    return rows


@dataclass(frozen=True)
class GrowthFit:
    m: int
    k: int
    exponent: float
    theory: int

    @property
    def deviation(self) -> float:
        return abs(self.exponent - self.theory)


def growth_exponent_fit(rows: Sequence[CensusRow]) -> GrowthFit:
    """Least-squares slope of ``log(count)`` against ``log(n)``."""
    if len(rows) < 4:
        raise ValueError("need at least four census rows to fit an exponent")
    params = {(r.m, r.k) for r in rows}
    if len(params) != 1:
        raise ValueError("rows must share a common (m, k)")
    by_n = {}
    for r in rows:
        by_n.setdefault(r.n, r.class_count)
    ns = sorted(by_n)
    if len(ns) < 4:
        raise ValueError("need at least four distinct n to fit an exponent")
    x = np.log(np.array(ns, dtype=float))
    y = np.log(np.array([by_n[n] for n in ns], dtype=float))
    slope = float(np.polyfit(x, y, 1)[0])
    (m, k), = params
    return GrowthFit(m, k, slope, m ** k - m ** (k - 1))
