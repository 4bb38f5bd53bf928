"""``kabelian`` command line front end.

Exit status: 0 on success, 1 when the analysis answer is negative (words not
equivalent, no power found, Sturmian check violated), 2 on any error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import complexity as cx
from . import equivalence as eqv
from . import flowgraph as fg
from . import repetitions as rep
from . import sturmian as st
from .generators import WordStream, parse_stream
from .words import Alphabet, AlphabetMismatch, Word, infer_alphabet, parse_word

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    word: str | None = None
    k: Any = None
    n_range: tuple[int, int] | None = None
    budget: int | None = None
    fmt: str = "json"
    out: str | None = None
    workers: int = 1
    options: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.budget is not None and self.budget <= 0:
            raise CliError("budgets must be strictly positive")
        if self.workers < 1:
            raise CliError("--workers must be at least 1")
        if self.k is not None:
            self.k = eqv.parse_k(self.k)


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")
    a, b = int(lo), int(hi)
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return a, b


def _alphabet(text: str | None) -> Alphabet | None:
    if not text:
        return None
    return Alphabet(tuple(text.split(",")) if "," in text else tuple(text))


def _read_words(cfg: RunConfig, items: list[str]) -> list[Word]:
    sep = cfg.options.get("sep")
    alpha = _alphabet(cfg.options.get("alphabet"))
    texts = list(items)
    if cfg.options.get("file"):
        lines = Path(cfg.options["file"]).read_text().splitlines()
        texts.extend(line for line in lines if line.strip())
    if alpha is None:
        symbols: set[str] = set()
        for t in texts:
            symbols.update(t.split(sep) if sep else t.strip())
        alpha = infer_alphabet(symbols)
    return [parse_word(t, alpha, sep) for t in texts]


def _stream_or_word(spec: str) -> WordStream | Word:
    if spec.startswith("lit:"):
        return parse_word(spec[4:])
    return parse_stream(spec)


def _prefix(spec: str, window: int) -> Word:
    src = _stream_or_word(spec)
    if isinstance(src, Word):
        return src
    return src.prefix(window)


# -- output ------------------------------------------------------------------

def _emit(cfg: RunConfig, payload: Any, rows: list[dict] | None = None, columns: list[str] | None = None) -> None:
    fmt = cfg.fmt
    if cfg.out and fmt == "auto":
        fmt = "csv" if cfg.out.endswith(".csv") else "json"
    elif fmt == "auto":
        fmt = "json"
    if fmt in ("csv", "table") and rows is None:
        fmt = "json"
    if fmt == "json":
        text = json.dumps(payload, indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n",
                                quoting=csv.QUOTE_MINIMAL, extrasaction="ignore")
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) if rows else len(c) for c in columns}
        lines = ["  ".join(c.rjust(widths[c]) for c in columns)]
        lines += ["  ".join(str(r[c]).rjust(widths[c]) for c in columns) for r in rows]
        text = "\n".join(lines) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


# -- subcommands ---------------------------------------------------------------

def _cmd_eq(cfg: RunConfig) -> int:
    words = _read_words(cfg, cfg.options["words"])
    if len(words) != 2:
        raise CliError("eq needs exactly two words")
    u, v = words
    k = cfg.k
    equivalent = eqv.k_abelian_equivalent(u, v, k)
    witness = eqv.distinguishing_factor(u, v, k)
    _emit(cfg, {"u": str(u), "v": str(v), "k": eqv.k_label(k), "equivalent": equivalent,
                "witness_x": None if witness is None else str(witness)})
    return EXIT_OK if equivalent else EXIT_NEGATIVE


def _cmd_sig(cfg: RunConfig) -> int:
    words = _read_words(cfg, cfg.options["words"])
    if not words:
        raise CliError("sig needs at least one word")
    out = [{"word": str(w), "signature": eqv.signature(w, cfg.k).describe()} for w in words]
    _emit(cfg, out if len(out) > 1 else out[0])
    return EXIT_OK


def _cmd_census(cfg: RunConfig) -> int:
    m, k = cfg.options["m"], cfg.k
    if k == eqv.INF:
        raise CliError("census needs a finite k")
    lo, hi = cfg.n_range
    rows = fg.census(m, k, range(lo, hi + 1), cfg.options["method"], cfg.budget, cfg.workers)
    if cfg.options["method"] == "both":
        by_n: dict[int, set] = {}
        for r in rows:
            by_n.setdefault(r.n, set()).add(r.class_count)
        bad = [n for n, counts in by_n.items() if len(counts) > 1]
        if bad:
            raise CliError(f"flow and brute-force counts disagree at n = {bad}")
    dicts = [r.as_dict() for r in rows]
    _emit(cfg, dicts, dicts, ["m", "k", "n", "count", "method"])
    return EXIT_OK


def _cmd_complexity(cfg: RunConfig) -> int:
    src = _stream_or_word(cfg.word)
    n_max = cfg.options["n_max"]
    prof = cx.complexity_profile(src, cfg.k, n_max, cfg.options.get("window"))
    rows = prof.rows()
    if cfg.options.get("plot_data"):
        text = "".join(f"{r['n']} {r['value']}\n" for r in rows)
        if cfg.out:
            Path(cfg.out).write_text(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    payload = {"word": cfg.word, "k": eqv.k_label(cfg.k), "window": prof.window,
               "alarm": cx.periodicity_alarm(prof), "rows": rows}
    _emit(cfg, payload, rows, ["n", "value", "q", "valid"])
    return EXIT_OK


def _cmd_sturmian(cfg: RunConfig) -> int:
    action = cfg.options["action"]
    src = _stream_or_word(cfg.word)
    if action == "check":
        if not isinstance(src, WordStream):
            raise CliError("sturmian check needs a stream spec, not a literal word")
        rep_ = cx.sturmian_profile_check(src, cfg.options["k_max"], cfg.options["n_max"],
                                          cfg.options.get("window"))
        _emit(cfg, rep_.as_dict())
        return EXIT_OK if rep_.ok else EXIT_NEGATIVE
    n = cfg.options["n"]
    if isinstance(src, Word):
        prefix = src
    else:
        prefix = src.prefix(cfg.options.get("window") or cx.default_window(src, n + 1))
    if action == "chain":
        chain = st.factor_chain(prefix, n)
        _emit(cfg, {"word": cfg.word, "n": n, "factors": [str(f) for f in chain.factors],
                    "sigma": list(chain.sigma)})
    else:
        r = st.special_factors(prefix, n)
        _emit(cfg, {"word": cfg.word, "n": n,
                    "right_special": sorted(str(w) for w in r.right_special),
                    "left_special": sorted(str(w) for w in r.left_special),
                    "bispecial": sorted(str(w) for w in r.bispecial)})
    return EXIT_OK


def _cmd_pairs2k(cfg: RunConfig) -> int:
    k = cfg.k
    if k == eqv.INF:
        raise CliError("pairs2k needs a finite k")
    kwargs = {"budget": cfg.budget} if cfg.budget else {}
    pairs = st.classify_length_2k_pairs(cfg.options["m"], k, **kwargs)
    _emit(cfg, {"m": cfg.options["m"], "k": k, "pairs": [p.as_dict() for p in pairs]})
    return EXIT_OK


def _cmd_power(cfg: RunConfig) -> int:
    N, l_max = cfg.options["N"], cfg.options["lmax"]
    window = cfg.options.get("window") or max(1000, N * l_max)
    prefix = _prefix(cfg.word, window)
    D = rep.PositionSet.parse(cfg.options["D"])
    w = rep.find_power(prefix, cfg.k, N, D, l_max)
    _emit(cfg, {"word": cfg.word, "k": eqv.k_label(cfg.k), "N": N, "lmax": l_max,
                "window": len(prefix), "witness": None if w is None else w.as_dict()})
    return EXIT_OK if w is not None else EXIT_NEGATIVE


def _cmd_balance(cfg: RunConfig) -> int:
    if cfg.k == eqv.INF:
        raise CliError("balance needs a finite k")
    prefix = _prefix(cfg.word, cfg.options.get("window") or 2000)
    _emit(cfg, {"word": cfg.word, **rep.balance_bound(prefix, cfg.k).as_dict()})
    return EXIT_OK


COMMANDS = {
    "eq": _cmd_eq, "sig": _cmd_sig, "census": _cmd_census, "complexity": _cmd_complexity,
    "sturmian": _cmd_sturmian, "pairs2k": _cmd_pairs2k, "power": _cmd_power,
    "balance": _cmd_balance,
}


def run(cfg: RunConfig) -> int:
    try:
        return COMMANDS[cfg.command](cfg)
    except fg.BudgetExceeded as exc:
        print(f"error: budget exhausted: {exc}", file=sys.stderr)
    except AlphabetMismatch as exc:
        print(f"error: alphabet mismatch: {exc}", file=sys.stderr)
    except st.StructuralError as exc:
        print(f"error: structural check failed: {exc}", file=sys.stderr)
    except (CliError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kabelian", description="k-Abelian equivalence workbench.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, k_required=True, k_default=None):
        sp.add_argument("--k", required=k_required and k_default is None, default=k_default,
                        help="positive integer or 'inf'")
        sp.add_argument("--format", dest="fmt", default="auto",
                        choices=["auto", "json", "csv", "table"])
        sp.add_argument("--out", help="write output to this file")
        sp.add_argument("--budget", type=int, help="node/word budget (env KABELIAN_BUDGET sets the default)")

    def word_input(sp):
        sp.add_argument("words", nargs="*")
        sp.add_argument("--file", help="one word per line")
        sp.add_argument("--sep", help="symbol delimiter for multi-character symbols, e.g. ','")
        sp.add_argument("--alphabet", help="declared alphabet, e.g. 012 or a,b,c")

    sp = sub.add_parser("eq", help="decide u ~k v")
    common(sp)
    word_input(sp)

    sp = sub.add_parser("sig", help="class signature of words")
    common(sp)
    word_input(sp)

    sp = sub.add_parser("census", help="count k-Abelian classes of A^n")
    common(sp)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n-range", type=_parse_range, required=True, help="LO..HI")
    sp.add_argument("--method", choices=["flow", "bruteforce", "both"], default="flow")
    sp.add_argument("--workers", type=int, default=1)

    stream_help = "fib | tm | mech:P/Q[:RHO] | mechcf:A0,A1,..[:RHO] | morphic:0=01,1=0[:seed=0] | up:U=..,V=.. | lit:WORD"

    sp = sub.add_parser("complexity", help="k-Abelian complexity profile")
    common(sp)
    sp.add_argument("--word", required=True, help=stream_help)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--window", type=int)
    sp.add_argument("--plot-data", action="store_true", help="emit 'n value' lines only")

    sp = sub.add_parser("sturmian", help="Sturmian structure: chain, special, check")
    common(sp, k_required=False)
    sp.add_argument("action", choices=["chain", "special", "check"])
    sp.add_argument("--word", required=True, help=stream_help)
    sp.add_argument("--n", type=int, default=6)
    sp.add_argument("--k-max", type=int, default=4)
    sp.add_argument("--n-max", type=int, default=40)
    sp.add_argument("--window", type=int)

    sp = sub.add_parser("pairs2k", help="classify equivalent pairs of length 2k")
    common(sp)
    sp.add_argument("--m", type=int, default=2)

    sp = sub.add_parser("power", help="search a k-Abelian N-power")
    common(sp)
    sp.add_argument("--word", required=True, help=stream_help)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--lmax", type=int, default=200)
    sp.add_argument("--D", default="all", help="all | ap:START,STEP | mod:R,M | set:1,2,3 | set:@FILE")
    sp.add_argument("--window", type=int)

    sp = sub.add_parser("balance", help="least B with the prefix (k, B)-balanced")
    common(sp)
    sp.add_argument("--word", required=True, help=stream_help)
    sp.add_argument("--window", type=int)
    return p


_TOP_LEVEL = {"command", "word", "k", "n_range", "budget", "fmt", "out", "workers"}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    ns = vars(args)
    try:
        cfg = RunConfig(
            command=ns["command"], word=ns.get("word"), k=ns.get("k"),
            n_range=ns.get("n_range"), budget=ns.get("budget"), fmt=ns.get("fmt", "auto"),
            out=ns.get("out"), workers=ns.get("workers") or 1,
            options={key: val for key, val in ns.items() if key not in _TOP_LEVEL},
        )
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return run(cfg)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
