import pytest

from kabelian.equivalence import INF, signature_key
from kabelian.generators import fibonacci_stream, mechanical_stream, periodic_stream, thue_morse_stream
from kabelian.repetitions import (
    PositionSet, balance_bound, balance_complexity_link, find_power, is_k_power,
)
from kabelian.words import Alphabet, Word, occurrences

FIB = fibonacci_stream().prefix(1000)
TM = thue_morse_stream().prefix(400)


def naive_power(w, k, N, D, l_max):
    s = w.symbols
    for ell in range(1, l_max + 1):
        for i in range(len(s) - N * ell + 1):
            if not all(i + j * ell in D for j in range(N + 1)):
                continue
            first = signature_key(s[i:i + ell], k)
            if all(signature_key(s[i + j * ell:i + (j + 1) * ell], k) == first for j in range(1, N)):
                return i, ell
    return None


def naive_balance(w, k):
    s = str(w)
    fac = {s[i:i + n] for n in range(1, len(s) + 1) for i in range(len(s) - n + 1)}
    xs = {x for x in fac if len(x) <= k}
    best = 0
    by_len = {}
    for f in fac:
        by_len.setdefault(len(f), []).append(f)
    for group in by_len.values():
        for x in xs:
            if len(x) > len(group[0]):
                continue
            c = [occurrences(f, x) for f in group]
            best = max(best, max(c) - min(c))
    return best


def test_is_k_power_examples():
    assert is_k_power("010110011010", 2, 3)
    assert not is_k_power("010110011010", 2, 4)
    assert is_k_power("0101", 2, INF)
    with pytest.raises(ValueError):
        is_k_power("010", 2, 1)
    with pytest.raises(ValueError):
        is_k_power("01", 1, 1)


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("N", [2, 3])
def test_fibonacci_powers(k, N):
    wit = find_power(FIB, k, N, l_max=200)
    assert wit is not None and wit.exponent == N
    joined = Word(FIB.alphabet, sum((b.symbols for b in wit.blocks), ()))
    assert is_k_power(joined, N, k)
    assert str(FIB[wit.start:wit.start + N * wit.block_length]) == str(joined)


def test_fibonacci_has_no_short_fourth_powers():
    assert find_power(fibonacci_stream().prefix(500), INF, 4, l_max=40) is None


def test_find_power_matches_naive_search():
    cases = [(TM, 1, 2, PositionSet.everything()), (TM, 2, 3, PositionSet.everything()),
             (TM, INF, 2, PositionSet.progression(3, 2)), (FIB[:300], 3, 2, PositionSet.residue(1, 3)),
             (FIB[:300], 4, 3, PositionSet.progression(5, 7)), (TM, 3, 4, PositionSet.everything())]
    for w, k, N, D in cases:
        wit = find_power(w, k, N, D, l_max=len(w) // N)
        exp = naive_power(w, k, N, D, len(w) // N)
        got = None if wit is None else (wit.start, wit.block_length)
        assert got == exp, (k, N, D)


def test_find_power_long_blocks_use_counts():
    # blocks longer than 2k-1 are equivalent without being equal
    w = Word(FIB.alphabet, (0, 1, 0, 1, 1, 0, 0, 1, 1, 0, 1, 0))
    wit = find_power(w, 3, 2, PositionSet.finite([0, 6, 12]), l_max=6)
    assert wit is not None and wit.block_length == 6 and wit.blocks[0] != wit.blocks[1]


def test_find_power_large_alphabet_path():
    big = Alphabet.of_size(20)
    w = Word(big, (1, 2, 3, 4, 5, 3, 4, 1, 2, 5) * 3)
    wit = find_power(w, 3, 2, l_max=15)
    exp = naive_power(w, 3, 2, PositionSet.everything(), 15)
    assert (wit.start, wit.block_length) == exp


def test_find_power_errors():
    with pytest.raises(ValueError):
        find_power(FIB[:100], 2, 2, l_max=200)


def test_position_sets():
    assert 7 in PositionSet.progression(1, 3) and 6 not in PositionSet.progression(1, 3)
    assert 0 not in PositionSet.progression(1, 3)
    assert PositionSet.parse("mod:1,3") == PositionSet.residue(1, 3)
    assert PositionSet.parse("set:1,4,9").members == frozenset({1, 4, 9})
    assert PositionSet.parse("all").density(100) == 1.0
    assert PositionSet.parse("ap:0,4").density(100) == pytest.approx(0.25)
    for bad in ("ap:1", "mod:3,0", "foo"):
        with pytest.raises(ValueError):
            PositionSet.parse(bad)


def test_balance_fibonacci():
    assert balance_bound(FIB, 1).B == 1
    for k in range(1, 5):
        rep = balance_bound(FIB, k)
        assert rep.B <= k
        u, v, x = rep.witness
        assert len(u) == len(v)
        assert abs(occurrences(u, x) - occurrences(v, x)) == rep.B


def test_balance_matches_naive():
    for w in (FIB[:60], TM[:50], mechanical_stream(3, 7).prefix(40), periodic_stream("0001", "01").prefix(30)):
        for k in (1, 2, 3):
            assert balance_bound(w, k).B == naive_balance(w, k)


def test_thue_morse_is_not_1_balanced():
    assert balance_bound(TM, 1).B == 2


def test_balance_complexity_link_on_generated_streams():
    for w in (FIB[:300], TM[:300], mechanical_stream(13, 21).prefix(200), periodic_stream("0", "011").prefix(100)):
        for k in (1, 2, 3):
            assert balance_complexity_link(w, k)
