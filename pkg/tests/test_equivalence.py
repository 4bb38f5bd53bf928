import pytest
from hypothesis import given, strategies as st

from kabelian.equivalence import (
    INF, characterizations_agree, definitional_key, distinguishing_factor,
    k_abelian_equivalent, k_abelian_equivalent_definitional, parse_k, r_k_equivalent,
    signature, signature_key, spectrum,
)
from kabelian.words import Alphabet, Word, all_words, count_table

binary = st.text(alphabet="01", max_size=10)


def classes(m: int, n: int, key):
    buckets = {}
    for w in all_words(m, n):
        buckets.setdefault(key(w), []).append(w)
    return list(buckets.values())


def test_worked_examples():
    assert k_abelian_equivalent("010110", "011010", 3)
    assert not k_abelian_equivalent("010110", "011010", 4)
    assert not k_abelian_equivalent("0110", "1101", 2)
    # equal length-2 counts, yet not Abelian equivalent
    assert count_table((0, 1, 1, 0), 2) == count_table((1, 1, 0, 1), 2)
    assert not k_abelian_equivalent("0110", "1101", 1)


@pytest.mark.parametrize("k", range(1, 7))
def test_tight_rigidity_pair(k):
    u = "0" * (k - 1) + "01" + "0" * (k - 1)
    v = "0" * (k - 1) + "10" + "0" * (k - 1)
    assert k_abelian_equivalent(u, v, k)
    assert not k_abelian_equivalent(u, v, k + 1)


def test_infinite_k_is_equality():
    assert k_abelian_equivalent("0110", "0110", INF)
    assert not k_abelian_equivalent("010110", "011010", INF)
    assert signature("0110", INF).prefix == (0, 1, 1, 0)


def test_signature_examples():
    a, b = signature("010110", 3), signature("011010", 3)
    assert a == b
    assert a.prefix == (0, 1)
    assert dict(a.counts) == {(0, 1, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 0): 1}
    assert signature("0", 3).prefix == (0,) and signature("0", 3).counts == ()
    assert signature("0011", 2) != signature("0101", 2)


def test_spectrum_fields():
    sp = spectrum("010110", 3)
    assert str(sp.prefix) == "01" and str(sp.suffix) == "10"
    assert sum(sp.counts_k.values()) == 6 - 3 + 1


def test_r_k_examples():
    assert r_k_equivalent("0011", "0101", 2) and not k_abelian_equivalent("0011", "0101", 2)
    assert r_k_equivalent("aabb", "abab", 2) and not k_abelian_equivalent("aabb", "abab", 2)
    assert r_k_equivalent("0110", "0110", 3)
    assert not r_k_equivalent("01", "10", 5)  # shorter than k-1: equality


def test_characterizations_examples():
    assert characterizations_agree("010110", "011010", 3)
    assert characterizations_agree("0110", "0110", 2)
    with pytest.raises(ValueError):
        characterizations_agree("0011", "0101", 2)  # length-2 counts differ
    with pytest.raises(ValueError):
        characterizations_agree("0", "1", 3)


def test_characterizations_agree_exhaustively():
    for n in range(0, 8):
        for k in range(1, 5):
            if n < k - 1:
                continue
            by_counts = {}
            for w in all_words(2, n):
                by_counts.setdefault(tuple(sorted(count_table(w.symbols, k).items())), []).append(w)
            for group in by_counts.values():
                for u in group:
                    for v in group:
                        assert characterizations_agree(u, v, k)


@pytest.mark.parametrize("m,n_max", [(2, 8), (3, 6)])
def test_signature_partition_equals_definitional(m, n_max):
    for k in range(1, 5):
        for n in range(0, n_max + 1):
            fast = sorted(sorted(w.symbols for w in c) for c in classes(m, n, lambda w: signature_key(w.symbols, k)))
            slow = sorted(sorted(w.symbols for w in c) for c in classes(m, n, lambda w: definitional_key(w, k)))
            assert fast == slow, (m, k, n)


def test_pairwise_decision_matches_definitional_small():
    for n in range(0, 6):
        words = list(all_words(2, n))
        for k in (1, 2, 3):
            for u in words:
                for v in words:
                    assert k_abelian_equivalent(u, v, k) == k_abelian_equivalent_definitional(u, v, k)


def test_rigidity_up_to_2k_minus_1():
    for k in range(1, 5):
        for n in range(0, 2 * k):
            for c in classes(2, n, lambda w: signature_key(w.symbols, k)):
                assert len(c) == 1


def test_central_factors_stay_equivalent():
    for k in range(2, 5):
        for n in range(2, 9):
            for c in classes(2, n, lambda w: signature_key(w.symbols, k)):
                for x in c:
                    for y in c:
                        assert k_abelian_equivalent(x[1:-1], y[1:-1], k - 1)


def test_congruence_and_refinement():
    for k in (1, 2, 3):
        small = [w for n in range(0, 5) for w in all_words(2, n)]
        cls = {}
        for w in small:
            cls.setdefault(signature_key(w.symbols, k), []).append(w)
        groups = [g for g in cls.values() if len(g) > 1] + [[w] for w in small[:12]]
        for g1 in groups:
            for g2 in groups:
                a, b = g1[0] + g2[0], g1[-1] + g2[-1]
                assert k_abelian_equivalent(a, b, k)
        for g in groups:
            for kk in range(1, k + 1):
                assert k_abelian_equivalent(g[0], g[-1], kk)


def test_k_implies_r_k():
    for n in range(0, 8):
        for k in (1, 2, 3, 4):
            for c in classes(2, n, lambda w: signature_key(w.symbols, k)):
                for v in c:
                    assert r_k_equivalent(c[0], v, k)


def test_distinguishing_factor():
    assert str(distinguishing_factor("010110", "011010", 4)) == "0101"
    assert distinguishing_factor("010110", "011010", 3) is None
    assert str(distinguishing_factor("0110", "1101", 2)) == "0"
    assert str(distinguishing_factor("01", "10", INF)) == "01"


def test_parse_k():
    assert parse_k("inf") == INF and parse_k("3") == 3
    for bad in ("0", "-1", "x"):
        with pytest.raises(ValueError):
            parse_k(bad)


@given(binary, binary, st.integers(1, 5))
def test_signature_equality_is_definitional(u, v, k):
    assert k_abelian_equivalent(u or "0", v or "0", k) == k_abelian_equivalent_definitional(u or "0", v or "0", k)


def test_ternary_alphabet_words():
    t = Alphabet(("a", "b", "c"))
    u, v = Word(t, (0, 1, 2, 0)), Word(t, (0, 1, 2, 0))
    assert k_abelian_equivalent(u, v, 2)
