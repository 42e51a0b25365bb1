import itertools
import json
from fractions import Fraction

import pytest

from oracles import expand, poly_mul
from truncsym.field import Field, lucas_binomial
from truncsym.msym import (
    MSymPoly,
    PolyParseError,
    expand_to_monomials,
    from_monomial_expansion,
    msym_add,
    msym_pow,
    parse_poly,
    verify_newton_identity,
)
from truncsym.partition import Partition, enumerate_partitions, scale_partition

Q, F2, F3 = Field(0), Field(2), Field(3)


def m(parts, n, field, coeff=1):
    return MSymPoly.monomial(Partition(parts), n, field, coeff)


def test_add_examples():
    assert (m((3,), 4, F2) + m((3,), 4, F2)).is_zero()
    f = m((2, 1), 3, Q)
    assert f + MSymPoly.zero(3, Q) == f
    g = msym_add(m((2,), 3, Q), m((1, 1), 3, Q))
    assert len(g) == 2
    with pytest.raises(ValueError):
        m((1,), 3, Q) + m((1,), 4, Q)
    with pytest.raises(ValueError):
        m((1,), 3, Q) + m((1,), 3, F2)


def test_mul_examples():
    # product displayed for three variables
    prod = m((1, 1), 3, Q) * m((2, 1), 3, Q)
    assert prod == MSymPoly(3, Q, {(3, 2): 1, (3, 1, 1): 2, (2, 2, 1): 2})
    f = m((2, 1), 3, Q) + m((3,), 3, Q, 5)
    assert MSymPoly.one(3, Q) * f == f
    # (x+y)^2 = x^2 + y^2 + 2xy
    assert m((1,), 2, Q) * m((1,), 2, Q) == MSymPoly(2, Q, {(2,): 1, (1, 1): 2})
    # 3*m_(1,1,1) vanishes mod 3
    assert m((1,), 3, F3) * m((1, 1), 3, F3) == m((2, 1), 3, F3)


def test_pow_examples():
    assert msym_pow(m((3,), 8, F2), 2) == m((6,), 8, F2)
    assert msym_pow(m((3, 3), 8, F2), 2) == m((6, 6), 8, F2)
    f = m((2, 1), 3, F3) + m((1,), 3, F3)
    assert msym_pow(f, 1) == f
    assert msym_pow(f, 0) == MSymPoly.one(3, F3)
    assert f**3 == f * f * f


def test_drop_rule():
    assert m((1, 1, 1), 2, Q).is_zero()
    assert MSymPoly(2, Q, {(3, 2, 1): 4, (1,): 1}) == m((1,), 2, Q)


def test_expand_examples():
    assert expand_to_monomials(m((1, 1), 3, Q)) == {(1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1}
    assert expand_to_monomials(MSymPoly.one(3, Q)) == {(0, 0, 0): 1}
    assert expand_to_monomials(m((2,), 2, Q)) == {(2, 0): 1, (0, 2): 1}
    assert len(expand_to_monomials(m((2, 1), 3, Q))) == 6


def test_from_expansion_examples():
    assert from_monomial_expansion({(2, 0): 1, (0, 2): 1, (1, 1): 2}, 2, Q) == MSymPoly(2, Q, {(2,): 1, (1, 1): 2})
    assert from_monomial_expansion({}, 2, Q).is_zero()
    with pytest.raises(ValueError, match="orbit of m\\[1\\]"):
        from_monomial_expansion({(1, 0): 1, (0, 1): 2}, 2, Q)
    with pytest.raises(ValueError):
        from_monomial_expansion({(1, 0): 1}, 2, Q)


def test_expand_round_trip(rng):
    for field in (Q, F2, F3):
        for _ in range(50):
            n = rng.randint(1, 4)
            lams = [lam for w in range(5) for lam in enumerate_partitions(w, n)]
            f = MSymPoly(n, field, {rng.choice(lams): rng.randint(-3, 3) for _ in range(3)})
            assert expand_to_monomials(f) == expand(f)
            assert from_monomial_expansion(expand_to_monomials(f), n, field) == f


def test_newton_examples():
    assert verify_newton_identity(2, 3, Q)
    assert verify_newton_identity(1, 2, Q)
    assert verify_newton_identity(3, 5, F2)
    with pytest.raises(ValueError):
        verify_newton_identity(3, 3, Q)


def test_newton_printed_index_is_wrong():
    # the variant with m_(s-n) in every summand fails already for n=2, s=3
    n, s = 2, 3
    lhs = MSymPoly.power_sum(s, n, Q)
    rhs = MSymPoly.zero(n, Q)
    for j in range(1, n + 1):
        term = MSymPoly.elementary(j, n, Q) * MSymPoly.power_sum(s - n, n, Q)
        rhs = rhs + term if j % 2 else rhs - term
    assert lhs != rhs


def _oracle_pairs(n, max_weight=4):
    lams = [lam for w in range(max_weight + 1) for lam in enumerate_partitions(w, n)]
    return list(itertools.product(lams, repeat=2))


@pytest.mark.parametrize("field", [Q, F2, F3], ids=str)
def test_commutative_associative(field, rng):
    n = 4
    lams = [lam for w in range(5) for lam in enumerate_partitions(w, n)]
    for _ in range(300):
        a, b, c = (MSymPoly(n, field, {rng.choice(lams): rng.randint(1, 3) for _ in range(2)}) for _ in range(3))
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)


def test_mul_matches_oracle_sample():
    # the exhaustive version lives in the acceptance suite
    for n in (2, 3):
        for lam, mu in _oracle_pairs(n, 3):
            for field in (Q, F2):
                a, b = m(lam, n, field), m(mu, n, field)
                expected = from_monomial_expansion(poly_mul(expand(a), expand(b), field), n, field)
                assert a * b == expected


def _lemma_cases(n_max=5, w_max=8):
    for n in range(2, n_max + 1):
        for w in range(1, w_max + 1):
            yield from ((n, lam) for lam in enumerate_partitions(w, n))


def test_lemma_comp1_structure():
    checked = 0
    for n, lam in _lemma_cases():
        form = lam.multiplicity_form()
        if len(form) < 2:
            continue
        top, m1 = form[0]
        rest = Partition(x for x in lam if x != top)
        prod = m(Partition.power(top, m1), n, Q) * m(rest, n, Q)
        assert prod.coeff(lam) == 1
        for nu in prod.support:
            assert nu.lp >= top
            assert nu.lm <= m1
            if nu.lm == m1 and nu != lam:
                assert nu.length < lam.length
        checked += 1
    assert checked > 50


def test_lemma_comp2_leading_coefficient():
    checked = 0
    for n, lam in _lemma_cases():
        top, m1 = lam.multiplicity_form()[0]
        for s in range(1, n - lam.length + 1):
            prod = m(Partition.power(top, s), n, Q) * m(lam, n, Q)
            lead = Partition(sorted(list(lam) + [top] * s, reverse=True))
            assert prod.coeff(lead) == lucas_binomial(s + m1, s, Q)
            for nu in prod.support:
                assert nu.lp >= top
                assert nu.lm <= s + m1
                if nu.lm == s + m1:
                    assert nu == lead
                if nu.lm == s and nu != lead:
                    assert nu.length == lam.length
            checked += 1
    assert checked > 50


@pytest.mark.parametrize("p", [2, 3])
def test_newton_like_telescoping(p):
    F = Field(p)
    checked = 0
    for n in range(1, 7):
        i = 0
        while p**i <= n:
            b = p**i
            q = n // b
            for s in range(1, 5):
                total = MSymPoly.zero(n, F)
                for j in range(1, q + 1):
                    term = m(Partition.power(1, j * b), n, F) * m(Partition.power(s + q + 1 - j, b), n, F)
                    total = total + term if j % 2 else total - term
                total = total - m(Partition.power(s + q + 1, b), n, F)
                for nu in total.support:
                    assert nu.lp >= s + 1 and nu.lm < b, (n, b, s, nu)
                checked += 1
            i += 1
    assert checked > 10


@pytest.mark.parametrize("p", [2, 3, 5])
def test_frobenius(p, rng):
    F = Field(p)
    for _ in range(40):
        n = rng.randint(1, 5)
        lam = rng.choice([lam for w in range(1, 7) for lam in enumerate_partitions(w, n)])
        assert msym_pow(m(lam, n, F), p) == m(scale_partition(lam, p), n, F)


def test_render_and_parse():
    f = MSymPoly(3, Q, {(3, 2): 1, (3, 1, 1): 2, (2, 2, 1): -Fraction(1, 2), (): 3})
    text = str(f)
    assert text == "3*m[] + m[3,2] + 2*m[3,1,1] - 1/2*m[2,2,1]"
    assert parse_poly(text, 3, Q) == f
    assert parse_poly(" m[3^2 , 1] -2*m[2,2,2]", 3, Q) == MSymPoly(3, Q, {(3, 3, 1): 1, (2, 2, 2): -2})
    assert parse_poly("0", 3, Q).is_zero()
    assert str(MSymPoly.zero(2, Q)) == "0"
    assert parse_poly("1/2*m[1]", 2, F3) == m((1,), 2, F3, 2)
    for bad in ("m[1", "2**m[1]", "x", "m[1]+", "m[a]"):
        with pytest.raises(PolyParseError):
            parse_poly(bad, 3, Q)


def test_json_round_trip():
    for field in (Q, F3):
        f = MSymPoly(3, field, {(3, 2): 1, (2, 1): Fraction(-2, 1) if field.p == 0 else 2})
        obj = json.loads(json.dumps(f.to_json()))
        assert MSymPoly.from_json(obj) == f
    obj = MSymPoly(2, Q, {(1,): Fraction(3, 4)}).to_json()
    assert obj == {"n": 2, "p": 0, "terms": [{"partition": [1], "coeff": "3/4"}]}
