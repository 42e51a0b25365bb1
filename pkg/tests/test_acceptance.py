"""Exit criteria; each test prints one PASS/FAIL line (collected in the terminal summary)."""

import itertools
from functools import lru_cache


import test_field
import test_ideal
import test_msym
from oracles import expand, poly_mul
from truncsym.cli import run, sweep
from truncsym.field import Field
from truncsym.ideal import (
    conjecture_generators,
    graded_target_basis,
    ideal_graded_span,
    theorem_generators,
    verify_theorem,
)
from truncsym.linalg import matrix_rank
from truncsym.msym import MSymPoly, from_monomial_expansion, msym_pow, verify_newton_identity
from truncsym.partition import enumerate_partitions

F2 = Field(2)


def test_1_product_golden(criterion, capsys):
    code = run(["mul", "--p", "0", "--n", "3", "m[1,1]", "m[2,1]"])
    out = capsys.readouterr().out.strip()
    expected = "m[3,2] + 2*m[3,1,1] + 2*m[2,2,1]"
    criterion.finish("1 product golden", code == 0 and out == expected, 1, repr(out))


def test_2_generator_golden(criterion):
    thm = [tuple(e.partition) for e in theorem_generators(2, 8, 2).entries]
    expected = (
        [(k,) for k in range(3, 11)]
        + [(k, k) for k in range(3, 7)]
        + [(3, 3, 3, 3), (4, 4, 4, 4)]
        + [(3,) * 8]
    )
    dropped = [tuple(e.partition) for e in conjecture_generators(2, 8, 2).dropped()]
    ok = thm == expected and len(thm) == 15 and dropped == [(6,), (8,), (10,), (6, 6)]
    criterion.finish("2 generator golden", ok, 1, f"{len(thm)} generators, dropped {dropped}")


def test_3_frobenius_redundancy(criterion):
    n = 8
    pairs = [((3,), (6,)), ((4,), (8,)), ((5,), (10,)), ((3, 3), (6, 6))]
    ok = all(
        msym_pow(MSymPoly.monomial(a, n, F2), 2) == MSymPoly.monomial(b, n, F2) for a, b in pairs
    )
    criterion.finish("3 Frobenius redundancy", ok, 5)


@lru_cache(maxsize=None)
def _expansion(lam, n, p):
    return expand(MSymPoly.monomial(lam, n, Field(p)))


def test_4_oracle_equivalence(criterion):
    mismatches, pairs = [], 0
    for p in (0, 2, 3):
        field = Field(p)
        for n in range(1, 5):
            lams = [lam for w in range(7) for lam in enumerate_partitions(w, n)]
            for lam, mu in itertools.product(lams, repeat=2):
                got = MSymPoly.monomial(lam, n, field) * MSymPoly.monomial(mu, n, field)
                want = from_monomial_expansion(poly_mul(_expansion(lam, n, p), _expansion(mu, n, p), field), n, field)
                pairs += 1
                if got != want:
                    mismatches.append((p, n, lam, mu))
    criterion.finish("4 oracle equivalence", not mismatches, 120, f"{pairs} products, {len(mismatches)} mismatches")


def test_5_newton_suite(criterion):
    failures, count = [], 0
    for p in (0, 2, 3):
        for n in range(1, 6):
            for s in range(n + 1, n + 7):
                count += 1
                if not verify_newton_identity(n, s, Field(p)):
                    failures.append((p, n, s))
    criterion.finish("5 Newton suite", not failures, 60, f"{count} identities, failures {failures}")


def test_6_theorem_rank_suite(criterion):
    bad, cells = [], 0
    for p in (2, 3):
        for n in range(2, 7):
            for d in range(0, 4):
                cells += 1
                report = verify_theorem(p, n, d)
                bad.extend((p, n, d, c.degree) for c in report.failures())
    report = verify_theorem(2, 8, 2, 14)
    cells += 1
    bad.extend((2, 8, 2, c.degree) for c in report.failures())
    criterion.finish("6 theorem rank suite", not bad, 600, f"{cells} cells, rank mismatches {bad}")


def test_7_conjecture_sweep(criterion):
    results = [sweep([2, 3, 5, 7], 6, 3, n_min=2, d_min=1)]
    results.append(sweep([2], 9, 2, n_min=7, d_min=1))
    reports = [r for res in results for r in res.reports]
    failing = [r for r in reports if not r.passed]
    for r in failing:
        print(r.render_text())
    criterion.finish(
        "7 conjecture sweep", not failing, 1800,
        f"{len(reports)} cells, failing {[(r.p, r.n, r.d) for r in failing]}",
    )


def test_8_negative_control(criterion):
    target = graded_target_basis(2, 1, 4)
    base = [MSymPoly.monomial((2,), 2, F2), MSymPoly.monomial((3,), 2, F2)]
    short = matrix_rank(ideal_graded_span(base, 2, 4, F2))
    full = matrix_rank(ideal_graded_span(base + [MSymPoly.monomial((2, 2), 2, F2)], 2, 4, F2))
    ok = short < len(target) and full == len(target)
    criterion.finish("8 negative control", ok, 1, f"rank {short} -> {full}, target size {len(target)}")


def test_9_structural_properties(criterion, rng):
    test_msym.test_lemma_comp1_structure()
    test_msym.test_lemma_comp2_leading_coefficient()
    for p in (2, 3):
        test_msym.test_newton_like_telescoping(p)
        test_ideal.test_base_generators_contain_invertible_multiplicities(p)
    for i in (1, 2):
        test_ideal.test_adding_block_covers_multiplicity_up_to_block_size(i)
    test_field.test_lucas_agrees_with_pascal_triangle()
    for p in (2, 3, 5, 7):
        test_field.test_top_digit_identity(p)
    criterion.finish("9 structural lemma properties", True, 300)
