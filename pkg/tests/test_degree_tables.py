from itertools import product

import pytest

from pdmm.degree_tables import (
    ExponentPlan,
    NoSolutionError,
    ParamOutOfRangeError,
    SideConditionViolatedError,
    best_classical_plan,
    build_cat,
    build_dog,
    build_gasp_r,
    build_gasp_rs,
    build_low_privacy,
    build_qf_additive,
    build_qf_klt,
    build_qf_kt,
    build_qf_kt_shift,
    build_qf_power,
    build_qf_square,
    build_quantum_family,
    check_decodable,
    gap_progression,
    gasp_server_formula,
    optimal_gasp_r,
    outer_sum,
    parse_plan_record,
    plan_record,
)


def enum_servers(plan):
    """Independent count: materialize the outer-sum set directly."""
    q = plan.modulus_q
    sums = {a + b for a in plan.alpha for b in plan.beta}
    if q:
        sums = {v % q for v in sums}
    return len(sums)


def test_gap_progression():
    assert gap_progression(5, 4, 2) == [0, 1, 4, 5, 8]
    assert gap_progression(3, 7, 3) == [0, 1, 2]
    assert gap_progression(4, 2, 1) == [0, 2, 4, 6]
    with pytest.raises(ParamOutOfRangeError):
        gap_progression(3, 2, 0)


def test_gasp_r_small():
    plan = build_gasp_r(2, 2, 1, 1)
    assert plan.alpha == (0, 1, 4)
    assert plan.beta == (0, 2, 4)
    assert outer_sum(plan).n_servers == 8


def test_gasp_r_exponents_and_count():
    plan = build_gasp_r(2, 2, 3, 2)
    assert plan.alpha == (0, 1, 4, 5, 6)
    assert plan.beta == (0, 2, 4, 5, 6)
    assert outer_sum(plan).n_servers == 13


def test_gasp_optimal_known_counts():
    # closed-form optimum for K = L = T = n^2 is n^4 + 2n^3 + 2n^2 - n - 2
    assert outer_sum(optimal_gasp_r(4, 4, 4)).n_servers == 36
    assert outer_sum(optimal_gasp_r(9, 9, 9)).n_servers == 148


def test_server_formula_examples():
    assert gasp_server_formula(2, 2, 3, 2) == 13
    assert min(gasp_server_formula(4, 4, 4, r) for r in range(1, 5)) == 36
    assert min(gasp_server_formula(9, 9, 9, r) for r in range(1, 10)) == 148


def test_server_formula_matches_enumeration_sample_grid():
    for K, L, T in product(range(1, 7), repeat=3):
        for r in range(1, min(K, T) + 1):
            plan = build_gasp_r(K, L, T, r)
            assert gasp_server_formula(K, L, T, r) == enum_servers(plan), (K, L, T, r)


def test_gasp_rs():
    assert build_gasp_rs(2, 2, 2, 1, 1).alpha == (0, 1, 4, 6)
    assert build_gasp_rs(2, 2, 2, 1, 1).beta == (0, 2, 4, 6)
    plan = build_gasp_rs(2, 2, 2, 2, 2)
    assert plan.alpha == (0, 1, 4, 5) and plan.beta == (0, 2, 4, 5)
    # chain length >= T collapses the noise block to a consecutive run
    wide = build_gasp_rs(3, 2, 2, 2, 2)
    assert wide.beta[-2:] == (6, 7)
    with pytest.raises(ParamOutOfRangeError):
        build_gasp_rs(2, 2, 1, 1, 1)


def test_dog():
    plan = build_dog(2, 2, 2, 1, 1)
    assert plan.alpha == (0, 1, 2, 5)
    assert plan.beta == (0, 3, 5, 8)
    assert build_dog(3, 2, 2, 2, 2).alpha[-2:] == (3, 4)
    # chain length 1 gives an arithmetic progression with step K + r
    s1 = build_dog(3, 3, 3, 2, 1)
    steps = {b - a for a, b in zip(s1.beta[-3:], s1.beta[-2:])}
    assert steps == {5}


def test_cat_hand_case():
    plan = build_cat(2, 2, 2, x=1)
    assert plan.modulus_q == 10
    assert plan.param("y") == 3
    assert plan.alpha == (0, 3, 6, 7)
    assert plan.beta == (0, 1, 9, 2)
    table = outer_sum(plan)
    assert table.n_servers == 10
    assert table.info_sums == frozenset({0, 1, 3, 4})


def test_cat_parameters():
    assert build_cat(3, 2, 2).modulus_q == 13  # K* = 4, L* = 3
    plan = build_cat(5, 4, 2)
    assert plan.param("kappa") == 0 and plan.param("lambda") == 0  # T-1 = 1
    with pytest.raises(ParamOutOfRangeError):
        build_cat(2, 2, 2, x=2)  # shares a factor with q = 10
    with pytest.raises(NoSolutionError):
        build_cat(3, 3, 3)  # cyclic table cannot cover all residues here


def test_cat_server_count_is_q_on_grid():
    for K in range(2, 8):
        for L in range(2, K + 1):
            plan = build_cat(K, L, 2)
            assert outer_sum(plan).n_servers == plan.modulus_q


def test_qf_square():
    plan = build_qf_square(2)
    assert plan.alpha == (0, 1, 2, 3, 16, 17, 18, 19)
    assert plan.beta == (0, 1, 2, 3, 7, 11, 15, 19)
    assert plan.info_alpha == (4, 5, 6, 7)
    assert outer_sum(plan).n_servers == 39
    for n in range(2, 7):
        assert outer_sum(build_qf_square(n)).n_servers == 2 * n**4 + 2 * n**2 - 1


def test_qf_power():
    for n, k, m in [(2, 2, 2), (2, 2, 3), (2, 2, 4), (3, 2, 2), (2, 3, 3), (2, 3, 4)]:
        plan = build_qf_power(n, k, m)
        want = 2 * n**(2 * k) + 3 * n**m - n**k - 1
        assert outer_sum(plan).n_servers == want == enum_servers(plan)
    with pytest.raises(ParamOutOfRangeError):
        build_qf_power(2, 3, 2)


def test_qf_additive():
    for n, k in [(2, 1), (2, 2), (3, 1), (3, 2)]:
        top = n**(2 * k) - n**k + 1
        for r in range(0, min(top, 7)):
            plan = build_qf_additive(n, k, r)
            want = 2 * n**(2 * k) + 2 * n**k + 2 * r - 1
            assert outer_sum(plan).n_servers == want, (n, k, r)
            assert check_decodable(plan).ok, (n, k, r)
    with pytest.raises(ParamOutOfRangeError):
        build_qf_additive(2, 1, 3)


def test_qf_klt():
    plan = build_qf_klt(3, 2)
    assert plan.alpha == (0, 1, 3, 5, 7)
    assert plan.beta == (0, 1, 6, 7)
    assert outer_sum(plan).n_servers == 15
    for K in range(2, 9):
        for T in range(1, K + 1):
            assert outer_sum(build_qf_klt(K, T)).n_servers == 2 * K * T + 2 * T - 1


def test_qf_kt():
    plan = build_qf_kt(2, 3, 1)
    assert plan.K == 8 and plan.L == 2 and plan.T == 8
    assert outer_sum(plan).n_servers == 47
    for n, k, ell in [(2, 2, 1), (2, 2, 2), (2, 3, 2), (3, 2, 1)]:
        want = 2 * n**(k + ell) + 2 * n**k - 1
        assert outer_sum(build_qf_kt(n, k, ell)).n_servers == want


def test_qf_kt_shift():
    for n, ell, r in [(2, 1, 1), (2, 1, 2), (2, 2, 1), (3, 1, 2)]:
        plan = build_qf_kt_shift(n, ell, r)
        m = n**ell
        want = 2 * m * m + 2 * r * m + 2 * m + 2 * r - 1
        assert outer_sum(plan).n_servers == want == enum_servers(plan)
        assert check_decodable(plan).ok


def test_quantum_family_dispatch():
    assert build_quantum_family("qf_square", n=2) == build_qf_square(2)
    with pytest.raises(ParamOutOfRangeError):
        build_quantum_family("nope")


def test_low_privacy_hand_cases():
    small = build_low_privacy(2, 2, 1)
    assert small.alpha == (0, 2, 4) and small.beta == (0, 1, 4, 5)
    assert outer_sum(small).n_servers == 10
    bigger = build_low_privacy(3, 3, 1)
    assert bigger.alpha == (0, 3, 5, 7)
    assert bigger.beta == (0, 1, 2, 10, 18, 26)
    assert outer_sum(bigger).n_servers == 22


def test_low_privacy_equal_sides():
    plan = build_low_privacy(4, 4, 3)
    assert plan.alpha == (0, 1, 2, 3, 18, 19, 20, 35)
    assert plan.beta == (0, 1, 2, 5, 8, 11, 14)
    assert outer_sum(plan).n_servers == 42
    assert outer_sum(build_low_privacy(5, 5, 2)).n_servers == 58
    for L, T in [(4, 2), (4, 3), (5, 2), (5, 3), (5, 4), (6, 2), (7, 3)]:
        plan = build_low_privacy(L, L, T)
        assert outer_sum(plan).n_servers == 2 * L * L + L + 3 * T - 3
        assert check_decodable(plan).ok


def test_low_privacy_general():
    plan = build_low_privacy(9, 8, 7)
    m, delta = plan.param("m"), plan.param("delta")
    assert (m, delta) == (1, 2)
    want = 9 * (8 + 3) + (m + 2) * 6 + 64 - 16
    assert outer_sum(plan).n_servers == want == 165
    assert check_decodable(plan).ok


def test_low_privacy_rejections():
    with pytest.raises(ParamOutOfRangeError):
        build_low_privacy(3, 3, 4)  # needs L > T
    with pytest.raises(SideConditionViolatedError):
        build_low_privacy(7, 3, 2)  # interference run too short
    with pytest.raises(SideConditionViolatedError):
        build_low_privacy(9, 4, 3)


def test_outer_sum_examples():
    table = outer_sum(build_gasp_r(2, 2, 1, 1))
    assert set(table.exponents) == {0, 1, 2, 3, 4, 5, 6, 8}
    assert table.info_sums == frozenset({0, 1, 2, 3})
    single = ExponentPlan(family="gasp_r", K=1, L=1, T=0,
                          alpha=(0,), beta=(0,), info_alpha=(0,), info_beta=(0,))
    assert outer_sum(single).n_servers == 1
    assert outer_sum(single).table == ((0,),)


def test_check_decodable():
    assert check_decodable(build_gasp_r(2, 2, 3, 2)).ok
    # info exponent colliding with a noise exponent breaks condition 1
    collide = ExponentPlan(family="gasp_r", K=2, L=2, T=1,
                           alpha=(0, 1, 1), beta=(0, 2, 4),
                           info_alpha=(0, 1), info_beta=(0, 1))
    assert not check_decodable(collide).ok
    # repeated noise exponents break condition 2
    dup = ExponentPlan(family="gasp_r", K=2, L=2, T=2,
                       alpha=(0, 1, 4, 4), beta=(0, 2, 4, 5),
                       info_alpha=(0, 1), info_beta=(0, 1))
    report = check_decodable(dup)
    assert not report.ok and "alpha" in report.reason


def test_constructor_grid_all_decodable():
    plans = []
    for K, L, T in product(range(1, 5), range(1, 5), range(1, 5)):
        for r in range(1, min(K, T) + 1):
            plans.append(build_gasp_r(K, L, T, r))
            if T >= 2:
                plans.append(build_gasp_rs(K, L, T, r, min(K, T)))
    for K, L, T in product(range(2, 5), range(2, 5), range(2, 5)):
        if K >= L >= T:
            try:
                plans.append(build_cat(K, L, T))
            except NoSolutionError:
                pass
        if T >= 2:
            plans.append(build_dog(K, L, T, 1, 1))
    for n in (2, 3):
        plans.append(build_qf_square(n))
        plans.append(build_qf_klt(n + 1, n))
        plans.append(build_qf_kt(n, 2, 1))
        plans.append(build_qf_kt_shift(n, 1, 1))
        plans.append(build_qf_additive(n, 1, 1))
    plans += [build_low_privacy(2, 2, 1), build_low_privacy(3, 3, 1),
              build_low_privacy(4, 4, 3), build_low_privacy(5, 5, 2),
              build_low_privacy(9, 8, 7)]
    assert len(plans) > 200
    for plan in plans:
        assert check_decodable(plan).ok, plan


def test_best_classical_plan():
    best = best_classical_plan(2, 2, 2)
    assert best.family == "cat_x"
    assert outer_sum(best).n_servers == 10
    assert outer_sum(best_classical_plan(3, 2, 2)).n_servers <= 14


def test_plan_record_roundtrip():
    for plan in (build_gasp_r(2, 2, 3, 2), build_cat(2, 2, 2),
                 build_low_privacy(4, 4, 3), build_qf_square(2)):
        line = plan_record(plan)
        assert parse_plan_record(line) == plan
        assert " | " in line
