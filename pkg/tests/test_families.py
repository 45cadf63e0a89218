import pytest

from semichomp.decider import decide_winner, is_winning_first_move
from semichomp.errors import InvalidArgumentError, NoStrategyError
from semichomp.families import (
    TAG_ARITH_K2,
    TAG_ARITH_OPENING,
    TAG_INTERVAL_2A3,
    TAG_INTERVAL_3K,
    TAG_MED,
    TAG_SYMMETRIC,
    arithmetic_even_reply,
    arithmetic_involution,
    classify,
    detect_shape,
    interval_3k_involution,
    med_strategy,
    remove_upset,
)
from semichomp.posetgame import (
    FinitePoset,
    Solver,
    find_isomorphism,
    pairing_strategy,
    solve,
    ten_element_poset,
)
from semichomp.semigroup import new_semigroup


def interval(a, k):
    return new_semigroup(list(range(a, a + k + 1)))


def test_detect_shape_fig2():
    S = new_semigroup([11, 13, 15, 17, 19])
    shape = detect_shape(S)
    assert (shape.a, shape.h, shape.d, shape.k) == (11, 1, 2, 4)
    assert not shape.interval


def test_detect_shape_interval():
    shape = detect_shape(interval(6, 3))
    assert (shape.a, shape.h, shape.d, shape.k) == (6, 1, 1, 3)
    assert shape.interval


def test_detect_shape_none():
    assert detect_shape(new_semigroup([6, 7, 11])) is None


def test_detect_shape_two_generated():
    shape = detect_shape(new_semigroup([3, 5]))
    assert (shape.a, shape.h, shape.d, shape.k) == (3, 1, 2, 1)


def test_shape_structure_matches_apery(corpus):
    # closed-form Apery set, layer partition, and the ordering law
    for gens in ([5, 7, 9], [11, 13, 15, 17, 19], [7, 8, 9, 10], [9, 10, 11, 12],
                 [5, 6, 7], [4, 5, 6], [13, 15, 17], [6, 7, 8, 9, 10, 11]):
        S = new_semigroup(gens)
        shape = detect_shape(S)
        if shape is None or shape.a > 25:
            continue
        ap = S.apery(shape.a)
        layers = shape.layers()
        flat = [v for layer in layers for v in layer]
        assert sorted(flat) == list(ap.elements)
        assert len(flat) == len(set(flat))
        # ordering law: x(j,l) < x(j',l') iff j < j' and l >= l'
        for j, layer in enumerate(layers):
            for j2, layer2 in enumerate(layers):
                for li, v in enumerate(layer):
                    for li2, v2 in enumerate(layer2):
                        if v == v2:
                            continue
                        ell = shape.k if j == 0 else li + 1
                        ell2 = shape.k if j2 == 0 else li2 + 1
                        expected = j < j2 and ell >= ell2
                        assert S.leq(v, v2) == expected, (gens, v, v2)


def test_symmetry_criterion_for_shapes():
    # generalized arithmetic S is symmetric iff a-2 is a multiple of k
    for gens in ([5, 7, 9], [4, 5, 6], [7, 8, 9], [11, 13, 15, 17, 19],
                 [9, 10, 11], [10, 11, 12, 13, 14], [8, 11, 14], [6, 7, 8, 9, 10]):
        S = new_semigroup(gens)
        shape = detect_shape(S)
        assert shape is not None
        assert S.is_symmetric() == ((shape.a - 2) % shape.k == 0), gens


def test_arithmetic_involution_5_7_9():
    S = new_semigroup([5, 7, 9])
    shape = detect_shape(S)
    phi = arithmetic_involution(shape)
    poset = FinitePoset.from_leq(S.apery(5).elements, S.leq)
    strat = pairing_strategy(poset, {lab: phi[lab] for lab in poset.labels})
    assert strat.fixed_mask == 1 << poset.index(0)


def test_arithmetic_involution_fig2():
    S = new_semigroup([11, 13, 15, 17, 19])
    shape = detect_shape(S)
    phi = arithmetic_involution(shape)
    poset = FinitePoset.from_leq(S.apery(11).elements, S.leq)
    strat = pairing_strategy(poset, {lab: phi[lab] for lab in poset.labels})
    assert strat.fixed_mask == 1 << poset.index(0)
    assert is_winning_first_move(S, 11)


def test_arithmetic_involution_parity_errors():
    with pytest.raises(InvalidArgumentError):
        arithmetic_involution(detect_shape(new_semigroup([4, 5, 6])))


def test_arithmetic_even_reply_4_5_6():
    S = new_semigroup([4, 5, 6])
    shape = detect_shape(S)
    reply, phi = arithmetic_even_reply(shape)
    assert reply == 11  # top layer's last element
    ap = list(S.apery(4).elements)
    assert reply in ap
    # the reply is a winning answer to the opening move 4
    poset = FinitePoset.from_leq(ap, S.leq)
    after = poset.full & ~poset.up[poset.index(reply)]
    assert not Solver(poset).solve(after).mover_wins
    # and the involution on the rest validates
    rest = [v for v in ap if v != reply]
    sub = FinitePoset.from_leq(rest, S.leq)
    strat = pairing_strategy(sub, {lab: phi[lab] for lab in sub.labels})
    assert strat.fixed_mask == 1 << sub.index(0)


def test_interval_3k_involution_k3():
    S = interval(9, 3)
    phi = interval_3k_involution(3)
    ap = list(S.apery(10).elements)
    assert len(ap) == 10
    assert sorted(phi) == ap
    assert all(phi[v] == v for v in ap)  # k=3: everything is fixed
    sub = FinitePoset.from_leq(ap, S.leq)
    iso = find_isomorphism(sub, ten_element_poset())
    assert iso is not None


def test_interval_3k_involution_k5():
    S = interval(15, 5)
    ap = list(S.apery(16).elements)
    assert len(ap) == 16
    phi = interval_3k_involution(5)
    poset = FinitePoset.from_leq(ap, S.leq)
    strat = pairing_strategy(poset, {lab: phi[lab] for lab in poset.labels})
    fixed_labels = {poset.labels[i] for i in range(len(poset))
                    if (strat.fixed_mask >> i) & 1}
    assert len(fixed_labels) == 10
    assert fixed_labels == {0, 15, 30, 45, 19, 20, 39, 40, 59, 60}
    sub = FinitePoset.from_leq(sorted(fixed_labels), S.leq)
    assert find_isomorphism(sub, ten_element_poset()) is not None


def test_interval_3k_type():
    for k in (3, 5, 7):
        assert interval(3 * k, k).type() == k - 1


def test_interval_3k_closed_form():
    for k in (3, 5, 7):
        S = interval(3 * k, k)
        expected = sorted(
            {0, 3 * k, 6 * k, 9 * k}
            | {r + i for r in (3 * k, 7 * k, 11 * k) for i in range(2, k + 1)}
        )
        assert list(S.apery(3 * k + 1).elements) == expected


def test_interval_3k_errors():
    with pytest.raises(InvalidArgumentError):
        interval_3k_involution(4)
    with pytest.raises(InvalidArgumentError):
        interval_3k_involution(1)


def test_classify_examples():
    r = classify(new_semigroup([9, 10, 11, 12]))
    assert (r.winner, r.winning_move, r.theorem) == ("A", 10, TAG_INTERVAL_3K)
    r = classify(interval(8, 3))  # <8..11>: symmetric (a-2 = 6 = 2k)
    assert (r.winner, r.theorem) == ("B", TAG_SYMMETRIC)
    r = classify(new_semigroup([5, 7, 9]))
    assert (r.winner, r.winning_move) == ("A", 5)
    r = classify(new_semigroup([3, 4, 5]))
    assert (r.winner, r.winning_move, r.theorem) == ("A", 3, TAG_MED)
    r = classify(interval(8, 5))
    assert (r.winner, r.theorem) == ("B", TAG_INTERVAL_2A3)
    assert r.strategy is not None
    r = classify(interval(6, 3))
    assert (r.winner, r.winning_move, r.theorem) == ("A", 36, TAG_INTERVAL_2A3)
    r = classify(new_semigroup([5, 6, 7]))
    assert (r.winner, r.winning_move, r.theorem) == ("A", 5, TAG_ARITH_K2)
    r = classify(new_semigroup([6, 7, 11]))
    assert r.winner is None and r.matched_family == "none"
    r = classify(new_semigroup([1]))
    assert (r.winner, r.winning_move) == ("A", 1)


def test_classify_winning_moves_verified():
    for gens in ([3, 4, 5], [5, 7, 9], [5, 6, 7], [9, 10, 11, 12], [11, 13, 15, 17, 19]):
        r = classify(new_semigroup(gens))
        assert r.winner == "A"
        assert is_winning_first_move(new_semigroup(gens), r.winning_move)


def test_classify_matches_decider(corpus):
    for S in corpus:
        r = classify(S)
        if r.winner is None or S.gap_count > 12:
            continue
        assert decide_winner(S).winner == r.winner, S


def test_pairing_winner_equality_family_instances():
    # the full board and the fixed core have the same winner on every
    # validated involution from the two families
    for gens in ([5, 7, 9], [7, 9, 11], [9, 11, 13], [11, 13, 15, 17, 19],
                 [13, 15, 17], [7, 8, 9]):
        S = new_semigroup(gens)
        shape = detect_shape(S)
        if shape.a % 2 == 0 or shape.k % 2 == 1:
            continue
        phi = arithmetic_involution(shape)
        poset = FinitePoset.from_leq(S.apery(shape.a).elements, S.leq)
        strat = pairing_strategy(poset, {lab: phi[lab] for lab in poset.labels})
        assert solve(poset).mover_wins is strat._solve_fixed(strat.fixed_mask).mover_wins
    for k in (3, 5):
        S = interval(3 * k, k)
        phi = interval_3k_involution(k)
        poset = FinitePoset.from_leq(S.apery(3 * k + 1).elements, S.leq)
        strat = pairing_strategy(poset, {lab: phi[lab] for lab in poset.labels})
        assert solve(poset).mover_wins is strat._solve_fixed(strat.fixed_mask).mover_wins


def test_med_strategy_3_4_5():
    S = new_semigroup([3, 4, 5])
    strat = med_strategy(S, "A")
    assert strat.first_move() == 3
    board = frozenset(S.apery(3).elements)
    after = remove_upset(S, board, 4)
    assert strat.reply(after, 4) == 5


def test_med_strategy_4567_side_b():
    S = new_semigroup([4, 5, 6, 7])
    strat = med_strategy(S, "B")
    board = frozenset(S.apery(4).elements)
    assert board == frozenset({0, 5, 6, 7})
    assert strat.reply(board, 4) == 5
    with pytest.raises(NoStrategyError):
        med_strategy(S, "A")
    with pytest.raises(NoStrategyError):
        med_strategy(new_semigroup([3, 4, 5]), "B")
