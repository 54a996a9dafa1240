"""Sharper property tests for contract invariants across modules."""

import itertools

import numpy as np

import symba as sy
from symba import serialize

from conftest import make_table_ca, symmetric_table


def test_ball_products_nest_up_to_three(Z2, F2):
    for G in (Z2, F2):
        for r in range(4):
            for s in range(4):
                big = sy.ball(G, r + s)
                prod = sy.set_product(G, sy.ball(G, r), sy.ball(G, s))
                assert prod.issubset(big)
                assert prod == big  # balls multiply exactly in these groups


def test_ball_action_images_move_the_basepoint_correctly(F2):
    """The embedding sends each word w to a permutation mapping 1 -> w."""
    S = sy.ball(F2, 3)
    e = sy.build_embedding(F2, S, {"kind": "ball_action", "radius": 3})
    pts = sy.ball(F2, 4)
    origin = pts.index_of(F2.identity())
    for w in S:
        assert pts[e.phi[w][origin]] == w


def test_determinacy_monotone_randomized(Z):
    """Determined at N stays determined at symmetric supersets of N."""
    rng = np.random.default_rng(67)
    for q in (2, 3):
        A = sy.Alphabet.plain(q)
        for trial in range(10):
            perm = np.concatenate([[0], 1 + rng.permutation(q - 1)]).astype(np.int64)
            g = (int(rng.integers(-1, 2)),)
            tau = make_table_ca(Z, A, [g], perm)
            for r in range(3):
                if sy.determinacy_check(tau, sy.ball(Z, r)).is_determined:
                    for bigger in range(r + 1, 4):
                        assert sy.determinacy_check(tau, sy.ball(Z, bigger)).is_determined
                    break


def test_mixed_flavor_inverse_check(Z):
    """A table rule can certify a matrix rule and vice versa."""
    A = sy.Alphabet.module(2, 2)
    E = lambda d: sy.GroupRingElement(Z, 2, d)
    C = sy.GroupRingMatrix(Z, 2, [[E({}), E({(0,): 1})], [E({(0,): 1}), E({(1,): 1})]])
    D = sy.GroupRingMatrix(Z, 2, [[E({(1,): 1}), E({(0,): 1})], [E({(0,): 1}), E({})]])
    tau = sy.to_linear_ca(C, Z, A)
    sig = sy.to_linear_ca(D, Z, A)
    sig_table = sy.CellularAutomaton(
        Z, A, sy.LocalRule(sig.memory, sig.rule.map.expand_table())
    )
    tau_table = sy.CellularAutomaton(
        Z, A, sy.LocalRule(tau.memory, tau.rule.map.expand_table())
    )
    assert sy.check_left_inverse(sig_table, tau)
    assert sy.check_left_inverse(sig, tau_table)
    assert sy.check_right_inverse(sig_table, tau)


def test_witness_is_deterministic(Z, bit):
    xor = make_table_ca(Z, bit, [(0,), (1,)], [0, 1, 1, 0])
    first = sy.synthesize_left_inverse(xor, 2)
    second = sy.synthesize_left_inverse(xor, 2)
    assert first.witness[0].values == second.witness[0].values
    assert first.witness[1].values == second.witness[1].values


def test_group_alphabet_ca_round_trip(Z):
    A = sy.Alphabet.group(symmetric_table(3))
    shift = sy.projection_ca(Z, A, (1,))
    blob = serialize.canonical_dumps(serialize.ca_to_json(shift))
    import json

    again = serialize.ca_from_json(json.loads(blob))
    assert sy.same_action(again, shift)
    assert serialize.canonical_dumps(serialize.ca_to_json(again)) == blob


def test_symmetrize_output_properties_random(F2):
    rng = np.random.default_rng(3)
    pool = list(sy.ball(F2, 2))
    for _ in range(20):
        pick = [pool[i] for i in rng.choice(len(pool), size=4, replace=False)]
        S = sy.symmetrize(F2, sy.FiniteSubset(F2, pick))
        assert F2.identity() in S
        assert {F2.inv(x) for x in S} == set(S)
        assert sy.symmetrize(F2, S) == S


def test_trivial_lattice_embedding_and_pipeline(bit):
    G0 = sy.FreeAbelianGroup(0)
    S = sy.FiniteSubset(G0, [()])
    e = sy.build_embedding(G0, S, None)
    assert e.target.order() == 1
    ident = sy.identity_ca(G0, bit)
    out = sy.transport_inverse_pipeline(ident, e)
    assert sy.same_action(out.ca, ident)


def test_evolve_multiple_steps(Z, bit):
    xor = make_table_ca(Z, bit, [(0,), (1,)], [0, 1, 1, 0])
    dom = sy.FiniteSubset(Z, [(i,) for i in range(5)])
    out = sy.evolve(xor, sy.Pattern(dom, (1, 0, 1, 1, 0)), 2)
    assert [e for e in out.domain] == [(0,), (1,), (2,)]
    assert out.values == (0, 1, 1)


def test_verify_embedding_requires_window_coverage(Z):
    import pytest

    e = sy.build_embedding(Z, sy.ball(Z, 1), None)
    with pytest.raises(sy.InvalidInputError):
        sy.verify_embedding(e, sy.ball(Z, 1))  # M*M = ball(2) escapes ball(1)


def test_compose_three_way_associative_action(Z, bit):
    """Composing in either association order gives the same action."""
    rng = np.random.default_rng(8)
    cas = []
    for mem in ([(0,)], [(1,)], [(-1,), (0,)]):
        table = rng.integers(0, 2, size=2 ** len(mem))
        table[0] = 0
        cas.append(make_table_ca(Z, bit, mem, table))
    a, b, c = cas
    left = sy.compose(sy.compose(a, b), c)
    right = sy.compose(a, sy.compose(b, c))
    assert list(left.memory) == list(right.memory)
    assert sy.same_action(left, right)
