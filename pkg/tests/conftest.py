"""Shared builders and independent oracles for the test suite.

The oracles here deliberately avoid the library code paths they are used to
check: they index windows with their own dictionaries, decode pattern
spaces with their own mixed-radix arithmetic, and touch rule tables
directly.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

import symba as sy


@pytest.fixture
def Z():
    return sy.FreeAbelianGroup(1)


@pytest.fixture
def Z2():
    return sy.FreeAbelianGroup(2)


@pytest.fixture
def F2():
    return sy.FreeGroup(2)


@pytest.fixture
def bit():
    return sy.Alphabet.plain(2)


def make_table_ca(G, A, memory_elems, table):
    memory = sy.FiniteSubset(G, memory_elems)
    smap = sy.StructuredMap(A, len(memory), table=table)
    return sy.CellularAutomaton(G, A, sy.LocalRule(memory, smap))


def xor_ca(G, A, cells):
    """Sum mod alphabet-size over the given memory cells (table rule)."""
    memory = sy.FiniteSubset(G, cells)
    m = len(memory)
    q = A.size
    table = [sum(w) % q for w in itertools.product(range(q), repeat=m)]
    return make_table_ca(G, A, list(memory), table)


def symmetric_table(n):
    """Multiplication table of the symmetric group on n points."""
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    return [
        [index[tuple(p[q[k]] for k in range(n))] for q in perms] for p in perms
    ]


def reduce_word_free(word):
    """Independent free reduction: repeated adjacent-cancellation scan."""
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def brute_force_free_ball(rank, radius):
    """All reduced words of length <= radius, by reducing every raw string."""
    letters = [i for i in range(1, rank + 1)] + [-i for i in range(1, rank + 1)]
    seen = set()
    for n in range(radius + 1):
        for raw in itertools.product(letters, repeat=n):
            w = reduce_word_free(raw)
            if len(w) <= radius:
                seen.add(w)
    return seen


def oracle_left_identity(sigma, tau, window_elems, cap=1 << 18):
    """Brute force: does sigma-after-tau fix every pattern on the window?

    Enumerates every assignment on the cells {g*s*m} for g in the window,
    s in sigma's memory, m in tau's memory, evaluates the composite through
    the raw rule tables, and compares with the window values. Returns None
    when the pattern space would exceed `cap`.
    """
    G, A = tau.universe, tau.alphabet
    q = A.size
    Ms, Mt = list(sigma.memory), list(tau.memory)
    tbl_s = sigma.rule.map.expand_table().table
    tbl_t = tau.rule.map.expand_table().table

    cells = []
    index = {}

    def idx(u):
        if u not in index:
            index[u] = len(cells)
            cells.append(u)
        return index[u]

    pos = np.array(
        [
            [[idx(G.mul(G.mul(g, s), m)) for m in Mt] for s in Ms]
            for g in window_elems
        ],
        dtype=np.int64,
    )
    win = np.array([idx(g) for g in window_elems], dtype=np.int64)
    n = len(cells)
    if q**n > cap:
        return None
    radix = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    X = (np.arange(q**n, dtype=np.int64)[:, None] // radix[None, :]) % q
    rt = q ** np.arange(len(Mt) - 1, -1, -1, dtype=np.int64)
    rs = q ** np.arange(len(Ms) - 1, -1, -1, dtype=np.int64)
    for gi in range(len(window_elems)):
        inner = tbl_t[X[:, pos[gi]] @ rt]
        out = tbl_s[inner @ rs]
        if not np.array_equal(out, X[:, win[gi]]):
            return False
    return True


def random_pointed_table(rng, A, arity):
    """A uniformly random rule table fixing the all-basepoints window."""
    q = A.size
    table = rng.integers(0, q, size=q**arity)
    base_idx = int(sum(A.basepoint * q**k for k in range(arity)))
    table[base_idx] = A.basepoint
    return table
