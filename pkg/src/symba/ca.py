"""Cellular automata on group universes and their finite-window calculus.

A CA is a universe G, an alphabet A, and a local rule (memory subset M plus
a map A^M -> A, coordinates in canonical M order). The new value at cell g
reads the old values at the cells g*m for m in M. Nothing infinite is ever
materialized: every operation works on patterns, finite windows E with an
assignment E -> A, again in canonical order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .alphabets import Alphabet, StructuredMap, decode_assignments, verify_pointed
from .caps import check_size
from .errors import EmptyWindowError, InvalidInputError
from .groups import FiniteSubset, Group, set_product, symmetrize

_SCAN_CHUNK = 1 << 16


@dataclass(frozen=True)
class Pattern:
    """A finite window: domain subset E plus one alphabet index per cell."""

    domain: FiniteSubset
    values: tuple

    def __post_init__(self):
        if len(self.values) != len(self.domain):
            raise InvalidInputError(
                f"pattern needs {len(self.domain)} values, got {len(self.values)}"
            )
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    @classmethod
    def from_dict(cls, domain: FiniteSubset, assignment: dict) -> "Pattern":
        return cls(domain, tuple(assignment[e] for e in domain))

    def value_at(self, e) -> int:
        return self.values[self.domain.index_of(e)]

    def restrict(self, sub: FiniteSubset) -> "Pattern":
        return Pattern(sub, tuple(self.values[self.domain.index_of(e)] for e in sub))

    def translate(self, g) -> "Pattern":
        """The left translate: value at g*e equals the old value at e."""
        G = self.domain.group
        moved = {G.mul(g, e): v for e, v in zip(self.domain, self.values)}
        dom = FiniteSubset(G, moved.keys())
        return Pattern.from_dict(dom, moved)

    def to_json(self, alphabet: Alphabet) -> dict:
        G = self.domain.group
        return {
            "domain": [G.elem_to_json(e) for e in self.domain],
            "values": [alphabet.value_to_json(v) for v in self.values],
        }


class LocalRule:
    """Memory subset plus a structured map of matching arity.

    The map must be pointed (send the all-basepoints window to the
    basepoint); this is checked at construction.
    """

    def __init__(self, memory: FiniteSubset, smap: StructuredMap):
        if smap.arity != len(memory):
            raise InvalidInputError(
                f"map arity {smap.arity} does not match memory size {len(memory)}"
            )
        if not verify_pointed(smap):
            raise InvalidInputError("local rule map is not pointed")
        self.memory = memory
        self.map = smap

    @property
    def alphabet(self):
        return self.map.alphabet

    def __repr__(self):
        return f"LocalRule(|memory|={len(self.memory)}, {self.map!r})"


class CellularAutomaton:
    """Universe + alphabet + local rule."""

    def __init__(self, universe: Group, alphabet: Alphabet, rule: LocalRule):
        if rule.memory.group != universe:
            raise InvalidInputError("rule memory does not live in the universe")
        if rule.alphabet != alphabet:
            raise InvalidInputError("rule map is not over the given alphabet")
        self.universe = universe
        self.alphabet = alphabet
        self.rule = rule

    @property
    def memory(self) -> FiniteSubset:
        return self.rule.memory

    def __repr__(self):
        return (
            f"CellularAutomaton(over {self.universe!r}, {self.alphabet!r}, "
            f"|memory|={len(self.memory)})"
        )


def identity_ca(G: Group, A: Alphabet) -> CellularAutomaton:
    """The identity automaton: memory {1_G}, value copied through."""
    return projection_ca(G, A, G.identity())


def projection_ca(G: Group, A: Alphabet, elem) -> CellularAutomaton:
    """The CA reading off the value at g*elem (a shift for elem != 1)."""
    memory = FiniteSubset(G, [elem])
    smap = StructuredMap(A, 1, table=np.arange(A.size))
    return CellularAutomaton(G, A, LocalRule(memory, smap))


def window_positions(domain: FiniteSubset, E, M) -> np.ndarray:
    """(len(E), len(M)) array: entry [i, j] = position of E[i]*M[j] in domain."""
    G = domain.group
    out = np.empty((len(E), len(M)), dtype=np.int64)
    for i, g in enumerate(E):
        for j, m in enumerate(M):
            out[i, j] = domain.index_of(G.mul(g, m))
    return out


def induced_map(tau: CellularAutomaton, E: FiniteSubset, p: Pattern) -> Pattern:
    """Apply the rule on the window E; p must cover exactly E*M."""
    M = tau.memory
    EM = set_product(tau.universe, E, M)
    if p.domain != EM:
        raise InvalidInputError("pattern domain must equal the product window E*M")
    pos = window_positions(EM, E, M)
    vals = np.asarray(p.values, dtype=np.int64)
    out = tau.rule.map.evaluate_batch(vals[pos])
    return Pattern(E, tuple(int(v) for v in out))


def extend_memory(rule: LocalRule, bigger: FiniteSubset) -> LocalRule:
    """The same local behaviour read over a superset of the memory."""
    M = rule.memory
    if not M.issubset(bigger):
        raise InvalidInputError("new memory must contain the old one")
    cols = [bigger.index_of(m) for m in M]
    if rule.map.is_matrix:
        A = rule.alphabet
        mats = np.zeros((len(bigger), A.dim, A.dim), dtype=np.int64)
        for j, c in enumerate(cols):
            mats[c] = rule.map.matrices[j]
        return LocalRule(bigger, StructuredMap(A, len(bigger), matrices=mats))
    A = rule.alphabet
    X = decode_assignments(A.size, len(bigger))
    table = rule.map.evaluate_batch(X[:, cols])
    return LocalRule(bigger, StructuredMap(A, len(bigger), table=table))


def extend_ca(tau: CellularAutomaton, bigger: FiniteSubset) -> CellularAutomaton:
    return CellularAutomaton(tau.universe, tau.alphabet, extend_memory(tau.rule, bigger))


def common_memory(sigma: CellularAutomaton, tau: CellularAutomaton) -> FiniteSubset:
    """Symmetrized union of the two memories (contains the identity)."""
    return symmetrize(sigma.universe, sigma.memory.union(tau.memory))


def _require_compatible(sigma: CellularAutomaton, tau: CellularAutomaton) -> None:
    if sigma.universe != tau.universe:
        raise InvalidInputError("automata live over different universes")
    if sigma.alphabet != tau.alphabet:
        raise InvalidInputError("automata use different alphabets")


def compose(sigma: CellularAutomaton, tau: CellularAutomaton) -> CellularAutomaton:
    """The automaton acting as sigma-after-tau; memory is M_sigma * M_tau.

    When both rules are matrix maps the composite stays a matrix map, with
    coefficient at u equal to sum over s*m = u of D_s @ C_m.
    """
    _require_compatible(sigma, tau)
    G, A = sigma.universe, sigma.alphabet
    Ms, Mt = sigma.memory, tau.memory
    Mc = set_product(G, Ms, Mt)

    if sigma.rule.map.is_matrix and tau.rule.map.is_matrix:
        mats = np.zeros((len(Mc), A.dim, A.dim), dtype=np.int64)
        for i, s in enumerate(Ms):
            for j, m in enumerate(Mt):
                u = Mc.index_of(G.mul(s, m))
                mats[u] = (
                    mats[u] + sigma.rule.map.matrices[i] @ tau.rule.map.matrices[j]
                ) % A.modulus
        rule = LocalRule(Mc, StructuredMap(A, len(Mc), matrices=mats))
        return CellularAutomaton(G, A, rule)

    check_size(A.size ** len(Mc), "composite rule table")
    pos = window_positions(Mc, Ms, Mt)
    X = decode_assignments(A.size, len(Mc))
    inner = np.empty((X.shape[0], len(Ms)), dtype=np.int64)
    for i in range(len(Ms)):
        inner[:, i] = tau.rule.map.evaluate_batch(X[:, pos[i]])
    table = sigma.rule.map.evaluate_batch(inner)
    rule = LocalRule(Mc, StructuredMap(A, len(Mc), table=table))
    return CellularAutomaton(G, A, rule)


def _check_identity_composite(sigma: CellularAutomaton, tau: CellularAutomaton) -> bool:
    """Decide sigma-after-tau = identity via the finite window criterion.

    Both rules are read over the merged symmetric memory M; the composite
    local map on M*M must return the value at the identity cell for every
    window. Matrix pairs are decided exactly by the equivalent coefficient
    identity: sum over s*m = u of H_s @ C_m must be the identity family.
    """
    _require_compatible(sigma, tau)
    G, A = sigma.universe, sigma.alphabet

    if sigma.rule.map.is_matrix and tau.rule.map.is_matrix:
        acc: dict = {}
        for i, s in enumerate(sigma.memory):
            H = sigma.rule.map.matrices[i]
            for j, m in enumerate(tau.memory):
                C = tau.rule.map.matrices[j]
                u = G.mul(s, m)
                acc[u] = (acc.get(u, 0) + H @ C) % A.modulus
        ident = np.eye(A.dim, dtype=np.int64)
        for u, mat in acc.items():
            want = ident if u == G.identity() else np.zeros_like(ident)
            if not np.array_equal(mat % A.modulus, want):
                return False
        return G.identity() in acc

    M = common_memory(sigma, tau)
    M2 = set_product(G, M, M)
    check_size(A.size ** len(M2), "window criterion scan")
    pos_tau = window_positions(M2, M, tau.memory)
    eta_cols = [M.index_of(s) for s in sigma.memory]
    one = M2.index_of(G.identity())
    total = A.size ** len(M2)
    radix = A.size ** np.arange(len(M2) - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, _SCAN_CHUNK):
        idx = np.arange(start, min(start + _SCAN_CHUNK, total), dtype=np.int64)
        X = (idx[:, None] // radix[None, :]) % A.size
        mid = np.empty((X.shape[0], len(M)), dtype=np.int64)
        for i in range(len(M)):
            mid[:, i] = tau.rule.map.evaluate_batch(X[:, pos_tau[i]])
        out = sigma.rule.map.evaluate_batch(mid[:, eta_cols])
        if not np.array_equal(out, X[:, one]):
            return False
    return True


def check_left_inverse(sigma: CellularAutomaton, tau: CellularAutomaton) -> bool:
    """True iff sigma-after-tau is the identity on every configuration."""
    return _check_identity_composite(sigma, tau)


def check_right_inverse(sigma: CellularAutomaton, tau: CellularAutomaton) -> bool:
    """True iff tau-after-sigma is the identity on every configuration."""
    return _check_identity_composite(tau, sigma)


def evolve(tau: CellularAutomaton, p: Pattern, steps: int) -> Pattern:
    """Iterate the rule on a window; the domain shrinks every step."""
    if steps < 0:
        raise InvalidInputError(f"steps must be >= 0, got {steps}")
    G = tau.universe
    M = tau.memory
    anchor = G.inv(M[0])
    for _ in range(steps):
        E = p.domain
        candidates = {G.mul(g, anchor) for g in E}
        kept = [g for g in candidates if all(G.mul(g, m) in E for m in M)]
        if not kept:
            raise EmptyWindowError("window shrank to nothing before finishing")
        E_new = FiniteSubset(G, kept)
        p = induced_map(tau, E_new, p.restrict(set_product(G, E_new, M)))
    return p


def same_action(
    first: CellularAutomaton, second: CellularAutomaton
) -> bool:
    """True iff the two automata act identically on all configurations.

    Decided by reading both rules over the merged memory and comparing the
    resulting maps pointwise (for matrix pairs, coefficient by coefficient).
    """
    _require_compatible(first, second)
    G, A = first.universe, first.alphabet
    M = first.memory.union(second.memory)
    r1 = extend_memory(first.rule, M)
    r2 = extend_memory(second.rule, M)
    if r1.map.is_matrix and r2.map.is_matrix:
        return np.array_equal(
            r1.map.matrices % A.modulus, r2.map.matrices % A.modulus
        )
    return np.array_equal(r1.map.expand_table().table, r2.map.expand_table().table)
