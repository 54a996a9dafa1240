"""Left-inverse synthesis: decide invertibility at a radius, build the rule.

The core scan asks, for a candidate inverse memory N, whether the window
image of the rule on N determines the value at the identity cell. A conflict
(two windows with equal images but different center values) is a witness
that no inverse with memory N exists; no conflict yields an inverse rule
directly, with the basepoint filled in off the image. Radius-increasing
search over balls turns this into a bounded-radius decision procedure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .alphabets import StructuredMap
from .ca import (
    CellularAutomaton,
    LocalRule,
    Pattern,
    check_left_inverse,
    extend_memory,
    window_positions,
)
from .caps import check_size
from .errors import (
    InvalidInputError,
    UnsupportedSubgroupError,
)
from .groups import (
    FiniteGroup,
    FiniteSubset,
    FreeAbelianGroup,
    FreeGroup,
    ProductGroup,
    ball,
    generated_ball,
    set_product,
    symmetrize,
)

_SCAN_CHUNK = 1 << 16


@dataclass(frozen=True)
class DeterminacyResult:
    """Either an inverse rule over N, or a witness pair over N*M.

    Witness patterns x, y satisfy: equal rule images on N, different values
    at the identity cell.
    """

    rule: LocalRule | None
    witness: tuple | None

    @property
    def is_determined(self) -> bool:
        return self.rule is not None


@dataclass(frozen=True)
class SynthesisResult:
    ca: CellularAutomaton | None
    radius: int | None
    witness: tuple | None

    @property
    def found(self) -> bool:
        return self.ca is not None


def _symmetrized(tau: CellularAutomaton) -> CellularAutomaton:
    M = symmetrize(tau.universe, tau.memory)
    if M == tau.memory:
        return tau
    return CellularAutomaton(tau.universe, tau.alphabet, extend_memory(tau.rule, M))


def determinacy_check(tau: CellularAutomaton, N: FiniteSubset) -> DeterminacyResult:
    """Scan A^{N*M} for image conflicts; synthesize the rule when none exist."""
    G, A = tau.universe, tau.alphabet
    if N.group != G:
        raise InvalidInputError("candidate memory lives in the wrong group")
    ident = G.identity()
    if ident not in N or any(G.inv(n) not in N for n in N):
        raise InvalidInputError("candidate memory must be symmetric and contain 1")
    tau = _symmetrized(tau)
    M = tau.memory
    NM = set_product(G, N, M)

    if tau.rule.map.is_matrix:
        return _determinacy_linear(tau, N, NM)

    check_size(A.size ** len(N), "inverse rule table")
    check_size(A.size ** len(NM), "determinacy scan")
    pos = window_positions(NM, N, M)
    center = NM.index_of(ident)
    n_keys = A.size ** len(N)
    key_radix = A.size ** np.arange(len(N) - 1, -1, -1, dtype=np.int64)
    radix = A.size ** np.arange(len(NM) - 1, -1, -1, dtype=np.int64)
    total = A.size ** len(NM)

    first_pattern = np.full(n_keys, -1, dtype=np.int64)
    first_value = np.full(n_keys, -1, dtype=np.int64)

    for start in range(0, total, _SCAN_CHUNK):
        idx = np.arange(start, min(start + _SCAN_CHUNK, total), dtype=np.int64)
        X = (idx[:, None] // radix[None, :]) % A.size
        img = np.empty((X.shape[0], len(N)), dtype=np.int64)
        for i in range(len(N)):
            img[:, i] = tau.rule.map.evaluate_batch(X[:, pos[i]])
        keys = img @ key_radix
        vals = X[:, center]
        order = np.argsort(keys, kind="stable")
        sk, sv, si = keys[order], vals[order], idx[order]
        starts = np.flatnonzero(np.r_[True, sk[1:] != sk[:-1]])
        ends = np.r_[starts[1:], sk.size]
        # The witness is the first window (in enumeration order) colliding
        # with an earlier window of equal image, paired with that earliest
        # window; scanning per key run and minimizing over runs gives the
        # same pair a sequential scan would find.
        conflict_at = None
        conflict_key = -1
        for s, e in zip(starts, ends):
            key = int(sk[s])
            if first_pattern[key] < 0:
                first_pattern[key] = si[s]
                first_value[key] = sv[s]
            bad = np.flatnonzero(sv[s:e] != first_value[key])
            if bad.size:
                y_at = int(si[s + bad[0]])
                if conflict_at is None or y_at < conflict_at:
                    conflict_at = y_at
                    conflict_key = key
        if conflict_at is not None:
            x_pat = _decode_pattern(NM, int(first_pattern[conflict_key]), radix, A.size)
            y_pat = _decode_pattern(NM, conflict_at, radix, A.size)
            return DeterminacyResult(rule=None, witness=(x_pat, y_pat))

    table = np.where(first_value >= 0, first_value, A.basepoint)
    rule = LocalRule(N, StructuredMap(A, len(N), table=table))
    return DeterminacyResult(rule=rule, witness=None)


def _decode_pattern(domain, index: int, radix, size: int) -> Pattern:
    vals = (index // radix) % size
    return Pattern(domain, tuple(int(v) for v in vals))


def _determinacy_linear(tau, N, NM) -> DeterminacyResult:
    """Matrix-rule determinacy: solve eta @ T = (read off at identity)."""
    G, A = tau.universe, tau.alphabet
    p, d = A.modulus, A.dim
    linalg.require_prime(p, "matrix-rule inverse synthesis")
    M = tau.memory
    check_size(len(N) * d * len(NM) * d, "determinacy linear system")
    T = np.zeros((len(N) * d, len(NM) * d), dtype=np.int64)
    for i, g in enumerate(N):
        for j, m in enumerate(M):
            u = NM.index_of(G.mul(g, m))
            T[i * d : (i + 1) * d, u * d : (u + 1) * d] = (
                T[i * d : (i + 1) * d, u * d : (u + 1) * d] + tau.rule.map.matrices[j]
            ) % p
    center = NM.index_of(G.identity())
    proj = np.zeros((d, len(NM) * d), dtype=np.int64)
    proj[:, center * d : (center + 1) * d] = np.eye(d, dtype=np.int64)

    eta_t = linalg.solve(T.T % p, proj.T % p, p)
    if eta_t is None:
        for z in linalg.nullspace_basis(T, p):
            if z[center * d : (center + 1) * d].any():
                x_pat = _vector_pattern(NM, z, A)
                y_pat = _vector_pattern(NM, np.zeros_like(z), A)
                return DeterminacyResult(rule=None, witness=(x_pat, y_pat))
        raise AssertionError("inconsistent solve without a separating kernel vector")
    eta = eta_t.T % p
    mats = np.stack([eta[:, i * d : (i + 1) * d] for i in range(len(N))])
    rule = LocalRule(N, StructuredMap(A, len(N), matrices=mats))
    return DeterminacyResult(rule=rule, witness=None)


def _vector_pattern(domain, flat, A) -> Pattern:
    d = A.dim
    vals = [A.vector_to_index(flat[i * d : (i + 1) * d]) for i in range(len(domain))]
    return Pattern(domain, tuple(vals))


def synthesize_left_inverse(tau: CellularAutomaton, r_max: int) -> SynthesisResult:
    """Radius-increasing search for a left inverse with memory ball(r)."""
    if r_max < 0:
        raise InvalidInputError(f"r_max must be >= 0, got {r_max}")
    witness = None
    for r in range(r_max + 1):
        N = ball(tau.universe, r)
        res = determinacy_check(tau, N)
        if res.is_determined:
            sigma = CellularAutomaton(tau.universe, tau.alphabet, res.rule)
            if not check_left_inverse(sigma, tau):
                raise AssertionError("synthesized rule failed the inverse criterion")
            return SynthesisResult(ca=sigma, radius=r, witness=None)
        witness = res.witness
    return SynthesisResult(ca=None, radius=None, witness=witness)


def _hermite_basis(vectors, dim: int) -> list[list[int]]:
    """Row-style Hermite basis of the lattice spanned by the vectors."""
    rows = [list(v) for v in vectors if any(v)]
    basis: list[list[int]] = []
    r = 0
    for c in range(dim):
        live = [i for i in range(r, len(rows)) if rows[i][c] != 0]
        while len(live) > 1:
            live.sort(key=lambda i: abs(rows[i][c]))
            base = rows[live[0]]
            for i in live[1:]:
                q = rows[i][c] // base[c]
                rows[i] = [x - q * y for x, y in zip(rows[i], base)]
            live = [i for i in range(r, len(rows)) if rows[i][c] != 0]
        if not live:
            continue
        rows[r], rows[live[0]] = rows[live[0]], rows[r]
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        for i in range(r):
            q = rows[i][c] // rows[r][c]
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
        basis.append(rows[r])
        r += 1
        rows = rows[:r] + [row for row in rows[r:] if any(row)]
    return basis[:r]


def _lattice_coordinates(basis: list[list[int]], v) -> tuple:
    """Coordinates of v in the Hermite basis (v must lie in the lattice)."""
    v = list(v)
    coords = []
    for row in basis:
        c = next(i for i, x in enumerate(row) if x != 0)
        if v[c] % row[c] != 0:
            raise AssertionError("memory vector escaped its own lattice")
        q = v[c] // row[c]
        coords.append(q)
        v = [x - q * y for x, y in zip(v, row)]
    if any(v):
        raise AssertionError("memory vector escaped its own lattice")
    return tuple(coords)


def _permuted_rule(rule: LocalRule, new_memory: FiniteSubset, old_order) -> LocalRule:
    """Rebuild the rule over a re-encoded memory, permuting coordinates.

    old_order[i] is the position, in the old canonical memory order, of the
    element that became new_memory[i].
    """
    A = rule.alphabet
    if rule.map.is_matrix:
        mats = rule.map.matrices[np.asarray(old_order)]
        return LocalRule(new_memory, StructuredMap(A, len(new_memory), matrices=mats))
    from .alphabets import decode_assignments

    X = decode_assignments(A.size, len(new_memory))
    inv = np.empty(len(old_order), dtype=np.int64)
    for new_pos, old_pos in enumerate(old_order):
        inv[old_pos] = new_pos
    table = rule.map.evaluate_batch(X[:, inv])
    return LocalRule(new_memory, StructuredMap(A, len(new_memory), table=table))


def restrict_to_memory_subgroup(tau: CellularAutomaton) -> CellularAutomaton:
    """Re-base the automaton on the subgroup its memory generates.

    Recognized shapes: sublattices of Z^d (via an exact Hermite basis), free
    factors and single-generator powers in free groups, and sub-blocks of
    direct products. For finite universes the subgroup closure is computed
    outright. Anything else raises UnsupportedSubgroupError.
    """
    G = tau.universe
    M = tau.memory

    if isinstance(G, FreeAbelianGroup):
        basis = _hermite_basis(M.elems, G.rank)
        H = FreeAbelianGroup(len(basis))
        encode = {m: _lattice_coordinates(basis, m) for m in M}
    elif isinstance(G, FreeGroup):
        H, encode = _free_subgroup_encoding(G, M)
    elif isinstance(G, ProductGroup):
        ident = G.identity()
        live = [
            i
            for i in range(len(G.factors))
            if any(m[i] != ident[i] for m in M)
        ]
        if not live:
            live = [0]
        if len(live) == 1:
            H = G.factors[live[0]]
            encode = {m: m[live[0]] for m in M}
        else:
            H = ProductGroup([G.factors[i] for i in live])
            encode = {m: tuple(m[i] for i in live) for m in M}
    elif isinstance(G, FiniteGroup):
        closure = generated_ball(G, M, G.size)
        relabel = {e: i for i, e in enumerate(closure)}
        table = [
            [relabel[G.mul(a, b)] for b in closure] for a in closure
        ]
        H = FiniteGroup(table)
        encode = {m: relabel[m] for m in M}
    else:
        raise UnsupportedSubgroupError(f"no subgroup re-basing for {G!r}")

    new_memory = FiniteSubset(H, encode.values())
    old_order = [M.index_of(m) for m in sorted(encode, key=lambda m: H.sort_key(encode[m]))]
    rule = _permuted_rule(tau.rule, new_memory, old_order)
    return CellularAutomaton(H, tau.alphabet, rule)


def _free_subgroup_encoding(G: FreeGroup, M: FiniteSubset):
    """Re-encode free-group memory into a standard subgroup, if recognizable.

    Two supported shapes: all words of length <= 1 (the free factor on the
    letters used), and all words powers of one generator (an infinite cyclic
    subgroup, rescaled by the gcd of the exponents).
    """
    words = [w for w in M if w]
    if all(len(w) <= 1 for w in words):
        letters = sorted({abs(w[0]) for w in words})
        rename = {a: i + 1 for i, a in enumerate(letters)}
        H = FreeGroup(len(letters))
        encode = {}
        for w in M:
            if not w:
                encode[w] = ()
            else:
                x = w[0]
                encode[w] = ((rename[abs(x)] if x > 0 else -rename[abs(x)]),)
        return H, encode
    letters = {abs(x) for w in words for x in w}
    if len(letters) == 1 and all(len(set(w)) == 1 for w in words):
        exps = [len(w) * (1 if w[0] > 0 else -1) for w in words]
        step = int(np.gcd.reduce([abs(e) for e in exps]))
        H = FreeAbelianGroup(1)
        encode = {m: ((len(m) * (1 if m[0] > 0 else -1)) // step,) if m else (0,) for m in M}
        return H, encode
    raise UnsupportedSubgroupError(
        "free-group memory is neither inside a free factor nor a single generator's powers"
    )
