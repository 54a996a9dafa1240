"""Transport of an automaton to a finite group, inversion, rule extraction.

The route to an inverse rule: embed the window M*M of the universe into a
finite group F preserving products of memory elements, re-read the local
rule as an F-equivariant endomap of A^F, invert that finite object exactly
(table scan or modular linear algebra), and read the inverse's local rule
back off through the embedding, filling the cells outside the image with
the basepoint. The extracted rule is certified against the original
automaton by the two window criteria before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .alphabets import (
    Alphabet,
    StructuredMap,
    decode_assignments,
    finite_map_classify,
)
from .ca import (
    CellularAutomaton,
    LocalRule,
    check_left_inverse,
    check_right_inverse,
    common_memory,
    extend_memory,
)
from .caps import TRANSPORT_DIM_CAP, transport_cap
from .errors import (
    EmbeddingCollisionError,
    InvalidInputError,
    NotInvertibleError,
    ResourceCapError,
)
from .groups import (
    FiniteGroup,
    FiniteSubset,
    FreeAbelianGroup,
    FreeGroup,
    Group,
    ProductGroup,
    SymmetricGroup,
    ball,
    set_product,
    symmetrize,
)

_SCAN_CHUNK = 1 << 16


@dataclass(frozen=True)
class LefEmbedding:
    """A finite-group approximation of a subset of the universe.

    `phi` maps the subset injectively into the finite target so that
    phi(ab) = phi(a)phi(b) whenever a, b and ab all lie in the subset.
    """

    source: Group
    subset: FiniteSubset
    target: Group
    phi: dict = field(hash=False)

    def image_of(self, m):
        try:
            return self.phi[m]
        except KeyError:
            raise InvalidInputError(f"{m!r} is outside the embedded subset") from None


def _post_verify(e: LefEmbedding) -> LefEmbedding:
    """Reject collisions; assert the partial product rule on the subset."""
    seen = {}
    for s in e.subset:
        img = e.phi[s]
        if img in seen:
            raise EmbeddingCollisionError(seen[img], s)
        seen[img] = s
    F = e.target
    G = e.source
    for a in e.subset:
        for b in e.subset:
            ab = G.mul(a, b)
            if ab in e.subset and F.mul(e.phi[a], e.phi[b]) != e.phi[ab]:
                raise AssertionError(
                    f"embedding construction bug: products disagree at ({a!r}, {b!r})"
                )
    return e


def _minimal_modulus(S: FiniteSubset) -> int:
    N = 1
    while True:
        residues = {tuple(x % N for x in v) for v in S}
        if len(residues) == len(S):
            return N
        N += 1


def _modular_embedding(G: FreeAbelianGroup, S: FiniteSubset, N: int | None) -> LefEmbedding:
    if N is None:
        N = _minimal_modulus(S)
    if N < 1:
        raise InvalidInputError(f"modulus must be >= 1, got {N}")
    cyc = FiniteGroup.cyclic(N)
    if G.rank == 1:
        target: Group = cyc
        phi = {v: v[0] % N for v in S}
    else:
        target = ProductGroup([cyc] * G.rank) if G.rank > 0 else FiniteGroup.cyclic(1)
        phi = {v: tuple(x % N for x in v) for v in S}
        if G.rank == 0:
            phi = {v: 0 for v in S}
    return _post_verify(LefEmbedding(G, S, target, phi))


def _ball_action_embedding(G: FreeGroup, S: FiniteSubset, radius: int | None) -> LefEmbedding:
    """Generators act on the radius-(R+1) ball by extended left translation."""
    R = max((len(w) for w in S), default=0) if radius is None else radius
    inner = ball(G, R)
    if not S.issubset(inner):
        raise InvalidInputError(f"subset does not fit inside the radius-{R} ball")
    pts = ball(G, R + 1)
    n = len(pts)
    target = SymmetricGroup(n)

    letter_perm = {}
    for i in range(1, G.rank + 1):
        g = (i,)
        perm = [-1] * n
        used = [False] * n
        for idx, x in enumerate(pts):
            y = G.mul(g, x)
            if y in pts:
                j = pts.index_of(y)
                perm[idx] = j
                used[j] = True
        free_targets = iter([j for j in range(n) if not used[j]])
        for idx in range(n):
            if perm[idx] < 0:
                perm[idx] = next(free_targets)
        letter_perm[i] = tuple(perm)
        letter_perm[-i] = target.inv(tuple(perm))

    def image(word):
        acc = target.identity()
        for letter in word:
            acc = target.mul(acc, letter_perm[letter])
        return acc

    phi = {w: image(w) for w in S}
    return _post_verify(LefEmbedding(G, S, target, phi))


def build_embedding(G: Group, S: FiniteSubset, spec: dict | None = None) -> LefEmbedding:
    """Build an embedding of S into a finite group.

    `spec` picks the construction: {"kind": "modular", "N": n} for lattices,
    {"kind": "ball_action", "radius": r} for free groups, {"kind":
    "identity"} for finite universes, {"kind": "product", "factors": [...]}
    componentwise. With spec=None each kind gets its minimal default, and
    minimality is established by construction plus the post-verification.
    """
    if S.group != G:
        raise InvalidInputError("subset lives in the wrong group")
    kind = (spec or {}).get("kind", "auto")

    if isinstance(G, FreeAbelianGroup) and kind in ("auto", "modular"):
        return _modular_embedding(G, S, (spec or {}).get("N"))
    if isinstance(G, FreeGroup) and kind in ("auto", "ball_action"):
        return _ball_action_embedding(G, S, (spec or {}).get("radius"))
    if isinstance(G, (FiniteGroup, SymmetricGroup)) and kind in ("auto", "identity"):
        return _post_verify(LefEmbedding(G, S, G, {s: s for s in S}))
    if isinstance(G, ProductGroup) and kind in ("auto", "product"):
        factor_specs = (spec or {}).get("factors")
        if factor_specs is None:
            factor_specs = [None] * len(G.factors)
        if len(factor_specs) != len(G.factors):
            raise InvalidInputError("one factor spec per product factor required")
        parts = []
        for i, (f, fspec) in enumerate(zip(G.factors, factor_specs)):
            proj = FiniteSubset(f, {v[i] for v in S})
            parts.append(build_embedding(f, proj, fspec))
        target = ProductGroup([p.target for p in parts])
        phi = {v: tuple(p.phi[x] for p, x in zip(parts, v)) for v in S}
        return _post_verify(LefEmbedding(G, S, target, phi))
    raise InvalidInputError(f"no {kind!r} embedding construction for {G!r}")


def verify_embedding(e: LefEmbedding, M: FiniteSubset) -> bool:
    """Check injectivity on M*M and the product rule on all pairs from M."""
    G = e.source
    if M.group != G:
        raise InvalidInputError("memory lives in the wrong group")
    M2 = set_product(G, M, M)
    if not M2.issubset(e.subset):
        raise InvalidInputError("embedded subset must contain M*M")
    images = [e.phi[x] for x in M2]
    if len(set(images)) != len(images):
        return False
    F = e.target
    for a in M:
        for b in M:
            if F.mul(e.phi[a], e.phi[b]) != e.phi[G.mul(a, b)]:
                return False
    return True


@dataclass(frozen=True, eq=False)
class TransportedEndomap:
    """An endomap of A^F, as a config lookup table or a block matrix."""

    embedding: LefEmbedding
    alphabet: Alphabet
    carrier: tuple  # elements of F in canonical order
    table: np.ndarray | None = None
    matrix: np.ndarray | None = None

    @property
    def is_matrix(self):
        return self.matrix is not None

    def classify(self) -> dict:
        if self.table is not None:
            return finite_map_classify(self.table)
        p = self.alphabet.modulus
        full = self.matrix.shape[0]
        invertible = linalg.rank(self.matrix, p) == full
        return {"injective": invertible, "surjective": invertible, "bijective": invertible}


def _carrier(e: LefEmbedding) -> tuple:
    F = e.target
    n = F.order()
    if n is None:
        raise InvalidInputError("embedding target must be finite")
    return tuple(F.elements())


def transport_endomap(tau: CellularAutomaton, e: LefEmbedding) -> TransportedEndomap:
    """The F-equivariant endomap reading the rule through the embedding.

    At cell h of F the transported map applies the local rule to the values
    at the cells h*phi(m), exactly mirroring how the rule reads g*m in G.
    """
    G, A = tau.universe, tau.alphabet
    M = tau.memory
    ident = G.identity()
    if ident not in M or any(G.inv(m) not in M for m in M):
        raise InvalidInputError("memory must be symmetric and contain the identity")
    if not verify_embedding(e, M):
        raise InvalidInputError("embedding fails verification over this memory")

    F = e.target
    carrier = _carrier(e)
    pos_F = {h: i for i, h in enumerate(carrier)}
    nF = len(carrier)
    pos = np.empty((nF, len(M)), dtype=np.int64)
    for i, h in enumerate(carrier):
        for j, m in enumerate(M):
            pos[i, j] = pos_F[F.mul(h, e.phi[m])]

    if tau.rule.map.is_matrix:
        d, p = A.dim, A.modulus
        dim = d * nF
        if dim > TRANSPORT_DIM_CAP:
            raise ResourceCapError(f"transport matrix dimension {dim} over cap {TRANSPORT_DIM_CAP}")
        mat = np.zeros((dim, dim), dtype=np.int64)
        for i in range(nF):
            for j in range(len(M)):
                c = pos[i, j]
                mat[i * d : (i + 1) * d, c * d : (c + 1) * d] = (
                    mat[i * d : (i + 1) * d, c * d : (c + 1) * d]
                    + tau.rule.map.matrices[j]
                ) % p
        return TransportedEndomap(e, A, carrier, matrix=mat)

    count = A.size**nF
    if count > transport_cap():
        raise ResourceCapError(f"transport would tabulate {count} configurations")
    radix = A.size ** np.arange(nF - 1, -1, -1, dtype=np.int64)
    table = np.empty(count, dtype=np.int64)
    for start in range(0, count, _SCAN_CHUNK):
        idx = np.arange(start, min(start + _SCAN_CHUNK, count), dtype=np.int64)
        X = (idx[:, None] // radix[None, :]) % A.size
        out = np.empty_like(X)
        for i in range(nF):
            out[:, i] = tau.rule.map.evaluate_batch(X[:, pos[i]])
        table[idx] = out @ radix
    return TransportedEndomap(e, A, carrier, table=table)


def invert_transport(alpha: TransportedEndomap) -> TransportedEndomap:
    """Invert the finite endomap exactly; injectivity is all it takes."""
    A = alpha.alphabet
    if alpha.table is not None:
        order = np.argsort(alpha.table, kind="stable")
        sorted_vals = alpha.table[order]
        dup = np.flatnonzero(sorted_vals[1:] == sorted_vals[:-1])
        if dup.size:
            i, j = int(order[dup[0]]), int(order[dup[0] + 1])
            nF = len(alpha.carrier)
            radix = A.size ** np.arange(nF - 1, -1, -1, dtype=np.int64)
            decode = lambda c: tuple(int(v) for v in (c // radix) % A.size)
            raise NotInvertibleError((decode(i), decode(j)), "transported map is not injective")
        inverse = np.empty_like(alpha.table)
        inverse[alpha.table] = np.arange(alpha.table.size, dtype=np.int64)
        return TransportedEndomap(alpha.embedding, A, alpha.carrier, table=inverse)
    p = A.modulus
    linalg.require_prime(p, "matrix transport inversion")
    inv = linalg.invert(alpha.matrix, p)
    if inv is None:
        for z in linalg.nullspace_basis(alpha.matrix, p):
            if z.any():
                raise NotInvertibleError(
                    (tuple(int(x) for x in z), tuple(0 for _ in z)),
                    "transported matrix is singular",
                )
        raise AssertionError("singular matrix with trivial kernel")
    return TransportedEndomap(alpha.embedding, A, alpha.carrier, matrix=inv)


def extract_local_rule(
    gamma: TransportedEndomap, e: LefEmbedding, M: FiniteSubset, A: Alphabet
) -> LocalRule:
    """Read the inverse rule off the inverted endomap.

    A window over M is planted into A^F through the embedding, every other
    cell is filled with the basepoint, the inverted map is applied, and the
    value at the identity of F is the rule's output.
    """
    F = e.target
    carrier = gamma.carrier
    pos_F = {h: i for i, h in enumerate(carrier)}
    cols = [pos_F[e.phi[m]] for m in M]
    one = pos_F[F.identity()]

    if gamma.is_matrix:
        d = A.dim
        mats = np.stack(
            [
                gamma.matrix[one * d : (one + 1) * d, c * d : (c + 1) * d]
                for c in cols
            ]
        )
        return LocalRule(M, StructuredMap(A, len(M), matrices=mats))

    nF = len(carrier)
    radix = A.size ** np.arange(nF - 1, -1, -1, dtype=np.int64)
    base = int(np.sum(A.basepoint * radix))
    X = decode_assignments(A.size, len(M))
    codes = np.full(X.shape[0], base, dtype=np.int64)
    for j, c in enumerate(cols):
        codes += (X[:, j] - A.basepoint) * radix[c]
    outputs = gamma.table[codes]
    table = (outputs // radix[one]) % A.size
    return LocalRule(M, StructuredMap(A, len(M), table=table))


def check_equivariance(alpha: TransportedEndomap) -> bool:
    """Exhaustively check the transported map commutes with translations."""
    A = alpha.alphabet
    F = alpha.embedding.target
    carrier = alpha.carrier
    pos_F = {h: i for i, h in enumerate(carrier)}
    nF = len(carrier)
    if alpha.is_matrix:
        d, p = A.dim, A.modulus
        for h in carrier:
            P = np.zeros_like(alpha.matrix)
            h_inv = F.inv(h)
            for u in carrier:
                r, c = pos_F[u], pos_F[F.mul(h_inv, u)]
                P[r * d : (r + 1) * d, c * d : (c + 1) * d] = np.eye(d, dtype=np.int64)
            if not np.array_equal((alpha.matrix @ P) % p, (P @ alpha.matrix) % p):
                return False
        return True
    radix = A.size ** np.arange(nF - 1, -1, -1, dtype=np.int64)
    count = alpha.table.size
    X = (np.arange(count, dtype=np.int64)[:, None] // radix[None, :]) % A.size
    alpha_X = (alpha.table[:, None] // radix[None, :]) % A.size
    for h in carrier:
        h_inv = F.inv(h)
        perm = np.array([pos_F[F.mul(h_inv, u)] for u in carrier], dtype=np.int64)
        translated = X[:, perm] @ radix
        lhs = alpha.table[translated]
        rhs = alpha_X[:, perm] @ radix
        if not np.array_equal(lhs, rhs):
            return False
    return True


def composes_to_identity(beta: TransportedEndomap, alpha: TransportedEndomap) -> bool:
    """Exhaustively check beta after alpha is the identity on A^F."""
    if beta.is_matrix != alpha.is_matrix:
        raise InvalidInputError("endomaps use different representations")
    if alpha.is_matrix:
        p = alpha.alphabet.modulus
        n = alpha.matrix.shape[0]
        return np.array_equal((beta.matrix @ alpha.matrix) % p, np.eye(n, dtype=np.int64))
    return np.array_equal(beta.table[alpha.table], np.arange(alpha.table.size))


@dataclass(frozen=True, eq=False)
class TransportResult:
    alpha: TransportedEndomap
    gamma: TransportedEndomap
    rule: LocalRule
    ca: CellularAutomaton
    report: dict


def transport_inverse_pipeline(
    tau: CellularAutomaton,
    e: LefEmbedding,
    sigma_hint: CellularAutomaton | None = None,
) -> TransportResult:
    """Full route: transport, invert, extract, certify.

    When `sigma_hint` is given its rule is transported alongside and the
    composite with the transported rule is checked to be the identity on
    A^F. Certification failures raise AssertionError: for a correctly built
    embedding and an invertible transported map they cannot happen.
    """
    G, A = tau.universe, tau.alphabet
    if sigma_hint is not None:
        if sigma_hint.universe != G or sigma_hint.alphabet != A:
            raise InvalidInputError("hint automaton is not compatible")
        M = common_memory(sigma_hint, tau)
    else:
        M = symmetrize(G, tau.memory)
    tau_ext = CellularAutomaton(G, A, extend_memory(tau.rule, M))

    alpha = transport_endomap(tau_ext, e)
    classification = alpha.classify()
    gamma = invert_transport(alpha)
    rule = extract_local_rule(gamma, e, M, A)
    nu_ca = CellularAutomaton(G, A, rule)

    left = check_left_inverse(nu_ca, tau)
    right = check_right_inverse(nu_ca, tau)
    if not (left and right):
        raise AssertionError("extracted rule failed certification; this is a bug")

    report = {
        "alpha": classification,
        "target_order": len(alpha.carrier),
        "representation": "matrix" if alpha.is_matrix else "table",
        "left_certified": left,
        "right_certified": right,
    }
    if sigma_hint is not None:
        sigma_ext = CellularAutomaton(G, A, extend_memory(sigma_hint.rule, M))
        beta = transport_endomap(sigma_ext, e)
        report["beta_alpha_identity"] = composes_to_identity(beta, alpha)
    return TransportResult(alpha=alpha, gamma=gamma, rule=rule, ca=nu_ca, report=report)


def direct_finiteness(sigma: CellularAutomaton, tau: CellularAutomaton) -> dict:
    """Report both one-sided checks and whether left implies right held."""
    left = check_left_inverse(sigma, tau)
    right = check_right_inverse(sigma, tau)
    return {
        "left": left,
        "right": right,
        "theorem_consistent": (not left) or right,
    }
