"""Exact arithmetic in (Z/n)[G] and matrices over it.

Elements are finitely supported functions G -> Z/n stored sparsely; the
product is convolution. A matrix-rule automaton with coefficient family
{C_m} corresponds to the matrix with entries sum_m C_m[i][j] * delta_m, and
with the reading convention "new value at g = sum over m of C_m applied to
the value at g*m" automaton composition is plain matrix product: the
automaton sigma-after-tau corresponds to D @ C.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .alphabets import Alphabet, StructuredMap
from .ca import CellularAutomaton, LocalRule
from .caps import check_size
from .errors import InvalidInputError
from .groups import FiniteSubset, Group, ball, set_product

Coeffs = dict


class GroupRingElement:
    """A finitely supported function G -> Z/n, canonical sparse storage."""

    __slots__ = ("group", "modulus", "coeffs")

    def __init__(self, group: Group, modulus: int, coeffs: Coeffs | None = None):
        if modulus < 2:
            raise InvalidInputError(f"modulus must be >= 2, got {modulus}")
        clean: Coeffs = {}
        for g, c in (coeffs or {}).items():
            group.validate(g)
            c = int(c) % modulus
            if c:
                clean[g] = c
        self.group = group
        self.modulus = modulus
        self.coeffs = clean

    @classmethod
    def zero(cls, group, modulus):
        return cls(group, modulus, {})

    @classmethod
    def monomial(cls, group, modulus, g, c=1):
        return cls(group, modulus, {g: c})

    @classmethod
    def one(cls, group, modulus):
        return cls.monomial(group, modulus, group.identity())

    def is_zero(self):
        return not self.coeffs

    def support(self):
        return sorted(self.coeffs, key=self.group.sort_key)

    def _check_compatible(self, other):
        if other.group != self.group or other.modulus != self.modulus:
            raise InvalidInputError("elements live in different group rings")

    def __add__(self, other):
        self._check_compatible(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) + c
        return GroupRingElement(self.group, self.modulus, out)

    def __neg__(self):
        return GroupRingElement(
            self.group, self.modulus, {g: -c for g, c in self.coeffs.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(
                self.group, self.modulus, {g: c * other for g, c in self.coeffs.items()}
            )
        return gr_mul(self, other)

    def __eq__(self, other):
        return (
            isinstance(other, GroupRingElement)
            and other.group == self.group
            and other.modulus == self.modulus
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.group, self.modulus, tuple(sorted(self.coeffs.items(), key=lambda kv: self.group.sort_key(kv[0])))))

    def to_json(self):
        return [
            {"elem": self.group.elem_to_json(g), "coef": self.coeffs[g]}
            for g in self.support()
        ]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = [f"{c}*{g!r}" for g, c in sorted(self.coeffs.items(), key=lambda kv: self.group.sort_key(kv[0]))]
        return " + ".join(parts)


def gr_mul(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    """Convolution product: coefficient at h is sum over ab=h of x(a)y(b)."""
    x._check_compatible(y)
    G = x.group
    out: Coeffs = {}
    for a, ca in x.coeffs.items():
        for b, cb in y.coeffs.items():
            h = G.mul(a, b)
            out[h] = out.get(h, 0) + ca * cb
    return GroupRingElement(G, x.modulus, out)


class GroupRingMatrix:
    """Square matrix with group-ring entries, all sharing one modulus."""

    __slots__ = ("group", "modulus", "dim", "entries")

    def __init__(self, group: Group, modulus: int, entries):
        d = len(entries)
        for row in entries:
            if len(row) != d:
                raise InvalidInputError("matrix must be square")
        for row in entries:
            for e in row:
                if not isinstance(e, GroupRingElement):
                    raise InvalidInputError("entries must be group-ring elements")
                if e.group != group or e.modulus != modulus:
                    raise InvalidInputError("entry lives in the wrong group ring")
        self.group = group
        self.modulus = modulus
        self.dim = d
        self.entries = tuple(tuple(row) for row in entries)

    @classmethod
    def identity(cls, group, modulus, dim):
        one = GroupRingElement.one(group, modulus)
        zero = GroupRingElement.zero(group, modulus)
        return cls(
            group,
            modulus,
            [[one if i == j else zero for j in range(dim)] for i in range(dim)],
        )

    @classmethod
    def from_coeffs(cls, group, modulus, dim, family: dict):
        """Build from a family {group element -> d x d integer matrix}."""
        entries = [
            [
                GroupRingElement(
                    group, modulus, {g: int(mat[i][j]) for g, mat in family.items()}
                )
                for j in range(dim)
            ]
            for i in range(dim)
        ]
        return cls(group, modulus, entries)

    def support(self) -> list:
        out = set()
        for row in self.entries:
            for e in row:
                out.update(e.coeffs)
        return sorted(out, key=self.group.sort_key)

    def coeff_family(self) -> dict:
        """The inverse of from_coeffs: {element -> dense d x d numpy matrix}."""
        fam: dict = {}
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                for g, c in e.coeffs.items():
                    fam.setdefault(g, np.zeros((self.dim, self.dim), dtype=np.int64))[
                        i, j
                    ] = c
        return fam

    def is_identity(self) -> bool:
        return self == GroupRingMatrix.identity(self.group, self.modulus, self.dim)

    def __eq__(self, other):
        return (
            isinstance(other, GroupRingMatrix)
            and other.group == self.group
            and other.modulus == self.modulus
            and other.entries == self.entries
        )

    def __hash__(self):
        return hash((self.group, self.modulus, self.entries))

    def to_json(self):
        return {
            "modulus": self.modulus,
            "dim": self.dim,
            "entries": [[e.to_json() for e in row] for row in self.entries],
        }

    def __repr__(self):
        return f"GroupRingMatrix(dim={self.dim}, mod {self.modulus}, |support|={len(self.support())})"


def matrix_mul(X: GroupRingMatrix, Y: GroupRingMatrix) -> GroupRingMatrix:
    """Standard matrix product over the group ring."""
    if X.group != Y.group or X.modulus != Y.modulus or X.dim != Y.dim:
        raise InvalidInputError("matrices are not compatible")
    zero = GroupRingElement.zero(X.group, X.modulus)
    out = []
    for i in range(X.dim):
        row = []
        for j in range(X.dim):
            acc = zero
            for k in range(X.dim):
                acc = acc + gr_mul(X.entries[i][k], Y.entries[k][j])
            row.append(acc)
        out.append(row)
    return GroupRingMatrix(X.group, X.modulus, out)


def from_linear_ca(tau: CellularAutomaton) -> GroupRingMatrix:
    """The matrix of a matrix-rule automaton."""
    if not tau.rule.map.is_matrix:
        raise InvalidInputError("automaton does not carry a matrix rule")
    A = tau.alphabet
    family = {
        m: tau.rule.map.matrices[j] for j, m in enumerate(tau.memory)
    }
    return GroupRingMatrix.from_coeffs(tau.universe, A.modulus, A.dim, family)


def to_linear_ca(X: GroupRingMatrix, G: Group, A: Alphabet) -> CellularAutomaton:
    """The matrix-rule automaton of a group-ring matrix."""
    if G != X.group:
        raise InvalidInputError("matrix lives over a different group")
    if not A.is_module or A.modulus != X.modulus or A.dim != X.dim:
        raise InvalidInputError("alphabet does not match the matrix shape")
    support = X.support() or [G.identity()]
    memory = FiniteSubset(G, support)
    fam = X.coeff_family()
    mats = np.zeros((len(memory), A.dim, A.dim), dtype=np.int64)
    for i, m in enumerate(memory):
        if m in fam:
            mats[i] = fam[m]
    return CellularAutomaton(G, A, LocalRule(memory, StructuredMap(A, len(memory), matrices=mats)))


def one_sided_inverse_solve(C: GroupRingMatrix, r: int) -> GroupRingMatrix | None:
    """Find D supported in ball(r) with D @ C = identity, or None.

    The unknown coefficients of D satisfy a finite linear system over Z/p:
    one equation per matrix slot (i, j) and per group element reachable as a
    product of a ball(r) element with a support element of C.
    """
    linalg.require_prime(C.modulus, "one-sided inverse solving")
    p, d, G = C.modulus, C.dim, C.group
    B = ball(G, r)
    S = FiniteSubset(G, C.support() or [G.identity()])
    U = set_product(G, B, S)
    if G.identity() not in U:
        U = U.union(FiniteSubset(G, [G.identity()]))
    check_size(d * d * len(B) * d * d * len(U), "inverse solve system")

    fam = C.coeff_family()
    nvars = d * d * len(B)
    var = lambda i, k, s: (i * d + k) * len(B) + s
    rows = []
    rhs = []
    for i in range(d):
        for j in range(d):
            for u_idx, u in enumerate(U):
                row = np.zeros(nvars, dtype=np.int64)
                for s_idx, s in enumerate(B):
                    t = G.mul(G.inv(s), u)
                    mat = fam.get(t)
                    if mat is None:
                        continue
                    for k in range(d):
                        row[var(i, k, s_idx)] = (row[var(i, k, s_idx)] + mat[k, j]) % p
                rows.append(row)
                rhs.append(1 if (i == j and u == G.identity()) else 0)
    solution = linalg.solve(np.array(rows), np.array(rhs), p)
    if solution is None:
        return None
    family: dict = {}
    for s_idx, s in enumerate(B):
        mat = np.zeros((d, d), dtype=np.int64)
        for i in range(d):
            for k in range(d):
                mat[i, k] = solution[var(i, k, s_idx)]
        if mat.any():
            family[s] = mat
    D = GroupRingMatrix.from_coeffs(G, p, d, family)
    if not matrix_mul(D, C).is_identity():
        raise AssertionError("solver returned a non-inverse")
    return D


def random_invertible_matrix(
    G: Group, seed: int, d: int, r: int, modulus: int, factors: int = 5
):
    """A random two-sided invertible matrix plus its exact inverse.

    Built as a product of elementary factors: identity plus one off-diagonal
    group-ring monomial, or a diagonal scaling by a unit monomial. Each
    factor has an explicit inverse, so the product does too (inverted
    factors multiplied in reverse order).
    """
    linalg.require_prime(modulus, "random invertible matrix generation")
    rng = np.random.default_rng(seed)
    B = list(ball(G, r))
    fwd = GroupRingMatrix.identity(G, modulus, d)
    rev = GroupRingMatrix.identity(G, modulus, d)
    for _ in range(factors):
        g = B[int(rng.integers(len(B)))]
        c = int(rng.integers(1, modulus))
        if d >= 2 and rng.integers(2) == 0:
            i = int(rng.integers(d))
            j = int(rng.integers(d - 1))
            j = j + 1 if j >= i else j
            F = GroupRingMatrix.identity(G, modulus, d)
            entries = [list(row) for row in F.entries]
            entries[i][j] = GroupRingElement.monomial(G, modulus, g, c)
            F = GroupRingMatrix(G, modulus, entries)
            entries = [list(row) for row in GroupRingMatrix.identity(G, modulus, d).entries]
            entries[i][j] = GroupRingElement.monomial(G, modulus, g, -c)
            F_inv = GroupRingMatrix(G, modulus, entries)
        else:
            i = int(rng.integers(d))
            entries = [list(row) for row in GroupRingMatrix.identity(G, modulus, d).entries]
            entries[i][i] = GroupRingElement.monomial(G, modulus, g, c)
            F = GroupRingMatrix(G, modulus, entries)
            entries = [list(row) for row in GroupRingMatrix.identity(G, modulus, d).entries]
            c_inv = pow(c, modulus - 2, modulus)
            entries[i][i] = GroupRingElement.monomial(G, modulus, G.inv(g), c_inv)
            F_inv = GroupRingMatrix(G, modulus, entries)
        fwd = matrix_mul(fwd, F)
        rev = matrix_mul(F_inv, rev)
    return fwd, rev
