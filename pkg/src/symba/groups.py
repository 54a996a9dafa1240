"""Finitely generated group universes with canonical element encodings.

Shipped kinds: free abelian lattices Z^d (elements are integer tuples), free
groups F_k (reduced words as tuples of signed generator indices, 1-based),
finite groups given by a multiplication table (elements are indices), direct
products (tuples of factor elements), and the symmetric group on n points
(permutation tuples; used as an embedding target, never enumerated unless
small). Canonical encodings give every subset a deterministic tabulation
order, which is what makes rule tables reproducible byte for byte.
"""

from __future__ import annotations

import itertools
from typing import Any, Iterator, Sequence

import numpy as np

from .caps import check_size, enumeration_cap
from .errors import InvalidInputError, ResourceCapError

Elem = Any


class Group:
    """Base class: canonical encodings plus the group operations."""

    kind = "abstract"

    def identity(self) -> Elem:
        raise NotImplementedError

    def mul(self, a: Elem, b: Elem) -> Elem:
        raise NotImplementedError

    def inv(self, a: Elem) -> Elem:
        raise NotImplementedError

    def validate(self, a: Elem) -> None:
        """Raise InvalidInputError unless `a` is a canonical encoding."""
        raise NotImplementedError

    def sort_key(self, a: Elem):
        """Key realizing the canonical total order on encodings."""
        raise NotImplementedError

    def generators(self) -> list[Elem]:
        """Distinguished generators (inverses not included)."""
        raise NotImplementedError

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        return None

    def elements(self) -> Iterator[Elem]:
        """All elements in canonical order; only for finite kinds."""
        raise InvalidInputError(f"cannot enumerate elements of {self!r}")

    def is_finite(self) -> bool:
        return self.order() is not None

    def elem_to_json(self, a: Elem):
        raise NotImplementedError

    def elem_from_json(self, data) -> Elem:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}"


class FreeAbelianGroup(Group):
    """Z^d under addition; elements are length-d integer tuples."""

    kind = "free_abelian"

    def __init__(self, rank: int):
        if rank < 0:
            raise InvalidInputError(f"rank must be >= 0, got {rank}")
        self.rank = int(rank)

    def identity(self):
        return (0,) * self.rank

    def mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        return tuple(-x for x in a)

    def validate(self, a):
        if (
            not isinstance(a, tuple)
            or len(a) != self.rank
            or not all(isinstance(x, int) for x in a)
        ):
            raise InvalidInputError(f"not a Z^{self.rank} element: {a!r}")

    def sort_key(self, a):
        return a

    def generators(self):
        gens = []
        for i in range(self.rank):
            v = [0] * self.rank
            v[i] = 1
            gens.append(tuple(v))
        return gens

    def order(self):
        return 1 if self.rank == 0 else None

    def elements(self):
        if self.rank == 0:
            return iter([()])
        return super().elements()

    def elem_to_json(self, a):
        return list(a)

    def elem_from_json(self, data):
        if not isinstance(data, list):
            raise InvalidInputError(f"expected a coordinate list, got {data!r}")
        elem = tuple(int(x) for x in data)
        self.validate(elem)
        return elem

    def to_json(self):
        return {"kind": "free_abelian", "rank": self.rank}

    def __eq__(self, other):
        return isinstance(other, FreeAbelianGroup) and other.rank == self.rank

    def __hash__(self):
        return hash(("free_abelian", self.rank))

    def __repr__(self):
        return f"FreeAbelianGroup({self.rank})"


def _reduce_concat(a: tuple, b: tuple) -> tuple:
    """Concatenate two reduced words, cancelling at the seam."""
    a = list(a)
    i = 0
    while a and i < len(b) and a[-1] == -b[i]:
        a.pop()
        i += 1
    return tuple(a) + tuple(b[i:])


class FreeGroup(Group):
    """Free group F_k; elements are reduced words over signed indices.

    Letter i in 1..k is the i-th generator, -i its inverse. Canonical order
    is graded: shorter words first, then letterwise with a < a^-1 < b < ...
    """

    kind = "free"

    def __init__(self, rank: int):
        if rank < 0:
            raise InvalidInputError(f"rank must be >= 0, got {rank}")
        self.rank = int(rank)

    def identity(self):
        return ()

    def mul(self, a, b):
        return _reduce_concat(a, b)

    def inv(self, a):
        return tuple(-x for x in reversed(a))

    def validate(self, a):
        if not isinstance(a, tuple):
            raise InvalidInputError(f"not a free-group word: {a!r}")
        for x in a:
            if not isinstance(x, int) or x == 0 or abs(x) > self.rank:
                raise InvalidInputError(f"bad letter {x!r} in word {a!r}")
        for x, y in zip(a, a[1:]):
            if x == -y:
                raise InvalidInputError(f"word not reduced: {a!r}")

    @staticmethod
    def _letter_key(x: int) -> int:
        return 2 * (abs(x) - 1) + (0 if x > 0 else 1)

    def sort_key(self, a):
        return (len(a), tuple(self._letter_key(x) for x in a))

    def generators(self):
        return [(i,) for i in range(1, self.rank + 1)]

    def order(self):
        return 1 if self.rank == 0 else None

    def elements(self):
        if self.rank == 0:
            return iter([()])
        return super().elements()

    def elem_to_json(self, a):
        return list(a)

    def elem_from_json(self, data):
        if not isinstance(data, list):
            raise InvalidInputError(f"expected a letter list, got {data!r}")
        elem = tuple(int(x) for x in data)
        self.validate(elem)
        return elem

    def to_json(self):
        return {"kind": "free", "rank": self.rank}

    def __eq__(self, other):
        return isinstance(other, FreeGroup) and other.rank == self.rank

    def __hash__(self):
        return hash(("free", self.rank))

    def __repr__(self):
        return f"FreeGroup({self.rank})"


class FiniteGroup(Group):
    """Finite group given by an n x n multiplication table on 0..n-1."""

    kind = "finite"

    def __init__(self, table: Sequence[Sequence[int]]):
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(table)
        if n == 0:
            raise InvalidInputError("multiplication table must be nonempty")
        for row in table:
            if len(row) != n or any(not (0 <= x < n) for x in row):
                raise InvalidInputError("multiplication table is not n x n over 0..n-1")
        for i in range(n):
            if sorted(table[i]) != list(range(n)):
                raise InvalidInputError(f"row {i} is not a permutation")
            if sorted(table[j][i] for j in range(n)) != list(range(n)):
                raise InvalidInputError(f"column {i} is not a permutation")
        ident = None
        for e in range(n):
            if all(table[e][x] == x and table[x][e] == x for x in range(n)):
                ident = e
                break
        if ident is None:
            raise InvalidInputError("table has no identity element")
        T = np.asarray(table, dtype=np.int64)
        lhs = T[T, :]  # lhs[a, b, c] = (ab)c
        rhs = T[:, T]  # rhs[a, b, c] = a(bc)
        if not np.array_equal(lhs, rhs):
            a, b, c = np.argwhere(lhs != rhs)[0]
            raise InvalidInputError(f"table is not associative at ({a},{b},{c})")
        self.table = table
        self.size = n
        self._identity = ident
        self._inv = tuple(table[a].index(ident) for a in range(n))

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        if n <= 0:
            raise InvalidInputError(f"cyclic order must be positive, got {n}")
        return cls([[(i + j) % n for j in range(n)] for i in range(n)])

    def identity(self):
        return self._identity

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self._inv[a]

    def validate(self, a):
        if not isinstance(a, int) or not (0 <= a < self.size):
            raise InvalidInputError(f"not an index below {self.size}: {a!r}")

    def sort_key(self, a):
        return a

    def generators(self):
        # Every element generates within one step; diameter <= 1.
        return [a for a in range(self.size) if a != self._identity] or [self._identity]

    def order(self):
        return self.size

    def elements(self):
        return iter(range(self.size))

    def elem_to_json(self, a):
        return int(a)

    def elem_from_json(self, data):
        if not isinstance(data, int) or isinstance(data, bool):
            raise InvalidInputError(f"expected an element index, got {data!r}")
        self.validate(data)
        return data

    def to_json(self):
        return {"kind": "finite", "table": [list(row) for row in self.table]}

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and other.table == self.table

    def __hash__(self):
        return hash(("finite", self.table))

    def __repr__(self):
        return f"FiniteGroup(order={self.size})"


class ProductGroup(Group):
    """Direct product; elements are tuples of factor elements."""

    kind = "product"

    def __init__(self, factors: Sequence[Group]):
        factors = tuple(factors)
        if not factors:
            raise InvalidInputError("product needs at least one factor")
        self.factors = factors

    def identity(self):
        return tuple(f.identity() for f in self.factors)

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def inv(self, a):
        return tuple(f.inv(x) for f, x in zip(self.factors, a))

    def validate(self, a):
        if not isinstance(a, tuple) or len(a) != len(self.factors):
            raise InvalidInputError(f"not a {len(self.factors)}-factor element: {a!r}")
        for f, x in zip(self.factors, a):
            f.validate(x)

    def sort_key(self, a):
        return tuple(f.sort_key(x) for f, x in zip(self.factors, a))

    def generators(self):
        gens = []
        ident = self.identity()
        for i, f in enumerate(self.factors):
            for g in f.generators():
                v = list(ident)
                v[i] = g
                gens.append(tuple(v))
        return gens

    def order(self):
        total = 1
        for f in self.factors:
            n = f.order()
            if n is None:
                return None
            total *= n
        return total

    def elements(self):
        n = self.order()
        if n is None:
            return super().elements()
        check_size(n, "product group carrier")
        return itertools.product(*[list(f.elements()) for f in self.factors])

    def elem_to_json(self, a):
        return [f.elem_to_json(x) for f, x in zip(self.factors, a)]

    def elem_from_json(self, data):
        if not isinstance(data, list) or len(data) != len(self.factors):
            raise InvalidInputError(f"expected {len(self.factors)} components, got {data!r}")
        return tuple(f.elem_from_json(x) for f, x in zip(self.factors, data))

    def to_json(self):
        return {"kind": "product", "factors": [f.to_json() for f in self.factors]}

    def __eq__(self, other):
        return isinstance(other, ProductGroup) and other.factors == self.factors

    def __hash__(self):
        return hash(("product", self.factors))

    def __repr__(self):
        return f"ProductGroup({list(self.factors)!r})"


class SymmetricGroup(Group):
    """All permutations of 0..degree-1, as tuples mapping i -> p[i].

    Composition `mul(p, q)` applies q first, then p, matching left actions.
    The carrier is only enumerable while degree! stays under the cap; large
    degrees still support mul/inv/compare, which is all an embedding target
    needs for verification.
    """

    kind = "symmetric"

    def __init__(self, degree: int):
        if degree < 1:
            raise InvalidInputError(f"degree must be >= 1, got {degree}")
        self.degree = int(degree)

    def identity(self):
        return tuple(range(self.degree))

    def mul(self, a, b):
        return tuple(a[b[i]] for i in range(self.degree))

    def inv(self, a):
        out = [0] * self.degree
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)

    def validate(self, a):
        if (
            not isinstance(a, tuple)
            or len(a) != self.degree
            or sorted(a) != list(range(self.degree))
        ):
            raise InvalidInputError(f"not a permutation of {self.degree} points: {a!r}")

    def sort_key(self, a):
        return a

    def generators(self):
        if self.degree == 1:
            return [self.identity()]
        swap = list(range(self.degree))
        swap[0], swap[1] = swap[1], swap[0]
        cycle = tuple(list(range(1, self.degree)) + [0])
        return [tuple(swap), cycle]

    def order(self):
        total = 1
        for i in range(2, self.degree + 1):
            total *= i
        return total

    def elements(self):
        check_size(self.order(), "symmetric group carrier")
        return itertools.permutations(range(self.degree))

    def elem_to_json(self, a):
        return list(a)

    def elem_from_json(self, data):
        if not isinstance(data, list):
            raise InvalidInputError(f"expected a permutation list, got {data!r}")
        elem = tuple(int(x) for x in data)
        self.validate(elem)
        return elem

    def to_json(self):
        return {"kind": "symmetric", "degree": self.degree}

    def __eq__(self, other):
        return isinstance(other, SymmetricGroup) and other.degree == self.degree

    def __hash__(self):
        return hash(("symmetric", self.degree))

    def __repr__(self):
        return f"SymmetricGroup({self.degree})"


class FiniteSubset:
    """Ordered duplicate-free subset of a group, in canonical order.

    Positions in the subset are the coordinate indices used by every rule
    table and pattern, so the order must never depend on construction order.
    """

    __slots__ = ("group", "elems", "_index")

    def __init__(self, group: Group, elements):
        elems = []
        seen = set()
        for e in elements:
            group.validate(e)
            if e not in seen:
                seen.add(e)
                elems.append(e)
        check_size(len(elems), "finite subset")
        elems.sort(key=group.sort_key)
        self.group = group
        self.elems = tuple(elems)
        self._index = {e: i for i, e in enumerate(self.elems)}

    def index_of(self, e: Elem) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise InvalidInputError(f"element {e!r} not in subset") from None

    def __contains__(self, e):
        return e in self._index

    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __getitem__(self, i):
        return self.elems[i]

    def __eq__(self, other):
        return (
            isinstance(other, FiniteSubset)
            and other.group == self.group
            and other.elems == self.elems
        )

    def __hash__(self):
        return hash((self.group, self.elems))

    def issubset(self, other: "FiniteSubset") -> bool:
        return all(e in other for e in self.elems)

    def union(self, other: "FiniteSubset") -> "FiniteSubset":
        if other.group != self.group:
            raise InvalidInputError("subsets live in different groups")
        return FiniteSubset(self.group, self.elems + other.elems)

    def __repr__(self):
        shown = ", ".join(repr(e) for e in self.elems[:6])
        more = "" if len(self) <= 6 else f", ... ({len(self)} total)"
        return f"FiniteSubset[{shown}{more}]"


def element_mul(G: Group, a: Elem, b: Elem) -> Elem:
    """Product ab in canonical form."""
    G.validate(a)
    G.validate(b)
    return G.mul(a, b)


def element_inv(G: Group, a: Elem) -> Elem:
    """Inverse of a in canonical form."""
    G.validate(a)
    return G.inv(a)


def _bfs(G: Group, seeds: list[Elem], rounds: int) -> FiniteSubset:
    cap = enumeration_cap()
    seen = {G.identity()}
    frontier = seen
    for _ in range(rounds):
        nxt = set()
        for x in frontier:
            for s in seeds:
                y = G.mul(x, s)
                if y not in seen:
                    nxt.add(y)
        if len(seen) + len(nxt) > cap:
            raise ResourceCapError(
                f"ball enumeration exceeded cap ({len(seen) + len(nxt)} > {cap})"
            )
        if not nxt:
            break
        seen |= nxt
        frontier = nxt
    return FiniteSubset(G, seen)


def ball(G: Group, radius: int) -> FiniteSubset:
    """All elements of word length <= radius over the distinguished generators."""
    if radius < 0:
        raise InvalidInputError(f"radius must be >= 0, got {radius}")
    seeds = []
    for g in G.generators():
        seeds.append(g)
        seeds.append(G.inv(g))
    return _bfs(G, seeds, radius)


def set_product(G: Group, M: FiniteSubset, N: FiniteSubset) -> FiniteSubset:
    """The product set {mn : m in M, n in N}, deduplicated, canonical order."""
    if M.group != G or N.group != G:
        raise InvalidInputError("subsets must live in the given group")
    check_size(len(M) * len(N), "set product enumeration")
    out = {G.mul(m, n) for m in M for n in N}
    return FiniteSubset(G, out)


def symmetrize(G: Group, M: FiniteSubset) -> FiniteSubset:
    """M united with its inverses and the identity."""
    if M.group != G:
        raise InvalidInputError("subset must live in the given group")
    out = set(M.elems)
    out.update(G.inv(m) for m in M)
    out.add(G.identity())
    return FiniteSubset(G, out)


def generated_ball(G: Group, S: FiniteSubset, radius: int) -> FiniteSubset:
    """Products of at most `radius` factors from symmetrize(S).

    This is the radius-r ball of the subgroup generated by S, in the word
    metric of S's symmetrization.
    """
    if radius < 0:
        raise InvalidInputError(f"radius must be >= 0, got {radius}")
    seeds = list(symmetrize(G, S))
    return _bfs(G, seeds, radius)
