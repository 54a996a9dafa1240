"""Pointed finite alphabets and structured maps between their powers.

Alphabet values are handled as indices 0..size-1 everywhere. The canonical
index order is: plain alphabets count up, module alphabets enumerate (Z/n)^d
in mixed radix with the leftmost vector coordinate most significant, group
alphabets follow their table indices. A map A^m -> A is stored either as a
full lookup table over the mixed-radix input index (again leftmost memory
coordinate most significant) or, for module alphabets, as a list of m
matrices acting by x -> sum_j mat[j] @ x_j mod n.
"""

from __future__ import annotations

import numpy as np

from .caps import check_size
from .errors import InvalidInputError

_PLAIN = "plain"
_MODULE = "module"
_GROUP = "group"


class Alphabet:
    """Finite carrier with a basepoint and optional algebraic structure."""

    def __init__(self, flavor, size, basepoint, modulus=None, dim=None, table=None):
        self.flavor = flavor
        self.size = int(size)
        self.basepoint = int(basepoint)
        self.modulus = modulus
        self.dim = dim
        self.table = table
        if self.size < 1:
            raise InvalidInputError(f"alphabet size must be >= 1, got {size}")
        if flavor == _MODULE:
            # index <-> vector tables, index 0 = zero vector = basepoint
            radix = modulus ** np.arange(dim - 1, -1, -1, dtype=np.int64)
            idx = np.arange(self.size, dtype=np.int64)
            vecs = (idx[:, None] // radix[None, :]) % modulus
            self._vectors = vecs
            self._radix = radix

    @classmethod
    def plain(cls, size: int) -> "Alphabet":
        return cls(_PLAIN, size, 0)

    @classmethod
    def module(cls, modulus: int, dim: int) -> "Alphabet":
        if modulus < 2 or dim < 1:
            raise InvalidInputError(f"need modulus >= 2 and dim >= 1, got {modulus}, {dim}")
        size = modulus**dim
        check_size(size, "module alphabet carrier")
        return cls(_MODULE, size, 0, modulus=modulus, dim=dim)

    @classmethod
    def group(cls, table) -> "Alphabet":
        from .groups import FiniteGroup

        carrier = FiniteGroup(table)
        return cls(_GROUP, carrier.size, carrier.identity(), table=carrier)

    @property
    def is_module(self):
        return self.flavor == _MODULE

    @property
    def is_group(self):
        return self.flavor == _GROUP

    def vectors(self) -> np.ndarray:
        """(size, dim) array of module vectors, row i = vector of index i."""
        if not self.is_module:
            raise InvalidInputError("vectors only exist for module alphabets")
        return self._vectors

    def vector_to_index(self, vec) -> int:
        if not self.is_module:
            raise InvalidInputError("vectors only exist for module alphabets")
        v = np.asarray(vec, dtype=np.int64) % self.modulus
        if v.shape != (self.dim,):
            raise InvalidInputError(f"expected a length-{self.dim} vector, got {vec!r}")
        return int(v @ self._radix)

    def add(self, i: int, j: int) -> int:
        """Alphabet structure operation on indices (module add / group mul)."""
        if self.is_module:
            return self.vector_to_index(self._vectors[i] + self._vectors[j])
        if self.is_group:
            return self.table.mul(i, j)
        raise InvalidInputError("plain alphabets carry no operation")

    def scale(self, c: int, i: int) -> int:
        if not self.is_module:
            raise InvalidInputError("scaling needs a module alphabet")
        return self.vector_to_index(c * self._vectors[i])

    def validate_value(self, i) -> None:
        if not isinstance(i, (int, np.integer)) or not (0 <= int(i) < self.size):
            raise InvalidInputError(f"not an alphabet index below {self.size}: {i!r}")

    def value_to_json(self, i: int):
        if self.is_module:
            return [int(x) for x in self._vectors[i]]
        return int(i)

    def value_from_json(self, data) -> int:
        if self.is_module:
            if not isinstance(data, list) or len(data) != self.dim:
                raise InvalidInputError(f"expected a length-{self.dim} vector, got {data!r}")
            return self.vector_to_index([int(x) for x in data])
        if not isinstance(data, int) or isinstance(data, bool):
            raise InvalidInputError(f"expected an alphabet index, got {data!r}")
        self.validate_value(data)
        return data

    def to_json(self) -> dict:
        if self.flavor == _PLAIN:
            return {"flavor": "plain", "size": self.size}
        if self.flavor == _MODULE:
            return {"flavor": "module", "modulus": self.modulus, "dim": self.dim}
        return {"flavor": "group", "table": [list(r) for r in self.table.table]}

    def __eq__(self, other):
        return isinstance(other, Alphabet) and other.to_json() == self.to_json()

    def __hash__(self):
        return hash((self.flavor, self.size, self.modulus, self.dim))

    def __repr__(self):
        if self.is_module:
            return f"Alphabet.module({self.modulus}, {self.dim})"
        if self.is_group:
            return f"Alphabet.group(order={self.size})"
        return f"Alphabet.plain({self.size})"


def _input_radix(size: int, arity: int) -> np.ndarray:
    return size ** np.arange(arity - 1, -1, -1, dtype=np.int64)


def decode_assignments(size: int, arity: int) -> np.ndarray:
    """(size^arity, arity) array of all input tuples in canonical index order."""
    count = size**arity
    check_size(count, "assignment enumeration")
    if arity == 0:
        return np.zeros((1, 0), dtype=np.int64)
    radix = _input_radix(size, arity)
    idx = np.arange(count, dtype=np.int64)
    return (idx[:, None] // radix[None, :]) % size


class StructuredMap:
    """A set map A^arity -> A, as a lookup table or a matrix family."""

    def __init__(self, alphabet: Alphabet, arity: int, table=None, matrices=None):
        if arity < 0:
            raise InvalidInputError(f"arity must be >= 0, got {arity}")
        if (table is None) == (matrices is None):
            raise InvalidInputError("give exactly one of table / matrices")
        self.alphabet = alphabet
        self.arity = int(arity)
        if table is not None:
            table = np.asarray(table, dtype=np.int64)
            expected = alphabet.size**self.arity
            if table.shape != (expected,):
                raise InvalidInputError(
                    f"table must have length {expected}, got shape {table.shape}"
                )
            if table.size and (table.min() < 0 or table.max() >= alphabet.size):
                raise InvalidInputError("table entries must be alphabet indices")
            table.flags.writeable = False
            self.table = table
            self.matrices = None
        else:
            if not alphabet.is_module:
                raise InvalidInputError("matrix maps need a module alphabet")
            mats = np.asarray(matrices, dtype=np.int64) % alphabet.modulus
            if mats.shape != (self.arity, alphabet.dim, alphabet.dim):
                raise InvalidInputError(
                    f"need {self.arity} matrices of shape "
                    f"{alphabet.dim}x{alphabet.dim}, got {mats.shape}"
                )
            mats.flags.writeable = False
            self.matrices = mats
            self.table = None

    @property
    def is_matrix(self):
        return self.matrices is not None

    def evaluate_batch(self, X: np.ndarray) -> np.ndarray:
        """Apply the map to rows of X, an (n, arity) array of value indices."""
        X = np.asarray(X, dtype=np.int64)
        if X.ndim != 2 or X.shape[1] != self.arity:
            raise InvalidInputError(f"expected shape (n, {self.arity}), got {X.shape}")
        A = self.alphabet
        if self.table is not None:
            if self.arity == 0:
                return np.broadcast_to(self.table[0], (X.shape[0],)).copy()
            radix = _input_radix(A.size, self.arity)
            return self.table[X @ radix]
        vecs = A.vectors()[X]  # (n, arity, dim)
        out = np.einsum("jkd,njd->nk", self.matrices, vecs) % A.modulus
        return out @ A._radix

    def evaluate(self, window) -> int:
        return int(self.evaluate_batch(np.asarray(window, dtype=np.int64)[None, :])[0])

    def expand_table(self) -> "StructuredMap":
        """The same map with its table materialized (identity for tables)."""
        if self.table is not None:
            return self
        X = decode_assignments(self.alphabet.size, self.arity)
        return StructuredMap(self.alphabet, self.arity, table=self.evaluate_batch(X))

    def to_json(self) -> dict:
        if self.table is not None:
            return {
                "arity": self.arity,
                "table": [self.alphabet.value_to_json(int(v)) for v in self.table],
            }
        return {
            "arity": self.arity,
            "matrices": [[[int(x) for x in row] for row in mat] for mat in self.matrices],
        }

    def __repr__(self):
        kind = "matrices" if self.is_matrix else "table"
        return f"StructuredMap(arity={self.arity}, {kind}, over {self.alphabet!r})"


def verify_pointed(smap: StructuredMap, A: Alphabet | None = None) -> bool:
    """True iff the map sends the all-basepoints input to the basepoint."""
    A = A or smap.alphabet
    if A != smap.alphabet:
        raise InvalidInputError("map is not over the given alphabet")
    window = np.full(smap.arity, A.basepoint, dtype=np.int64)
    return smap.evaluate(window) == A.basepoint


def verify_structure(smap: StructuredMap, A: Alphabet | None = None) -> bool:
    """Check the map is a morphism for the alphabet's structure.

    Module tables are scanned for additivity on all input pairs plus scalar
    compatibility; group tables for multiplicativity on all pairs under the
    componentwise product. Matrix maps are morphisms by construction.
    """
    A = A or smap.alphabet
    if A != smap.alphabet:
        raise InvalidInputError("map is not over the given alphabet")
    if not (A.is_module or A.is_group):
        raise InvalidInputError("plain alphabets carry no structure to verify")
    if smap.is_matrix:
        return True

    m = smap.arity
    X = decode_assignments(A.size, m)
    count = X.shape[0]
    check_size(count * count, "structure verification pair scan")
    fX = smap.evaluate_batch(X)

    if A.is_module:
        vecs = A.vectors()
        radix = A._radix
        XV = vecs[X]  # (count, m, dim)
        for i in range(count):
            summed = ((XV[i][None, :, :] + XV) % A.modulus) @ radix  # (count, m)
            lhs = smap.evaluate_batch(summed)
            rhs = (vecs[fX[i]][None, :] + vecs[fX]) % A.modulus @ radix
            if not np.array_equal(lhs, rhs):
                return False
        for c in range(A.modulus):
            scaled = ((c * XV) % A.modulus) @ radix
            lhs = smap.evaluate_batch(scaled)
            rhs = ((c * vecs[fX]) % A.modulus) @ radix
            if not np.array_equal(lhs, rhs):
                return False
        return True

    mul = np.asarray([[A.table.mul(i, j) for j in range(A.size)] for i in range(A.size)])
    for i in range(count):
        prod = mul[X[i][None, :], X]  # componentwise product of tuples, (count, m)
        lhs = smap.evaluate_batch(prod)
        rhs = mul[fX[i], fX]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def finite_map_classify(endomap) -> dict:
    """Injectivity/surjectivity/bijectivity flags for an endomap of 0..n-1."""
    f = np.asarray(endomap, dtype=np.int64)
    if f.ndim != 1:
        raise InvalidInputError(f"expected a 1-d lookup array, got shape {f.shape}")
    n = f.shape[0]
    if n and (f.min() < 0 or f.max() >= n):
        raise InvalidInputError("endomap values must stay within 0..n-1")
    hit = np.zeros(n, dtype=bool)
    hit[f] = True
    surjective = bool(hit.all())
    injective = bool(np.unique(f).size == n)
    return {
        "injective": injective,
        "surjective": surjective,
        "bijective": injective and surjective,
    }
