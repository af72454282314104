"""Behavior relations over the state set {0..n-1}."""

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Tuple

from .exceptions import RelationError


@dataclass(frozen=True, order=True)
class BehaviorRelation:
    """
    A subset of Q x Q stored as an n*n bit mask.

    Pair (i, j) is bit i*n + j, so the mask reads row by row.
    """

    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise RelationError(f"relation needs at least one state, got n={self.n}")
        if self.bits < 0 or self.bits >> (self.n * self.n):
            raise RelationError(f"bit mask {self.bits:#x} does not fit {self.n}x{self.n}")

    @classmethod
    def empty(cls, n: int) -> 'BehaviorRelation':
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> 'BehaviorRelation':
        return cls(n, (1 << (n * n)) - 1)

    @classmethod
    def diagonal(cls, n: int) -> 'BehaviorRelation':
        return cls.from_pairs(n, ((i, i) for i in range(n)))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Tuple[int, int]]) -> 'BehaviorRelation':
        """
        Build a relation from its pairs.

        Raises:
            RelationError: If a pair mentions a state outside 0..n-1.
        """
        bits = 0
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise RelationError(f"pair ({i},{j}) is outside {n}x{n}")
            bits |= 1 << (i * n + j)
        return cls(n, bits)

    @classmethod
    def from_bitstring(cls, text: str) -> 'BehaviorRelation':
        """
        Parse a row-major '0'/'1' string of length n*n.

        Raises:
            RelationError: If the length is not a square or a character is not a bit.
        """
        n = int(round(len(text) ** 0.5))
        if n < 1 or n * n != len(text) or set(text) - {"0", "1"}:
            raise RelationError(f"{text!r} is not a square bit string")
        bits = 0
        for index, flag in enumerate(text):
            if flag == "1":
                bits |= 1 << index
        return cls(n, bits)

    def to_bitstring(self) -> str:
        return "".join(
            "1" if self.bits >> index & 1 else "0" for index in range(self.n * self.n)
        )

    @classmethod
    def all_relations(cls, n: int) -> Iterator['BehaviorRelation']:
        """Enumerate all 2^(n*n) relations in mask order."""
        for bits in range(1 << (n * n)):
            yield cls(n, bits)

    def member(self, i: int, j: int) -> bool:
        if not (0 <= i < self.n and 0 <= j < self.n):
            return False
        return bool(self.bits >> (i * self.n + j) & 1)

    def __contains__(self, pair: object) -> bool:
        if not isinstance(pair, tuple) or len(pair) != 2:
            return False
        return self.member(*pair)

    def remove(self, i: int, j: int) -> 'BehaviorRelation':
        """Return the relation without the pair (i, j)."""
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise RelationError(f"pair ({i},{j}) is outside {self.n}x{self.n}")
        return BehaviorRelation(self.n, self.bits & ~(1 << (i * self.n + j)))

    def add(self, i: int, j: int) -> 'BehaviorRelation':
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise RelationError(f"pair ({i},{j}) is outside {self.n}x{self.n}")
        return BehaviorRelation(self.n, self.bits | 1 << (i * self.n + j))

    def row(self, i: int) -> int:
        """Get the successors of i as an n-bit mask."""
        return self.bits >> (i * self.n) & ((1 << self.n) - 1)

    def successors(self, i: int) -> List[int]:
        row = self.row(i)
        return [j for j in range(self.n) if row >> j & 1]

    def compose(self, other: 'BehaviorRelation') -> 'BehaviorRelation':
        """
        Compute {(i, k) : (i, j) in self and (j, k) in other}.

        Raises:
            RelationError: If the state counts differ.
        """
        if self.n != other.n:
            raise RelationError(f"cannot compose {self.n}x{self.n} with {other.n}x{other.n}")
        n = self.n
        rows = [other.row(j) for j in range(n)]
        bits = 0
        for i in range(n):
            row = self.row(i)
            target = 0
            j = 0
            while row:
                if row & 1:
                    target |= rows[j]
                row >>= 1
                j += 1
            bits |= target << (i * n)
        return BehaviorRelation(n, bits)

    def __matmul__(self, other: 'BehaviorRelation') -> 'BehaviorRelation':
        return self.compose(other)

    def pairs(self) -> List[Tuple[int, int]]:
        """List the pairs in lexicographic order."""
        n = self.n
        return [(i, j) for i in range(n) for j in range(n) if self.bits >> (i * n + j) & 1]

    def excluded_pairs(self) -> List[Tuple[int, int]]:
        """List the pairs not in the relation, in lexicographic order."""
        n = self.n
        return [(i, j) for i in range(n) for j in range(n) if not self.bits >> (i * n + j) & 1]

    @property
    def cardinality(self) -> int:
        return bin(self.bits).count("1")

    def __len__(self) -> int:
        return self.cardinality

    def __bool__(self) -> bool:
        return self.bits != 0

    def is_subset(self, other: 'BehaviorRelation') -> bool:
        return self.n == other.n and self.bits & ~other.bits == 0

    def __str__(self) -> str:
        return "{" + ",".join(f"({i},{j})" for i, j in self.pairs()) + "}"
