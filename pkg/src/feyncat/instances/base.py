"""The interface every Hopf instance implements."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator

Word = tuple[str, ...]
Channel = tuple[Word, Word, int]


class InstanceError(ValueError):
    """A generator or expression that the instance does not accept."""


class Unsupported(InstanceError):
    """The instance does not provide the requested optional structure."""


class InstanceSpec:
    """Base class for instances.

    Subclasses provide the class keys of generators (strings), which of them
    are identities, a degree, and :meth:`factorizations`, which enumerates
    the two-step factorizations of the morphism represented by a whole word.
    Enumerating on words, not just on single generators, is what makes the
    bialgebra equation a real check rather than a definition.
    """

    name = "abstract"
    symmetric = False
    free_action = True
    #: left cofactors of a single generator are single generators
    one_comma_left = True
    #: sizes used by verify_axioms when sampling
    acceptance_degree = 5

    def __init__(self) -> None:
        self.delta_cache: dict = {}
        self.antipode_cache: dict = {}
        self._checked: set = set()
        self._ident_memo: dict = {}
        self._degree_memo: dict = {}

    # -- words ---------------------------------------------------------------
    def normalize(self, word: Iterable[str]) -> Word:
        return tuple(sorted(word)) if self.symmetric else tuple(word)

    def check_key(self, key: str) -> None:
        if key in self._checked:
            return
        self.validate_key(key)
        self._checked.add(key)

    def validate_key(self, key: str) -> None:
        """Raise :class:`InstanceError` when ``key`` is not an admissible generator."""
        raise NotImplementedError

    def is_identity(self, key: str) -> bool:
        raise NotImplementedError

    def degree(self, key: str) -> int:
        raise NotImplementedError

    def ident(self, key: str) -> bool:
        """Memoized :meth:`is_identity`."""
        hit = self._ident_memo.get(key)
        if hit is None:
            hit = self._ident_memo[key] = self.is_identity(key)
        return hit

    def deg(self, key: str) -> int:
        """Memoized :meth:`degree`."""
        hit = self._degree_memo.get(key)
        if hit is None:
            hit = self._degree_memo[key] = self.degree(key)
        return hit

    def word_degree(self, word: Iterable[str]) -> int:
        return sum(self.deg(k) for k in word)

    # -- coproduct data ------------------------------------------------------
    def factorizations(self, word: Word) -> Iterable[Channel]:
        """All (outer, inner, multiplicity) factorizations of the morphism ``word``."""
        raise NotImplementedError

    def quot_factorizations(self, word: Word) -> Iterable[Channel]:
        """Concrete factorization counts (no quotient by the middle automorphisms)."""
        if self.symmetric:
            raise Unsupported(f"{self.name}: no concrete factorization count")
        return self.factorizations(word)

    def red_channels(self, word: Word) -> Iterator[tuple[Word, Word, Fraction]]:
        """Channels of the reduced coproduct, weighted by ``1/|Aut Z|`` per orbit element."""
        if not self.free_action:
            raise Unsupported(f"{self.name}: the middle automorphism action is not free")
        for left, right, m in self.factorizations(word):
            yield left, right, Fraction(m)

    def aut_order(self, word: Word) -> int:
        if self.symmetric:
            raise Unsupported(f"{self.name}: automorphism orders not available")
        return 1

    def iso_count(self, word: Word) -> int:
        if self.symmetric:
            raise Unsupported(f"{self.name}: isomorphism counts not available")
        return 1

    def b_plus(self, word: Word) -> str:
        raise Unsupported(f"{self.name}: no B_+ operator configured")

    # -- enumeration for checks ------------------------------------------------
    def generators(self, max_degree: int) -> list[str]:
        """Admissible generators of degree at most ``max_degree``, sorted."""
        raise NotImplementedError

    def identity_keys(self) -> list[str]:
        """A few identity generators for group-likeness checks."""
        return [k for k in self.generators(0) if self.is_identity(k)]

    # -- text ----------------------------------------------------------------
    def parse_generator(self, text: str) -> str:
        """Inline syntax to class key."""
        raise NotImplementedError

    def grammar(self) -> str:
        return ""

    def display(self, key: str, fmt: str = "text") -> str:
        return key

    def __repr__(self) -> str:
        return f"<instance {self.name}>"
