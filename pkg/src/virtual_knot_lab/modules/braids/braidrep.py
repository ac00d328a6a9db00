"""
Virtual braid words and their matrix representation through a switch.

Grammar: whitespace separated tokens ``s<k>`` (sigma_k), ``-s<k>``
(sigma_k inverse) and ``v<k>`` (tau_k), 1 <= k <= n - 1.  Words are taken
literally; no relation is ever applied to them.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from virtual_knot_lab.core.exceptions import BraidParseError, SwitchPreconditionError
from virtual_knot_lab.core.logger import setup_logger
from virtual_knot_lab.modules.algebra.matrices import (
    Matrix,
    RingElem,
    block,
    identity,
    mat_equal,
    mat_inverse,
    mat_mul,
    mat_vec,
    vec_mat,
)
from virtual_knot_lab.modules.switches.switchlab import Switch, burau_conjugator, burau_parameter

logger = setup_logger(__name__)

SIGMA = "s"
SIGMA_INV = "-s"
TAU = "v"

_TOKEN = re.compile(r"^(-s|s|v)([0-9]+)$")


@dataclass(frozen=True)
class Letter:
    kind: str
    index: int

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"

    def inverse(self) -> "Letter":
        if self.kind == SIGMA:
            return Letter(SIGMA_INV, self.index)
        if self.kind == SIGMA_INV:
            return Letter(SIGMA, self.index)
        return self


@dataclass(frozen=True)
class VirtualBraidWord:
    strands: int
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise BraidParseError(f"a braid needs at least one strand, got {self.strands}")
        for letter in self.letters:
            if not 1 <= letter.index <= self.strands - 1:
                raise BraidParseError(
                    f"index {letter.index} of {letter} out of range [1, {self.strands - 1}]"
                )

    def is_classical(self) -> bool:
        return all(letter.kind != TAU for letter in self.letters)

    def inverse(self) -> "VirtualBraidWord":
        return VirtualBraidWord(self.strands, tuple(l.inverse() for l in reversed(self.letters)))

    def __mul__(self, other: "VirtualBraidWord") -> "VirtualBraidWord":
        if other.strands != self.strands:
            raise BraidParseError(f"cannot compose words on {self.strands} and {other.strands} strands")
        return VirtualBraidWord(self.strands, self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(str(l) for l in self.letters)


def parse_braid(text: str, strands: int) -> VirtualBraidWord:
    letters: List[Letter] = []
    for token in text.split():
        match = _TOKEN.match(token)
        if not match:
            raise BraidParseError(f"unknown token {token!r}; expected s<k>, -s<k> or v<k>")
        letters.append(Letter(match.group(1), int(match.group(2))))
    return VirtualBraidWord(strands, tuple(letters))


def format_braid(word: VirtualBraidWord) -> str:
    return str(word)


# ---------------------------------------------------------------------------
# representation
# ---------------------------------------------------------------------------

class Representation:
    """
    rho(S, n).  The image of a word w1 w2 ... wk is rho(wk) ... rho(w1): the
    first letter acts first on a column of strand labels.
    """

    def __init__(self, S: Switch, strands: int):
        self.switch = S
        self.strands = strands
        self._inverse: Optional[Matrix] = None
        self._cache: Dict[Letter, Matrix] = {}
        one, zero = S.ring.one(), S.ring.zero()
        self._twist: Matrix = ((zero, one), (one, zero))

    def _switch_inverse(self) -> Matrix:
        if self._inverse is None:
            self._inverse = mat_inverse(self.switch.matrix(), self.switch.ring)
        return self._inverse

    def letter(self, letter: Letter) -> Matrix:
        if letter not in self._cache:
            if letter.kind == SIGMA:
                local = self.switch.matrix()
            elif letter.kind == SIGMA_INV:
                local = self._switch_inverse()
            else:
                local = self._twist
            self._cache[letter] = block(local, letter.index - 1, self.strands, self.switch.ring)
        return self._cache[letter]

    def __call__(self, word: VirtualBraidWord) -> Matrix:
        if word.strands != self.strands:
            raise BraidParseError(f"word on {word.strands} strands, representation on {self.strands}")
        result = identity(self.strands, self.switch.ring)
        for letter in word.letters:
            result = mat_mul(self.letter(letter), result)
        return result


def represent(word: VirtualBraidWord, S: Switch) -> Matrix:
    return Representation(S, word.strands)(word)


def check_burau_equivalence(word: VirtualBraidWord, S: Switch) -> bool:
    """M rho(S)(w) = rho(S')(w) M for a classical word."""
    if not word.is_classical():
        raise SwitchPreconditionError("classical word", f"{word} contains a virtual crossing")
    M, prime = burau_conjugator(S, word.strands)
    lhs = mat_mul(M, represent(word, S))
    rhs = mat_mul(represent(word, prime), M)
    return mat_equal(lhs, rhs)


# ---------------------------------------------------------------------------
# fixed vectors
# ---------------------------------------------------------------------------

def left_fixed_ratio(S: Switch) -> RingElem:
    """P = A^-1 B^-1 A."""
    return S.A.inverse() * S.B.inverse() * S.A


def right_fixed_ratio(S: Switch) -> RingElem:
    """B^-1 (1 - A); distinct from burau_parameter (1 - A)(1 - D)."""
    return S.B.inverse() * (S.ring.one() - S.A)


def left_fixed_vector(S: Switch, n: int) -> Tuple[RingElem, ...]:
    """(P^(n-1), ..., P, 1)."""
    P = left_fixed_ratio(S)
    powers = [S.ring.one()]
    for _ in range(1, n):
        powers.append(powers[-1] * P)
    return tuple(reversed(powers))


def right_fixed_vector(S: Switch, n: int) -> Tuple[RingElem, ...]:
    """(1, Q, ..., Q^(n-1)) with Q = B^-1 (1 - A)."""
    Q = right_fixed_ratio(S)
    powers = [S.ring.one()]
    for _ in range(1, n):
        powers.append(powers[-1] * Q)
    return tuple(powers)


def fixed_vectors_hold(S: Switch, n: int) -> bool:
    """Both vectors are fixed by every sigma_i on n strands."""
    rep = Representation(S, n)
    row = left_fixed_vector(S, n)
    col = right_fixed_vector(S, n)
    for i in range(1, n):
        image = rep.letter(Letter(SIGMA, i))
        if vec_mat(row, image) != row or mat_vec(image, col) != col:
            return False
    return True


# ---------------------------------------------------------------------------
# relations and random words
# ---------------------------------------------------------------------------

def relation_pairs(strands: int) -> List[Tuple[VirtualBraidWord, VirtualBraidWord]]:
    """Both sides of every defining relation of the virtual braid group on n strands."""
    pairs: List[Tuple[str, str]] = []
    n = strands
    for i in range(1, n):
        pairs.append((f"v{i} v{i}", ""))
        pairs.append((f"s{i} -s{i}", ""))
        for j in range(i + 2, n):
            pairs.append((f"s{i} s{j}", f"s{j} s{i}"))
            pairs.append((f"v{i} v{j}", f"v{j} v{i}"))
            pairs.append((f"s{i} v{j}", f"v{j} s{i}"))
            pairs.append((f"v{i} s{j}", f"s{j} v{i}"))
        if i + 1 < n:
            k = i + 1
            pairs.append((f"s{i} s{k} s{i}", f"s{k} s{i} s{k}"))
            pairs.append((f"v{i} v{k} v{i}", f"v{k} v{i} v{k}"))
            pairs.append((f"s{i} v{k} v{i}", f"v{k} v{i} s{k}"))
    return [(parse_braid(a, n), parse_braid(b, n)) for a, b in pairs]


def random_word(rng: random.Random, strands: int, length: int, virtual: bool = True) -> VirtualBraidWord:
    if strands < 2:
        return VirtualBraidWord(strands)
    kinds: Sequence[str] = (SIGMA, SIGMA_INV, TAU) if virtual else (SIGMA, SIGMA_INV)
    letters = tuple(Letter(rng.choice(kinds), rng.randint(1, strands - 1)) for _ in range(length))
    return VirtualBraidWord(strands, letters)


__all__ = [
    "Letter",
    "VirtualBraidWord",
    "Representation",
    "parse_braid",
    "format_braid",
    "represent",
    "check_burau_equivalence",
    "burau_parameter",
    "left_fixed_ratio",
    "right_fixed_ratio",
    "left_fixed_vector",
    "right_fixed_vector",
    "fixed_vectors_hold",
    "relation_pairs",
    "random_word",
]
