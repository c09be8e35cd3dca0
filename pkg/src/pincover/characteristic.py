"""Stiefel-Whitney data on closed surfaces and the pin existence/counting predicates.

The Z2 intersection form of a one-polygon closed surface is computed in the
basis of transverse chord curves: the chord of a letter crosses the chord of
another iff their occurrences interleave around the polygon, and a chord is
one-sided iff its letter occurs twice with the same exponent (that is the
chart-transition sign of the edge).  Chord curves are dual to the edge loops
under the intersection pairing, which turns w1 = "cross an orientation-
reversing seam" into an exact GF(2) solve; w2 is the Euler characteristic mod
2, independently guarded by the Wu relation w2 = w1 cup w1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .homology import PolygonComplex, b1_mod2, gf2_solve
from .surface import SurfaceModel


def _occurrence_positions(word, letter):
    return [i for i, (name, _) in enumerate(word.word) if name == letter]


def chord_gram_matrix(model: SurfaceModel) -> tuple[list[str], np.ndarray]:
    """Z2 intersection form in the chord basis, one chord per letter.

    Off-diagonal entries count interleavings of occurrence pairs; diagonal
    entries record same-exponent (one-sided) letters.
    """
    word = model.word
    letters = word.letters
    n = len(letters)
    pos = {g: _occurrence_positions(word, g) for g in letters}
    gram = np.zeros((n, n), dtype=np.uint8)
    for i, g in enumerate(letters):
        gram[i, i] = 1 if word.same_exponent(g) else 0
        for j in range(i + 1, n):
            h = letters[j]
            a1, a2 = pos[g]
            b1, b2 = pos[h]
            crossed = (a1 < b1 < a2 < b2) or (b1 < a1 < b2 < a2)
            gram[i, j] = gram[j, i] = 1 if crossed else 0
    return letters, gram


def _require_closed(model: SurfaceModel):
    if model.boundary_components != 0:
        raise ValueError(f"{model.name} is not closed")


def _single_vertex(model: SurfaceModel) -> bool:
    return PolygonComplex.from_word(model.word).vertex_count == 1


@dataclass(frozen=True)
class Z2Cocycle:
    """Functional on H1(X, Z2), one bit per generator letter of the polygon."""

    bits: dict[str, int]

    def __call__(self, letter: str) -> int:
        return self.bits[letter]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.bits.values())

    def vector(self, letters) -> np.ndarray:
        return np.array([self.bits[g] for g in letters], dtype=np.uint8)


def w1(model: SurfaceModel) -> Z2Cocycle:
    """First Stiefel-Whitney class: 1 on the generators whose loops reverse orientation."""
    _require_closed(model)
    word = model.word
    letters = word.letters
    eps = np.array([1 if word.same_exponent(g) else 0 for g in letters], np.uint8)
    if not eps.any():
        return Z2Cocycle({g: 0 for g in letters})
    if not _single_vertex(model):
        raise ValueError("w1 needs a one-vertex polygon model")
    _, gram = chord_gram_matrix(model)
    # the chords are dual to the edge loops, so solving G v = eps evaluates
    # the seam-crossing cocycle on the edge-loop basis
    v = gf2_solve(gram, eps)
    if v is None:
        raise ValueError("degenerate intersection form")
    return Z2Cocycle({g: int(v[i]) for i, g in enumerate(letters)})


def w1_cup_w1(model: SurfaceModel) -> int:
    """<w1 cup w1, [X]> via the intersection form."""
    _require_closed(model)
    word = model.word
    letters = word.letters
    eps = np.array([1 if word.same_exponent(g) else 0 for g in letters], np.uint8)
    if not eps.any():
        return 0
    _, gram = chord_gram_matrix(model)
    v = gf2_solve(gram, eps)
    if v is None:
        raise ValueError("degenerate intersection form")
    return int(eps @ v) % 2


def w2(model: SurfaceModel) -> int:
    """Second Stiefel-Whitney class of a closed surface: chi mod 2."""
    _require_closed(model)
    return model.euler_characteristic() % 2


@dataclass(frozen=True)
class ObstructionReport:
    surface: str
    w1: Z2Cocycle
    w1_cup_w1: int
    w2: int
    pin_plus_exists: bool
    pin_minus_exists: bool
    count_pin_plus: int
    count_pin_minus: int
    h1_z2_dim: int

    def as_dict(self):
        return {
            "surface": self.surface,
            "w1": {k: int(v) for k, v in sorted(self.w1.bits.items())},
            "w1_cup_w1": self.w1_cup_w1,
            "w2": self.w2,
            "pin_plus": {"exists": self.pin_plus_exists, "count": self.count_pin_plus},
            "pin_minus": {"exists": self.pin_minus_exists, "count": self.count_pin_minus},
            "h1_z2_dim": self.h1_z2_dim,
        }


def obstructions(model: SurfaceModel) -> ObstructionReport:
    """Pin existence and torsor counts: 2^{dim H^1(X, Z2)} structures when nonempty."""
    _require_closed(model)
    klass = w1(model)
    square = w1_cup_w1(model)
    two = w2(model)
    if (two + square) % 2 != 0 and model.orientable:
        raise AssertionError("orientable surface with w1 != 0")
    plus = two == 0
    minus = (two + square) % 2 == 0
    dim = b1_mod2(PolygonComplex.from_word(model.word))
    count = 2 ** dim
    return ObstructionReport(
        surface=model.name,
        w1=klass,
        w1_cup_w1=square,
        w2=two,
        pin_plus_exists=plus,
        pin_minus_exists=minus,
        count_pin_plus=count if plus else 0,
        count_pin_minus=count if minus else 0,
        h1_z2_dim=dim,
    )
