"""Actions: homomorphisms from an abstract generated group into model
isometries, given by generator-to-isometry assignments."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import ValidationError
from .models import Isometry, SpaceModel
from .words import GroupWord


@dataclass
class Action:
    """One homomorphism: every generator name maps to an isometry of model.

    Inverse images are derived, so g and g^-1 compose to the identity by
    construction.
    """

    name: str
    model: SpaceModel
    images: dict[str, Isometry]

    def __post_init__(self):
        for gen, iso in self.images.items():
            self.model.require_iso(iso)

    def image(self, word: GroupWord) -> Isometry:
        out = self.model.identity()
        for gen, sign in word.letters:
            if gen not in self.images:
                raise ValidationError(f"generator {gen!r} has no image in action {self.name!r}")
            g = self.images[gen]
            if sign < 0:
                g = self.model.invert(g)
            out = self.model.compose(out, g)
        return out

    def classify_word(self, word: GroupWord):
        return self.model.classify(self.image(word))


@dataclass
class ActionSystem:
    """A shared generator alphabet acting on several model spaces."""

    generators: tuple[str, ...]
    actions: list[Action]
    witnesses: list[Optional[GroupWord]] = field(default_factory=list)

    def __post_init__(self):
        if not self.generators:
            raise ValidationError("at least one generator required")
        if len(set(self.generators)) != len(self.generators):
            raise ValidationError("duplicate generator names")
        for action in self.actions:
            for gen in self.generators:
                if gen not in action.images:
                    raise ValidationError(
                        f"generator {gen!r} missing in action {action.name!r}"
                    )
        if not self.witnesses:
            self.witnesses = [None] * len(self.actions)
        if len(self.witnesses) != len(self.actions):
            raise ValidationError("witness list must align with actions")
        for w in self.witnesses:
            if w is not None:
                for gen, _ in w.letters:
                    if gen not in self.generators:
                        raise ValidationError(f"witness uses unknown generator {gen!r}")

    @property
    def n_actions(self) -> int:
        return len(self.actions)

    def enumerate_words(self, max_length: int) -> list[GroupWord]:
        """All freely reduced nonempty words up to the given length,
        deterministic order."""
        letters = []
        for g in self.generators:
            letters.append((g, 1))
            letters.append((g, -1))
        out: list[GroupWord] = []
        frontier: list[tuple[tuple[str, int], ...]] = [()]
        for _ in range(max_length):
            nxt = []
            for w in frontier:
                for letter in letters:
                    if w and w[-1] == (letter[0], -letter[1]):
                        continue
                    nw = w + (letter,)
                    nxt.append(nw)
                    out.append(GroupWord(nw))
            frontier = nxt
        return out
