"""Seeded, deterministic generators of points, isometries and whole action
systems.

Used by the property/acceptance suites and the CLI's delta/dynamics
commands.  Plane matrices are built from elementary shears with small
integer parameters, which keeps entry heights <= 10 and keeps axes and
fixed points within a bounded distance of the basepoint i (so orbit-growth
estimates at moderate powers are sharp).
"""

from __future__ import annotations

import random
from fractions import Fraction

from .actions import Action, ActionSystem
from .halfplane import HalfPlaneModel
from .models import Isometry, Point, SpaceModel
from .trees import BassSerreModel, CayleyTreeModel
from .words import GroupWord


def rng_from_seed(seed: int) -> random.Random:
    return random.Random(seed)


# -- points -------------------------------------------------------------


def sample_plane_points(model: HalfPlaneModel, count: int, rng: random.Random) -> list[Point]:
    """Random rational points, x in [-3, 3], y in [1/10, 4]."""
    out = []
    for _ in range(count):
        x = Fraction(rng.randint(-300, 300), 100)
        y = Fraction(rng.randint(10, 400), 100)
        out.append(model.point_xy(x, y))
    return out


def sample_tree_points(model, count: int, rng: random.Random, max_units: int = 6) -> list[Point]:
    out = []
    for _ in range(count):
        n = rng.randint(0, max_units)
        if isinstance(model, CayleyTreeModel):
            word: list[int] = []
            for _ in range(n):
                choices = [l for l in model.letters() if not word or l != -word[-1]]
                word.append(rng.choice(choices))
            out.append(model.vertex(word))
        else:
            syllables = _random_bs_syllables(model, rng, n)
            vtype = rng.choice((0, 1))
            out.append(model.coset_vertex(syllables, vtype))
    return out


def sample_points(model: SpaceModel, count: int, rng: random.Random) -> list[Point]:
    if isinstance(model, HalfPlaneModel):
        return sample_plane_points(model, count, rng)
    return sample_tree_points(model, count, rng)


# -- plane isometries -----------------------------------------------------


def _shear_product(model: HalfPlaneModel, u: int, v: int, lower_first: bool) -> Isometry:
    lower = model.matrix(1, 0, v, 1)
    upper = model.matrix(1, u, 0, 1)
    return model.compose(lower, upper) if lower_first else model.compose(upper, lower)


def random_plane_hyperbolic(model: HalfPlaneModel, rng: random.Random) -> Isometry:
    """|trace| > 2, entries of height <= 10, axis passing near i."""
    u = rng.choice([1, 2, 3]) * rng.choice([1, -1])
    v = abs(rng.choice([1, 2, 3])) * (1 if u > 0 else -1)  # uv > 0: trace 2 + uv
    return _shear_product(model, u, v, rng.random() < 0.5)


def random_plane_elliptic(
    model: HalfPlaneModel, rng: random.Random, allow_infinite_order: bool = True
) -> Isometry:
    """|trace| < 2; finite rotation orders 2 and 3 or an infinite-order
    rotation with trace +-1/2, fixed point near i."""
    if allow_infinite_order and rng.random() < 0.25:
        t = Fraction(rng.choice([1, -1]), 2)
        return model.matrix(0, -1, 1, t)
    u = rng.choice([1, 2, 3])
    v = -rng.choice([1, 2, 3])
    if u * v < -3:  # keep |trace| = |2 + uv| < 2
        v = -1
    if rng.random() < 0.5:
        u, v = -u, -v
    return _shear_product(model, u, v, rng.random() < 0.5)


# -- tree isometries --------------------------------------------------------


def _random_bs_syllables(model: BassSerreModel, rng: random.Random, n: int) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    factor = rng.choice((0, 1))
    for _ in range(n):
        order = model.orders[factor]
        out.append((factor, rng.randint(1, order - 1)))
        factor = 1 - factor
    return out


def random_bs_hyperbolic(model: BassSerreModel, rng: random.Random, half_length: int = 2) -> Isometry:
    """Alternating even-syllable word: cyclically reduced, tau = 2*half_length."""
    n = 2 * rng.randint(1, half_length)
    syllables: list[tuple[int, int]] = []
    factor = rng.choice((0, 1))
    for _ in range(n):
        order = model.orders[factor]
        syllables.append((factor, rng.randint(1, order - 1)))
        factor = 1 - factor
    return model.word(syllables)


def random_bs_elliptic(model: BassSerreModel, rng: random.Random) -> Isometry:
    factor = rng.choice((0, 1))
    order = model.orders[factor]
    core = [(factor, rng.randint(1, order - 1))]
    if rng.random() < 0.5:
        other = 1 - factor
        conj = [(other, rng.randint(1, model.orders[other] - 1))]
        inv = model.invert_word(tuple(conj))
        return model.word(conj + core + list(inv))
    return model.word(core)


def random_cayley_hyperbolic(model: CayleyTreeModel, rng: random.Random, max_len: int = 4) -> Isometry:
    while True:
        n = rng.randint(1, max_len)
        word: list[int] = []
        for _ in range(n):
            choices = [l for l in model.letters() if not word or l != -word[-1]]
            word.append(rng.choice(choices))
        iso = model.word(word)
        if model.classify(iso).is_hyperbolic:
            return iso


def random_hyperbolic(model: SpaceModel, rng: random.Random) -> Isometry:
    if isinstance(model, HalfPlaneModel):
        return random_plane_hyperbolic(model, rng)
    if isinstance(model, BassSerreModel):
        return random_bs_hyperbolic(model, rng)
    return random_cayley_hyperbolic(model, rng)


def random_elliptic(model: SpaceModel, rng: random.Random) -> Isometry:
    if isinstance(model, HalfPlaneModel):
        return random_plane_elliptic(model, rng)
    if isinstance(model, BassSerreModel):
        return random_bs_elliptic(model, rng)
    return model.identity()  # free actions: only the identity is elliptic


# -- whole systems -----------------------------------------------------------


def _random_model(rng: random.Random) -> SpaceModel:
    kind = rng.choice(["half_plane", "half_plane", "bass_serre", "cayley_tree"])
    if kind == "half_plane":
        return HalfPlaneModel()
    if kind == "bass_serre":
        m = rng.choice([2, 2, 3])
        n = rng.choice([3, 4])
        return BassSerreModel(m, n, ball_radius=8)
    return CayleyTreeModel(rng.choice([2, 3]), ball_radius=8)


def random_action_system(
    seed: int,
    n_actions: int | None = None,
    generators: tuple[str, ...] = ("f", "g"),
    hyperbolic_bias: float = 0.6,
    check_depth: int = 3,
    max_attempts: int = 50,
) -> ActionSystem:
    """A seeded random system with a valid hyperbolic witness per action and
    no parabolic words up to check_depth (rejection-sampled)."""
    from .combiner import check_hypotheses

    rng = rng_from_seed(seed)
    for _ in range(max_attempts):
        n = n_actions if n_actions is not None else rng.randint(2, 4)
        actions: list[Action] = []
        witnesses: list[GroupWord] = []
        for i in range(n):
            model = _random_model(rng)
            images = {}
            witness_gen = rng.choice(generators)
            for gen in generators:
                if gen == witness_gen or rng.random() < hyperbolic_bias:
                    images[gen] = random_hyperbolic(model, rng)
                else:
                    images[gen] = random_elliptic(model, rng)
            actions.append(Action(f"a{i}-{model.kind}", model, images))
            witnesses.append(GroupWord.generator(witness_gen))
        system = ActionSystem(tuple(generators), actions, witnesses)
        report = check_hypotheses(system, check_depth)
        if report.passed:
            return system
    raise RuntimeError(f"could not build a hypothesis-clean system from seed {seed}")
