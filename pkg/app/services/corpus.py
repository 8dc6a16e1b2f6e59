"""
The diagram corpus: named builders plus the tangle files under the
fixtures directory.

Closed links come from braid closures. Tangles whose strands turn back
(cups, caps, antiparallel twists) get explicit strand directions so their
crossings carry consistent signs.
"""
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from app import logger
from app.config.settings import settings
from app.core.exceptions import DiagramError
from app.services.diagrams import (
    Crossing,
    TangleDiagram,
    braid_closure,
    braid_tangle,
    compose_tangles,
    cap_tangle,
    cup_tangle,
    identity_tangle,
    load_tangle,
    reorder_diagram,
    stack_tangles,
    unknot_diagram,
)

Pair = Tuple[str, TangleDiagram, TangleDiagram]


def ladybug_tangle() -> TangleDiagram:
    """One crossing with all four ends on the right side: the (0,4)-tangle of the ladybug face."""
    return TangleDiagram(0, 2, (Crossing((1, 2, 3, 4), -1),), (), (1, 2, 3, 4), (1, 2, 3, 4), name="ladybug")


def nested_caps() -> TangleDiagram:
    """The (4,0)-tangle closing points 1-4 and 2-3."""
    return TangleDiagram(2, 0, (), (1, 2, 2, 1), (), (1, 2), name="nested_caps")


def ladybug_cap() -> TangleDiagram:
    """
    One crossing with all four ends on the left side. Its 0-resolution is
    the pair of nested caps, so it closes the ladybug tangle.
    """
    return TangleDiagram(2, 0, (Crossing((3, 2, 1, 4), 1),), (1, 2, 3, 4), (), (1, 2, 3, 4), name="ladybug_cap")


def ladybug_closure() -> TangleDiagram:
    """
    The ladybug tangle closed by ``ladybug_cap``: a two-component RII unlink
    whose 00-resolution is a single circle with both surgery arcs on it.
    """
    return compose_tangles(ladybug_tangle(), ladybug_cap()).with_name("ladybug_closure")


def kinked_unlink() -> TangleDiagram:
    """RII unlink next to a disjoint kink: a 3-cube with a ladybug face at 000 and at 001."""
    return stack_tangles(braid_closure([1, -1], 2, name="unlink_r2"),
                         braid_closure([1], 2, name="kink")).with_name("kinked_unlink")


def u_turn() -> TangleDiagram:
    """Cap on the left, cup on the right."""
    return TangleDiagram(1, 1, (), (1, 1), (2, 2), (1, 2), name="u_turn")


def unlink(components: int = 2) -> TangleDiagram:
    return TangleDiagram(0, 0, (), (), (), tuple(range(1, components + 1)), name=f"unlink{components}")


def antiparallel_twist(word, directions=(1, -1), name: str = "") -> TangleDiagram:
    return braid_tangle(word, 2, name=name or f"twist{list(word)}{list(directions)}", directions=directions)


def tangle_2_4(word=(2,), name: str = "") -> TangleDiagram:
    """
    A (2,4)-tangle: a through strand pair with a cup hooked into a
    4-strand braid word on letters 1 and 2.
    """
    if any(abs(letter) > 2 for letter in word):
        raise DiagramError("the strand at position 4 runs backwards and cannot cross")
    base = stack_tangles(identity_tangle(1), cup_tangle())
    return compose_tangles(base, braid_tangle(word, 4)).with_name(name or f"tangle24{list(word)}")


BUILDERS: Dict[str, Callable[[], TangleDiagram]] = {
    "unknot": unknot_diagram,
    "unknot_kink_pos": lambda: braid_closure([1], 2, name="unknot_kink_pos"),
    "unknot_kink_neg": lambda: braid_closure([-1], 2, name="unknot_kink_neg"),
    "unlink2": lambda: unlink(2),
    "unlink_r2": lambda: braid_closure([1, -1], 2, name="unlink_r2"),
    "hopf": lambda: braid_closure([1, 1], 2, name="hopf"),
    "trefoil_right": lambda: braid_closure([1, 1, 1], 2, name="trefoil_right"),
    "trefoil_left": lambda: braid_closure([-1, -1, -1], 2, name="trefoil_left"),
    "trefoil_r2": lambda: braid_closure([1, -1, 1, 1, 1], 2, name="trefoil_r2"),
    "trefoil_stabilized": lambda: braid_closure([1, 1, 1, 2], 3, name="trefoil_stabilized"),
    "figure_eight": lambda: braid_closure([1, -2, 1, -2], 3, name="figure_eight"),
    "r3_left": lambda: braid_closure([1, 2, 1], 3, name="r3_left"),
    "r3_right": lambda: braid_closure([2, 1, 2], 3, name="r3_right"),
    "ladybug": ladybug_tangle,
    "nested_caps": nested_caps,
    "ladybug_cap": ladybug_cap,
    "ladybug_closure": ladybug_closure,
    "kinked_unlink": kinked_unlink,
    "cup": cup_tangle,
    "cap": cap_tangle,
    "identity": lambda: identity_tangle(1),
    "u_turn": u_turn,
    "twist": lambda: braid_tangle([1], 2, name="twist"),
    "twist2": lambda: braid_tangle([1, 1], 2, name="twist2"),
    "twist_inverse": lambda: braid_tangle([-1], 2, name="twist_inverse"),
    "twist_r2": lambda: braid_tangle([1, -1], 2, name="twist_r2"),
    "antiparallel": lambda: antiparallel_twist([1], (1, -1), name="antiparallel"),
    "antiparallel_back": lambda: antiparallel_twist([1], (-1, 1), name="antiparallel_back"),
    "antiparallel_neg": lambda: antiparallel_twist([-1], (1, -1), name="antiparallel_neg"),
    "tangle24": lambda: tangle_2_4((2,), name="tangle24"),
    "tangle24_b": lambda: tangle_2_4((2, -1), name="tangle24_b"),
}

# closed diagrams and tangles in the cube-checked part of the corpus
CLOSED = ["unknot", "unknot_kink_pos", "unknot_kink_neg", "unlink2", "unlink_r2", "hopf",
          "trefoil_right", "trefoil_left", "figure_eight", "r3_left", "r3_right", "ladybug_closure",
          "kinked_unlink"]
TANGLES = ["ladybug", "cup", "cap", "identity", "twist", "twist2", "twist_inverse",
           "antiparallel", "tangle24", "tangle24_b", "ladybug_cap"]


def random_tangles(count: int, seed: int = 0, max_length: int = 3) -> List[TangleDiagram]:
    """
    Reproducible random tangles for fuzzing the cube.

    Even draws are 2-strand braid tangles, odd draws are (2,4)-tangles on
    letters ±1 and ±2. Word lengths run from 1 to ``max_length``.
    """
    rng = np.random.default_rng(seed)
    tangles = []
    for k in range(count):
        length = int(rng.integers(1, max_length + 1))
        signs = rng.choice([-1, 1], size=length)
        if k % 2 == 0:
            word = [int(s) for s in signs]
            tangles.append(braid_tangle(word, 2, name=f"braid{word}"))
        else:
            letters = rng.integers(1, 3, size=length)
            word = [int(s * letter) for s, letter in zip(signs, letters)]
            tangles.append(tangle_2_4(word, name=f"tangle24{word}"))
    logger.debug(f"Drew {count} random tangles with seed {seed}")
    return tangles


def build(name: str) -> TangleDiagram:
    try:
        return BUILDERS[name]()
    except KeyError:
        raise DiagramError(f"Unknown corpus diagram: {name}")


def resolve_input(spec: Union[str, Path], fixtures_dir: Optional[Union[str, Path]] = None) -> TangleDiagram:
    """
    Turn a CLI argument into a diagram.

    Existing paths are loaded as tangle files; otherwise the name is looked
    up among the builders and then as ``<name>.tgl`` in the fixtures
    directory.
    """
    path = Path(spec)
    if path.is_file():
        return load_tangle(path)
    name = str(spec)
    if name in BUILDERS:
        return build(name)
    fixture = Path(fixtures_dir or settings.FIXTURES_DIR) / f"{name}.tgl"
    if fixture.is_file():
        return load_tangle(fixture)
    raise DiagramError(f"No tangle file or corpus diagram named {spec}")


def load_corpus(fixtures_dir: Optional[Union[str, Path]] = None) -> Dict[str, TangleDiagram]:
    """All ``*.tgl`` files under the fixtures directory, keyed by file stem."""
    directory = Path(fixtures_dir or settings.FIXTURES_DIR)
    if not directory.is_dir():
        logger.warning(f"Fixtures directory {directory} does not exist")
        return {}
    corpus = {path.stem: load_tangle(path) for path in sorted(directory.glob("*.tgl"))}
    logger.info(f"Loaded {len(corpus)} fixture diagrams from {directory}")
    return corpus


def reidemeister_pairs() -> List[Pair]:
    """Diagram pairs related by one Reidemeister move or a crossing reordering."""
    hopf = build("hopf")
    trefoil = build("trefoil_right")
    return [
        ("RI positive", build("unknot"), build("unknot_kink_pos")),
        ("RI negative", build("unknot"), build("unknot_kink_neg")),
        ("RII unlink", build("unlink2"), build("unlink_r2")),
        ("RII ladybug", build("unlink2"), build("ladybug_closure")),
        ("RII trefoil", trefoil, build("trefoil_r2")),
        ("RII tangle", build("identity"), build("twist_r2")),
        ("RIII", build("r3_left"), build("r3_right")),
        ("stabilization", trefoil, build("trefoil_stabilized")),
        ("reorder hopf", hopf, reorder_diagram(hopf, [1, 0])),
        ("reorder trefoil", trefoil, reorder_diagram(trefoil, [2, 0, 1])),
    ]


def gluing_pairs() -> List[Pair]:
    """Composable pairs with at most four crossings on each side."""
    return [
        ("cup-cap", build("cup"), build("cap")),
        ("twist-twist", build("twist"), build("twist")),
        ("twist-identity", build("twist"), build("identity")),
        ("identity-inverse", build("identity"), build("twist_inverse")),
        ("ladybug-nested caps", build("ladybug"), build("nested_caps")),
        ("ladybug-cap", build("ladybug"), build("ladybug_cap")),
        ("twist-tangle24", build("twist"), build("tangle24")),
        ("cupped-capped", compose_tangles(cup_tangle(), build("antiparallel")),
         compose_tangles(build("antiparallel_back"), cap_tangle())),
    ]


def rotation_pairs() -> List[Pair]:
    """(2,2)-tangle pairs composable in both orders, for HH(M ⊗ N) against HH(N ⊗ M)."""
    return [
        ("antiparallel/u_turn", build("antiparallel"), build("u_turn")),
        ("antiparallel_neg/u_turn", build("antiparallel_neg"), build("u_turn")),
        ("antiparallel/antiparallel_back", build("antiparallel"), build("antiparallel_back")),
    ]
