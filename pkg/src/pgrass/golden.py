"""Golden projection models, one per class.

These are the reference inputs for the classification truth table; the
JSON files shipped under models/ are generated from these definitions
and a test keeps them in sync.  Non-D3 models are designed so their
materializations carry an exact norm-1 witness against E+ (an
intersection block) or an alpha tail steep enough that the distance
exceeds 1 - 1e-6 at the default truncation.
"""

from .models import INF, ClassLabel, ProjectionModel, TailSpec

# Power tails use g = 4 so that the smallest materialized alpha at the
# default 24 tail terms keeps ||P - E+|| within 1e-6 of 1.
_TAIL = dict(coefficient=0.1, exponent=4.0)


def golden_models():
    """Name -> (model, expected label)."""
    return {
        "e_plus": (
            ProjectionModel(
                p=2.0,
                alpha=TailSpec.none(),
                beta=TailSpec.none(),
                e1=INF,
                e1p=0,
                n=0,
                np=INF,
            ),
            ClassLabel("D3", 0),
        ),
        "d1": (
            ProjectionModel(
                p=2.0,
                alpha=TailSpec.finite([(0.1, 1)]),
                beta=TailSpec.finite([(0.4, 1)]),
                e1=1,
                e1p=2,
                n=INF,
                np=INF,
            ),
            ClassLabel("D1", 5),
        ),
        "d2": (
            ProjectionModel(
                p=2.0,
                alpha=TailSpec.finite([(0.2, 1)]),
                beta=TailSpec.finite([(0.3, 1)]),
                e1=INF,
                e1p=INF,
                n=1,
                np=0,
            ),
            ClassLabel("D2", 3),
        ),
        "d3": (
            ProjectionModel(
                p=2.0,
                alpha=TailSpec.finite([(0.1, 1)]),
                beta=TailSpec.finite([(0.45, 2)]),
                e1=INF,
                e1p=3,
                n=1,
                np=INF,
            ),
            ClassLabel("D3", 2),
        ),
        "d4": (
            ProjectionModel(
                p=2.0,
                alpha=TailSpec.finite([(0.15, 1)]),
                beta=TailSpec.none(),
                e1=2,
                e1p=INF,
                n=INF,
                np=1,
            ),
            ClassLabel("D4", 1),
        ),
        "e1": (
            ProjectionModel(
                p=2.0,
                alpha=TailSpec.finite([(0.2, 1)]),
                beta=TailSpec.none(),
                e1=INF,
                e1p=1,
                n=INF,
                np=INF,
            ),
            ClassLabel("E1"),
        ),
        "e2": (
            ProjectionModel(
                p=2.0,
                alpha=TailSpec.power(**_TAIL),
                beta=TailSpec.none(),
                e1=0,
                e1p=0,
                n=0,
                np=INF,
            ),
            ClassLabel("E2"),
        ),
        "e3": (
            ProjectionModel(
                p=2.0,
                alpha=TailSpec.none(),
                beta=TailSpec.finite([(0.35, 2)]),
                e1=INF,
                e1p=INF,
                n=INF,
                np=0,
            ),
            ClassLabel("E3"),
        ),
        "e4": (
            ProjectionModel(
                p=2.0,
                alpha=TailSpec.none(),
                beta=TailSpec.power(**_TAIL),
                e1=0,
                e1p=INF,
                n=0,
                np=0,
            ),
            ClassLabel("E4"),
        ),
        "e5": (
            ProjectionModel(
                p=2.0,
                alpha=TailSpec.power(**_TAIL),
                beta=TailSpec.power(coefficient=0.2, exponent=4.0),
                e1=0,
                e1p=0,
                n=0,
                np=0,
            ),
            ClassLabel("E5"),
        ),
    }


# Involution P -> 1 - P maps class labels this way.
INVOLUTION_MAP = {
    "D1": "D2",
    "D2": "D1",
    "D3": "D4",
    "D4": "D3",
    "E1": "E3",
    "E3": "E1",
    "E2": "E4",
    "E4": "E2",
    "E5": "E5",
}
