"""Built-in example documents.

The 2-dimensional family covers the interesting phenomena: an ordinary
projective-plane fan, the degree-two star fan (five rays winding twice
around the origin), a folded fan with one clockwise pair, and the
pre-complete-but-not-complete overlap example.  The polytope fixtures add
support numbers; `p112` is the singular weighted triangle whose quotient
groups have order two.
"""

from .document import serialize
from .fan import MultiFan
from .polytope import MultiPolytope


def _fan(dim, rays, cones, extra=()):
    return MultiFan(dim, rays, [(s, wp, wm) for s, (wp, wm) in cones], extra_faces=extra)


def _build_p2():
    return _fan(2, [(1, 0), (0, 1), (-1, -1)],
                [({1, 2}, (1, 0)), ({1, 3}, (1, 0)), ({2, 3}, (1, 0))])


def _build_star():
    return _fan(2, [(1, 0), (-2, 1), (1, -1), (-1, 2), (0, -1)],
                [({1, 2}, (1, 0)), ({2, 3}, (1, 0)), ({3, 4}, (1, 0)),
                 ({4, 5}, (1, 0)), ({1, 5}, (1, 0))])


def _build_folded():
    return _fan(2, [(1, 0), (0, 1), (1, 1), (-1, 1), (0, -1)],
                [({1, 2}, (1, 0)), ({2, 3}, (0, 1)), ({3, 4}, (1, 0)),
                 ({4, 5}, (1, 0)), ({1, 5}, (1, 0))])


def _build_ex_overlap():
    return _fan(2, [(1, 0), (0, 1), (-1, -1), (1, 0), (0, 1)],
                [({1, 2}, (2, 0)), ({2, 3}, (1, 0)), ({1, 3}, (1, 0)),
                 ({4, 5}, (0, 1))])


def _build_square_fan():
    return _fan(2, [(1, 0), (0, 1), (-1, 0), (0, -1)],
                [({1, 2}, (1, 0)), ({2, 3}, (1, 0)), ({3, 4}, (1, 0)),
                 ({1, 4}, (1, 0))])


def _build_p112_fan():
    return _fan(2, [(1, 0), (0, 1), (-1, -2)],
                [({1, 2}, (1, 0)), ({1, 3}, (1, 0)), ({2, 3}, (1, 0))])


def _build_cube_fan():
    rays = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 0, 0), (0, -1, 0), (0, 0, -1)]
    cones = []
    for a in (1, 4):
        for b in (2, 5):
            for c in (3, 6):
                cones.append(({a, b, c}, (1, 0)))
    return _fan(3, rays, cones)


def _build_segment_fan():
    return _fan(1, [(1,), (-1,)], [({1}, (1, 0)), ({2}, (1, 0))])


_BUILDERS = {
    "p2": _build_p2,
    "p2-triangle": lambda: MultiPolytope(_build_p2(), [1, 1, 1]),
    "star": _build_star,
    "star-polytope": lambda: MultiPolytope(_build_star(), [1, 1, 1, 1, 1]),
    "folded": _build_folded,
    "ex24": _build_ex_overlap,
    "square": lambda: MultiPolytope(_build_square_fan(), [1, 1, 0, 0]),
    "p112": lambda: MultiPolytope(_build_p112_fan(), [2, 1, 0]),
    "cube": lambda: MultiPolytope(_build_cube_fan(), [1, 1, 1, 0, 0, 0]),
    "segment": lambda: MultiPolytope(_build_segment_fan(), [3, 0]),
}


class UnknownExample(ValueError):
    pass


def example_names():
    return sorted(_BUILDERS)


def example(name):
    """The named built-in object (MultiFan or MultiPolytope)."""
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise UnknownExample(
            f"unknown example {name!r}; available: {', '.join(example_names())}") from None


def example_document(name):
    """Canonical document text of the named example."""
    return serialize(example(name))
