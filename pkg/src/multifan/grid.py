"""Rational-grid sampling of the Duistermaat-Heckman function (2-d only).

Produces the rows behind the `grid` report: one sample per grid point of
the support box at a rational step.  Points landing on a hyperplane are
skipped under exact evaluation and tagged under the plus/minus shifts.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .ehrhart import support_box
from .fan import InvalidFan
from .polytope import SHIFT_EXACT, dh_eval_framed, dh_frames


@dataclass(frozen=True)
class DHSample:
    point: tuple
    shift: str
    value: int


def grid_samples(poly, step, shift=SHIFT_EXACT, rng=None):
    """DH samples over the support box on the grid step * Z^2."""
    if poly.dim != 2:
        raise InvalidFan("grid sampling is only defined in dimension 2")
    step = Fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    lows, highs = support_box(poly)
    frames = dh_frames(poly, rng=rng)
    samples = []
    kx0, kx1 = math.ceil(lows[0] / step), math.floor(highs[0] / step)
    ky0, ky1 = math.ceil(lows[1] / step), math.floor(highs[1] / step)
    for kx in range(kx0, kx1 + 1):
        for ky in range(ky0, ky1 + 1):
            u = (kx * step, ky * step)
            on_wall = any(b == 0 for b in poly.gaps(u))
            if on_wall and shift == SHIFT_EXACT:
                continue
            samples.append(DHSample(point=u, shift=shift,
                                    value=dh_eval_framed(poly, frames, u, shift)))
    return samples


def write_csv(samples, stream):
    stream.write("x,y,dh\n")
    for s in samples:
        stream.write(f"{s.point[0]},{s.point[1]},{s.value}\n")
