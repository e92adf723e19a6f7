import math

import numpy as np
import pytest

from quadprop import make_preset, solve_characteristic

PRESET_ARGS = {
    "free": (),
    "constant_force": (1.0,),
    "sho": (1.0,),
    "modified_oscillator": (),
}

# end of the interval the numeric solve uses per preset (the modified
# oscillator and sho windows stop before pi/2: mu' zero resp. tan-pole)
SOLVE_T = {
    "free": 2.6,
    "constant_force": 2.6,
    "sho": 1.55,
    "modified_oscillator": 1.55,
}


def preset_times(preset, n=5, lo=0.15):
    hi = {"free": 2.0, "constant_force": 2.0,
          "sho": 0.87 * math.pi / 2, "modified_oscillator": 0.87 * math.pi / 2}[preset]
    return np.linspace(lo, hi, n)


@pytest.fixture(scope="session")
def solved():
    """(CoefficientSet, CharacteristicSolution) per preset, solved tightly."""
    out = {}
    for preset, args in PRESET_ARGS.items():
        cs = make_preset(preset, args)
        out[preset] = (cs, solve_characteristic(cs, SOLVE_T[preset], 1e-12))
    return out
