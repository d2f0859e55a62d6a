import json

import pytest

from toricarr.arrangement import parse_spec, Window, lift_to_window
from toricarr.cells import enumerate_faces, quotient_faces
from toricarr.salvetti import toric_salvetti
from toricarr.pi1 import build_context

CATALOG = {
    "one_point": {"rank": 1, "hypersurfaces": [{"chi": [1], "q": "0"}]},
    "two_points": {"rank": 1, "hypersurfaces": [{"chi": [1], "q": "0"},
                                                {"chi": [1], "q": "1/2"}]},
    "three_points": {"rank": 1, "hypersurfaces": [{"chi": [1], "q": "0"},
                                                  {"chi": [1], "q": "1/2"},
                                                  {"chi": [1], "q": "1/4"}]},
    "diagonals": {"rank": 2, "hypersurfaces": [{"chi": [1, 1], "q": "0"},
                                          {"chi": [1, -1], "q": "0"}]},
    "grid": {"rank": 2, "hypersurfaces": [{"chi": [1, 0], "q": "0"},
                                          {"chi": [1, 0], "q": "1/2"},
                                          {"chi": [0, 1], "q": "0"},
                                          {"chi": [0, 1], "q": "1/2"}]},
    "coord3": {"rank": 3, "hypersurfaces": [{"chi": [1, 0, 0], "q": "0"},
                                            {"chi": [0, 1, 0], "q": "0"},
                                            {"chi": [0, 0, 1], "q": "0"}]},
}


def catalog_spec(name):
    return parse_spec(json.dumps(CATALOG[name]))


class Pipeline:
    """Lazily built computation stages for one arrangement and window."""

    def __init__(self, name, k=1):
        self.name = name
        self.k = k
        self.spec = catalog_spec(name)
        self.window = Window.standard(self.spec.rank, k)
        self._lifted = None
        self._fc = None
        self._zeta = None
        self._ctx = None

    @property
    def lifted(self):
        if self._lifted is None:
            self._lifted = enumerate_faces(
                lift_to_window(self.spec, self.window), self.window)
        return self._lifted

    @property
    def fc(self):
        if self._fc is None:
            self._fc = quotient_faces(self.lifted)
        return self._fc

    @property
    def zeta(self):
        if self._zeta is None:
            self._zeta = toric_salvetti(self.lifted, self.fc)
        return self._zeta

    @property
    def ctx(self):
        if self._ctx is None:
            self._ctx = build_context(self.spec, self.lifted, self.fc)
        return self._ctx


_cache = {}


def pipeline(name, k=1):
    key = (name, k)
    if key not in _cache:
        _cache[key] = Pipeline(name, k)
    return _cache[key]


@pytest.fixture(scope="session")
def catalog():
    return pipeline
