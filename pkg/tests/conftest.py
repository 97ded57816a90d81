import itertools
import json
from pathlib import Path

import pytest

from fractalcubes import IntersectionProblem, make_digit_set

DATA = Path(__file__).parent / "data"

EX1_D1 = [(0, 0), (2, 0), (4, 0), (2, 1), (4, 1), (0, 2), (1, 2), (3, 2), (2, 3), (4, 3),
          (0, 4), (1, 4), (3, 4)]
EX1_D2 = [(1, 1), (2, 2), (3, 3), (4, 4), (5, 5), (3, 1), (5, 1), (4, 2), (1, 3), (5, 3),
          (2, 4), (1, 5), (3, 5)]
CARPET = [(x, y) for x in range(3) for y in range(3) if (x, y) != (1, 1)]


def full_cube(k, n):
    return make_digit_set(k, n, list(itertools.product(range(n), repeat=k)))


@pytest.fixture
def ex1():
    return IntersectionProblem(make_digit_set(2, 6, EX1_D1), make_digit_set(2, 6, EX1_D2))


@pytest.fixture
def carpet():
    return make_digit_set(2, 3, CARPET)


@pytest.fixture
def carpet_self(carpet):
    return IntersectionProblem(carpet, carpet)


@pytest.fixture
def countable():
    return IntersectionProblem(make_digit_set(1, 3, [1, 2]), make_digit_set(1, 3, [0, 2]))


def load_json(name):
    return json.loads((DATA / name).read_text())
