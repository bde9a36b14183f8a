from __future__ import annotations

import pytest

from qtoric.models import hirzebruch, product_of_lines, projective_space


@pytest.fixture
def p1():
    return projective_space(1)


@pytest.fixture
def p2():
    return projective_space(2)


@pytest.fixture
def f1():
    return hirzebruch()


@pytest.fixture
def p1xp1():
    return product_of_lines()


@pytest.fixture
def all_models(p1, p2, f1, p1xp1):
    return [p1, p2, f1, p1xp1]
