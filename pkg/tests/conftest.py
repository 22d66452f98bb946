import pytest

from jetfact.jetalg import AlgebraPresentation
from jetfact.vertex import VertexAlgebra


@pytest.fixture(scope="session")
def free_x():
    return AlgebraPresentation(["x"], [], 6)


@pytest.fixture(scope="session")
def free_xy():
    return AlgebraPresentation(["x", "y"], [], 6)


@pytest.fixture(scope="session")
def quot_xy():
    return AlgebraPresentation(["x", "y"], ["x*y"], 6)


@pytest.fixture(scope="session")
def quot_x2():
    return AlgebraPresentation(["x"], ["x*x"], 6)


@pytest.fixture(scope="session")
def vx(free_x):
    return VertexAlgebra(free_x)


@pytest.fixture(scope="session")
def vxy(quot_xy):
    return VertexAlgebra(quot_xy)
