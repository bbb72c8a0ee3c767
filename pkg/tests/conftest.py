import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from meadowenum.build import with_unique_homs
from meadowenum.lattices import lattice_from_covers
from meadowenum.rings import cyclic_ring, product_of, product_ring, zero_ring

# filled by test_acceptance; printed once at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def diamond():
    # 0 bottom, 1 and 2 in the middle, 3 top
    return lattice_from_covers(4, [(3, 1), (3, 2), (1, 0), (2, 0)])


@pytest.fixture
def twelve_element_meadow():
    """Z6 over Z3 and Z2 over the zero ring, joined by the two projections."""
    return with_unique_homs(diamond(), [zero_ring(), cyclic_ring(3), cyclic_ring(2), cyclic_ring(6)])


def first_coordinate_diamond():
    """Z2xZ2 over two copies of Z2, both edges taking the first coordinate."""
    z2 = cyclic_ring(2)
    top = product_ring(z2, z2)
    first = (0, 0, 1, 1)  # (r, s) has index 2r + s
    return with_unique_homs(diamond(), [zero_ring(), z2, z2, top], {(3, 1): first, (3, 2): first})


@pytest.fixture
def non_common_diamond():
    return first_coordinate_diamond()


def order_41_structure():
    """Z2xZ3xZ5 over Z2, Z3 and Z5 over the zero ring."""
    L = lattice_from_covers(5, [(4, 1), (4, 2), (4, 3), (1, 0), (2, 0), (3, 0)])
    top = product_of([cyclic_ring(2), cyclic_ring(3), cyclic_ring(5)])
    return with_unique_homs(L, [zero_ring(), cyclic_ring(2), cyclic_ring(3), cyclic_ring(5), top])


@pytest.fixture
def order_41():
    return order_41_structure()


def cube_lattice():
    """The 8-element lattice drawn as top, three middles, three lowers, bottom."""
    return lattice_from_covers(8, [(7, 1), (7, 2), (7, 3), (1, 4), (1, 5), (2, 4), (2, 6),
                                   (3, 5), (3, 6), (4, 0), (5, 0), (6, 0)])
