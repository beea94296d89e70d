import pytest

from corings import GF, Algebra, GradedData, cyclic_group, group_algebra, regular_gset

F2 = GF(2)
F3 = GF(3)
F5 = GF(5)


@pytest.fixture
def f2():
    return F2


@pytest.fixture
def f3():
    return F3


def dual_numbers(field):
    """F[t]/(t^2): basis {1, t}, t^2 = 0."""
    return Algebra(field, [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], [1, 0],
                   names=["1", "t"])


def kz2_graded(field):
    """k[Z_2] graded by Z_2 acting regularly on X = Z_2."""
    G = cyclic_group(2)
    A, degrees = group_algebra(G, field)
    return GradedData(G, regular_gset(G), A, degrees)


def s3_table():
    """Symmetric group on 3 letters via permutation composition."""
    import itertools
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}

    def compose(p, q):
        return tuple(p[q[i]] for i in range(3))

    return [[index[compose(p, q)] for q in perms] for p in perms]
