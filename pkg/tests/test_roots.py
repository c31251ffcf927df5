import pytest

from chevjordan.roots import CartanError, cartan_matrix, height, root_system

COUNTS = {"G2": 6, "F4": 24, "E6": 36, "E7": 63, "E8": 120, "A4": 10, "B4": 16, "D5": 20}
HIGHEST = {
    "G2": (3, 2),
    "F4": (2, 3, 4, 2),
    "E6": (1, 2, 2, 3, 2, 1),
    "E7": (2, 2, 3, 4, 3, 2, 1),
    "E8": (2, 3, 4, 6, 5, 4, 3, 2),
}


@pytest.mark.parametrize("name,n", COUNTS.items())
def test_positive_root_counts(name, n):
    assert root_system(name).n_positive == n


@pytest.mark.parametrize("name,top", HIGHEST.items())
def test_highest_root(name, top):
    assert root_system(name).highest_root == top


def test_lie_dims():
    assert [root_system(g).lie_dim for g in ("G2", "F4", "E6", "E7", "E8")] == [14, 52, 78, 133, 248]


def test_bourbaki_conventions():
    g2 = cartan_matrix("G2")
    # a1 short: <a2, a1^vee> = -3
    assert g2.entries[1][0] == -3
    f4 = cartan_matrix("F4")
    assert f4.entries[1][2] == -2
    e8 = cartan_matrix("E8")
    assert e8.entries[1][3] == -1 and e8.entries[1][2] == 0


def test_root_strings_close():
    rs = root_system("F4")
    for a in rs.positive_roots:
        assert height(a) >= 1
        assert rs.is_root(a) and rs.is_root(tuple(-x for x in a))


@pytest.mark.parametrize("bad", ["E9", "G3", "X2", "B1"])
def test_bad_types(bad):
    with pytest.raises(CartanError):
        cartan_matrix(bad)
