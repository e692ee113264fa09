import pytest

from isgcodes import gf2, zoo
from isgcodes.pauli import PauliOperator
from isgcodes.schedule import run


def tile_text():
    with open(zoo.default_tile_path()) as fh:
        return fh.read()


def test_double_hexagon_round_zero():
    s = zoo.make_double_hexagon()
    got = {s.show(p) for p in s.rounds[0]}
    assert got == {"X(0,0)", "X(0,1)", "X(1,0) X(2,0)", "X(1,1) X(2,1)", "X(3,0) X(3,1)",
                   "X(4,0) X(5,0)", "X(4,1) X(5,1)"}
    assert all(len(r) == 7 for r in s.rounds)
    assert all(sorted(p.weight() for p in r) == [1, 1, 2, 2, 2, 2, 2] for r in s.rounds)


def test_repetition_isg():
    rep = run(zoo.make_repetition(), 3)
    assert all(t.paulis() == [PauliOperator.from_string("ZZ")] for t in rep.tableaux)


def test_colour_code_faces():
    lat = zoo.honeycomb_torus(3, 3)
    assert lat.n == 18 and all(len(set(f)) == 6 for f in lat.faces)
    # every vertex touches three faces of three different colours
    for v in range(lat.n):
        cols = [lat.colours[i] for i, f in enumerate(lat.faces) if v in f]
        assert sorted(cols) == [0, 1, 2]
    s = zoo.make_colour_code_torus(3, 3)
    assert gf2.rank(p.vec for p in s.rounds[0]) == 9 - 2
    rep = run(s, 3)
    assert rep.ranks[-1] == 2 * 9 - 4 and rep.ks[-1] == 4


def test_colour_code_rejects_bad_torus():
    with pytest.raises(ValueError, match="multiples of 3"):
        zoo.honeycomb_torus(3, 4)


def test_tile_relations_hold():
    tile = zoo.load_floquet_tile()
    assert tile.period == 13
    for x, y in tile.lattice.representatives():
        for t in range(13):
            here = tile.measurement(x, y, t)
            assert tile.measurement(x + 3, y + 1, t) == here
            assert tile.measurement(x - 2, y + 8, t) == here
            assert tile.measurement(x - 1, y - 3, t + 1) == here
            b, _ = tile.measurement(x, y + 1, t - 2)
            assert b != here[0]


def _mutate(text, old, new):
    assert old in text
    return text.replace(old, new, 1)


def test_tile_validator_rejects_flipped_basis():
    text = tile_text()
    line = next(l for l in text.splitlines() if l.startswith("t=0") and "partner" not in l)
    flipped = line.replace(" X", " Z") if " X" in line else line.replace(" Z", " X")
    with pytest.raises(zoo.TileError):
        zoo.parse_tile(_mutate(text, line, flipped))


def test_tile_validator_rejects_bad_header_and_partner():
    text = tile_text()
    with pytest.raises(zoo.TileError, match="period"):
        zoo.parse_tile(_mutate(text, "period=13", "period=12"))
    line = next(l for l in text.splitlines() if "partner" in l)
    broken = line.split(" partner")[0]
    with pytest.raises(zoo.TileError):
        zoo.parse_tile(_mutate(text, line, broken))
    with pytest.raises(zoo.TileError, match="line"):
        zoo.parse_tile(text + "\nt=0 nonsense\n")


def test_tile_env_var(tmp_path, monkeypatch):
    p = tmp_path / "alt.tile"
    p.write_text(tile_text())
    monkeypatch.setenv(zoo.TILE_ENV, str(p))
    assert zoo.default_tile_path() == str(p)
    assert zoo.load_floquet_tile().period == 13


def test_floquet_torus_structure():
    s = zoo.make_floquetified_colour_code_torus(zoo.load_floquet_tile(), 3, 1)
    assert s.n == 78 and s.period == 13
    assert all(p.weight() <= 2 for r in s.rounds for p in r)
    # each qubit is measured exactly once per round
    for r in s.rounds:
        assert sum(p.weight() for p in r) == s.n


def test_by_name():
    assert zoo.by_name("422").n == 4
    with pytest.raises(KeyError):
        zoo.by_name("nope")
    assert set(zoo.NAMES) >= {"bacon-shor", "double-hexagon", "floquet-colour-code"}
