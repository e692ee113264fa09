import itertools

from hypothesis import given, strategies as st

from isgcodes import gf2

rows_st = st.lists(st.integers(0, 63), max_size=7)


def brute_span(rows):
    out = {0}
    for r in rows:
        out |= {v ^ r for v in out}
    return out


@given(rows_st)
def test_rank_matches_span_size(rows):
    assert 2 ** gf2.rank(rows) == len(brute_span(rows))


@given(rows_st, st.integers(0, 63))
def test_solve_reproduces_vector(rows, vec):
    sel = gf2.solve(rows, vec)
    assert (sel is not None) == (vec in brute_span(rows))
    if sel is not None:
        acc = 0
        for i in gf2.bits(sel):
            acc ^= rows[i]
        assert acc == vec


@given(rows_st)
def test_left_kernel_combinations_vanish(rows):
    ker = gf2.left_kernel(rows)
    assert len(ker) == len(rows) - gf2.rank(rows)
    for c in ker:
        acc = 0
        for i in gf2.bits(c):
            acc ^= rows[i]
        assert acc == 0


@given(st.lists(st.integers(0, 31), max_size=6))
def test_right_kernel_is_full_solution_space(rows):
    ker = gf2.right_kernel(rows, 5)
    sols = {v for v in range(32) if all(gf2.parity(r & v) == 0 for r in rows)}
    assert brute_span(ker) == sols
    assert gf2.rank(ker) == len(ker)


def test_same_span_ignores_presentation():
    assert gf2.same_span([0b011, 0b110], [0b101, 0b011])
    assert not gf2.same_span([0b011], [0b001])


def test_basis_express_tracks_combination():
    b = gf2.Basis()
    vs = [0b1100, 0b0110, 0b0011]
    for i, v in enumerate(vs):
        b.add(v, 1 << i)
    combo = b.express(0b1010)
    acc = 0
    for i in gf2.bits(combo):
        acc ^= vs[i]
    assert acc == 0b1010
    assert b.express(0b0001) is None
    assert list(itertools.islice(gf2.bits(0b10110), 5)) == [1, 2, 4]
