from isgcodes import zoo
from isgcodes.pauli import PauliOperator
from isgcodes.schedule import MeasurementSchedule, parameters, run
from isgcodes.subsystem import (GaugeGroup, bare_distance, bare_logicals, bare_logicals_embed, center_mod_phase,
                                gauge_of_schedule, is_associated_isg, isg_within_gauge, subsystem_k)


def L(s):
    return PauliOperator.from_string(s)


def span_of(ops):
    out = {0}
    for p in ops:
        out |= {v ^ p.vec for v in out}
    return out


def test_bacon_shor_gauge_group():
    g = gauge_of_schedule(zoo.make_bacon_shor())
    assert span_of(g.generators) == span_of([L("XXII"), L("IIXX"), L("ZIZI"), L("IZIZ")])
    assert not g.is_abelian()


def test_single_round_gauge_group_is_that_round():
    s = MeasurementSchedule(3, [[L("ZZI"), L("IZZ")]], period=1)
    g = gauge_of_schedule(s)
    assert g.is_abelian() and span_of(g.generators) == span_of(s.rounds[0])


def test_centres():
    g = gauge_of_schedule(zoo.make_bacon_shor())
    assert span_of(center_mod_phase(g)) == span_of([L("XXXX"), L("ZZZZ")])
    abelian = GaugeGroup(3, (L("ZZI"), L("IZZ")))
    assert span_of(center_mod_phase(abelian)) == span_of(abelian.generators)
    full = GaugeGroup(1, (L("X"), L("Z")))
    assert span_of(center_mod_phase(full)) == {0}


def test_bare_logicals_bacon_shor():
    g = gauge_of_schedule(zoo.make_bacon_shor())
    pairs = bare_logicals(g)
    assert len(pairs) == 1
    x, z = pairs[0]
    b = g.basis()
    assert b.contains(x.vec ^ L("XIXI").vec) or b.contains(x.vec ^ L("ZZII").vec)
    assert bare_distance(g) == 2


def test_stabilizer_code_bare_logicals_are_all_logicals():
    s = zoo.make_422()
    g = gauge_of_schedule(s)
    assert subsystem_k(g) == 2 == parameters(s).k


def test_association():
    g = gauge_of_schedule(zoo.make_bacon_shor())
    assert is_associated_isg(zoo.make_bacon_shor(), g).associated
    rep = is_associated_isg(zoo.make_bacon_shor_singletons(), g)
    assert not rep.associated and rep.same_gauge_group and not rep.center_in_isg
    s = zoo.make_422()
    assert is_associated_isg(s, gauge_of_schedule(s)).associated


def test_bounds_and_embedding():
    s = zoo.make_bacon_shor()
    g = gauge_of_schedule(s)
    rep = run(s, 7)
    params = parameters(s, report=rep)
    assert params.k >= subsystem_k(g)
    assert params.d <= bare_distance(g)
    assert isg_within_gauge(rep, g) and bare_logicals_embed(rep, g)
