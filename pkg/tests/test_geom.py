"""Exactness and bookkeeping of the planar chain engine."""

from fractions import Fraction

import pytest

from twistcheck.geom import (
    Chain,
    GeometryError,
    Layout,
    crossing_events,
    pt,
    signed_crossings,
    validate_chain,
    validate_system,
)

F = Fraction


def open_chain(*runs, jumps=()):
    return Chain(runs=[[pt(x, y) for x, y in run] for run in runs],
                 jumps=list(jumps), closed=False)


def closed_chain(*runs, jumps=()):
    return Chain(runs=[[pt(x, y) for x, y in run] for run in runs],
                 jumps=list(jumps), closed=True)


def test_antipode_and_copy_resolution():
    lay = Layout(3)
    p = pt(F(1, 4), F(1, 8))
    assert lay.on_boundary(0, 0, p)
    assert lay.antipode(0, 0, p) == pt(F(-1, 4), F(-1, 8))
    q = pt(F(11, 4), 0)
    assert lay.copy_for(0, q) == 1
    assert lay.copy_for(0, pt(F(1, 2), 0)) is None
    assert lay.core_key(0, 0, p) == lay.core_key(0, 0, lay.antipode(0, 0, p))


def test_crossing_sign_convention():
    # eastward across a northward side-marked arc counts -1
    lay = Layout(5)
    going_north = open_chain([(2.5, -1), (2.5, 1)])
    eastward = open_chain([(2, F(1, 3)), (3, F(1, 3))])
    assert signed_crossings(eastward, going_north, lay) == -1
    westward = open_chain([(3, F(1, 3)), (2, F(1, 3))])
    assert signed_crossings(westward, going_north, lay) == 1


def test_marker_flips_after_wall_passage():
    lay = Layout(5)
    through = open_chain([(1, F(-13, 10)), (1, F(-1, 4))],
                         [(1, F(1, 4)), (1, F(13, 10))],
                         jumps=[1])
    validate_chain(through, lay)
    below = open_chain([(F(1, 2), -1), (F(3, 2), -1)])
    above = open_chain([(F(1, 2), 1), (F(3, 2), 1)])
    assert signed_crossings(below, through, lay) == -1
    assert signed_crossings(above, through, lay) == 1


def test_wrap_around_crossing():
    lay = Layout(3)
    x = open_chain([(F(26, 10), F(1, 2)), (F(34, 10), F(1, 2))])
    c = open_chain([(F(2, 10), 0), (F(2, 10), 1)])
    events = crossing_events(x, c, lay)
    assert len(events) == 1
    assert events[0].point == pt(F(32, 10), F(1, 2))
    assert events[0].sign == -1


def test_valid_wall_passage_roundtrip():
    lay = Layout(5)
    box = closed_chain([(F(7, 4), F(1, 100)), (F(169, 100), F(1, 100)),
                        (F(169, 100), F(31, 100)), (F(231, 100), F(31, 100)),
                        (F(231, 100), F(-1, 100)), (F(9, 4), F(-1, 100))],
                       jumps=[2])
    validate_chain(box, lay)


def test_bad_antipode_rejected():
    lay = Layout(5)
    bad = closed_chain([(F(7, 4), F(1, 100)), (F(9, 4), F(1, 100))], jumps=[2])
    with pytest.raises(GeometryError):
        validate_chain(bad, lay)


def test_corner_jump_rejected():
    lay = Layout(5)
    bad = closed_chain([(F(7, 4), F(1, 4)), (F(9, 4), F(-1, 4))], jumps=[2])
    with pytest.raises(GeometryError):
        validate_chain(bad, lay)


def test_undeclared_crossing_rejected():
    lay = Layout(5)
    straight_through = open_chain([(F(3, 2), 0), (F(5, 2), 0)])
    with pytest.raises(GeometryError):
        validate_chain(straight_through, lay)


def test_undeclared_touch_rejected():
    lay = Layout(5)
    poke = open_chain([(F(3, 2), 0), (F(7, 4), 0)])
    with pytest.raises(GeometryError):
        validate_chain(poke, lay)


def test_doubling_back_rejected():
    lay = Layout(3)
    fold = open_chain([(0, 1), (1, 1), (F(1, 2), 1)])
    with pytest.raises(GeometryError):
        validate_chain(fold, lay)


def test_closed_polygon_validates():
    lay = Layout(3)
    ring = closed_chain([(F(11, 20), F(9, 20)), (F(49, 20), F(9, 20)),
                         (F(49, 20), F(-9, 20)), (F(11, 20), F(-9, 20)),
                         (F(11, 20), F(9, 20))])
    validate_chain(ring, lay)


def test_one_sided_marked_chain_rejected():
    lay = Layout(5)
    box = closed_chain([(F(7, 4), F(1, 100)), (F(169, 100), F(1, 100)),
                        (F(169, 100), F(31, 100)), (F(231, 100), F(31, 100)),
                        (F(231, 100), F(-1, 100)), (F(9, 4), F(-1, 100))],
                       jumps=[2])
    probe = open_chain([(2, F(1, 2)), (2, 2)])
    with pytest.raises(GeometryError):
        crossing_events(probe, box, lay)


def test_touching_chains_rejected():
    lay = Layout(3)
    x = open_chain([(0, 1), (2, 1)])
    c = open_chain([(1, 1), (1, 2)])
    with pytest.raises(GeometryError):
        crossing_events(x, c, lay)
    with pytest.raises(GeometryError):
        validate_system({"x": x, "c": c}, lay)


def test_collinear_overlap_rejected():
    lay = Layout(3)
    x = open_chain([(0, 1), (2, 1)])
    c = open_chain([(1, 1), (3, 1)])
    with pytest.raises(GeometryError):
        crossing_events(x, c, lay)


def test_coincident_crossings_rejected():
    lay = Layout(3)
    x = open_chain([(-2, F(1, 2)), (3, F(1, 2))])
    c = open_chain([(-1, -1), (1, 2), (1, -1), (-1, 2)])
    with pytest.raises(GeometryError):
        crossing_events(x, c, lay)


def test_shared_wall_point_rejected():
    lay = Layout(5)

    def vertical(shift):
        return open_chain([(1 + shift, F(-13, 10)), (1 + shift, F(-1, 4))],
                          [(1 - shift, F(1, 4)), (1 - shift, F(13, 10))],
                          jumps=[1])

    a = vertical(F(0))
    b = vertical(F(0))
    with pytest.raises(GeometryError):
        validate_system({"a": a, "b": b}, lay)
    validate_system({"a": a, "c": vertical(F(1, 10))}, lay)


def test_reversal_negates_directed_count():
    lay = Layout(5)
    c = open_chain([(F(5, 2), -1), (F(5, 2), 1)])
    x = open_chain([(2, F(1, 3)), (3, F(1, 3)), (3, F(3, 2)), (2, F(3, 2)),
                    (2, F(2, 3)), (3, F(2, 3))])
    forward = signed_crossings(x, c, lay)
    backward = signed_crossings(x.reversed_chain(), c, lay)
    assert forward == -backward == -2


def test_reversed_closed_chain_still_glues():
    lay = Layout(5)
    box = closed_chain([(F(7, 4), F(1, 100)), (F(169, 100), F(1, 100)),
                        (F(169, 100), F(31, 100)), (F(231, 100), F(31, 100)),
                        (F(231, 100), F(-1, 100)), (F(9, 4), F(-1, 100))],
                       jumps=[2])
    validate_chain(box.reversed_chain(), lay)


def test_events_ordered_along_chain():
    lay = Layout(7)
    x = open_chain([(0, F(1, 2)), (4, F(1, 2))])
    posts = open_chain([(3, F(3, 10)), (3, F(3, 4)), (1, F(3, 4)), (1, F(3, 10))])
    events = crossing_events(x, posts, lay)
    assert [e.point[0] for e in events] == [1, 3]
    assert [e.sign for e in events] == [1, -1]
