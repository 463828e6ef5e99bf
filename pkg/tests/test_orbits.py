import pytest

from hurwitz_dissect.corpus import annulus_chart, disk_chart, figure2_chart, torus_chart
from hurwitz_dissect.mutation import Dissection, braid_act
from hurwitz_dissect.orbits import (
    Inconclusive,
    Path,
    SeparationError,
    Witness,
    deck_invariant,
    explore,
    genus0_transitivity_check,
    hurwitz_class,
    separate,
    twisted,
    valid_dissections,
)
from hurwitz_dissect.perms import hurwitz_orbit


def test_two_marked_disk_orbit_is_the_seed():
    rep = explore(Dissection.reference(disk_chart(2)), max_depth=4)
    assert len(rep) == 1 and rep.complete and rep.depth == 0


def test_three_marked_disk_orbit_projects_into_one_hurwitz_orbit():
    seed = Dissection.reference(disk_chart(3))
    rep = explore(seed, max_depth=4)
    orbit = {str(h) for h in hurwitz_orbit(seed.hurwitz()).systems}
    assert all(v["hurwitz"] in orbit for v in rep.invariant_log.values())
    assert rep.complete and rep.replay_ok()


def test_figure2_states_all_deck_invariant():
    rep = explore(Dissection.reference(figure2_chart()), max_depth=4)
    assert all(v["deck_invariant"] for v in rep.invariant_log.values())
    assert not rep.complete
    assert rep.replay_ok()


def test_limits():
    rep = explore(Dissection.reference(figure2_chart()), max_depth=10, max_states=50)
    assert len(rep) == 50 and not rep.complete
    with pytest.raises(ValueError):
        explore(Dissection.reference(figure2_chart()), max_states=0)


def test_parallel_exploration_is_deterministic():
    seed = Dissection.reference(torus_chart())
    a = explore(seed, max_depth=3, workers=1)
    b = explore(seed, max_depth=3, workers=2)
    assert list(a.states) == list(b.states)
    assert a.words == b.words


def test_planted_path_is_found_and_replays():
    d1 = Dissection.reference(torus_chart())
    d2 = braid_act(d1, (2, -1))
    cert = separate(d1, d2)
    assert isinstance(cert, Path)
    assert braid_act(d1, cert.word) == d2
    assert len(cert.word) == 2


def test_product_is_fixed_by_the_chart():
    # the boundary cycles of the chart pin down the product permutation, so every valid
    # dissection on one chart projects into a single product class
    from hurwitz_dissect.corpus import corpus_charts
    from hurwitz_dissect.perms import product

    for ch in corpus_charts().values():
        seed = Dissection.reference(ch)
        for d in valid_dissections(ch, 2 if ch.n > 3 else 3):
            assert product(d.hurwitz()) == product(seed.hurwitz())
            assert hurwitz_class(d) == hurwitz_class(seed)


def test_hurwitz_class_witness_is_checked_first(monkeypatch):
    import hurwitz_dissect.orbits as orbits

    base = Dissection.reference(figure2_chart())
    tw = twisted(base, (1,))
    labels = {base.key(): "A", tw.key(): "B"}
    monkeypatch.setattr(orbits, "hurwitz_class", lambda d: labels[d.key()])
    assert separate(base, tw) == Witness("hurwitz_class", "A", "B")


def test_deck_invariance_witness_on_figure2():
    base = Dissection.reference(figure2_chart())
    tw = twisted(base, (1,))
    assert deck_invariant(base) is True and deck_invariant(tw) is False
    assert base.hurwitz() == tw.hurwitz()
    cert = separate(base, tw)
    assert cert == Witness("deck_invariance", True, False)


def test_inconclusive_when_budget_runs_out():
    d1 = Dissection.reference(torus_chart())
    d2 = twisted(d1, (1, 2))
    assert isinstance(separate(d1, d2, budget=10), Inconclusive)


def test_different_charts_refused():
    with pytest.raises(SeparationError):
        separate(Dissection.reference(annulus_chart()), Dissection.reference(torus_chart()))


def test_boundary_twists_realised_by_braids():
    ann = Dissection.reference(annulus_chart())
    assert twisted(ann, (1,)) in (braid_act(ann, (1,)), braid_act(ann, (-1,)))
    tor = Dissection.reference(torus_chart())
    assert twisted(tor, (1, 2)) == braid_act(tor, (1, 2) * 6)


def test_genus0_small():
    for m, expected in [(2, 1), (3, 3), (4, 16)]:
        rep = genus0_transitivity_check(disk_chart(m), bound=4)
        assert rep.ok and rep.enumerated == expected == rep.hurwitz_orbit_size
