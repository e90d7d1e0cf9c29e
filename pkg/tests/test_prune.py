import itertools
import random

from ffreach import (
    Instance,
    PetriNet,
    PruneVerdict,
    Rel,
    Strategy,
    TargetSpec,
    Transition,
    desugar_init,
    directed_search,
    make_heuristic,
    prune_instance,
    sign_analysis,
)
from oracles import enumerate_reachable, random_bounded_instance


def self_loop_net():
    places = ["a", "b"]
    return PetriNet(places, [Transition.from_maps("t", places, consume={"a": 1}, produce={"a": 1})])


class TestSignAnalysis:
    def test_empty_guard_seeds_the_fixpoint(self, n1):
        assert sign_analysis(n1, set()) == {0, 1}

    def test_unproducible_place_stays_unmarked(self):
        net = self_loop_net()
        assert sign_analysis(net, {0}) == {0}

    def test_full_set_is_a_fixpoint(self, n1):
        assert sign_analysis(n1, {0, 1}) == {0, 1}

    def test_chained_propagation(self, n2):
        assert sign_analysis(n2, set()) == {0, 1, 2}

    def test_order_independence(self):
        rng = random.Random(4242)
        for _ in range(30):
            inst = random_bounded_instance(rng)
            net = inst.net
            marked = sign_analysis(net, {p for p in range(net.num_places) if inst.init[p] > 0})
            order = list(range(net.num_transitions))
            rng.shuffle(order)
            permuted = PetriNet(net.places, [net.transitions[t] for t in order], name=net.name)
            permuted_marked = sign_analysis(
                permuted, {p for p in range(net.num_places) if inst.init[p] > 0}
            )
            assert marked == permuted_marked


class TestPruneInstance:
    def test_fully_markable_net_unchanged(self, n1_instance):
        result = prune_instance(n1_instance)
        assert result.verdict is PruneVerdict.PRUNED
        assert result.pruned_instance == n1_instance
        assert result.kept_places == {0: 0, 1: 1}
        assert result.kept_transitions == {0: 0, 1: 1, 2: 2}

    def test_target_on_dead_place_settles_instance(self):
        net = self_loop_net()
        inst = Instance(net, (1, 0), frozenset(), TargetSpec(((Rel.GEQ, 0), (Rel.GEQ, 1)))).validate()
        assert prune_instance(inst).verdict is PruneVerdict.IMMEDIATELY_UNREACHABLE

    def test_vacuous_constraint_dropped(self):
        net = self_loop_net()
        inst = Instance(net, (1, 0), frozenset(), TargetSpec(((Rel.GEQ, 1), (Rel.EQ, 0)))).validate()
        result = prune_instance(inst)
        assert result.verdict is PruneVerdict.PRUNED
        pruned = result.pruned_instance
        assert pruned.net.num_places == 1
        assert pruned.net.num_transitions == 1
        assert pruned.target.constraints == ((Rel.GEQ, 1),)

    def test_transitions_needing_dead_places_removed(self):
        places = ["a", "b"]
        net = PetriNet(
            places,
            [
                Transition.from_maps("keep", places, consume={"a": 1}, produce={"a": 1}),
                Transition.from_maps("drop", places, consume={"b": 1}, produce={"a": 1}),
            ],
        )
        inst = Instance(net, (1, 0), frozenset(), TargetSpec.unconstrained(2)).validate()
        result = prune_instance(inst)
        assert [t.name for t in result.pruned_instance.net.transitions] == ["keep"]
        assert result.kept_transitions == {0: 0}

    def test_upward_places_survive(self):
        places = ["a", "b"]
        net = PetriNet(places, [Transition.from_maps("t", places, consume={"a": 1})])
        inst = Instance(net, (1, 0), frozenset({0}), TargetSpec.unconstrained(2)).validate()
        result = prune_instance(inst)
        assert result.pruned_instance.init_upward == frozenset({0})


class TestSoundness:
    def test_pruned_places_never_marked(self):
        # Generators make the desugared net unbounded, so reachability is
        # enumerated on the base net over a truncated slice of the upward
        # closure of the initial marking.
        rng = random.Random(515151)
        for _ in range(40):
            base = random_bounded_instance(rng, upward=rng.random() < 0.3)
            inst = desugar_init(base)
            result = prune_instance(inst)
            removed = [p for p in range(base.net.num_places) if p not in result.kept_places]
            flagged = sorted(base.init_upward)
            for extras in itertools.product(range(3), repeat=len(flagged)):
                start = list(base.init)
                for p, k in zip(flagged, extras):
                    start[p] += k
                for m in enumerate_reachable(base.net, tuple(start)):
                    assert all(m[p] == 0 for p in removed)

    def test_verdict_and_distance_preserved(self):
        rng = random.Random(626262)
        checked = 0
        for _ in range(40):
            inst = desugar_init(random_bounded_instance(rng, rational_weights=rng.random() < 0.5))
            result = prune_instance(inst)
            if result.verdict is PruneVerdict.IMMEDIATELY_UNREACHABLE:
                unpruned = directed_search(inst, Strategy.ASTAR, make_heuristic("q", inst))
                assert not unpruned.reachable
                continue
            pruned_inst = result.pruned_instance
            res_pruned = directed_search(pruned_inst, Strategy.ASTAR, make_heuristic("q", pruned_inst))
            res_plain = directed_search(inst, Strategy.ASTAR, make_heuristic("q", inst))
            assert res_pruned.verdict == res_plain.verdict
            if res_plain.reachable:
                assert res_pruned.distance == res_plain.distance
                checked += 1
        assert checked >= 5

    def test_witness_remaps_onto_original(self):
        rng = random.Random(737373)
        replayed = 0
        for _ in range(150):
            inst = desugar_init(random_bounded_instance(rng))
            result = prune_instance(inst)
            if result.verdict is not PruneVerdict.PRUNED:
                continue
            pruned_inst = result.pruned_instance
            res = directed_search(pruned_inst, Strategy.ASTAR, make_heuristic("q", pruned_inst))
            if not res.reachable:
                continue
            original_seq = result.witness_on_original(res.witness.sequence)
            final, witness = inst.net.replay(inst.init, original_seq)
            assert inst.target.satisfied(final)
            assert witness.total_weight == res.distance
            replayed += 1
        assert replayed >= 10
