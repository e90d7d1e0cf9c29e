"""Sign analysis: a cheap, sound pre-pass that shrinks instances.

Starting from the initially marked places, a fixpoint marks every place some
transition can ever feed: whenever all of a transition's input places are
marked, its output places become marked too.  Places outside the fixpoint
can never carry a token in any reachable marking, so they are removed along
with every transition that needs a token from them.  The answer (verdict and
distance) of the instance is unchanged; if the target demands tokens in a
removed place, the instance is settled on the spot.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from .instance_io import Instance, TargetSpec
from .net import PetriNet, Transition


class PruneVerdict(Enum):
    PRUNED = "pruned"
    IMMEDIATELY_UNREACHABLE = "immediately-unreachable"


@dataclass(frozen=True)
class PruneResult:
    """Index maps are old index -> new index for the surviving items.

    ``pruned_instance`` is equivalent to the input only under the PRUNED
    verdict; an IMMEDIATELY_UNREACHABLE verdict settles the query by itself.
    """

    kept_places: dict[int, int]
    kept_transitions: dict[int, int]
    pruned_instance: Instance
    verdict: PruneVerdict

    @property
    def original_transition_of(self) -> list[int]:
        """Inverse transition map: new index -> old index."""
        inverse = [0] * len(self.kept_transitions)
        for old, new in self.kept_transitions.items():
            inverse[new] = old
        return inverse

    def witness_on_original(self, sequence) -> list[int]:
        """Map a pruned-net transition sequence back to original indices."""
        inverse = self.original_transition_of
        return [inverse[t] for t in sequence]


def sign_analysis(net: PetriNet, initially_marked: set[int]) -> set[int]:
    """Least fixpoint of "markable" places, independent of iteration order.

    Worklist over newly marked places; each transition is counted down once
    per distinct unmarked guard place, so the total work is linear in the
    size of the guards.
    """
    marked = set(initially_marked)
    guard_support = [
        [p for p in range(net.num_places) if t.guard[p] > 0] for t in net.transitions
    ]
    needs: list[list[int]] = [[] for _ in range(net.num_places)]
    remaining = []
    queue: deque[int] = deque()

    def fire(t: int) -> None:
        for q in range(net.num_places):
            if net.transitions[t].produce[q] > 0 and q not in marked:
                marked.add(q)
                queue.append(q)

    for t, support in enumerate(guard_support):
        missing = [p for p in support if p not in marked]
        remaining.append(len(missing))
        for p in missing:
            needs[p].append(t)
        if not missing:
            fire(t)

    while queue:
        p = queue.popleft()
        for t in needs[p]:
            remaining[t] -= 1
            if remaining[t] == 0:
                fire(t)
    return marked


def prune_instance(inst: Instance) -> PruneResult:
    """Drop unmarkable places and the transitions that require them.

    Meant to run after init desugaring so generator transitions participate
    in the fixpoint; upward-flagged places count as initially marked either
    way.  Target constraints on removed places are dropped when they are
    vacuously true (= 0 or >= 0) and settle the instance as immediately
    unreachable when they demand tokens.
    """
    net = inst.net
    initially_marked = {p for p in range(net.num_places) if inst.init[p] > 0}
    initially_marked |= inst.init_upward
    markable = sign_analysis(net, initially_marked)

    kept_place_list = [p for p in range(net.num_places) if p in markable]
    kept_places = {old: new for new, old in enumerate(kept_place_list)}

    verdict = PruneVerdict.PRUNED
    for p in range(net.num_places):
        if p not in markable:
            _, bound = inst.target.constraints[p]
            if bound > 0:
                verdict = PruneVerdict.IMMEDIATELY_UNREACHABLE

    kept_transition_list = []
    for t, trans in enumerate(net.transitions):
        if all(trans.guard[p] == 0 or p in markable for p in range(net.num_places)):
            kept_transition_list.append(t)
    kept_transitions = {old: new for new, old in enumerate(kept_transition_list)}

    def project(vec) -> tuple[int, ...]:
        return tuple(vec[p] for p in kept_place_list)

    transitions = [
        Transition(net.transitions[t].name, project(net.transitions[t].guard),
                   project(net.transitions[t].produce), net.transitions[t].weight)
        for t in kept_transition_list
    ]
    pruned_net = PetriNet([net.places[p] for p in kept_place_list], transitions, name=net.name)
    pruned_target = TargetSpec(tuple(inst.target.constraints[p] for p in kept_place_list))
    pruned = Instance(
        pruned_net,
        project(inst.init),
        frozenset(kept_places[p] for p in inst.init_upward),
        pruned_target,
    ).validate()

    return PruneResult(kept_places, kept_transitions, pruned, verdict)
