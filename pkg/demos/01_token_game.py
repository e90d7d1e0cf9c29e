"""
The token game
==============

Build a small weighted Petri net, fire transitions by hand, replay whole
sequences and look at the branching structure of its state graph.
"""

from ffreach import PetriNet, Transition

places = ["p1", "p2"]
net = PetriNet(
    places,
    [
        Transition.from_maps("t1", places, produce={"p1": 1}),
        Transition.from_maps("t2", places, consume={"p1": 1}, produce={"p1": 1, "p2": 1}),
        Transition.from_maps("t3", places, consume={"p1": 1}),
    ],
    name="three-transitions",
)
print(net)

# %% Single steps.  Markings are plain tuples: (tokens in p1, tokens in p2).
m = (0, 0)
for t in [0, 1, 2]:
    print(f"{m} firable({net.transitions[t].name}) = {net.is_firable(m, t)}")
m = net.fire(m, 0)
print("after t1:", m)
m = net.fire(m, 1)
print("after t2:", m)

# %% Replaying a sequence gives the final marking plus a witness record with
# the total weight and per-transition firing counts (the Parikh vector).
final, witness = net.replay((0, 0), [0, 1, 2])
print("replay t1 t2 t3 ->", final)
print("  weight:", witness.total_weight, " parikh:", witness.parikh)

# %% The state graph is explored on the fly: successors enumerates the
# enabled transitions in a fixed order.
for marking in [(0, 0), (1, 0), (1, 1)]:
    steps = [(net.transitions[t].name, succ) for t, succ in net.successors(marking)]
    print(f"successors{marking}: {steps}")
