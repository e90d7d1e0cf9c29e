"""
Sign analysis and coverability
==============================

Two preprocessing steps from the solving pipeline: desugaring "at least k
tokens" initial markings into token-generator transitions, and the sign
analysis that strips places no transition can ever feed.
"""

from ffreach import (
    Strategy,
    desugar_init,
    directed_search,
    generator_names,
    make_heuristic,
    parse_instance,
    prune_instance,
    serialize_instance,
    sign_analysis,
)

TEXT = """\
net workers
places: idle busy done scrap
init: idle>=1
transition start
  consume idle:2
  produce busy:1
transition finish
  consume busy:1
  produce done:1
transition recycle          # needs scrap, but nothing ever produces scrap
  consume scrap:1 done:1
  produce idle:1
target: done>=2
"""

inst = parse_instance(TEXT)
print("parsed:", inst.net)

# %% Upward-closed initial marking: the >= flag becomes a generator
# transition, so the search itself chooses how many tokens to spawn.
desugared = desugar_init(inst)
print("generators added:", sorted(generator_names(inst, desugared)))

# %% Sign analysis: scrap can never be marked, so it goes away along with
# the transition that needs it.
marked = sign_analysis(desugared.net, {0})
print("markable places:", sorted(desugared.net.places[p] for p in marked))
result = prune_instance(desugared)
pruned = result.pruned_instance
print("pruned net:", pruned.net.places, [t.name for t in pruned.net.transitions])

# %% Solve the pruned instance: four idle tokens spawn, two work cycles run.
res = directed_search(pruned, Strategy.ASTAR, make_heuristic("q", pruned))
names = [pruned.net.transitions[t].name for t in res.witness.sequence]
print("verdict:", res.verdict.value, "distance:", res.distance)
print("witness:", " ".join(names))

# %% Instances round-trip through the text format.
print("--- canonical form ---")
print(serialize_instance(inst), end="")
