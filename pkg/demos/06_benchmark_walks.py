"""
Random-walk benchmark instances
===============================

Hard reachability instances can be manufactured from any net: walk randomly
through the state graph, save the endpoint as the target, and the instance
is reachable by construction with the walk as an upper bound on the
distance.  The walk generator is seeded and platform independent, so a
benchmark corpus is reproducible byte for byte.
"""

import pathlib
import tempfile

from ffreach import Strategy, directed_search, make_heuristic, parse_instance, random_walk
from ffreach.cli import main

SOURCE = """\
net three-transitions
places: p1 p2
init: p1=0 p2=0
transition t1
  produce p1:1
transition t2
  consume p1:1
  produce p1:1 p2:1
transition t3
  consume p1:1
target: p1=0 p2=1
"""

inst = parse_instance(SOURCE)

# %% The library call: same seed, same walk, every time.
endpoint, walk = random_walk(inst.net, inst.init, length=12, seed=2024)
print("walk:", " ".join(inst.net.transitions[t].name for t in walk))
print("endpoint:", endpoint)
assert random_walk(inst.net, inst.init, length=12, seed=2024) == (endpoint, walk)

# %% The CLI pipeline: gen-walk writes a ready-to-solve instance file.
workdir = pathlib.Path(tempfile.mkdtemp())
src = workdir / "base.fnet"
src.write_text(SOURCE)
out = workdir / "walked.fnet"
main(["gen-walk", str(src), "--length", "12", "--seed", "2024", "--out", str(out)])
print("--- generated instance ---")
print(out.read_text(), end="")

# %% Solving it back: the distance can undercut the walk length whenever the
# walk wanders.
walked = parse_instance(out.read_text())
result = directed_search(walked, Strategy.ASTAR, make_heuristic("q", walked))
print("distance:", result.distance, "(walk had length", len(walk), "steps)")
