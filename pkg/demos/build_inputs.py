"""Write the JSON inputs used by demos/run_demos.sh into demos/inputs/."""
import json
import pathlib

from derlab import serialize
from derlab.core import Functor, constant_functor, object_functor, terminal
from derlab.finset import FinSetDiagram, DiagramMap
from derlab.shapes import arrow, chain, free_iso, parallel_pair
from derlab.simplicial import circle, horn, nerve_map
from derlab.twocat import counterexample

out = pathlib.Path(__file__).parent / "inputs"
out.mkdir(exist_ok=True)


def write(name, value):
    (out / name).write_text(serialize.dumps(value) + "\n", encoding="utf-8")


two, one = arrow(), terminal()
write("two.json", two)
write("iso.json", free_iso())
write("loop.sset.json", circle(2))
write("horn21.sset.json", horn(2, 1))
at0 = object_functor(two, 0)
at1 = object_functor(two, 1)
write("at0.functor.json", at0)
write("at1.functor.json", at1)
write("bang.functor.json", constant_functor(two, one, "*"))
write("cospan.json", (at0, at1))
X = FinSetDiagram(two, {0: (0, 1), 1: (0,)}, {(0, 1): {0: 0, 1: 0}})
write("x.diagram.json", X)
W = FinSetDiagram(two, {0: (0,), 1: (0, 1)}, {(0, 1): {0: 1}})
W1 = FinSetDiagram(two, {0: (0,), 1: (0,)}, {(0, 1): {0: 0}})
write("w.diagram.json", W)
write("w-to-w1.diagram_map.json", DiagramMap(W, W1, {0: {0: 0}, 1: {0: 0, 1: 0}}))
F = FinSetDiagram(two, {0: (0, 1), 1: (0, 1)}, {(0, 1): {0: 1, 1: 0}})
write("f.diagram.json", F)
ce = counterexample()
write("counterexample.pseudonatural.json", ce.alpha)
write("counterexample.two_category.json", ce.fragment.two)
write("not-iso.sset_map.json", nerve_map(Functor(two, chain(1), {0: 0, 1: 0}, {(0, 0): (0, 0), (1, 1): (0, 0), (0, 1): (0, 0)})))

# deliberately broken inputs
bad = serialize.encode(two)
bad["composition"] = [row for row in bad["composition"] if row[:2] != [[1, 1], [0, 1]]]
(out / "missing-composite.json").write_text(json.dumps(bad, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
bad = serialize.encode(two)
bad["colour"] = "blue"
(out / "unknown-field.json").write_text(json.dumps(bad, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
(out / "truncated.json").write_text('{"kind": "category",\n  "objects": [0, 1,\n', encoding="utf-8")
