"""Build the map from its text definition and look around.

The whole construction lives in a ~80-line text file: 26 named vertices,
31 triangles, and one image vertex per source vertex.  Building it runs
every structural validation (tiling, exact continuity across shared
edges, images staying inside the domain); a bad definition raises
instead of producing a map.
"""

from fractions import Fraction as F

from pam import Point, format_rational, standard_map
from pam.mapmodel import standard_definition_text

t = standard_map()

print("definition:", len(standard_definition_text().splitlines()), "lines")
print("pieces:", len(t.pieces))
print("vertices:", len(t.vertices))
print("domain corners:", ", ".join(t.domain_names))
print()

print("the domain is a parallelogram pinched at S = (0, 0):")
for name in t.domain_names:
    p = t.vertices[name]
    print(f"  {name} = ({format_rational(p.x)}, {format_rational(p.y)})")
print()

print("every vertex image is another table vertex, e.g. the base row")
print("all lands on the horizontal line y = 3/2:")
for name in ("W", "A", "B", "O", "C", "D", "E"):
    q = t.evaluate(t.vertices[name])
    print(f"  T({name}) = ({format_rational(q.x)}, {format_rational(q.y)})")
print()

print("evaluation is exact; follow one point for a few steps:")
p = Point(F(-19, 40), F(1, 2))
for k in range(6):
    print(f"  step {k}: ({format_rational(p.x)}, {format_rational(p.y)})")
    p = t.evaluate(p)

print()
print("documented deviations:")
for note in t.deviations:
    print(" ", note)
