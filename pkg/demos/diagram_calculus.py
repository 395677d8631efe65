"""Walk through the diagram calculus: enumeration, stitching, products, inner products."""

from gjs_cup import GradedElement, enumerate_diagrams, from_string, inner, multiply, stitch, trace

# Catalan counts of non-crossing matchings
for n in range(6):
    print(n, len(enumerate_diagrams(n)), [d.string for d in enumerate_diagrams(n)][:5])

# stitching two diagrams along j strands gives (closed loops, diagram)
a, b = from_string("(())"), from_string("()()")
for j in range(3):
    loops, d = stitch(a, b, j)
    print(f"j={j}: loops={loops} -> {d.string}")

# the product sums over every j, each closed loop weighs delta = q^2
x = GradedElement.diagram("()")
print("cup * cup =", multiply(x, x))

# inner product closes the two matchings against each other
p, r = GradedElement.diagram(a), GradedElement.diagram(b)
print("<(()), ()()> =", inner(p, r))
print("<(()), (())> =", inner(p, p))

# traces of product powers of the cup
power = GradedElement.one()
for m in range(6):
    print(f"tr(cup^{m}) =", trace(power))
    power = multiply(power, x)
