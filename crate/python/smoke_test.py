"""Quick check of the bindings. Build them first with `maturin develop -m crates/python/Cargo.toml`."""

from fractions import Fraction

import cak

v = cak.Element.generator("v", 0, "phi1")
assert str(cak.bracket(v, 1, v)) == "2 v - 2 D", cak.bracket(v, 1, v)
assert cak.locality(v, v) == 2

x = cak.Element("xi1 v", 1)
y = cak.Element("del1", 1)
# D x o_1 y = -(x o_0 y)
assert cak.nprod(x.d(), 1, y) == -cak.nprod(x, 0, y)
assert not cak.nprod(x, 0, y).is_zero()
assert (x + x) == 2 * x
assert x.terms() == [(0, [1], [], 1, Fraction(1))]

table = cak.w_table(3, "phi1")
assert table[("v", "del1")] == 2 and table[("del1", "v")] == 1

k = cak.k_table(3)
assert all(k[(a, b)] == k[(b, a)] for (a, b) in k)

rank, witness = cak.independence([x, y, x + y])
assert rank == 2 and witness == [Fraction(1), Fraction(1), Fraction(-1)], witness

assert cak.reduce("v .1 v - v", n=1) == "0"

report = cak.verify("w", n=2, map="phi2")
assert report["passed"], report
assert cak.verify("k", n=2)["passed"] is False

try:
    cak.Element("xi3", 1)
except ValueError as e:
    print("parse error as expected:", e)
else:
    raise AssertionError("rank check missing")

print("smoke test passed")
