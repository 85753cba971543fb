# %% [markdown]
# Collection in a small power-conjugate presentation
#
# D8 x D8 on six involutions.  Relations not listed are trivial.

# %%
from pcengel import collector as col
from pcengel.consistency import check_consistency, group_order
from pcengel.textio import evaluate, format_element, parse_presentation, serialize_presentation

text = """
group D8xD8
gen w order 2
gen v order 2
gen x order 2
gen y order 2
gen a order 2
gen b order 2
conj x ^ y = x w
conj a ^ b = a v
"""
p = parse_presentation(text)
print(serialize_presentation(p))

# %%
report = check_consistency(p)
print(report.consistent, group_order(p))

# %%
# words are collected to x_n^e_n ... x_1^e_1
for w in ["x y", "y x", "(x y)^4", "[x,y]", "[x,a]", "x^y"]:
    print(f"{w:10} -> {format_element(p, evaluate(p, w))}")

# %%
# a broken relation is caught by the overlap tests
bad = parse_presentation(text.replace("conj a ^ b = a v", "conj a ^ b = a w"))
for f in check_consistency(bad).failures[:3]:
    print(f.kind, [bad.names[i - 1] for i in f.indices], format_element(bad, f.left), "vs", format_element(bad, f.right))

# %%
g = evaluate(p, "x y a")
print(col.power(p, g, 2), col.power(p, g, 4))
