# %% [markdown]
# The largest sandwich group on three involutions
#
# Thirteen pc generators, order 8192.  x, y, z are x12, x13, x14.

# %%
from pcengel import corpus, engel, series
from pcengel.subgroups import full_group
from pcengel.textio import evaluate, format_element

F = corpus.load_named("F_2_13")
al = corpus.aliases_for("F_2_13")
ev = lambda w: evaluate(F, w, al)

# %%
chain = series.lower_central_series(F)
print("term orders", chain.orders, "class", series.nilpotency_class(F))

# %%
print(format_element(F, ev("[z,x,y,y] [x,y,z,z] [y,z,x,x]")))
print(format_element(F, ev("[y,z,x,x]")))

# %%
# weight 4 in the centre, [[x,y],[x,z]] in Z_2, [x,y,z] in Z_3
print(series.centralizes(F, ev("[x,y,z,z]"), full_group(F)))
print(series.in_hypercentre(F, ev("[[x,y],[x,z]]"), 2), series.in_hypercentre(F, ev("[[x,y],[x,z]]"), 1))
print(series.in_hypercentre(F, ev("[x,y,z]"), 3), series.in_hypercentre(F, ev("[x,y,z]"), 2))

# %%
X = [ev("x"), ev("y"), ev("z")]
print(len(engel.conjugacy_orbit(F, X[0])))
print(engel.sandwich_verify(F, X))
print(engel.engel3_verify(F, X[0]).passed)

# %%
print("exponent", series.exponent(F))
