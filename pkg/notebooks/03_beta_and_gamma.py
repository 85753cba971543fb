# %% [markdown]
# Four-generator groups: the beta graph (2^28) and the gamma graph (2^20)

# %%
from pcengel import corpus, engel, series, subgroups
from pcengel.textio import evaluate

B = corpus.load_named("G_BETA")
al = corpus.aliases_for("G_BETA")
ev = lambda w: evaluate(B, w, al)

# %%
X = subgroups.normal_closure(B, [ev("x")])
print("normal closure of x:", subgroups.subgroup_order(X))
print("its class:", series.nilpotency_class(B, X))

# %%
K = subgroups.induced_pcs(B, [ev("x^a"), ev("x^b"), ev("x^c")])
print("lower central series of K:", series.lower_central_series(B, K).orders)

# %%
print(ev("[x,x^(a b)]") == ev("[x^a,x^b]"))
d = ev("[x,x^(a b c),x^c] [x^a,x^b,x^c]^-1")
print("trivial:", d == (0,) * B.n, "central in X:", series.centralizes(B, d, X))

# %%
print("orbit of x:", len(engel.conjugacy_orbit(B, ev("x"))))
print(engel.engel3_verify(B, ev("x"), "sampled", count=200, seed=42))

# %%
G = corpus.load_named("G_GAMMA")
N = subgroups.normal_closure(G, [evaluate(G, f"e{i}") for i in (9, 10, 11)])
Q, qmap = subgroups.quotient(G, N)
print(subgroups.subgroup_order(N), Q.names)
print("class", series.nilpotency_class(Q), "exponent", series.exponent(Q))
