"""Correctness, kingdoms and reading a net back to a term."""
from vkernets.corpus import counterexample
from vkernets.correctness import (check_correct, classify_substitutions, kingdom_net, sequentialize,
                                  split_free_substitution)
from vkernets.structural import vo_equiv
from vkernets.terms import parse_term, show
from vkernets.translation import translate

t = parse_term(r"(x y)[x/\z. z][y/a]")
G = translate(t)
print("term:", show(t))
print("correct:", check_correct(G).ok)

for s in classify_substitutions(G):
    print(f"  substitution on {s.node}: {s.classification}")

# the kingdom of x is the net of its value
K = kingdom_net(G, "x")
print("kingdom of x reads back as", show(sequentialize(K)[0]))

# splitting off a free substitution leaves a smaller correct net
K, rest = split_free_substitution(G, "y")
print("after splitting y:", show(sequentialize(rest)[0]), "with value", show(sequentialize(K)[0]))

s, X = sequentialize(G)
print("read back:", show(s), "| same term up to substitution order:", vo_equiv(s, t))

# nets that are well formed but not the image of any term
for name in ("cyclic-boxes", "incorrect-box"):
    rep = check_correct(counterexample(name))
    print(f"{name}: " + "; ".join(str(v) for v in rep.violations))
