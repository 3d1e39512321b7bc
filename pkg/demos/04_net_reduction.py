"""Cut elimination on nets.

An m-cut opens a box, an e-cut either copies a box into every
dereliction or erases it against a weakening.
"""
from vkernets.correctness import check_correct, sequentialize
from vkernets.dynamics import find_cuts, step_net
from vkernets.terms import parse_term, show
from vkernets.translation import translate

G = translate(parse_term(r"(\x. x x) ((\y. y) z)"), {"z"})
n = 0
while True:
    cuts = find_cuts(G)
    print(f"step {n}: {len(G.links):2} links, cuts {[c.kind for c in cuts]}, "
          f"reads back as {show(sequentialize(G)[0])}, correct={check_correct(G).ok}")
    if not cuts:
        break
    G = step_net(G, cuts[0])
    n += 1
