"""Local confluence, checked on terms and mirrored on nets."""
from vkernets.bisim import check_local_confluence
from vkernets.generate import count_terms, enumerate_terms
from vkernets.terms import find_redexes, parse_term

t = parse_term(r"(x x)[x/\y. (\z. z) y]")
rep = check_local_confluence(t)
print(f"{len(find_redexes(t))} redexes, {rep.peaks} peaks, joined: {rep.ok}")

# every closed term up to size 7 with at least two redexes
total = peaks = 0
for n in range(1, 8):
    for u in enumerate_terms(n, free=()):
        if len(find_redexes(u)) > 1:
            r = check_local_confluence(u)
            assert r.ok
            total += 1
            peaks += r.peaks
print(f"closed terms up to size 7: {sum(count_terms(n, ()) for n in range(1, 8))}, "
      f"{total} with a peak, {peaks} peaks joined on both sides")
