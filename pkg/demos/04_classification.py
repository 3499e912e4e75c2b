# Certifying irreducibility of small systems.

from matrealize.classify import classify_variety, system_from_strings

def show(eqs, n, ineqs=()):
    v = classify_variety(system_from_strings(eqs, n, ineqs), saturate=bool(ineqs))
    print(f"{eqs!s:45} -> {v.label}")
    for step in v.trace:
        print("   ", step)

show([], 3)
show(["t2 - t1*t3"], 4)                   # graph of a map
show(["t1*t2 - 1", "t3 - 5"], 3)          # elimination then a smooth conic
show(["t1*t2 - t3*t4"], 4)                # quadric cone, rank 4
show(["t1*t2"], 2)                        # two lines
show(["t1*t2*t3 - t2 - 1"], 3)            # linear in t3 with coprime coefficients
show(["t1^3 + t2^3 + t3^3 + 1"], 3)       # outside the certified families

# inequalities remove spurious components
show(["t1^2 - 1"], 1, ["t1 + 1"])
