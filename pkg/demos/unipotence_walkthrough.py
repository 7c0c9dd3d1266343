"""
Walk through the mod-p endomorphism E_d on W^{(x)d} at a small special level.

For N = 9 (p = 3, M = 1) and weight k = d = 2 the space W^{(x)2} has the 9
symbols [[e1, e2]] with e1, e2 in nu_9 = {1, 4, 7}.  We print E_2 - id on each,
check that it equals L~ - R~ + S, and find the nilpotency index.  The second
half repeats the R~ iteration at N = 729, where the orbit sums shrink by a
factor 3 each time until they die.
"""
from cyclokappa.cyclotomic import make_level
from cyclokappa.depthgraded import (
    BiSeq,
    E_d_modp,
    XSpaceIndexer,
    decomposition_check,
    op_L,
    op_R,
    op_S,
    unipotence_check,
)
from cyclokappa.exactlinalg import add_into


def show(v):
    if not v:
        return "0"
    return " + ".join(f"{c}*[[{','.join(map(str, u.eps))};{','.join(map(str, u.ls))}]]" for u, c in sorted(v.items()))


def small_level():
    lv = make_level(9)
    p = lv.p
    print(f"N={lv.N}, p={p}, nu = {[e for e in range(9) if e % 3 == 1]}")
    for u in XSpaceIndexer(lv, 2, 2, "nu").symbols:
        v = {u: 1}
        lhs = E_d_modp(lv, v)
        add_into(lhs, v, -1, p)
        rhs = op_S(lv, v)
        add_into(rhs, op_L(lv, 1, v), 1, p)
        add_into(rhs, op_R(lv, 1, v), -1, p)
        print(f"  (E-id){list(u.eps)} = {show(lhs)}   {'ok' if lhs == rhs else 'DIFFERS'}")
    print("  decomposition on the grid k<=4:", all(decomposition_check(lv, k, 2) for k in (2, 3, 4)))
    for k in (2, 3, 4):
        print(f"  nilpotency index of (E_2)_{k} - id: {unipotence_check(lv, k, 2)}")


def big_level():
    lv = make_level(729)
    v = {BiSeq((1, 100), (0, 0)): 1}
    print("\nN=729, u = [[zeta, zeta^100]]")
    for step in range(1, 6):
        v = op_R(lv, 1, v)
        tails = sorted(u.eps[1] for u in v)
        desc = f"{len(tails)} terms, second letters {tails[:3]}..." if tails else "0"
        print(f"  R~^{step}(u): {desc}")


if __name__ == "__main__":
    small_level()
    big_level()
