"""
The dual picture for N = p*q.

Y_1 at level pq is dual to a space Lambda_N of class functions on Z/N, and
kappa(N) is the kernel dimension of beta on Lambda_N (x) Lambda_N.  For q in
{2, 3} the cosets of H = <q, -1> in (Z/p)^x give explicit kernel vectors,
which bound kappa(qp) below by n_q(p) - 1.
"""
from cyclokappa.kappa import dual_kernel_check, dual_space, lower_bound_witnesses, n_q


def report(p, q):
    ds = dual_space(p, q)
    lit = dual_space(p, q, literal=True)
    r = dual_kernel_check(p, q)
    w = lower_bound_witnesses(p, q)
    print(f"N={p * q} = {p}*{q}")
    print(f"  dim Lambda = {ds.dim} (dim Y_1 = {r.dim_Y1}); summing i=0..q instead gives {lit.dim}")
    print(f"  kernel of beta = {r.kernel_dim}, kappa = {r.kappa}")
    print(f"  n_q(p) = {n_q(p, q)}, witnesses {len(w)}: in Lambda {w.in_lambda}, "
          f"in kernel {w.in_kernel}, projection {w.projection_ok}, independent {w.independent}")


if __name__ == "__main__":
    for p, q in [(17, 2), (13, 3), (31, 2), (17, 3)]:
        report(p, q)
