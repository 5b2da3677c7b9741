"""Exact Var<q> of the SG measure restricted to the lowest N oscillator levels.

With w_k = |c_k|^2 the measure on the sphere pushes forward to a tilted flat
Dirichlet law on the simplex, density ~ exp(-sum a_k w_k), a_k = beta E_k.
Its normalizer is the divided difference Z(a) = sum_j e^{-a_j} / prod_{i!=j}(a_i - a_j)
(up to a constant), and E[w_k w_l] = d2Z/da_k da_l / Z. Phases are uniform,
so with q_{k,k+1} = sqrt((k+1)/2):

    Var<q> = sum_k (k+1) E[w_k w_{k+1}]   (m = omega = hbar = 1)

The tests freeze the printed values.
"""

import mpmath as mp

mp.mp.dps = 80


def z(a):
    total = mp.mpf(0)
    for j, aj in enumerate(a):
        den = mp.mpf(1)
        for i, ai in enumerate(a):
            if i != j:
                den *= ai - aj
        total += mp.e ** (-aj) / den
    return total


def var_q(n, beta):
    a = [beta * (k + mp.mpf(1) / 2) for k in range(n)]
    z0 = z(a)
    h = mp.mpf("1e-20")
    total = mp.mpf(0)
    for k in range(n - 1):
        def shifted(dk, dl):
            b = list(a)
            b[k] += dk
            b[k + 1] += dl
            return z(b)

        d2 = (shifted(h, h) - shifted(h, -h) - shifted(-h, h) + shifted(-h, -h)) / (4 * h * h)
        total += (k + 1) * d2 / z0
    return total


if __name__ == "__main__":
    for n in (2, 4, 8, 16, 24, 48):
        print(n, mp.nstr(var_q(n, 2), 10))
