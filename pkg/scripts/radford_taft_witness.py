"""Taft3 over GF(7): S⁴ against the classical formula with ω and with ω⁻¹.

ω is the modular function of a right integral (x i = ω(x) i).
"""

import numpy as np

from coquasi.coalg import conv_inverse_array
from coquasi.linalg import mm
from coquasi.radford import classical_s4, modular_function, prepare, right_integrals, sigma_from_mu
from coquasi.zoo import build


def main():
    H = build("Taft3")
    F = H.field
    ctx = prepare(H)
    omega = modular_function(H, right_integrals(H)[0])
    omega_inv = conv_inverse_array(H.coalgebra, omega)
    sigma = sigma_from_mu(ctx).sigma
    S4 = mm(F, H.S, H.S, H.S, H.S)
    fmt = lambda v: [F.format(x) for x in v]
    print("basis     ", list(H.names))
    print("omega     ", fmt(omega))
    print("omega^-1  ", fmt(omega_inv))
    print("sigma     ", fmt(sigma))
    print("S^4 == id ", not np.any(S4 != F.eye(H.dim)))
    for label, w in (("omega", omega), ("omega^-1", omega_inv)):
        rhs = classical_s4(H, ctx.a, w)
        diff = np.argwhere(S4 != rhs)
        print(f"S^4 = w->a^-1 x a<-w^-1 with w = {label:8s}:", len(diff) == 0,
              "" if len(diff) == 0 else f"first difference at (out, x) = {tuple(int(i) for i in diff[0])}")


if __name__ == "__main__":
    main()
