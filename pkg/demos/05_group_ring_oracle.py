"""Exact group-ring matrices: the independent oracle for matrix rules.

A matrix rule corresponds to a square matrix with entries in (Z/n)[G], and
composition of automata is plain matrix product. That gives a second,
fully algebraic route to inverses: solve the linear system for D with
D @ C = identity, coefficient by coefficient.
"""

import symba as sy

Z = sy.FreeAbelianGroup(1)
F2 = sy.FreeGroup(2)

E = lambda d: sy.GroupRingElement(Z, 2, d)
one, t = Z.identity(), (1,)

print("== arithmetic in (Z/2)[Z] ==")
x = sy.GroupRingElement(Z, 2, {one: 1, t: 1})
print("(1+t)^2 =", sy.gr_mul(x, x), " (the cross terms cancel mod 2)")

print()
print("== the reversible pair ==")
C = sy.GroupRingMatrix(Z, 2, [[E({}), E({one: 1})], [E({one: 1}), E({t: 1})]])
D = sy.GroupRingMatrix(Z, 2, [[E({t: 1}), E({one: 1})], [E({one: 1}), E({})]])
print("D @ C is the identity:", sy.matrix_mul(D, C).is_identity())
print("C @ D is the identity:", sy.matrix_mul(C, D).is_identity())

print()
print("== solving for the inverse instead of knowing it ==")
solved = sy.one_sided_inverse_solve(C, 1)
print("solver at radius 1 recovers D exactly:", solved == D)
xor = sy.GroupRingMatrix(Z, 2, [[E({one: 1, t: 1})]])
print("no radius helps the sum rule:",
      [sy.one_sided_inverse_solve(xor, r) for r in range(4)])

print()
print("== automata and matrices are the same thing ==")
A = sy.Alphabet.module(2, 2)
tau = sy.to_linear_ca(C, Z, A)
print("round trip is exact:", sy.from_linear_ca(tau) == C)
sig = sy.to_linear_ca(D, Z, A)
print("window criteria agree with the algebra:",
      sy.check_left_inverse(sig, tau), sy.check_right_inverse(sig, tau))

print()
print("== seeded generator: invertible by construction, over any universe ==")
for seed in (0, 1):
    for G, name in ((Z, "Z"), (F2, "free(2)")):
        Cr, Dr = sy.random_invertible_matrix(G, seed=seed, d=2, r=1, modulus=3, factors=5)
        left = sy.matrix_mul(Dr, Cr).is_identity()
        right = sy.matrix_mul(Cr, Dr).is_identity()
        print(f"seed {seed} over {name}: left {left}, right {right}, "
              f"support size {len(Cr.support())}")
