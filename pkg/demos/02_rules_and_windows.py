"""Local rules, finite windows, and the one-sided inverse criterion.

A rule never touches an infinite configuration here: it acts on patterns,
finite windows with one alphabet value per cell. The induced map sends a
pattern on E*M to a pattern on E; composing automata multiplies memories;
and whether sigma undoes tau is decided exactly by a finite window scan.
"""

import symba as sy

Z = sy.FreeAbelianGroup(1)
bits = sy.Alphabet.plain(2)

print("== the shift: value at g becomes the value at g+1 ==")
shift = sy.projection_ca(Z, bits, (1,))
E = sy.FiniteSubset(Z, [(0,), (1,)])
p = sy.Pattern(sy.FiniteSubset(Z, [(1,), (2,)]), (1, 0))
print("window image:", sy.induced_map(shift, E, p).values)

print()
print("== the sum rule (xor of the cell and its right neighbor) ==")
mem = sy.FiniteSubset(Z, [(0,), (1,)])
xor = sy.CellularAutomaton(Z, bits, sy.LocalRule(mem, sy.StructuredMap(bits, 2, table=[0, 1, 1, 0])))
word = sy.Pattern(sy.FiniteSubset(Z, [(i,) for i in range(5)]), (1, 0, 1, 1, 0))
print("10110 evolves to:", "".join(map(str, sy.evolve(xor, word, 1).values)))
print("(the window shrinks by one cell per step)")

print()
print("== composition multiplies memories ==")
double = sy.compose(shift, shift)
print("shift after shift reads at:", list(double.memory))

print()
print("== the inverse criterion is a finite check ==")
back = sy.projection_ca(Z, bits, (-1,))
print("back undoes shift:", sy.check_left_inverse(back, shift))
print("shift undoes back:", sy.check_right_inverse(back, shift))
print("anything undoes xor?", sy.check_left_inverse(sy.identity_ca(Z, bits), xor))

print()
print("== matrix rules: values in (Z/2)^2, one matrix per memory cell ==")
A = sy.Alphabet.module(2, 2)
C0 = [[0, 1], [1, 0]]
C1 = [[0, 0], [0, 1]]
lin = sy.CellularAutomaton(
    Z, A, sy.LocalRule(mem, sy.StructuredMap(A, 2, matrices=[C0, C1]))
)
E0 = sy.FiniteSubset(Z, [(0,)])
q = sy.Pattern(
    sy.FiniteSubset(Z, [(0,), (1,)]),
    (A.vector_to_index((1, 0)), A.vector_to_index((0, 1))),
)
out = sy.induced_map(lin, E0, q).values[0]
print("rule applied to [(1,0), (0,1)]:", [int(v) for v in A.vectors()[out]])
