"""
The derivative of a Maltsev operation
=====================================

A ternary operation p is Maltsev when p(x,x,y) = p(y,x,x) = y, and
conservative when p(x,y,z) is always one of its arguments.  From such a p we
build p'(x,y,z) = z if p(x,y,z) == x else x, which turns out to be a
majority operation.
"""
from conslang import (Domain, boolean_minority, derivative, enumerate_maltsev_conservative,
                      is_conservative, is_maltsev, is_majority)

# the boolean minority x xor y xor z is the smallest interesting case
p = boolean_minority()
print(p.name, "maltsev:", is_maltsev(p), "conservative:", is_conservative(p))

q = derivative(p)
print(q.name, "majority:", is_majority(q))
for x, y, z in Domain(2).cells():
    print(f"  {q.name}({x},{y},{z}) = {q(x, y, z)}")

# the table is a flat numpy array indexed by x*n*n + y*n + z
print(q.array.reshape(2, 2, 2))

# over three elements: 6 cells with distinct arguments (3 choices each) and
# 6 cells p(x,y,x) with x != y (2 choices each), so 729 * 64 = 46656 operations
ops = list(enumerate_maltsev_conservative(Domain(3)))
print(len(ops), "operations,", sum(is_majority(derivative(o)) for o in ops), "majority derivatives")
