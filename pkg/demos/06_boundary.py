"""
Why only unary and binary constraints
=====================================

With a ternary relation the statement breaks: minority preserves the parity
relation a xor b xor c = 0, but its derivative (majority) does not.
"""
from conslang.verify import boundary_demo

demo = boundary_demo()
print(demo.to_text(), end="")
print("image of the three odd-weight rows:", demo.rows_image)
