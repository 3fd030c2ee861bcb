"""Postfix instruction set shared by the two kernel backends.

A program is a tuple of ``(opcode, x, y)`` triples evaluated on a value
stack. ``CONST x`` pushes constant slot ``x``; ``VAR x`` pushes the point
bound to variable ``x``; ``READ x y`` pushes row ``x`` of the read table
at the point index bound to variable ``y``. ``AND``/``OR`` pop ``x``
operands. Booleans are 0/1.
"""

CONST, VAR, READ = 0, 1, 2
ADD, SUB, MUL = 3, 4, 5
LT, LE, EQ = 6, 7, 8
NOT, AND, OR, IMPLIES = 9, 10, 11, 12
