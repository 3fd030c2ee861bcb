"""Pure-Python backend for the quantifier-block kernel.

The postfix program is turned into Python source for a nested loop, so
the per-tuple cost is one evaluation of a generated expression rather
than a trip through an interpreter loop. Generated functions are cached
per program.
"""
from functools import lru_cache

from .ir import (ADD, AND, CONST, EQ, IMPLIES, LE, LT, MUL, NOT, OR, READ, SUB, VAR)

BACKEND = "python"

_BINARY = {ADD: "+", SUB: "-", MUL: "*", LT: "<", LE: "<=", EQ: "=="}


def _expression(program):
    stack = []
    for op, x, y in program:
        if op == CONST:
            stack.append(f"C[{x}]")
        elif op == VAR:
            stack.append(f"P[i{x}]")
        elif op == READ:
            stack.append(f"T[{x}][i{y}]")
        elif op in _BINARY:
            rhs = stack.pop()
            lhs = stack.pop()
            stack.append(f"({lhs} {_BINARY[op]} {rhs})")
        elif op == NOT:
            stack.append(f"(not {stack.pop()})")
        elif op in (AND, OR):
            args = stack[len(stack) - x:]
            del stack[len(stack) - x:]
            joiner = " and " if op == AND else " or "
            stack.append("(" + joiner.join(args) + ")")
        elif op == IMPLIES:
            rhs = stack.pop()
            lhs = stack.pop()
            stack.append(f"((not {lhs}) or {rhs})")
        else:
            raise ValueError(f"unknown opcode {op}")
    if len(stack) != 1:
        raise ValueError("malformed program")
    return stack[0]


@lru_cache(maxsize=8192)
def _compile(program, nvars):
    lines = ["def check(C, P, T, N):"]
    indent = "    "
    for m in range(nvars):
        lines.append(f"{indent}for i{m} in range(N):")
        indent += "    "
    flat = "0"
    for m in range(nvars):
        flat = f"({flat}) * N + i{m}"
    lines.append(f"{indent}if not {_expression(program)}:")
    lines.append(f"{indent}    return {flat}")
    lines.append("    return -1")
    namespace = {}
    exec("\n".join(lines), namespace)
    return namespace["check"]


def first_failure(program, consts, points, rows, nvars):
    """Flat index of the first tuple of point indices falsifying
    ``program``, or -1 when every tuple satisfies it."""
    return _compile(program, nvars)(consts, points, rows, len(points))
