# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for the quantifier-block kernel.

Same contract as ``_kernel_py.first_failure`` but on 64-bit integers. Any
input that does not fit, or any intermediate overflow, raises
``OverflowError`` so the caller can retry on the unbounded backend.
"""
from cpython cimport array
from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static inline int apf_add(long long a, long long b, long long *r) { return __builtin_add_overflow(a, b, r); }
    static inline int apf_sub(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    static inline int apf_mul(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    """
    int apf_add(long long a, long long b, long long *r) nogil
    int apf_sub(long long a, long long b, long long *r) nogil
    int apf_mul(long long a, long long b, long long *r) nogil

BACKEND = "cython"

cdef enum:
    OP_CONST = 0
    OP_VAR = 1
    OP_READ = 2
    OP_ADD = 3
    OP_SUB = 4
    OP_MUL = 5
    OP_LT = 6
    OP_LE = 7
    OP_EQ = 8
    OP_NOT = 9
    OP_AND = 10
    OP_OR = 11
    OP_IMPLIES = 12


cdef int _run(const long long *code, Py_ssize_t n, const long long *consts,
              const long long *points, const long long *table, Py_ssize_t npoints,
              Py_ssize_t *idx, long long *stack) noexcept nogil:
    """1 if the program holds at ``idx``, 0 if not, -1 on overflow."""
    cdef Py_ssize_t pc, sp = 0, k, cnt
    cdef long long op, x, lhs, rhs, acc, res
    for pc in range(0, n, 3):
        op = code[pc]
        x = code[pc + 1]
        if op == OP_CONST:
            stack[sp] = consts[x]
            sp += 1
        elif op == OP_VAR:
            stack[sp] = points[idx[x]]
            sp += 1
        elif op == OP_READ:
            stack[sp] = table[x * npoints + idx[code[pc + 2]]]
            sp += 1
        elif op == OP_NOT:
            stack[sp - 1] = stack[sp - 1] == 0
        elif op == OP_AND or op == OP_OR:
            cnt = x
            if op == OP_AND:
                acc = 1
                for k in range(sp - cnt, sp):
                    if stack[k] == 0:
                        acc = 0
            else:
                acc = 0
                for k in range(sp - cnt, sp):
                    if stack[k] != 0:
                        acc = 1
            sp -= cnt
            stack[sp] = acc
            sp += 1
        else:
            rhs = stack[sp - 1]
            lhs = stack[sp - 2]
            sp -= 1
            if op == OP_ADD:
                if apf_add(lhs, rhs, &res):
                    return -1
            elif op == OP_SUB:
                if apf_sub(lhs, rhs, &res):
                    return -1
            elif op == OP_MUL:
                if apf_mul(lhs, rhs, &res):
                    return -1
            elif op == OP_LT:
                res = lhs < rhs
            elif op == OP_LE:
                res = lhs <= rhs
            elif op == OP_EQ:
                res = lhs == rhs
            else:  # OP_IMPLIES
                res = (lhs == 0) or (rhs != 0)
            stack[sp - 1] = res
    return stack[0] != 0


cdef dict _encoded = {}


cdef array.array _encode(program):
    enc = _encoded.get(program)
    if enc is None:
        if len(_encoded) >= 8192:
            _encoded.clear()
        enc = array.array("q", [v for triple in program for v in triple])
        _encoded[program] = enc
    return enc


def first_failure(program, consts, points, rows, Py_ssize_t nvars):
    cdef Py_ssize_t npoints = len(points)
    if npoints == 0:
        return -1
    cdef array.array code = _encode(program if type(program) is tuple else tuple(program))
    cdef array.array cv = array.array("q", consts or (0,))
    cdef array.array pv = array.array("q", points)
    cdef array.array tv = array.array("q")
    for row in rows:
        tv.extend(row)
    cdef Py_ssize_t n = len(code)
    cdef const long long *cp = code.data.as_longlongs
    cdef const long long *cvp = cv.data.as_longlongs
    cdef const long long *pvp = pv.data.as_longlongs
    cdef const long long *tvp = tv.data.as_longlongs
    cdef Py_ssize_t m, flat = 0
    cdef int status = 1
    cdef Py_ssize_t *idx = <Py_ssize_t *> malloc(max(nvars, 1) * sizeof(Py_ssize_t))
    cdef long long *stack = <long long *> malloc(max(n // 3, 1) * sizeof(long long))
    if idx == NULL or stack == NULL:
        free(idx)
        free(stack)
        raise MemoryError()
    for m in range(nvars):
        idx[m] = 0
    with nogil:
        while True:
            status = _run(cp, n, cvp, pvp, tvp, npoints, idx, stack)
            if status != 1:
                break
            flat += 1
            m = nvars - 1
            while m >= 0:
                idx[m] += 1
                if idx[m] < npoints:
                    break
                idx[m] = 0
                m -= 1
            if m < 0:
                break
    free(idx)
    free(stack)
    if status == -1:
        raise OverflowError("64-bit overflow in kernel")
    if status == 0:
        return flat
    return -1
