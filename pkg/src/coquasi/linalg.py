"""Exact fields, dense matrices and Gaussian elimination.

Two fields are supported: the rationals (entries are ``int`` or
``fractions.Fraction`` inside object arrays) and prime fields 𝔽_p (entries
are reduced residues inside ``int64`` arrays).  All structure tensors in the
package are numpy arrays tagged with one of these fields; :func:`contract`
is the single entry point for multilinear sums and keeps residues reduced.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np


class FieldMismatch(TypeError):
    pass


class Singular(ArithmeticError):
    pass


class ScalarFormatError(ValueError):
    pass


# ---------------------------------------------------------------- fields

class Field:
    """Base class of the two exact fields."""

    dtype: object
    characteristic: int

    def zeros(self, shape):
        return np.zeros(shape, dtype=self.dtype)

    def ones(self, shape):
        return np.ones(shape, dtype=np.int64).astype(self.dtype)

    def eye(self, n):
        return np.eye(n, dtype=np.int64).astype(self.dtype)

    def unit_vector(self, n, i):
        v = self.zeros(n)
        v[i] = self.one
        return v

    def is_zero_array(self, a):
        return not np.any(a != 0)


class Rationals(Field):
    dtype = object
    characteristic = 0
    name = "Q"
    zero = 0
    one = 1

    def __repr__(self):
        return "QQ"

    def asarray(self, data):
        a = np.array(data, dtype=object)
        flat = a.reshape(-1)
        for i, x in enumerate(flat):
            flat[i] = self.scalar(x)
        return a

    def reduce(self, a):
        return a

    def scalar(self, x):
        if isinstance(x, GFElement):
            raise FieldMismatch(f"{x!r} is not rational")
        if isinstance(x, (bool, np.bool_)):
            x = int(x)
        if isinstance(x, (int, np.integer)):
            return int(x)
        if isinstance(x, Fraction):
            return int(x) if x.denominator == 1 else x
        if isinstance(x, str):
            return self.parse(x)
        raise FieldMismatch(f"cannot read {x!r} as a rational")

    def element(self, x):
        return Fraction(self.scalar(x))

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.scalar(Fraction(1) / Fraction(x))

    def div(self, x, y):
        return self.scalar(Fraction(x) / Fraction(y))

    def parse(self, s):
        s = s.strip()
        try:
            q = Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ScalarFormatError(f"bad rational {s!r}") from exc
        if self.format(q) != s:
            raise ScalarFormatError(f"non-canonical rational {s!r} (expected {self.format(q)!r})")
        return self.scalar(q)

    def format(self, x):
        q = Fraction(x)
        if q.denominator == 1:
            return str(q.numerator)
        return f"{q.numerator}/{q.denominator}"

    def from_int(self, k):
        return int(k)


@functools.lru_cache(maxsize=None)
def GF(p):
    """The prime field with ``p`` elements (cached, so descriptors compare by identity)."""
    return PrimeField(p)


class PrimeField(Field):
    dtype = np.int64

    def __init__(self, p):
        p = int(p)
        if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
            raise ValueError(f"{p} is not prime")
        if p >= 2**31:
            raise ValueError("modulus too large for int64 residues")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return (GF, (self.p,))

    def asarray(self, data):
        a = np.array(data, dtype=object)
        flat = a.reshape(-1)
        out = np.empty(flat.shape, dtype=np.int64)
        for i, x in enumerate(flat):
            out[i] = self.scalar(x)
        return out.reshape(a.shape)

    def reduce(self, a):
        return np.mod(a, self.p).astype(np.int64, copy=False)

    def scalar(self, x):
        if isinstance(x, GFElement):
            if x.p != self.p:
                raise FieldMismatch(f"{x!r} is not in {self.name}")
            return x.value
        if isinstance(x, (bool, np.bool_)):
            x = int(x)
        if isinstance(x, (int, np.integer)):
            return int(x) % self.p
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self.parse(x)
        raise FieldMismatch(f"cannot read {x!r} in {self.name}")

    def element(self, x):
        return GFElement(self.scalar(x), self.p)

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(x, -1, self.p)

    def div(self, x, y):
        return int(x) * self.inv(y) % self.p

    def parse(self, s):
        s = s.strip()
        if not s.isdigit() or (len(s) > 1 and s[0] == "0"):
            raise ScalarFormatError(f"bad residue {s!r} for {self.name}")
        v = int(s)
        if v >= self.p:
            raise ScalarFormatError(f"non-canonical residue {s!r} for {self.name}")
        return v

    def format(self, x):
        return str(int(x) % self.p)

    def from_int(self, k):
        return int(k) % self.p


QQ = Rationals()


def field_from_descriptor(desc):
    """``"Q"`` or ``"GF(p)"`` (also ``"F7"``-style) to a field."""
    d = desc.strip().replace(" ", "")
    if d in ("Q", "QQ"):
        return QQ
    for prefix in ("GF(", "F_", "F", "GF"):
        if d.startswith(prefix):
            body = d[len(prefix):].rstrip(")")
            if body.isdigit():
                return GF(int(body))
    raise ScalarFormatError(f"unknown field descriptor {desc!r}")


class GFElement:
    """An element of 𝔽_p.  Arithmetic across different moduli raises."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.value = int(value) % p
        self.p = p

    def _other(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other % self.p
        raise FieldMismatch(f"cannot combine GF({self.p}) with {type(other).__name__}")

    def __add__(self, other):
        return GFElement(self.value + self._other(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return GFElement(self.value - self._other(other), self.p)

    def __rsub__(self, other):
        return GFElement(self._other(other) - self.value, self.p)

    def __mul__(self, other):
        return GFElement(self.value * self._other(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return GFElement(-self.value, self.p)

    def __truediv__(self, other):
        return self * GFElement(pow(self._other(other), -1, self.p), self.p)

    def __rtruediv__(self, other):
        return GFElement(self._other(other), self.p) / self

    def __pow__(self, k):
        return GFElement(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        try:
            return self.value == self._other(other)
        except FieldMismatch:
            raise
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GFElement({self.value}, {self.p})"


# ---------------------------------------------------------------- tensors

def _safe_dtype(F, operands, summed):
    if F is QQ:
        return object
    bound = (F.p - 1) ** len(operands) * max(summed, 1)
    if bound < 2**53:
        return np.float64
    return np.int64 if bound < 2**62 else object


def _int_einsum(subscripts, ints, bound):
    """Integer einsum; below 2^53 every partial sum is exact in float64, which
    lets numpy hand products to BLAS."""
    if bound < 2**53:
        r = np.einsum(subscripts, *[np.asarray(a, dtype=np.float64) for a in ints],
                      optimize="greedy")
        return np.rint(np.asarray(r)).astype(np.int64)
    return np.asarray(np.einsum(subscripts, *[np.asarray(a).astype(np.int64) for a in ints],
                                optimize="greedy"))


def _qq_scaled(op):
    """(integer array, scale) with op = array / scale."""
    op = np.asarray(op, dtype=object)
    flat = op.reshape(-1)
    if flat.size == 0:
        return op, 1
    frac = np.fromiter(map(type, flat), dtype=object, count=flat.size) == Fraction
    if not frac.any():
        return op, 1
    fr = flat[frac]
    L = math.lcm(*{x.denominator for x in fr})
    out = np.empty(flat.shape, dtype=object)
    out[~frac] = flat[~frac] * L
    out[frac] = [x.numerator * (L // x.denominator) for x in fr]
    return out.reshape(op.shape), L


def _qq_fast(subscripts, operands, summed):
    """Rational contractions: clear denominators, contract integers (int64 when
    no overflow is possible), then divide once."""
    ints = []
    scale = 1
    bound = max(summed, 1)
    small = True
    for op in operands:
        a, L = _qq_scaled(op)
        scale *= L
        ints.append(a)
        if small:
            try:
                m = int(np.abs(a.astype(np.int64)).max()) if a.size else 0
                bound *= max(m, 1)
                small = bound < 2**62
            except OverflowError:
                small = False
    if small:
        r = _int_einsum(subscripts, ints, bound)
        if scale == 1:
            return r.astype(object)
        if scale < 2**62:
            return _int_over(r, scale)
        r = r.astype(object)
    else:
        r = np.asarray(np.einsum(subscripts, *ints, optimize="greedy"), dtype=object)
    if scale != 1:
        r = np.asarray(_div(r, scale), dtype=object)
    return r


def _int_over(r, scale):
    """int64 array / scale as canonical rationals; Fractions only where needed."""
    g = np.gcd(r, np.int64(scale))
    num = r // g
    den = np.int64(scale) // g
    out = num.astype(object)
    for idx in zip(*np.nonzero(den != 1)):
        out[idx] = Fraction(int(num[idx]), int(den[idx]))
    return out


_div = np.frompyfunc(lambda x, d: QQ.scalar(Fraction(int(x), d)), 2, 1)


def contract(F, subscripts, *operands):
    """``np.einsum`` over ``F`` with exact results.

    Residues stay below the int64 range: the worst-case magnitude of the
    unreduced sum is estimated up front and the computation falls back to
    Python integers when it could overflow.
    """
    lhs, _, out = subscripts.partition("->")
    if len(operands) > 2 and "." not in lhs:
        terms = list(zip(lhs.split(","), operands))
        return contract_network(F, [(tuple(t), op) for t, op in terms], tuple(out))
    sizes = {}
    for term, op in zip(lhs.split(","), operands):
        for ch, s in zip(term, np.shape(op)):
            sizes[ch] = s
    summed = 1
    for ch, s in sizes.items():
        if ch not in out:
            summed *= s
    if F is QQ:
        fast = _qq_fast(subscripts, operands, summed)
        if fast is not None:
            return fast
    dtype = _safe_dtype(F, operands, summed)
    if dtype is object and F is not QQ:
        operands = [np.asarray(op).astype(object) for op in operands]
        r = np.einsum(subscripts, *operands, optimize="greedy")
        return F.reduce(np.asarray(r)).astype(np.int64)
    if dtype is np.float64:
        return F.reduce(_int_einsum(subscripts, operands, 0))
    r = np.einsum(subscripts, *operands, optimize="greedy")
    return F.reduce(np.asarray(r, dtype=F.dtype))


def outer(F, *arrays):
    r = arrays[0]
    for a in arrays[1:]:
        r = np.multiply.outer(r, a)
    return F.reduce(r)


# ---------------------------------------------------------------- matrices

@dataclass(frozen=True, eq=False)
class Matrix:
    """Dense matrix over ``field``; ``data`` has shape (rows, cols)."""

    field: Field
    data: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        if self.data.ndim != 2:
            raise ValueError("matrix data must be 2-dimensional")

    @classmethod
    def of(cls, F, rows):
        return cls(F, F.asarray(rows).reshape(len(rows), -1) if len(rows) else F.zeros((0, 0)))

    @classmethod
    def identity(cls, F, n):
        return cls(F, F.eye(n))

    @classmethod
    def zero(cls, F, r, c):
        return cls(F, F.zeros((r, c)))

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if other.field is not self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __matmul__(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Matrix(self.field, contract(self.field, "ij,jk->ik", self.data, other.data))

    def __add__(self, other):
        self._check(other)
        return Matrix(self.field, self.field.reduce(self.data + other.data))

    def __sub__(self, other):
        self._check(other)
        return Matrix(self.field, self.field.reduce(self.data - other.data))

    def __neg__(self):
        return Matrix(self.field, self.field.reduce(-self.data))

    def scale(self, c):
        return Matrix(self.field, self.field.reduce(self.data * self.field.scalar(c)))

    def apply(self, v):
        return contract(self.field, "ij,j->i", self.data, np.asarray(v))

    @property
    def T(self):
        return Matrix(self.field, self.data.T.copy())

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (other.field is self.field and self.shape == other.shape
                and not np.any(self.data != other.data))

    __hash__ = None

    def is_identity(self):
        return self.rows == self.cols and self == Matrix.identity(self.field, self.rows)

    def entries(self):
        return [self.data[i, j] for i in range(self.rows) for j in range(self.cols)]


def kron(A, B):
    """(A⊗B)[i·rB+k, j·cB+l] = A[i,j]·B[k,l]."""
    A._check(B)
    return Matrix(A.field, A.field.reduce(np.kron(A.data, B.data)))


def kron_all(*ms):
    return functools.reduce(kron, ms)


# ---------------------------------------------------------------- elimination

def rref(F, a):
    """Reduced row echelon form of the array ``a`` and its pivot columns."""
    m = F.reduce(np.array(a, dtype=F.dtype, copy=True))
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c] != 0)[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = F.reduce(m[r] * F.inv(m[r, c]))
        col = m[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col != 0)[0]
        if len(hit):
            m[hit] = F.reduce(m[hit] - np.multiply.outer(col[hit], m[r]))
        pivots.append(c)
        r += 1
    return m, pivots


def rank(F, a):
    return len(rref(F, a)[1])


def nullspace(F, a):
    """Basis of {v : a v = 0}, returned as the rows of a matrix in reduced echelon form."""
    a = np.asarray(a)
    cols = a.shape[1]
    R, piv = rref(F, a)
    free = [c for c in range(cols) if c not in piv]
    basis = F.zeros((len(free), cols))
    for t, f in enumerate(free):
        basis[t, f] = F.one
        for i, pc in enumerate(piv):
            basis[t, pc] = F.reduce(np.array([-R[i, f]], dtype=F.dtype))[0]
    if len(free) == 0:
        return basis
    return rref(F, basis)[0]


@dataclass(frozen=True, eq=False)
class SolutionSpace:
    """particular + span(kernel_basis); ``particular`` is None for an inconsistent system."""

    field: Field
    particular: np.ndarray | None
    kernel_basis: np.ndarray

    @property
    def consistent(self):
        return self.particular is not None

    @property
    def dim(self):
        return self.kernel_basis.shape[0] if self.consistent else -1

    def member(self, coeffs):
        v = self.particular.copy()
        for c, k in zip(coeffs, self.kernel_basis):
            v = self.field.reduce(v + self.field.scalar(c) * k)
        return v


def solve(A, b):
    """All solutions of A x = b by exact elimination."""
    F = A.field
    b = np.asarray(b)
    if b.shape != (A.rows,):
        raise ValueError("right-hand side length must equal A.rows")
    aug = np.concatenate([A.data, F.reduce(np.asarray(b, dtype=F.dtype)).reshape(-1, 1)], axis=1)
    R, piv = rref(F, aug)
    n = A.cols
    kernel = nullspace(F, A.data)
    if n in piv:
        return SolutionSpace(F, None, kernel)
    x = F.zeros(n)
    for i, pc in enumerate(piv):
        x[pc] = R[i, n]
    return SolutionSpace(F, x, kernel)


def invert(A):
    if A.rows != A.cols:
        raise ValueError("only square matrices are invertible")
    F = A.field
    n = A.rows
    R, piv = rref(F, np.concatenate([A.data, F.eye(n)], axis=1))
    if piv[:n] != list(range(n)):
        raise Singular("matrix is singular")
    return Matrix(F, R[:, n:].copy())


def try_invert(A):
    try:
        return invert(A)
    except Singular:
        return None


def column_space(F, a):
    """Basis (as columns) of the column space of ``a``, in canonical echelon form."""
    a = np.asarray(a)
    if a.shape[1] == 0:
        return F.zeros((a.shape[0], 0))
    R, piv = rref(F, a.T)
    return R[: len(piv)].T.copy()


def contract_network(F, terms, output):
    """Sum of products over a tensor network.

    ``terms`` is a list of (labels, array) with hashable labels; ``output`` the
    labels of the result.  Pairs are contracted greedily by smallest
    intermediate, each pairwise product being reduced in ``F`` right away.
    """
    output = tuple(output)
    work = [(tuple(l), np.asarray(a)) for l, a in terms]
    sizes = {}
    for labels, a in work:
        if len(labels) != a.ndim:
            raise ValueError(f"labels {labels} do not match array of rank {a.ndim}")
        for lab, s in zip(labels, a.shape):
            if sizes.setdefault(lab, s) != s:
                raise ValueError(f"inconsistent size for label {lab!r}")

    def letters(*groups):
        m = {}
        for g in groups:
            for lab in g:
                if lab not in m:
                    m[lab] = _LETTERS[len(m)]
        return m

    def needed_elsewhere(skip):
        keep = set(output)
        for t, (labels, _) in enumerate(work):
            if t not in skip:
                keep.update(labels)
        return keep

    def reduce_single(t):
        labels, a = work[t]
        keep = needed_elsewhere({t})
        out = tuple(dict.fromkeys(l for l in labels if l in keep))
        if out != labels:
            m = letters(labels)
            sub = "".join(m[l] for l in labels) + "->" + "".join(m[l] for l in out)
            a = contract(F, sub, a)
            work[t] = (out, a)

    for t in range(len(work)):
        reduce_single(t)
    while len(work) > 1:
        best = None
        for i in range(len(work)):
            for j in range(i + 1, len(work)):
                li, lj = work[i][0], work[j][0]
                shared = set(li) & set(lj)
                keep = needed_elsewhere({i, j})
                res = tuple(dict.fromkeys(l for l in li + lj if l in keep))
                size = 1
                for l in res:
                    size *= sizes[l]
                key = (not shared, size)
                if best is None or key < best[0]:
                    best = (key, i, j, res)
        _, i, j, res = best
        (li, ai), (lj, aj) = work[i], work[j]
        m = letters(li, lj)
        sub = ("".join(m[l] for l in li) + "," + "".join(m[l] for l in lj) + "->"
               + "".join(m[l] for l in res))
        r = contract(F, sub, ai, aj)
        work = [w for k, w in enumerate(work) if k not in (i, j)] + [(res, r)]
    labels, a = work[0]
    missing = [l for l in output if l not in labels]
    if missing:
        raise ValueError(f"output labels {missing} do not occur in the network")
    m = letters(labels)
    return contract(F, "".join(m[l] for l in labels) + "->" + "".join(m[l] for l in output), a)


_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


# ---------------------------------------------------------------- raw-array helpers

def mm(F, *ms):
    """Matrix product of raw arrays, left to right."""
    out = ms[0]
    for m in ms[1:]:
        out = contract(F, "ij,jk->ik", out, m)
    return out


def akron(F, *ms):
    out = ms[0]
    for m in ms[1:]:
        out = F.reduce(np.kron(out, m))
    return out


def ainv(F, a):
    return invert(Matrix(F, np.asarray(a))).data


def solve_matrix(F, A, B):
    """X with A X = B, or None when some column of B is outside the image of A."""
    A = np.asarray(A)
    B = np.asarray(B)
    n = A.shape[1]
    R, piv = rref(F, np.concatenate([A, B], axis=1))
    if any(p >= n for p in piv):
        return None
    X = F.zeros((n, B.shape[1]))
    for r, p in enumerate(piv):
        X[p] = R[r, n:]
    return X
