"""n-qubit pure states with floating and exact-rational amplitude backends.

Conventions used throughout the package:

* Qubits are numbered 1..n and bit 1 is the most significant, so the basis
  label |i_1 i_2 ... i_n> corresponds to the integer code
  sum_k i_k * 2**(n-k).
* Floating states are normalized when constructed.  Exact states keep their
  (generally unnormalizable-in-rationals) representative and record the
  squared norm instead; every rank computed from them is scale invariant,
  so nothing downstream needs the unit-norm representative.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .rational import RC_ONE, RC_ZERO, RationalComplex, as_fraction, fraction_str

FLOAT = "float"
EXACT = "exact"

#: Amplitudes with squared norm at or below this are treated as annihilated
#: by contract_pair in floating mode.
CONTRACTION_ZERO_TOL = 1e-12


class ZeroStateError(ValueError):
    """Raised when amplitudes describe the zero vector, which is not a state."""


class ZeroResidualError(ValueError):
    """Contraction against the canonical pair state annihilated the input."""


# ---------------------------------------------------------------------------
# multi-indices
# ---------------------------------------------------------------------------


def _mask(n: int, k: int) -> int:
    if not 1 <= k <= n:
        raise ValueError(f"qubit index {k} out of range 1..{n}")
    return 1 << (n - k)


@dataclass(frozen=True)
class MultiIndex:
    """Binary multi-index (i_1, ..., i_n); bit 1 is the most significant.

    Also usable as a plain integer code via ``.code`` or ``int(idx)``.
    """

    n: int
    code: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("qubit count must be nonnegative")
        if not 0 <= self.code < (1 << self.n):
            raise ValueError(f"code {self.code} out of range for {self.n} qubits")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "MultiIndex":
        code = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bits must be 0 or 1, got {b!r}")
            code = (code << 1) | b
        return cls(len(bits), code)

    @property
    def bits(self) -> tuple:
        return tuple((self.code >> (self.n - k)) & 1 for k in range(1, self.n + 1))

    def bit(self, k: int) -> int:
        """The k-th bit (1-based from the left)."""
        if not 1 <= k <= self.n:
            raise ValueError(f"qubit index {k} out of range 1..{self.n}")
        return (self.code >> (self.n - k)) & 1

    def flip(self, k: int) -> "MultiIndex":
        return MultiIndex(self.n, self.code ^ _mask(self.n, k))

    def flip2(self, k: int, l: int) -> "MultiIndex":
        if k == l:
            raise ValueError("flip2 needs two distinct qubit positions")
        return MultiIndex(self.n, self.code ^ _mask(self.n, k) ^ _mask(self.n, l))

    def __int__(self) -> int:
        return self.code

    def __index__(self) -> int:
        return self.code


def flip_bit(index: MultiIndex, k: int) -> MultiIndex:
    """Flip the k-th bit of a multi-index."""
    return index.flip(k)


def as_code(index, n: int) -> int:
    """Coerce a MultiIndex, integer code, bit sequence, or bit string to a code."""
    if isinstance(index, MultiIndex):
        if index.n != n:
            raise ValueError(f"multi-index is for {index.n} qubits, expected {n}")
        return index.code
    if isinstance(index, str):
        if len(index) != n or any(c not in "01" for c in index):
            raise ValueError(f"bit string {index!r} does not describe {n} qubits")
        return int(index, 2) if n else 0
    if isinstance(index, (tuple, list)):
        if len(index) != n:
            raise ValueError(f"expected {n} bits, got {len(index)}")
        return MultiIndex.from_bits(index).code
    code = int(index)
    if not 0 <= code < (1 << n):
        raise ValueError(f"basis code {code} out of range for {n} qubits")
    return code


# ---------------------------------------------------------------------------
# state vectors
# ---------------------------------------------------------------------------


class StateVector:
    """Immutable n-qubit pure state in one of two numeric modes.

    ``float`` mode stores a unit-norm complex128 array.  ``exact`` mode
    stores RationalComplex amplitudes exactly as given (no normalization)
    together with the squared norm of that representative.
    """

    __slots__ = ("_n", "_mode", "_vec", "_sqnorm")

    def __init__(self, amplitudes, mode: Optional[str] = None):
        if mode is None:
            mode = _infer_mode(amplitudes)
        if mode == FLOAT:
            vec = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
            n = _qubit_count(vec.size)
            norm = float(np.linalg.norm(vec))
            if norm == 0.0:
                raise ZeroStateError("state vector must be nonzero")
            vec = vec / norm
            vec.flags.writeable = False
            self._vec = vec
            self._sqnorm = 1.0
        elif mode == EXACT:
            vec = tuple(RationalComplex.from_value(a) for a in amplitudes)
            n = _qubit_count(len(vec))
            sqnorm = sum((a.abs2() for a in vec), Fraction(0))
            if sqnorm == 0:
                raise ZeroStateError("state vector must be nonzero")
            self._vec = vec
            self._sqnorm = sqnorm
        else:
            raise ValueError(f"unknown mode {mode!r}")
        self._n = n
        self._mode = mode

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_complex(cls, values) -> "StateVector":
        return cls(values, mode=FLOAT)

    @classmethod
    def from_rational(cls, values) -> "StateVector":
        return cls(values, mode=EXACT)

    # -- basic accessors ----------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def mode(self) -> str:
        return self._mode

    @property
    def vector(self):
        """The underlying amplitudes: a read-only ndarray or a tuple."""
        return self._vec

    @property
    def dim(self) -> int:
        return 1 << self._n

    @property
    def norm_squared(self):
        """1.0 in float mode; the representative's squared norm in exact mode."""
        return self._sqnorm

    def amplitude(self, index):
        return self._vec[as_code(index, self._n)]

    def to_float(self) -> "StateVector":
        """Convert to the floating backend (normalizing); no-op if already float."""
        if self._mode == FLOAT:
            return self
        return StateVector([a.to_complex() for a in self._vec], mode=FLOAT)

    # -- comparisons --------------------------------------------------------

    def allclose(self, other: "StateVector", tol: float = 1e-12) -> bool:
        if self._mode != FLOAT or other._mode != FLOAT:
            raise ValueError("allclose compares floating-mode states")
        return self._n == other._n and bool(
            np.allclose(self._vec, other._vec, atol=tol, rtol=0.0)
        )

    def proportional_to(self, other: "StateVector", tol: float = 1e-10) -> bool:
        """True when the two states agree up to a global complex scale."""
        if self._n != other._n:
            return False
        if self._mode != other._mode:
            raise ValueError("proportional_to compares states in the same mode")
        if self._mode == FLOAT:
            pivot = int(np.argmax(np.abs(other._vec)))
            ratio = self._vec[pivot] / other._vec[pivot]
            return bool(np.allclose(self._vec, ratio * other._vec, atol=tol, rtol=0.0))
        pivot = next(i for i, a in enumerate(other._vec) if not a.is_zero)
        if self._vec[pivot].is_zero:
            return False
        ratio = self._vec[pivot] / other._vec[pivot]
        return all(a == ratio * b for a, b in zip(self._vec, other._vec))

    def __repr__(self) -> str:
        return f"StateVector(n={self._n}, mode={self._mode!r})"

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        """Schema: {"n": int, "mode": "float"|"exact", "amplitudes": [[re, im], ...]}.

        Amplitudes are ordered by integer code.  Exact mode writes 'p/q'
        strings; float mode writes numbers.
        """
        if self._mode == FLOAT:
            amps = [[float(a.real), float(a.imag)] for a in self._vec]
        else:
            amps = [[fraction_str(a.re), fraction_str(a.im)] for a in self._vec]
        return {"n": self._n, "mode": self._mode, "amplitudes": amps}

    @classmethod
    def from_json_dict(cls, data: dict) -> "StateVector":
        if not isinstance(data, dict):
            raise ValueError("state file must hold a JSON object")
        try:
            n = data["n"]
            mode = data["mode"]
            amps = data["amplitudes"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"state object missing field: {exc}") from exc
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"invalid qubit count {n!r}")
        if mode not in (FLOAT, EXACT):
            raise ValueError(f"invalid mode {mode!r}")
        if not isinstance(amps, list) or len(amps) != (1 << n):
            raise ValueError(f"expected {1 << n} amplitudes for n={n}")
        entries = []
        for pair in amps:
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise ValueError(f"amplitude entries must be [re, im] pairs, got {pair!r}")
            re, im = pair
            if mode == FLOAT:
                if isinstance(re, bool) or isinstance(im, bool):
                    raise ValueError("amplitude parts must be numbers")
                if not isinstance(re, (int, float)) or not isinstance(im, (int, float)):
                    raise ValueError(f"float amplitudes must be numeric, got {pair!r}")
                entries.append(complex(re, im))
            else:
                entries.append(RationalComplex(as_fraction(_exact_part(re)), as_fraction(_exact_part(im))))
        return cls(entries, mode=mode)


def _exact_part(value):
    if isinstance(value, bool):
        raise ValueError("amplitude parts must be rationals, not booleans")
    if isinstance(value, (str, int)):
        return value
    raise ValueError(f"exact amplitudes must be 'p/q' strings or integers, got {value!r}")


def _infer_mode(amplitudes) -> str:
    for a in amplitudes:
        return EXACT if isinstance(a, RationalComplex) else FLOAT
    raise ValueError("state vector must be nonempty")


def _qubit_count(size: int) -> int:
    n = size.bit_length() - 1
    if size <= 0 or (1 << n) != size:
        raise ValueError(f"amplitude count {size} is not a power of two")
    return n


def save_state(psi: StateVector, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(psi.to_json_dict(), fh, indent=2)
        fh.write("\n")


def load_state(path) -> StateVector:
    with open(path, "r", encoding="utf-8") as fh:
        return StateVector.from_json_dict(json.load(fh))


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def basis_state(n: int, index, mode: str = FLOAT) -> StateVector:
    """The computational basis state |index> on n qubits."""
    if n < 0:
        raise ValueError("qubit count must be nonnegative")
    code = as_code(index, n)
    if mode == FLOAT:
        vec = np.zeros(1 << n, dtype=np.complex128)
        vec[code] = 1.0
        return StateVector(vec, mode=FLOAT)
    entries = [RC_ONE if i == code else RC_ZERO for i in range(1 << n)]
    return StateVector(entries, mode=EXACT)


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Tensor product; the first factor supplies the leading (leftmost) qubits."""
    if a.mode != b.mode:
        raise ValueError("tensor factors must share a numeric mode")
    if a.mode == FLOAT:
        return StateVector(np.kron(a.vector, b.vector), mode=FLOAT)
    nb = b.dim
    entries = [a.vector[i] * b.vector[j] for i in range(a.dim) for j in range(nb)]
    return StateVector(entries, mode=EXACT)


def embed_product(n: int, placements) -> StateVector:
    """Assemble a product state from factors placed on given qubit positions.

    ``placements`` is an iterable of ``(positions, factor)`` pairs where
    ``positions`` lists 1-based qubit numbers (in the factor's own order)
    and the positions across all placements partition {1..n}.
    """
    placements = [(tuple(pos), st) for pos, st in placements]
    seen: set = set()
    for pos, st in placements:
        if len(pos) != st.n:
            raise ValueError(f"factor on {len(pos)} positions has {st.n} qubits")
        for p in pos:
            if not 1 <= p <= n:
                raise ValueError(f"qubit position {p} out of range 1..{n}")
            if p in seen:
                raise ValueError(f"qubit position {p} assigned twice")
            seen.add(p)
    if seen != set(range(1, n + 1)):
        raise ValueError("placements must cover qubits 1..n exactly")
    modes = {st.mode for _, st in placements}
    if len(modes) > 1:
        raise ValueError("all factors must share a numeric mode")
    mode = modes.pop()

    def sub_code(code: int, pos: tuple) -> int:
        sub = 0
        for p in pos:
            sub = (sub << 1) | ((code >> (n - p)) & 1)
        return sub

    if mode == FLOAT:
        out = np.ones(1 << n, dtype=np.complex128)
        for pos, st in placements:
            vec = st.vector
            out *= np.array([vec[sub_code(c, pos)] for c in range(1 << n)])
        return StateVector(out, mode=FLOAT)
    out = [RC_ONE] * (1 << n)
    for pos, st in placements:
        vec = st.vector
        out = [out[c] * vec[sub_code(c, pos)] for c in range(1 << n)]
    return StateVector(out, mode=EXACT)


def canonical_pair_state(mode: str = FLOAT) -> StateVector:
    """The canonical two-qubit pair state (|00> + |11>)/sqrt(2)."""
    if mode == FLOAT:
        return StateVector([1.0, 0.0, 0.0, 1.0], mode=FLOAT)
    return StateVector([RC_ONE, RC_ZERO, RC_ZERO, RC_ONE], mode=EXACT)


def _check_pairing(n: int, pairs, lone) -> list:
    norm_pairs = []
    seen: set = set()
    for pair in pairs:
        a, b = pair
        if a == b:
            raise ValueError(f"pair ({a},{b}) repeats a qubit")
        lo, hi = (a, b) if a < b else (b, a)
        for p in (lo, hi):
            if not 1 <= p <= n:
                raise ValueError(f"qubit {p} out of range 1..{n}")
            if p in seen:
                raise ValueError(f"overlapping pairs: qubit {p} appears twice")
            seen.add(p)
        norm_pairs.append((lo, hi))
    if n % 2 == 0:
        if lone is not None:
            raise ValueError("even qubit counts admit no lone qubit")
        if seen != set(range(1, n + 1)):
            raise ValueError("pairs must cover qubits 1..n")
    else:
        if lone is None:
            raise ValueError("odd qubit counts require a lone qubit")
        if not 1 <= lone <= n:
            raise ValueError(f"lone qubit {lone} out of range 1..{n}")
        if lone in seen:
            raise ValueError(f"lone qubit {lone} collides with a pair")
        if seen | {lone} != set(range(1, n + 1)):
            raise ValueError("pairs plus lone qubit must cover qubits 1..n")
    return norm_pairs


def singlet_product(n: int, pairs, lone: Optional[int] = None, mode: str = FLOAT) -> StateVector:
    """Product of canonical pair states on ``pairs`` with |0> on the lone qubit.

    Args:
        n: total qubit count.
        pairs: iterable of 2-tuples of 1-based qubit numbers; must be
            disjoint and, together with ``lone``, cover 1..n.
        lone: leftover qubit for odd n (gets |0>); must be None for even n.
        mode: "float" (normalized) or "exact" (unnormalized representative).
    """
    if n < 1:
        raise ValueError("qubit count must be at least 1")
    norm_pairs = _check_pairing(n, pairs, lone)
    size = 1 << n

    def occupied(code: int) -> bool:
        if lone is not None and (code >> (n - lone)) & 1:
            return False
        for lo, hi in norm_pairs:
            if ((code >> (n - lo)) & 1) != ((code >> (n - hi)) & 1):
                return False
        return True

    hits = [code for code in range(size) if occupied(code)]
    if mode == EXACT:
        hit_set = set(hits)
        entries = [RC_ONE if code in hit_set else RC_ZERO for code in range(size)]
        return StateVector(entries, mode=EXACT)
    vec = np.zeros(size, dtype=np.complex128)
    vec[hits] = 1.0
    return StateVector(vec, mode=FLOAT)


def random_state(n: int, seed) -> StateVector:
    """Haar-uniform n-qubit state from 2**(n+1) standard Gaussians."""
    if n < 1:
        raise ValueError("qubit count must be at least 1")
    rng = np.random.default_rng(seed)
    parts = rng.standard_normal((2, 1 << n))
    return StateVector(parts[0] + 1j * parts[1], mode=FLOAT)


def random_rational_state(n: int, seed, span: int = 9) -> StateVector:
    """Random exact-mode state with small-fraction amplitudes (unnormalized)."""
    if n < 1:
        raise ValueError("qubit count must be at least 1")
    rng = np.random.default_rng(seed)
    while True:
        nums = rng.integers(-span, span + 1, size=(2, 1 << n))
        dens = rng.integers(1, 5, size=(2, 1 << n))
        if np.any(nums):
            break
    entries = [
        RationalComplex(
            Fraction(int(nums[0, i]), int(dens[0, i])),
            Fraction(int(nums[1, i]), int(dens[1, i])),
        )
        for i in range(1 << n)
    ]
    return StateVector(entries, mode=EXACT)


# ---------------------------------------------------------------------------
# contraction
# ---------------------------------------------------------------------------


def _insert_bit(code: int, m: int, p: int, b: int) -> int:
    """Insert bit ``b`` at 1-based position ``p`` of an m-bit code."""
    shift = m - p + 1
    upper = code >> shift
    lower = code & ((1 << shift) - 1)
    return (upper << (shift + 1)) | (b << shift) | lower


def contract_pair(psi: StateVector, l: int, lp: int) -> StateVector:
    """Partial inner product with the canonical pair state on qubits (l, lp).

    Returns the (n-2)-qubit residual, normalized in float mode.  Raises
    ZeroResidualError when the contraction annihilates psi (the pair is
    LU-equivalent to, but not equal to, the canonical pair state).
    """
    n = psi.n
    if n < 2:
        raise ValueError("contraction needs at least two qubits")
    if l == lp:
        raise ValueError("contraction needs two distinct qubits")
    for p in (l, lp):
        if not 1 <= p <= n:
            raise ValueError(f"qubit {p} out of range 1..{n}")
    lo, hi = (l, lp) if l < lp else (lp, l)
    rest = 1 << (n - 2)
    codes0 = [_insert_bit(_insert_bit(j, n - 2, lo, 0), n - 1, hi, 0) for j in range(rest)]
    codes1 = [_insert_bit(_insert_bit(j, n - 2, lo, 1), n - 1, hi, 1) for j in range(rest)]
    if psi.mode == FLOAT:
        vec = psi.vector
        out = (vec[np.array(codes0)] + vec[np.array(codes1)]) / math.sqrt(2.0)
        if float(np.linalg.norm(out)) <= CONTRACTION_ZERO_TOL:
            raise ZeroResidualError(
                f"contracting qubits ({l},{lp}) annihilated the state"
            )
        return StateVector(out, mode=FLOAT)
    vec = psi.vector
    out = [vec[c0] + vec[c1] for c0, c1 in zip(codes0, codes1)]
    if all(a.is_zero for a in out):
        raise ZeroResidualError(f"contracting qubits ({l},{lp}) annihilated the state")
    return StateVector(out, mode=EXACT)
