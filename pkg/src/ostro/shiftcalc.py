"""Digit-shift calculus over Ostrowski representations.

The objects here are eventually-zero digit maps (position -> value)
together with two families of evaluation functionals:

    weighted_q_sum(x, u, l)    = sqrt(d) * sum_k x[k] * u[k mod t] * q_{k+l}
    weighted_beta_sum(x, u, l) =           sum_k x[k] * u[k mod t] * beta_{k+l}

The weight index is the residue of the digit's *original* position mod
t, while the convergent index is shifted by l.  (Composing "shift the
map, then evaluate unshifted" instead pairs weights with the shifted
residues; the two differ by a rotation of u.  The identities below need
the original-residue pairing; see the composition test suite.)

Two recovery identities are audited per digit string x of a natural n:

  * frac recovery: the beta-value of x equals (-1)^m * U times the
    all-ones beta sum of x shifted by the period length m, where U is
    the unit q_{m-1} sqrt(d) + p_{m-1}.  The commonly printed constant
    q_m sqrt(d) + q_{m-1} + a0 q_m is also evaluated and reported.
  * nat recovery: n itself is recovered from the four weighted sums with
    the shift constants v (at shift 1) and w (at shift 0).  The variant
    with the w-terms also taken at shift 1 (an index slip seen in print)
    is reported alongside.

On top of these sit representation-level multiplication by sqrt(d)
(exact on naturals and on interval values, eps-certified on arbitrary
non-negative inputs) and the digit-extraction probes that mirror the
first-order definability arguments: prefix windows, digit windows, and
periodic residue-class witnesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cfrac import CFData, ShiftConstants
from .errors import (
    DepthExceeded,
    InvalidDigits,
    OutOfDomain,
    VerificationFailed,
    WitnessUnavailable,
)
from .ostrowski import (
    KIND_REAL,
    OstDigits,
    decode_nat,
    decode_real,
    encode_nat,
    encode_real,
    in_interval,
    make_digits,
    mult_nat_by_sqrt,
    tail_window,
    validate,
)
from .qfield import QuadRat, parse_rat

_F0 = Fraction(0)


@dataclass(frozen=True)
class GenDigits:
    """An eventually-zero digit map: sorted (position, value) pairs.

    Values are bounded by s_max (the largest partial quotient), so every
    Ostrowski digit string embeds, but arbitrary bounded maps are allowed
    too: the evaluation functionals do not need the adjacency constraint.
    """

    cf: CFData
    items: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.items)

    @property
    def max_pos(self) -> int:
        return self.items[-1][0] if self.items else -1

    def __str__(self) -> str:
        body = ";".join(f"{k}:{v}" for k, v in self.items)
        return body + f"@d={self.cf.d}"


def gen_digits(cf: CFData, mapping) -> GenDigits:
    """Build a GenDigits from any {position: value} mapping, validating bounds."""
    items = []
    for k, v in sorted(dict(mapping).items()):
        if v == 0:
            continue
        if k < 0 or not (0 < v <= cf.s_max):
            raise InvalidDigits(f"entry {k}:{v} out of range (s_max={cf.s_max})")
        items.append((int(k), int(v)))
    return GenDigits(cf, tuple(items))


def parse_gen_digits(text: str) -> tuple[dict[int, int], Fraction | None]:
    """Parse ``k1:v1;k2:v2@d=<rational>`` into (mapping, d)."""
    s = text.strip()
    d = None
    if "@" in s:
        s, _, suffix = s.partition("@")
        if not suffix.startswith("d="):
            raise ValueError(f"suffix must be @d=<rational>: {text!r}")
        d = parse_rat(suffix[2:])
    mapping: dict[int, int] = {}
    if s.strip():
        for part in s.split(";"):
            k, _, v = part.partition(":")
            mapping[int(k)] = int(v)
    return mapping, d


def embed(x: OstDigits) -> GenDigits:
    """Embed a valid Ostrowski digit string as a digit map."""
    ok, idx = validate(x)
    if not ok:
        raise InvalidDigits(f"digit constraint violated at position {idx}")
    return GenDigits(x.cf, tuple((k, b) for k, b in enumerate(x.digits) if b))


def shift(x: GenDigits, l: int) -> GenDigits:
    """Translate every position up by l (the value at k+l is x's at k)."""
    if l < 0:
        raise ValueError(f"shift must be non-negative, got {l}")
    return GenDigits(x.cf, tuple((k + l, v) for k, v in x.items))


@dataclass(frozen=True)
class Weights:
    """A rational weight vector indexed by residue classes mod t."""

    values: tuple[Fraction, ...]

    @classmethod
    def of(cls, seq) -> "Weights":
        return cls(tuple(Fraction(v) for v in seq))

    @classmethod
    def ones(cls, t: int) -> "Weights":
        return cls((Fraction(1),) * t)

    def __len__(self) -> int:
        return len(self.values)

    def scaled(self) -> tuple[tuple[int, ...], int]:
        """Integer numerators over one common denominator (memoized)."""
        cached = self.__dict__.get("_scaled")
        if cached is None:
            den = math.lcm(*(v.denominator for v in self.values))
            cached = tuple(v.numerator * (den // v.denominator) for v in self.values), den
            object.__setattr__(self, "_scaled", cached)
        return cached


def _residue_dots(x: GenDigits, t: int, l: int) -> tuple[list[int], list[int]]:
    """Per-residue integer dot products of x against q_{k+l} and p_{k+l}."""
    cf = x.cf
    if x.items and x.max_pos + l > cf.depth:
        raise DepthExceeded(
            f"shifted index {x.max_pos + l} exceeds depth {cf.depth}"
        )
    acc_q = [0] * t
    acc_p = [0] * t
    qs, ps = cf.conv_q, cf.conv_p
    for k, v in x.items:
        i = k % t
        acc_q[i] += v * qs[k + l + 1]
        acc_p[i] += v * ps[k + l + 1]
    return acc_q, acc_p


@lru_cache(maxsize=None)
def _ones(t: int) -> Weights:
    return Weights.ones(t)


@lru_cache(maxsize=None)
def _cached_weights(values: tuple) -> Weights:
    return Weights(values)


def _sigma_f_pair(x: GenDigits, u: Weights, l: int) -> tuple[QuadRat, QuadRat]:
    """(weighted_q_sum, weighted_beta_sum) of x from a single dot pass."""
    acc_q, acc_p = _residue_dots(x, len(u), l)
    nums, den = u.scaled()
    tq = Fraction(sum(n * a for n, a in zip(nums, acc_q)), den)
    tp = Fraction(sum(n * a for n, a in zip(nums, acc_p)), den)
    d = x.cf.d
    return QuadRat(_F0, tq, d), QuadRat(-tp, tq, d)


def weighted_q_sum(x: GenDigits, u: Weights, l: int = 0) -> QuadRat:
    """sqrt(d) * sum_k x[k] * u[k mod t] * q_{k+l}, exactly."""
    return _sigma_f_pair(x, u, l)[0]


def weighted_beta_sum(x: GenDigits, u: Weights, l: int = 0) -> QuadRat:
    """sum_k x[k] * u[k mod t] * beta_{k+l}, exactly."""
    return _sigma_f_pair(x, u, l)[1]


# ---------------------------------------------------------------------------
# recovery identities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AuditEntry:
    """One audited instance of a recovery identity.

    lhs and rhs hold the exact values; they are stringified only when the
    entry is serialized.
    """

    lemma: str
    n: int
    printed: str  # "holds" | "fails"
    corrected: str
    lhs: object
    rhs: object

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "n": self.n,
            "printed": self.printed,
            "corrected": self.corrected,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
        }


def _verdict(ok: bool) -> str:
    return "holds" if ok else "fails"


def check_recover_frac(x: OstDigits, sc: ShiftConstants) -> AuditEntry:
    """Audit: beta-value of x == (-1)^m * U * (all-ones beta sum at shift m)."""
    cf = x.cf
    m = cf.m
    lhs = decode_real(x)
    y = weighted_beta_sum(embed(x), _ones(cf.t), m)
    uy = sc.unit * y
    rhs = uy if m % 2 == 0 else -uy
    printed_const = QuadRat(Fraction(cf.q(m - 1) + cf.a0 * cf.q(m)), Fraction(cf.q(m)), cf.d)
    py = printed_const * y
    rhs_printed = py if m % 2 == 0 else -py
    return AuditEntry(
        lemma="frac-recovery",
        n=decode_nat(x),
        printed=_verdict(rhs_printed == lhs),
        corrected=_verdict(rhs == lhs),
        lhs=lhs,
        rhs=rhs,
    )


def check_recover_nat(x: OstDigits, sc: ShiftConstants) -> AuditEntry:
    """Audit: n == Sigma_v(shift 1) - F_v(shift 1) + Sigma_w(shift 0) - F_w(shift 0).

    The q-sums minus beta-sums turn each q_{k+l} sqrt(d) - beta_{k+l}
    into p_{k+l}, so with the shift constants the whole thing collapses
    to sum_k x[k] q_k = n.  The printed variant takes the w-terms at
    shift 1 as well.
    """
    cf = x.cf
    n = decode_nat(x)
    emb = embed(x)
    v = _cached_weights(sc.v)
    w = _cached_weights(sc.w)
    sig_v1, f_v1 = _sigma_f_pair(emb, v, 1)
    sig_w0, f_w0 = _sigma_f_pair(emb, w, 0)
    sig_w1, f_w1 = _sigma_f_pair(emb, w, 1)
    val = sig_v1 - f_v1 + sig_w0 - f_w0
    val_printed = sig_v1 - f_v1 + sig_w1 - f_w1
    target = QuadRat(Fraction(n), _F0, cf.d)
    return AuditEntry(
        lemma="nat-recovery",
        n=n,
        printed=_verdict(val_printed == target),
        corrected=_verdict(val == target),
        lhs=n,
        rhs=val,
    )


# ---------------------------------------------------------------------------
# multiplication by sqrt(d) at representation level
# ---------------------------------------------------------------------------


def times_sqrt_frac(x: OstDigits, sc: ShiftConstants) -> QuadRat:
    """sqrt(d) times the beta-value of x, assembled from shifted digit sums.

    With a = q_{m-1}, b = p_{m-1} (so U = a sqrt(d) + b):
        sqrt(d) * f = ((a^2 d - b^2) / a) * (f / U) + (b / a) * f
    and f / U is realized representationally as (-1)^m times the
    all-ones beta sum of the m-shifted digits.  The result is verified
    against the direct product before returning.
    """
    cf = x.cf
    f = decode_real(x)
    y = weighted_beta_sum(embed(x), _ones(cf.t), cf.m)
    fu = y if cf.m % 2 == 0 else -y
    a, b = sc.a_const, sc.b_const
    c1 = sc.pell_norm / a
    c2 = Fraction(b, a)
    result = QuadRat(c1 * fu.a + c2 * f.a, c1 * fu.b + c2 * f.b, cf.d)
    if result != cf.sqrt_d() * f:
        raise VerificationFailed(f"shifted-digit product disagrees for {x}")
    return result


def times_sqrt_nat(n: int, cf: CFData, sc: ShiftConstants) -> QuadRat:
    """n * sqrt(d) split through its digits: integer part plus interval part."""
    x = encode_nat(n, cf)
    whole, frac = mult_nat_by_sqrt(x)
    result = QuadRat(Fraction(whole), Fraction(0), cf.d) + decode_real(frac)
    if result != QuadRat(Fraction(0), Fraction(n), cf.d):
        raise VerificationFailed(f"digit split of {n}*sqrt({cf.d}) is off")
    entry = check_recover_frac(x, sc)
    if entry.corrected != "holds":
        raise VerificationFailed(f"frac recovery failed for n={n}, d={cf.d}")
    return result


def times_sqrt_real(x, eps, cf: CFData, sc: ShiftConstants) -> QuadRat:
    """sqrt(d) * x for any x >= 0, certified to |error| < eps.

    x is reduced mod 1 into the fundamental interval, encoded to enough
    digits that the tail (times sqrt(d)) is below eps, and the shifted
    digit machinery supplies the product of the encoded part.  The error
    bound is certified by an exact sign test before returning.
    """
    if isinstance(x, (int, Fraction)):
        x = QuadRat(Fraction(x), Fraction(0), cf.d)
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if x.sign() < 0:
        raise OutOfDomain(f"{x} is negative")

    root = cf.sqrt_d()
    whole = (x + root - cf.a0).floor()  # x - whole lies in I exactly
    c = x - whole
    assert in_interval(cf, c)

    depth = None
    for k in range(1, cf.depth + 1):
        tail = abs(cf.beta(k - 1)) + abs(cf.beta(k))
        if ((tail * root) - eps).sign() < 0:
            depth = k
            break
    if depth is None:
        raise DepthExceeded(f"eps={eps} needs more than {cf.depth} digit positions")

    digits = encode_real(c, cf, depth)
    result = QuadRat(Fraction(0), Fraction(whole), cf.d) + times_sqrt_frac(digits, sc)
    err = result - root * x
    if not (abs(err) - eps).sign() < 0:
        raise VerificationFailed(f"certified bound violated: |{err}| >= {eps}")
    return result


# ---------------------------------------------------------------------------
# digit probes
# ---------------------------------------------------------------------------


def prefix_window(cf: CFData, l: int, last_digit_zero: bool) -> tuple[QuadRat, QuadRat]:
    """Window [lo, hi) with: first l+1 digits of c equal those of n iff
    c - f(n) lies in the window, where f(n) is the beta-value of n's
    digits and last_digit_zero says whether n's digit at position l is 0.

    This is the tail window of position l+1; the window is wider when
    the digit at l is zero because the next digit is then unrestricted.
    """
    return tail_window(cf, l + 1, blocked=not last_digit_zero)


def digit_window(cf: CFData, l: int, printed: bool = False) -> tuple[QuadRat, QuadRat]:
    """The parity-dependent window pair (g1, g2) at position l.

    Corrected form (the blocked prefix window, always with g1 < g2):
        l even: (-(beta_l + beta_{l+1}), -beta_{l+1})
        l odd:  (-beta_{l+1}, -(beta_l + beta_{l+1}))
    printed=True returns the odd case as sometimes printed,
    (-beta_l, -(beta_l + beta_{l+1})), whose entries come out in the
    wrong order (g1 > g2); it is exposed for the audit only.
    """
    b_l, b_next = cf.beta(l), cf.beta(l + 1)
    if l % 2 == 0:
        return -(b_l + b_next), -b_next
    if printed:
        return -b_l, -(b_l + b_next)
    return -b_next, -(b_l + b_next)


def prefix_nat(cf: CFData, l: int, c: QuadRat) -> int:
    """The unique natural n < q_{l+1} whose digits match the first l+1
    digits of c, certified by the exact window inequalities."""
    x = encode_real(c, cf, l + 1)
    n = decode_nat(x)
    digit_l = x.digits[l] if l < len(x.digits) else 0
    lo, hi = prefix_window(cf, l, last_digit_zero=digit_l == 0)
    diff = c - decode_real(x)
    if not ((diff - lo).sign() >= 0 and (diff - hi).sign() < 0):
        raise VerificationFailed(f"prefix window certificate failed at l={l} for {c}")
    assert n < cf.q(l + 1)
    return n


def window_digit(cf: CFData, l: int, c: QuadRat) -> int:
    """Digit of c at position l, read off the prefix natural by thresholds.

    With n the matching prefix natural: the digit is 0 when n < q_l and
    otherwise the unique i with i q_l <= n < min(q_{l+1}, (i+1) q_l).
    """
    n = prefix_nat(cf, l, c)
    q_l, q_next = cf.q(l), cf.q(l + 1)
    if n < q_l:
        i = 0
    else:
        i = n // q_l
        assert i * q_l <= n < min(q_next, (i + 1) * q_l)
    assert 0 <= i <= cf.a(l + 1)
    return i


def residue_class_probe(cf: CFData, j: int, n_mod: int, l_max: int) -> tuple[bool, ...]:
    """Probe the positions of an arithmetic progression of digit indices.

    Builds the witness value whose digits are 1 exactly at positions
    congruent to j mod n_mod (truncated past l_max), then reads each
    position back through window_digit.  Entry l of the result is True
    iff the recovered digit at l is 1, which must match l = j mod n_mod.

    The witness does not exist when j = 0 and a_1 = 1 (position 0 cannot
    hold a 1); that raises WitnessUnavailable.
    """
    if n_mod < 2:
        raise ValueError(f"modulus must be at least 2, got {n_mod}")
    j = j % n_mod
    length = l_max + 2 * n_mod + 1
    if length > cf.depth:
        raise DepthExceeded(f"need depth {length}, have {cf.depth}")
    try:
        witness = make_digits(
            cf, [1 if k % n_mod == j else 0 for k in range(length)], KIND_REAL
        )
    except InvalidDigits as exc:
        raise WitnessUnavailable(
            f"no interval value has digit 1 at position {j} for d={cf.d}"
        ) from exc
    c = decode_real(witness)
    assert in_interval(cf, c)
    return tuple(window_digit(cf, l, c) == 1 for l in range(l_max + 1))


# ---------------------------------------------------------------------------
# unary layer decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class UnaryLayers:
    """Digit map split into t x s_max unary layers.

    supports[(i, j)] lists the positions k with k = i mod t and value at
    least j, so column j is the j-th unary threshold of the digits in
    residue class i.  Columns shrink as j grows and the original map is
    recovered by counting layers.
    """

    cf: CFData
    t: int
    s_max: int
    supports: dict

    def recompose(self) -> GenDigits:
        counts: dict[int, int] = {}
        for (_, _), positions in self.supports.items():
            for k in positions:
                counts[k] = counts.get(k, 0) + 1
        return gen_digits(self.cf, counts)


def unary_layers(x: GenDigits) -> UnaryLayers:
    """Decompose a digit map into per-residue unary threshold layers."""
    cf = x.cf
    t, s = cf.t, cf.s_max
    supports = {
        (i, j): tuple(k for k, v in x.items if k % t == i and v >= j)
        for i in range(t)
        for j in range(1, s + 1)
    }
    for i in range(t):
        for j in range(1, s):
            assert set(supports[(i, j)]) >= set(supports[(i, j + 1)])
    layers = UnaryLayers(cf=cf, t=t, s_max=s, supports=supports)
    assert layers.recompose() == x
    return layers
