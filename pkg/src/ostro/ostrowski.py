"""Ostrowski numeration relative to the continued fraction of sqrt(d).

Natural numbers: N = sum_k digits[k] * q_k, uniquely, under the digit
constraints
    digits[0] < a_1,
    digits[k] <= a_{k+1},
    digits[k] == a_{k+1}  implies  digits[k-1] == 0.
Digits are stored least significant first: digits[k] multiplies q_k.

Reals: every c in the fundamental interval
    I = [a0 - sqrt(d), a0 + 1 - sqrt(d))
has a unique expansion c = sum_k digits[k] * beta_k under the same
constraints (plus a tie-break on infinite tails that never materializes
for finite truncations).  The greedy encoder below is certified at each
step: the set of values reachable by valid digit tails from position n
is a half-open interval whose endpoints are exact quadratic numbers
(see tail_window), those windows tile the parent window, and each digit
choice is validated by exact membership tests.

The text form of a digit string is ``0,1,0,1@d=3`` (least significant
first; empty digit list for zero).
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .cfrac import CFData
from .errors import DepthExceeded, InvalidDigits, OutOfInterval
from .qfield import QuadRat, parse_rat

KIND_NAT = "natural"
KIND_REAL = "real"


@dataclass(frozen=True)
class OstDigits:
    """An Ostrowski digit string over a fixed expansion.

    Canonical form carries no trailing zeros, so equal values compare
    equal.  kind records whether the string denotes a natural number
    (weights q_k) or a real in I (weights beta_k); the digit constraints
    are identical.
    """

    cf: CFData
    digits: tuple[int, ...]
    kind: str

    def __str__(self) -> str:
        return ",".join(str(b) for b in self.digits) + f"@d={self.cf.d}"


def make_digits(cf: CFData, digits, kind: str = KIND_NAT) -> OstDigits:
    """Build a canonical OstDigits, validating the digit constraints."""
    ds = list(digits)
    while ds and ds[-1] == 0:
        ds.pop()
    x = OstDigits(cf, tuple(ds), kind)
    ok, idx = validate(x)
    if not ok:
        raise InvalidDigits(f"digit constraint violated at position {idx}: {ds}")
    return x


def validate(x: OstDigits) -> tuple[bool, int | None]:
    """Check the digit constraints; returns (ok, first violating position)."""
    cf = x.cf
    for k, b in enumerate(x.digits):
        cap = cf.a(k + 1)
        if b < 0 or b > cap or (k == 0 and b >= cap):
            return False, k
        if b == cap and k >= 1 and x.digits[k - 1] != 0:
            return False, k
    return True, None


# ---------------------------------------------------------------------------
# natural numbers
# ---------------------------------------------------------------------------


def encode_nat(n: int, cf: CFData) -> OstDigits:
    """Greedy digit expansion of a natural number over the q_k scale.

    Greedy subtraction of the largest q_k automatically satisfies the
    digit constraints; the remainder after position k is < q_k, which
    keeps the next digit in range and zeroes the digit below a maximal
    one.
    """
    if n < 0:
        raise ValueError(f"natural number expected, got {n}")
    qs = cf.conv_q  # qs[i] = q_{i-1}
    if n >= qs[-1]:
        raise DepthExceeded(f"{n} >= q_depth = {qs[-1]}; expand deeper")
    digits = [0] * (bisect_right(qs, n, 1) - 1)
    rem = n
    for k in range(len(digits) - 1, -1, -1):
        digits[k], rem = divmod(rem, qs[k + 1])
    assert rem == 0
    return make_digits(cf, digits, KIND_NAT)


def decode_nat(x: OstDigits) -> int:
    """Value of a digit string on the q_k scale."""
    qs = x.cf.conv_q
    return sum(b * qs[k + 1] for k, b in enumerate(x.digits))


def decode_real(x: OstDigits) -> QuadRat:
    """Value of a digit string on the beta_k scale, as an exact quadratic.

    beta_k = q_k sqrt(d) - p_k, so the sum is assembled from two integer
    dot products.  For the digits of a natural n this is the offset of
    n*sqrt(d) from the nearest lattice of convergent numerators.
    """
    cf = x.cf
    qs, ps = cf.conv_q, cf.conv_p
    bq = bp = 0
    for k, b in enumerate(x.digits):
        bq += b * qs[k + 1]
        bp += b * ps[k + 1]
    return QuadRat(Fraction(-bp), Fraction(bq), cf.d)


def mult_nat_by_sqrt(x: OstDigits) -> tuple[int, OstDigits]:
    """Split n*sqrt(d) into an integer part and a fractional part in I.

    n sqrt(d) = sum b_k q_k sqrt(d) = sum b_k p_k + sum b_k beta_k, so the
    same digits, reread on the beta scale, give the fractional part; the
    integer part is the p_k dot product.
    """
    ps = x.cf.conv_p
    whole = sum(b * ps[k + 1] for k, b in enumerate(x.digits))
    return whole, OstDigits(x.cf, x.digits, KIND_REAL)


def enumerate_valid(cf: CFData, length: int):
    """Yield every valid digit tuple of the given length (LSF order).

    Exhaustive by construction; used by the uniqueness sweeps, which
    check that decoding is a bijection onto [0, q_length).
    """
    def rec(k: int, prefix: list[int]):
        if k == length:
            yield tuple(prefix)
            return
        cap = cf.a(k + 1)
        hi = cap - 1 if k == 0 else cap
        for b in range(0, hi + 1):
            if k >= 1 and b == cap and prefix[k - 1] != 0:
                continue
            prefix.append(b)
            yield from rec(k + 1, prefix)
            prefix.pop()

    yield from rec(0, [])


# ---------------------------------------------------------------------------
# reals in the fundamental interval
# ---------------------------------------------------------------------------


def interval_bounds(cf: CFData) -> tuple[QuadRat, QuadRat]:
    """The fundamental interval I = [a0 - sqrt(d), a0 + 1 - sqrt(d))."""
    lo = QuadRat(Fraction(cf.a0), Fraction(-1), cf.d)
    return lo, lo + 1


def in_interval(cf: CFData, c: QuadRat) -> bool:
    lo, hi = interval_bounds(cf)
    return (c - lo).sign() >= 0 and (c - hi).sign() < 0


def tail_window(cf: CFData, n: int, blocked: bool) -> tuple[QuadRat, QuadRat]:
    """Exact value range [lo, hi) of valid digit tails from position n.

    blocked means the digit at position n is capped one below its usual
    bound (because the previous digit was nonzero, or n == 0).  The
    endpoints follow from telescoping the recurrence
    a_{k+1} beta_k = beta_{k+1} - beta_{k-1} over one parity class:

        free    n even  [-beta_n,             -beta_{n-1})
        free    n odd   [-beta_{n-1},         -beta_n)
        blocked n even  [-beta_n,             -(beta_{n-1} + beta_n))
        blocked n odd   [-(beta_{n-1} + beta_n), -beta_n)

    At n = 0 the blocked window is exactly I (beta_{-1} = -1).
    """
    if n < 0 or n > cf.depth:
        raise DepthExceeded(f"window index {n} not materialized (depth {cf.depth})")
    near = cf.neg_betas[n + 1]
    far = cf.neg_beta_pair[n] if blocked else cf.neg_betas[n]
    return (near, far) if n % 2 == 0 else (far, near)


def _in_window(c: QuadRat, win: tuple[QuadRat, QuadRat]) -> bool:
    lo, hi = win
    return (c - lo).sign() >= 0 and (c - hi).sign() < 0


def encode_real(c: QuadRat, cf: CFData, depth: int) -> OstDigits:
    """First `depth` Ostrowski digits of c in I, greedily and certified.

    Position by position the digit is the unique value whose residual
    lands in the tail window of the next position; the windows tile, so
    exactly one candidate passes the exact membership test.  The residual
    after K digits is bounded by |beta_{K-1}| + |beta_K|.
    """
    if isinstance(c, (int, Fraction)):
        c = QuadRat(Fraction(c), Fraction(0), cf.d)
    if c.d != cf.d:
        if not c.is_rational:
            raise OutOfInterval(f"value in Q(sqrt({c.d})) cannot be encoded over d={cf.d}")
        c = QuadRat(c.a, Fraction(0), cf.d)
    if not in_interval(cf, c):
        raise OutOfInterval(f"{c} is outside [{interval_bounds(cf)[0]}, {interval_bounds(cf)[1]})")
    if depth > cf.depth:
        raise DepthExceeded(f"requested {depth} digits but depth is {cf.depth}")

    digits: list[int] = []
    rem = c
    blocked = True  # position 0 is capped: digits[0] < a_1
    for k in range(depth):
        cap = cf.a(k + 1) - (1 if blocked else 0)
        beta_k = cf.beta(k)
        chosen = None
        cand = rem
        for b in range(cap + 1):
            if _in_window(cand, tail_window(cf, k + 1, blocked=b != 0)):
                chosen = b
                rem = cand
                break
            cand = cand - beta_k
        if chosen is None:  # cannot happen: the windows tile the parent window
            raise AssertionError(f"no digit fits at position {k} for {c}")
        digits.append(chosen)
        blocked = chosen != 0
    assert _in_window(rem, tail_window(cf, depth, blocked))
    return make_digits(cf, digits, KIND_REAL)


# ---------------------------------------------------------------------------
# text form
# ---------------------------------------------------------------------------


def format_digits(x: OstDigits) -> str:
    return str(x)


def parse_digit_text(text: str) -> tuple[list[int], Fraction | None]:
    """Parse ``0,1,0,1@d=3`` into (digits, d); d is None if no suffix."""
    s = text.strip()
    d = None
    if "@" in s:
        s, _, suffix = s.partition("@")
        if not suffix.startswith("d="):
            raise ValueError(f"digit string suffix must be @d=<rational>: {text!r}")
        d = parse_rat(suffix[2:])
    s = s.strip()
    if not s:
        return [], d
    try:
        digits = [int(part) for part in s.split(",")]
    except ValueError:
        raise ValueError(f"digits must be comma-separated integers: {text!r}") from None
    return digits, d
