"""Coordinate and composite statistics on ordered set partitions.

Ten coordinate statistics per element i (block(j) is the position of the
block containing j; open(pi) is the set of block openers, clos(pi) the set of
closers, both including singletons):

    ros_i  # openers j < i in blocks right of block(i)
    rob_i  # openers j > i in blocks right of block(i)
    rcs_i  # closers j < i in blocks right of block(i)
    rcb_i  # closers j > i in blocks right of block(i)
    los_i, lob_i, lcs_i, lcb_i   # same four with "left of block(i)"
    rsb_i  # blocks right of block(i) whose opener is < i and closer is > i
    lsb_i  # same on the left

Aggregates are the sums over i; stat(A) restricts the sum to a set A of
elements.  Block-level statistics use the partial order B > B' iff the opener
of B exceeds the closer of B': bInv counts inverted pairs of block positions,
bExc the ascending comparable pairs, bMaj sums the positions of descents
between adjacent blocks.  inv/cinv are inversions and coinversions of the
induced permutation.

Composite statistics (k blocks, n elements, K2 = C(k,2)):

    mak      = ros + lcs                lmak  = n(k-1) - los - rcs
    makP     = lob + rcb                lmakP = n(k-1) - lcb - rob
    cinvLSB  = lsb + (K2 - bInv) + K2   cmajLSB = lsb + (K2 - bMaj) + K2
    makBInv  = mak + bInv               lmakBInv = lmak + bInv
    makBMaj  = mak + bMaj               lmakBMaj = lmak + bMaj

Two computation routes are kept deliberately separate: coord()/stat_vector()
follow the definitions element by element, while summarize() accumulates all
aggregates in one pass over block pairs (the form used by the exhaustive
sweeps).  Tests pin the two routes against each other.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .opart import Blocks, OrderedPartition, iter_blocks
from .qnum import q_poly_from_exponent_counts
from .ring import DEFAULT, LaurentPoly, VarRegistry

COORD_NAMES = ("ros", "rob", "rcs", "rcb", "los", "lob", "lcs", "lcb", "lsb", "rsb")

COMPOSITE_NAMES = (
    "inv", "cinv", "bInv", "bExc", "bMaj",
    "mak", "lmak", "makP", "lmakP",
    "cinvLSB", "cmajLSB",
    "makBInv", "lmakBInv", "makBMaj", "lmakBMaj",
)


def _blocks_of(pi) -> Blocks:
    return pi.blocks if isinstance(pi, OrderedPartition) else pi


# -- definition-faithful per-element route ------------------------------------


def coord(pi, i: int, name: str) -> int:
    """One coordinate statistic straight from its definition."""
    blocks = _blocks_of(pi)
    n = sum(len(b) for b in blocks)
    if not 1 <= i <= n:
        raise ValueError(f"element {i} out of range 1..{n}")
    home = next(pos for pos, b in enumerate(blocks) if i in b)
    if name in ("lsb", "rsb"):
        side = blocks[:home] if name == "lsb" else blocks[home + 1:]
        return sum(1 for b in side if b[0] < i < b[-1])
    if name not in COORD_NAMES:
        raise ValueError(f"unknown coordinate statistic {name!r}")
    left = name[0] == "l"
    opener = name[1] == "o"
    smaller = name[2] == "s"
    side = blocks[:home] if left else blocks[home + 1:]
    total = 0
    for b in side:
        j = b[0] if opener else b[-1]
        total += (j < i) if smaller else (j > i)
    return total


def coord_values(pi, name: str) -> dict[int, int]:
    blocks = _blocks_of(pi)
    n = sum(len(b) for b in blocks)
    return {i: coord(pi, i, name) for i in range(1, n + 1)}


def aggregate(pi, name: str) -> int:
    """Sum of a coordinate statistic over all elements."""
    return sum(coord_values(pi, name).values())


def restricted(pi, name: str, elements: Iterable[int]) -> int:
    """stat(A): the coordinate sum restricted to a set of elements."""
    return sum(coord(pi, i, name) for i in set(elements))


def block_stats(pi) -> tuple[int, int, int]:
    """(bInv, bExc, bMaj) under the order B > B' iff opener(B) > closer(B')."""
    blocks = _blocks_of(pi)
    k = len(blocks)
    binv = bexc = bmaj = 0
    for p in range(k):
        op, cp = blocks[p][0], blocks[p][-1]
        for r in range(p + 1, k):
            if op > blocks[r][-1]:
                binv += 1
                if r == p + 1:
                    bmaj += p + 1
            if cp < blocks[r][0]:
                bexc += 1
    return binv, bexc, bmaj


# -- one-pass aggregate route --------------------------------------------------


class Summary:
    """All aggregate statistics of one partition, computed in a single sweep
    over (element, other-block) pairs.  Fields with an ``_op`` suffix are the
    restrictions to open(pi) (the openers, singletons included)."""

    __slots__ = (
        "n", "k",
        "ros", "rob", "rcs", "rcb", "los", "lob", "lcs", "lcb", "lsb", "rsb",
        "ros_op", "rcs_op", "los_op", "lcs_op", "lsb_op", "rsb_op",
        "binv", "bexc", "bmaj", "inv",
    )

    def __init__(self, blocks: Blocks):
        k = len(blocks)
        n = 0
        ros = rob = rcs = rcb = los = lob = lcs = lcb = lsb = rsb = 0
        ros_op = rcs_op = los_op = lcs_op = lsb_op = rsb_op = 0
        binv = bexc = bmaj = pinv = 0
        for p in range(k):
            A = blocks[p]
            n += len(A)
            oA = A[0]
            cA = A[-1]
            for r in range(p + 1, k):
                B = blocks[r]
                oB = B[0]
                cB = B[-1]
                if oA > oB:
                    pinv += 1
                if oA > cB:
                    binv += 1
                    if r == p + 1:
                        bmaj += p + 1
                if cA < oB:
                    bexc += 1
                first = True
                for e in A:  # B lies right of e
                    if oB < e:
                        ros += 1
                        if first:
                            ros_op += 1
                    else:
                        rob += 1
                    if cB < e:
                        rcs += 1
                        if first:
                            rcs_op += 1
                    else:
                        rcb += 1
                    if oB < e < cB:
                        rsb += 1
                        if first:
                            rsb_op += 1
                    first = False
                first = True
                for e in B:  # A lies left of e
                    if oA < e:
                        los += 1
                        if first:
                            los_op += 1
                    else:
                        lob += 1
                    if cA < e:
                        lcs += 1
                        if first:
                            lcs_op += 1
                    else:
                        lcb += 1
                    if oA < e < cA:
                        lsb += 1
                        if first:
                            lsb_op += 1
                    first = False
        self.n = n
        self.k = k
        self.ros, self.rob, self.rcs, self.rcb = ros, rob, rcs, rcb
        self.los, self.lob, self.lcs, self.lcb = los, lob, lcs, lcb
        self.lsb, self.rsb = lsb, rsb
        self.ros_op, self.rcs_op = ros_op, rcs_op
        self.los_op, self.lcs_op = los_op, lcs_op
        self.lsb_op, self.rsb_op = lsb_op, rsb_op
        self.binv, self.bexc, self.bmaj = binv, bexc, bmaj
        self.inv = pinv

    # restrictions to the transients-and-closers side, by complement
    @property
    def cinv(self) -> int:
        return self.k * (self.k - 1) // 2 - self.inv

    @property
    def lsb_tc(self) -> int:
        return self.lsb - self.lsb_op

    @property
    def rsb_tc(self) -> int:
        return self.rsb - self.rsb_op

    @property
    def lcsrcs_tc(self) -> int:
        return (self.lcs - self.lcs_op) + (self.rcs - self.rcs_op)

    @property
    def lsbrsb_op(self) -> int:
        return self.lsb_op + self.rsb_op

    @property
    def mak(self) -> int:
        return self.ros + self.lcs

    @property
    def lmak(self) -> int:
        return self.n * (self.k - 1) - self.los - self.rcs

    @property
    def makp(self) -> int:
        return self.lob + self.rcb

    @property
    def lmakp(self) -> int:
        return self.n * (self.k - 1) - self.lcb - self.rob


def summarize(pi) -> Summary:
    return Summary(_blocks_of(pi))


def composite(pi, name: str) -> int:
    """Value of a composite statistic (see the module docstring for formulas)."""
    return stat_of_summary(summarize(pi), name)


def stat_of_summary(s: Summary, name: str) -> int:
    k2 = s.k * (s.k - 1) // 2
    if name == "inv":
        return s.inv
    if name == "cinv":
        return s.cinv
    if name == "bInv":
        return s.binv
    if name == "bExc":
        return s.bexc
    if name == "bMaj":
        return s.bmaj
    if name == "mak":
        return s.mak
    if name == "lmak":
        return s.lmak
    if name == "makP":
        return s.makp
    if name == "lmakP":
        return s.lmakp
    if name == "cinvLSB":
        return s.lsb + (k2 - s.binv) + k2
    if name == "cmajLSB":
        return s.lsb + (k2 - s.bmaj) + k2
    if name == "makBInv":
        return s.mak + s.binv
    if name == "lmakBInv":
        return s.lmak + s.binv
    if name == "makBMaj":
        return s.mak + s.bmaj
    if name == "lmakBMaj":
        return s.lmak + s.bmaj
    if name in COORD_NAMES:
        return getattr(s, name)
    raise ValueError(f"unknown statistic {name!r}")


# -- linear combinations of statistics ----------------------------------------

_TERM_RE = re.compile(r"\s*([+-]?)\s*(?:(\d+)\s*\*\s*)?([A-Za-z][A-Za-z']*)\s*")


def parse_stat_expr(expr: str) -> tuple[tuple[int, str], ...]:
    """Parse e.g. ``mak+bInv-inv+2*cinv`` into ((1,'mak'), (1,'bInv'), ...).

    ``mak'``/``lmak'`` are accepted as aliases for makP/lmakP.
    """
    pos = 0
    terms: list[tuple[int, str]] = []
    while pos < len(expr):
        m = _TERM_RE.match(expr, pos)
        if not m:
            raise ValueError(f"cannot parse statistic expression at {expr[pos:]!r}")
        sign, coef, name = m.groups()
        if sign == "" and terms:
            raise ValueError(f"missing +/- before {name!r} in {expr!r}")
        name = {"mak'": "makP", "lmak'": "lmakP"}.get(name, name)
        if name not in COORD_NAMES and name not in COMPOSITE_NAMES:
            raise ValueError(f"unknown statistic {name!r}")
        c = int(coef) if coef else 1
        terms.append((-c if sign == "-" else c, name))
        pos = m.end()
    if not terms:
        raise ValueError("empty statistic expression")
    return tuple(terms)


def eval_stat_expr(s: Summary, terms: tuple[tuple[int, str], ...]) -> int:
    return sum(c * stat_of_summary(s, name) for c, name in terms)


def distribution(n: int, k: int, expr: str, registry: VarRegistry | None = None,
                 force_large: bool = False) -> LaurentPoly:
    """sum over OP_n^k of q^(expr); negative totals land in negative Laurent
    exponents rather than failing."""
    from .opart import _check_bound

    if not 0 <= k <= n:
        raise ValueError(f"no ordered partitions for n={n}, k={k}")
    _check_bound(n, force_large)
    terms = parse_stat_expr(expr)
    counts: dict[int, int] = {}
    for blocks in iter_blocks(n, k):
        v = eval_stat_expr(Summary(blocks), terms)
        counts[v] = counts.get(v, 0) + 1
    return q_poly_from_exponent_counts(counts, registry if registry is not None else DEFAULT)


# -- the seven-variable walk monomial -----------------------------------------


def monomial_exponents(s: Summary) -> tuple[int, int, int, int, int, int, int]:
    """Exponents of (t1..t7) for one partition:

    t1: (lcs+rcs) over openers      t2: (lcs+rcs) over the complement
    t3: rsb over the complement     t4: lsb over the complement
    t5: ros over openers            t6: los over openers
    t7: (lsb+rsb) over openers
    """
    return (
        s.lcs_op + s.rcs_op,
        s.lcsrcs_tc,
        s.rsb_tc,
        s.lsb_tc,
        s.ros_op,
        s.los_op,
        s.lsbrsb_op,
    )


def q_monomial(pi, registry: VarRegistry | None = None) -> LaurentPoly:
    reg = registry if registry is not None else DEFAULT
    exps = monomial_exponents(summarize(pi))
    return reg.monomial(1, **{f"t{i + 1}": e for i, e in enumerate(exps) if e})


# -- display -------------------------------------------------------------------


def stat_vector(pi: OrderedPartition) -> dict[str, dict[int, int]]:
    """All ten coordinate rows, keyed by statistic name."""
    return {name: coord_values(pi, name) for name in COORD_NAMES}


ROW_ORDER = ("los", "ros", "lob", "rob", "lcs", "rcs", "lcb", "rcb", "lsb", "rsb")


def stat_table(pi: OrderedPartition) -> str:
    """Human-readable table: one row per coordinate statistic, elements in
    block order with | between blocks, then aggregates and composites."""
    from .opart import cinv as _cinv, inv as _inv, perm_of

    rows = stat_vector(pi)
    s = summarize(pi)

    def fmt(values: Mapping[int, int] | None) -> str:
        cells = []
        for b in pi.blocks:
            cells.append(" ".join(str(e if values is None else values[e]) for e in b))
        return " | ".join(cells)

    lines = [f"pi:     {fmt(None)}"]
    for name in ROW_ORDER:
        lines.append(f"{name}_i:  {fmt(rows[name])}")
    lines.append("")
    lines.append("  ".join(f"{name}={getattr(s, name)}" for name in ROW_ORDER))
    sigma = perm_of(pi)
    perm_text = "".join(map(str, sigma)) if pi.k <= 9 else ",".join(map(str, sigma))
    lines.append(
        f"perm={perm_text}  inv={_inv(pi)}  cinv={_cinv(pi)}  "
        f"bInv={s.binv}  bExc={s.bexc}  bMaj={s.bmaj}"
    )
    lines.append(
        "  ".join(
            f"{name}={stat_of_summary(s, name)}"
            for name in ("mak", "makP", "lmak", "lmakP", "cinvLSB", "cmajLSB")
        )
    )
    return "\n".join(lines)


def per_element_sums_ok(pi) -> bool:
    """Every element must see k-1 openings and k-1 closings:
    (los+lob+ros+rob)_i = (lcs+lcb+rcs+rcb)_i = k-1 for all i."""
    blocks = _blocks_of(pi)
    k = len(blocks)
    n = sum(len(b) for b in blocks)
    for i in range(1, n + 1):
        if sum(coord(blocks, i, nm) for nm in ("los", "lob", "ros", "rob")) != k - 1:
            return False
        if sum(coord(blocks, i, nm) for nm in ("lcs", "lcb", "rcs", "rcb")) != k - 1:
            return False
    return True
