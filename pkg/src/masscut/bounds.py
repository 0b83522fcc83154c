"""Upper bounds on the smallest dimension that admits an equipartition.

Delta(h, m) denotes the smallest dimension d such that any m masses in R^d
can be cut into 2**h equal orthant pieces by h hyperplanes.  This module
stores the known base facts, searches the two reduction rules

    halving  (L1):  Delta(h, m) <= Delta(h-1, 2m)        for h >= 2
    lifting  (L2):  Delta(h, m) <= Delta(h, m+1) - 1     for h, m >= 1

for the best derivable upper bound, and emits replayable certificates.
The closed form ``corollary3`` covers h >= 5 directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CertificateError, DomainError, NoBoundAvailable

RAMOS_COEFFICIENTS = {1: 2, 2: 3, 3: 5, 4: 9, 5: 15}

RULE_BASE = "base"
RULE_LEMMA1 = "lemma1"
RULE_LEMMA2 = "lemma2"
# Informational only: recorded nowhere in chains, but part of the rule
# vocabulary because bounds are valid in every dimension above the stated
# one (project the masses down, cut, take pre-images of the cuts).
RULE_PROJECTION_NOTE = "projection_note"

_SOURCE_ORDER = {"HamSandwich": 0, "Hadwiger": 1, "Ramos": 2, "MVZ": 3}


@dataclass(frozen=True)
class Fact:
    """One literature fact asserting (d, h, m) is admissible."""

    h: int
    m: int
    d: int
    kind: str  # "exact" or "upper"
    source: str  # "HamSandwich" | "Hadwiger" | "Ramos" | "MVZ"
    note: str = ""

    def render(self) -> str:
        return f"{self.source} h={self.h}, m={self.m}, d={self.d}"


HADWIGER_FACTS = (
    # Subsumed by the ham sandwich equality at (1, 3); kept for provenance.
    Fact(h=1, m=3, d=3, kind="upper", source="Hadwiger"),
    Fact(h=2, m=1, d=3, kind="upper", source="Hadwiger"),
)

MVZ_FACT = Fact(
    h=2,
    m=5,
    d=8,
    kind="exact",
    source="MVZ",
    note="equality; the lower-bound half is metadata and never used in chains",
)


def facts_at(h: int, m: int) -> list[Fact]:
    """All stored facts that apply at exactly (h, m)."""
    if h < 1 or m < 1:
        raise ValueError("h and m must be positive")
    out = []
    if h == 1:
        out.append(Fact(h=1, m=m, d=m, kind="exact", source="HamSandwich"))
    out.extend(f for f in HADWIGER_FACTS if (f.h, f.m) == (h, m))
    if h in RAMOS_COEFFICIENTS and m >= 2 and m & (m - 1) == 0:
        x = m.bit_length() - 2  # m = 2**(x+1)
        out.append(Fact(h=h, m=m, d=RAMOS_COEFFICIENTS[h] << x, kind="upper", source="Ramos"))
    if (h, m) == (MVZ_FACT.h, MVZ_FACT.m):
        out.append(MVZ_FACT)
    return out


def base_bound(h: int, m: int) -> tuple[int, Fact] | None:
    """Best stored fact at exactly (h, m), or None when nothing applies."""
    facts = facts_at(h, m)
    if not facts:
        return None
    best = min(facts, key=lambda f: (f.d, 0 if f.kind == "exact" else 1, _SOURCE_ORDER[f.source]))
    return best.d, best


def known_exact(h: int, m: int) -> int | None:
    """Exactly known Delta values: the ham sandwich line and (2, 5)."""
    if h < 1 or m < 1:
        raise ValueError("h and m must be positive")
    if h == 1:
        return m
    if (h, m) == (2, 5):
        return 8
    return None


def corollary3(h: int, m: int) -> int:
    """Closed-form upper bound 2**(h-5) * (14 * 2**q + r) for h >= 5, m >= 2.

    q and r are the unique decomposition m = 2**q + r with 0 < r <= 2**q.
    """
    if h < 5 or m < 2:
        raise DomainError(f"closed form requires h >= 5 and m >= 2, got ({h}, {m})")
    q = (m - 1).bit_length() - 1
    r = m - (1 << q)
    return (1 << (h - 5)) * (14 * (1 << q) + r)


@dataclass(frozen=True)
class ReductionStep:
    """One link in a certificate chain, read from base fact toward the target.

    ``from_state`` is the (h, m) pair the step consumed.  A halving step
    consumes (h, m) and produces (h+1, m/2) at the same value; a lifting
    step consumes (h, m) and produces (h, m-1) at value - 1.
    """

    rule: str
    from_state: tuple[int, int]
    fact: Fact | None = None


@dataclass(frozen=True)
class BoundCertificate:
    """An integer upper bound on Delta(h, m) with its derivation chain."""

    h: int
    m: int
    value: int
    chain: tuple[ReductionStep, ...]

    def replay(self) -> int:
        return replay_certificate(self)

    def render_chain(self) -> str:
        parts = []
        for step in self.chain:
            if step.rule == RULE_BASE:
                parts.append(f"Base[{step.fact.render()}]")
            elif step.rule == RULE_LEMMA1:
                parts.append("L1")
            elif step.rule == RULE_LEMMA2:
                parts.append("L2")
            else:
                parts.append(step.rule)
        return " -> ".join(parts)


def replay_certificate(cert: BoundCertificate) -> int:
    """Re-run the chain arithmetic from its base fact; raises on any mismatch."""
    if not cert.chain or cert.chain[0].rule != RULE_BASE:
        raise CertificateError("chain must start with a base fact")
    fact = cert.chain[0].fact
    if fact is None or cert.chain[0].from_state != (fact.h, fact.m):
        raise CertificateError("base step must reference its own fact state")
    state = (fact.h, fact.m)
    value = fact.d
    for step in cert.chain[1:]:
        if step.from_state != state:
            raise CertificateError(f"step consumed {step.from_state}, expected {state}")
        h, m = state
        if step.rule == RULE_LEMMA1:
            if h < 1 or m % 2 != 0:
                raise CertificateError(f"halving step needs an even m, got {state}")
            state = (h + 1, m // 2)
        elif step.rule == RULE_LEMMA2:
            if m < 2:
                raise CertificateError(f"lifting step needs m >= 2, got {state}")
            state = (h, m - 1)
            value -= 1
        else:
            raise CertificateError(f"unknown rule {step.rule!r}")
    if state != (cert.h, cert.m):
        raise CertificateError(f"chain ends at {state}, certificate targets {(cert.h, cert.m)}")
    if value != cert.value:
        raise CertificateError(f"chain replays to {value}, certificate claims {cert.value}")
    return value


@dataclass(frozen=True)
class SearchConfig:
    """Caps for the bound search.

    Within one h-level the search climbs m only up to
    ``m_cap_factor * next_power_of_two(entry m)``; base facts sit at powers
    of two, so climbing past the next power of two never pays off and the
    default factor leaves a safety margin.
    """

    m_cap_factor: int = 2

    def __post_init__(self):
        if self.m_cap_factor < 1:
            raise ValueError("m_cap_factor must be >= 1")


def _next_power_of_two(m: int) -> int:
    return 1 << max(0, m - 1).bit_length() if m > 1 else 1


def _fact_positions(level: int, lo: int, hi: int):
    """(position, base bound) pairs for every fact position in [lo, hi].

    Fact families sit at sparse positions: the entry itself, powers of two,
    and the isolated (2, 5) and (2, 1) facts.  At level 1 only the entry
    matters: the ham sandwich value grows exactly one per lifting step, so
    climbing there never beats standing still and loses the tie-break.
    """
    if level == 1:
        yield lo, base_bound(1, lo)
        return
    positions = {lo}
    power = 2
    while power <= hi:
        if power >= lo:
            positions.add(power)
        power <<= 1
    if level == 2 and lo <= 5 <= hi:
        positions.add(5)
    for p in sorted(positions):
        found = base_bound(level, p)
        if found is not None:
            yield p, found


def _prefer_chain(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """True when chain shape ``a`` = (halvings, liftings) wins a value tie.

    Mirrors the per-state candidate order base < halving < lifting: with
    equal halving counts fewer liftings win; otherwise the chain that
    reaches a plain base fact first along the shared halving prefix wins.
    """
    (ka, sa), (kb, sb) = a, b
    if ka == kb:
        return sa < sb
    if ka < kb:
        return sa == 0
    return sb != 0


@lru_cache(maxsize=None)
def _search(h: int, m: int, factor: int):
    """Minimum over all in-cap reduction chains, as (value, halvings, liftings, fact).

    Any chain interleaving the two rules is dominated by the chain doing
    all its lifting at the level of its base fact: moving one lifting step
    below a halving step doubles its count (strictly smaller value) and
    preserves cap legality, since the per-level climb cap scales with the
    entry m.  It therefore suffices to scan, for each number of halvings k,
    the fact positions reachable within the cap of level h - k.
    """
    best = None
    for k in range(h):
        level = h - k
        entry = (1 << k) * m
        cap = factor * _next_power_of_two(entry)
        for p, (d, fact) in _fact_positions(level, entry, cap):
            cand = (d - (p - entry), k, p - entry, fact)
            if (
                best is None
                or cand[0] < best[0]
                or (cand[0] == best[0] and _prefer_chain((k, cand[2]), (best[1], best[2])))
            ):
                best = cand
    if best is None:
        raise NoBoundAvailable(f"no reduction chain reaches a base fact from ({h}, {m})")
    return best


def best_upper_bound(h: int, m: int, cfg: SearchConfig = SearchConfig()) -> BoundCertificate:
    """Best upper bound on Delta(h, m) derivable from the stored facts.

    Minimizes over the applicable base fact, one halving step, and lifting
    chains within the level cap, memoized.  Ties break toward base facts,
    then halving, then lifting.
    """
    if h < 1 or m < 1:
        raise ValueError("h and m must be positive")
    value, halvings, liftings, fact = _search(h, m, cfg.m_cap_factor)
    steps = [ReductionStep(rule=RULE_BASE, from_state=(fact.h, fact.m), fact=fact)]
    state = (fact.h, fact.m)
    for _ in range(liftings):
        steps.append(ReductionStep(rule=RULE_LEMMA2, from_state=state))
        state = (state[0], state[1] - 1)
    for _ in range(halvings):
        steps.append(ReductionStep(rule=RULE_LEMMA1, from_state=state))
        state = (state[0] + 1, state[1] // 2)
    return BoundCertificate(h=h, m=m, value=value, chain=tuple(steps))


def table(h_max: int, m_max: int, cfg: SearchConfig = SearchConfig()) -> list[list[BoundCertificate]]:
    """Certificates for the full grid, rows h = 1..h_max, columns m = 1..m_max."""
    if h_max < 1 or m_max < 1:
        raise ValueError("h_max and m_max must be positive")
    return [[best_upper_bound(h, m, cfg) for m in range(1, m_max + 1)] for h in range(1, h_max + 1)]


def render_table_csv(grid: list[list[BoundCertificate]]) -> str:
    lines = ["h,m,value,chain"]
    for row in grid:
        for cert in row:
            chain = cert.render_chain().replace('"', "'")
            lines.append(f'{cert.h},{cert.m},{cert.value},"{chain}"')
    return "\n".join(lines) + "\n"


def render_table_text(grid: list[list[BoundCertificate]]) -> str:
    m_max = len(grid[0])
    width = max(5, max(len(str(c.value)) for row in grid for c in row) + 1)
    header = "h\\m".rjust(4) + "".join(str(m).rjust(width) for m in range(1, m_max + 1))
    lines = [header]
    for row in grid:
        lines.append(str(row[0].h).rjust(4) + "".join(str(c.value).rjust(width) for c in row))
    return "\n".join(lines) + "\n"
