import time

import pytest

from masscut import (
    BoundCertificate,
    CertificateError,
    DomainError,
    ReductionStep,
    SearchConfig,
    base_bound,
    best_upper_bound,
    corollary3,
    facts_at,
    known_exact,
    replay_certificate,
    table,
)
from masscut.bounds import render_table_csv, render_table_text


def relaxation_oracle(h_max, m_max):
    """Independent fixpoint relaxation over the full (h, m) grid.

    Seeds every stored base fact, then relaxes the two reduction rule
    edges until stable.  No caps and no chain bookkeeping, so it checks the
    search from a different angle; m_max must be generous enough that grid
    truncation cannot bind on the queried cells.
    """
    INF = 10**9
    val = {}
    for h in range(1, h_max + 1):
        for m in range(1, m_max + 1):
            found = base_bound(h, m)
            val[(h, m)] = found[0] if found else INF
    changed = True
    while changed:
        changed = False
        for h in range(1, h_max + 1):
            for m in range(m_max, 0, -1):
                best = val[(h, m)]
                if h >= 2 and 2 * m <= m_max:
                    best = min(best, val[(h - 1, 2 * m)])
                if m + 1 <= m_max:
                    best = min(best, val[(h, m + 1)] - 1)
                if best < val[(h, m)]:
                    val[(h, m)] = best
                    changed = True
    return val


class TestFacts:
    def test_ham_sandwich_line(self):
        value, fact = base_bound(1, 7)
        assert value == 7 and fact.source == "HamSandwich" and fact.kind == "exact"

    def test_ramos_at_power_of_two(self):
        value, fact = base_bound(5, 8)
        assert value == 60 and fact.source == "Ramos"

    def test_mvz(self):
        value, fact = base_bound(2, 5)
        assert value == 8 and fact.source == "MVZ"

    def test_no_family_covers_h6(self):
        assert base_bound(6, 2) is None

    def test_hadwiger_stored_but_subsumed(self):
        sources = {f.source for f in facts_at(1, 3)}
        assert "Hadwiger" in sources
        value, fact = base_bound(1, 3)
        assert value == 3 and fact.source == "HamSandwich"
        assert base_bound(2, 1) == (3, facts_at(2, 1)[0])

    def test_ramos_only_at_powers(self):
        assert all(f.source != "Ramos" for f in facts_at(3, 6))
        assert any(f.source == "Ramos" for f in facts_at(3, 8))


class TestBestUpperBound:
    def test_ham_sandwich_equality_row(self):
        for m in range(1, 65):
            assert best_upper_bound(1, m).value == m

    def test_matches_relaxation_oracle(self):
        # m_max 512 leaves ample headroom over every in-cap chain here.
        oracle = relaxation_oracle(6, 512)
        for h in range(1, 7):
            for m in range(1, 17):
                assert best_upper_bound(h, m).value == oracle[(h, m)], (h, m)

    def test_small_chain_value(self):
        # Oracle-checked: Delta(2,1) <= 2 via Delta(2,2) <= 3 minus one
        # lifting step, tied by the halving chain through Delta(1,2) = 2.
        cert = best_upper_bound(2, 1)
        assert cert.value == 2
        assert cert.chain[0].fact.source == "HamSandwich"

    def test_mvz_beats_derived_chains(self):
        cert = best_upper_bound(2, 5)
        assert cert.value == 8
        assert [s.rule for s in cert.chain] == ["base"]
        assert cert.chain[0].fact.source == "MVZ"

    def test_known_spot_values(self):
        assert best_upper_bound(5, 2).value == 15
        assert best_upper_bound(2, 4).value == 6
        assert best_upper_bound(3, 2).value == 5
        assert best_upper_bound(4, 2).value == 9
        assert best_upper_bound(5, 8).value == 60
        assert best_upper_bound(6, 4).value == 60

    def test_chain_replays(self):
        for h, m in [(2, 1), (5, 3), (6, 4), (2, 5), (9, 17)]:
            cert = best_upper_bound(h, m)
            assert cert.replay() == cert.value

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            best_upper_bound(0, 1)

    def test_wide_domain_has_bounds(self):
        # Every cell up to (12, 64) must resolve without NoBoundAvailable.
        for h in range(1, 13):
            for m in (1, 2, 63, 64):
                assert best_upper_bound(h, m).value >= m


class TestCorollary3:
    def test_paper_line_values(self):
        assert corollary3(5, 2) == 15
        assert corollary3(5, 4) == 30

    def test_formula_evaluations(self):
        assert corollary3(5, 3) == 29
        assert corollary3(6, 2) == 30
        assert corollary3(6, 4) == 60

    def test_decomposition_is_canonical(self):
        for m in range(2, 64):
            q = (m - 1).bit_length() - 1
            r = m - (1 << q)
            assert 0 < r <= (1 << q)
            assert m == (1 << q) + r

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            corollary3(4, 2)
        with pytest.raises(DomainError):
            corollary3(5, 1)

    def test_agreement_with_search(self):
        for h in range(5, 10):
            for m in range(2, 33):
                assert best_upper_bound(h, m).value == corollary3(h, m), (h, m)


class TestKnownExact:
    def test_values(self):
        assert known_exact(1, 12) == 12
        assert known_exact(2, 5) == 8
        assert known_exact(3, 1) is None

    def test_search_respects_exact_values(self):
        for m in range(1, 33):
            assert best_upper_bound(1, m).value == known_exact(1, m)
        assert best_upper_bound(2, 5).value == known_exact(2, 5)


class TestTable:
    def test_first_row(self):
        grid = table(1, 4)
        assert [c.value for c in grid[0]] == [1, 2, 3, 4]

    def test_two_by_two(self):
        grid = table(2, 2)
        assert [[c.value for c in row] for row in grid] == [[1, 2], [2, 3]]

    def test_monotone_rows(self):
        grid = table(6, 24)
        for row in grid:
            for a, b in zip(row, row[1:]):
                assert a.value < b.value

    def test_lifting_monotonicity(self):
        grid = table(6, 24)
        for row in grid:
            for a, b in zip(row, row[1:]):
                assert a.value <= b.value - 1

    def test_halving_dominance(self):
        for h in range(2, 7):
            for m in range(1, 13):
                assert best_upper_bound(h, m).value <= best_upper_bound(h - 1, 2 * m).value

    def test_cap_doubling_changes_nothing(self):
        cfg4 = SearchConfig(m_cap_factor=4)
        for h in range(1, 10):
            for m in range(1, 33):
                assert best_upper_bound(h, m).value == best_upper_bound(h, m, cfg4).value

    def test_grid_runtime(self):
        start = time.perf_counter()
        grid = table(9, 64)
        elapsed = time.perf_counter() - start
        assert elapsed < 1.0
        assert len(grid) == 9 and len(grid[0]) == 64

    def test_csv_render(self):
        text = render_table_csv(table(2, 2))
        lines = text.strip().splitlines()
        assert lines[0] == "h,m,value,chain"
        assert lines[1].startswith("1,1,1,")
        assert len(lines) == 5

    def test_text_render(self):
        text = render_table_text(table(2, 3))
        assert "h\\m" in text.splitlines()[0]
        assert len(text.strip().splitlines()) == 3


class TestCertificates:
    def test_render_chain_format(self):
        assert best_upper_bound(5, 3).render_chain() == "Base[Ramos h=5, m=4, d=30] -> L2"
        assert best_upper_bound(2, 5).render_chain() == "Base[MVZ h=2, m=5, d=8]"
        assert best_upper_bound(6, 4).render_chain() == "Base[Ramos h=5, m=8, d=60] -> L1"

    def test_replay_rejects_tampered_value(self):
        cert = best_upper_bound(5, 3)
        bad = BoundCertificate(h=cert.h, m=cert.m, value=cert.value + 1, chain=cert.chain)
        with pytest.raises(CertificateError):
            replay_certificate(bad)

    def test_replay_rejects_wrong_state(self):
        cert = best_upper_bound(6, 4)
        steps = list(cert.chain)
        steps[1] = ReductionStep(rule=steps[1].rule, from_state=(9, 9))
        with pytest.raises(CertificateError):
            replay_certificate(BoundCertificate(h=6, m=4, value=cert.value, chain=tuple(steps)))

    def test_replay_requires_base_first(self):
        cert = best_upper_bound(6, 4)
        with pytest.raises(CertificateError):
            replay_certificate(
                BoundCertificate(h=6, m=4, value=cert.value, chain=cert.chain[1:])
            )

    def test_full_grid_replays(self):
        for row in table(9, 32):
            for cert in row:
                assert cert.replay() == cert.value
