'''Tests for certificate rounding, exact verification, and the
certificate file formats.'''

import io
import random
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from monoflag.certificates import (
    Certificate,
    _gram,
    read_certificate,
    read_published_certificate,
    read_solver_solution,
    round_solution,
    variable_count,
    verification_report,
    verify_certificate,
    write_certificate,
)
from monoflag.hspoly import q_of_s
from monoflag.sdp import SdpProblem, assemble_problem, lower_bound_from_Q
from monoflag.words import parse_word


@pytest.fixture(scope='module')
def small():
    return assemble_problem(3, l=5)


def identity_solution(problem, scale=1.0, slack_value=1.0):
    blocks = [np.eye(t) * scale for t in problem.flag_counts]
    return blocks + [np.full(problem.m + 1, slack_value)]


def slack_completion(problem, q_blocks, margin=1e-6):
    '''Feasible solution with the given square blocks: the slack
    diagonal absorbs each constraint residue and entry [0] takes the
    largest value every constraint can spare, less the margin.'''
    inner = []
    for j in range(problem.m):
        total = 0.0
        for b, u, v, value in problem.entries_of(j):
            total += (2.0 if u != v else 1.0) * value * q_blocks[b][u, v]
        inner.append(float(problem.a[j]) - total)
    base = min(inner) - margin
    slack = np.array([base] + [x - base for x in inner])
    return list(q_blocks) + [slack]


def hand_problem():
    '''Two constraints, first block of order 2, everything checkable by
    hand: a = (4, 6), one off-diagonal entry and one diagonal entry.'''
    return SdpProblem(
        s=3, l=5,
        words=(parse_word('01010'), parse_word('00110')),
        flag_counts=(2, 1, 1, 1, 1, 1, 1, 1, 1),
        a=np.array([4, 6], dtype=np.int64),
        offsets=np.array([0, 1, 2], dtype=np.int64),
        entry_blocks=np.array([0, 0], dtype=np.int8),
        entry_rows=np.array([0, 0], dtype=np.int16),
        entry_cols=np.array([1, 0], dtype=np.int16),
        entry_values=np.array([5, 7], dtype=np.int32))


def hand_certificate():
    return Certificate(
        s=3, denominator=2,
        blocks=(((2,), (1, 3)),) + (((1,),),) * 8,
        slack=(3, 5, 7))


class TestRoundSolution:
    def test_identity_blocks(self, small):
        cert = round_solution(identity_solution(small), 10, s=3)
        assert cert.s == 3
        assert cert.denominator == 10
        assert cert.block_orders == small.flag_counts
        for rows in cert.blocks:
            for i, row in enumerate(rows):
                assert row[i] == 10
                assert all(v == 0 for v in row[:i])
        assert cert.slack == (10,) * (small.m + 1)
        assert cert.min_diagonal == 10

    def test_hand_cholesky(self):
        solution = ([np.array([[4.0, 2.0], [2.0, 2.0]])]
                    + [np.eye(1)] * 8 + [np.ones(3)])
        cert = round_solution(solution, 1, s=3)
        assert cert.blocks[0] == ((2,), (1, 1))
        assert cert.slack == (1, 1, 1)

    def test_slack_accepts_diagonal_matrix(self, small):
        solution = identity_solution(small)
        solution[9] = np.eye(small.m + 1) * 2.25
        cert = round_solution(solution, 10, s=3)
        assert cert.slack == (15,) * (small.m + 1)

    def test_ridge_recovers_singular_block(self, small):
        solution = identity_solution(small)
        t = small.flag_counts[0]
        singular = np.ones((2, 2))
        solution[0] = np.eye(t)
        solution[0][:2, :2] = singular
        cert = round_solution(solution, 10 ** 6, s=3)
        assert cert.blocks[0][1][1] >= 1

    def test_cholesky_failure_reported(self, small):
        solution = identity_solution(small)
        t = small.flag_counts[0]
        solution[0] = np.eye(t)
        solution[0][0, 1] = solution[0][1, 0] = 5.0
        with pytest.raises(ValueError, match='Cholesky'):
            round_solution(solution, 10, s=3)

    def test_small_denominator_rejected(self, small):
        solution = identity_solution(small)
        solution[0] = np.eye(small.flag_counts[0]) * 1e-16
        with pytest.raises(ValueError, match='denominator'):
            round_solution(solution, 1000, s=3)

    def test_negative_slack_rejected(self, small):
        solution = identity_solution(small)
        solution[9][3] = -0.5
        with pytest.raises(ValueError, match='negative'):
            round_solution(solution, 10, s=3)

    def test_block_count_checked(self):
        with pytest.raises(ValueError, match='blocks'):
            round_solution([np.eye(2)] * 9, 10, s=3)


class TestVerify:
    def test_hand_residuals(self):
        problem = hand_problem()
        cert = hand_certificate()
        result = verify_certificate(problem, cert)
        # M_0 = [[4, 2], [2, 10]], D^2 = 4, slack squares (9, 25, 49):
        # residual_0 = 2*5*2 + 9 + 25 - 16 = 38
        # residual_1 = 7*4 + 9 + 49 - 24 = 62
        assert result.trace_cm == 9
        assert result.epsilon == Fraction(31, 2)
        assert result.max_violation_index == 1
        assert result.bound == Fraction(9 - 62, 10 * 4)

    def test_trivial_certificate_weak_bound(self, small):
        blocks = [np.eye(t) * 1e-9 for t in small.flag_counts]
        cert = round_solution(slack_completion(small, blocks), 10 ** 6, s=3)
        result = verify_certificate(small, cert)
        assert Fraction(19, 100) < result.bound < Fraction(2, 10)
        assert result.epsilon < Fraction(1, 10 ** 4)

    def test_end_to_end_identity_q(self, small):
        blocks = [np.eye(t) * 1e-4 for t in small.flag_counts]
        cert = round_solution(slack_completion(small, blocks), 10 ** 6, s=3)
        result = verify_certificate(small, cert)
        rational = [[[Fraction(1, 10 ** 4) if u == v else Fraction(0)
                      for v in range(t)] for u in range(t)]
                    for t in small.flag_counts]
        reference = lower_bound_from_Q(small, rational)
        assert result.bound <= reference
        assert result.bound >= reference - Fraction(1, 10 ** 4)
        assert result.trace_cm == cert.slack[0] ** 2
        assert float(result.bound) < q_of_s(3)

    def test_doubling_denominator_cannot_lose_much(self, small):
        blocks = [np.eye(t) * 1e-4 for t in small.flag_counts]
        solution = slack_completion(small, blocks)
        for exponent in (3, 4, 5):
            d = 10 ** exponent
            coarse = verify_certificate(
                small, round_solution(solution, d, s=3)).bound
            fine = verify_certificate(
                small, round_solution(solution, 2 * d, s=3)).bound
            assert fine >= coarse - Fraction(10, d)

    def test_deterministic(self, small):
        cert = round_solution(identity_solution(small), 10, s=3)
        assert verify_certificate(small, cert) == verify_certificate(
            small, cert)

    def test_structure_mismatches(self, small):
        cert = round_solution(identity_solution(small), 10, s=3)
        with pytest.raises(ValueError, match='s=4'):
            verify_certificate(small, replace(cert, s=4))
        with pytest.raises(ValueError, match='slack diagonal'):
            verify_certificate(small, replace(cert,
                                              slack=cert.slack + (10,)))
        bad_blocks = cert.blocks[:8] + ((((10,),),) + ())
        with pytest.raises(ValueError, match='block orders'):
            verify_certificate(small, replace(cert, blocks=bad_blocks))

    def test_nonpositive_diagonal_rejected(self, small):
        cert = round_solution(identity_solution(small), 10, s=3)
        zero_slack = replace(cert, slack=(0,) + cert.slack[1:])
        with pytest.raises(ValueError, match='nonpositive'):
            verify_certificate(small, zero_slack)
        first = ((-10,),) + cert.blocks[0][1:]
        with pytest.raises(ValueError, match='nonpositive'):
            verify_certificate(small, replace(cert,
                                              blocks=(first,)
                                              + cert.blocks[1:]))


def gram_reference(rows):
    t = len(rows)
    full = [[rows[i][j] if j <= i else 0 for j in range(t)]
            for i in range(t)]
    return [[sum(full[i][k] * full[j][k] for k in range(t))
             for j in range(t)] for i in range(t)]


class TestGram:
    def test_all_paths_agree(self):
        rng = random.Random(11)
        # magnitudes selected to hit the int64, 20-bit split, and
        # object paths in turn
        for magnitude in (90, 3 * 10 ** 9 // 2, 2 ** 33):
            rows = tuple(tuple(rng.randint(-magnitude, magnitude)
                               for _ in range(i + 1)) for i in range(6))
            got = _gram(rows)
            want = gram_reference(rows)
            for i in range(6):
                for j in range(6):
                    assert int(got[i, j]) == want[i][j]

    def test_zero_factor(self):
        assert int(_gram(((0,),))[0, 0]) == 0


class TestCertificateFiles:
    def test_monocert_round_trip(self, small):
        cert = round_solution(identity_solution(small), 10, s=3)
        buffer = io.StringIO()
        write_certificate(cert, buffer)
        buffer.seek(0)
        assert read_certificate(buffer) == cert

    def test_monocert_round_trip_through_path(self, tmp_path):
        cert = hand_certificate()
        path = tmp_path / 'hand.cert'
        write_certificate(cert, str(path))
        assert read_certificate(str(path)) == cert

    def test_monocert_layout(self, small):
        cert = round_solution(identity_solution(small), 10, s=3)
        buffer = io.StringIO()
        write_certificate(cert, buffer)
        lines = buffer.getvalue().splitlines()
        assert lines[0] == 'MONOCERT v1'
        assert lines[1] == 's=3 D=10 blocks=10'
        assert lines[2] == 'block 1 14 lower'
        assert lines[3] == '10'
        assert lines[4] == '0 10'
        anchor = lines.index('block 10 77 diag')
        assert lines[anchor + 1] == '10'
        assert len(lines) == anchor + 78

    def test_monocert_rejects_garbage(self):
        cert = hand_certificate()
        buffer = io.StringIO()
        write_certificate(cert, buffer)
        text = buffer.getvalue()
        with pytest.raises(ValueError, match='MONOCERT'):
            read_certificate(io.StringIO('BOGUS v1\n' + text[12:]))
        tokens = text.split()
        truncated = ' '.join(tokens[:len(tokens) // 2])
        with pytest.raises(ValueError, match='truncated'):
            read_certificate(io.StringIO(truncated))
        with pytest.raises(ValueError, match='trailing'):
            read_certificate(io.StringIO(text + ' 7'))

    def test_published_layout(self):
        cert = hand_certificate()
        pieces = ['Block 1 of L (dimension 2)\n2 \n1 3 \n']
        for k in range(2, 10):
            pieces.append('Block %d of L (dimension 1)\n1 \n' % k)
        pieces.append('Slack block of L (diagonal of order 3)\n3\n5\n7\n')
        text = ''.join(pieces)
        got = read_published_certificate(io.StringIO(text), 3, denominator=2)
        assert got == cert
        result = verify_certificate(hand_problem(), got)
        assert result == verify_certificate(hand_problem(), cert)

    def test_published_layout_rejects_disorder(self):
        text = ('Block 2 of L (dimension 1)\n1 \n')
        with pytest.raises(ValueError, match='order'):
            read_published_certificate(io.StringIO(text), 3)
        with pytest.raises(ValueError, match='truncated'):
            read_published_certificate(
                io.StringIO('Block 1 of L (dimension 4)\n1 \n'), 3)

    def test_solver_solution_reader(self, small, tmp_path):
        text = ('2.0 3.0 4.0\n'
                '1 1 1 1 9.5\n'
                '2 1 1 2 0.25\n'
                '2 3 2 2 1.5\n'
                '\n'
                '2 10 5 5 0.75\n')
        solution = read_solver_solution(io.StringIO(text), small.block_sizes)
        assert len(solution) == 10
        assert solution[0].shape == (14, 14)
        assert solution[0][0, 1] == solution[0][1, 0] == 0.25
        assert solution[2][1, 1] == 1.5
        assert solution[9].shape == (77,)
        assert solution[9][4] == 0.75
        assert solution[1].sum() == 0
        path = tmp_path / 'solver.out'
        path.write_text(text)
        again = read_solver_solution(str(path), small.block_sizes)
        assert all((a == b).all() for a, b in zip(solution, again))

    def test_solver_solution_rejects_bad_entries(self, small):
        with pytest.raises(ValueError, match='diagonal'):
            read_solver_solution(io.StringIO('0.0\n2 10 1 2 1.0\n'),
                                 small.block_sizes)
        with pytest.raises(ValueError, match='block sizes'):
            read_solver_solution(io.StringIO('0.0\n'), (3, 3))


class TestAccounting:
    def test_variable_count_hand(self):
        assert variable_count(hand_problem()) == 3 + 8 + 2 + 1

    def test_variable_count_small(self, small):
        assert variable_count(small) == 840

    def test_verification_report(self):
        problem = hand_problem()
        cert = hand_certificate()
        report = verification_report(cert, verify_certificate(problem, cert))
        assert report == {
            's': 3,
            'D': 2,
            'trace_CM': 9,
            'epsilon': '31/2',
            'bound': '-53/40',
            'bound_decimal': -1.325,
            'min_diagonal': 1,
        }
