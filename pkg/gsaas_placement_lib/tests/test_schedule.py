# -*- coding: utf-8 -*-

"""UNIT TESTS FOR SCHEDULE

This module contains unit tests for the gsaas_placement_lib.schedule module.

"""

from dataclasses import replace
from unittest import TestCase
import numpy as np
import numpy.testing as npt
from gsaas_placement_lib.errors import InfeasibleError
from gsaas_placement_lib.schedule import (chain_gaps, feasible_with_gap,
                                          max_data_schedule,
                                          min_max_gap_schedule,
                                          scale_to_mission)
from .helpers import (brute_max_data, brute_max_data_chain,
                      brute_min_max_gap, make_contact,
                      random_contacts)


class MaxDataTestCase(TestCase):

    def test_single_contact(self):

        contact = make_contact('S1', 'A', 10, 70, rate=2.0)
        sched = max_data_schedule([contact])

        npt.assert_equal(sched.chain, (contact.id,))
        npt.assert_almost_equal(sched.data_volume, 120.0)
        npt.assert_equal(sched.satellite_id, 'S1')

    def test_overlap_keeps_larger(self):

        small = make_contact('S1', 'A', 0, 100, rate=1.0)
        large = make_contact('S1', 'B', 50, 150, rate=2.0)
        sched = max_data_schedule([small, large])

        npt.assert_equal(sched.chain, (large.id,))
        npt.assert_almost_equal(sched.data_volume, 200.0)

    def test_touching_contacts_chain(self):

        first = make_contact('S1', 'A', 0, 100)
        second = make_contact('S1', 'B', 100, 200)
        sched = max_data_schedule([second, first])

        npt.assert_equal(sched.chain, (first.id, second.id))

    def test_empty(self):

        sched = max_data_schedule([])

        npt.assert_equal(sched.chain, ())
        npt.assert_equal(sched.data_volume, 0.0)

    def test_tie_smallest_ids(self):

        a = make_contact('S1', 'A', 0, 100)
        b = make_contact('S1', 'B', 0, 100)

        npt.assert_equal(max_data_schedule([b, a]).chain, (a.id,))

    def test_zero_volume_tail_dropped(self):

        a = make_contact('S1', 'A', 0, 100)
        b = make_contact('S1', 'B', 200, 300, rate=0.0)

        npt.assert_equal(max_data_schedule([b, a]).chain, (a.id,))

    def test_tie_compares_whole_chains(self):

        first = make_contact('S1', 'A', 0, 10)
        idle = make_contact('S1', 'A', 10, 20, rate=0.0)
        last = make_contact('S1', 'B', 30, 40)
        sched = max_data_schedule([last, idle, first])

        npt.assert_equal(sched.chain, (first.id, idle.id, last.id))
        npt.assert_almost_equal(sched.data_volume, 20.0)

    def test_mixed_satellites(self):

        npt.assert_raises(ValueError, max_data_schedule,
                          [make_contact('S1', 'A', 0, 10),
                           make_contact('S2', 'A', 20, 30)])

    def test_random_against_exhaustive(self):

        rng = np.random.RandomState(3)

        for _ in range(1000):
            contacts = random_contacts(rng, 'S1', ['A', 'B', 'C'],
                                       rng.randint(1, 16))
            sched = max_data_schedule(contacts)
            windows = sched.windows

            npt.assert_almost_equal(sched.data_volume,
                                    brute_max_data(contacts), decimal=9)
            for prev, nxt in zip(windows[:-1], windows[1:]):
                self.assertTrue(nxt.t_start >= prev.t_end)

    def test_random_chain_against_exhaustive(self):

        rng = np.random.RandomState(17)

        for _ in range(500):
            contacts = [replace(c, datarate=0.0) if rng.rand() < 0.3 else c
                        for c in random_contacts(rng, 'S1', ['A', 'B', 'C'],
                                                 rng.randint(1, 12),
                                                 horizon=300.0,
                                                 max_length=60.0)]

            npt.assert_equal(max_data_schedule(contacts).chain,
                             brute_max_data_chain(contacts))


class MinMaxGapTestCase(TestCase):

    def test_single_contact(self):

        contact = make_contact('S1', 'A', 100, 200)
        sched = min_max_gap_schedule([contact], 0.0, 1000.0)

        npt.assert_equal(sched.chain, (contact.id,))
        npt.assert_almost_equal(sched.max_gap, 800.0)

    def test_no_contacts(self):

        npt.assert_raises(InfeasibleError, min_max_gap_schedule, [], 0.0,
                          1000.0)

    def test_chain_gaps(self):

        chain = [make_contact('S1', 'A', 100, 200),
                 make_contact('S1', 'A', 500, 600)]

        npt.assert_equal(chain_gaps(chain, 0.0, 1000.0),
                         [100.0, 300.0, 400.0])

    def test_overlapping_candidates(self):

        # a latest-end greedy picks the long contact and misses the chain
        contacts = [make_contact('S1', 'A', 5, 20),
                    make_contact('S1', 'B', 1, 8),
                    make_contact('S1', 'C', 12, 40)]

        chain = feasible_with_gap(contacts, 10.0, 0.0, 50.0)

        self.assertIsNotNone(chain)
        npt.assert_equal([c.station_id for c in chain], ['B', 'C'])

    def test_gap_bound_monotone(self):

        contacts = [make_contact('S1', 'A', 100, 200),
                    make_contact('S1', 'B', 450, 550)]

        self.assertIsNone(feasible_with_gap(contacts, 249.0, 0.0, 1000.0))
        self.assertIsNotNone(feasible_with_gap(contacts, 450.0, 0.0,
                                               1000.0))

    def test_random_against_exhaustive(self):

        rng = np.random.RandomState(5)

        for _ in range(1000):
            contacts = random_contacts(rng, 'S1', ['A', 'B', 'C'],
                                       rng.randint(1, 16))
            sched = min_max_gap_schedule(contacts, 0.0, 1000.0)

            npt.assert_almost_equal(sched.max_gap,
                                    brute_min_max_gap(contacts, 0.0, 1000.0),
                                    decimal=9)


class ScaleToMissionTestCase(TestCase):

    def test_week_to_petabytes(self):

        npt.assert_almost_equal(scale_to_mission(720.0, 7 * 86400.0,
                                                 365 * 86400.0),
                                0.004693, decimal=6)

    def test_same_horizon(self):

        npt.assert_almost_equal(scale_to_mission(8e6, 100.0, 100.0), 1.0)

    def test_zero_horizon(self):

        npt.assert_raises(ValueError, scale_to_mission, 1.0, 0.0, 1.0)
