# -*- coding: utf-8 -*-

"""UNIT TESTS FOR OBJECTIVE AND AUDIT

This module contains unit tests for the gsaas_placement_lib.objective and
gsaas_placement_lib.audit modules.

"""

from dataclasses import replace
from unittest import TestCase
import numpy.testing as npt
from gsaas_placement_lib.audit import (audit_solution, check_solution,
                                       deviation)
from gsaas_placement_lib.catalog import Objective
from gsaas_placement_lib.errors import InfeasibleError
from gsaas_placement_lib.exact import evaluate_station_set
from gsaas_placement_lib.objective import (MaxDataObjective,
                                           MinMaxGapObjective, get_objective)
from gsaas_placement_lib.schedule import make_schedule
from .helpers import make_contact, make_scenario, make_station


class ObjectiveTestCase(TestCase):

    def setUp(self):

        self.groups = {'S1': [make_contact('S1', 'A', 0, 100)],
                       'S2': [make_contact('S2', 'A', 300, 500, rate=2.0)]}

    def test_get_objective(self):

        self.assertIsInstance(get_objective(make_scenario()),
                              MaxDataObjective)
        self.assertIsInstance(get_objective(make_scenario(
            objective=Objective.MinMaxGap)), MinMaxGapObjective)

    def test_max_data_scaling(self):

        scenario = make_scenario(t_opt_end=2000.0)
        schedules, value = get_objective(scenario).evaluate(self.groups,
                                                            ['S1', 'S2'])

        npt.assert_equal([s.satellite_id for s in schedules], ['S1', 'S2'])
        npt.assert_almost_equal(value, 500.0 * 2 / 8e6)

    def test_min_max_gap_value(self):

        objective = get_objective(make_scenario(
            objective=Objective.MinMaxGap))
        _, value = objective.evaluate(self.groups, ['S1', 'S2'])

        npt.assert_almost_equal(value, 900.0)
        npt.assert_raises(InfeasibleError, objective.evaluate, self.groups,
                          ['S1', 'S3'])

    def test_comparisons(self):

        max_data = get_objective(make_scenario())
        min_gap = get_objective(make_scenario(objective=Objective.MinMaxGap))

        self.assertTrue(max_data.better(2.0, 1.0))
        self.assertFalse(max_data.better(1.0, 1.0 + 1e-12))
        self.assertTrue(min_gap.better(1.0, 2.0))
        self.assertTrue(max_data.can_improve(2.0, 1.0))
        self.assertFalse(min_gap.can_improve(2.0, 1.0))


class AuditTestCase(TestCase):

    def setUp(self):

        self.scenario = make_scenario(n_stations=2, min_contact_duration=30.0)
        self.catalog = [make_station('A'), make_station('B', 'P2')]
        self.contacts = [make_contact('S1', 'A', 0, 100),
                         make_contact('S1', 'B', 200, 300)]
        self.solution = evaluate_station_set(['A', 'B'], self.contacts,
                                             self.scenario,
                                             catalog=self.catalog)

    def test_clean(self):

        npt.assert_equal(audit_solution(self.solution, self.scenario,
                                        self.contacts), [])
        check_solution(self.solution, self.scenario, self.contacts)

    def test_wrong_size(self):

        violations = audit_solution(self.solution,
                                    make_scenario(n_stations=3))

        npt.assert_equal(len(violations), 1)

    def test_overlapping_chain(self):

        windows = [make_contact('S1', 'A', 0, 100),
                   make_contact('S1', 'B', 50, 300)]
        bad = replace(self.solution,
                      per_satellite=(make_schedule('S1', windows),))

        self.assertTrue(any('overlap' in v for v in audit_solution(
            bad, self.scenario)))
        npt.assert_raises(RuntimeError, check_solution, bad, self.scenario)

    def test_short_and_unknown_contact(self):

        windows = [make_contact('S1', 'A', 500, 510)]
        bad = replace(self.solution,
                      per_satellite=(make_schedule('S1', windows),))
        violations = audit_solution(bad, self.scenario, self.contacts)

        self.assertTrue(any('t_min' in v for v in violations))
        self.assertTrue(any('unknown' in v for v in violations))

    def test_min_max_gap_empty_chain(self):

        scenario = make_scenario(n_stations=2, objective=Objective.MinMaxGap)
        bad = replace(self.solution,
                      per_satellite=(make_schedule('S1', []),))
        violations = audit_solution(bad, scenario, self.contacts)

        npt.assert_equal(violations, ['S1: no contact scheduled.'])
        npt.assert_equal(audit_solution(bad, self.scenario, self.contacts),
                         [])

    def test_provider_linking(self):

        bad = replace(self.solution, provider_ids=('P1',))

        self.assertTrue(any('Providers' in v for v in audit_solution(
            bad, self.scenario)))

    def test_deviation_sign(self):

        npt.assert_equal(deviation(Objective.MaxData, 8.0, 10.0), 2.0)
        npt.assert_equal(deviation(Objective.MinMaxGap, 12.0, 10.0), 2.0)
        self.assertIsNone(deviation(Objective.MaxData, None, 10.0))
