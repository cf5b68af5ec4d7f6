# -*- coding: utf-8 -*-

"""UNIT TESTS FOR PIPELINE

This module contains unit tests for the gsaas_placement_lib.pipeline module.

"""

import os
from dataclasses import replace
from tempfile import TemporaryDirectory
from types import SimpleNamespace
from unittest import TestCase
import numpy as np
import numpy.testing as npt
from gsaas_placement_lib.astro import generate_walker_star
from gsaas_placement_lib.catalog import (Objective, Provider, load_scenario,
                                         load_station_catalog)
from gsaas_placement_lib.errors import InputError, StageError
from gsaas_placement_lib.exact import MethodLabel
from gsaas_placement_lib.file_io import read_json
from gsaas_placement_lib.pipeline import (ComparisonCell, Stage, StageReport,
                                          cell_record,
                                          decomposed_solution, emit_reports,
                                          resolve_method, run_scenario,
                                          sweep_walker, window_values)
from gsaas_placement_lib.scalable import SelectionPoint
from .helpers import make_contact, make_scenario, make_station

EPOCH = 1755820800.0
DAY = 86400.0
EXAMPLE = os.path.join(os.path.dirname(os.path.abspath(__file__)), '..', '..',
                       'example')


def toy_catalog():

    stations = [make_station('A', 'P1', 10.0, 10.0),
                make_station('B', 'P1', 20.0, 20.0),
                make_station('C', 'P2', -30.0, 100.0)]
    providers = [Provider(id='P1', name='P1', station_ids=('A', 'B')),
                 Provider(id='P2', name='P2', station_ids=('C',))]

    return providers, stations


def toy_contacts():

    return [make_contact('S1', 'A', 0, 100),
            make_contact('S1', 'B', 200, 550),
            make_contact('S1', 'C', 600, 900),
            make_contact('S2', 'A', 300, 400),
            make_contact('S2', 'B', 700, 800)]


def polar_catalog():

    stations = [make_station('svalbard', 'P1', 78.23, 15.4, 1.2),
                make_station('fairbanks', 'P1', 64.8, -147.5, 0.8),
                make_station('troll', 'P2', -72.01, 2.53, 1.0),
                make_station('tolhuin', 'P2', -54.51, -67.12, 0.8)]
    providers = [Provider(id='P1', name='P1',
                          station_ids=('fairbanks', 'svalbard')),
                 Provider(id='P2', name='P2',
                          station_ids=('tolhuin', 'troll'))]

    return providers, stations


def polar_scenario(**kwargs):

    params = dict(t_sim_start=EPOCH, t_sim_end=EPOCH + DAY,
                  t_opt_start=EPOCH, t_opt_end=EPOCH + 365 * DAY,
                  window_length=DAY / 2, window_overlap=DAY / 4,
                  min_contact_duration=60.0, candidate_pool=('P1', 'P2'),
                  walker={'altitude_km': 781.0, 'eccentricity': 0.001,
                          'inclination_deg': 86.4, 'sats_per_plane': 1,
                          'datarate_gbps': 1.2})
    params.update(kwargs)

    return make_scenario(**params)


class StageReportTestCase(TestCase):

    def test_from_values(self):

        report = StageReport.from_values(Stage.Decomposition, [1.0, 2.0, 3.0])

        npt.assert_equal((report.min, report.mean, report.max),
                         (1.0, 2.0, 3.0))
        self.assertIsNone(report.solution_delta)

    def test_mean_clamped(self):

        report = StageReport.from_values(Stage.FinalMatch, [0.1] * 3)

        self.assertTrue(report.min <= report.mean <= report.max)

    def test_invalid(self):

        npt.assert_raises(ValueError, StageReport, Stage.Clustering, 2.0,
                          1.0, 1.0)


class MethodTestCase(TestCase):

    def test_resolve(self):

        npt.assert_equal(resolve_method('kmedoids'),
                         (MethodLabel.KMedoids, None, 'kmedoids'))
        npt.assert_equal(resolve_method('dbscan-hungarian-design'),
                         (MethodLabel.DbscanHungarian, 'design',
                          'dbscan-hungarian-design'))
        npt.assert_equal(resolve_method(MethodLabel.IpOptimal)[0],
                         MethodLabel.IpOptimal)
        npt.assert_raises(InputError, resolve_method, 'greedy')


class WindowValuesTestCase(TestCase):

    def setUp(self):

        def result(window, value):
            solution = (None if value is None else
                        SimpleNamespace(objective_value=value))
            return SimpleNamespace(spec=SimpleNamespace(window_index=window),
                                   solution=solution)

        self.results = [result(0, 1.0), result(0, 2.0), result(1, 4.0),
                        result(1, None), result(2, 0.5)]

    def test_max_data_sums_groups(self):

        npt.assert_equal(window_values(self.results, make_scenario()),
                         [3.0, 4.0, 0.5])

    def test_min_max_gap_drops_skipped_windows(self):

        scenario = make_scenario(objective=Objective.MinMaxGap)

        npt.assert_equal(window_values(self.results, scenario), [2.0, 0.5])


class DecomposedSolutionTestCase(TestCase):

    def test_counts_and_padding(self):

        design = [make_station('A'), make_station('B'), make_station('C')]
        points = [SelectionPoint(0.0, 0.0, (0, 0, ('S1',), 'B')),
                  SelectionPoint(0.0, 0.0, (1, 1, ('S1',), 'A')),
                  SelectionPoint(0.0, 0.0, (2, 2, ('S1',), 'B'))]

        top = decomposed_solution(points, 1.5, make_scenario(), design,
                                  ['S1'])
        padded = decomposed_solution(points, 1.5, make_scenario(n_stations=3),
                                     design, ['S1'])

        npt.assert_equal(top.station_ids, ('B',))
        npt.assert_equal(padded.station_ids, ('A', 'B', 'C'))
        self.assertFalse(top.comparable)
        self.assertTrue(top.diagnostics['approximate'])
        npt.assert_equal(top.diagnostics['counts'], {'A': 1, 'B': 2})


class RunScenarioTestCase(TestCase):

    def setUp(self):

        self.catalog = toy_catalog()
        self.contacts = toy_contacts()
        self.scenario = make_scenario()

    def test_ip_optimal(self):

        result = run_scenario(self.scenario, self.catalog, 'ip-optimal',
                              contacts=self.contacts)
        report, = result.stage_reports

        npt.assert_equal(result.solution.station_ids, ('B',))
        npt.assert_almost_equal(result.solution.objective_value, 450.0 / 8e6)
        npt.assert_equal(report.stage, Stage.FinalMatch)
        npt.assert_equal((report.min, report.mean), (report.max, report.max))

    def test_ip_decomposed(self):

        result = run_scenario(self.scenario, self.catalog, 'ip-decomposed',
                              contacts=self.contacts)

        npt.assert_equal([r.stage for r in result.stage_reports],
                         [Stage.Decomposition])
        npt.assert_equal(result.solution.station_ids, ('B',))
        self.assertFalse(result.solution.comparable)
        npt.assert_equal(result.solution.objective_value,
                         result.stage_reports[0].mean)

    def test_dbscan_hungarian_without_satellites(self):

        result = run_scenario(self.scenario, self.catalog,
                              'dbscan-hungarian', contacts=self.contacts)
        optimal = run_scenario(self.scenario, self.catalog, 'ip-optimal',
                               contacts=self.contacts)

        npt.assert_equal([r.stage for r in result.stage_reports],
                         [Stage.Decomposition, Stage.FinalMatch])
        npt.assert_equal(result.solution.station_ids, ('B',))
        npt.assert_almost_equal(result.solution.objective_value,
                                optimal.solution.objective_value)
        self.assertTrue(result.stage_reports[-1].solution_delta >= 0)

    def test_stage_errors(self):

        with self.assertRaises(StageError) as context:
            run_scenario(self.scenario, self.catalog, 'ip-optimal')
        npt.assert_equal(context.exception.stage, Stage.Contacts.value)
        npt.assert_equal(context.exception.exit_code, 4)

        with self.assertRaises(StageError) as context:
            run_scenario(self.scenario, self.catalog, 'dbscan',
                         contacts=self.contacts)
        npt.assert_equal(context.exception.stage, Stage.Clustering.value)

        with self.assertRaises(StageError) as context:
            run_scenario(make_scenario(n_stations=3), self.catalog,
                         'ip-optimal', contacts=self.contacts)
        npt.assert_equal(context.exception.stage, Stage.FinalMatch.value)

    def test_contacts_filtered_by_duration(self):

        scenario = make_scenario(min_contact_duration=150.0)
        result = run_scenario(scenario, self.catalog, 'ip-optimal',
                              contacts=self.contacts)

        npt.assert_equal(result.solution.station_ids, ('B',))
        npt.assert_almost_equal(result.solution.objective_value, 350.0 / 8e6)

    def test_satellite_with_only_short_contacts(self):

        contacts = self.contacts + [make_contact('S3', 'A', 0, 10)]
        scenario = make_scenario(min_contact_duration=30.0)
        result = run_scenario(scenario, self.catalog, 'ip-optimal',
                              contacts=contacts)

        npt.assert_equal([s.satellite_id for s in
                          result.solution.per_satellite], ['S1', 'S2', 'S3'])
        npt.assert_equal(result.solution.per_satellite[2].chain, ())

        scenario = make_scenario(objective=Objective.MinMaxGap,
                                 min_contact_duration=30.0)
        for method in ('ip-optimal', 'dbscan-hungarian'):
            with self.assertRaises(StageError) as context:
                run_scenario(scenario, self.catalog, method,
                             contacts=contacts)
            npt.assert_equal(context.exception.exit_code, 2)


class WalkerRunTestCase(TestCase):

    @classmethod
    def setUpClass(cls):

        cls.catalog = polar_catalog()
        cls.scenario = polar_scenario()
        cls.methods = ['ip-optimal', 'dbscan-hungarian', 'kmedoids']
        cls.cells = sweep_walker(cls.scenario, cls.catalog, 1, 1,
                                 cls.methods)

    def test_stage_order(self):

        satellites = generate_walker_star(781.0, 0.001, 86.4, 1, 1, 1.2,
                                          EPOCH)
        result = run_scenario(self.scenario, self.catalog,
                              'dbscan-hungarian', satellites=satellites)

        npt.assert_equal([r.stage for r in result.stage_reports],
                         [Stage.Decomposition, Stage.Clustering,
                          Stage.FinalMatch])
        npt.assert_equal(len(result.solution.station_ids), 1)

    def test_sweep_cells(self):

        npt.assert_equal([c.key for c in self.cells],
                         [(1, 1, name) for name in sorted(self.methods)])
        self.assertTrue(all(c.error is None for c in self.cells))

        by_method = {c.method_label: c for c in self.cells}
        npt.assert_equal(by_method['ip-optimal'].deviation_from_optimal, 0.0)
        self.assertTrue(by_method['dbscan-hungarian'].deviation_from_optimal
                        >= -1e-12)
        self.assertTrue(by_method['kmedoids'].deviation_from_optimal
                        >= -1e-12)

    def test_sweep_workers(self):

        parallel = sweep_walker(self.scenario, self.catalog, 1, 1,
                                self.methods, workers=8)

        npt.assert_equal([cell_record(c) for c in parallel],
                         [cell_record(c) for c in self.cells])

        with TemporaryDirectory() as tmp:
            serial_paths = emit_reports(self.cells, os.path.join(tmp, 's'))
            parallel_paths = emit_reports(parallel, os.path.join(tmp, 'p'))
            for path_a, path_b in zip(serial_paths, parallel_paths):
                with open(path_a, 'rb') as file_a, \
                        open(path_b, 'rb') as file_b:
                    npt.assert_equal(file_a.read(), file_b.read())

    def test_invalid_sweep(self):

        npt.assert_raises(ValueError, sweep_walker, self.scenario,
                          self.catalog, 0, 1, self.methods)
        npt.assert_raises(InputError, sweep_walker, self.scenario,
                          self.catalog, 1, 1, ['greedy'])

    def test_sweep_reports_stable(self):

        with TemporaryDirectory() as tmp:
            first = emit_reports(self.cells, os.path.join(tmp, 'a'))
            second = emit_reports(self.cells, os.path.join(tmp, 'b'))

            npt.assert_equal([os.path.basename(p) for p in first],
                             ['sweep.json', 'heatmap.csv',
                              'stations.geojson'])
            for path_a, path_b in zip(first, second):
                with open(path_a, 'rb') as file_a, \
                        open(path_b, 'rb') as file_b:
                    npt.assert_equal(file_a.read(), file_b.read())

            with open(first[1]) as heatmap:
                lines = heatmap.read().splitlines()

        npt.assert_equal(lines[0], 'sats,n,method,value,deviation')
        npt.assert_equal(len(lines), 1 + len(self.cells))


class EmitReportsTestCase(TestCase):

    def test_solution_reports(self):

        result = run_scenario(make_scenario(), toy_catalog(),
                              'dbscan-hungarian', contacts=toy_contacts())

        with TemporaryDirectory() as tmp:
            written = emit_reports(result, tmp)
            record = read_json(written[0])
            with open(written[0], 'rb') as open_file:
                original = open_file.read()

            replay = emit_reports(record, os.path.join(tmp, 'replay'))
            with open(replay[0], 'rb') as open_file:
                npt.assert_equal(open_file.read(), original)

            with open(written[1]) as open_file:
                stages = open_file.read().splitlines()

        npt.assert_equal([os.path.basename(p) for p in written],
                         ['solution.json', 'stages.csv', 'stations.geojson'])
        npt.assert_equal(record['method'], 'dbscan-hungarian')
        npt.assert_equal(record['station_ids'], ['B'])
        npt.assert_equal(record['stations'][0]['provider'], 'P1')
        npt.assert_equal(stages[0], 'stage,min,mean,max,solution_delta')
        npt.assert_equal([line.split(',')[0] for line in stages[1:]],
                         ['Decomposition', 'FinalMatch'])

    def test_failed_cells_left_out_of_heatmap(self):

        cells = [ComparisonCell(1, 1, 'ip-optimal', 1.0, 0.0),
                 ComparisonCell(1, 1, 'kmedoids', error='boom')]

        with TemporaryDirectory() as tmp:
            written = emit_reports(cells, tmp)
            sweep = read_json(written[0])
            with open(written[1]) as open_file:
                lines = open_file.read().splitlines()

        npt.assert_equal(len(sweep), 2)
        npt.assert_equal(sweep[1]['error'], 'boom')
        npt.assert_equal(len(lines), 2)


class ExampleSweepTestCase(TestCase):

    @classmethod
    def setUpClass(cls):

        cls.catalog = load_station_catalog(os.path.join(EXAMPLE,
                                                        'stations.csv'))
        cls.scenario = load_scenario(os.path.join(EXAMPLE, 'scenario.ini'))

    def sweep(self, objective):

        scenario = replace(self.scenario, objective=objective)
        cells = sweep_walker(scenario, self.catalog, 3, 3,
                             ['ip-optimal', 'dbscan-hungarian'])
        optimal = {(c.num_satellites, c.n_stations): c.objective_value
                   for c in cells if c.method_label == 'ip-optimal'}

        self.assertTrue(all(c.error is None for c in cells))

        return [(c.objective_value, optimal[c.num_satellites, c.n_stations])
                for c in cells if c.method_label == 'dbscan-hungarian']

    def test_max_data_close_to_optimal(self):

        pairs = self.sweep(Objective.MaxData)

        npt.assert_equal(len(pairs), 9)
        for value, optimal in pairs:
            self.assertTrue(value >= 0.95 * optimal)

    def test_min_max_gap_close_to_optimal(self):

        pairs = self.sweep(Objective.MinMaxGap)
        close = [value - optimal <= max(0.05 * optimal, 360.0)
                 for value, optimal in pairs]

        npt.assert_equal(len(pairs), 9)
        self.assertTrue(np.mean(close) >= 0.9)
