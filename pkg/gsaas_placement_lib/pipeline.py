# -*- coding: utf-8 -*-

"""SITE SELECTION PIPELINE

This module contains the end-to-end site selection runs, the Walker-Star
method comparison sweep and the report emission.

"""

from contextlib import contextmanager
from dataclasses import dataclass, field, replace
from enum import Enum
from multiprocessing import Pool
import os
import numpy as np
from modopt.interface.errors import warn
from .astro import generate_walker_star
from .audit import deviation
from .catalog import Objective, pool_stations
from .contacts import compute_contacts, filter_contacts, restrict_contacts
from .errors import InfeasibleError, InputError, StageError
from .exact import MethodLabel, SelectionSolution, solve_exact
from .file_io import (make_out_dir, station_features, write_geojson,
                      write_heatmap_csv, write_json, write_stage_csv)
from .scalable import (make_subproblems, run_subproblems,
                       select_final_stations, selection_points)


class Stage(Enum):
    """Pipeline stage"""

    Contacts = 'Contacts'
    Decomposition = 'Decomposition'
    Clustering = 'Clustering'
    FinalMatch = 'FinalMatch'


@dataclass(frozen=True)
class StageReport:
    """Stage report

    Parameters
    ----------
    stage : Stage
        Stage
    min, mean, max : float
        Range of the stage objective values
    solution_delta : float, optional
        Quality lost between the best decomposition value and this stage,
        positive when this stage is worse

    """

    stage: Stage
    min: float
    mean: float
    max: float
    solution_delta: float = None

    def __post_init__(self):

        if not self.min <= self.max:
            raise ValueError('Stage report minimum exceeds its maximum.')

        # mean of equal floats may drift by one ulp
        object.__setattr__(self, 'mean', min(max(self.mean, self.min),
                                             self.max))

    @classmethod
    def from_values(cls, stage, values, solution_delta=None):
        """Stage report of a list of values"""

        values = np.asarray(values, dtype=float)

        return cls(stage=stage, min=float(values.min()),
                   mean=float(values.mean()), max=float(values.max()),
                   solution_delta=solution_delta)


@dataclass(frozen=True)
class RunResult:
    """Result of one site selection run"""

    solution: SelectionSolution
    stage_reports: tuple
    scenario: object = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ComparisonCell:
    """Comparison cell

    Parameters
    ----------
    num_satellites : int
        Constellation size
    n_stations : int
        Number of selected stations
    method_label : str
        Method label
    objective_value : float or None
        Objective value, None for a failed cell
    deviation_from_optimal : float or None
        Deviation from the ip-optimal cell of the same size, positive when
        sub-optimal
    error : str or None
        Failure message
    solution : SelectionSolution or None
        Solution of the cell

    """

    num_satellites: int
    n_stations: int
    method_label: str
    objective_value: float = None
    deviation_from_optimal: float = None
    error: str = None
    solution: object = field(default=None, compare=False, repr=False)

    @property
    def key(self):
        """Collector order"""

        return (self.num_satellites, self.n_stations, self.method_label)


def resolve_method(name):
    """Resolve method name

    Parameters
    ----------
    name : str or MethodLabel
        Method label, ``dbscan-hungarian-design`` selects DbscanHungarian
        matched to the design pool

    Returns
    -------
    tuple of MethodLabel, match pool (or None) and report label

    Raises
    ------
    InputError
        For unknown method names

    """

    if isinstance(name, MethodLabel):
        return name, None, name.value

    if name == 'dbscan-hungarian-design':
        return MethodLabel.DbscanHungarian, 'design', name

    try:
        return MethodLabel(name), None, name
    except ValueError:
        raise InputError('Unknown method {!r}.'.format(name))


@contextmanager
def _stage(stage):

    try:
        yield
    except StageError:
        raise
    except Exception as err:
        raise StageError(stage.value, err)


def window_values(results, scenario):
    """Decomposition values per window

    MaxData subproblem values are already scaled from their window to the
    mission horizon, so summing the groups of a window gives a full scale
    estimate. MinMaxGap windows take the largest group value; windows with a
    skipped group are left out.

    Parameters
    ----------
    results : list of SubproblemResult
        Subproblem results
    scenario : ScenarioConfig
        Scenario

    Returns
    -------
    list of float, one per retained window in window order

    """

    windows = {}
    for result in results:
        windows.setdefault(result.spec.window_index, []).append(result)

    values = []
    for index in sorted(windows):
        group = windows[index]
        if scenario.objective == Objective.MaxData:
            values.append(sum(r.solution.objective_value for r in group
                              if r.solution is not None))
        elif all(r.solution is not None for r in group):
            values.append(max(r.solution.objective_value for r in group))

    return values


def decomposed_solution(points, value, scenario, design_pool, sat_ids):
    """Decomposed solution

    The n stations selected most often across subproblems, ties by id,
    padded from the design pool by id. The value is the normalised mean
    decomposition value and no schedules are attached.

    """

    counts = {}
    for point in points:
        counts[point.station_id] = counts.get(point.station_id, 0) + 1

    ranked = sorted(counts, key=lambda key: (-counts[key], key))
    chosen = ranked[:scenario.n_stations]
    for station in sorted(design_pool, key=lambda s: s.id):
        if len(chosen) >= scenario.n_stations:
            break
        if station.id not in chosen:
            chosen.append(station.id)

    records = {s.id: s for s in design_pool}
    stations = tuple(records[key] for key in sorted(chosen))

    return SelectionSolution(
        station_ids=tuple(sorted(chosen)),
        provider_ids=tuple(sorted({s.provider_id for s in stations})),
        per_satellite=(), objective_kind=scenario.objective,
        objective_value=value, method_label=MethodLabel.IpDecomposed,
        comparable=False, stations=stations,
        diagnostics={'approximate': True, 'counts': counts,
                     'satellites': list(sat_ids)})


def _best(values, objective):

    return max(values) if objective == Objective.MaxData else min(values)


def run_scenario(scenario, catalog, method, contacts=None, satellites=None,
                 seed=0, workers=1, match_pool=None, log=None):
    """Run scenario

    This method runs one site selection: contacts, then either the exact
    solver or decomposition, clustering and matching.

    Parameters
    ----------
    scenario : ScenarioConfig
        Scenario
    catalog : tuple
        (providers, stations) as returned by `load_station_catalog`
    method : str or MethodLabel
        Method label
    contacts : list of ContactWindow, optional
        Imported contacts. If not provided they are computed from
        `satellites`.
    satellites : list of Satellite, optional
        Satellites
    seed : int, optional
        Random seed (default is 0)
    workers : int, optional
        Number of worker processes (default is 1)
    match_pool : str {'full', 'design'}, optional
        Matching pool override
    log : logging.Logger, optional
        Log instance

    Returns
    -------
    RunResult

    Raises
    ------
    StageError
        Wrapping any failure, tagged with the stage it happened in

    """

    method, method_pool, label = resolve_method(method)
    match_pool = match_pool or method_pool
    stations = catalog[1]
    design = pool_stations(stations, scenario.candidate_pool)
    needed = sorted({s.id: s for s in (design + pool_stations(
        stations, scenario.full_pool))}.values(), key=lambda s: s.id)

    with _stage(Stage.Contacts):
        if contacts is None:
            if satellites is None:
                raise InputError('Satellites or contacts are required.')
            contacts = compute_contacts(
                satellites, needed, scenario.t_sim_start, scenario.t_sim_end,
                scenario.elevation_mask, scenario.coarse_step,
                scenario.fixed_rate, workers, log)
        # satellites whose contacts are all filtered out still count
        sat_ids = (sorted(s.id for s in satellites) if satellites is not None
                   else sorted({c.satellite_id for c in contacts}))
        contacts = filter_contacts(
            restrict_contacts(contacts, [s.id for s in needed]),
            scenario.min_contact_duration)

    if method == MethodLabel.IpOptimal:
        with _stage(Stage.FinalMatch):
            solution = solve_exact(scenario, design, contacts, sat_ids,
                                   log=log)
        report = StageReport.from_values(Stage.FinalMatch,
                                         [solution.objective_value])
        return RunResult(solution=solution, stage_reports=(report,),
                         scenario=scenario)

    with _stage(Stage.Decomposition):
        specs = make_subproblems(scenario, sat_ids, design)
        results = run_subproblems(specs, contacts, scenario, design, workers,
                                  log)
        points = selection_points(results, design)
        values = window_values(results, scenario)
        if not points or not values:
            raise InfeasibleError('Every decomposition subproblem was '
                                  'skipped.')

    reports = [StageReport.from_values(Stage.Decomposition, values)]
    best = _best(values, scenario.objective)
    if log is not None:
        log.info(' - Subproblems: ' + str(len(specs)))
        log.info(' - Selection points: ' + str(len(points)))

    if method == MethodLabel.IpDecomposed:
        solution = decomposed_solution(points, reports[0].mean, scenario,
                                       design, sat_ids)
        return RunResult(solution=solution, stage_reports=tuple(reports),
                         scenario=scenario)

    clustered = None
    if method in (MethodLabel.DbscanOnly, MethodLabel.DbscanHungarian):
        if satellites is None:
            if method == MethodLabel.DbscanOnly:
                raise StageError(Stage.Clustering.value, InputError(
                                 'Virtual stations need satellites.'))
            warn('No satellites available, the clustering stage is '
                 'skipped.', log)
        else:
            try:
                with _stage(Stage.Clustering):
                    clustered = select_final_stations(
                        points, scenario, stations, MethodLabel.DbscanOnly,
                        contacts, satellites, seed, match_pool,
                        satellite_ids=sat_ids, log=log)
            except StageError as err:
                if (method == MethodLabel.DbscanOnly or
                        not isinstance(err.err, InfeasibleError)):
                    raise
                warn('Clustering stage evaluation is infeasible: '
                     '{}'.format(err.err), log)

        if clustered is not None:
            reports.append(StageReport.from_values(
                Stage.Clustering, [clustered.objective_value],
                deviation(scenario.objective, clustered.objective_value,
                          best)))

    if method == MethodLabel.DbscanOnly:
        return RunResult(solution=clustered, stage_reports=tuple(reports),
                         scenario=scenario)

    with _stage(Stage.FinalMatch):
        solution = select_final_stations(
            points, scenario, stations, method, contacts, satellites, seed,
            match_pool, label=None if label == method.value else label,
            satellite_ids=sat_ids, log=log)

    reports.append(StageReport.from_values(
        Stage.FinalMatch, [solution.objective_value],
        deviation(scenario.objective, solution.objective_value, best)))

    return RunResult(solution=solution, stage_reports=tuple(reports),
                     scenario=scenario)


def _run_cell(task):

    num_sats, scenario, catalog, name, contacts, satellites, seed = task

    try:
        result = run_scenario(scenario, catalog, name, contacts=contacts,
                              satellites=satellites, seed=seed)
    except Exception as err:
        return ComparisonCell(num_satellites=num_sats,
                              n_stations=scenario.n_stations,
                              method_label=name, error=str(err))

    return ComparisonCell(num_satellites=num_sats,
                          n_stations=scenario.n_stations, method_label=name,
                          objective_value=result.solution.objective_value,
                          solution=result.solution)


def add_deviations(cells, objective):
    """Fill in the deviation of every cell from its ip-optimal cell"""

    optimal = {(c.num_satellites, c.n_stations): c.objective_value
               for c in cells if c.method_label == MethodLabel.IpOptimal.value
               and c.objective_value is not None}

    return [replace(cell, deviation_from_optimal=deviation(
                    objective, cell.objective_value,
                    optimal.get((cell.num_satellites, cell.n_stations))))
            for cell in cells]


def sweep_walker(scenario_template, catalog, max_planes, max_stations,
                 methods, walker=None, seed=0, workers=1, log=None):
    """Sweep Walker-Star constellations

    This method compares the methods for 1 to `max_planes` planes and 1 to
    `max_stations` selected stations. Contacts are computed once per
    constellation. Failed cells are recorded with their error and the sweep
    continues.

    Parameters
    ----------
    scenario_template : ScenarioConfig
        Scenario, `n_stations` is overridden per cell
    catalog : tuple
        (providers, stations)
    max_planes : int
        Largest number of planes
    max_stations : int
        Largest number of selected stations
    methods : list of str
        Method labels
    walker : dict, optional
        Walker-Star parameters (default is the scenario walker settings)
    seed : int, optional
        Random seed (default is 0)
    workers : int, optional
        Number of worker processes (default is 1)
    log : logging.Logger, optional
        Log instance

    Returns
    -------
    list of ComparisonCell ordered by (sats, n, method)

    """

    if max_planes < 1 or max_stations < 1:
        raise ValueError('The sweep needs at least one plane and one '
                         'station.')

    walker = dict(walker or scenario_template.walker or {})
    for name in methods:
        resolve_method(name)

    stations = catalog[1]
    needed = sorted({s.id: s for s in (
        pool_stations(stations, scenario_template.candidate_pool) +
        pool_stations(stations, scenario_template.full_pool))}.values(),
        key=lambda s: s.id)

    tasks = []
    for planes in range(1, max_planes + 1):
        satellites = generate_walker_star(
            walker.get('altitude_km', 781.0),
            walker.get('eccentricity', 0.001),
            walker.get('inclination_deg', 86.4), planes,
            walker.get('sats_per_plane', 1),
            walker.get('datarate_gbps', 1.2), scenario_template.t_sim_start)
        contacts = compute_contacts(
            satellites, needed, scenario_template.t_sim_start,
            scenario_template.t_sim_end, scenario_template.elevation_mask,
            scenario_template.coarse_step, scenario_template.fixed_rate,
            workers, log)
        for n_stations in range(1, max_stations + 1):
            scenario = replace(scenario_template, n_stations=n_stations)
            for name in methods:
                tasks.append((len(satellites), scenario, catalog, name,
                              contacts, satellites, seed))

    if workers > 1 and len(tasks) > 1:
        with Pool(workers) as worker_pool:
            cells = worker_pool.map(_run_cell, tasks)
    else:
        cells = [_run_cell(task) for task in tasks]

    cells = add_deviations(sorted(cells, key=lambda c: c.key),
                           scenario_template.objective)

    for cell in cells:
        if cell.error is not None:
            warn('Cell sats={} n={} {} failed: {}'.format(
                 cell.num_satellites, cell.n_stations, cell.method_label,
                 cell.error), log)

    return cells


def station_record(station):
    """Station report record"""

    return {'id': station.id, 'provider': station.provider_id,
            'latitude': station.latitude, 'longitude': station.longitude,
            'altitude': station.altitude, 'datarate_gbps': station.datarate}


def stage_record(report):
    """Stage report record"""

    return {'stage': report.stage.value, 'min': report.min,
            'mean': report.mean, 'max': report.max,
            'solution_delta': report.solution_delta}


def solution_record(solution, stage_reports=()):
    """Solution report record

    Parameters
    ----------
    solution : SelectionSolution
        Solution
    stage_reports : list of StageReport, optional
        Stage reports

    Returns
    -------
    dict

    """

    diagnostics = solution.diagnostics or {}
    schedules = [{'satellite': sched.satellite_id,
                  'chain': list(sched.chain),
                  'data_volume_gb': sched.data_volume,
                  'max_gap_s': sched.max_gap}
                 for sched in solution.per_satellite]

    return {'method': solution.method,
            'method_label': solution.method_label.value,
            'comparable': solution.comparable,
            'approximate': bool(diagnostics.get('approximate', False)),
            'objective': solution.objective_kind.value,
            'units': solution.units,
            'objective_value': solution.objective_value,
            'station_ids': list(solution.station_ids),
            'provider_ids': list(solution.provider_ids),
            'stations': [station_record(s) for s in solution.stations],
            'schedules': schedules,
            'stage_reports': [stage_record(r) for r in stage_reports]}


def cell_record(cell):
    """Comparison cell report record"""

    return {'sats': cell.num_satellites, 'n': cell.n_stations,
            'method': cell.method_label, 'value': cell.objective_value,
            'deviation': cell.deviation_from_optimal, 'error': cell.error,
            'station_ids': (list(cell.solution.station_ids)
                            if cell.solution is not None else None)}


def emit_reports(results, out_dir, log=None):
    """Emit reports

    This method writes the reports of a run, a sweep or a saved solution
    record.

    - RunResult or solution record: ``solution.json``, ``stages.csv`` and
      ``stations.geojson``
    - list of ComparisonCell: ``sweep.json``, ``heatmap.csv`` (failed cells
      left out) and ``stations.geojson``

    Parameters
    ----------
    results : RunResult, dict or list of ComparisonCell
        Results to report
    out_dir : str
        Output directory
    log : logging.Logger, optional
        Log instance

    Returns
    -------
    list of str file names written

    Raises
    ------
    OSError
        For I/O failures, naming the path

    """

    make_out_dir(out_dir)
    written = []

    def _path(name):

        written.append(os.path.join(out_dir, name))
        return written[-1]

    if isinstance(results, (RunResult, dict)):
        record = (results if isinstance(results, dict) else
                  solution_record(results.solution, results.stage_reports))
        write_json(_path('solution.json'), record)
        write_stage_csv(_path('stages.csv'), record['stage_reports'])
        write_geojson(_path('stations.geojson'), station_features(
                      record['stations'], {'method': record['method']}))

    else:
        cells = sorted(results, key=lambda c: c.key)
        write_json(_path('sweep.json'), [cell_record(c) for c in cells])
        write_heatmap_csv(_path('heatmap.csv'), [
            (c.num_satellites, c.n_stations, c.method_label,
             c.objective_value, c.deviation_from_optimal)
            for c in cells if c.error is None])
        features = []
        for cell in cells:
            if cell.solution is not None:
                features += station_features(
                    [station_record(s) for s in cell.solution.stations],
                    {'sats': cell.num_satellites, 'n': cell.n_stations,
                     'method': cell.method_label})
        write_geojson(_path('stations.geojson'), features)

    if log is not None:
        for file_name in written:
            log.info(' - Report saved to: ' + file_name)

    return written
