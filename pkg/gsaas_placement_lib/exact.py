# -*- coding: utf-8 -*-

"""EXACT SITE SELECTION

This module contains the exact site selection solver. Station subsets are
enumerated in lexicographic order and every subset is evaluated with the
per-satellite scheduling oracles, so the result is the optimum of the full
selection problem.

Notes
-----
For a fixed station set the provider variables and the linking constraints
are determined, and the remaining contact problem separates per satellite
because contacts only exclude each other within one satellite.

"""

from dataclasses import dataclass, field
from enum import Enum
from math import comb
from .contacts import group_by_satellite, restrict_contacts
from .errors import BudgetExceededError, InfeasibleError
from .objective import get_objective


class MethodLabel(Enum):
    """Site selection method"""

    IpOptimal = 'ip-optimal'
    IpDecomposed = 'ip-decomposed'
    DbscanOnly = 'dbscan'
    DbscanHungarian = 'dbscan-hungarian'
    KMedoids = 'kmedoids'

    @property
    def comparable(self):
        """True if the method yields constraint-feasible station sets"""

        return self in (MethodLabel.IpOptimal, MethodLabel.DbscanHungarian,
                        MethodLabel.KMedoids)


@dataclass(frozen=True)
class SelectionSolution:
    """Selection solution

    Parameters
    ----------
    station_ids : tuple of str
        Selected stations, sorted
    provider_ids : tuple of str
        Providers of the selected stations, sorted
    per_satellite : tuple of SatelliteSchedule
        Schedules, one per satellite
    objective_kind : Objective
        Objective
    objective_value : float
        PB for MaxData, seconds for MinMaxGap
    method_label : MethodLabel
        Method that produced the solution
    comparable : bool
        False for methods that do not enforce the selection constraints
    stations : tuple of GroundStation
        Selected station records
    label : str
        Report label, defaults to the method label value
    diagnostics : dict
        Method specific diagnostics (clusters, assignment)

    """

    station_ids: tuple
    provider_ids: tuple
    per_satellite: tuple
    objective_kind: object
    objective_value: float
    method_label: MethodLabel
    comparable: bool = True
    stations: tuple = field(default=(), compare=False, repr=False)
    label: str = None
    diagnostics: dict = field(default=None, compare=False, repr=False)

    @property
    def method(self):
        """Report label"""

        return self.label or self.method_label.value

    @property
    def units(self):
        """Objective value units"""

        return 'PB' if self.objective_kind.value == 'MaxData' else 's'


def evaluate_station_set(station_ids, contacts, scenario, catalog=None,
                         satellite_ids=None,
                         method=MethodLabel.IpOptimal, label=None):
    """Evaluate station set

    This method restricts the contacts to the selected stations and schedules
    every satellite.

    Parameters
    ----------
    station_ids : list of str
        Selected stations
    contacts : list of ContactWindow
        Contacts over the simulation horizon, filtered by minimum duration
    scenario : ScenarioConfig
        Scenario
    catalog : list of GroundStation, optional
        Station records used to resolve providers and coordinates
    satellite_ids : list of str, optional
        Satellites to schedule (default is every satellite in `contacts`)
    method : MethodLabel, optional
        Method label of the solution
    label : str, optional
        Report label

    Returns
    -------
    SelectionSolution

    Raises
    ------
    InfeasibleError
        For MinMaxGap if a satellite has no contact with the stations

    """

    if satellite_ids is None:
        satellite_ids = sorted({c.satellite_id for c in contacts})

    station_ids = tuple(sorted(set(station_ids)))
    objective = get_objective(scenario)
    groups = group_by_satellite(restrict_contacts(contacts, station_ids))
    schedules, value = objective.evaluate(groups, satellite_ids)

    records = {s.id: s for s in (catalog or [])}
    stations = tuple(records[key] for key in station_ids if key in records)

    return SelectionSolution(
        station_ids=station_ids,
        provider_ids=tuple(sorted({s.provider_id for s in stations})),
        per_satellite=tuple(schedules), objective_kind=objective.kind,
        objective_value=value, method_label=method,
        comparable=method.comparable, stations=stations, label=label)


class _SubsetSearch(object):
    """Depth-first search over lexicographically ordered station subsets"""

    def __init__(self, pool_ids, n_select, groups, satellite_ids, objective,
                 prune):

        self.pool_ids = pool_ids
        self.n_select = n_select
        self.groups = groups
        self.satellite_ids = satellite_ids
        self.objective = objective
        self.prune = prune
        self.best = None
        self.n_evaluated = 0

    def _value(self, station_ids):

        station_ids = set(station_ids)
        groups = {sat: [c for c in contacts if c.station_id in station_ids]
                  for sat, contacts in self.groups.items()}
        try:
            return self.objective.evaluate(groups, self.satellite_ids)[1]
        except InfeasibleError:
            return None

    def _bound_allows(self, chosen, index):

        if not self.prune or self.best is None:
            return True

        superset = chosen + self.pool_ids[index:]
        bound = self._value(superset)

        return (bound is not None and
                self.objective.can_improve(bound, self.best[0]))

    def run(self, chosen=(), start=0):

        if len(chosen) == self.n_select:
            self.n_evaluated += 1
            value = self._value(chosen)
            if value is not None and (self.best is None or
                                      self.objective.better(value,
                                                            self.best[0])):
                self.best = (value, chosen)
            return

        needed = self.n_select - len(chosen)
        for index in range(start, len(self.pool_ids) - needed + 1):
            if self._bound_allows(chosen, index):
                self.run(chosen + (self.pool_ids[index],), index + 1)


def solve_exact(scenario, pool, contacts, satellite_ids=None, prune=True,
                log=None):
    """Solve exactly

    This method enumerates every n-subset of the pool and returns the best
    one. For either objective a subtree is skipped when the value of the
    current stations plus every remaining candidate cannot beat the
    incumbent. Ties go to the lexicographically smallest station set.

    Parameters
    ----------
    scenario : ScenarioConfig
        Scenario
    pool : list of GroundStation
        Candidate stations
    contacts : list of ContactWindow
        Contacts filtered by minimum duration
    satellite_ids : list of str, optional
        Satellites to schedule (default is every satellite in `contacts`)
    prune : bool, optional
        Option to turn on bound pruning (default is True)
    log : logging.Logger, optional
        Log instance

    Returns
    -------
    SelectionSolution

    Raises
    ------
    ValueError
        If n exceeds the pool size
    BudgetExceededError
        If the number of subsets exceeds the enumeration budget
    InfeasibleError
        For MinMaxGap if no subset schedules every satellite

    """

    pool = sorted(pool, key=lambda s: s.id)
    pool_ids = tuple(s.id for s in pool)
    n_select = scenario.n_stations

    if n_select > len(pool):
        raise ValueError('Cannot select {} stations from a pool of '
                         '{}.'.format(n_select, len(pool)))

    n_subsets = comb(len(pool), n_select)
    if n_subsets > scenario.enumeration_budget:
        raise BudgetExceededError('{} station subsets exceed the enumeration '
                                  'budget of {}; use the scalable '
                                  'pipeline.'.format(
                                      n_subsets, scenario.enumeration_budget))

    if satellite_ids is None:
        satellite_ids = sorted({c.satellite_id for c in contacts})

    objective = get_objective(scenario)
    groups = group_by_satellite(restrict_contacts(contacts, pool_ids))
    search = _SubsetSearch(pool_ids, n_select, groups, satellite_ids,
                           objective, prune)
    search.run()

    if search.best is None:
        raise InfeasibleError('No subset of {} stations gives every '
                              'satellite a contact.'.format(n_select))

    if log is not None:
        log.info(' - Subsets evaluated: {} of {}'.format(search.n_evaluated,
                                                         n_subsets))

    return evaluate_station_set(search.best[1], contacts, scenario,
                                catalog=pool, satellite_ids=satellite_ids)
