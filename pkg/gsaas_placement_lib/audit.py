# -*- coding: utf-8 -*-

"""SELECTION SOLUTION AUDIT

This module contains methods for checking the structural consistency of a
selection solution and for measuring its deviation from the optimum.

"""

from .catalog import Objective


def _schedule_violations(sched, records, station_ids, min_duration):

    violations = []
    windows = sched.windows

    for contact in windows:
        if contact.satellite_id != sched.satellite_id:
            violations.append('{}: contact {} belongs to satellite '
                              '{}.'.format(sched.satellite_id, contact.id,
                                           contact.satellite_id))
        if contact.station_id not in station_ids:
            violations.append('{}: contact {} uses unselected station '
                              '{}.'.format(sched.satellite_id, contact.id,
                                           contact.station_id))
        if contact.duration < min_duration - 1e-9:
            violations.append('{}: contact {} is shorter than t_min.'.format(
                              sched.satellite_id, contact.id))
        if records is not None and contact.id not in records:
            violations.append('{}: unknown contact {}.'.format(
                              sched.satellite_id, contact.id))

    for prev, nxt in zip(windows[:-1], windows[1:]):
        if nxt.t_start < prev.t_end:
            violations.append('{}: contacts {} and {} overlap.'.format(
                              sched.satellite_id, prev.id, nxt.id))

    if tuple(c.id for c in windows) != tuple(sched.chain):
        violations.append('{}: chain does not match its windows.'.format(
                          sched.satellite_id))

    return violations


def audit_solution(solution, scenario, contacts=None):
    """Audit solution

    This method checks that a solution selects n stations, that the
    providers match the selected stations and that every satellite chain is
    time-ordered, non-overlapping, made of known contacts of the selected
    stations and respects the minimum contact duration. Under MinMaxGap
    every scheduled satellite must also hold at least one contact.

    Parameters
    ----------
    solution : SelectionSolution
        Solution to audit
    scenario : ScenarioConfig
        Scenario the solution was computed for
    contacts : list of ContactWindow, optional
        Contacts the schedules were drawn from

    Returns
    -------
    list of str violations, empty for a consistent solution

    """

    violations = []
    station_ids = set(solution.station_ids)

    if len(solution.station_ids) != scenario.n_stations:
        violations.append('{} stations selected, {} expected.'.format(
                          len(solution.station_ids), scenario.n_stations))

    if len(station_ids) != len(solution.station_ids):
        violations.append('Duplicate selected stations.')

    if solution.stations:
        if {s.id for s in solution.stations} != station_ids:
            violations.append('Station records do not match the selected '
                              'stations.')
        providers = {s.provider_id for s in solution.stations}
        if providers != set(solution.provider_ids):
            violations.append('Providers {} are not the providers of the '
                              'selected stations.'.format(
                                  ', '.join(solution.provider_ids)))

    records = None if contacts is None else {c.id for c in contacts}

    for sched in solution.per_satellite:
        violations += _schedule_violations(sched, records, station_ids,
                                           scenario.min_contact_duration)
        if scenario.objective == Objective.MinMaxGap and not sched.chain:
            violations.append('{}: no contact scheduled.'.format(
                              sched.satellite_id))

    return violations


def check_solution(solution, scenario, contacts=None):
    """Check solution

    Raises
    ------
    RuntimeError
        If the audit finds violations

    """

    violations = audit_solution(solution, scenario, contacts)

    if violations:
        raise RuntimeError('Solution audit failed: ' + ' '.join(violations))


def deviation(objective, value, optimal_value):
    """Deviation from optimal

    Positive values are sub-optimal for both objectives.

    Parameters
    ----------
    objective : Objective
        Objective
    value : float
        Method value
    optimal_value : float
        Optimal value

    Returns
    -------
    float deviation, None if either value is missing

    """

    if value is None or optimal_value is None:
        return None

    if objective == Objective.MaxData:
        return optimal_value - value

    return value - optimal_value
