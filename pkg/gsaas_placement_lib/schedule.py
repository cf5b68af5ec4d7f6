# -*- coding: utf-8 -*-

"""CONTACT SCHEDULING

This module contains the per-satellite scheduling oracles: maximum data
volume by weighted interval scheduling and minimum maximum gap by a search
over the finite set of candidate gap values.

Notes
-----
A schedule is a time-ordered chain of non-overlapping contacts of one
satellite. The chain order is the successor relation of the scheduled
contacts, so no pairwise successor variables are kept.

"""

from bisect import bisect_left
from dataclasses import dataclass, field
from .errors import InfeasibleError

GIGABITS_PER_PETABYTE = 8.0e6
REL_TOL = 1e-9


def is_greater(value_a, value_b):
    """Tolerant comparison, True if `value_a` is clearly larger"""

    scale = max(1.0, abs(value_a), abs(value_b))

    return value_a > value_b + REL_TOL * scale


@dataclass(frozen=True)
class SatelliteSchedule:
    """Satellite schedule

    Parameters
    ----------
    satellite_id : str
        Satellite identifier
    chain : tuple of str
        Time-ordered contact ids
    data_volume : float
        Scheduled data volume (gigabits)
    max_gap : float or None
        Longest gap including the window boundaries (s), None when no window
        was given or the chain is empty
    windows : tuple of ContactWindow
        The scheduled contacts, in chain order

    """

    satellite_id: str
    chain: tuple
    data_volume: float
    max_gap: object = None
    windows: tuple = field(default=(), compare=False, repr=False)


def _satellite_of(contacts):

    ids = {contact.satellite_id for contact in contacts}

    if len(ids) > 1:
        raise ValueError('Contacts of more than one satellite given: '
                         '{}'.format(', '.join(sorted(ids))))

    return ids.pop() if ids else None


def chain_gaps(windows, window_start, window_end):
    """Gaps of a chain

    Parameters
    ----------
    windows : list of ContactWindow
        Time-ordered chain
    window_start : float
        Window start (UTC seconds)
    window_end : float
        Window end (UTC seconds)

    Returns
    -------
    list of floats: the leading gap, the gaps between consecutive contacts
    and the trailing gap

    """

    if not windows:
        return []

    gaps = [windows[0].t_start - window_start]
    gaps += [nxt.t_start - prev.t_end for prev, nxt in zip(windows[:-1],
                                                           windows[1:])]
    gaps.append(window_end - windows[-1].t_end)

    return gaps


def chain_max_gap(windows, window_start, window_end):
    """Longest gap of a chain, None for an empty chain"""

    gaps = chain_gaps(windows, window_start, window_end)

    return max(gaps) if gaps else None


def make_schedule(satellite_id, windows, window_start=None, window_end=None):
    """Build a SatelliteSchedule from a chain of contacts"""

    windows = tuple(windows)
    max_gap = (None if window_start is None else
               chain_max_gap(windows, window_start, window_end))

    return SatelliteSchedule(satellite_id=satellite_id,
                             chain=tuple(c.id for c in windows),
                             data_volume=sum(c.volume for c in windows),
                             max_gap=max_gap, windows=windows)


def max_data_schedule(contacts, window_start=None, window_end=None):
    """Maximum data schedule

    This method selects the set of pairwise non-overlapping contacts with
    the largest total volume. A suffix optimum is computed over start-sorted
    contacts with a binary search for the first compatible successor, then
    the chain is rebuilt front to back taking, at each step, the contact
    with the smallest id that still reaches the optimum. Ties therefore go
    to the lexicographically smallest chain of contact ids, with a shorter
    chain preferred over any extension of it.

    Parameters
    ----------
    contacts : list of ContactWindow
        Contacts of one satellite
    window_start, window_end : float, optional
        Window used to report the maximum gap of the chain

    Returns
    -------
    SatelliteSchedule

    Raises
    ------
    ValueError
        If the contacts belong to more than one satellite

    """

    sat_id = _satellite_of(contacts)
    ordered = sorted(contacts, key=lambda c: (c.t_start, c.t_end, c.id))
    starts = [c.t_start for c in ordered]
    n_contacts = len(ordered)
    succ = [max(bisect_left(starts, c.t_end), i + 1)
            for i, c in enumerate(ordered)]

    # suffix[i] is the optimum over contacts starting at or after ordered[i]
    suffix = [0.0] * (n_contacts + 1)
    for i in reversed(range(n_contacts)):
        suffix[i] = max(suffix[i + 1], ordered[i].volume + suffix[succ[i]])

    windows = []
    first = 0
    remaining = suffix[0]

    while is_greater(remaining, 0.0):
        reach = [i for i in range(first, n_contacts)
                 if not is_greater(remaining,
                                   ordered[i].volume + suffix[succ[i]])]
        pick = min(reach, key=lambda i: ordered[i].id)
        windows.append(ordered[pick])
        remaining -= ordered[pick].volume
        first = succ[pick]

    return make_schedule(sat_id, windows, window_start, window_end)


def feasible_with_gap(contacts, gap, window_start, window_end):
    """Feasibility for a gap bound

    This method decides whether a chain exists in which the leading,
    trailing and every inter-contact gap are at most `gap`. A contact is
    reachable when it starts within `gap` of the window start, or within
    `gap` of the end of a reachable contact that ends before it starts.

    Parameters
    ----------
    contacts : list of ContactWindow
        Contacts of one satellite inside the window
    gap : float
        Gap bound (s)
    window_start : float
        Window start (UTC seconds)
    window_end : float
        Window end (UTC seconds)

    Returns
    -------
    tuple of ContactWindow or None

    """

    if gap < 0:
        raise ValueError('The gap bound must be non-negative.')

    ordered = sorted(contacts, key=lambda c: (c.t_start, c.t_end, c.id))
    reachable = []
    pred = {}

    for j, contact in enumerate(ordered):
        if contact.t_start - window_start <= gap:
            pred[j] = None
        else:
            options = [i for i in reachable
                       if ordered[i].t_end <= contact.t_start and
                       contact.t_start - ordered[i].t_end <= gap]
            if not options:
                continue
            pred[j] = min(options, key=lambda i: ordered[i].id)
        reachable.append(j)

    terminals = [j for j in reachable
                 if window_end - ordered[j].t_end <= gap]

    if not terminals:
        return None

    chain = []
    node = min(terminals, key=lambda j: ordered[j].id)
    while node is not None:
        chain.append(ordered[node])
        node = pred[node]

    return tuple(reversed(chain))


def gap_candidates(contacts, window_start, window_end):
    """Candidate gap values

    The optimal maximum gap is one of the boundary or pairwise start-end
    differences.

    Returns
    -------
    list of floats, sorted and unique

    """

    values = {0.0}

    for contact in contacts:
        values.add(contact.t_start - window_start)
        values.add(window_end - contact.t_end)
        for other in contacts:
            if other.t_start >= contact.t_end:
                values.add(other.t_start - contact.t_end)

    return sorted(value for value in values if value >= 0)


def min_max_gap_schedule(contacts, window_start, window_end):
    """Minimum maximum-gap schedule

    This method binary searches the candidate gap values for the smallest
    one admitting a feasible chain.

    Parameters
    ----------
    contacts : list of ContactWindow
        Contacts of one satellite inside the window
    window_start : float
        Window start (UTC seconds)
    window_end : float
        Window end (UTC seconds)

    Returns
    -------
    SatelliteSchedule

    Raises
    ------
    InfeasibleError
        If there are no contacts
    ValueError
        If the contacts belong to more than one satellite

    """

    sat_id = _satellite_of(contacts)

    if not contacts:
        raise InfeasibleError('At least one contact is required to schedule '
                              'a minimum maximum-gap chain.')

    candidates = gap_candidates(contacts, window_start, window_end)
    low, high = 0, len(candidates) - 1

    while low < high:
        mid = (low + high) // 2
        if feasible_with_gap(contacts, candidates[mid], window_start,
                             window_end) is None:
            low = mid + 1
        else:
            high = mid

    chain = feasible_with_gap(contacts, candidates[low], window_start,
                              window_end)

    return make_schedule(sat_id, chain, window_start, window_end)


def scale_to_mission(data_volume_gb, T_sim_s, T_opt_s):
    """Scale to mission

    This method scales a data volume from the surrogate simulation horizon to
    the mission horizon and converts it to petabytes.

    Parameters
    ----------
    data_volume_gb : float
        Data volume over the simulation horizon (gigabits)
    T_sim_s : float
        Simulation horizon (s)
    T_opt_s : float
        Mission horizon (s)

    Returns
    -------
    float data volume (PB, 1 PB = 1e15 bytes)

    """

    if not T_sim_s > 0:
        raise ValueError('The simulation horizon must be positive.')

    return data_volume_gb * (T_opt_s / T_sim_s) / GIGABITS_PER_PETABYTE
