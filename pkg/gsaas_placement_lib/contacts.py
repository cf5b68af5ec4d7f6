# -*- coding: utf-8 -*-

"""CONTACT WINDOWS

This module computes satellite to ground station contact windows above an
elevation mask and provides the filters used to restrict them.

"""

from dataclasses import dataclass, field, replace
from multiprocessing import Pool
import numpy as np
from .astro import propagate, elevation_angle

REFINE_TOL = 0.1


@dataclass(frozen=True)
class ContactWindow:
    """Contact window

    One satellite to station access interval.

    Parameters
    ----------
    id : str
        Unique contact identifier
    satellite_id : str
        Satellite identifier
    station_id : str
        Station identifier
    t_start : float
        Contact start (UTC seconds)
    t_end : float
        Contact end (UTC seconds)
    datarate : float
        Contact data rate (Gbps)

    Raises
    ------
    ValueError
        If the window does not end after it starts

    """

    id: str
    satellite_id: str
    station_id: str
    t_start: float
    t_end: float
    datarate: float
    duration: float = field(init=False)

    def __post_init__(self):

        if not self.t_end > self.t_start:
            raise ValueError('Contact {} has a non-positive duration.'.format(
                             self.id))

        object.__setattr__(self, 'duration', self.t_end - self.t_start)

    @property
    def volume(self):
        """Data volume (gigabits)"""

        return self.datarate * self.duration


def contact_id(satellite_id, station_id, t_start):
    """Contact identifier

    Parameters
    ----------
    satellite_id : str
        Satellite identifier
    station_id : str
        Station identifier
    t_start : float
        Contact start (UTC seconds)

    Returns
    -------
    str identifier built from the ids and the start in milliseconds

    """

    return '{}/{}/{:d}'.format(satellite_id, station_id,
                               int(round(t_start * 1000)))


def contact_datarate(station_rate, sat_rate):
    """Contact data rate

    Parameters
    ----------
    station_rate : float
        Station rate (Gbps)
    sat_rate : float
        Satellite rate (Gbps)

    Returns
    -------
    float the smaller of the two rates

    Raises
    ------
    ValueError
        For negative rates

    """

    if station_rate < 0 or sat_rate < 0:
        raise ValueError('Data rates must be non-negative.')

    return min(station_rate, sat_rate)


def sort_contacts(contacts):
    """Sort contacts by satellite, start time and station"""

    return sorted(contacts, key=lambda c: (c.satellite_id, c.t_start,
                                           c.station_id))


def _to_ms(t):

    return float(round(float(t) * 1000)) / 1000


def _bisect(elev_fn, t_below, t_above):
    """Refine a mask crossing, returning the time on the above-mask side"""

    while abs(t_above - t_below) > REFINE_TOL / 2:
        t_mid = 0.5 * (t_below + t_above)
        if elev_fn(t_mid) >= 0:
            t_above = t_mid
        else:
            t_below = t_mid

    return t_above


def _satellite_contacts(args):

    sat, stations, t_start, t_end, mask, coarse_step, fixed_rate = args

    times = np.append(np.arange(t_start, t_end, coarse_step), t_end)
    try:
        state = propagate(sat.elements, times)
    except (ValueError, RuntimeError) as err:
        raise RuntimeError('Propagation failed for satellite '
                           '{}: {}'.format(sat.id, err))
    windows = []

    for station in stations:

        def elev_fn(t):
            return elevation_angle(propagate(sat.elements, t), station) - mask

        above = elevation_angle(state, station) - mask >= 0
        rate = (fixed_rate if fixed_rate is not None else
                contact_datarate(station.datarate, sat.datarate))
        rises = np.flatnonzero(~above[:-1] & above[1:]) + 1
        sets = np.flatnonzero(above[:-1] & ~above[1:])
        starts = [t_start] if above[0] else []
        starts += [_bisect(elev_fn, times[k - 1], times[k]) for k in rises]
        ends = [_bisect(elev_fn, times[k + 1], times[k]) for k in sets]
        if above[-1]:
            ends.append(t_end)

        for w_start, w_end in zip(starts, ends):
            w_start, w_end = _to_ms(w_start), _to_ms(w_end)
            if w_end > w_start:
                windows.append(ContactWindow(
                    id=contact_id(sat.id, station.id, w_start),
                    satellite_id=sat.id, station_id=station.id,
                    t_start=w_start, t_end=w_end, datarate=rate))

    return windows


def compute_contacts(satellites, stations, t_start, t_end, mask_deg,
                     coarse_step_s=10.0, fixed_datarate=None, workers=1,
                     log=None):
    """Compute contact windows

    This method samples the elevation of every satellite at every station on
    a coarse grid and refines each mask crossing by bisection to 0.1 s.
    Windows straddling the horizon bounds are clipped to the horizon.

    Parameters
    ----------
    satellites : list of Satellite
        Satellites
    stations : list of GroundStation
        Stations
    t_start : float
        Horizon start (UTC seconds)
    t_end : float
        Horizon end (UTC seconds)
    mask_deg : float
        Elevation mask (deg)
    coarse_step_s : float, optional
        Coarse sampling step (default is 10 s)
    fixed_datarate : float, optional
        Contact rate used for every window instead of the min of the station
        and satellite rates
    workers : int, optional
        Number of worker processes (default is 1)
    log : logging.Logger, optional
        Log instance

    Returns
    -------
    list of ContactWindow sorted by (satellite_id, t_start)

    Raises
    ------
    ValueError
        For invalid horizons, masks or steps
    RuntimeError
        If propagation fails, naming the satellite

    """

    if not t_end > t_start:
        raise ValueError('The contact horizon must end after it starts.')

    if not -90 < mask_deg < 90:
        raise ValueError('The elevation mask must be in (-90, 90) deg.')

    if not coarse_step_s > 0:
        raise ValueError('The coarse step must be positive.')

    mask = np.radians(mask_deg)
    tasks = [(sat, stations, t_start, t_end, mask, coarse_step_s,
              fixed_datarate) for sat in satellites]

    if workers > 1 and len(tasks) > 1:
        with Pool(workers) as pool:
            results = pool.map(_satellite_contacts, tasks)
    else:
        results = [_satellite_contacts(task) for task in tasks]

    contacts = sort_contacts([c for res in results for c in res])

    if log is not None:
        log.info(' - Contacts computed: ' + str(len(contacts)))

    return contacts


def filter_contacts(contacts, t_min_s):
    """Filter contacts by minimum duration

    Parameters
    ----------
    contacts : list of ContactWindow
        Contacts
    t_min_s : float
        Minimum contact duration (s)

    Returns
    -------
    list of ContactWindow with duration >= t_min_s, in input order

    """

    if t_min_s < 0:
        raise ValueError('The minimum contact duration must be '
                         'non-negative.')

    return [c for c in contacts if c.duration >= t_min_s]


def clip_contacts(contacts, t_start, t_end):
    """Clip contacts to a time interval

    Contacts outside the interval are dropped, contacts straddling a bound are
    shortened. Identifiers are kept.

    Parameters
    ----------
    contacts : list of ContactWindow
        Contacts
    t_start : float
        Interval start (UTC seconds)
    t_end : float
        Interval end (UTC seconds)

    Returns
    -------
    list of ContactWindow

    """

    clipped = []

    for contact in contacts:
        start = max(contact.t_start, t_start)
        end = min(contact.t_end, t_end)
        if end > start:
            if start == contact.t_start and end == contact.t_end:
                clipped.append(contact)
            else:
                clipped.append(replace(contact, t_start=start, t_end=end))

    return clipped


def restrict_contacts(contacts, station_ids=None, satellite_ids=None):
    """Restrict contacts to stations and/or satellites"""

    station_ids = None if station_ids is None else set(station_ids)
    satellite_ids = None if satellite_ids is None else set(satellite_ids)

    return [c for c in contacts
            if (station_ids is None or c.station_id in station_ids) and
            (satellite_ids is None or c.satellite_id in satellite_ids)]


def group_by_satellite(contacts):
    """Group contacts by satellite

    Returns
    -------
    dict satellite id to list of ContactWindow, in input order

    """

    groups = {}
    for contact in contacts:
        groups.setdefault(contact.satellite_id, []).append(contact)

    return groups
