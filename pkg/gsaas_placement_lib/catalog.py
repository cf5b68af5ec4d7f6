# -*- coding: utf-8 -*-

"""CATALOGUE FILE INPUT/OUTPUT

This module defines the station, provider and scenario types and the methods
for reading and writing station catalogues, satellites and contact windows.

Notes
-----
File formats:

- stations.csv: ``provider,station,lat_deg,lon_deg,alt_m,datarate_gbps``
- contacts.csv: ``satellite,station,start_utc,end_utc`` (ISO-8601)
- satellites.csv: ``satellite,semi_major_axis_km,eccentricity,
  inclination_deg,raan_deg,arg_perigee_deg,mean_anomaly_deg,epoch_utc,
  datarate_gbps``

"""

import csv
from dataclasses import dataclass, field
from enum import Enum
import numpy as np
from modopt.base.types import check_float
from .args import get_scenario_opts
from .astro import KeplerianElements, Satellite
from .contacts import ContactWindow, contact_datarate, contact_id
from .errors import InputError

STATION_HEADER = ['provider', 'station', 'lat_deg', 'lon_deg', 'alt_m',
                  'datarate_gbps']
CONTACT_HEADER = ['satellite', 'station', 'start_utc', 'end_utc']
SATELLITE_HEADER = ['satellite', 'semi_major_axis_km', 'eccentricity',
                    'inclination_deg', 'raan_deg', 'arg_perigee_deg',
                    'mean_anomaly_deg', 'epoch_utc', 'datarate_gbps']


class Objective(Enum):
    """Site selection objective"""

    MaxData = 'MaxData'
    MinMaxGap = 'MinMaxGap'


class DecompositionMode(Enum):
    """Subproblem decomposition mode"""

    TemporalOnly = 'TemporalOnly'
    TemporalAndSatellite = 'TemporalAndSatellite'


@dataclass(frozen=True)
class Provider:
    """GSaaS provider

    Parameters
    ----------
    id : str
        Provider identifier
    name : str
        Provider name
    station_ids : tuple of str
        Stations operated by the provider

    """

    id: str
    name: str
    station_ids: tuple


@dataclass(frozen=True)
class GroundStation:
    """Ground station

    Parameters
    ----------
    id : str
        Station identifier
    provider_id : str
        Provider identifier
    name : str
        Station name
    latitude : float
        Geodetic latitude (deg)
    longitude : float
        Longitude (deg) in [-180, 180)
    altitude : float
        Height above the ellipsoid (m)
    datarate : float
        Station data rate (Gbps)

    Raises
    ------
    ValueError
        For invalid coordinates or a negative data rate

    """

    id: str
    provider_id: str
    name: str
    latitude: float
    longitude: float
    altitude: float
    datarate: float

    def __post_init__(self):

        if abs(self.latitude) > 90:
            raise ValueError('Station {} latitude {} is outside [-90, '
                             '90].'.format(self.id, self.latitude))

        if not -180 <= self.longitude < 180:
            raise ValueError('Station {} longitude {} is outside [-180, '
                             '180).'.format(self.id, self.longitude))

        if self.datarate < 0:
            raise ValueError('Station {} has a negative data rate.'.format(
                             self.id))


@dataclass(frozen=True)
class ScenarioConfig:
    """Scenario configuration

    Parameters
    ----------
    t_sim_start, t_sim_end : float
        Surrogate simulation horizon (UTC seconds)
    t_opt_start, t_opt_end : float
        Mission optimisation horizon (UTC seconds)
    window_length : float
        Decomposition window length (s)
    window_overlap : float
        Overlap between consecutive windows (s)
    min_contact_duration : float
        Minimum contact duration (s)
    elevation_mask : float
        Elevation mask (deg)
    n_stations : int
        Number of stations to select
    objective : Objective
        Objective
    decomposition_mode : DecompositionMode
        Decomposition mode
    candidate_pool : tuple of str
        Provider ids of the design pool
    full_pool : tuple of str
        Provider ids of the full pool

    """

    t_sim_start: float
    t_sim_end: float
    t_opt_start: float
    t_opt_end: float
    window_length: float
    window_overlap: float
    min_contact_duration: float
    elevation_mask: float
    n_stations: int
    objective: Objective
    decomposition_mode: DecompositionMode
    candidate_pool: tuple
    full_pool: tuple
    epsilon_grid: tuple = (5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0)
    min_points: int = 2
    match_pool: str = 'full'
    coarse_step: float = 10.0
    satellite_group_size: int = 1
    window_count: object = None
    enumeration_budget: int = 5000000
    datarate_mode: str = 'min'
    fixed_datarate: float = 1.2
    walker: dict = field(default=None, compare=False, hash=False)

    def __post_init__(self):

        if not self.t_sim_end > self.t_sim_start:
            raise ValueError('t_sim_end must be after t_sim_start.')

        if not self.t_opt_end > self.t_opt_start:
            raise ValueError('t_opt_end must be after t_opt_start.')

        if not self.window_length > self.window_overlap >= 0:
            raise ValueError('The window length must exceed the window '
                             'overlap, which must be non-negative.')

        if self.min_contact_duration < 0:
            raise ValueError('t_min must be non-negative.')

        if self.n_stations < 1:
            raise ValueError('At least one station must be selected.')

    @property
    def T_sim(self):
        """Simulation horizon length (s)"""

        return self.t_sim_end - self.t_sim_start

    @property
    def T_opt(self):
        """Optimisation horizon length (s)"""

        return self.t_opt_end - self.t_opt_start

    @property
    def fixed_rate(self):
        """Contact rate override, None when C_dr = min(L_dr, S_dr)"""

        return self.fixed_datarate if self.datarate_mode == 'fixed' else None


def to_utc_seconds(timestamp):
    """ISO-8601 to UTC seconds

    Parameters
    ----------
    timestamp : str
        ISO-8601 UTC timestamp, with or without a trailing Z

    Returns
    -------
    float seconds since 1970-01-01T00:00:00 UTC

    Raises
    ------
    ValueError
        For unparsable timestamps

    """

    text = timestamp.strip().replace(' ', 'T')
    for suffix in ('Z', '+00:00'):
        if text.endswith(suffix):
            text = text[:-len(suffix)]

    return int(np.datetime64(text, 'ms').astype('int64')) / 1000.0


def to_iso(seconds):
    """UTC seconds to ISO-8601 (millisecond resolution)"""

    return str(np.datetime64(int(round(seconds * 1000)), 'ms')) + 'Z'


def _number(row, key, line, path):

    try:
        return check_float(float(row[key]))
    except (TypeError, ValueError, KeyError):
        raise InputError('{} line {}: invalid value for {} ({!r}).'.format(
                         path, line, key, row.get(key)))


def _check_header(reader, expected, path):

    if reader.fieldnames is not None and reader.fieldnames != expected:
        raise InputError('{}: expected header {}, got {}.'.format(
                         path, ','.join(expected),
                         ','.join(reader.fieldnames)))


def load_station_catalog(path, known_providers=None):
    """Load station catalogue

    This method reads a station CSV file and groups the stations by
    provider.

    Parameters
    ----------
    path : str
        Catalogue file name
    known_providers : list of str, optional
        Provider ids allowed in the file. If not provided, providers are
        created from the rows.

    Returns
    -------
    tuple of lists of Provider and GroundStation, both sorted by id

    Raises
    ------
    InputError
        For parse errors (with line number), duplicate station ids or
        stations referencing an unknown provider

    """

    stations = {}

    with open(path, newline='', encoding='utf-8') as open_file:
        reader = csv.DictReader(open_file)
        _check_header(reader, STATION_HEADER, path)

        for row in reader:
            line = reader.line_num
            station_id = (row.get('station') or '').strip()
            provider_id = (row.get('provider') or '').strip()

            if not station_id or not provider_id:
                raise InputError('{} line {}: missing provider or station '
                                 'id.'.format(path, line))

            if station_id in stations:
                raise InputError('{} line {}: duplicate station id '
                                 '{}.'.format(path, line, station_id))

            if (known_providers is not None and
                    provider_id not in known_providers):
                raise InputError('{} line {}: station {} references unknown '
                                 'provider {}.'.format(path, line, station_id,
                                                       provider_id))

            try:
                stations[station_id] = GroundStation(
                    id=station_id, provider_id=provider_id, name=station_id,
                    latitude=_number(row, 'lat_deg', line, path),
                    longitude=_number(row, 'lon_deg', line, path),
                    altitude=_number(row, 'alt_m', line, path),
                    datarate=_number(row, 'datarate_gbps', line, path))
            except ValueError as err:
                raise InputError('{} line {}: {}'.format(path, line, err))

    stations = [stations[key] for key in sorted(stations)]
    members = {}
    for station in stations:
        members.setdefault(station.provider_id, []).append(station.id)

    providers = [Provider(id=key, name=key, station_ids=tuple(members[key]))
                 for key in sorted(members)]

    return providers, stations


def save_station_catalog(path, stations):
    """Save station catalogue

    Parameters
    ----------
    path : str
        Catalogue file name
    stations : list of GroundStation
        Stations

    """

    with open(path, 'w', newline='', encoding='utf-8') as open_file:
        writer = csv.writer(open_file, lineterminator='\n')
        writer.writerow(STATION_HEADER)
        for station in sorted(stations, key=lambda s: s.id):
            writer.writerow([station.provider_id, station.id,
                             repr(station.latitude), repr(station.longitude),
                             repr(station.altitude), repr(station.datarate)])


def load_contact_windows(path, stations, satellites=None,
                         fixed_datarate=None):
    """Load contact windows

    This method reads externally computed contact windows. The minimum
    duration filter is not applied here.

    Parameters
    ----------
    path : str
        Contact file name
    stations : list of GroundStation
        Known stations
    satellites : list of Satellite, optional
        Known satellites. If not provided, satellite ids are not checked and
        the contact rate is the station rate.
    fixed_datarate : float, optional
        Contact rate used for every window

    Returns
    -------
    list of ContactWindow sorted by (satellite_id, t_start)

    Raises
    ------
    InputError
        For unknown ids, unparsable timestamps or non-positive durations

    """

    station_map = {station.id: station for station in stations}
    sat_map = (None if satellites is None else
               {sat.id: sat for sat in satellites})
    contacts = []

    with open(path, newline='', encoding='utf-8') as open_file:
        reader = csv.DictReader(open_file)
        _check_header(reader, CONTACT_HEADER, path)

        for row in reader:
            line = reader.line_num
            sat_id, station_id = row['satellite'], row['station']

            if station_id not in station_map:
                raise InputError('{} line {}: unknown station {}.'.format(
                                 path, line, station_id))

            if sat_map is not None and sat_id not in sat_map:
                raise InputError('{} line {}: unknown satellite {}.'.format(
                                 path, line, sat_id))

            try:
                t_start = to_utc_seconds(row['start_utc'])
                t_end = to_utc_seconds(row['end_utc'])
            except (ValueError, AttributeError):
                raise InputError('{} line {}: invalid timestamp.'.format(
                                 path, line))

            if not t_end > t_start:
                raise InputError('{} line {}: contact end is not after its '
                                 'start.'.format(path, line))

            sat_rate = (np.inf if sat_map is None else
                        sat_map[sat_id].datarate)
            rate = (fixed_datarate if fixed_datarate is not None else
                    contact_datarate(station_map[station_id].datarate,
                                     sat_rate))
            contacts.append(ContactWindow(
                id=contact_id(sat_id, station_id, t_start),
                satellite_id=sat_id, station_id=station_id,
                t_start=t_start, t_end=t_end, datarate=rate))

    return sorted(contacts, key=lambda c: (c.satellite_id, c.t_start,
                                           c.station_id))


def save_contact_windows(path, contacts):
    """Save contact windows

    Parameters
    ----------
    path : str
        Contact file name
    contacts : list of ContactWindow
        Contacts

    """

    with open(path, 'w', newline='', encoding='utf-8') as open_file:
        writer = csv.writer(open_file, lineterminator='\n')
        writer.writerow(CONTACT_HEADER)
        for contact in contacts:
            writer.writerow([contact.satellite_id, contact.station_id,
                             to_iso(contact.t_start), to_iso(contact.t_end)])


def load_satellites(path):
    """Load satellites

    Parameters
    ----------
    path : str
        Satellite file name

    Returns
    -------
    list of Satellite sorted by id

    Raises
    ------
    InputError
        For parse errors, invalid elements or duplicate ids

    """

    satellites = {}

    with open(path, newline='', encoding='utf-8') as open_file:
        reader = csv.DictReader(open_file)
        _check_header(reader, SATELLITE_HEADER, path)

        for row in reader:
            line = reader.line_num
            sat_id = row['satellite']

            if sat_id in satellites:
                raise InputError('{} line {}: duplicate satellite id '
                                 '{}.'.format(path, line, sat_id))

            try:
                elements = KeplerianElements(
                    semi_major_axis=_number(row, 'semi_major_axis_km', line,
                                            path),
                    eccentricity=_number(row, 'eccentricity', line, path),
                    inclination=np.radians(_number(row, 'inclination_deg',
                                                   line, path)),
                    raan=np.radians(_number(row, 'raan_deg', line, path)),
                    arg_perigee=np.radians(_number(row, 'arg_perigee_deg',
                                                   line, path)),
                    mean_anomaly_epoch=np.radians(
                        _number(row, 'mean_anomaly_deg', line, path)),
                    epoch=to_utc_seconds(row['epoch_utc']))
                satellites[sat_id] = Satellite(
                    id=sat_id, elements=elements,
                    datarate=_number(row, 'datarate_gbps', line, path))
            except ValueError as err:
                raise InputError('{} line {}: {}'.format(path, line, err))

    return [satellites[key] for key in sorted(satellites)]


def save_satellites(path, satellites):
    """Save satellites

    Parameters
    ----------
    path : str
        Satellite file name
    satellites : list of Satellite
        Satellites

    """

    with open(path, 'w', newline='', encoding='utf-8') as open_file:
        writer = csv.writer(open_file, lineterminator='\n')
        writer.writerow(SATELLITE_HEADER)
        for sat in sorted(satellites, key=lambda s: s.id):
            elem = sat.elements
            writer.writerow([sat.id, repr(elem.semi_major_axis),
                             repr(elem.eccentricity),
                             repr(float(np.degrees(elem.inclination))),
                             repr(float(np.degrees(elem.raan))),
                             repr(float(np.degrees(elem.arg_perigee))),
                             repr(float(np.degrees(elem.mean_anomaly_epoch))),
                             to_iso(elem.epoch), repr(sat.datarate)])


def _parse_enum(enum, value):

    key = value.replace('-', '').replace('_', '').lower()
    for member in enum:
        if member.value.lower() == key:
            return member

    raise InputError('Invalid {} {!r}. Options are {}.'.format(
                     enum.__name__, value, ', '.join(m.value for m in enum)))


def _split_ids(values):

    return tuple(item for value in values for item in value.split(',')
                 if item)


def load_scenario(path):
    """Load scenario

    This method reads a scenario file with ``key=value`` lines.

    Parameters
    ----------
    path : str
        Scenario file name

    Returns
    -------
    ScenarioConfig

    Raises
    ------
    InputError
        For unknown keys, missing keys or invalid values

    """

    opts = get_scenario_opts(path)

    walker = None
    if opts.walker_planes is not None:
        walker = {'altitude_km': (781.0 if opts.walker_altitude_km is None
                                  else opts.walker_altitude_km),
                  'eccentricity': opts.walker_eccentricity,
                  'inclination_deg': opts.walker_inclination_deg,
                  'num_planes': opts.walker_planes,
                  'sats_per_plane': opts.walker_sats_per_plane,
                  'datarate_gbps': opts.walker_datarate_gbps}

    try:
        return ScenarioConfig(
            t_sim_start=to_utc_seconds(' '.join(opts.t_sim_start)),
            t_sim_end=to_utc_seconds(' '.join(opts.t_sim_end)),
            t_opt_start=to_utc_seconds(' '.join(opts.t_opt_start)),
            t_opt_end=to_utc_seconds(' '.join(opts.t_opt_end)),
            window_length=opts.window_length_s,
            window_overlap=opts.window_overlap_s,
            min_contact_duration=opts.t_min_s,
            elevation_mask=opts.elevation_mask_deg,
            n_stations=opts.n_stations,
            objective=_parse_enum(Objective, opts.objective),
            decomposition_mode=_parse_enum(DecompositionMode,
                                           opts.decomposition_mode),
            candidate_pool=_split_ids(opts.candidate_pool),
            full_pool=_split_ids(opts.full_pool),
            epsilon_grid=tuple(sorted(opts.epsilon_grid_deg)),
            min_points=opts.min_points,
            match_pool=opts.match_pool,
            coarse_step=opts.coarse_step_s,
            satellite_group_size=opts.satellite_group_size,
            window_count=opts.window_count,
            enumeration_budget=int(opts.enumeration_budget),
            datarate_mode=opts.datarate_mode,
            fixed_datarate=opts.fixed_datarate_gbps,
            walker=walker)
    except ValueError as err:
        raise InputError('{}: {}'.format(path, err))


def pool_stations(stations, provider_ids):
    """Stations operated by the given providers, sorted by id"""

    provider_ids = set(provider_ids)

    return [station for station in sorted(stations, key=lambda s: s.id)
            if station.provider_id in provider_ids]


def check_scenario(scenario, providers, stations):
    """Check scenario against a catalogue

    Parameters
    ----------
    scenario : ScenarioConfig
        Scenario
    providers : list of Provider
        Providers
    stations : list of GroundStation
        Stations

    Raises
    ------
    InputError
        If a pool names an unknown provider or n exceeds the design pool

    """

    known = {provider.id for provider in providers}

    for pool_name in ('candidate_pool', 'full_pool'):
        unknown = sorted(set(getattr(scenario, pool_name)) - known)
        if unknown:
            raise InputError('{} references unknown provider(s): {}'.format(
                             pool_name, ', '.join(unknown)))

    n_pool = len(pool_stations(stations, scenario.candidate_pool))
    if scenario.n_stations > n_pool:
        raise InputError('n_stations = {} exceeds the {} stations of the '
                         'candidate pool.'.format(scenario.n_stations, n_pool))
