# -*- coding: utf-8 -*-

"""ORBIT PROPAGATION

This module contains the orbital state types, a two-body propagator with J2
secular drift, the inertial to Earth-fixed rotation, topocentric elevation and
a Walker-Star constellation generator.

Notes
-----
Time is measured in seconds since 1970-01-01T00:00:00 UTC with leap seconds
ignored. Distances are in km unless stated otherwise.

"""

from dataclasses import dataclass
import numpy as np
from .errors import ConvergenceError

MU_EARTH = 398600.4418
R_EARTH = 6378.137
J2 = 1.08262668e-3
WGS84_F = 1.0 / 298.257223563
WGS84_E2 = WGS84_F * (2.0 - WGS84_F)

TWO_PI = 2.0 * np.pi
UNIX_EPOCH_JD = 2440587.5
J2000_JD = 2451545.0
SECONDS_PER_DAY = 86400.0
MAX_PROPAGATION_SPAN = 400 * SECONDS_PER_DAY

KEPLER_TOL = 1e-12
KEPLER_MAX_ITER = 50


@dataclass(frozen=True)
class KeplerianElements:
    """Keplerian elements

    Mean orbital elements at a reference epoch. Angles are normalised to
    [0, 2pi) on construction.

    Parameters
    ----------
    semi_major_axis : float
        Semi-major axis (km)
    eccentricity : float
        Eccentricity
    inclination : float
        Inclination (rad)
    raan : float
        Right ascension of the ascending node (rad)
    arg_perigee : float
        Argument of perigee (rad)
    mean_anomaly_epoch : float
        Mean anomaly at epoch (rad)
    epoch : float
        Reference epoch (UTC seconds)

    Raises
    ------
    ValueError
        For a semi-major axis below the Earth radius or an eccentricity
        outside [0, 1)

    """

    semi_major_axis: float
    eccentricity: float
    inclination: float
    raan: float
    arg_perigee: float
    mean_anomaly_epoch: float
    epoch: float

    def __post_init__(self):

        if not self.semi_major_axis > R_EARTH:
            raise ValueError('Semi-major axis {} km is not above the Earth '
                             'equatorial radius.'.format(self.semi_major_axis))

        if not 0.0 <= self.eccentricity < 1.0:
            raise ValueError('Eccentricity must be in [0, 1), got '
                             '{}.'.format(self.eccentricity))

        for name in ('inclination', 'raan', 'arg_perigee',
                     'mean_anomaly_epoch'):
            object.__setattr__(self, name,
                               float(np.mod(getattr(self, name), TWO_PI)))

    @property
    def mean_motion(self):
        """Mean motion (rad/s)"""

        return np.sqrt(MU_EARTH / self.semi_major_axis ** 3)

    @property
    def period(self):
        """Orbital period (s)"""

        return TWO_PI / self.mean_motion


@dataclass(frozen=True)
class Satellite:
    """Satellite

    Parameters
    ----------
    id : str
        Unique satellite identifier
    elements : KeplerianElements
        Orbital elements
    datarate : float
        Downlink data rate (Gbps)

    """

    id: str
    elements: KeplerianElements
    datarate: float

    def __post_init__(self):

        if self.datarate < 0:
            raise ValueError('Satellite {} has a negative data '
                             'rate.'.format(self.id))


@dataclass(frozen=True)
class EcefState:
    """Earth-fixed state

    Parameters
    ----------
    position : np.ndarray
        Position (km), shape (3,) or (N, 3)
    timestamp : float or np.ndarray
        UTC seconds, scalar or shape (N,)

    """

    position: np.ndarray
    timestamp: object


def j2_secular_rates(elements):
    """J2 secular rates

    This method returns the secular drift rates caused by the Earth's J2
    zonal harmonic.

    Parameters
    ----------
    elements : KeplerianElements
        Orbital elements

    Returns
    -------
    tuple of floats raan rate, argument of perigee rate, mean anomaly rate
    (rad/s). The mean anomaly rate includes the mean motion.

    """

    n = elements.mean_motion
    e2 = elements.eccentricity ** 2
    p = elements.semi_major_axis * (1.0 - e2)
    factor = 1.5 * n * J2 * (R_EARTH / p) ** 2
    cos_i = np.cos(elements.inclination)

    raan_dot = -factor * cos_i
    argp_dot = 0.5 * factor * (5.0 * cos_i ** 2 - 1.0)
    m_dot = n + 0.5 * factor * np.sqrt(1.0 - e2) * (3.0 * cos_i ** 2 - 1.0)

    return raan_dot, argp_dot, m_dot


def solve_kepler(mean_anomaly, eccentricity):
    """Solve Kepler's equation

    Newton iteration for E - e sin(E) = M.

    Parameters
    ----------
    mean_anomaly : float or np.ndarray
        Mean anomaly (rad)
    eccentricity : float
        Eccentricity

    Returns
    -------
    np.ndarray eccentric anomaly (rad)

    Raises
    ------
    ConvergenceError
        If the iteration cap is reached

    """

    mean_anomaly = np.mod(np.asarray(mean_anomaly, dtype=float), TWO_PI)
    ecc_anom = (np.copy(mean_anomaly) if eccentricity < 0.8 else
                np.full_like(mean_anomaly, np.pi))

    for _ in range(KEPLER_MAX_ITER):
        delta = ((ecc_anom - eccentricity * np.sin(ecc_anom) - mean_anomaly) /
                 (1.0 - eccentricity * np.cos(ecc_anom)))
        ecc_anom = ecc_anom - delta
        if np.all(np.abs(delta) < KEPLER_TOL):
            return ecc_anom

    raise ConvergenceError('Kepler equation did not converge after {} '
                           'iterations (e = {}).'.format(KEPLER_MAX_ITER,
                                                         eccentricity))


def gmst(t):
    """Greenwich mean sidereal time

    IAU-82 polynomial with UT1 taken equal to UTC.

    Parameters
    ----------
    t : float or np.ndarray
        UTC seconds

    Returns
    -------
    np.ndarray GMST angle (rad) in [0, 2pi)

    """

    jd = np.asarray(t, dtype=float) / SECONDS_PER_DAY + UNIX_EPOCH_JD
    tu = (jd - J2000_JD) / 36525.0
    seconds = (67310.54841 + (876600.0 * 3600.0 + 8640184.812866) * tu +
               0.093104 * tu ** 2 - 6.2e-6 * tu ** 3)

    return np.mod(seconds, SECONDS_PER_DAY) * TWO_PI / SECONDS_PER_DAY


def _check_span(elements, t):

    if np.any(np.abs(t - elements.epoch) > MAX_PROPAGATION_SPAN):
        raise ValueError('Propagation time is more than 400 days from the '
                         'element epoch.')


def propagate_inertial(elements, t, j2=True):
    """Propagate in the inertial frame

    Two-body motion with optional J2 secular drift of the node, perigee and
    mean anomaly.

    Parameters
    ----------
    elements : KeplerianElements
        Orbital elements
    t : float or np.ndarray
        UTC seconds
    j2 : bool, optional
        Option to apply J2 secular drift (default is True)

    Returns
    -------
    tuple of np.ndarray position (km) and velocity (km/s), each of shape
    (3,) for scalar `t` or (N, 3)

    Raises
    ------
    ValueError
        If `t` is more than 400 days from the epoch

    """

    t = np.asarray(t, dtype=float)
    _check_span(elements, t)
    dt = t - elements.epoch

    if j2:
        raan_dot, argp_dot, m_dot = j2_secular_rates(elements)
    else:
        raan_dot, argp_dot, m_dot = 0.0, 0.0, elements.mean_motion

    raan = elements.raan + raan_dot * dt
    argp = elements.arg_perigee + argp_dot * dt
    mean_anom = elements.mean_anomaly_epoch + m_dot * dt

    a = elements.semi_major_axis
    e = elements.eccentricity
    ecc_anom = solve_kepler(mean_anom, e)
    cos_e, sin_e = np.cos(ecc_anom), np.sin(ecc_anom)
    root = np.sqrt(1.0 - e ** 2)

    x_pf = a * (cos_e - e)
    y_pf = a * root * sin_e
    v_scale = elements.mean_motion * a / (1.0 - e * cos_e)
    vx_pf = -v_scale * sin_e
    vy_pf = v_scale * root * cos_e

    cos_o, sin_o = np.cos(raan), np.sin(raan)
    cos_w, sin_w = np.cos(argp), np.sin(argp)
    cos_i, sin_i = np.cos(elements.inclination), np.sin(elements.inclination)

    p_vec = np.stack([cos_o * cos_w - sin_o * sin_w * cos_i,
                      sin_o * cos_w + cos_o * sin_w * cos_i,
                      sin_w * sin_i * np.ones_like(cos_o)], axis=-1)
    q_vec = np.stack([-cos_o * sin_w - sin_o * cos_w * cos_i,
                      -sin_o * sin_w + cos_o * cos_w * cos_i,
                      cos_w * sin_i * np.ones_like(cos_o)], axis=-1)

    position = x_pf[..., None] * p_vec + y_pf[..., None] * q_vec
    velocity = vx_pf[..., None] * p_vec + vy_pf[..., None] * q_vec

    return position, velocity


def propagate(elements, t, j2=True):
    """Propagate

    This method propagates the orbit to the requested time(s) and rotates the
    inertial position into the Earth-fixed frame using GMST.

    Parameters
    ----------
    elements : KeplerianElements
        Orbital elements
    t : float or np.ndarray
        UTC seconds
    j2 : bool, optional
        Option to apply J2 secular drift (default is True)

    Returns
    -------
    EcefState Earth-fixed position(s)

    """

    position, _ = propagate_inertial(elements, t, j2=j2)
    theta = gmst(t)
    cos_t, sin_t = np.cos(theta), np.sin(theta)

    ecef = np.stack([cos_t * position[..., 0] + sin_t * position[..., 1],
                     -sin_t * position[..., 0] + cos_t * position[..., 1],
                     position[..., 2]], axis=-1)

    return EcefState(position=ecef, timestamp=t)


def geodetic_to_ecef(lat_deg, lon_deg, alt_m=0.0):
    """Geodetic to Earth-fixed

    Parameters
    ----------
    lat_deg : float
        Geodetic latitude (deg)
    lon_deg : float
        Longitude (deg)
    alt_m : float, optional
        Height above the WGS-84 ellipsoid (m)

    Returns
    -------
    tuple of np.ndarray position (km) and local up unit vector

    """

    lat, lon = np.radians(lat_deg), np.radians(lon_deg)
    alt = alt_m / 1000.0
    n_rad = R_EARTH / np.sqrt(1.0 - WGS84_E2 * np.sin(lat) ** 2)

    up = np.array([np.cos(lat) * np.cos(lon), np.cos(lat) * np.sin(lon),
                   np.sin(lat)])
    position = np.array([(n_rad + alt) * np.cos(lat) * np.cos(lon),
                         (n_rad + alt) * np.cos(lat) * np.sin(lon),
                         (n_rad * (1.0 - WGS84_E2) + alt) * np.sin(lat)])

    return position, up


def elevation_angle(sat, station):
    """Elevation angle

    This method computes the topocentric elevation of the satellite seen from
    the station, using the WGS-84 geodetic normal as the local up direction.

    Parameters
    ----------
    sat : EcefState
        Satellite Earth-fixed state(s)
    station : GroundStation
        Any object with `latitude`, `longitude` (deg) and `altitude` (m)

    Returns
    -------
    float or np.ndarray elevation (rad) in [-pi/2, pi/2]

    Raises
    ------
    ValueError
        For a latitude outside [-90, 90]

    """

    if abs(station.latitude) > 90:
        raise ValueError('Invalid station latitude {}.'.format(
                         station.latitude))

    site, up = geodetic_to_ecef(station.latitude, station.longitude,
                                station.altitude)
    los = np.asarray(sat.position) - site
    vertical = np.asarray(los @ up)
    horizontal = np.linalg.norm(los - vertical[..., None] * up, axis=-1)

    return np.arctan2(vertical, horizontal)


def generate_walker_star(altitude_km, eccentricity, inclination_deg,
                         num_planes, sats_per_plane, datarate_gbps, epoch):
    """Generate a Walker-Star constellation

    Planes are spread over 180 deg of right ascension and satellites are
    evenly spaced within each plane, with a cross-plane phase offset of
    plane_index * 360 / (num_planes * sats_per_plane) deg.

    Parameters
    ----------
    altitude_km : float
        Altitude above the equatorial radius (km)
    eccentricity : float
        Eccentricity
    inclination_deg : float
        Inclination (deg)
    num_planes : int
        Number of orbital planes
    sats_per_plane : int
        Number of satellites in each plane
    datarate_gbps : float
        Satellite downlink rate (Gbps)
    epoch : float
        Element epoch (UTC seconds)

    Returns
    -------
    list of Satellite

    Raises
    ------
    ValueError
        For non-positive altitude or plane/satellite counts

    """

    if altitude_km <= 0:
        raise ValueError('Altitude must be positive, got {} km.'.format(
                         altitude_km))

    if num_planes < 1 or sats_per_plane < 1:
        raise ValueError('The number of planes and satellites per plane must '
                         'be at least 1.')

    n_total = num_planes * sats_per_plane
    satellites = []

    for plane in range(num_planes):
        raan = np.radians(plane * 180.0 / num_planes)
        for slot in range(sats_per_plane):
            mean_anom = (TWO_PI * slot / sats_per_plane +
                         TWO_PI * plane / n_total)
            elements = KeplerianElements(
                semi_major_axis=R_EARTH + altitude_km,
                eccentricity=eccentricity,
                inclination=np.radians(inclination_deg),
                raan=raan, arg_perigee=0.0,
                mean_anomaly_epoch=mean_anom, epoch=epoch)
            satellites.append(Satellite(
                id='WS-P{:02d}-S{:02d}'.format(plane + 1, slot + 1),
                elements=elements, datarate=datarate_gbps))

    return satellites
