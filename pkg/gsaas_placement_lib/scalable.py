# -*- coding: utf-8 -*-

"""SCALABLE SITE SELECTION

This module contains the decomposition, clustering and matching stages of
the scalable site selection pipeline.

Notes
-----
Clustering distances are great-circle central angles in degrees; matching
costs are haversine distances in km on a sphere of radius 6371.0088 km.

"""

from dataclasses import dataclass, replace
from multiprocessing import Pool
import numpy as np
from modopt.interface.errors import warn
from scipy.optimize import linear_sum_assignment
from sklearn.cluster import DBSCAN
from .catalog import DecompositionMode, GroundStation, pool_stations
from .contacts import (clip_contacts, compute_contacts, filter_contacts,
                       restrict_contacts)
from .errors import InfeasibleError
from .exact import MethodLabel, evaluate_station_set, solve_exact

EARTH_MEAN_RADIUS = 6371.0088


@dataclass(frozen=True)
class SubproblemSpec:
    """Subproblem definition

    Parameters
    ----------
    index : int
        Subproblem index, the canonical aggregation order
    window_index : int
        Time window index
    t_start, t_end : float
        Window bounds (UTC seconds)
    satellite_ids : tuple of str
        Satellites of the subproblem
    pool : tuple of str
        Candidate station ids

    """

    index: int
    window_index: int
    t_start: float
    t_end: float
    satellite_ids: tuple
    pool: tuple


@dataclass(frozen=True)
class SelectionPoint:
    """Selected location

    Parameters
    ----------
    latitude, longitude : float
        Coordinates (deg)
    source : tuple
        (subproblem index, window index, satellite ids, station id)

    """

    latitude: float
    longitude: float
    source: tuple = ()

    @property
    def station_id(self):
        """Station the point was selected at"""

        return self.source[-1] if self.source else None


@dataclass(frozen=True)
class Cluster:
    """Cluster of selection points"""

    members: tuple
    centroid: tuple
    size: int


@dataclass(frozen=True)
class ClusterSet:
    """Clustering output

    Parameters
    ----------
    clusters : tuple of Cluster
        Clusters, ordered by their first member in canonical point order
    noise : tuple of SelectionPoint
        Noise points
    labels : tuple of int
        Cluster index of every input point, -1 for noise
    epsilon : float
        Neighbourhood radius (deg of arc)
    min_points : int
        Minimum number of points of a core point, itself included

    """

    clusters: tuple
    noise: tuple
    labels: tuple
    epsilon: float
    min_points: int


@dataclass(frozen=True)
class Assignment:
    """Centroid to site assignment

    Parameters
    ----------
    pairs : tuple of (int, str)
        (centroid index, station id) pairs
    total_cost : float
        Sum of geodesic distances (km)

    """

    pairs: tuple
    total_cost: float


@dataclass(frozen=True)
class SubproblemResult:
    """Subproblem result, `solution` is None for skipped subproblems"""

    spec: SubproblemSpec
    solution: object


def make_windows(t_sim_start, t_sim_end, dt, overlap, count=None):
    """Make overlapping windows

    Consecutive windows of length `dt` start `dt - overlap` apart. If the
    stride does not divide the horizon, a final window is aligned to the
    horizon end.

    Parameters
    ----------
    t_sim_start, t_sim_end : float
        Simulation horizon (UTC seconds)
    dt : float
        Window length (s)
    overlap : float
        Window overlap (s)
    count : int, optional
        Number of windows. If provided, the stride is spread evenly.

    Returns
    -------
    list of (t_start, t_end) tuples

    Raises
    ------
    ValueError
        If the horizon is shorter than `dt` or the overlap is invalid

    """

    horizon = t_sim_end - t_sim_start

    if not dt > overlap >= 0:
        raise ValueError('The window length must exceed the overlap, which '
                         'must be non-negative.')

    if horizon < dt:
        raise ValueError('The simulation horizon is shorter than the window '
                         'length.')

    if count is not None:
        if count < 1 or (count == 1 and horizon > dt):
            raise ValueError('Invalid window count {}.'.format(count))
        stride = (horizon - dt) / (count - 1) if count > 1 else 0.0
        n_windows = count
    else:
        stride = dt - overlap
        n_windows = int(np.floor((horizon - dt) / stride + 1e-9)) + 1

    windows = [(t_sim_start + k * stride, t_sim_start + k * stride + dt)
               for k in range(n_windows)]

    if windows[-1][1] < t_sim_end - 1e-6:
        windows.append((t_sim_end - dt, t_sim_end))
    else:
        windows[-1] = (t_sim_end - dt, t_sim_end)

    return windows


def make_subproblems(scenario, satellites, pool):
    """Make subproblems

    Parameters
    ----------
    scenario : ScenarioConfig
        Scenario
    satellites : list of Satellite or str
        Satellites or satellite ids
    pool : list of GroundStation
        Design pool

    Returns
    -------
    list of SubproblemSpec, window-major

    """

    sat_ids = sorted(getattr(sat, 'id', sat) for sat in satellites)
    pool_ids = tuple(sorted(s.id for s in pool))
    windows = make_windows(scenario.t_sim_start, scenario.t_sim_end,
                           scenario.window_length, scenario.window_overlap,
                           scenario.window_count)

    if scenario.decomposition_mode == DecompositionMode.TemporalOnly:
        groups = [tuple(sat_ids)]
    else:
        size = max(1, scenario.satellite_group_size)
        groups = [tuple(sat_ids[k:k + size])
                  for k in range(0, len(sat_ids), size)]

    specs = []
    for w_index, (t_start, t_end) in enumerate(windows):
        for group in groups:
            specs.append(SubproblemSpec(index=len(specs),
                                        window_index=w_index,
                                        t_start=t_start, t_end=t_end,
                                        satellite_ids=group, pool=pool_ids))

    return specs


def subproblem_contacts(spec, contacts, t_min):
    """Contacts of a subproblem

    Contacts are restricted to the subproblem satellites and pool, clipped to
    the window and filtered by minimum duration again.

    """

    restricted = restrict_contacts(contacts, spec.pool, spec.satellite_ids)

    return filter_contacts(clip_contacts(restricted, spec.t_start,
                                         spec.t_end), t_min)


def _solve_one(spec, contacts, scenario, pool):

    sub_scenario = replace(scenario, t_sim_start=spec.t_start,
                           t_sim_end=spec.t_end)
    sub_contacts = subproblem_contacts(spec, contacts,
                                       scenario.min_contact_duration)
    try:
        return solve_exact(sub_scenario, pool, sub_contacts,
                           satellite_ids=list(spec.satellite_ids))
    except InfeasibleError:
        return None
    except Exception as err:
        err.args = ('Subproblem {} (window {}, satellites {}): {}'.format(
                    spec.index, spec.window_index,
                    ','.join(spec.satellite_ids), err),)
        raise


_WORKER_STATE = {}


def _init_worker(contacts, scenario, pool):

    _WORKER_STATE.update(contacts=contacts, scenario=scenario, pool=pool)


def _solve_worker(spec):

    return _solve_one(spec, _WORKER_STATE['contacts'],
                      _WORKER_STATE['scenario'], _WORKER_STATE['pool'])


def run_subproblems(specs, contacts, scenario, pool, workers=1, log=None):
    """Run subproblems

    This method solves every subproblem exactly over its window, satellites
    and pool. MinMaxGap subproblems in which a satellite has no contact are
    skipped.

    Parameters
    ----------
    specs : list of SubproblemSpec
        Subproblems
    contacts : list of ContactWindow
        Contacts over the simulation horizon
    scenario : ScenarioConfig
        Scenario
    pool : list of GroundStation
        Design pool
    workers : int, optional
        Number of worker processes (default is 1)
    log : logging.Logger, optional
        Log instance

    Returns
    -------
    list of SubproblemResult in subproblem index order

    """

    specs = sorted(specs, key=lambda s: s.index)

    if workers > 1 and len(specs) > 1:
        with Pool(workers, initializer=_init_worker,
                  initargs=(contacts, scenario, pool)) as worker_pool:
            solutions = worker_pool.map(_solve_worker, specs)
    else:
        solutions = [_solve_one(spec, contacts, scenario, pool)
                     for spec in specs]

    results = []
    for spec, solution in zip(specs, solutions):
        if solution is None:
            warn('Subproblem {} (window {}, satellites {}) is infeasible and '
                 'was skipped.'.format(spec.index, spec.window_index,
                                       ','.join(spec.satellite_ids)), log)
        results.append(SubproblemResult(spec=spec, solution=solution))

    return results


def selection_points(results, pool):
    """Selection points

    One point per selected station per solved subproblem, in subproblem
    order.

    """

    records = {s.id: s for s in pool}
    points = []

    for result in sorted(results, key=lambda r: r.spec.index):
        if result.solution is None:
            continue
        for station_id in result.solution.station_ids:
            station = records[station_id]
            points.append(SelectionPoint(
                latitude=station.latitude, longitude=station.longitude,
                source=(result.spec.index, result.spec.window_index,
                        result.spec.satellite_ids, station_id)))

    return points


def solve_subproblems(specs, contacts, scenario, pool, workers=1, log=None):
    """Solve subproblems

    Parameters
    ----------
    specs : list of SubproblemSpec
        Subproblems
    contacts : list of ContactWindow
        Contacts over the simulation horizon
    scenario : ScenarioConfig
        Scenario
    pool : list of GroundStation
        Design pool
    workers : int, optional
        Number of worker processes (default is 1)
    log : logging.Logger, optional
        Log instance

    Returns
    -------
    list of SelectionPoint

    """

    return selection_points(run_subproblems(specs, contacts, scenario, pool,
                                            workers, log), pool)


def _unit_vectors(lat_deg, lon_deg):

    lat, lon = np.radians(lat_deg), np.radians(lon_deg)

    return np.stack([np.cos(lat) * np.cos(lon), np.cos(lat) * np.sin(lon),
                     np.sin(lat)], axis=-1)


def central_angle(lat1, lon1, lat2, lon2):
    """Great-circle central angle (rad), haversine form"""

    phi1, phi2 = np.radians(lat1), np.radians(lat2)
    dphi = phi2 - phi1
    dlam = np.radians(np.asarray(lon2) - np.asarray(lon1))
    hav = (np.sin(dphi / 2) ** 2 +
           np.cos(phi1) * np.cos(phi2) * np.sin(dlam / 2) ** 2)

    return 2.0 * np.arcsin(np.sqrt(np.clip(hav, 0.0, 1.0)))


def geodesic_distance(p1, p2):
    """Geodesic distance

    Haversine distance on a sphere of radius 6371.0088 km.

    Parameters
    ----------
    p1, p2 : tuple
        (latitude, longitude) in degrees

    Returns
    -------
    float distance (km)

    """

    return float(EARTH_MEAN_RADIUS * central_angle(p1[0], p1[1], p2[0],
                                                   p2[1]))


def _coords(points):

    return (np.array([p.latitude for p in points], dtype=float),
            np.array([p.longitude for p in points], dtype=float))


def angle_matrix_deg(points):
    """Pairwise central angles (deg)"""

    lat, lon = _coords(points)

    return np.degrees(central_angle(lat[:, None], lon[:, None], lat[None, :],
                                    lon[None, :]))


def distance_matrix_km(points_a, points_b):
    """Pairwise geodesic distances (km)"""

    lat_a, lon_a = _coords(points_a)
    lat_b, lon_b = _coords(points_b)

    return EARTH_MEAN_RADIUS * central_angle(lat_a[:, None], lon_a[:, None],
                                             lat_b[None, :], lon_b[None, :])


def _canonical_key(point):

    return (point.latitude, point.longitude, repr(point.source))


def cluster_centroid(member_points, log=None):
    """Cluster centroid

    Spherical mean: the renormalised mean of the unit position vectors.

    Parameters
    ----------
    member_points : list of SelectionPoint
        Cluster members
    log : logging.Logger, optional
        Log instance

    Returns
    -------
    tuple (latitude, longitude) in degrees, longitude in [-180, 180)

    """

    if not member_points:
        raise ValueError('A centroid needs at least one member.')

    lat, lon = _coords(member_points)
    mean = _unit_vectors(lat, lon).mean(axis=0)
    norm = np.linalg.norm(mean)

    if norm < 1e-12:
        warn('Degenerate centroid, using the first member point.', log)
        return (member_points[0].latitude, member_points[0].longitude)

    mean /= norm
    c_lat = float(np.degrees(np.arcsin(np.clip(mean[2], -1.0, 1.0))))
    c_lon = float(np.degrees(np.arctan2(mean[1], mean[0])))
    c_lon = ((c_lon + 180.0) % 360.0) - 180.0

    return (c_lat, c_lon)


def dbscan(points, epsilon_deg, min_points, log=None):
    """DBSCAN

    This method clusters the points by density reachability using the
    great-circle central angle in degrees. A point is a core point if at least
    `min_points` points, itself included, lie within `epsilon_deg`. The
    points are put in a canonical order first, so the partition does not
    depend on the input order.

    Parameters
    ----------
    points : list of SelectionPoint
        Points
    epsilon_deg : float
        Neighbourhood radius (deg of arc)
    min_points : int
        Minimum neighbourhood size of a core point
    log : logging.Logger, optional
        Log instance

    Returns
    -------
    ClusterSet

    """

    if not epsilon_deg > 0:
        raise ValueError('Epsilon must be positive.')

    if min_points < 1:
        raise ValueError('min_points must be at least 1.')

    if not points:
        return ClusterSet(clusters=(), noise=(), labels=(),
                          epsilon=epsilon_deg, min_points=min_points)

    order = sorted(range(len(points)), key=lambda k: _canonical_key(points[k]))
    ordered = [points[k] for k in order]
    fit = DBSCAN(eps=epsilon_deg, min_samples=min_points,
                 metric='precomputed').fit(angle_matrix_deg(ordered))

    # relabel by first member in canonical order
    relabel = {}
    for label in fit.labels_:
        if label >= 0 and label not in relabel:
            relabel[label] = len(relabel)

    canonical = [relabel.get(label, -1) for label in fit.labels_]
    labels = [0] * len(points)
    for position, k in enumerate(order):
        labels[k] = canonical[position]

    members = [[] for _ in relabel]
    noise = []
    for point, label in zip(ordered, canonical):
        (members[label] if label >= 0 else noise).append(point)

    clusters = tuple(Cluster(members=tuple(group),
                             centroid=cluster_centroid(group, log),
                             size=len(group)) for group in members)

    return ClusterSet(clusters=clusters, noise=tuple(noise),
                      labels=tuple(labels), epsilon=epsilon_deg,
                      min_points=min_points)


def _unique_points(points):

    unique, weights, index = [], [], {}
    for point in sorted(points, key=_canonical_key):
        key = (point.latitude, point.longitude)
        if key not in index:
            index[key] = len(unique)
            unique.append(point)
            weights.append(0)
        weights[index[key]] += 1

    return unique, np.array(weights, dtype=float)


def medoid_cost(points, medoids):
    """Sum of great-circle distances (km) from each point to its nearest
    medoid"""

    if not points:
        return 0.0

    return float(distance_matrix_km(points, medoids).min(axis=1).sum())


def kmedoids(points, k, seed):
    """k-Medoids

    Partitioning around medoids: a seeded random initial set of k distinct
    locations, then the best (medoid, non-medoid) swap is applied until no
    swap lowers the total distance of the points to their nearest medoid.

    Parameters
    ----------
    points : list of SelectionPoint
        Points, repeated locations count with their multiplicity
    k : int
        Number of medoids
    seed : int
        Random seed

    Returns
    -------
    list of SelectionPoint medoids in canonical point order

    Raises
    ------
    ValueError
        If `k` exceeds the number of distinct locations

    """

    unique, weights = _unique_points(points)
    n_unique = len(unique)

    if not 1 <= k <= n_unique:
        raise ValueError('k = {} must be between 1 and the number of distinct '
                         'points ({}).'.format(k, n_unique))

    dist = distance_matrix_km(unique, unique)
    rng = np.random.RandomState(seed)
    medoids = sorted(rng.choice(n_unique, size=k, replace=False).tolist())
    cost = float(weights @ dist[:, medoids].min(axis=1))

    while True:
        best = (cost, None, None)
        candidates = [o for o in range(n_unique) if o not in medoids]

        for pos, _ in enumerate(medoids):
            others = medoids[:pos] + medoids[pos + 1:]
            nearest = (dist[:, others].min(axis=1) if others else
                       np.full(n_unique, np.inf))
            if not candidates:
                break
            swap_costs = weights @ np.minimum(nearest[:, None],
                                              dist[:, candidates])
            arg = int(np.argmin(swap_costs))
            if swap_costs[arg] < best[0]:
                best = (float(swap_costs[arg]), pos, candidates[arg])

        if best[1] is None or not best[0] < cost - 1e-9 * max(1.0, cost):
            break

        medoids[best[1]] = best[2]
        medoids.sort()
        cost = best[0]

    return [unique[m] for m in medoids]


def hungarian_match(centroids, candidate_sites):
    """Hungarian matching

    This method assigns every centroid to a distinct site, minimising the
    total geodesic distance. The rectangular assignment is solved directly.

    Parameters
    ----------
    centroids : list of tuple
        (latitude, longitude) pairs in degrees
    candidate_sites : list of GroundStation
        Sites

    Returns
    -------
    Assignment

    Raises
    ------
    ValueError
        If there are more centroids than sites

    """

    if len(centroids) > len(candidate_sites):
        raise ValueError('Cannot match {} centroids to {} sites.'.format(
                         len(centroids), len(candidate_sites)))

    if not centroids:
        return Assignment(pairs=(), total_cost=0.0)

    cent_points = [SelectionPoint(lat, lon) for lat, lon in centroids]
    cost = distance_matrix_km(cent_points, candidate_sites)
    rows, cols = linear_sum_assignment(cost)

    pairs = tuple((int(row), candidate_sites[col].id)
                  for row, col in zip(rows, cols))

    return Assignment(pairs=pairs, total_cost=float(cost[rows, cols].sum()))


def _dbscan_sweep(points, scenario, log=None):
    """Smallest epsilon of the grid giving at least n clusters"""

    for epsilon in sorted(scenario.epsilon_grid):
        cluster_set = dbscan(points, epsilon, scenario.min_points, log)
        if len(cluster_set.clusters) >= scenario.n_stations:
            return cluster_set

    return None


def _top_centroids(cluster_set, n_select):

    ranked = sorted(range(len(cluster_set.clusters)),
                    key=lambda c: (-cluster_set.clusters[c].size, c))

    return [cluster_set.clusters[c] for c in ranked[:n_select]]


def _virtual_stations(centres, rate):

    return [GroundStation(id='virtual-{:02d}'.format(rank + 1),
                          provider_id='virtual',
                          name='virtual-{:02d}'.format(rank + 1),
                          latitude=lat, longitude=lon, altitude=0.0,
                          datarate=rate)
            for rank, (lat, lon) in enumerate(centres)]


def select_final_stations(points, scenario, full_catalog, method, contacts,
                          satellites=None, seed=0, match_pool=None,
                          label=None, satellite_ids=None, log=None):
    """Select final stations

    This method reduces the selection points to n locations and maps them to
    real sites.

    Parameters
    ----------
    points : list of SelectionPoint
        Subproblem selections
    scenario : ScenarioConfig
        Scenario
    full_catalog : list of GroundStation
        Every known station
    method : MethodLabel
        DbscanHungarian, KMedoids or DbscanOnly
    contacts : list of ContactWindow
        Contacts of the matching pool stations over the simulation horizon,
        filtered by minimum duration
    satellites : list of Satellite, optional
        Satellites, required by DbscanOnly to compute the contacts of the
        virtual stations
    seed : int, optional
        Random seed for k-Medoids
    match_pool : str {'full', 'design'}, optional
        Matching pool (default is the scenario setting)
    label : str, optional
        Report label
    satellite_ids : list of str, optional
        Satellites to schedule (default is the satellites, or else every
        satellite with a contact)
    log : logging.Logger, optional
        Log instance

    Returns
    -------
    SelectionSolution

    Raises
    ------
    ValueError
        For invalid methods or too few distinct points

    """

    match_pool = match_pool or scenario.match_pool
    providers = (scenario.full_pool if match_pool == 'full' else
                 scenario.candidate_pool)
    sites = pool_stations(full_catalog, providers)
    n_select = scenario.n_stations
    if satellite_ids is not None:
        sat_ids = sorted(satellite_ids)
    elif satellites is not None:
        sat_ids = sorted(s.id for s in satellites)
    else:
        sat_ids = sorted({c.satellite_id for c in contacts})
    diagnostics = {'match_pool': match_pool}

    if method not in (MethodLabel.DbscanHungarian, MethodLabel.KMedoids,
                      MethodLabel.DbscanOnly):
        raise ValueError('Invalid final selection method {}.'.format(method))

    cluster_set = None
    if method != MethodLabel.KMedoids:
        cluster_set = _dbscan_sweep(points, scenario, log)
        if cluster_set is None:
            warn('No epsilon in the grid gives {} clusters, falling back to '
                 'k-Medoids.'.format(n_select), log)

    if cluster_set is not None:
        top = _top_centroids(cluster_set, n_select)
        centres = [cluster.centroid for cluster in top]
        diagnostics.update(cluster_set=cluster_set, members=[c.size for c in
                                                             top])
    else:
        medoids = kmedoids(points, n_select, seed)
        centres = [(p.latitude, p.longitude) for p in medoids]
        weights = {}
        for point in points:
            key = (point.latitude, point.longitude)
            weights[key] = weights.get(key, 0) + 1
        diagnostics.update(members=[weights[c] for c in centres])

    diagnostics['centroids'] = centres

    if method == MethodLabel.DbscanOnly:
        if satellites is None:
            raise ValueError('Evaluating virtual stations needs satellites.')
        rate = max([s.datarate for s in sites] or [0.0])
        virtual = _virtual_stations(centres, rate)
        virtual_contacts = filter_contacts(compute_contacts(
            satellites, virtual, scenario.t_sim_start, scenario.t_sim_end,
            scenario.elevation_mask, scenario.coarse_step,
            scenario.fixed_rate), scenario.min_contact_duration)
        return replace(evaluate_station_set(
            [s.id for s in virtual], virtual_contacts, scenario,
            catalog=virtual, satellite_ids=sat_ids, method=method,
            label=label), diagnostics=diagnostics)

    assignment = hungarian_match(centres, sites)
    diagnostics['assignment'] = assignment
    if log is not None:
        log.info(' - Matching cost (km): ' + str(assignment.total_cost))

    return replace(evaluate_station_set(
        [station_id for _, station_id in assignment.pairs], contacts,
        scenario, catalog=sites, satellite_ids=sat_ids, method=method,
        label=label), diagnostics=diagnostics)
