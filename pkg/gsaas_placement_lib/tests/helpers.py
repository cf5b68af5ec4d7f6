# -*- coding: utf-8 -*-

"""TEST HELPERS

This module contains builders and brute-force references shared by the unit
tests.

"""

from itertools import combinations
import numpy as np
from gsaas_placement_lib.astro import elevation_angle, propagate
from gsaas_placement_lib.catalog import (DecompositionMode, GroundStation,
                                         Objective, ScenarioConfig)
from gsaas_placement_lib.contacts import ContactWindow, contact_id
from gsaas_placement_lib.schedule import (GIGABITS_PER_PETABYTE,
                                          chain_max_gap, is_greater)


def make_scenario(**kwargs):

    params = dict(t_sim_start=0.0, t_sim_end=1000.0, t_opt_start=0.0,
                  t_opt_end=1000.0, window_length=500.0,
                  window_overlap=250.0, min_contact_duration=0.0,
                  elevation_mask=10.0, n_stations=1,
                  objective=Objective.MaxData,
                  decomposition_mode=DecompositionMode.TemporalOnly,
                  candidate_pool=('P1',), full_pool=('P1', 'P2'))
    params.update(kwargs)

    return ScenarioConfig(**params)


def make_station(station_id, provider='P1', lat=0.0, lon=0.0, rate=1.0):

    return GroundStation(id=station_id, provider_id=provider,
                         name=station_id, latitude=lat, longitude=lon,
                         altitude=0.0, datarate=rate)


def make_contact(sat, station, start, end, rate=1.0):

    return ContactWindow(id=contact_id(sat, station, start),
                         satellite_id=sat, station_id=station,
                         t_start=float(start), t_end=float(end),
                         datarate=rate)


def random_contacts(rng, sat, stations, n_contacts, horizon=1000.0,
                    max_length=150.0):

    contacts = {}
    while len(contacts) < n_contacts:
        start = float(rng.randint(0, int(horizon) - 10))
        end = min(horizon, start + float(rng.randint(5, int(max_length))))
        station = stations[rng.randint(len(stations))]
        rate = float(rng.choice([0.5, 1.0, 2.0]))
        contact = make_contact(sat, station, start, end, rate)
        contacts[contact.id] = contact

    return list(contacts.values())


def _chains(contacts):
    """Every non-overlapping subset, in time order"""

    ordered = sorted(contacts, key=lambda c: (c.t_start, c.t_end, c.id))

    def extend(chain, last_end, index):
        yield chain
        for k in range(index, len(ordered)):
            if ordered[k].t_start >= last_end:
                yield from extend(chain + (ordered[k],), ordered[k].t_end,
                                  k + 1)

    yield from extend((), float('-inf'), 0)


def brute_max_data(contacts):

    return max(sum(c.volume for c in chain) for chain in _chains(contacts))


def brute_max_data_chain(contacts):
    """Smallest id chain among the maximum volume chains"""

    chains = list(_chains(contacts))
    best = max(sum(c.volume for c in chain) for chain in chains)

    return min(tuple(c.id for c in chain) for chain in chains
               if not is_greater(best, sum(c.volume for c in chain)))


def brute_min_max_gap(contacts, window_start, window_end):

    gaps = [chain_max_gap(chain, window_start, window_end)
            for chain in _chains(contacts) if chain]

    return min(gaps) if gaps else None


def brute_selection(contacts, pool_ids, n_select, sat_ids, scenario):
    """Best station subset by exhaustive search, ties by smallest ids"""

    best = None
    for subset in combinations(sorted(pool_ids), n_select):
        chosen = set(subset)
        if scenario.objective == Objective.MaxData:
            volume = sum(brute_max_data([c for c in contacts
                                         if c.satellite_id == sat and
                                         c.station_id in chosen])
                         for sat in sat_ids)
            value = (volume * scenario.T_opt / scenario.T_sim /
                     GIGABITS_PER_PETABYTE)
            better = best is None or value > best[0] * (1 + 1e-9) + 1e-12
        else:
            gaps = [brute_min_max_gap([c for c in contacts
                                       if c.satellite_id == sat and
                                       c.station_id in chosen],
                                      scenario.t_sim_start,
                                      scenario.t_sim_end)
                    for sat in sat_ids]
            if any(gap is None for gap in gaps):
                continue
            value = max(gaps)
            better = best is None or value < best[0] - 1e-9 * max(1.0,
                                                                  best[0])
        if better:
            best = (value, subset)

    return best


def brute_contact_windows(elements, station, t_start, t_end, mask_deg,
                          step=1.0):
    """Above-mask runs of a fixed step elevation scan"""

    times = np.arange(t_start, t_end + step / 2, step)
    above = (elevation_angle(propagate(elements, times), station) >=
             np.radians(mask_deg))
    edges = np.diff(np.concatenate(([0], above.astype(int), [0])))
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1) - 1

    return [(times[i], times[j]) for i, j in zip(starts, ends)]
