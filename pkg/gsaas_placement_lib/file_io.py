# -*- coding: utf-8 -*-

"""REPORT FILE INPUT/OUTPUT

This module defines methods for writing the solution, sweep and station
reports and for reading saved solutions back.

Notes
-----
Every writer produces byte-stable output: keys are sorted, rows are written
in the order given, floats use their shortest round-trip representation and
line endings are ``\\n``.

"""

import csv
import json
import os

HEATMAP_HEADER = ['sats', 'n', 'method', 'value', 'deviation']
STAGE_HEADER = ['stage', 'min', 'mean', 'max', 'solution_delta']


def _fmt(value):

    return '' if value is None else repr(float(value))


def _open_for_write(path):

    try:
        return open(path, 'w', newline='', encoding='utf-8')
    except OSError as err:
        raise OSError('Cannot write {}: {}'.format(path, err.strerror or err))


def make_out_dir(out_dir):
    """Make output directory

    Raises
    ------
    OSError
        If the directory cannot be created, naming the path

    """

    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as err:
        raise OSError('Cannot create output directory {}: {}'.format(
                      out_dir, err.strerror or err))


def write_json(path, data):
    """Write JSON file

    Parameters
    ----------
    path : str
        File name
    data : dict or list
        JSON serialisable data

    """

    with _open_for_write(path) as open_file:
        open_file.write(json.dumps(data, sort_keys=True, indent=2,
                                   allow_nan=False))
        open_file.write('\n')


def read_json(path):
    """Read JSON file

    Raises
    ------
    ValueError
        For files that are not valid JSON, naming the path

    """

    try:
        with open(path, encoding='utf-8') as open_file:
            return json.load(open_file)
    except json.JSONDecodeError as err:
        raise ValueError('{} is not a valid JSON file: {}'.format(path, err))


def write_heatmap_csv(path, rows):
    """Write heatmap CSV

    Parameters
    ----------
    path : str
        File name
    rows : list of tuple
        (sats, n, method, value, deviation) rows, deviation may be None

    """

    with _open_for_write(path) as open_file:
        writer = csv.writer(open_file, lineterminator='\n')
        writer.writerow(HEATMAP_HEADER)
        for sats, n_stations, method, value, dev in rows:
            writer.writerow([sats, n_stations, method, _fmt(value),
                             _fmt(dev)])


def write_stage_csv(path, stage_records):
    """Write stage report CSV

    Parameters
    ----------
    path : str
        File name
    stage_records : list of dict
        Stage report records

    """

    with _open_for_write(path) as open_file:
        writer = csv.writer(open_file, lineterminator='\n')
        writer.writerow(STAGE_HEADER)
        for record in stage_records:
            writer.writerow([record['stage']] +
                            [_fmt(record.get(key)) for key in
                             STAGE_HEADER[1:]])


def station_features(station_records, properties=None):
    """GeoJSON point features

    Parameters
    ----------
    station_records : list of dict
        Records with id, provider, latitude, longitude and altitude keys
    properties : dict, optional
        Extra properties added to every feature

    Returns
    -------
    list of dict features

    """

    features = []

    for record in station_records:
        props = {'id': record['id'], 'provider': record['provider']}
        props.update(properties or {})
        features.append({'type': 'Feature',
                         'geometry': {'type': 'Point',
                                      'coordinates': [record['longitude'],
                                                      record['latitude'],
                                                      record['altitude']]},
                         'properties': props})

    return features


def write_geojson(path, features):
    """Write a GeoJSON feature collection"""

    write_json(path, {'type': 'FeatureCollection', 'features': features})
