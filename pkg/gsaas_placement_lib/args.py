# -*- coding: utf-8 -*-

"""GSAAS PLACEMENT ARGUMENTS

This module sets the arguments for gsaas_placement.py and the keys accepted
in scenario files.

"""

import argparse as ap
from argparse import ArgumentDefaultsHelpFormatter as formatter
from .info import __version__
from .errors import InputError

COMMANDS = ('generate-walker', 'compute-contacts', 'solve', 'sweep',
            'evaluate', 'report')

METHODS = ('ip-optimal', 'ip-decomposed', 'dbscan', 'dbscan-hungarian',
           'dbscan-hungarian-design', 'kmedoids')


class ArgParser(ap.ArgumentParser):

    """Argument Parser

    This class reads options and scenario files written as key=value or
    key value lines, skipping blank lines and lines starting with # or ;.

    """

    def __init__(self, *args, **kwargs):

        super(ArgParser, self).__init__(*args, **kwargs)

    def convert_arg_line_to_args(self, line):
        """Convert argument line to arguments

        This method overrides the default method of argparse. It skips blank
        and comment lines, and allows .ini style formatting.

        Parameters
        ----------
        line : str
            Input argument string

        Yields
        ------
        str
            Argument strings

        """

        line = line.split()
        if line and line[0][0] not in ('#', ';'):
            if line[0][0] != '-':
                line[0] = '--' + line[0]
            if '=' in line[0]:
                line = line[0].split('=', 1) + line[1:]
            for arg in line:
                if arg:
                    yield arg


class ScenarioParser(ArgParser):

    """Scenario Parser

    Argument parser for scenario files. Errors raise `InputError` instead of
    exiting.

    """

    def error(self, message):

        raise InputError('Scenario file error: {}'.format(message))


def get_scenario_parser():
    """Get scenario parser

    This method defines the keys accepted in a scenario file.

    Returns
    -------
    ScenarioParser instance

    """

    parser = ScenarioParser(add_help=False, allow_abbrev=False,
                            fromfile_prefix_chars='@')

    for key in ('t_sim_start', 't_sim_end', 't_opt_start', 't_opt_end'):
        parser.add_argument('--' + key, required=True, nargs='+')

    parser.add_argument('--window_length_s', required=True, type=float)
    parser.add_argument('--window_overlap_s', required=True, type=float)
    parser.add_argument('--t_min_s', required=True, type=float)
    parser.add_argument('--elevation_mask_deg', required=True, type=float)
    parser.add_argument('--n_stations', required=True, type=int)
    parser.add_argument('--objective', required=True)
    parser.add_argument('--decomposition_mode', required=True)
    parser.add_argument('--candidate_pool', required=True, nargs='+')
    parser.add_argument('--full_pool', required=True, nargs='+')

    parser.add_argument('--epsilon_grid_deg', type=float, nargs='+',
                        default=[5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0,
                                 40.0])
    parser.add_argument('--min_points', type=int, default=2)
    parser.add_argument('--match_pool', choices=('full', 'design'),
                        default='full')
    parser.add_argument('--coarse_step_s', type=float, default=10.0)
    parser.add_argument('--satellite_group_size', type=int, default=1)
    parser.add_argument('--window_count', type=int)
    parser.add_argument('--enumeration_budget', type=float, default=5e6)
    parser.add_argument('--datarate_mode', choices=('min', 'fixed'),
                        default='min')
    parser.add_argument('--fixed_datarate_gbps', type=float, default=1.2)

    parser.add_argument('--walker_altitude_km', type=float)
    parser.add_argument('--walker_eccentricity', type=float, default=0.001)
    parser.add_argument('--walker_inclination_deg', type=float, default=86.4)
    parser.add_argument('--walker_planes', type=int)
    parser.add_argument('--walker_sats_per_plane', type=int, default=1)
    parser.add_argument('--walker_datarate_gbps', type=float, default=1.2)

    return parser


def get_scenario_opts(file_name):
    """Get scenario options

    This method reads a scenario file.

    Parameters
    ----------
    file_name : str
        Scenario file name

    Returns
    -------
    arguments namespace

    Raises
    ------
    InputError
        For unknown or missing keys

    """

    opts, unknown = get_scenario_parser().parse_known_args(['@' + file_name])

    if unknown:
        keys = [arg.lstrip('-') for arg in unknown if arg.startswith('--')]
        raise InputError('Unknown scenario key(s): {}'.format(
                         ', '.join(keys or unknown)))

    return opts


def get_opts(args=None):

    """Get script options

    This method sets the ground station placement script options.

    Returns
    -------
    arguments namespace

    """

    # Set up argument parser
    parser = ArgParser(add_help=False, usage='%(prog)s command [options]',
                       description='GSaaS Ground Station Placement Script',
                       formatter_class=formatter,
                       fromfile_prefix_chars='@')
    required = parser.add_argument_group('Required Arguments')
    optional = parser.add_argument_group('Optional Arguments')
    inputs = parser.add_argument_group(' * Inputs')
    solver = parser.add_argument_group(' * Solver')
    sweep = parser.add_argument_group(' * Sweep')
    walker = parser.add_argument_group(' * Walker-Star Generation')

    # Add arguments
    optional.add_argument('-h', '--help', action='help',
                          help='show this help message and exit')

    optional.add_argument('-v', '--version', action='version',
                          version='%(prog)s {}'.format(__version__))

    optional.add_argument('-q', '--quiet', action='store_true',
                          help='Suppress verbose.')

    required.add_argument('command', choices=COMMANDS,
                          help='Command to run.')

    optional.add_argument('-o', '--out', default='gsaas_output',
                          help='Output directory.')

    optional.add_argument('--seed', type=int, default=0,
                          help='Random seed.')

    optional.add_argument('--workers', type=int, default=1,
                          help='Number of worker processes.')

    inputs.add_argument('--scenario', help='Scenario file name.')

    inputs.add_argument('--stations', help='Station catalogue CSV file.')

    inputs.add_argument('--contacts',
                        help='Contact window CSV file. If provided, contacts '
                        'are imported instead of computed.')

    inputs.add_argument('--satellites', help='Satellite CSV file.')

    inputs.add_argument('--solution', help='Solution JSON file (report).')

    solver.add_argument('-m', '--method', choices=METHODS,
                        default='dbscan-hungarian',
                        help='Site selection method.')

    solver.add_argument('--station_ids', nargs='+',
                        help='Station ids to evaluate (evaluate).')

    sweep.add_argument('--max_planes', type=int, default=6,
                       help='Largest number of Walker-Star planes.')

    sweep.add_argument('--max_stations', type=int, default=6,
                       help='Largest number of selected stations.')

    sweep.add_argument('--methods', nargs='+', choices=METHODS,
                       default=['ip-optimal', 'dbscan-hungarian', 'kmedoids'],
                       help='Methods compared in the sweep.')

    walker.add_argument('--altitude', type=float, default=781.0,
                        help='Altitude (km).')

    walker.add_argument('--eccentricity', type=float, default=0.001,
                        help='Eccentricity.')

    walker.add_argument('--inclination', type=float, default=86.4,
                        help='Inclination (deg).')

    walker.add_argument('--planes', type=int, default=1,
                        help='Number of planes.')

    walker.add_argument('--sats_per_plane', type=int, default=1,
                        help='Number of satellites per plane.')

    walker.add_argument('--datarate', type=float, default=1.2,
                        help='Satellite data rate (Gbps).')

    walker.add_argument('--epoch', default='2025-08-22T00:00:00Z',
                        help='Element epoch (ISO-8601 UTC).')

    # Return the argument namespace
    return parser.parse_args(args)
