#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""GSAAS_PLACEMENT

This module is executable and contains methods for selecting ground station
sites from Ground Station as a Service providers for a satellite
constellation.

Notes
-----
Sub-commands: generate-walker, compute-contacts, solve, sweep, evaluate and
report. Exit codes: 0 success, 2 infeasible, 3 enumeration budget exceeded,
4 input error, 1 otherwise.

"""

import os
import sys
from gsaas_placement_lib.info import __version__
from gsaas_placement_lib.args import get_opts
from gsaas_placement_lib.astro import generate_walker_star
from gsaas_placement_lib.audit import audit_solution
from gsaas_placement_lib.catalog import (check_scenario, load_contact_windows,
                                         load_satellites, load_scenario,
                                         load_station_catalog, pool_stations,
                                         save_contact_windows,
                                         save_satellites, to_utc_seconds)
from gsaas_placement_lib.contacts import compute_contacts, filter_contacts
from gsaas_placement_lib.errors import InputError
from gsaas_placement_lib.exact import evaluate_station_set
from gsaas_placement_lib.file_io import make_out_dir, read_json
from gsaas_placement_lib.pipeline import (RunResult, StageReport, Stage,
                                          emit_reports, run_scenario,
                                          sweep_walker)
from modopt.interface.errors import catch_error, warn
from modopt.interface.log import set_up_log, close_log


def show(log, key, value):
    """Print and log an option"""

    if not opts.quiet:
        print(' - {}: {}'.format(key, value))
    log.info(' - {}: {}'.format(key, value))


def require(*names):
    """Check that the options needed by the command are set

    Raises
    ------
    InputError
        Naming the missing options

    """

    missing = [name for name in names if getattr(opts, name) is None]

    if missing:
        raise InputError('The {} command needs --{}.'.format(
                         opts.command, ', --'.join(missing)))


def read_inputs(log, need_contacts=True):
    """Read the scenario, catalogue, satellites and contacts

    Returns
    -------
    tuple of ScenarioConfig, (providers, stations), satellites, contacts

    """

    require('scenario', 'stations')
    scenario = load_scenario(opts.scenario)
    catalog = load_station_catalog(opts.stations)
    check_scenario(scenario, *catalog)
    show(log, 'Scenario File', opts.scenario)
    show(log, 'Station Catalogue', opts.stations)
    show(log, 'Objective', scenario.objective.value)
    show(log, 'Number of Stations', scenario.n_stations)

    satellites = None
    if opts.satellites is not None:
        satellites = load_satellites(opts.satellites)
        show(log, 'Satellite File', opts.satellites)

    contacts = None
    if opts.contacts is not None:
        contacts = load_contact_windows(opts.contacts, catalog[1], satellites,
                                        scenario.fixed_rate)
        show(log, 'Contact File', opts.contacts)
    elif need_contacts and satellites is None:
        raise InputError('The {} command needs --contacts or '
                         '--satellites.'.format(opts.command))

    return scenario, catalog, satellites, contacts


def show_solution(log, solution):
    """Print and log a solution summary"""

    show(log, 'Method', solution.method)
    show(log, 'Stations', ', '.join(solution.station_ids))
    show(log, 'Providers', ', '.join(solution.provider_ids))
    show(log, 'Objective Value ({})'.format(solution.units),
         solution.objective_value)


def generate_walker(log):

    satellites = generate_walker_star(opts.altitude, opts.eccentricity,
                                      opts.inclination, opts.planes,
                                      opts.sats_per_plane, opts.datarate,
                                      to_utc_seconds(opts.epoch))
    show(log, 'Planes', opts.planes)
    show(log, 'Satellites per Plane', opts.sats_per_plane)
    file_name = os.path.join(opts.out, 'satellites.csv')
    save_satellites(file_name, satellites)

    return [file_name]


def compute_contact_file(log):

    require('satellites')
    scenario, catalog, satellites, _ = read_inputs(log)
    stations = pool_stations(catalog[1], set(scenario.candidate_pool) |
                             set(scenario.full_pool))
    contacts = compute_contacts(satellites, stations, scenario.t_sim_start,
                                scenario.t_sim_end, scenario.elevation_mask,
                                scenario.coarse_step, scenario.fixed_rate,
                                opts.workers, log)
    show(log, 'Contacts', len(contacts))
    file_name = os.path.join(opts.out, 'contacts.csv')
    save_contact_windows(file_name, contacts)

    return [file_name]


def solve(log):

    scenario, catalog, satellites, contacts = read_inputs(log)
    show(log, 'Method', opts.method)
    result = run_scenario(scenario, catalog, opts.method, contacts=contacts,
                          satellites=satellites, seed=opts.seed,
                          workers=opts.workers, log=log)
    show_solution(log, result.solution)

    for report in result.stage_reports:
        show(log, '{} Range'.format(report.stage.value),
             (report.min, report.mean, report.max))

    violations = audit_solution(result.solution, scenario)
    for violation in violations:
        warn('Audit: ' + violation, log)

    return emit_reports(result, opts.out, log)


def sweep(log):

    scenario, catalog, _, _ = read_inputs(log, need_contacts=False)
    walker = scenario.walker or {'altitude_km': opts.altitude,
                                 'eccentricity': opts.eccentricity,
                                 'inclination_deg': opts.inclination,
                                 'sats_per_plane': opts.sats_per_plane,
                                 'datarate_gbps': opts.datarate}
    show(log, 'Planes', '1 to {}'.format(opts.max_planes))
    show(log, 'Stations', '1 to {}'.format(opts.max_stations))
    show(log, 'Methods', ', '.join(opts.methods))
    cells = sweep_walker(scenario, catalog, opts.max_planes,
                         opts.max_stations, opts.methods, walker=walker,
                         seed=opts.seed, workers=opts.workers, log=log)
    show(log, 'Failed Cells', sum(cell.error is not None for cell in cells))

    return emit_reports(cells, opts.out, log)


def evaluate(log):

    require('station_ids')
    scenario, catalog, satellites, contacts = read_inputs(log)
    station_ids = [item for value in opts.station_ids
                   for item in value.split(',') if item]
    unknown = sorted(set(station_ids) - {s.id for s in catalog[1]})
    if unknown:
        raise InputError('Unknown station(s): ' + ', '.join(unknown))

    stations = [s for s in catalog[1] if s.id in station_ids]
    if contacts is None:
        contacts = compute_contacts(satellites, stations,
                                    scenario.t_sim_start, scenario.t_sim_end,
                                    scenario.elevation_mask,
                                    scenario.coarse_step, scenario.fixed_rate,
                                    opts.workers, log)
    sat_ids = (sorted(s.id for s in satellites) if satellites is not None
               else sorted({c.satellite_id for c in contacts}))
    contacts = filter_contacts(contacts, scenario.min_contact_duration)
    solution = evaluate_station_set(station_ids, contacts, scenario,
                                    catalog=stations, satellite_ids=sat_ids,
                                    label='evaluate')
    show_solution(log, solution)
    report = StageReport.from_values(Stage.FinalMatch,
                                     [solution.objective_value])

    return emit_reports(RunResult(solution=solution, stage_reports=(report,)),
                        opts.out, log)


def report(log):

    require('solution')
    show(log, 'Solution File', opts.solution)
    record = read_json(opts.solution)
    if not isinstance(record, dict) or 'stations' not in record:
        raise InputError('{} is not a solution file.'.format(opts.solution))

    return emit_reports(record, opts.out, log)


COMMAND_RUNNERS = {'generate-walker': generate_walker,
                   'compute-contacts': compute_contact_file,
                   'solve': solve, 'sweep': sweep, 'evaluate': evaluate,
                   'report': report}


def run_script(log):
    """Run script

    This method runs the selected command.

    Parameters
    ----------
    log : logging.Logger
        Log instance

    """

    h_line = ' ' + '-' * 70
    if not opts.quiet:
        print(h_line)

    # Begin log
    output_text = ' Running GSAAS_PLACEMENT v{} ({})'.format(__version__,
                                                            opts.command)
    if not opts.quiet:
        print(output_text)
    log.info(output_text)

    if not opts.quiet:
        print(h_line)

    show(log, 'Output Directory', opts.out)
    show(log, 'Random Seed', opts.seed)
    show(log, 'Workers', opts.workers)

    if not opts.quiet:
        print(h_line)

    ###########################################################################
    # Run the command
    written = COMMAND_RUNNERS[opts.command](log)
    ###########################################################################

    if not opts.quiet:
        print(h_line)

    for file_name in written:
        if not opts.quiet:
            print(' Output saved to: ' + file_name)
        log.info('Output saved to: ' + file_name)

    # Close log
    log.info('Script successfully completed!')
    log.info('')
    close_log(log)

    if not opts.quiet:
        print(h_line)


def main(args=None):

    log = None

    try:
        global opts
        opts = get_opts(args)
        make_out_dir(opts.out)
        log = set_up_log(os.path.join(opts.out, 'gsaas_placement'))
        run_script(log)

    except Exception as err:
        catch_error(err, log)
        return getattr(err, 'exit_code', 1)

    return 0


if __name__ == "__main__":
    sys.exit(main())
