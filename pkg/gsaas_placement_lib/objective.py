# -*- coding: utf-8 -*-

"""OBJECTIVE CLASSES

This module contains classes for defining the site selection objectives. Each
class schedules the contacts of one satellite, aggregates the satellite
schedules into an objective value and compares objective values.

"""

from dataclasses import replace
from .catalog import Objective
from .errors import InfeasibleError
from .schedule import (is_greater, max_data_schedule, min_max_gap_schedule,
                       scale_to_mission)


class ObjectiveParent(object):
    """Objective parent class

    This class defines the interface shared by the objectives.

    Parameters
    ----------
    scenario : ScenarioConfig
        Scenario, the simulation horizon of which is the scheduling window

    """

    kind = None
    units = None

    def __init__(self, scenario):

        self.window_start = scenario.t_sim_start
        self.window_end = scenario.t_sim_end
        self.T_sim = scenario.T_sim
        self.T_opt = scenario.T_opt

    def schedule(self, contacts, satellite_id):
        """Schedule the contacts of one satellite"""

        raise NotImplementedError

    def value(self, schedules):
        """Objective value of a list of satellite schedules"""

        raise NotImplementedError

    def better(self, value_a, value_b):
        """True if `value_a` is better than `value_b` beyond tolerance"""

        raise NotImplementedError

    def can_improve(self, bound, incumbent):
        """True if a subtree with optimistic `bound` may beat `incumbent`"""

        raise NotImplementedError

    def evaluate(self, groups, satellite_ids):
        """Evaluate

        This method schedules every satellite and returns the objective value.

        Parameters
        ----------
        groups : dict
            Satellite id to list of ContactWindow
        satellite_ids : list of str
            Satellites to schedule

        Returns
        -------
        tuple of list of SatelliteSchedule and float value

        Raises
        ------
        InfeasibleError
            If a satellite cannot be scheduled

        """

        schedules = [self.schedule(groups.get(sat_id, []), sat_id)
                     for sat_id in satellite_ids]

        return schedules, self.value(schedules)


class MaxDataObjective(ObjectiveParent):
    """Maximum data objective

    Total scheduled volume scaled to the mission horizon, in petabytes.

    Notes
    -----
    The properties of `ObjectiveParent` are inherited in this class

    """

    kind = Objective.MaxData
    units = 'PB'

    def schedule(self, contacts, satellite_id):

        sched = max_data_schedule(contacts, self.window_start,
                                  self.window_end)
        if sched.satellite_id is None:
            sched = replace(sched, satellite_id=satellite_id)

        return sched

    def value(self, schedules):

        return scale_to_mission(sum(s.data_volume for s in schedules),
                                self.T_sim, self.T_opt)

    def better(self, value_a, value_b):

        return is_greater(value_a, value_b)

    def can_improve(self, bound, incumbent):

        return bound > incumbent


class MinMaxGapObjective(ObjectiveParent):
    """Minimum maximum-gap objective

    Largest per-satellite maximum gap, in seconds.

    Notes
    -----
    The properties of `ObjectiveParent` are inherited in this class

    """

    kind = Objective.MinMaxGap
    units = 's'

    def schedule(self, contacts, satellite_id):

        if not contacts:
            raise InfeasibleError('Satellite {} has no contact with the '
                                  'selected stations.'.format(satellite_id))

        return min_max_gap_schedule(contacts, self.window_start,
                                    self.window_end)

    def value(self, schedules):

        return max(s.max_gap for s in schedules) if schedules else 0.0

    def better(self, value_a, value_b):

        return is_greater(value_b, value_a)

    def can_improve(self, bound, incumbent):

        return bound < incumbent


def get_objective(scenario):
    """Get objective

    Parameters
    ----------
    scenario : ScenarioConfig
        Scenario

    Returns
    -------
    ObjectiveParent instance

    """

    if scenario.objective == Objective.MaxData:
        return MaxDataObjective(scenario)

    elif scenario.objective == Objective.MinMaxGap:
        return MinMaxGapObjective(scenario)

    raise ValueError('Invalid objective {}.'.format(scenario.objective))
