# -*- coding: utf-8 -*-

"""GSAAS PLACEMENT LIBRARY

This module contains submodules for implementing gsaas_placement.py.

Submodules
----------
astro
    Orbit propagation, frames and Walker-Star constellations
catalog
    Station catalogues, satellites, contacts and scenario files
contacts
    Contact window computation and filtering
schedule
    Per-satellite optimal scheduling oracles
objective
    Objective classes shared by the exact and scalable solvers
exact
    Exact station-subset selection
scalable
    Decomposition, clustering and matching
pipeline
    End-to-end runs, sweeps and reports

"""
