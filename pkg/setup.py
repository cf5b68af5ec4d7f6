#! /usr/bin/env python
# -*- coding: utf-8 -*-

from setuptools import setup, find_packages
import os

release_info = {}
infopath = os.path.abspath(os.path.join(os.path.dirname(__file__),
                           "gsaas_placement_lib", "info.py"))
with open(infopath) as open_file:
    exec(open_file.read(), release_info)

setup(
    name='gsaas_placement_lib',
    version=release_info["__version__"],
    packages=find_packages(),
    scripts=['gsaas_placement.py'],
    python_requires='>=3.8',
    install_requires=['numpy>=1.17', 'scipy>=1.4', 'scikit-learn>=0.24',
                      'modopt>=1.1.4'],
    tests_require=['pytest'],
    license='MIT',
    description='Ground station site selection for GSaaS networks.',
    long_description=release_info["__about__"],
)
