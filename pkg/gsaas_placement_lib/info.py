# -*- coding: utf-8 -*-

"""GSAAS_PLACEMENT PACKAGE INFO

This module provides some basic information about the gsaas_placement
package.

:Version: 1.0.0

"""

# Package Version
version_info = (1, 0, 0)
__version__ = '.'.join(str(c) for c in version_info)

__about__ = ('gsaas_placement \n\n '
             'Ground-station site selection for LEO constellations: exact '
             'selection on small instances and decomposition, clustering and '
             'matching at scale.')
