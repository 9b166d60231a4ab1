#!/usr/bin/env python
##############################################################################
#
# diffpy.mfgflow    by DANSE Diffraction group
#                   Simon J. L. Billinge
#                   (c) 2024 Trustees of the Columbia University
#                   in the City of New York.  All rights reserved.
#
# File coded by:    diffpy.mfgflow developers
#
# See AUTHORS.rst for a list of people who contributed.
# See LICENSE.txt for license information.
#
##############################################################################


"""Monotone flow solvers for finite-state mean-field games.
"""

__id__ = "$Id$"

# obtain version information
from diffpy.mfgflow.version import __version__

# top-level import
from diffpy.mfgflow.mfg_api import (mfg_solve, mfg_default_config,
                                    load_config, parse_config,
                                    plot_trajectory, plot_convergence)
# End of file
