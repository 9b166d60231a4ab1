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

"""Definition of __version__ and __date__ for diffpy.mfgflow.
"""

__id__ = "$Id$"

# obtain version information
from pkg_resources import get_distribution, DistributionNotFound
try:
    __version__ = get_distribution('diffpy.mfgflow').version
except DistributionNotFound:
    # running from a source tree that was never installed
    __version__ = '0.1.0'

# we assume that tag_date was used and __version__ ends in YYYYMMDD
__date__ = __version__[-8:-4] + '-' + \
           __version__[-4:-2] + '-' + __version__[-2:]

# End of file
