#!/usr/bin/env python
##############################################################################
#
# diffpy            by DANSE Diffraction group
#                   Simon J. L. Billinge
#                   (c) 2008 Trustees of the Columbia University
#                   in the City of New York.  All rights reserved.
#
# File coded by:    Pavol Juhas
#
# See AUTHORS.txt for a list of people who contributed.
# See LICENSE.txt for license information.
#
##############################################################################

"""diffpy namespace package.

mfgflow - monotone numerical methods for finite-state mean-field games.
"""


__import__('pkg_resources').declare_namespace(__name__)


# End of file
