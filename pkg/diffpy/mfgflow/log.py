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

"""Configuration of loggers used in this package.

Logger instances:

mlog -- logger instance for normal operation
"""

# module version
__id__ = "$Id$"

import logging
import sys

# logging configuration
mlog = logging.getLogger('diffpy.mfgflow')

LOG_FORMAT = "%(name)s: %(levelname)s: %(message)s"


def setVerbosity(vb):
    '''Set verbosity of the mfgflow logger.

    vb   -- integer or one of ('debug', 'info', 'warning', 'error') strings

    No return value.
    '''
    try:
        if isinstance(vb, str):
            level = int(getattr(logging, vb.upper(), vb))
        else:
            level = int(vb)
    except (TypeError, ValueError, AttributeError):
        emsg = "invalid value of verbose %r" % (vb,)
        raise ValueError(emsg)
    mlog.setLevel(level)
    mlog.info("log level set to %r", level)
    return


def addStreamHandler(stream=None):
    '''Attach a stream handler with the package format.

    stream  -- output stream, the current sys.stderr when None

    A handler attached by an earlier call is detached first and its old
    stream is left untouched.  Return the handler attached to mlog.
    '''
    if stream is None:
        stream = sys.stderr
    for h in list(mlog.handlers):
        if getattr(h, '_mfgflow', False):
            mlog.removeHandler(h)
    handler = logging.StreamHandler(stream)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._mfgflow = True
    mlog.addHandler(handler)
    return handler

# End of file
