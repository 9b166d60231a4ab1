#!/usr/bin/env python

# Installation script for diffpy.mfgflow

"""mfgflow - monotone flow solvers for finite-state mean-field games.

Packages:   diffpy.mfgflow
"""

from setuptools import setup, find_packages

# define distribution
setup(
    name="diffpy.mfgflow",
    version='0.1.0',
    packages=find_packages(exclude=['tests', 'applications']),
    package_data={'diffpy.mfgflow': ['configs/*.json']},
    entry_points={
        # define console_scripts here, see setuptools docs for details.
        'console_scripts': [
            'mfg = diffpy.mfgflow.mfgapp:main',
        ],
    },
    test_suite='tests',
    install_requires=['numpy', 'scipy', 'matplotlib'],
    author='Simon J.L. Billinge',
    author_email='sb2896@columbia.edu',
    url='http://www.diffpy.org/',
    download_url='http://www.diffpy.org/packages/',
    description="Monotone flow solvers for finite-state mean-field games.",
    license='BSD',
    keywords="diffpy mean-field games monotone operators",
)

# End of file
