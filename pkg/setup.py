#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Setup file for the recwidth package."""

from setuptools import setup, find_packages
from os.path import dirname, join
from os import chdir

if dirname(__file__):
    chdir(dirname(__file__))

setup(
    name='recwidth',
    version='0.3.0',
    description='Exact arithmetic for recurrence-width and displacement-rank structured matrices',
    long_description=open(join(dirname(__file__), 'README.rst')).read(),
    keywords='structured matrices recurrence width displacement rank finite field NTT',
    packages=find_packages(),
    install_requires=[
        'chardet',
        'numpy'
    ],
    test_suite='recwidth.test',
    extras_require={
        'testing': ['pytest', 'tox', 'hypothesis'],
    },
    entry_points={
        'console_scripts': [
            'recwidth = recwidth.cli:main'
        ]
    },
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'Natural Language :: English',
        'Operating System :: MacOS :: MacOS X',
        'Operating System :: POSIX',
        'Operating System :: Unix',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics'
    ]
)
