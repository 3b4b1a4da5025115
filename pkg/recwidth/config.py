# -*- coding: utf-8 -*-
"""
Runtime settings.

The tunables live in a single Namespace, much like the options object the
command line builds, so library code and the CLI read the same values.  The
field modulus is fixed at import time from the environment.
"""
from argparse import Namespace
from os import environ

DEFAULT_FIELD_P = 998244353
FIELD_ENV_VAR = 'RECWIDTH_FIELD_P'

settings = Namespace(
    nttThreshold=32,
    leafBlock=16,
    quasiLeafSize=None,
    inverseLeafSize=4,
    debug=False,
)


def fieldModulus():
    """Return the prime requested through RECWIDTH_FIELD_P, or the default."""
    raw = environ.get(FIELD_ENV_VAR, '').strip()
    if not raw:
        return DEFAULT_FIELD_P
    return int(raw, 0)


def configure(**overrides):
    """
    Update the shared settings.

    Unknown names raise KeyError.
    """
    for name, value in overrides.items():
        if not hasattr(settings, name):
            raise KeyError("unknown setting: {0}".format(name))
        setattr(settings, name, value)
    return settings
