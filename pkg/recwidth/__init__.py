# -*- coding: utf-8 -*-
"""Exact structured-matrix arithmetic for recurrence width and displacement rank."""
__version__ = '0.3.0'
