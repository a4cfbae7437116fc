"""Test package for oamqc.

Making ``tests`` a real package gives every test module a single dotted
import path such as ``tests.support.cli``, so fixtures and step modules share
one copy of the helper types.
"""

from __future__ import annotations
