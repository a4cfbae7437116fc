"""Behaviour scenarios for the oamqc command line."""

from __future__ import annotations
