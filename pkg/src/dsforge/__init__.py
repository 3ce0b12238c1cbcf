"""Davenport-Schinzel style sequences: constructions, containment and bounds."""

__version__ = "0.1.0"
