"""
Virtual Knot Lab - exact switch invariants of virtual knots and links
"""

__version__ = "0.3.0"
